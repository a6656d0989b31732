#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "nlsb/bubble.hpp"
#include "support/quadrature.hpp"

using namespace nlsb;
using Catch::Approx;

namespace {

// Independent Hermite oracle: physicists' polynomial coefficients times the
// Gaussian weight and the orthonormality constant (2^k k! sqrt(pi))^{-1/2}.
double hermiteOracle(int k, double z) {
    // p_k holds the physicists' Hermite polynomial coefficients (degree k).
    std::vector<double> pm{1.0}, p{2.0, 0.0};  // H0, H1 (highest degree first)
    if (k == 0) return std::pow(M_PI, -0.25) * std::exp(-0.5 * z * z);
    for (int n = 1; n < k; ++n) {
        // H_{n+1} = 2 z H_n - 2 n H_{n-1}
        std::vector<double> pn(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) pn[i] += 2.0 * p[i];
        for (std::size_t i = 0; i < pm.size(); ++i) pn[i + 2] -= 2.0 * n * pm[i];
        pm = p;
        p = pn;
    }
    double val = 0.0;
    for (double c : p) val = val * z + c;
    double norm = std::sqrt(M_PI);
    for (int n = 1; n <= k; ++n) norm *= 2.0 * n;
    return val * std::exp(-0.5 * z * z) / std::sqrt(norm);
}

}  // namespace

TEST_CASE("normalized Hermite functions", "[bubble]") {
    CHECK(hermiteFunction(0, 0.0) == Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));
    CHECK(hermiteFunction(1, 0.0) == Approx(0.0).margin(1e-15));
    CHECK(hermiteFunction(3, 1.25) == Approx(hermiteOracle(3, 1.25)).epsilon(1e-12));
    for (int k : {2, 5, 8, 13})
        for (double z : {-2.7, -0.4, 0.9, 3.3})
            CHECK(hermiteFunction(k, z) == Approx(hermiteOracle(k, z)).margin(1e-13));
}

TEST_CASE("Hermite orthonormality by quadrature", "[bubble]") {
    for (int k = 0; k <= 8; ++k) {
        for (int l = k; l <= 8; ++l) {
            const complexd q = testsupport::integrate1d(
                [&](double z) { return complexd{hermiteFunction(k, z) * hermiteFunction(l, z), 0.0}; },
                12.0, 2000);
            const double expected = (k == l) ? 1.0 : 0.0;
            CHECK(std::abs(q.real() - expected) < 1e-10);
        }
    }
}

TEST_CASE("evaluateBubble closed form", "[bubble]") {
    Bubble ground;
    ground.X = {0.0, 0.0};
    ground.beta = {0.0, 0.0};
    ground.spectrum[{0, 0}] = 1.0;

    const complexd v0 = evaluateBubble(ground, {0.0, 0.0});
    CHECK(v0.real() == Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(v0.imag() == Approx(0.0).margin(1e-15));

    Bubble rotated = ground;
    rotated.gamma = M_PI / 2.0;
    const complexd vr = evaluateBubble(rotated, {0.0, 0.0});
    CHECK(vr.real() == Approx(0.0).margin(1e-15));
    CHECK(vr.imag() == Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));

    // Generic parameters against a long-double transcription of the formula.
    Bubble b;
    b.A = 2.0;
    b.L = 2.0;
    b.B = 1.0;
    b.X = {1.0, 0.0};
    b.beta = {0.5, 0.0};
    b.gamma = 0.3;
    b.spectrum[{0, 0}] = 1.0;
    const vecd x{0.5, -0.5};
    const long double y1 = (0.5L - 1.0L) / 2.0L, y2 = -0.5L / 2.0L;
    const long double ysq = y1 * y1 + y2 * y2;
    const long double phase = 0.3L + 2.0L * 0.5L * y1 - 0.25L * ysq;
    const long double mag =
        (2.0L / 2.0L) * std::exp(-0.5L * ysq) / std::sqrt(std::sqrt((long double)M_PI)) /
        std::sqrt(std::sqrt((long double)M_PI));
    const complexd want{double(mag * std::cos(phase)), double(mag * std::sin(phase))};
    const complexd got = evaluateBubble(b, x);
    CHECK(std::abs(got - want) < 1e-13 * std::abs(want));
}

TEST_CASE("evaluateBubble rejects dimension mismatch", "[bubble]") {
    Bubble b;
    b.X = {0.0, 0.0};
    b.beta = {0.0, 0.0};
    b.spectrum[{0, 0}] = 1.0;
    CHECK_THROWS(evaluateBubble(b, {1.0}));
}

TEST_CASE("gamma periodicity", "[bubble]") {
    Bubble b = makeGaussianBubble(2, 1.3, 0.9, 0.4, {0.3, -0.2}, {0.1, 0.6}, 1.1);
    Bubble b2 = b;
    b2.gamma += 2.0 * M_PI;
    const vecd x{0.4, 0.7};
    const complexd u = evaluateBubble(b, x), u2 = evaluateBubble(b2, x);
    CHECK(std::abs(u - u2) < 1e-14 * std::abs(u));
}

TEST_CASE("ensemble evaluation is a linear superposition", "[bubble]") {
    BubbleEnsemble e;
    e.d = 2;
    e.bubbles.push_back(makeGaussianBubble(2, 1.0, 1.0, 0.5, {0.2, 0.1}, {0.0, -0.3}, 0.7));
    e.bubbles.push_back(e.bubbles[0]);
    const std::vector<vecd> pts{{0.0, 0.0}, {1.0, -0.5}, {-0.3, 0.8}};
    const auto vals = evaluateEnsemble(e, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const complexd single = evaluateBubble(e.bubbles[0], pts[i]);
        CHECK(std::abs(vals[i] - 2.0 * single) < 1e-15 * std::abs(single) + 1e-16);
    }

    BubbleEnsemble scaled = e;
    const double c = 1.7;
    for (auto& b : scaled.bubbles) b.A *= c;
    const auto svals = evaluateEnsemble(scaled, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(svals[i] - c * vals[i]) < 1e-15 * std::abs(vals[i]) + 1e-16);
}

TEST_CASE("test case 1 field values", "[bubble]") {
    BubbleEnsemble e;
    e.d = 2;
    e.bubbles.push_back(makeGaussianBubble(2, M_PI, 1.0, 0.0, {0.0, 2.0}, {0.0, 0.0}, 0.0));
    e.bubbles.push_back(makeGaussianBubble(2, 2.0, 1.0, 0.0, {1.0, 0.0}, {0.0, 0.0}, 0.0));
    std::vector<vecd> pts;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) pts.push_back({0.5 * i, 0.5 * j + 1.0});
    const auto vals = evaluateEnsemble(e, pts);
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const double dx1 = pts[p][0], dy1 = pts[p][1] - 2.0;
        const double dx2 = pts[p][0] - 1.0, dy2 = pts[p][1];
        const double want = M_PI * std::exp(-0.5 * (dx1 * dx1 + dy1 * dy1)) +
                            2.0 * std::exp(-0.5 * (dx2 * dx2 + dy2 * dy2));
        CHECK(std::abs(vals[p] - complexd{want, 0.0}) < 1e-13 * want);
    }
}

TEST_CASE("pure Gaussian gate and amplitude folding", "[bubble]") {
    Bubble b = makeGaussianBubble(2, 1.5, 1.0, 0.0, {0.0, 0.0}, {0.0, 0.0}, 0.2);
    CHECK(isPureGaussian(b));
    CHECK(foldedAmplitude(b) == Approx(1.5).epsilon(1e-14));
    CHECK(foldedPhase(b) == Approx(0.2).epsilon(1e-14));

    b.spectrum[{0, 0}] *= std::exp(iu * 0.4);
    CHECK(isPureGaussian(b));
    CHECK(foldedAmplitude(b) == Approx(1.5).epsilon(1e-14));
    CHECK(foldedPhase(b) == Approx(0.6).epsilon(1e-14));

    b.spectrum[{1, 0}] = 0.1;
    CHECK_FALSE(isPureGaussian(b));

    Bubble empty;
    empty.X = {0.0, 0.0};
    empty.beta = {0.0, 0.0};
    CHECK_FALSE(isPureGaussian(empty));
    CHECK(foldedAmplitude(empty) == 0.0);
}
