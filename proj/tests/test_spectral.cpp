#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nlsb/grid.hpp"
#include "nlsb/hermite.hpp"
#include "nlsb/spectral.hpp"

using namespace nlsb;
using Catch::Matchers::ContainsSubstring;

namespace {

double relL2(const std::vector<complexd>& got, const std::vector<complexd>& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += std::norm(got[i] - want[i]);
        den += std::norm(want[i]);
    }
    return std::sqrt(num / den);
}

double gridMass(const GridField& f) {
    double m = 0.0;
    for (const auto& v : f.values) m += std::norm(v);
    return m * cellVolume(f);
}

GridField hermiteMode(int n1, int n2, std::vector<int> shape, double halfWidth) {
    return sampleGrid(std::move(shape), halfWidth, [&](const vecd& x) {
        double v = hermiteFunction(n1, x[0]);
        if (x.size() == 2) v *= hermiteFunction(n2, x[1]);
        return complexd{v, 0.0};
    });
}

GridField smoothTestField(std::vector<int> shape, double halfWidth) {
    return sampleGrid(std::move(shape), halfWidth, [](const vecd& x) {
        const double r1 = (x[0] - 0.7) * (x[0] - 0.7) + (x[1] + 1.1) * (x[1] + 1.1);
        const double r2 = (x[0] + 1.4) * (x[0] + 1.4) + x[1] * x[1];
        return std::exp(complexd{-0.5 * r1, 0.8 * x[0] - 0.25 * r1}) +
               0.6 * std::exp(complexd{-0.35 * r2, 0.4 * r2});
    });
}

}  // namespace

TEST_CASE("harmonic eigenmodes pick up exact phases", "[spectral]") {
    SECTION("ground mode, small step") {
        auto f = hermiteMode(0, 0, {256, 256}, 15.0);
        const double dt = 1e-3;
        auto want = f.values;
        for (auto& v : want) v *= std::exp(complexd{0.0, -2.0 * dt});
        const auto got = linearStepSpectral(f, dt);
        REQUIRE(relL2(got.values, want) < 1e-9);
    }

    SECTION("excited modes") {
        struct Mode {
            int n1, n2;
        };
        const double dt = 0.3;
        for (const Mode m : {Mode{1, 0}, Mode{2, 1}, Mode{2, 2}, Mode{4, 0}}) {
            auto f = hermiteMode(m.n1, m.n2, {256, 256}, 15.0);
            auto want = f.values;
            const double eig = 2.0 * (m.n1 + m.n2) + 2.0;
            for (auto& v : want) v *= std::exp(complexd{0.0, -eig * dt});
            const auto got = linearStepSpectral(f, dt);
            INFO("mode (" << m.n1 << ", " << m.n2 << ")");
            REQUIRE(relL2(got.values, want) < 1e-8);
        }
    }

    SECTION("one-dimensional grid") {
        auto f = hermiteMode(3, 0, {256}, 12.0);
        const double dt = 0.2;
        auto want = f.values;
        for (auto& v : want) v *= std::exp(complexd{0.0, -7.0 * dt});
        const auto got = linearStepSpectral(f, dt);
        REQUIRE(relL2(got.values, want) < 1e-8);
    }

    SECTION("long evolution substeps across the tan singularity") {
        auto f = hermiteMode(2, 1, {128, 128}, 15.0);
        const double t = 2.5;
        auto want = f.values;
        for (auto& v : want) v *= std::exp(complexd{0.0, -8.0 * t});
        const auto got = linearEvolveSpectral(f, t);
        REQUIRE(relL2(got.values, want) < 1e-8);
    }
}

TEST_CASE("zero step is the identity", "[spectral]") {
    auto f = smoothTestField({64, 64}, 12.0);
    const auto stepped = linearStepSpectral(f, 0.0);
    const auto evolved = linearEvolveSpectral(f, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        REQUIRE(stepped.values[i] == f.values[i]);
        REQUIRE(evolved.values[i] == f.values[i]);
    }
}

TEST_CASE("linear step errors near the tan singularity", "[spectral]") {
    auto f = smoothTestField({32, 32}, 10.0);
    REQUIRE_THROWS_WITH(linearStepSpectral(f, M_PI / 2.0), ContainsSubstring("substep"));
    REQUIRE_THROWS_WITH(linearStepSpectral(f, 1.58), ContainsSubstring("substep"));
    REQUIRE_THROWS_WITH(linearStepSpectral(f, -3.0), ContainsSubstring("substep"));
    REQUIRE_NOTHROW(linearStepSpectral(f, 1.5));
}

TEST_CASE("linear flow is unitary and composes exactly", "[spectral]") {
    auto f = smoothTestField({128, 128}, 15.0);

    SECTION("per-step mass drift") {
        const double m0 = gridMass(f);
        auto g = f;
        double prev = m0;
        for (int i = 0; i < 50; ++i) {
            g = linearStepSpectral(std::move(g), 0.07);
            const double m = gridMass(g);
            REQUIRE(std::abs(m - prev) / m0 < 1e-12);
            prev = m;
        }
        REQUIRE(std::abs(prev - m0) / m0 < 1e-11);
    }

    SECTION("group property") {
        const auto oneStep = linearStepSpectral(f, 0.4);
        const auto twoSteps = linearStepSpectral(linearStepSpectral(f, 0.25), 0.15);
        REQUIRE(relL2(twoSteps.values, oneStep.values) < 1e-10);
    }
}

TEST_CASE("nonlinear phase rotation is exact", "[spectral]") {
    std::mt19937_64 rng(912);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto f = makeGrid({32, 48}, 9.0);
    for (auto& v : f.values) v = complexd{gauss(rng), gauss(rng)};

    SECTION("modulus invariance") {
        const auto g = nonlinearStepSpectral(f, 0.37);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            REQUIRE(std::abs(g.values[i]) ==
                    Catch::Approx(std::abs(f.values[i])).epsilon(1e-15).margin(1e-300));
    }

    SECTION("constant modulus rotates uniformly") {
        auto u = f;
        for (auto& v : u.values) v /= std::abs(v);
        const double dt = 0.83;
        const auto g = nonlinearStepSpectral(u, dt);
        const complexd want = std::exp(complexd{0.0, -dt});
        for (std::size_t i = 0; i < u.values.size(); ++i)
            REQUIRE(std::abs(g.values[i] / u.values[i] - want) < 1e-14);
    }

    SECTION("zero step and zero coupling are identities") {
        const auto g0 = nonlinearStepSpectral(f, 0.0);
        const auto gl = nonlinearStepSpectral(f, 0.5, 0.0);
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            REQUIRE(g0.values[i] == f.values[i]);
            REQUIRE(std::abs(gl.values[i] - f.values[i]) < 1e-16);
        }
    }
}

TEST_CASE("strang reduces to the exact linear step without the cubic term", "[spectral]") {
    auto f = smoothTestField({128, 128}, 15.0);
    const auto strang = strangStepSpectral(f, 0.3, 1.0, 0.0);
    const auto linear = linearStepSpectral(f, 0.3);
    REQUIRE(relL2(strang.values, linear.values) < 1e-12);
}

TEST_CASE("strang splitting is second order", "[spectral]") {
    auto f0 = sampleGrid({128, 128}, 10.0, [](const vecd& x) {
        const double r = (x[0] - 0.5) * (x[0] - 0.5) + (x[1] + 0.3) * (x[1] + 0.3);
        return complexd{1.5 * std::exp(-0.5 * r), 0.0};
    });
    const double T = 0.02;

    auto runTo = [&](double dt) {
        auto g = f0;
        const int n = static_cast<int>(std::lround(T / dt));
        for (int i = 0; i < n; ++i) g = strangStepSpectral(std::move(g), dt);
        return g;
    };

    const auto ref = runTo(1e-5);
    const double errCoarse = relL2(runTo(4e-4).values, ref.values);
    const double errFine = relL2(runTo(2e-4).values, ref.values);
    const double ratio = errCoarse / errFine;
    INFO("errCoarse=" << errCoarse << " errFine=" << errFine << " ratio=" << ratio);
    REQUIRE(ratio > 3.5);
    REQUIRE(ratio < 4.5);
}

TEST_CASE("strang conserves mass over long runs", "[spectral]") {
    auto f = sampleGrid({128, 128}, 15.0, [](const vecd& x) {
        const double r = (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 1.0) * (x[1] - 1.0);
        return std::exp(complexd{-r, 1.0 + 0.5 * r});
    });
    const double m0 = gridMass(f);
    for (int i = 0; i < 1000; ++i) f = strangStepSpectral(std::move(f), 1e-3);
    REQUIRE(std::abs(gridMass(f) - m0) / m0 < 1e-10);
}

TEST_CASE("odd-size grids transform correctly", "[spectral]") {
    auto f = hermiteMode(0, 0, {128, 129}, 15.0);

    SECTION("transform round trip") {
        auto v = f.values;
        fftForward(v, f.shape);
        fftInverse(v, f.shape);
        REQUIRE(relL2(v, f.values) < 1e-13);
    }

    SECTION("eigenmode phase") {
        const double dt = 1e-3;
        auto want = f.values;
        for (auto& v : want) v *= std::exp(complexd{0.0, -2.0 * dt});
        const auto got = linearStepSpectral(f, dt);
        REQUIRE(relL2(got.values, want) < 1e-8);
        REQUIRE(std::abs(gridMass(got) - gridMass(f)) / gridMass(f) < 1e-12);
    }
}

TEST_CASE("spectral tail fraction flags unresolved fields", "[spectral]") {
    auto smooth = sampleGrid({128, 128}, 12.0, [](const vecd& x) {
        return complexd{std::exp(-0.5 * normSq(x)), 0.0};
    });
    REQUIRE(spectralTailFraction(smooth) < 1e-12);

    GridField probe = makeGrid({128, 128}, 12.0);
    const double xi = fourierMode(probe, 0, 50);
    auto rough = sampleGrid({128, 128}, 12.0, [&](const vecd& x) {
        return std::exp(complexd{-normSq(x) / 8.0, xi * x[0]});
    });
    REQUIRE(spectralTailFraction(rough) > 0.9);
}
