#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// A preset initial condition: the bubble decomposition plus the exact formula
// it approximates (the spectral path starts from the formula, not from a
// projection of the bubbles).
struct TestCase {
    BubbleEnsemble ensemble;
    std::function<complexd(const vecd&)> exactField;
};

// Nine-bubble least-squares fit of sqrt(M^2 - |x|^2), M = 4: one central
// Gaussian plus a ring of eight, amplitudes fitted on [-5, 5]^2. The chirp
// parameters realize exp(i + i|x|^2/2) locally around each center, the same
// small-argument approximation of exp(i cosh|x|) used by the single-bubble
// preset.
inline BubbleEnsemble fitTc3Profile() {
    constexpr double profileRadius = 4.0;
    constexpr double ringRadius = 2.4;
    constexpr double centerWidth = 2.0;
    constexpr double ringWidth = 1.2;
    constexpr int nRing = 8;

    std::vector<vecd> centers{{0.0, 0.0}};
    std::vector<double> widths{centerWidth};
    for (int k = 0; k < nRing; ++k) {
        const double phi = 2.0 * M_PI * k / nRing;
        centers.push_back({ringRadius * std::cos(phi), ringRadius * std::sin(phi)});
        widths.push_back(ringWidth);
    }
    const int nb = static_cast<int>(centers.size());

    const int nGrid = 101;
    const double fitHalfWidth = 5.0;
    Eigen::MatrixXd design(nGrid * nGrid, nb);
    Eigen::VectorXd target(nGrid * nGrid);
    for (int i = 0; i < nGrid; ++i) {
        const double x1 = -fitHalfWidth + 2.0 * fitHalfWidth * i / (nGrid - 1);
        for (int k = 0; k < nGrid; ++k) {
            const double x2 = -fitHalfWidth + 2.0 * fitHalfWidth * k / (nGrid - 1);
            const int row = i * nGrid + k;
            const double r2 = x1 * x1 + x2 * x2;
            target(row) = r2 < profileRadius * profileRadius
                              ? std::sqrt(profileRadius * profileRadius - r2)
                              : 0.0;
            for (int j = 0; j < nb; ++j) {
                const double d1 = x1 - centers[static_cast<std::size_t>(j)][0];
                const double d2 = x2 - centers[static_cast<std::size_t>(j)][1];
                const double L = widths[static_cast<std::size_t>(j)];
                design(row, j) = std::exp(-(d1 * d1 + d2 * d2) / (2.0 * L * L)) / L;
            }
        }
    }
    const Eigen::VectorXd amps = design.colPivHouseholderQr().solve(target);

    BubbleEnsemble e;
    e.d = 2;
    for (int j = 0; j < nb; ++j) {
        const vecd& X = centers[static_cast<std::size_t>(j)];
        const double L = widths[static_cast<std::size_t>(j)];
        e.bubbles.push_back(
            makeGaussianBubble(2, amps(j), L, -2.0 * L * L, X, X, 1.0 + 0.5 * normSq(X)));
    }
    return e;
}

inline TestCase loadTestCase(int id) {
    TestCase tc;
    tc.ensemble.d = 2;
    switch (id) {
        case 1: {
            tc.ensemble.bubbles.push_back(
                makeGaussianBubble(2, M_PI, 1.0, 0.0, {0.0, 2.0}, {0.0, 0.0}, 0.0));
            tc.ensemble.bubbles.push_back(
                makeGaussianBubble(2, 2.0, 1.0, 0.0, {1.0, 0.0}, {0.0, 0.0}, 0.0));
            tc.exactField = [](const vecd& x) {
                const double r1 = (x[0] - 0.0) * (x[0] - 0.0) + (x[1] - 2.0) * (x[1] - 2.0);
                const double r2 = (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 0.0) * (x[1] - 0.0);
                return complexd{M_PI * std::exp(-0.5 * r1) + 2.0 * std::exp(-0.5 * r2), 0.0};
            };
            return tc;
        }
        case 2: {
            // e^{-|x-mu|^2} e^{i cosh|x-mu|} with cosh r ~ 1 + r^2/2: envelope
            // forces L = 1/sqrt(2), the +r^2/2 chirp forces B = -1 under the
            // -(B/4L^2)|x-X|^2 phase convention, and gamma = 1.
            const double invRoot2 = 1.0 / std::sqrt(2.0);
            tc.ensemble.bubbles.push_back(makeGaussianBubble(2, invRoot2, invRoot2, -1.0,
                                                             {1.0, 1.0}, {0.0, 0.0}, 1.0));
            tc.exactField = [](const vecd& x) {
                const double r2 = (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 1.0) * (x[1] - 1.0);
                return std::exp(complexd{-r2, std::cosh(std::sqrt(r2))});
            };
            return tc;
        }
        case 3: {
            tc.ensemble = fitTc3Profile();
            tc.exactField = [](const vecd& x) {
                const double r2 = normSq(x);
                if (r2 >= 16.0) return complexd{0.0, 0.0};
                const double mod = std::sqrt(16.0 - r2);
                return mod * std::exp(complexd{0.0, std::cosh(std::sqrt(r2))});
            };
            return tc;
        }
        default:
            fail("loadTestCase: unknown test case id");
    }
}

}  // namespace nlsb
