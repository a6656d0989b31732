#pragma once

#include <random>

#include "nlsb/bubble.hpp"

// Seeded generators for property tests.  Parameter ranges cover the regime of
// the bundled test cases with margin while keeping every Gaussian integrand
// below 1e-14 at the quadrature boxes used by the oracles:
//   A in [0.3, 2.0], L in [0.6, 1.6], B in [-2, 2],
//   X_i in [-2.5, 2.5], beta_i in [-2, 2], gamma in (-pi, pi].

namespace nlsb::testsupport {

inline Bubble randomBubble(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> uA(0.3, 2.0);
    std::uniform_real_distribution<double> uL(0.6, 1.6);
    std::uniform_real_distribution<double> uB(-2.0, 2.0);
    std::uniform_real_distribution<double> uX(-2.5, 2.5);
    std::uniform_real_distribution<double> ubeta(-2.0, 2.0);
    std::uniform_real_distribution<double> ugamma(-M_PI, M_PI);
    vecd X(static_cast<std::size_t>(d)), beta(static_cast<std::size_t>(d));
    for (auto& x : X) x = uX(rng);
    for (auto& b : beta) b = ubeta(rng);
    return makeGaussianBubble(d, uA(rng), uL(rng), uB(rng), std::move(X), std::move(beta),
                              ugamma(rng));
}

inline BubbleEnsemble randomEnsemble(std::mt19937& rng, int d, int n) {
    BubbleEnsemble e;
    e.d = d;
    for (int i = 0; i < n; ++i) e.bubbles.push_back(randomBubble(rng, d));
    return e;
}

}  // namespace nlsb::testsupport
