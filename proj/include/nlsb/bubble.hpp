#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "nlsb/hermite.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

using MultiIndex = std::vector<int>;

// Sparse Hermite coefficients of the profile v: multi-index n -> v_n.
// An empty map means v == 0.  Coefficients are stored at their current value;
// the linear propagator folds the e^{-(2|n|+d) i s} phase into them directly.
using HermiteSpectrum = std::map<MultiIndex, complexd>;

// One modulated wave packet
//   u(x) = (A/L) exp(i gamma + i L beta.y - i (B/4)|y|^2) sum_n v_n phi_n(y),
//   y = (x - X)/L,
// with internal time s advancing as ds/dt = 1/L^2 under the linear flow.
struct Bubble {
    double A = 1.0;
    double L = 1.0;
    double B = 0.0;
    vecd X;
    vecd beta;
    double gamma = 0.0;
    double s = 0.0;
    HermiteSpectrum spectrum;

    int dim() const { return static_cast<int>(X.size()); }
};

struct BubbleEnsemble {
    std::vector<Bubble> bubbles;
    int d = 2;
};

inline MultiIndex zeroIndex(int d) { return MultiIndex(static_cast<std::size_t>(d), 0); }

// A bubble whose profile is exactly the unit Gaussian envelope e^{-|y|^2/2},
// i.e. the zero Hermite mode with coefficient pi^{d/4}.  With this profile the
// record A is the envelope amplitude: |u| = (A/L) e^{-|x-X|^2/(2L^2)}.
inline Bubble makeGaussianBubble(int d, double A, double L, double B, vecd X, vecd beta,
                                 double gamma) {
    Bubble b;
    b.A = A;
    b.L = L;
    b.B = B;
    b.X = std::move(X);
    b.beta = std::move(beta);
    b.gamma = gamma;
    b.spectrum[zeroIndex(d)] = std::pow(M_PI, 0.25 * d);
    return b;
}

inline void validateBubble(const Bubble& b) {
    if (!(b.L > 0.0)) fail("bubble: scale L must be strictly positive");
    if (!isFinite(b.A) || !isFinite(b.L) || !isFinite(b.B) || !isFinite(b.gamma) ||
        !isFinite(b.s) || !isFinite(b.X) || !isFinite(b.beta))
        fail("bubble: non-finite parameter");
    if (b.beta.size() != b.X.size()) fail("bubble: X and beta dimensions differ");
    for (const auto& [n, v] : b.spectrum) {
        if (n.size() != b.X.size()) fail("bubble: spectrum multi-index has wrong dimension");
        for (int k : n)
            if (k < 0) fail("bubble: negative Hermite index");
        if (!isFinite(v)) fail("bubble: non-finite spectrum coefficient");
    }
}

inline void validateEnsemble(const BubbleEnsemble& e) {
    if (e.bubbles.empty()) fail("ensemble: at least one bubble required");
    for (const auto& b : e.bubbles) {
        validateBubble(b);
        if (b.dim() != e.d) fail("ensemble: bubble dimension differs from ensemble dimension");
    }
}

// True when the spectrum is supported on the zero multi-index alone with a
// nonzero coefficient, i.e. v is a pure Gaussian profile.  This is the gate
// for the closed-form Gaussian calculus and the DFMP step.
inline bool isPureGaussian(const Bubble& b) {
    bool zeroModeSeen = false;
    for (const auto& [n, v] : b.spectrum) {
        const bool isZero = (n == zeroIndex(b.dim()));
        if (isZero) {
            if (v == complexd{0.0, 0.0}) return false;
            zeroModeSeen = true;
        } else if (v != complexd{0.0, 0.0}) {
            return false;
        }
    }
    return zeroModeSeen;
}

// For a pure-Gaussian bubble, u = (alpha/L) e^{i gammaEff} e^{i beta.(x-X)}
// e^{-(2+iB)/(4L^2) |x-X|^2} with alpha real.  The zero-mode coefficient's
// modulus and argument fold into an effective amplitude and phase:
inline double foldedAmplitude(const Bubble& b) {
    auto it = b.spectrum.find(zeroIndex(b.dim()));
    if (it == b.spectrum.end()) return 0.0;
    return b.A * std::abs(it->second) * std::pow(M_PI, -0.25 * b.dim());
}

inline double foldedPhase(const Bubble& b) {
    auto it = b.spectrum.find(zeroIndex(b.dim()));
    if (it == b.spectrum.end()) return b.gamma;
    return b.gamma + std::arg(it->second);
}

inline complexd evaluateBubble(const Bubble& b, const vecd& x) {
    if (static_cast<int>(x.size()) != b.dim()) fail("evaluateBubble: point dimension mismatch");
    const int d = b.dim();
    vecd y(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) y[i] = (x[i] - b.X[i]) / b.L;
    const double phase = b.gamma + b.L * dot(b.beta, y) - 0.25 * b.B * normSq(y);
    complexd profile{0.0, 0.0};
    for (const auto& [n, v] : b.spectrum) profile += v * hermiteProduct(n, y);
    return (b.A / b.L) * std::exp(iu * phase) * profile;
}

inline std::vector<complexd> evaluateEnsemble(const BubbleEnsemble& e,
                                              const std::vector<vecd>& points) {
    std::vector<complexd> out(points.size(), complexd{0.0, 0.0});
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (static_cast<int>(points[p].size()) != e.d)
            fail("evaluateEnsemble: point dimension mismatch");
        for (const auto& b : e.bubbles) out[p] += evaluateBubble(b, points[p]);
    }
    return out;
}

}  // namespace nlsb
