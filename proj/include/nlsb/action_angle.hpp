#pragma once

#include <cmath>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// Canonical coordinates in which the linear modulation flow is linear in time:
//   h   = (L^4 + 1 + B^2/4)/(4L^2)        (action of the (L,B) pair, h >= 1/2)
//   xi  = atan2(B, 4h - 2L^2)             (conjugate angle, xi(t) = xi(0) - 4t)
//   a_i = (X_i^2 + beta_i^2)/2            (actions of the center motion)
//   th_i= atan2(X_i, beta_i)              (conjugate angles, th(t) = th(0) + 2t)
// m0 is the branch index of xi/2 in the half-open windows ((k-1/2)pi, (k+1/2)pi],
// recorded at the state's reference time for the s(t) branch bookkeeping.
struct ActionAngleState {
    double h = 0.5;
    vecd a;
    double xi = 0.0;
    vecd theta;
    int m0 = 0;

    int dim() const { return static_cast<int>(a.size()); }
};

// Branch index k of w within ((k-1/2)pi, (k+1/2)pi].
inline int branchIndex(double w) { return static_cast<int>(std::ceil(w / M_PI - 0.5)); }

inline ActionAngleState toActionAngle(const Bubble& b) {
    validateBubble(b);
    const int d = b.dim();
    const double L2 = b.L * b.L;
    ActionAngleState st;
    st.h = (L2 * L2 + 1.0 + 0.25 * b.B * b.B) / (4.0 * L2);
    if (st.h < 0.5) {
        if (st.h < 0.5 - 1e-12) fail("toActionAngle: action h below 1/2");
        st.h = 0.5;
    }
    st.xi = std::atan2(b.B, 4.0 * st.h - 2.0 * L2);
    st.m0 = branchIndex(0.5 * st.xi);
    st.a.resize(static_cast<std::size_t>(d));
    st.theta.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        st.a[i] = 0.5 * (b.X[i] * b.X[i] + b.beta[i] * b.beta[i]);
        st.theta[i] = std::atan2(b.X[i], b.beta[i]);
    }
    return st;
}

struct BubbleParams {
    double A = 0.0;
    double L = 0.0;
    double B = 0.0;
    vecd X;
    vecd beta;
    double gamma = 0.0;
};

// Reconstruction of the bubble parameters from action-angle coordinates.
// A(t) and gamma(t) are relative quantities: A_ref, L_ref, gamma_ref are the
// values at the reference time and `ref` supplies the reference angles for
// the phase update gamma = gamma_ref + sum_l (a_l/2)(sin 2th_l - sin 2th_l^ref).
inline BubbleParams fromActionAngle(const ActionAngleState& st, const ActionAngleState& ref,
                                    double A_ref, double L_ref, double gamma_ref) {
    double h = st.h;
    if (h < 0.5) {
        if (h < 0.5 - 1e-12) fail("fromActionAngle: action h below 1/2");
        h = 0.5;
    }
    const double r = std::sqrt((2.0 * h - 1.0) * (2.0 * h + 1.0));
    const int d = st.dim();
    BubbleParams p;
    const double L2 = 2.0 * h - std::cos(st.xi) * r;
    p.L = std::sqrt(L2);
    p.B = 2.0 * std::sin(st.xi) * r;
    p.X.resize(static_cast<std::size_t>(d));
    p.beta.resize(static_cast<std::size_t>(d));
    p.A = A_ref * std::pow(p.L / L_ref, 0.5 * (2 - d));
    p.gamma = gamma_ref;
    for (int i = 0; i < d; ++i) {
        const double rad = std::sqrt(2.0 * st.a[i]);
        p.X[i] = std::sin(st.theta[i]) * rad;
        p.beta[i] = std::cos(st.theta[i]) * rad;
        p.gamma += 0.5 * st.a[i] * (std::sin(2.0 * st.theta[i]) - std::sin(2.0 * ref.theta[i]));
    }
    return p;
}

inline BubbleParams fromActionAngle(const ActionAngleState& st, double A_ref, double L_ref,
                                    double gamma_ref) {
    return fromActionAngle(st, st, A_ref, L_ref, gamma_ref);
}

// Delta s = int_0^t L(tau)^{-2} dtau for the closed-form width motion with
// action h0 and initial angle xi0.  With r = sqrt(4h^2-1) and c = 2h + r,
// an antiderivative of 1/L^2(w) in the half-angle w = xi/2 is
//   F(w) = atan2(c sin(w - k pi), cos(w - k pi)) + k pi,  k = branchIndex(w),
// which is continuous and strictly increasing through the tan singularities
// (F' = 1/(2h - r cos 2w) > 0).  Then Delta s = (F(xi0/2) - F(xi0/2 - 2t))/2.
inline double computeSigma(double h0, double xi0, double t) {
    if (h0 < 0.5) {
        if (h0 < 0.5 - 1e-12) fail("computeSigma: action h below 1/2");
        h0 = 0.5;
    }
    const double r = std::sqrt((2.0 * h0 - 1.0) * (2.0 * h0 + 1.0));
    if (r == 0.0) return t;
    const double c = 2.0 * h0 + r;
    const auto F = [c](double w) {
        const int k = branchIndex(w);
        const double wt = w - k * M_PI;
        return std::atan2(c * std::sin(wt), std::cos(wt)) + k * M_PI;
    };
    const double w0 = 0.5 * xi0;
    return 0.5 * (F(w0) - F(w0 - 2.0 * t));
}

// Exact solution of the linear harmonic flow for one bubble over duration t:
// advance the angles (a, h frozen), reconstruct the parameters, update gamma
// and A relative to the reference state, advance the internal time by
// Delta s = computeSigma, and rotate each Hermite coefficient by
// e^{-(2|n|+d) i Delta s}.
inline Bubble propagateLinear(const Bubble& b, double t) {
    const ActionAngleState st0 = toActionAngle(b);
    ActionAngleState st = st0;
    st.xi -= 4.0 * t;
    for (double& th : st.theta) th += 2.0 * t;
    st.m0 = branchIndex(0.5 * st.xi);

    const BubbleParams p = fromActionAngle(st, st0, b.A, b.L, b.gamma);
    const double ds = computeSigma(st0.h, st0.xi, t);

    Bubble out = b;
    out.A = p.A;
    out.L = p.L;
    out.B = p.B;
    out.X = p.X;
    out.beta = p.beta;
    out.gamma = p.gamma;
    out.s = b.s + ds;
    const int d = b.dim();
    for (auto& [n, v] : out.spectrum) {
        int absn = 0;
        for (int k : n) absn += k;
        v *= std::exp(-iu * ((2.0 * absn + d) * ds));
    }
    return out;
}

inline BubbleEnsemble propagateEnsembleLinear(const BubbleEnsemble& e, double t) {
    BubbleEnsemble out = e;
    for (auto& b : out.bubbles) b = propagateLinear(b, t);
    return out;
}

}  // namespace nlsb
