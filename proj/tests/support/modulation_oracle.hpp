#pragma once

#include <boost/numeric/odeint.hpp>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/modulation.hpp"

// Brute-force reference for the closed-form linear propagator: adaptive
// high-order integration (Runge-Kutta-Fehlberg 7(8)) of the modulation system
// in physical time, carrying (A, L, B, X, beta, gamma, s) with s_t = 1/L^2.

namespace nlsb::testsupport {

struct BruteState {
    Bubble bubble;
    double s = 0.0;
};

inline BruteState integrateModulation(const Bubble& b0, double t, double tol = 1e-12) {
    namespace odeint = boost::numeric::odeint;
    const int d = b0.dim();
    using State = std::vector<double>;
    // layout: A, L, B, X[0..d), beta[0..d), gamma, s
    State y(static_cast<std::size_t>(2 * d + 5));
    y[0] = b0.A;
    y[1] = b0.L;
    y[2] = b0.B;
    for (int i = 0; i < d; ++i) {
        y[3 + i] = b0.X[i];
        y[3 + d + i] = b0.beta[i];
    }
    y[3 + 2 * d] = b0.gamma;
    y[4 + 2 * d] = b0.s;

    auto rhs = [d](const State& u, State& dudt, double) {
        Bubble b;
        b.A = u[0];
        b.L = u[1];
        b.B = u[2];
        b.X.assign(u.begin() + 3, u.begin() + 3 + d);
        b.beta.assign(u.begin() + 3 + d, u.begin() + 3 + 2 * d);
        const ParamDerivs r = linearModulationRhs(b);
        dudt[0] = r.dA;
        dudt[1] = r.dL;
        dudt[2] = r.dB;
        for (int i = 0; i < d; ++i) {
            dudt[3 + i] = r.dX[i];
            dudt[3 + d + i] = r.dbeta[i];
        }
        dudt[3 + 2 * d] = r.dgamma;
        dudt[4 + 2 * d] = 1.0 / (b.L * b.L);
    };

    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
    const double dtInit = (t >= 0.0 ? 1e-3 : -1e-3);
    odeint::integrate_adaptive(stepper, rhs, y, 0.0, t, dtInit);

    BruteState out;
    out.bubble = b0;
    out.bubble.A = y[0];
    out.bubble.L = y[1];
    out.bubble.B = y[2];
    out.bubble.X.assign(y.begin() + 3, y.begin() + 3 + d);
    out.bubble.beta.assign(y.begin() + 3 + d, y.begin() + 3 + 2 * d);
    out.bubble.gamma = y[3 + 2 * d];
    out.bubble.s = y[4 + 2 * d];
    out.s = y[4 + 2 * d] - b0.s;
    return out;
}

// Mixed absolute/relative discrepancy used for parameters that cross zero.
inline double paramError(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace nlsb::testsupport
