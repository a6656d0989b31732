#pragma once

#include "nlsb/bubble.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// Time derivatives of one bubble's parameters (physical time t).
struct ParamDerivs {
    double dA = 0.0;
    double dL = 0.0;
    double dB = 0.0;
    vecd dX;
    vecd dbeta;
    double dgamma = 0.0;

    explicit ParamDerivs(int d = 0) : dX(static_cast<std::size_t>(d), 0.0), dbeta(static_cast<std::size_t>(d), 0.0) {}
};

// Right-hand side of the modulation system for the linear harmonic flow
// i u_t + Delta u - |x|^2 u = 0, written in physical time:
//   A_t = A B (d-2)/(2L^2),  L_t = -B/L,  B_t = (4L^4 - 4 - B^2)/L^2,
//   X_t = 2 beta,            beta_t = -2X, gamma_t = |beta|^2 - |X|^2.
// The internal time advances as s_t = 1/L^2 (not included here).
inline ParamDerivs linearModulationRhs(const Bubble& b) {
    const int d = b.dim();
    const double L2 = b.L * b.L;
    ParamDerivs r(d);
    r.dA = b.A * b.B * (d - 2) / (2.0 * L2);
    r.dL = -b.B / b.L;
    r.dB = (4.0 * L2 * L2 - 4.0 - b.B * b.B) / L2;
    for (int i = 0; i < d; ++i) {
        r.dX[i] = 2.0 * b.beta[i];
        r.dbeta[i] = -2.0 * b.X[i];
    }
    r.dgamma = normSq(b.beta) - normSq(b.X);
    return r;
}

// Conserved width energy (1 + B^2/4)/L^2 + L^2 of the (L,B) subsystem.
inline double widthEnergy(double L, double B) {
    return (1.0 + 0.25 * B * B) / (L * L) + L * L;
}

// Conserved center energy |X|^2 + |beta|^2 of the (X,beta) subsystem.
inline double centerEnergy(const vecd& X, const vecd& beta) { return normSq(X) + normSq(beta); }

}  // namespace nlsb
