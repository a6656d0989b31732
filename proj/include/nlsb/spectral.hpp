#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "nlsb/fft.hpp"
#include "nlsb/grid.hpp"
#include "nlsb/types.hpp"

namespace nlsb {
namespace detail {

inline void applySpatialQuadraticPhase(GridField& f, double coeff) {
    forEachPoint(f, [&](std::size_t idx, const vecd& x) {
        f.values[idx] *= std::exp(complexd{0.0, -coeff * normSq(x)});
    });
}

inline void applyFrequencyQuadraticPhase(GridField& f, double coeff) {
    if (f.dim() == 1) {
        for (int i = 0; i < f.shape[0]; ++i) {
            const double xi = fourierMode(f, 0, i);
            f.values[static_cast<std::size_t>(i)] *= std::exp(complexd{0.0, -coeff * xi * xi});
        }
        return;
    }
    std::size_t idx = 0;
    for (int i = 0; i < f.shape[0]; ++i) {
        const double xi0 = fourierMode(f, 0, i);
        for (int k = 0; k < f.shape[1]; ++k, ++idx) {
            const double xi1 = fourierMode(f, 1, k);
            f.values[idx] *= std::exp(complexd{0.0, -coeff * (xi0 * xi0 + xi1 * xi1)});
        }
    }
}

}  // namespace detail

// Exact propagator for i f_t = -(lap f - |x|^2 f) over one step:
// e^{-i(tan(dt)/2)|x|^2} F^{-1} e^{-i(sin(2dt)/2)|xi|^2} F e^{-i(tan(dt)/2)|x|^2}.
// Valid only for |dt| < pi/2 where tan stays finite.
inline GridField linearStepSpectral(GridField f, double dt) {
    validateGrid(f);
    if (!std::isfinite(dt)) fail("linearStepSpectral: dt must be finite");
    if (std::abs(dt) >= M_PI / 2.0 - 1e-6)
        fail("linearStepSpectral: |dt| must stay below pi/2; substep the interval");
    if (dt == 0.0) return f;

    const double a = std::tan(dt) / 2.0;
    const double b = std::sin(2.0 * dt) / 2.0;
    detail::applySpatialQuadraticPhase(f, a);
    fftForward(f.values, f.shape);
    detail::applyFrequencyQuadraticPhase(f, b);
    fftInverse(f.values, f.shape);
    detail::applySpatialQuadraticPhase(f, a);
    return f;
}

// Evolves i f_t = -mu (lap f - |x|^2 f) over time t by equal substeps of at
// most 1.0 in the rescaled time mu*t.
inline GridField linearEvolveSpectral(GridField f, double t, double mu = 1.0) {
    validateGrid(f);
    if (!std::isfinite(t) || !std::isfinite(mu)) fail("linearEvolveSpectral: non-finite argument");
    const double tau = mu * t;
    if (tau == 0.0) return f;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(tau) / 1.0)));
    const double sub = tau / n;
    for (int i = 0; i < n; ++i) f = linearStepSpectral(std::move(f), sub);
    return f;
}

// Exact flow of i f_t = lambda f |f|^2: the modulus is pointwise conserved, so
// each value picks up the phase e^{-i lambda |f|^2 dt}.
inline GridField nonlinearStepSpectral(GridField f, double dt, double lambda = 1.0) {
    validateGrid(f);
    if (!std::isfinite(dt) || !std::isfinite(lambda))
        fail("nonlinearStepSpectral: non-finite argument");
    for (auto& v : f.values) v *= std::exp(complexd{0.0, -lambda * dt * std::norm(v)});
    return f;
}

inline GridField strangStepSpectral(GridField f, double dt, double mu = 1.0,
                                    double lambda = 1.0) {
    f = linearEvolveSpectral(std::move(f), dt / 2.0, mu);
    f = nonlinearStepSpectral(std::move(f), dt, lambda);
    f = linearEvolveSpectral(std::move(f), dt / 2.0, mu);
    return f;
}

// Fraction of L^2 mass carried by the top third of |wavenumber| on any axis.
// Large values mean the grid no longer resolves the field.
inline double spectralTailFraction(const GridField& f) {
    validateGrid(f);
    std::vector<complexd> hat = f.values;
    fftForward(hat, f.shape);

    auto inTail = [&](int axis, int index) {
        const int n = f.shape[static_cast<std::size_t>(axis)];
        const int k = index < (n + 1) / 2 ? index : index - n;
        return 3 * std::abs(k) >= n;
    };

    double total = 0.0, tail = 0.0;
    if (f.dim() == 1) {
        for (int i = 0; i < f.shape[0]; ++i) {
            const double m = std::norm(hat[static_cast<std::size_t>(i)]);
            total += m;
            if (inTail(0, i)) tail += m;
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < f.shape[0]; ++i)
            for (int k = 0; k < f.shape[1]; ++k, ++idx) {
                const double m = std::norm(hat[idx]);
                total += m;
                if (inTail(0, i) || inTail(1, k)) tail += m;
            }
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace nlsb
