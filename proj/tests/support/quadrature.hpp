#pragma once

#include <complex>
#include <functional>

#include "nlsb/types.hpp"

// Independent quadrature oracles for the closed-form Gaussian integrals.
// Composite midpoint rule on a truncated box: for smooth integrands that decay
// below 1e-14 at the boundary the rule is spectrally accurate (all boundary
// terms of the Euler-Maclaurin expansion vanish).

namespace nlsb::testsupport {

inline complexd integrate1d(const std::function<complexd(double)>& f, double halfwidth, int n) {
    const double h = 2.0 * halfwidth / n;
    complexd sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double x = -halfwidth + (i + 0.5) * h;
        sum += f(x);
    }
    return sum * h;
}

inline complexd integrate2d(const std::function<complexd(double, double)>& f, double halfwidth,
                            int n) {
    const double h = 2.0 * halfwidth / n;
    complexd sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double x = -halfwidth + (i + 0.5) * h;
        complexd row{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const double y = -halfwidth + (j + 0.5) * h;
            row += f(x, y);
        }
        sum += row;
    }
    return sum * (h * h);
}

}  // namespace nlsb::testsupport
