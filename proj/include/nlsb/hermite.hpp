#pragma once

#include <cmath>
#include <vector>

#include "nlsb/types.hpp"

namespace nlsb {

// L2-normalized Hermite function H_k, the eigenfunction of -d²/dz² + z² with
// eigenvalue 2k+1.  Evaluated by the three-term recurrence on the normalized
// family, which stays bounded where the naive polynomial-times-weight form
// overflows:
//   H_{k+1}(z) = z sqrt(2/(k+1)) H_k(z) - sqrt(k/(k+1)) H_{k-1}(z).
inline double hermiteFunction(int k, double z) {
    if (k < 0) fail("hermiteFunction: order must be non-negative");
    const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * z * z);
    if (k == 0) return h0;
    double hm = h0;
    double h = std::sqrt(2.0) * z * h0;
    for (int n = 1; n < k; ++n) {
        const double hp = z * std::sqrt(2.0 / (n + 1)) * h - std::sqrt(double(n) / (n + 1)) * hm;
        hm = h;
        h = hp;
    }
    return h;
}

// Tensor-product Hermite function phi_n(y) = prod_i H_{n_i}(y_i).
inline double hermiteProduct(const std::vector<int>& n, const vecd& y) {
    double p = 1.0;
    for (std::size_t i = 0; i < n.size(); ++i) p *= hermiteFunction(n[i], y[i]);
    return p;
}

}  // namespace nlsb
