#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlsb {

using complexd = std::complex<double>;
using vecd = std::vector<double>;

inline constexpr complexd iu{0.0, 1.0};

inline double dot(const vecd& a, const vecd& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double normSq(const vecd& a) { return dot(a, a); }

inline bool isFinite(double x) { return std::isfinite(x); }

inline bool isFinite(const complexd& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool isFinite(const vecd& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

[[noreturn]] inline void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

}  // namespace nlsb
