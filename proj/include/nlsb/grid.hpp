#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// Uniform periodic grid on [-halfWidth, halfWidth)^d, d in {1, 2}, row-major
// with the last axis fastest.
struct GridField {
    std::vector<complexd> values;
    std::vector<int> shape;
    double halfWidth = 15.0;

    int dim() const { return static_cast<int>(shape.size()); }
    std::size_t size() const {
        std::size_t n = 1;
        for (int s : shape) n *= static_cast<std::size_t>(s);
        return n;
    }
};

inline void validateGrid(const GridField& f) {
    if (f.shape.empty() || f.shape.size() > 2) fail("grid supports d in {1, 2}");
    for (int n : f.shape)
        if (n < 8) fail("grid needs at least 8 points per axis");
    if (!(f.halfWidth > 0.0) || !std::isfinite(f.halfWidth))
        fail("grid half-width must be positive");
    if (f.values.size() != f.size()) fail("grid value count does not match shape");
}

inline GridField makeGrid(std::vector<int> shape, double halfWidth) {
    GridField f;
    f.shape = std::move(shape);
    f.halfWidth = halfWidth;
    std::size_t n = 1;
    for (int s : f.shape) n *= static_cast<std::size_t>(s > 0 ? s : 0);
    f.values.assign(n, complexd{0.0, 0.0});
    validateGrid(f);
    return f;
}

inline double gridCoord(const GridField& f, int axis, int index) {
    const int n = f.shape[static_cast<std::size_t>(axis)];
    return -f.halfWidth + index * (2.0 * f.halfWidth / n);
}

// Signed wavenumber of DFT bin `index`, Nyquist on the negative side.
inline double fourierMode(const GridField& f, int axis, int index) {
    const int n = f.shape[static_cast<std::size_t>(axis)];
    const int k = index < (n + 1) / 2 ? index : index - n;
    return M_PI * k / f.halfWidth;
}

inline double cellVolume(const GridField& f) {
    double v = 1.0;
    for (int n : f.shape) v *= 2.0 * f.halfWidth / n;
    return v;
}

// Calls fn(flatIndex, point) over the grid in storage order.
template <typename Fn>
inline void forEachPoint(const GridField& f, Fn&& fn) {
    if (f.dim() == 1) {
        vecd x(1);
        for (int i = 0; i < f.shape[0]; ++i) {
            x[0] = gridCoord(f, 0, i);
            fn(static_cast<std::size_t>(i), x);
        }
        return;
    }
    vecd x(2);
    std::size_t idx = 0;
    for (int i = 0; i < f.shape[0]; ++i) {
        x[0] = gridCoord(f, 0, i);
        for (int k = 0; k < f.shape[1]; ++k, ++idx) {
            x[1] = gridCoord(f, 1, k);
            fn(idx, x);
        }
    }
}

template <typename Fn>
inline GridField sampleGrid(std::vector<int> shape, double halfWidth, Fn&& fn) {
    GridField f = makeGrid(std::move(shape), halfWidth);
    forEachPoint(f, [&](std::size_t idx, const vecd& x) { f.values[idx] = fn(x); });
    return f;
}

inline GridField renderEnsemble(const BubbleEnsemble& e, std::vector<int> shape,
                                double halfWidth) {
    validateEnsemble(e);
    if (static_cast<int>(shape.size()) != e.d) fail("renderEnsemble: dimension mismatch");
    return sampleGrid(std::move(shape), halfWidth, [&](const vecd& x) {
        complexd u{0.0, 0.0};
        for (const auto& b : e.bubbles) u += evaluateBubble(b, x);
        return u;
    });
}

}  // namespace nlsb
