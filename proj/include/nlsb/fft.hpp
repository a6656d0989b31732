#pragma once

#include <fftw3.h>

#include <cstring>
#include <map>
#include <vector>

#include "nlsb/types.hpp"

namespace nlsb {
namespace detail {

struct FftPlans {
    fftw_complex* buffer = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    std::size_t count = 0;
};

// One in-place plan pair per grid shape, reused across calls. Transforms run
// through an fftw_malloc'ed buffer so caller storage needs no special
// alignment; copies in and out keep results independent of allocator layout.
inline FftPlans& fftPlansFor(const std::vector<int>& shape) {
    static std::map<std::vector<int>, FftPlans> cache;
    auto it = cache.find(shape);
    if (it != cache.end()) return it->second;

    FftPlans p;
    p.count = 1;
    for (int n : shape) p.count *= static_cast<std::size_t>(n);
    p.buffer = fftw_alloc_complex(p.count);
    p.forward = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), p.buffer,
                              p.buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), p.buffer,
                               p.buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!p.buffer || !p.forward || !p.backward) fail("FFT plan creation failed");
    return cache.emplace(shape, p).first->second;
}

inline void runFftPlan(std::vector<complexd>& values, const std::vector<int>& shape,
                       bool inverse) {
    FftPlans& p = fftPlansFor(shape);
    if (values.size() != p.count) fail("FFT: value count does not match shape");
    std::memcpy(p.buffer, values.data(), p.count * sizeof(fftw_complex));
    fftw_execute(inverse ? p.backward : p.forward);
    std::memcpy(values.data(), p.buffer, p.count * sizeof(fftw_complex));
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(p.count);
        for (auto& v : values) v *= scale;
    }
}

}  // namespace detail

// Unnormalized forward DFT: v_hat[k] = sum_j v[j] exp(-2*pi*i*j*k/N) per axis.
inline void fftForward(std::vector<complexd>& values, const std::vector<int>& shape) {
    detail::runFftPlan(values, shape, false);
}

// Inverse of fftForward (normalized by 1/N_total).
inline void fftInverse(std::vector<complexd>& values, const std::vector<int>& shape) {
    detail::runFftPlan(values, shape, true);
}

}  // namespace nlsb
