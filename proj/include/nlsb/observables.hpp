#pragma once

#include <cmath>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/fft.hpp"
#include "nlsb/gaussian_kernels.hpp"
#include "nlsb/grid.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

struct ObservableParams {
    double mu = 1.0;
    double lambda = 1.0;
};

struct ObservableRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double momentum = 0.0;
    vecd nonRadial;
};

namespace detail {

inline double realPart(complexd z, const char* what) {
    if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real()))) fail(what);
    return z.real();
}

// Pairwise closed-form aggregates over the ensemble: for u = sum_j u_j these
// are sum_{j,k} of the inner products below, each evaluated from one Gaussian
// pair kernel per ordered (j, k).
struct BubbleQuadratics {
    complexd mass{0.0, 0.0};                // <u_j, u_k>
    complexd grad{0.0, 0.0};                // <grad u_j, grad u_k>
    complexd xsq{0.0, 0.0};                 // <|x|^2 u_j, u_k>
    complexd xgrad{0.0, 0.0};               // int x . grad u_j conj(u_k)
    std::vector<complexd> pderiv;           // int d_n u_j conj(u_k)
    std::vector<complexd> xweight;          // int x_n u_j conj(u_k)
};

inline BubbleQuadratics bubbleQuadratics(const BubbleEnsemble& e) {
    validateEnsemble(e);
    const int d = e.d;
    BubbleQuadratics q;
    q.pderiv.assign(static_cast<std::size_t>(d), complexd{0.0, 0.0});
    q.xweight.assign(static_cast<std::size_t>(d), complexd{0.0, 0.0});

    for (const auto& bj : e.bubbles) {
        const double lj = bj.L;
        const complexd cj = complexd{2.0, bj.B} / (2.0 * lj);
        for (const auto& bk : e.bubbles) {
            const auto kern = pairKernel(bj, bk);
            const GaussianMomentTable tab(kern.z, kern.a, kern.xi);
            auto G = [&](int row, int col) {
                return gramEntryFromKernel(kern, tab, bj, bk, row, col);
            };
            const double w = foldedAmplitude(bj) * foldedAmplitude(bk) / (lj * bk.L);
            const complexd ck = complexd{2.0, bk.B} / (2.0 * bk.L);
            const complexd g11 = G(1, 1);

            q.mass += w * g11;

            complexd grad = dot(bj.beta, bk.beta) * g11;
            complexd xsq = normSq(bj.X) * g11 + lj * lj * G(d + 2, 1);
            complexd xgrad = iu * dot(bj.X, bj.beta) * g11 - cj * lj * G(d + 2, 1);
            for (int n = 0; n < d; ++n) {
                const complexd gn1 = G(n + 2, 1);
                grad += iu * cj * bk.beta[static_cast<std::size_t>(n)] * gn1 -
                        iu * std::conj(ck) * bj.beta[static_cast<std::size_t>(n)] * G(1, n + 2) +
                        cj * std::conj(ck) * G(n + 2, n + 2);
                xsq += 2.0 * lj * bj.X[static_cast<std::size_t>(n)] * gn1;
                xgrad += (iu * lj * bj.beta[static_cast<std::size_t>(n)] -
                          cj * bj.X[static_cast<std::size_t>(n)]) *
                         gn1;
                q.pderiv[static_cast<std::size_t>(n)] +=
                    w * (iu * bj.beta[static_cast<std::size_t>(n)] * g11 - cj * gn1);
                q.xweight[static_cast<std::size_t>(n)] +=
                    w * (bj.X[static_cast<std::size_t>(n)] * g11 + lj * gn1);
            }
            q.grad += w * grad;
            q.xsq += w * xsq;
            q.xgrad += w * xgrad;
        }
    }
    return q;
}

inline double bubbleInteractionQuartic(const BubbleEnsemble& e) {
    complexd s{0.0, 0.0};
    for (std::size_t j = 0; j < e.bubbles.size(); ++j)
        s += foldedAmplitude(e.bubbles[j]) / e.bubbles[j].L *
             interactionEntry(e, static_cast<int>(j), 1);
    return realPart(s, "bubble interaction term has an imaginary residue");
}

}  // namespace detail

inline double bubbleMass(const BubbleEnsemble& e) {
    const auto q = detail::bubbleQuadratics(e);
    return detail::realPart(q.mass, "bubbleMass: imaginary residue");
}

inline double bubbleEnergy(const BubbleEnsemble& e, const ObservableParams& p = {}) {
    const auto q = detail::bubbleQuadratics(e);
    const double quad =
        0.5 * detail::realPart(q.grad + q.xsq, "bubbleEnergy: imaginary residue");
    return p.mu * quad + 0.25 * p.lambda * detail::bubbleInteractionQuartic(e);
}

inline double bubbleMomentum(const BubbleEnsemble& e, const ObservableParams& p = {}) {
    if (e.d != 2) fail("bubbleMomentum is defined for d = 2 only");
    const double energy = bubbleEnergy(e, p);
    const auto q = detail::bubbleQuadratics(e);
    const double xsq = detail::realPart(q.xsq, "bubbleMomentum: imaginary residue");
    const double a = energy - p.mu * xsq;
    const double b = p.mu * q.xgrad.imag();
    return a * a + b * b;
}

// P_n = mu^2 [(Im int d_n u conj(u))^2 + (int x_n |u|^2)^2]. The two factors
// satisfy p' = -2 mu x, x' = 2 mu p along the flow, so only the equal-weight
// combination is a constant of motion.
inline vecd bubbleNonRadial(const BubbleEnsemble& e, const ObservableParams& p = {}) {
    if (e.d != 2) fail("bubbleNonRadial is defined for d = 2 only");
    const auto q = detail::bubbleQuadratics(e);
    vecd out(static_cast<std::size_t>(e.d));
    for (int n = 0; n < e.d; ++n) {
        const double pn = q.pderiv[static_cast<std::size_t>(n)].imag();
        const double xn = detail::realPart(q.xweight[static_cast<std::size_t>(n)],
                                           "bubbleNonRadial: imaginary residue");
        out[static_cast<std::size_t>(n)] = p.mu * p.mu * (pn * pn + xn * xn);
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<complexd>> spectralGradients(const GridField& f) {
    std::vector<complexd> hat = f.values;
    fftForward(hat, f.shape);
    std::vector<std::vector<complexd>> grads;
    for (int axis = 0; axis < f.dim(); ++axis) {
        std::vector<complexd> g(hat.size());
        if (f.dim() == 1) {
            for (int i = 0; i < f.shape[0]; ++i)
                g[static_cast<std::size_t>(i)] =
                    iu * fourierMode(f, 0, i) * hat[static_cast<std::size_t>(i)];
        } else {
            std::size_t idx = 0;
            for (int i = 0; i < f.shape[0]; ++i)
                for (int k = 0; k < f.shape[1]; ++k, ++idx)
                    g[idx] = iu * fourierMode(f, axis, axis == 0 ? i : k) * hat[idx];
        }
        fftInverse(g, f.shape);
        grads.push_back(std::move(g));
    }
    return grads;
}

}  // namespace detail

// Same invariants as the bubble-side forms, evaluated by Riemann sums with
// FFT gradients. Intended for cross-checking rendered or spectral states.
inline ObservableRecord gridObservables(const GridField& f, const ObservableParams& p = {}) {
    validateGrid(f);
    const int d = f.dim();
    const double dV = cellVolume(f);
    const auto grads = detail::spectralGradients(f);

    double mass = 0.0, gradSq = 0.0, xsq = 0.0, quartic = 0.0;
    complexd xgrad{0.0, 0.0};
    std::vector<complexd> pderiv(static_cast<std::size_t>(d), complexd{0.0, 0.0});
    vecd xweight(static_cast<std::size_t>(d), 0.0);

    forEachPoint(f, [&](std::size_t idx, const vecd& x) {
        const complexd v = f.values[idx];
        const double m = std::norm(v);
        mass += m;
        quartic += m * m;
        xsq += normSq(x) * m;
        for (int n = 0; n < d; ++n) {
            const complexd gn = grads[static_cast<std::size_t>(n)][idx];
            gradSq += std::norm(gn);
            const complexd gv = gn * std::conj(v);
            xgrad += x[static_cast<std::size_t>(n)] * gv;
            pderiv[static_cast<std::size_t>(n)] += gv;
            xweight[static_cast<std::size_t>(n)] += x[static_cast<std::size_t>(n)] * m;
        }
    });

    ObservableRecord r;
    r.mass = mass * dV;
    r.energy = 0.5 * p.mu * (gradSq + xsq) * dV + 0.25 * p.lambda * quartic * dV;
    const double a = r.energy - p.mu * xsq * dV;
    const double b = p.mu * xgrad.imag() * dV;
    r.momentum = a * a + b * b;
    r.nonRadial.assign(static_cast<std::size_t>(d), 0.0);
    for (int n = 0; n < d; ++n) {
        const double pn = pderiv[static_cast<std::size_t>(n)].imag() * dV;
        const double xn = xweight[static_cast<std::size_t>(n)] * dV;
        r.nonRadial[static_cast<std::size_t>(n)] = p.mu * p.mu * (pn * pn + xn * xn);
    }
    return r;
}

// Relative residual of Re int lap(f) conj((d/2) f + x . grad f) = -int |grad f|^2,
// which any smooth decaying field satisfies (the dilation-scaling proof pins
// only the real part; the imaginary part is unconstrained for complex f).
// Checks that the spectral derivative stack is self-consistent on this grid.
inline double pohozaevCheck(const GridField& f) {
    validateGrid(f);
    const int d = f.dim();
    const double dV = cellVolume(f);
    const auto grads = detail::spectralGradients(f);

    std::vector<complexd> lap = f.values;
    fftForward(lap, f.shape);
    if (d == 1) {
        for (int i = 0; i < f.shape[0]; ++i) {
            const double xi = fourierMode(f, 0, i);
            lap[static_cast<std::size_t>(i)] *= -xi * xi;
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < f.shape[0]; ++i) {
            const double xi0 = fourierMode(f, 0, i);
            for (int k = 0; k < f.shape[1]; ++k, ++idx) {
                const double xi1 = fourierMode(f, 1, k);
                lap[idx] *= -(xi0 * xi0 + xi1 * xi1);
            }
        }
    }
    fftInverse(lap, f.shape);

    complexd cross{0.0, 0.0};
    double gradSq = 0.0;
    forEachPoint(f, [&](std::size_t idx, const vecd& x) {
        complexd dilation = 0.5 * d * f.values[idx];
        for (int n = 0; n < d; ++n) {
            dilation += x[static_cast<std::size_t>(n)] * grads[static_cast<std::size_t>(n)][idx];
            gradSq += std::norm(grads[static_cast<std::size_t>(n)][idx]);
        }
        cross += lap[idx] * std::conj(dilation);
    });

    const double den = gradSq * dV;
    if (!(den > 0.0)) fail("pohozaevCheck: field has no gradient mass");
    return std::abs(cross.real() * dV + den) / den;
}

}  // namespace nlsb
