#pragma once

#include <cmath>
#include <complex>

#include "nlsb/bubble.hpp"
#include "nlsb/gaussian_moments.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

// The tangent family of one pure-Gaussian bubble (amplitude-free):
//   b_{j,1}   = e^{i Gamma_j} e^{-|y_j|^2/2},
//   b_{j,n+1} = (y_j)_n b_{j,1},   n = 1..d,
//   b_{j,d+2} = |y_j|^2 b_{j,1},
// with Gamma_j = gammaEff_j + L_j beta_j.y_j - (B_j/4)|y_j|^2 and the
// zero-mode coefficient folded into gammaEff (see bubble.hpp).
// Every inner product <f, g> = int f conj(g) of two such families reduces to
// moments of e^{-z|x|^2 + a.x} at a single frequency xi:

struct GaussianPairKernel {
    complexd z;   // (2+iB_l)/(4L_l^2) + (2-iB_j)/(4L_j^2)
    vecd a;       // X_l/L_l^2 + X_j/L_j^2
    vecd xi;      // (B_j/2L_j^2) X_j + beta_j - (B_l/2L_l^2) X_l - beta_l
    complexd C;   // constant prefactor, phases relative to gammaEff
    int d = 0;
};

namespace detail {

inline void requireGaussian(const Bubble& b, const char* who) {
    if (!isPureGaussian(b)) fail(std::string(who) + ": bubble spectrum is not pure Gaussian");
}

}  // namespace detail

// First argument supplies the un-conjugated factor, second the conjugated one,
// matching <b_{l,.}, b_{j,.}>.
inline GaussianPairKernel pairKernel(const Bubble& bl, const Bubble& bj) {
    detail::requireGaussian(bl, "pairKernel");
    detail::requireGaussian(bj, "pairKernel");
    if (bl.dim() != bj.dim()) fail("pairKernel: dimension mismatch");
    const int d = bl.dim();
    const double Ll2 = bl.L * bl.L, Lj2 = bj.L * bj.L;
    const complexd ql = complexd{2.0, bl.B} / (4.0 * Ll2);   // (2+iB_l)/(4L_l^2)
    const complexd qj = complexd{2.0, -bj.B} / (4.0 * Lj2);  // (2-iB_j)/(4L_j^2)
    GaussianPairKernel k;
    k.d = d;
    k.z = ql + qj;
    k.a.resize(static_cast<std::size_t>(d));
    k.xi.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        k.a[i] = bl.X[i] / Ll2 + bj.X[i] / Lj2;
        k.xi[i] = 0.5 * bj.B / Lj2 * bj.X[i] + bj.beta[i] - 0.5 * bl.B / Ll2 * bl.X[i] - bl.beta[i];
    }
    const complexd expo = iu * (foldedPhase(bl) - foldedPhase(bj)) - ql * normSq(bl.X) -
                          qj * normSq(bj.X) - iu * dot(bl.beta, bl.X) + iu * dot(bj.beta, bj.X);
    k.C = std::exp(expo);
    return k;
}

namespace detail {

// <b_{l,row}, b_{j,col}> for the implemented (row, col) patterns, written as
// polynomial expansions of (y_l)- and (y_j)-factors in the moment table.
// Patterns with the polynomial weight on the conjugated side only are obtained
// from hermiticity: <b_{l,r}, b_{j,c}> = conj(<b_{j,c}, b_{l,r}>).
inline complexd gramEntryFromKernel(const GaussianPairKernel& k, const GaussianMomentTable& t,
                                    const Bubble& bl, const Bubble& bj, int row, int col) {
    const int d = k.d;
    if (row < 1 || row > d + 2 || col < 1 || col > d + 2) fail("gramEntry: index out of range");

    const auto xdotxm = [&](const vecd& X, int m) {
        complexd s{0.0, 0.0};
        for (int n = 0; n < d; ++n) s += X[n] * t.xmxn(n, m);
        return s;
    };
    const auto xdot = [&](const vecd& X) {
        complexd s{0.0, 0.0};
        for (int n = 0; n < d; ++n) s += X[n] * t.xm(n);
        return s;
    };
    const auto xdotr2 = [&](const vecd& X) {
        complexd s{0.0, 0.0};
        for (int n = 0; n < d; ++n) s += X[n] * t.xmr2(n);
        return s;
    };

    if (row == 1 && col == 1) return k.C * t.one();

    if (col == 1 && row >= 2 && row <= d + 1) {
        const int n = row - 2;
        return k.C / bl.L * (t.xm(n) - bl.X[n] * t.one());
    }
    if (row == 1 && col >= 2 && col <= d + 1) {
        const int n = col - 2;
        return k.C / bj.L * (t.xm(n) - bj.X[n] * t.one());
    }

    if (col == 1 && row == d + 2)
        return k.C / (bl.L * bl.L) * (t.r2() - 2.0 * xdot(bl.X) + normSq(bl.X) * t.one());
    if (row == 1 && col == d + 2)
        return k.C / (bj.L * bj.L) * (t.r2() - 2.0 * xdot(bj.X) + normSq(bj.X) * t.one());

    if (row >= 2 && row <= d + 1 && col >= 2 && col <= d + 1) {
        const int n = row - 2, m = col - 2;
        return k.C / (bl.L * bj.L) *
               (t.xmxn(n, m) - bl.X[n] * t.xm(m) - bj.X[m] * t.xm(n) +
                bl.X[n] * bj.X[m] * t.one());
    }

    if (row == d + 2 && col >= 2 && col <= d + 1) {
        const int m = col - 2;
        return k.C / (bl.L * bl.L * bj.L) *
               (t.xmr2(m) - 2.0 * xdotxm(bl.X, m) + normSq(bl.X) * t.xm(m) -
                bj.X[m] * t.r2() + 2.0 * bj.X[m] * xdot(bl.X) -
                normSq(bl.X) * bj.X[m] * t.one());
    }
    if (row >= 2 && row <= d + 1 && col == d + 2) {
        const int n = row - 2;
        return k.C / (bj.L * bj.L * bl.L) *
               (t.xmr2(n) - 2.0 * xdotxm(bj.X, n) + normSq(bj.X) * t.xm(n) -
                bl.X[n] * t.r2() + 2.0 * bl.X[n] * xdot(bj.X) -
                normSq(bj.X) * bl.X[n] * t.one());
    }

    // row == d+2 && col == d+2
    complexd cross{0.0, 0.0};
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) cross += bl.X[n] * bj.X[m] * t.xmxn(n, m);
    const double xl2 = normSq(bl.X), xj2 = normSq(bj.X);
    complexd sum = t.r4();
    for (int n = 0; n < d; ++n) sum += -2.0 * (bl.X[n] + bj.X[n]) * t.xmr2(n);
    sum += (xl2 + xj2) * t.r2();
    sum += 4.0 * cross;
    for (int n = 0; n < d; ++n) sum += -2.0 * (xj2 * bl.X[n] + xl2 * bj.X[n]) * t.xm(n);
    sum += xl2 * xj2 * t.one();
    return k.C / (bl.L * bl.L * bj.L * bj.L) * sum;
}

inline complexd gramEntryFromKernel(const GaussianPairKernel& k, const Bubble& bl,
                                    const Bubble& bj, int row, int col) {
    return gramEntryFromKernel(k, GaussianMomentTable(k.z, k.a, k.xi), bl, bj, row, col);
}

}  // namespace detail

inline complexd gramEntry(const Bubble& bl, const Bubble& bj, int row, int col) {
    return detail::gramEntryFromKernel(pairKernel(bl, bj), bl, bj, row, col);
}

// Kernel of one ordered triple (k, l) un-conjugated x (m, j) conjugated in the
// interaction integral int u_k u_l conj(u_m) conj(b_{j,row}).  C carries the
// folded amplitudes alpha_k alpha_l alpha_m / (L_k L_l L_m) of the three field
// factors; the test function stays amplitude-free.
struct GaussianTripleKernel {
    complexd z;
    vecd a;
    vecd xi;
    complexd C;
    int d = 0;
};

inline GaussianTripleKernel tripleKernel(const Bubble& bk, const Bubble& bl, const Bubble& bm,
                                         const Bubble& bj) {
    const int d = bj.dim();
    GaussianTripleKernel t;
    t.d = d;
    const Bubble* plus[2] = {&bk, &bl};
    const Bubble* minus[2] = {&bm, &bj};
    complexd z{0.0, 0.0};
    vecd a(static_cast<std::size_t>(d), 0.0), xi(static_cast<std::size_t>(d), 0.0);
    double cre = 0.0;
    double cim = 0.0;
    for (const Bubble* b : plus) {
        const double L2 = b->L * b->L;
        z += complexd{2.0, b->B} / (4.0 * L2);
        for (int i = 0; i < d; ++i) {
            a[i] += b->X[i] / L2;
            xi[i] -= b->beta[i] + 0.5 * b->B / L2 * b->X[i];
        }
        cre -= 0.5 * normSq(b->X) / L2;
        cim += foldedPhase(*b) - dot(b->beta, b->X) - 0.25 * b->B * normSq(b->X) / L2;
    }
    for (const Bubble* b : minus) {
        const double L2 = b->L * b->L;
        z += complexd{2.0, -b->B} / (4.0 * L2);
        for (int i = 0; i < d; ++i) {
            a[i] += b->X[i] / L2;
            xi[i] += b->beta[i] + 0.5 * b->B / L2 * b->X[i];
        }
        cre -= 0.5 * normSq(b->X) / L2;
        cim -= foldedPhase(*b) - dot(b->beta, b->X) - 0.25 * b->B * normSq(b->X) / L2;
    }
    t.z = z;
    t.a = std::move(a);
    t.xi = std::move(xi);
    const double amp =
        foldedAmplitude(bk) * foldedAmplitude(bl) * foldedAmplitude(bm) / (bk.L * bl.L * bm.L);
    t.C = amp * std::exp(complexd{cre, cim});
    return t;
}

namespace detail {

// Contribution of one triple kernel to <u_k u_l conj(u_m), b_{j,row}>.
inline complexd tripleRowFromKernel(const GaussianTripleKernel& k, const GaussianMomentTable& t,
                                    const Bubble& bj, int row) {
    const int d = k.d;
    if (row < 1 || row > d + 2) fail("interactionEntry: row out of range");
    if (row == 1) return k.C * t.one();
    if (row <= d + 1) {
        const int n = row - 2;
        return k.C / bj.L * (t.xm(n) - bj.X[n] * t.one());
    }
    complexd xdot{0.0, 0.0};
    for (int n = 0; n < d; ++n) xdot += bj.X[n] * t.xm(n);
    return k.C / (bj.L * bj.L) * (t.r2() - 2.0 * xdot + normSq(bj.X) * t.one());
}

inline complexd tripleRowFromKernel(const GaussianTripleKernel& k, const Bubble& bj, int row) {
    return tripleRowFromKernel(k, GaussianMomentTable(k.z, k.a, k.xi), bj, row);
}

}  // namespace detail

// All d+2 interaction rows for bubble j at once; each ordered (k, l, m) triple
// builds one kernel that serves every row.
inline std::vector<complexd> interactionRows(const BubbleEnsemble& e, int j) {
    for (const auto& b : e.bubbles) detail::requireGaussian(b, "interactionEntry");
    const Bubble& bj = e.bubbles.at(static_cast<std::size_t>(j));
    const int d = e.d;
    std::vector<complexd> rows(static_cast<std::size_t>(d + 2), complexd{0.0, 0.0});
    for (const auto& bk : e.bubbles)
        for (const auto& bl : e.bubbles)
            for (const auto& bm : e.bubbles) {
                const GaussianTripleKernel k = tripleKernel(bk, bl, bm, bj);
                const GaussianMomentTable t(k.z, k.a, k.xi);
                for (int r = 1; r <= d + 2; ++r)
                    rows[static_cast<std::size_t>(r - 1)] +=
                        detail::tripleRowFromKernel(k, t, bj, r);
            }
    return rows;
}

// Row `row` of the interaction vector for bubble j: the triple sum over all
// ordered (k, l, m) of the closed-form Gaussian integrals.
inline complexd interactionEntry(const BubbleEnsemble& e, int j, int row) {
    for (const auto& b : e.bubbles) detail::requireGaussian(b, "interactionEntry");
    const Bubble& bj = e.bubbles.at(static_cast<std::size_t>(j));
    if (row < 1 || row > e.d + 2) fail("interactionEntry: row out of range");
    complexd sum{0.0, 0.0};
    for (const auto& bk : e.bubbles)
        for (const auto& bl : e.bubbles)
            for (const auto& bm : e.bubbles)
                sum += detail::tripleRowFromKernel(tripleKernel(bk, bl, bm, bj), bj, row);
    return sum;
}

}  // namespace nlsb
