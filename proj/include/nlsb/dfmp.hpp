#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nlsb/bubble.hpp"
#include "nlsb/gaussian_kernels.hpp"
#include "nlsb/gaussian_moments.hpp"
#include "nlsb/modulation.hpp"
#include "nlsb/types.hpp"

namespace nlsb {

struct SolveDiagnostics {
    double condition = 0.0;
    int effectiveRank = 0;
};

// The projected system A E = S for the cubic term, plus its real block form
// [[A_Re, -A_Im], [A_Im, A_Re]] [E_Re; E_Im] = [S_Re; S_Im].  Row/column
// p = j*(d+2) + (r-1) is tangent function r of bubble j.  scale[j] holds the
// L_j^3 / alpha_j factor that turns the solved E block into the F block;
// frozen[j] marks bubbles too faint for that rescale to be meaningful.
struct DfmpSystem {
    Eigen::MatrixXcd gram;
    Eigen::VectorXcd source;
    Eigen::MatrixXd realBlock;
    Eigen::VectorXd realSource;
    std::vector<double> scale;
    std::vector<char> frozen;
    double svdRtol = 1e-10;
    int d = 0;
};

struct BubbleForces {
    double F1 = 0.0, F2 = 0.0, F5 = 0.0, F6 = 0.0;
    vecd F3, F4;
    explicit BubbleForces(int d = 0)
        : F3(static_cast<std::size_t>(d), 0.0), F4(static_cast<std::size_t>(d), 0.0) {}
};

struct DfmpSolution {
    std::vector<BubbleForces> perBubble;
    SolveDiagnostics diagnostics;
};

namespace detail {

inline void buildRealBlock(DfmpSystem& sys) {
    const int M = static_cast<int>(sys.gram.rows());
    const Eigen::MatrixXd re = sys.gram.real();
    const Eigen::MatrixXd im = sys.gram.imag();
    sys.realBlock.resize(2 * M, 2 * M);
    sys.realBlock.topLeftCorner(M, M) = re;
    sys.realBlock.topRightCorner(M, M) = -im;
    sys.realBlock.bottomLeftCorner(M, M) = im;
    sys.realBlock.bottomRightCorner(M, M) = re;
    sys.realSource.resize(2 * M);
    sys.realSource.head(M) = sys.source.real();
    sys.realSource.tail(M) = sys.source.imag();
}

}  // namespace detail

inline DfmpSystem assembleSystem(const BubbleEnsemble& e, double svdRtol = 1e-10) {
    validateEnsemble(e);
    const int d = e.d;
    const int n = static_cast<int>(e.bubbles.size());
    const int m = d + 2;
    const int M = n * m;
    if (n == 0) fail("assembleSystem: empty ensemble");

    std::vector<double> alpha(static_cast<std::size_t>(n));
    double amax = 0.0;
    for (int j = 0; j < n; ++j) {
        const Bubble& b = e.bubbles[static_cast<std::size_t>(j)];
        if (!isPureGaussian(b)) fail("DFMP requires Gaussian spectrum");
        alpha[static_cast<std::size_t>(j)] = foldedAmplitude(b);
        if (alpha[static_cast<std::size_t>(j)] == 0.0)
            fail("assembleSystem: degenerate bubble with zero amplitude");
        amax = std::max(amax, alpha[static_cast<std::size_t>(j)]);
    }

    DfmpSystem sys;
    sys.d = d;
    sys.svdRtol = svdRtol;
    sys.gram.resize(M, M);
    sys.source.resize(M);
    sys.scale.resize(static_cast<std::size_t>(n));
    sys.frozen.assign(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
        const Bubble& b = e.bubbles[static_cast<std::size_t>(j)];
        const auto js = static_cast<std::size_t>(j);
        sys.frozen[js] = alpha[js] < 1e-12 * amax ? 1 : 0;
        sys.scale[js] = b.L * b.L * b.L / alpha[js];
    }

    for (int j = 0; j < n; ++j) {
        const Bubble& bj = e.bubbles[static_cast<std::size_t>(j)];
        for (int l = 0; l < n; ++l) {
            const Bubble& bl = e.bubbles[static_cast<std::size_t>(l)];
            const GaussianPairKernel k = pairKernel(bl, bj);
            const GaussianMomentTable t(k.z, k.a, k.xi);
            for (int rp = 1; rp <= m; ++rp)
                for (int rq = 1; rq <= m; ++rq)
                    sys.gram(j * m + rp - 1, l * m + rq - 1) =
                        detail::gramEntryFromKernel(k, t, bl, bj, rq, rp);
        }
    }
    sys.gram = ((sys.gram + sys.gram.adjoint()) / 2.0).eval();

    for (int j = 0; j < n; ++j) {
        const std::vector<complexd> rows = interactionRows(e, j);
        for (int r = 0; r < m; ++r) sys.source(j * m + r) = rows[static_cast<std::size_t>(r)];
    }

    detail::buildRealBlock(sys);
    return sys;
}

inline DfmpSolution solveSystem(const DfmpSystem& sys) {
    const int M = static_cast<int>(sys.gram.rows());
    const int m = sys.d + 2;
    const int n = M / m;

    Eigen::MatrixXd A = sys.realBlock;
    Eigen::VectorXd rhs = sys.realSource;
    for (int j = 0; j < n; ++j) {
        if (!sys.frozen[static_cast<std::size_t>(j)]) continue;
        for (int r = 0; r < m; ++r) {
            const int p = j * m + r;
            A.row(p).setZero();
            A.col(p).setZero();
            A.row(M + p).setZero();
            A.col(M + p).setZero();
            rhs(p) = 0.0;
            rhs(M + p) = 0.0;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(sys.svdRtol);
    const Eigen::VectorXd sol = svd.solve(rhs);

    DfmpSolution out;
    out.diagnostics.effectiveRank = static_cast<int>(svd.rank());
    const auto& sv = svd.singularValues();
    double smin = 0.0;
    for (int i = static_cast<int>(sv.size()) - 1; i >= 0; --i)
        if (sv(i) > 0.0) {
            smin = sv(i);
            break;
        }
    out.diagnostics.condition =
        smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();

    out.perBubble.assign(static_cast<std::size_t>(n), BubbleForces(sys.d));
    for (int j = 0; j < n; ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (sys.frozen[js]) continue;
        BubbleForces& f = out.perBubble[js];
        const double sc = sys.scale[js];
        const int base = j * m;
        f.F1 = sc * sol(base);
        f.F2 = sc * sol(M + base);
        for (int i = 0; i < sys.d; ++i) {
            f.F3[static_cast<std::size_t>(i)] = sc * sol(base + 1 + i);
            f.F4[static_cast<std::size_t>(i)] = sc * sol(M + base + 1 + i);
        }
        f.F5 = sc * sol(base + m - 1);
        f.F6 = sc * sol(M + base + m - 1);
    }
    return out;
}

inline std::vector<ParamDerivs> parameterDerivatives(const DfmpSolution& sol,
                                                     const BubbleEnsemble& e) {
    if (sol.perBubble.size() != e.bubbles.size())
        fail("parameterDerivatives: solution/ensemble size mismatch");
    const int d = e.d;
    std::vector<ParamDerivs> out;
    out.reserve(e.bubbles.size());
    for (std::size_t j = 0; j < e.bubbles.size(); ++j) {
        const Bubble& b = e.bubbles[j];
        const BubbleForces& f = sol.perBubble[j];
        const double L2 = b.L * b.L;
        const double L3 = L2 * b.L;
        ParamDerivs dv(d);
        dv.dA = b.A / L2 * (f.F2 + f.F6);
        dv.dL = f.F6 / b.L;
        dv.dB = (4.0 * f.F5 + 2.0 * b.B * f.F6) / L2;
        double bdotF4 = 0.0;
        for (int i = 0; i < d; ++i) {
            const auto is = static_cast<std::size_t>(i);
            dv.dX[is] = f.F4[is] / b.L;
            dv.dbeta[is] = -f.F3[is] / L3 - b.B * f.F4[is] / (2.0 * L3);
            bdotF4 += b.beta[is] * f.F4[is];
        }
        dv.dgamma = bdotF4 / b.L - f.F1 / L2;
        out.push_back(dv);
    }
    return out;
}

namespace detail {

inline BubbleEnsemble advanceParams(const BubbleEnsemble& e, const std::vector<ParamDerivs>& k,
                                    double h) {
    BubbleEnsemble out = e;
    for (std::size_t j = 0; j < out.bubbles.size(); ++j) {
        Bubble& b = out.bubbles[j];
        const ParamDerivs& dv = k[j];
        b.A += h * dv.dA;
        b.L += h * dv.dL;
        b.B += h * dv.dB;
        for (int i = 0; i < e.d; ++i) {
            b.X[static_cast<std::size_t>(i)] += h * dv.dX[static_cast<std::size_t>(i)];
            b.beta[static_cast<std::size_t>(i)] += h * dv.dbeta[static_cast<std::size_t>(i)];
        }
        b.gamma += h * dv.dgamma;
        if (!(b.L > 0.0) || !std::isfinite(b.A) || !std::isfinite(b.L))
            fail("stepNonlinear: stage left the bubble manifold");
    }
    return out;
}

inline bool derivsFinite(const std::vector<ParamDerivs>& dvs) {
    for (const auto& dv : dvs) {
        if (!std::isfinite(dv.dA) || !std::isfinite(dv.dL) || !std::isfinite(dv.dB) ||
            !std::isfinite(dv.dgamma))
            return false;
        if (!isFinite(dv.dX) || !isFinite(dv.dbeta)) return false;
    }
    return true;
}

}  // namespace detail

inline BubbleEnsemble stepNonlinear(const BubbleEnsemble& e, double dt, double lambda = 1.0,
                                    double svdRtol = 1e-10,
                                    SolveDiagnostics* diag = nullptr) {
    validateEnsemble(e);
    if (dt == 0.0 || lambda == 0.0) return e;

    const auto rhs = [&](const BubbleEnsemble& state, SolveDiagnostics* dg) {
        const DfmpSystem sys = assembleSystem(state, svdRtol);
        const DfmpSolution sol = solveSystem(sys);
        if (dg) *dg = sol.diagnostics;
        std::vector<ParamDerivs> dv = parameterDerivatives(sol, state);
        for (auto& v : dv) {
            v.dA *= lambda;
            v.dL *= lambda;
            v.dB *= lambda;
            for (auto& x : v.dX) x *= lambda;
            for (auto& x : v.dbeta) x *= lambda;
            v.dgamma *= lambda;
        }
        if (!detail::derivsFinite(dv)) fail("stepNonlinear: non-finite derivatives");
        return dv;
    };

    const std::vector<ParamDerivs> k1 = rhs(e, diag);
    const std::vector<ParamDerivs> k2 = rhs(detail::advanceParams(e, k1, dt / 2.0), nullptr);
    const std::vector<ParamDerivs> k3 = rhs(detail::advanceParams(e, k2, dt / 2.0), nullptr);
    const std::vector<ParamDerivs> k4 = rhs(detail::advanceParams(e, k3, dt), nullptr);

    std::vector<ParamDerivs> ksum;
    ksum.reserve(k1.size());
    for (std::size_t j = 0; j < k1.size(); ++j) {
        ParamDerivs s(e.d);
        s.dA = (k1[j].dA + 2.0 * k2[j].dA + 2.0 * k3[j].dA + k4[j].dA) / 6.0;
        s.dL = (k1[j].dL + 2.0 * k2[j].dL + 2.0 * k3[j].dL + k4[j].dL) / 6.0;
        s.dB = (k1[j].dB + 2.0 * k2[j].dB + 2.0 * k3[j].dB + k4[j].dB) / 6.0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(e.d); ++i) {
            s.dX[i] = (k1[j].dX[i] + 2.0 * k2[j].dX[i] + 2.0 * k3[j].dX[i] + k4[j].dX[i]) / 6.0;
            s.dbeta[i] =
                (k1[j].dbeta[i] + 2.0 * k2[j].dbeta[i] + 2.0 * k3[j].dbeta[i] + k4[j].dbeta[i]) /
                6.0;
        }
        s.dgamma = (k1[j].dgamma + 2.0 * k2[j].dgamma + 2.0 * k3[j].dgamma + k4[j].dgamma) / 6.0;
        ksum.push_back(s);
    }
    return detail::advanceParams(e, ksum, dt);
}

struct LinearResidualReport {
    std::vector<ParamDerivs> recovered;
    std::vector<ParamDerivs> closedForm;
    double condition = 0.0;
    bool conclusive = false;
};

// Consistency check: project the harmonic-oscillator residual instead of the
// cubic source and compare the solved parameter derivatives with the
// closed-form linear modulation system.  Not part of the production path.
inline LinearResidualReport linearResidualCheck(const BubbleEnsemble& e, double svdRtol = 1e-10) {
    DfmpSystem sys = assembleSystem(e, svdRtol);
    const int d = e.d;
    const int m = d + 2;
    const int n = static_cast<int>(e.bubbles.size());

    Eigen::VectorXcd w(n * m);
    for (int j = 0; j < n; ++j) {
        const Bubble& b = e.bubbles[static_cast<std::size_t>(j)];
        const double L2 = b.L * b.L;
        const double wgt = foldedAmplitude(b) / (L2 * b.L);
        w(j * m) = wgt * complexd{L2 * (normSq(b.beta) + normSq(b.X)), 0.5 * b.B * d};
        for (int i = 0; i < d; ++i) {
            const auto is = static_cast<std::size_t>(i);
            w(j * m + 1 + i) = wgt * complexd{2.0 * L2 * b.L * b.X[is] - b.L * b.B * b.beta[is],
                                              2.0 * b.L * b.beta[is]};
        }
        w(j * m + m - 1) = wgt * complexd{L2 * L2 + 0.25 * b.B * b.B - 1.0, -b.B};
    }
    sys.source = sys.gram * w;
    detail::buildRealBlock(sys);

    const DfmpSolution sol = solveSystem(sys);
    LinearResidualReport rep;
    rep.condition = sol.diagnostics.condition;
    rep.conclusive = rep.condition <= 1e8;
    rep.recovered = parameterDerivatives(sol, e);
    rep.closedForm.reserve(e.bubbles.size());
    for (const auto& b : e.bubbles) rep.closedForm.push_back(linearModulationRhs(b));
    return rep;
}

}  // namespace nlsb
