#pragma once

#include <cmath>
#include <complex>

#include "nlsb/types.hpp"

namespace nlsb {

// Closed-form Fourier transforms of p(x) e^{-z|x|^2 + a.x} at frequency xi,
// for the polynomials p needed by the Gram and interaction assemblies.  With
// w_m = xi_m + i a_m and W = w.w (no conjugation), the base case is
//   fhat = (pi/z)^{d/2} exp(-W/(4z)),
// and every other row follows from x_m ~ i d/dxi_m applied to fhat.
// Re(z) > 0 keeps pi/z in the right half-plane, so the principal branch of
// the complex power is continuous and no branch tracking is needed.
class GaussianMomentTable {
  public:
    GaussianMomentTable(complexd z, const vecd& a, const vecd& xi) : z_(z), d_(static_cast<int>(a.size())) {
        if (!(z.real() > 0.0)) fail("gaussianMoment: Re(z) must be positive");
        if (xi.size() != a.size()) fail("gaussianMoment: a and xi dimensions differ");
        w_.resize(a.size());
        complexd W{0.0, 0.0};
        for (std::size_t m = 0; m < a.size(); ++m) {
            w_[m] = complexd{xi[m], a[m]};
            W += w_[m] * w_[m];
        }
        W_ = W;
        fhat_ = std::pow(M_PI / z, 0.5 * d_) * std::exp(-W / (4.0 * z));
    }

    int dim() const { return d_; }

    complexd one() const { return fhat_; }

    complexd xm(int m) const { return -iu * fhat_ * w_[m] / (2.0 * z_); }

    complexd xmxn(int m, int n) const {
        const complexd delta = (m == n) ? complexd{1.0, 0.0} : complexd{0.0, 0.0};
        return fhat_ / (2.0 * z_) * (delta - w_[m] * w_[n] / (2.0 * z_));
    }

    complexd r2() const { return fhat_ / (2.0 * z_) * (double(d_) - W_ / (2.0 * z_)); }

    complexd xmr2(int m) const {
        return -iu * fhat_ * w_[m] / (4.0 * z_ * z_) * (double(d_ + 2) - W_ / (2.0 * z_));
    }

    complexd xm2xn2(int m, int n) const {
        if (m == n) return xm4(m);
        const complexd um = 1.0 - w_[m] * w_[m] / (2.0 * z_);
        const complexd un = 1.0 - w_[n] * w_[n] / (2.0 * z_);
        return fhat_ / (4.0 * z_ * z_) * um * un;
    }

    complexd xm4(int m) const {
        const complexd q = w_[m] * w_[m] / (2.0 * z_);
        return fhat_ / (4.0 * z_ * z_) * (3.0 - 6.0 * q + q * q);
    }

    complexd xm3(int m) const {
        const complexd q = w_[m] * w_[m] / (2.0 * z_);
        return -iu * fhat_ / (4.0 * z_ * z_) * w_[m] * (3.0 - q);
    }

    complexd xmxn2(int m, int n) const {
        if (m == n) return xm3(m);
        const complexd un = 1.0 - w_[n] * w_[n] / (2.0 * z_);
        return -iu * fhat_ / (2.0 * z_) * un * w_[m] / (2.0 * z_);
    }

    complexd r4() const {
        complexd s{0.0, 0.0};
        for (int m = 0; m < d_; ++m)
            for (int n = 0; n < d_; ++n) s += xm2xn2(m, n);
        return s;
    }

  private:
    complexd z_;
    int d_;
    std::vector<complexd> w_;
    complexd W_;
    complexd fhat_;
};

enum class Moment { One, Xm, XmXn, R2, XmR2, Xm2Xn2, Xm4, Xm3, XmXn2 };

inline complexd gaussianMoment(complexd z, const vecd& a, const vecd& xi, Moment moment,
                               int m = 0, int n = 0) {
    const GaussianMomentTable t(z, a, xi);
    switch (moment) {
        case Moment::One: return t.one();
        case Moment::Xm: return t.xm(m);
        case Moment::XmXn: return t.xmxn(m, n);
        case Moment::R2: return t.r2();
        case Moment::XmR2: return t.xmr2(m);
        case Moment::Xm2Xn2: return t.xm2xn2(m, n);
        case Moment::Xm4: return t.xm4(m);
        case Moment::Xm3: return t.xm3(m);
        case Moment::XmXn2: return t.xmxn2(m, n);
    }
    fail("gaussianMoment: unknown moment");
}

}  // namespace nlsb
