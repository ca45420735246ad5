// Minimal RAII value wrapper around MPFR, just rich enough for the
// terminating hypergeometric sums and high-precision quadrature used by the
// zonal kernel transforms (which cancel catastrophically in doubles).
#pragma once

#include <mpfr.h>

#include <utility>

namespace sphardy::detail {

class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 256) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    BigFloat& set(double x) {
        mpfr_set_d(v_, x, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator+=(const BigFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const BigFloat& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(long s) {
        mpfr_mul_si(v_, v_, s, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(long s) {
        mpfr_div_si(v_, v_, s, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(double s) {
        mpfr_mul_d(v_, v_, s, MPFR_RNDN);
        return *this;
    }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator*(BigFloat a, long s) { return a *= s; }
    friend BigFloat operator*(BigFloat a, double s) { return a *= s; }

    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    mpfr_t v_;
};

}  // namespace sphardy::detail
