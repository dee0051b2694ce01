#ifndef DHL_CORE_NUMERIC_HPP
#define DHL_CORE_NUMERIC_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "dhl/core/errors.hpp"

namespace dhl {

using Rational = mpq_class;

// Parses "p/q" or a decimal literal ("-0.8", "3e-2") into an exact rational.
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);

// Arbitrary-precision real backed by mpfr_t. Every value carries its own
// precision; binary operations round to the wider of the two operands.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 53;

  BigFloat() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(const Rational& r, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kDefaultPrec);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int sig_digits = 20) const;

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(mpfr_add, a, b); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(mpfr_sub, a, b); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(mpfr_mul, a, b); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(mpfr_div, a, b); }

  BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  friend BigFloat abs(const BigFloat& a) { return un(mpfr_abs, a); }
  friend BigFloat sqrt(const BigFloat& a) { return un(mpfr_sqrt, a); }
  friend BigFloat cbrt(const BigFloat& a) { return un(mpfr_cbrt, a); }
  friend BigFloat log(const BigFloat& a) { return un(mpfr_log, a); }
  friend BigFloat exp(const BigFloat& a) { return un(mpfr_exp, a); }
  friend BigFloat cos(const BigFloat& a) { return un(mpfr_cos, a); }
  friend BigFloat sin(const BigFloat& a) { return un(mpfr_sin, a); }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) { return bin(mpfr_atan2, y, x); }
  friend BigFloat hypot(const BigFloat& x, const BigFloat& y) { return bin(mpfr_hypot, x, y); }
  friend BigFloat pow(const BigFloat& a, unsigned long e) {
    BigFloat r(a.prec());
    mpfr_pow_ui(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigFloat ldexp(const BigFloat& a, long e) {
    BigFloat r(a.prec());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

  static BigFloat infinity(mpfr_prec_t prec, int sgn = 1) {
    BigFloat r(prec);
    mpfr_set_inf(r.v_, sgn);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  using Bin = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using Un = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  static BigFloat bin(Bin f, const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat un(Un f, const BigFloat& a) {
    BigFloat r(a.prec());
    f(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

// Makes a scalar of the same kind/precision as `proto`. Lets the complex
// template below work uniformly over double and BigFloat.
inline double with_prec(double /*proto*/, double value) { return value; }
inline BigFloat with_prec(const BigFloat& proto, double value) {
  return BigFloat(value, proto.prec());
}

inline bool scalar_finite(double x) { return std::isfinite(x); }
inline bool scalar_finite(const BigFloat& x) { return x.is_finite(); }
inline bool scalar_nan(double x) { return std::isnan(x); }
inline bool scalar_nan(const BigFloat& x) { return x.is_nan(); }
inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.to_double(); }

// Minimal complex-number template over double or BigFloat. std::complex is
// only specified for the builtin floating types, hence this local one.
template <typename T>
struct Cplx {
  T re{};
  T im{};

  Cplx() = default;
  Cplx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  bool is_finite() const { return scalar_finite(re) && scalar_finite(im); }
  bool has_nan() const { return scalar_nan(re) || scalar_nan(im); }

  Cplx operator-() const { return {-re, -im}; }

  friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(const T& s, const Cplx& a) { return {s * a.re, s * a.im}; }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    T d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cplx& a, const Cplx& b) { return !(a == b); }

  friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
  friend T abs(const Cplx& a) {
    using std::hypot;
    return hypot(a.re, a.im);
  }
  friend T norm(const Cplx& a) { return a.re * a.re + a.im * a.im; }
};

// Principal branch square root.
template <typename T>
Cplx<T> sqrt(const Cplx<T>& z) {
  using std::hypot;
  using std::sqrt;
  T zero = with_prec(z.re, 0.0);
  T two = with_prec(z.re, 2.0);
  T m = hypot(z.re, z.im);
  if (m == zero) return {zero, zero};
  T u = sqrt((m + z.re) / two);
  T w = sqrt((m - z.re) / two);
  if (z.im < zero) w = -w;
  if (u == zero && z.im == zero && z.re < zero) return {zero, w};
  return {u, w};
}

using CplxD = Cplx<double>;
using CplxB = Cplx<BigFloat>;

inline CplxB to_big(const CplxD& z, mpfr_prec_t prec) {
  return {BigFloat(z.re, prec), BigFloat(z.im, prec)};
}
inline CplxD to_cplxd(const CplxB& z) { return {z.re.to_double(), z.im.to_double()}; }
inline CplxB rational_to_big(const Rational& re, mpfr_prec_t prec) {
  return {BigFloat(re, prec), BigFloat(0.0, prec)};
}

}  // namespace dhl

#endif
