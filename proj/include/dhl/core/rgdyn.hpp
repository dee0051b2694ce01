#ifndef DHL_CORE_RGDYN_HPP
#define DHL_CORE_RGDYN_HPP

#include <array>
#include <cstdint>
#include <utility>

#include "dhl/core/errors.hpp"
#include "dhl/core/numeric.hpp"

// Renormalization map F_q(v) = v^2 (2q + 4v + v^2) / (q + 2v)^2 of the
// diamond hierarchy, its y-plane conjugate r_q(y), fixed points, critical
// points and the orbit classifier driving the region diagrams.

namespace dhl::rgdyn {

template <typename T>
Cplx<T> point_at_infinity(const Cplx<T>& proto) {
  return {with_prec(proto.re, std::numeric_limits<double>::infinity()),
          with_prec(proto.re, 0.0)};
}

template <typename T>
bool is_point_at_infinity(const Cplx<T>& z) {
  return !z.is_finite() && !z.has_nan();
}

// One application of F_q. Assumes q != 0 was checked by the caller; the
// pole v = -q/2 and v = infinity both map to infinity.
template <typename T>
Cplx<T> map_step(const Cplx<T>& q, const Cplx<T>& v) {
  if (is_point_at_infinity(v)) return point_at_infinity(v);
  T zero = with_prec(v.re, 0.0);
  Cplx<T> den = q + Cplx<T>{v.re + v.re, v.im + v.im};
  if (den.re == zero && den.im == zero) return point_at_infinity(v);
  Cplx<T> two_q{q.re + q.re, q.im + q.im};
  Cplx<T> four_v{v.re + v.re + v.re + v.re, v.im + v.im + v.im + v.im};
  Cplx<T> f2 = two_q + four_v + v * v;
  Cplx<T> t = v / den;
  return t * t * f2;
}

template <typename T>
Cplx<T> apply_map(const Cplx<T>& q, const Cplx<T>& v) {
  if (q.has_nan() || v.has_nan()) throw DomainError("apply_map: NaN input");
  T zero = with_prec(q.re, 0.0);
  if (q.re == zero && q.im == zero)
    throw DomainError("apply_map: q = 0 is outside the parameter space");
  Cplx<T> r = map_step(q, v);
  if (r.has_nan()) throw PrecisionError("apply_map: intermediate overflow at working precision");
  return r;
}

// y-plane conjugate r_q(y) = [(q + y^2 - 1) / (q + 2(y-1))]^2.
template <typename T>
Cplx<T> apply_map_y(const Cplx<T>& q, const Cplx<T>& y) {
  if (q.has_nan() || y.has_nan()) throw DomainError("apply_map_y: NaN input");
  T zero = with_prec(q.re, 0.0);
  T one = with_prec(q.re, 1.0);
  if (q.re == zero && q.im == zero)
    throw DomainError("apply_map_y: q = 0 is outside the parameter space");
  if (is_point_at_infinity(y)) return point_at_infinity(y);
  Cplx<T> den = q + Cplx<T>{y.re + y.re - one - one, y.im + y.im};
  if (den.re == zero && den.im == zero) return point_at_infinity(y);
  Cplx<T> num = q + y * y - Cplx<T>{one, zero};
  Cplx<T> t = num / den;
  Cplx<T> r = t * t;
  if (r.has_nan()) throw PrecisionError("apply_map_y: intermediate overflow at working precision");
  return r;
}

// dF_q/dv = [(2v f2 + v^2 (4 + 2v))(q + 2v) - 4 v^2 f2] / (q + 2v)^3
// with f2 = 2q + 4v + v^2.
template <typename T>
Cplx<T> map_derivative(const Cplx<T>& q, const Cplx<T>& v) {
  if (q.has_nan() || v.has_nan()) throw DomainError("map_derivative: NaN input");
  T zero = with_prec(q.re, 0.0);
  if (q.re == zero && q.im == zero)
    throw DomainError("map_derivative: q = 0 is outside the parameter space");
  Cplx<T> den = q + Cplx<T>{v.re + v.re, v.im + v.im};
  if (den.re == zero && den.im == zero)
    throw DomainError("map_derivative: pole at v = -q/2");
  T two = with_prec(q.re, 2.0);
  T four = with_prec(q.re, 4.0);
  Cplx<T> f2 = two * q + four * v + v * v;
  Cplx<T> n = (two * (v * f2) + (v * v) * (Cplx<T>{four, zero} + two * v)) * den - four * ((v * v) * f2);
  return n / (den * den * den);
}

// Critical points of F_q: 0, -q, -1 + sqrt(1-q), -1 - sqrt(1-q).
template <typename T>
std::array<Cplx<T>, 4> critical_points(const Cplx<T>& q) {
  T zero = with_prec(q.re, 0.0);
  T one = with_prec(q.re, 1.0);
  if (q.re == zero && q.im == zero)
    throw DomainError("critical_points: q = 0 is outside the parameter space");
  Cplx<T> s = sqrt(Cplx<T>{one, zero} - q);
  Cplx<T> minus_one{-one, zero};
  return {Cplx<T>{zero, zero}, -q, minus_one + s, minus_one - s};
}

// Fixed points of F_q for real q != 0, from the cubic q^2 + 2qv - v^3 = 0.
// v = 0 and v = infinity are fixed for every q and are left implicit here.
struct FixedPointSet {
  BigFloat v_c;        // unique positive fixed point, all real q != 0
  CplxB v_minus;       // real iff 0 < q <= 32/27, else conjugate pair
  CplxB v_plus;
  bool pair_is_real = false;
  BigFloat discriminant;  // -q^3 (27q - 32)
};

FixedPointSet fixed_points(const BigFloat& q);
FixedPointSet fixed_points(double q, mpfr_prec_t prec = 113);

// The v_{c,PM-FM}(q) closed form alone (real-continued branch, real result).
BigFloat v_c_pm_fm(const BigFloat& q);
double v_c_pm_fm(double q);

// Sign factorization F_q = F_{q,1} F_{q,2} with F_{q,1} = (v/(q+2v))^2 >= 0
// and F_{q,2} = 2q + 4v + v^2 carrying the sign.
std::pair<double, double> sign_factorization(double q, double v);

enum class OrbitKind : std::uint8_t {
  ToZero = 0,
  ToInfinity = 1,
  Cycle = 2,
  Undecided = 3,
};

struct OrbitClassification {
  OrbitKind kind = OrbitKind::Undecided;
  int period = 0;              // >= 1 when kind == Cycle
  CplxD representative{0, 0};  // a point on the detected cycle
  long iterations_used = 0;
};

struct ClassifierOptions {
  long max_iter = 500;          // rendering default; solvers use 100000
  double escape_base = 100.0;   // escape when |v| > max(base, qfactor*|q|)
  double escape_qfactor = 10.0;
  double zero_radius = 1e-8;    // ToZero after 3 consecutive iterates inside
  double cycle_tol = 1e-9;
  int max_period = 64;
  unsigned precision_bits = 53;

  static ClassifierOptions solver() {
    ClassifierOptions o;
    o.max_iter = 100000;
    return o;
  }
};

// Deterministic classification of the orbit of v0 under F_q. Never throws
// for numerical reasons: Undecided is the fallback. DomainError for q = 0
// or NaN inputs only.
OrbitClassification classify_orbit(const CplxD& q, const CplxD& v0,
                                   const ClassifierOptions& opts = {});

}  // namespace dhl::rgdyn

#endif
