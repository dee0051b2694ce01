#include "dhl/core/rgdyn.hpp"

#include <cmath>

namespace dhl::rgdyn {

namespace {

// Cube-root branch for v_c: real path when R_c >= 0 (q < 0 or q >= 32/27),
// trigonometric continuation when R_c < 0 (0 < q < 32/27, three real roots).
// Both come from S = (q^2 + sqrt(R_c))^(1/3) with R_c = q^3 (q - 32/27).
struct VcParts {
  BigFloat v_c;
  BigFloat d;      // 2^{-1/3} S - 2^{4/3} q / (3S); imaginary part of the pair
  bool trig = false;
  BigFloat b;      // trig path: sqrt(3) * sqrt(2q/3) * sin(theta/3)
};

VcParts vc_parts(const BigFloat& q) {
  mpfr_prec_t prec = q.prec();
  BigFloat c32_27 = BigFloat(32.0, prec) / BigFloat(27.0, prec);
  BigFloat rc = pow(q, 3) * (q - c32_27);
  VcParts out{BigFloat(prec), BigFloat(prec), false, BigFloat(prec)};
  BigFloat third = BigFloat(1.0, prec) / BigFloat(3.0, prec);
  if (rc.sign() >= 0) {
    BigFloat s = cbrt(q * q + sqrt(rc));
    BigFloat c1 = exp(log(BigFloat(2.0, prec)) * (-third));           // 2^{-1/3}
    BigFloat c2 = exp(log(BigFloat(2.0, prec)) * (third * BigFloat(4.0, prec)));  // 2^{4/3}
    BigFloat t1 = c1 * s;
    BigFloat t2 = c2 * q / (BigFloat(3.0, prec) * s);
    out.v_c = t1 + t2;
    out.d = t1 - t2;
  } else {
    // S complex: |S| collapses so that v_c = 2 sqrt(2q/3) cos(theta/3).
    BigFloat theta = atan2(sqrt(-rc), q * q);
    BigFloat a = sqrt(q * (BigFloat(2.0, prec) / BigFloat(3.0, prec)));
    out.trig = true;
    out.v_c = BigFloat(2.0, prec) * a * cos(theta * third);
    out.b = sqrt(BigFloat(3.0, prec)) * a * sin(theta * third);
  }
  return out;
}

}  // namespace

BigFloat v_c_pm_fm(const BigFloat& q) {
  if (q.is_zero() || !q.is_finite())
    throw DomainError("v_c_pm_fm: q must be real nonzero");
  return vc_parts(q).v_c;
}

double v_c_pm_fm(double q) { return v_c_pm_fm(BigFloat(q, 113)).to_double(); }

FixedPointSet fixed_points(const BigFloat& q) {
  if (q.is_zero() || !q.is_finite())
    throw DomainError("fixed_points: q must be real nonzero");
  mpfr_prec_t prec = q.prec();
  VcParts p = vc_parts(q);
  FixedPointSet fp{BigFloat(prec), CplxB{BigFloat(prec), BigFloat(prec)},
                   CplxB{BigFloat(prec), BigFloat(prec)}, false, BigFloat(prec)};
  fp.v_c = p.v_c;
  fp.discriminant = -pow(q, 3) * (BigFloat(27.0, prec) * q - BigFloat(32.0, prec));
  BigFloat zero(0.0, prec);
  BigFloat half = p.v_c / BigFloat(-2.0, prec);
  if (p.trig) {
    fp.pair_is_real = true;
    fp.v_minus = {half - p.b, zero};
    fp.v_plus = {half + p.b, zero};
  } else if (p.d.is_zero()) {
    // q = 32/27: double root at -8/9
    fp.pair_is_real = true;
    fp.v_minus = {half, zero};
    fp.v_plus = {half, zero};
  } else {
    BigFloat imag = sqrt(BigFloat(3.0, prec)) / BigFloat(2.0, prec) * p.d;
    fp.pair_is_real = false;
    fp.v_minus = {half, -imag};
    fp.v_plus = {half, imag};
  }
  return fp;
}

FixedPointSet fixed_points(double q, mpfr_prec_t prec) {
  return fixed_points(BigFloat(q, prec));
}

std::pair<double, double> sign_factorization(double q, double v) {
  double den = q + 2.0 * v;
  if (den == 0.0) throw DomainError("sign_factorization: pole at v = -q/2");
  double t = v / den;
  return {t * t, 2.0 * q + 4.0 * v + v * v};
}

namespace {

template <typename T>
struct EngineResult {
  OrbitClassification cls;
  bool nan_bailout = false;
};

template <typename T>
EngineResult<T> classify_engine(const Cplx<T>& q, const Cplx<T>& v0,
                                const ClassifierOptions& o) {
  EngineResult<T> out;
  T escape = with_prec(q.re, 0.0);
  {
    using std::abs;
    T aq = abs(q);
    T base = with_prec(q.re, o.escape_base);
    T scaled = with_prec(q.re, o.escape_qfactor) * aq;
    escape = scaled > base ? scaled : base;
  }
  T zero_r = with_prec(q.re, o.zero_radius);
  T ctol = with_prec(q.re, o.cycle_tol);
  T one = with_prec(q.re, 1.0);

  Cplx<T> v = v0;
  Cplx<T> tortoise = v0;
  long power = 1, lam = 1;
  int zero_streak = 0;

  for (long m = 1; m <= o.max_iter; ++m) {
    v = map_step(q, v);
    out.cls.iterations_used = m;
    if (v.has_nan()) {
      out.nan_bailout = true;
      return out;
    }
    using std::abs;
    if (is_point_at_infinity(v) || abs(v) > escape) {
      out.cls.kind = OrbitKind::ToInfinity;
      return out;
    }
    T av = abs(v);
    if (av < zero_r) {
      if (++zero_streak >= 3) {
        out.cls.kind = OrbitKind::ToZero;
        return out;
      }
    } else {
      zero_streak = 0;
    }
    if (m > 1 && abs(v - tortoise) <= ctol * (one + av)) {
      // Brent matched; pin down the minimal period.
      Cplx<T> w = v;
      int period = 0;
      for (int p = 1; p <= o.max_period; ++p) {
        w = map_step(q, w);
        if (w.has_nan() || is_point_at_infinity(w)) break;
        if (abs(w - v) <= ctol * (one + av)) {
          period = p;
          break;
        }
      }
      if (period > 0) {
        if (av < zero_r) {
          out.cls.kind = OrbitKind::ToZero;
        } else {
          out.cls.kind = OrbitKind::Cycle;
          out.cls.period = period;
          out.cls.representative = {to_double(v.re), to_double(v.im)};
        }
        return out;
      }
    }
    if (power == lam) {
      tortoise = v;
      power *= 2;
      lam = 0;
    }
    ++lam;
  }
  out.cls.kind = OrbitKind::Undecided;
  return out;
}

OrbitClassification classify_big(const CplxD& q, const CplxD& v0,
                                 const ClassifierOptions& o, mpfr_prec_t prec) {
  CplxB qb = to_big(q, prec);
  CplxB vb = to_big(v0, prec);
  EngineResult<BigFloat> r = classify_engine<BigFloat>(qb, vb, o);
  if (!r.nan_bailout) return r.cls;
  r.cls.kind = OrbitKind::Undecided;
  return r.cls;
}

}  // namespace

OrbitClassification classify_orbit(const CplxD& q, const CplxD& v0,
                                   const ClassifierOptions& opts) {
  if (q.has_nan() || v0.has_nan()) throw DomainError("classify_orbit: NaN input");
  if (q.re == 0.0 && q.im == 0.0)
    throw DomainError("classify_orbit: q = 0 is outside the parameter space");

  if (opts.precision_bits <= 53) {
    EngineResult<double> r = classify_engine<double>(q, v0, opts);
    if (!r.nan_bailout) return r.cls;
    return classify_big(q, v0, opts, 106);  // one retry at doubled precision
  }
  CplxB qb = to_big(q, opts.precision_bits);
  CplxB vb = to_big(v0, opts.precision_bits);
  EngineResult<BigFloat> r = classify_engine<BigFloat>(qb, vb, opts);
  if (!r.nan_bailout) return r.cls;
  return classify_big(q, v0, opts, 2 * static_cast<mpfr_prec_t>(opts.precision_bits));
}

}  // namespace dhl::rgdyn
