#include "dhl/core/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dhl/core/errors.hpp"

namespace dhl::polyalg {

UnivarPoly specialize_v(const BivarPoly& p, const Rational& v0) {
  std::vector<Rational> pw(static_cast<size_t>(p.deg1()) + 1);
  pw[0] = 1;
  for (size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * v0;
  std::vector<Rational> c(static_cast<size_t>(p.deg0()) + 1);
  for (const auto& [k, coef] : p.terms())
    c[static_cast<size_t>(k.first)] += coef * pw[static_cast<size_t>(k.second)];
  return UnivarPoly(std::move(c));
}

UnivarPoly specialize_q(const BivarPoly& p, const Rational& q0) {
  std::vector<Rational> pw(static_cast<size_t>(p.deg0()) + 1);
  pw[0] = 1;
  for (size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * q0;
  std::vector<Rational> c(static_cast<size_t>(p.deg1()) + 1);
  for (const auto& [k, coef] : p.terms())
    c[static_cast<size_t>(k.second)] += coef * pw[static_cast<size_t>(k.first)];
  return UnivarPoly(std::move(c));
}

namespace {

// p and p' at z in one Horner pass; real coefficients.
void horner_pair(const std::vector<BigFloat>& a, const CplxB& z, CplxB* p, CplxB* dp) {
  mpfr_prec_t prec = z.re.prec();
  CplxB b{a.back(), BigFloat(0.0, prec)};
  CplxB d{BigFloat(0.0, prec), BigFloat(0.0, prec)};
  for (size_t i = a.size() - 1; i-- > 0;) {
    d = d * z + b;
    b = b * z;
    b.re += a[i];
  }
  *p = b;
  *dp = d;
}

struct SweepState {
  std::vector<CplxB> z;
  std::vector<CplxB> znew;
  std::vector<std::uint8_t> frozen;
};

void sweep_range(const std::vector<BigFloat>& coeffs, SweepState& st,
                 const BigFloat& step_tol, size_t lo, size_t hi) {
  mpfr_prec_t prec = step_tol.prec();
  BigFloat one(1.0, prec);
  size_t n = st.z.size();
  for (size_t i = lo; i < hi; ++i) {
    if (st.frozen[i]) {
      st.znew[i] = st.z[i];
      continue;
    }
    CplxB p, dp;
    horner_pair(coeffs, st.z[i], &p, &dp);
    if (abs(p).is_zero()) {
      st.znew[i] = st.z[i];
      st.frozen[i] = 1;
      continue;
    }
    if (abs(dp).is_zero()) {
      // Landed on a critical point; deterministic nudge and retry next sweep.
      st.znew[i] = {st.z[i].re + step_tol * BigFloat(static_cast<long>(i + 1), prec),
                    st.z[i].im};
      continue;
    }
    CplxB newton = p / dp;
    CplxB s{BigFloat(0.0, prec), BigFloat(0.0, prec)};
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      CplxB d = st.z[i] - st.z[j];
      if (d.re.is_zero() && d.im.is_zero()) {
        d.re = step_tol;  // collision guard
      }
      CplxB inv = CplxB{one, BigFloat(0.0, prec)} / d;
      s = s + inv;
    }
    CplxB den = CplxB{one, BigFloat(0.0, prec)} - newton * s;
    CplxB delta = (abs(den).is_zero()) ? newton : newton / den;
    st.znew[i] = st.z[i] - delta;
    BigFloat scale = abs(st.znew[i]);
    if (scale < one) scale = one;
    if (abs(delta) <= step_tol * scale) st.frozen[i] = 1;
  }
}

void run_sweep(const std::vector<BigFloat>& coeffs, SweepState& st,
               const BigFloat& step_tol, int threads) {
  size_t n = st.z.size();
  if (threads <= 1 || n < 32) {
    sweep_range(coeffs, st, step_tol, 0, n);
  } else {
    size_t nt = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (size_t t = 0; t < nt; ++t) {
      size_t lo = n * t / nt, hi = n * (t + 1) / nt;
      pool.emplace_back([&, lo, hi] { sweep_range(coeffs, st, step_tol, lo, hi); });
    }
    for (auto& th : pool) th.join();
  }
  st.z.swap(st.znew);
}

// Fujiwara root bound: 2 max_k |a_{n-k}/a_n|^{1/k}. A circle of this radius
// encloses every root and stays at root scale even when the coefficients
// are 70-digit integers.
double root_bound(const std::vector<BigFloat>& monic) {
  size_t n = monic.size() - 1;
  double best = 0.0;
  for (size_t k = 1; k <= n; ++k) {
    const BigFloat& a = monic[n - k];
    if (a.is_zero()) continue;
    BigFloat l = log(abs(a)) / BigFloat(static_cast<long>(k), a.prec());
    best = std::max(best, l.to_double());
  }
  return 2.0 * std::exp(best);
}

std::vector<BigFloat> to_floats(const std::vector<Rational>& monic, mpfr_prec_t prec) {
  std::vector<BigFloat> out;
  out.reserve(monic.size());
  for (const auto& c : monic) out.emplace_back(c, prec);
  return out;
}

void iterate_until(const std::vector<BigFloat>& coeffs, SweepState& st,
                   const BigFloat& step_tol, int threads, int max_sweeps, int* used) {
  for (int s = 0; s < max_sweeps; ++s) {
    ++*used;
    run_sweep(coeffs, st, step_tol, threads);
    if (std::all_of(st.frozen.begin(), st.frozen.end(), [](std::uint8_t f) { return f != 0; }))
      return;
  }
}

}  // namespace

RootSet find_roots(const UnivarPoly& p, unsigned precision_bits, int threads) {
  if (p.degree() < 1) throw DomainError("find_roots: degree >= 1 required");
  if (precision_bits < 53) throw DomainError("find_roots: precision_bits >= 53 required");
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());

  // Structural zero roots are deflated exactly.
  size_t zero_roots = 0;
  while (zero_roots < p.coeffs().size() && p.coeffs()[zero_roots] == 0) ++zero_roots;
  std::vector<Rational> monic(p.coeffs().begin() + static_cast<long>(zero_roots),
                              p.coeffs().end());
  const Rational lead = monic.back();
  for (auto& c : monic) c /= lead;

  RootSet rs;
  rs.precision_bits = precision_bits;
  size_t n = monic.size() - 1;

  if (n > 0) {
    mpfr_prec_t full = static_cast<mpfr_prec_t>(precision_bits);
    std::vector<BigFloat> coeffs = to_floats(monic, full);

    SweepState st;
    st.z.reserve(n);
    double r = root_bound(coeffs);
    constexpr double kGoldenAngle = 2.399963229728653;
    for (size_t j = 0; j < n; ++j) {
      double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n) +
                  kGoldenAngle;
      st.z.push_back(to_big(CplxD{r * std::cos(th), r * std::sin(th)}, full));
    }
    st.znew.assign(n, CplxB{BigFloat(full), BigFloat(full)});
    st.frozen.assign(n, 0);

    int sweeps = 0;
    // Cheap stage at reduced precision, then polish at the target precision.
    if (full > 128) {
      mpfr_prec_t coarse = 106;
      std::vector<BigFloat> ccoarse = to_floats(monic, coarse);
      SweepState stc;
      stc.z.reserve(n);
      for (const auto& z : st.z) stc.z.push_back({BigFloat(z.re.to_double(), coarse),
                                                  BigFloat(z.im.to_double(), coarse)});
      stc.znew.assign(n, CplxB{BigFloat(coarse), BigFloat(coarse)});
      stc.frozen.assign(n, 0);
      iterate_until(ccoarse, stc, ldexp(BigFloat(1.0, coarse), -40), threads, 600, &sweeps);
      for (size_t j = 0; j < n; ++j) {
        BigFloat re(full), im(full);
        mpfr_set(re.raw(), stc.z[j].re.raw(), MPFR_RNDN);
        mpfr_set(im.raw(), stc.z[j].im.raw(), MPFR_RNDN);
        st.z[j] = {re, im};
      }
    }
    BigFloat step_tol = ldexp(BigFloat(1.0, full), -static_cast<long>(precision_bits / 2));
    std::fill(st.frozen.begin(), st.frozen.end(), 0);
    iterate_until(coeffs, st, step_tol, threads, 1000 - sweeps, &sweeps);

    if (!std::all_of(st.frozen.begin(), st.frozen.end(), [](std::uint8_t f) { return f != 0; }))
      rs.status = RootStatus::Partial;

    BigFloat max_coeff(0.0, full);
    for (const auto& c : coeffs) {
      BigFloat a = abs(c);
      if (a > max_coeff) max_coeff = a;
    }
    for (size_t j = 0; j < n; ++j) {
      CplxB val, d;
      horner_pair(coeffs, st.z[j], &val, &d);
      BigFloat az = abs(st.z[j]);
      BigFloat scale = az < BigFloat(1.0, full) ? BigFloat(1.0, full) : az;
      BigFloat denom = max_coeff * exp(log(scale) * BigFloat(static_cast<long>(n), full));
      double resid = (abs(val) / denom).to_double();
      rs.roots.push_back(st.z[j]);
      rs.residuals.push_back(resid);
      rs.converged.push_back(st.frozen[j]);
      if (st.frozen[j] && resid > 1e-20 && rs.status == RootStatus::Ok)
        rs.status = RootStatus::ResidualAboveTarget;
    }
  }

  for (size_t j = 0; j < zero_roots; ++j) {
    rs.roots.push_back(to_big(CplxD{0.0, 0.0}, precision_bits));
    rs.residuals.push_back(0.0);
    rs.converged.push_back(1);
  }

  // sort by (re, im); keep residual/flag rows aligned
  std::vector<size_t> order(rs.roots.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (rs.roots[a].re != rs.roots[b].re) return rs.roots[a].re < rs.roots[b].re;
    return rs.roots[a].im < rs.roots[b].im;
  });
  RootSet sorted;
  sorted.precision_bits = rs.precision_bits;
  sorted.status = rs.status;
  for (size_t i : order) {
    sorted.roots.push_back(rs.roots[i]);
    sorted.residuals.push_back(rs.residuals[i]);
    sorted.converged.push_back(rs.converged[i]);
  }
  return sorted;
}

std::string RootSet::to_csv() const {
  std::string out = "re,im,residual\n";
  char buf[64];
  for (size_t i = 0; i < roots.size(); ++i) {
    out += roots[i].re.to_string(25);
    out += ",";
    out += roots[i].im.to_string(25);
    out += ",";
    std::snprintf(buf, sizeof buf, "%.17g", residuals[i]);
    out += buf;
    out += "\n";
  }
  return out;
}

EvalResult eval_poly(const UnivarPoly& p, const CplxB& z) {
  mpfr_prec_t prec = z.re.prec();
  if (p.is_zero())
    return {CplxB{BigFloat(0.0, prec), BigFloat(0.0, prec)}, BigFloat(0.0, prec)};
  const auto& c = p.coeffs();
  CplxB acc{BigFloat(c.back(), prec), BigFloat(0.0, prec)};
  BigFloat az = abs(z);
  BigFloat amag = abs(acc);
  for (size_t i = c.size() - 1; i-- > 0;) {
    acc = acc * z;
    acc.re += BigFloat(c[i], prec);
    amag = amag * az + abs(BigFloat(c[i], prec));
  }
  // Standard running bound: gamma_{2n} * sum |a_i| |z|^i with u = 2^-prec.
  long n2 = 2 * p.degree();
  BigFloat u = ldexp(BigFloat(1.0, prec), -static_cast<long>(prec));
  BigFloat gamma = BigFloat(static_cast<long>(n2), prec) * u /
                   (BigFloat(1.0, prec) - BigFloat(static_cast<long>(n2), prec) * u);
  return {acc, gamma * amag};
}

}  // namespace dhl::polyalg
