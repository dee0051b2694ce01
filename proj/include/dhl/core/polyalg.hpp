#ifndef DHL_CORE_POLYALG_HPP
#define DHL_CORE_POLYALG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dhl/core/numeric.hpp"
#include "dhl/core/partition.hpp"

// Univariate specialization of the partition polynomials and simultaneous
// root finding at configurable precision.

namespace dhl::polyalg {

using partition::BivarPoly;
using partition::UnivarPoly;

// Z(D_m, q, v0): exact substitution of the second variable.
UnivarPoly specialize_v(const BivarPoly& p, const Rational& v0);
// Z(D_m, q0, v): exact substitution of the first variable.
UnivarPoly specialize_q(const BivarPoly& p, const Rational& q0);

enum class RootStatus : std::uint8_t {
  Ok = 0,
  Partial = 1,          // some roots unconverged after the sweep cap
  ResidualAboveTarget = 2,
};

struct RootSet {
  std::vector<CplxB> roots;        // sorted by (re, im) ascending
  std::vector<double> residuals;   // |p(z)| / (max|a_i| max(1,|z|)^deg)
  std::vector<std::uint8_t> converged;
  unsigned precision_bits = 0;
  RootStatus status = RootStatus::Ok;

  // "re,im,residual" header, 25 significant digits.
  std::string to_csv() const;
};

// Aberth-Ehrlich simultaneous iteration (Jacobi update order, deterministic
// for any thread count). The exact root q = 0 is deflated first when
// present; all reported roots include the deflated zeros.
RootSet find_roots(const UnivarPoly& p, unsigned precision_bits, int threads = 0);

struct EvalResult {
  CplxB value;
  BigFloat error_bound;  // running error bound of the Horner evaluation
};

EvalResult eval_poly(const UnivarPoly& p, const CplxB& z);

}  // namespace dhl::polyalg

#endif
