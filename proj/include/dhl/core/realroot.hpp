#ifndef DHL_CORE_REALROOT_HPP
#define DHL_CORE_REALROOT_HPP

#include "dhl/core/partition.hpp"

// Exact real-root localization for the chromatic-structure checks: Sturm
// chains for moderate degrees, plus sign analysis (Taylor shifts, interval
// evaluation with directed rounding) that scales to the degree-172 inputs.

namespace dhl::polyalg {

// Number of distinct real roots of p in (a, b]. Exact rational arithmetic;
// intended for degrees up to ~60.
int sturm_count(const partition::UnivarPoly& p, const Rational& a, const Rational& b);

// Number of distinct real roots of p on all of R.
int sturm_count_all(const partition::UnivarPoly& p);

// True when every coefficient of p(x + r) is >= 0 with positive leading
// coefficient; then p has no real root > r.
bool no_roots_above(const partition::UnivarPoly& p, const Rational& r);

// True when every coefficient of p(-x + l) has one sign; then p has no real
// root < l.
bool no_roots_below(const partition::UnivarPoly& p, const Rational& l);

// Rigorous exclusion of real roots on [lo, hi] by adaptive interval-Horner
// bisection with outward rounding. Returns true when |p| is certified
// positive on the whole interval; false when a sign change or an
// unresolvable subinterval (beyond the subdivision cap) is met.
bool certify_no_roots_interval(const partition::UnivarPoly& p, const Rational& lo,
                               const Rational& hi, mpfr_prec_t prec,
                               long max_intervals = 2000000);

// Quotient p / (x - r), DivisibilityError unless the division is exact.
partition::UnivarPoly divide_linear(const partition::UnivarPoly& p, const Rational& r);

}  // namespace dhl::polyalg

#endif
