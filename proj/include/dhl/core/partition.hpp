#ifndef DHL_CORE_PARTITION_HPP
#define DHL_CORE_PARTITION_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dhl/core/errors.hpp"
#include "dhl/core/numeric.hpp"

// Exact Potts partition functions Z(D_m, q, v) built by series-parallel
// composition of two-terminal weights, the spanning-subgraph oracle,
// chromatic/Tutte specializations and per-graph statistics.

namespace dhl::partition {

// Dense-map bivariate polynomial with exact rational coefficients, keyed by
// (degree in first variable, degree in second). Z(D_m) uses (q, v); the
// Tutte conversion returns one keyed (x, y).
class BivarPoly {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Rational>;

  BivarPoly() = default;

  static BivarPoly constant(const Rational& c);
  static BivarPoly monomial(int d0, int d1, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  int deg0() const;
  int deg1() const;
  const Terms& terms() const { return terms_; }
  Rational coeff(int d0, int d1) const;
  void set_coeff(int d0, int d1, const Rational& c);

  Rational eval(const Rational& x0, const Rational& x1) const;

  // Canonical serialization used by golden-file tests:
  // {"var_order":["q","v"],"terms":[[d0,d1,"num/den"],...]} ascending keys.
  std::string to_json(const std::string& var0, const std::string& var1) const;

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

 private:
  Terms terms_;
};

// Dense univariate polynomial, exact rational coefficients, index = degree.
class UnivarPoly {
 public:
  UnivarPoly() = default;
  explicit UnivarPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;

  Rational eval(const Rational& x) const;
  UnivarPoly derivative() const;
  std::string to_json(const std::string& var) const;

  friend bool operator==(const UnivarPoly& a, const UnivarPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UnivarPoly& a, const UnivarPoly& b) { return !(a == b); }

 private:
  std::vector<Rational> c_;
};

// Conditional partition sums with the two terminal spins fixed equal (same)
// or fixed distinct (diff). Close with q*same + q(q-1)*diff.
struct TwoTerminalWeights {
  BivarPoly same;
  BivarPoly diff;
};

TwoTerminalWeights edge_weights();
TwoTerminalWeights series(const TwoTerminalWeights& a, const TwoTerminalWeights& b);
TwoTerminalWeights parallel(const TwoTerminalWeights& a, const TwoTerminalWeights& b);
BivarPoly closure(const TwoTerminalWeights& w);

// Weights of D_m: w_{k+1} = parallel(series(w_k, w_k), series(w_k, w_k)).
TwoTerminalWeights dhl_weights(int m, int max_level = 4);

// Z(D_m, q, v). Exact; coefficient growth caps m at max_level (default 4,
// matching the degree-172/256 computations; raise explicitly for D_5).
BivarPoly dhl_partition(int m, int max_level = 4);

// Edge list of D_m under the substitution rule, vertices numbered 0..n-1
// with terminals 0 and 1.
std::vector<std::pair<int, int>> dhl_edges(int m);

// Spanning-subgraph oracle: sum of q^{k(G')} v^{e(G')} over all 2^{|E|}
// subsets, components counted by union-find. Capped at 24 edges.
BivarPoly brute_force_partition(const std::vector<std::pair<int, int>>& edges,
                                int n_vertices);

// Z(C_n, q, v) = (q+v)^n + (q-1) v^n, expanded.
BivarPoly circuit_partition(int n);

// q-plane real-axis crossings of the circuit-graph locus: (0, -2 v0).
std::pair<Rational, Rational> circuit_q_crossings(const Rational& v0);

struct GraphStats {
  long long n = 0;
  long long e = 0;
  Rational delta_eff;
  double hausdorff_dim = 2.0;
};

GraphStats graph_stats(int m);

// P(D_m, q) = Z(D_m, q, -1).
UnivarPoly chromatic(int m, int max_level = 4);

// Exact division by q (first variable). DivisibilityError when the
// constant-in-q part is nonzero.
BivarPoly reduced(const BivarPoly& p);
UnivarPoly reduced(const UnivarPoly& p);

// Tutte polynomial T(G, x, y) from Z(G, q, v) of a connected graph via
// q = (x-1)(y-1), v = y-1 and exact division by (x-1)^k (y-1)^n.
BivarPoly tutte_from_potts(const BivarPoly& z, long long n, int k);

// |P(D_m, q)|^{1/n(D_m)}; 0 when P vanishes.
double w_per_site(int m, const Rational& q, int max_level = 4);

}  // namespace dhl::partition

#endif
