#include "dhl/core/partition.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace dhl::partition {

BivarPoly BivarPoly::constant(const Rational& c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int d0, int d1, const Rational& c) {
  BivarPoly p;
  if (c != 0) p.terms_[{d0, d1}] = c;
  return p;
}

int BivarPoly::deg0() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BivarPoly::deg1() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

Rational BivarPoly::coeff(int d0, int d1) const {
  auto it = terms_.find({d0, d1});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BivarPoly::set_coeff(int d0, int d1, const Rational& c) {
  if (c == 0)
    terms_.erase({d0, d1});
  else
    terms_[{d0, d1}] = c;
}

Rational BivarPoly::eval(const Rational& x0, const Rational& x1) const {
  std::vector<Rational> p0(static_cast<size_t>(deg0()) + 1), p1(static_cast<size_t>(deg1()) + 1);
  p0[0] = 1;
  for (size_t i = 1; i < p0.size(); ++i) p0[i] = p0[i - 1] * x0;
  p1[0] = 1;
  for (size_t i = 1; i < p1.size(); ++i) p1[i] = p1[i - 1] * x1;
  Rational acc(0);
  for (const auto& [k, c] : terms_) acc += c * p0[static_cast<size_t>(k.first)] * p1[static_cast<size_t>(k.second)];
  return acc;
}

std::string BivarPoly::to_json(const std::string& var0, const std::string& var1) const {
  std::ostringstream os;
  os << "{\"var_order\":[\"" << var0 << "\",\"" << var1 << "\"],\"terms\":[";
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << ",";
    first = false;
    os << "[" << k.first << "," << k.second << ",\"" << rational_to_string(c) << "\"]";
  }
  os << "]}";
  return os.str();
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  int d0 = a.deg0() + b.deg0();
  int d1 = a.deg1() + b.deg1();
  size_t stride = static_cast<size_t>(d1) + 1;
  std::vector<Rational> dense((static_cast<size_t>(d0) + 1) * stride);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      dense[static_cast<size_t>(ka.first + kb.first) * stride +
            static_cast<size_t>(ka.second + kb.second)] += ca * cb;
  for (int i = 0; i <= d0; ++i)
    for (int j = 0; j <= d1; ++j) {
      Rational& c = dense[static_cast<size_t>(i) * stride + static_cast<size_t>(j)];
      if (c != 0) out.terms_[{i, j}] = std::move(c);
    }
  return out;
}

UnivarPoly::UnivarPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UnivarPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<size_t>(i)];
}

Rational UnivarPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UnivarPoly UnivarPoly::derivative() const {
  if (c_.size() <= 1) return UnivarPoly{};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return UnivarPoly(std::move(d));
}

std::string UnivarPoly::to_json(const std::string& var) const {
  std::ostringstream os;
  os << "{\"var_order\":[\"" << var << "\"],\"terms\":[";
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << ",";
    first = false;
    os << "[" << i << ",\"" << rational_to_string(c_[i]) << "\"]";
  }
  os << "]}";
  return os.str();
}

TwoTerminalWeights edge_weights() {
  TwoTerminalWeights w;
  w.same = BivarPoly::monomial(0, 0, 1);
  w.same += BivarPoly::monomial(0, 1, 1);  // 1 + v
  w.diff = BivarPoly::monomial(0, 0, 1);
  return w;
}

namespace {
const BivarPoly& poly_q() {
  static const BivarPoly q = BivarPoly::monomial(1, 0, 1);
  return q;
}
const BivarPoly& poly_q_minus(long k) {
  static const BivarPoly q1 = poly_q() - BivarPoly::constant(1);
  static const BivarPoly q2 = poly_q() - BivarPoly::constant(2);
  return k == 1 ? q1 : q2;
}
}  // namespace

// Sum over the q colors of the merged middle vertex.
TwoTerminalWeights series(const TwoTerminalWeights& a, const TwoTerminalWeights& b) {
  TwoTerminalWeights w;
  w.same = a.same * b.same + poly_q_minus(1) * (a.diff * b.diff);
  w.diff = a.same * b.diff + a.diff * b.same + poly_q_minus(2) * (a.diff * b.diff);
  return w;
}

TwoTerminalWeights parallel(const TwoTerminalWeights& a, const TwoTerminalWeights& b) {
  return {a.same * b.same, a.diff * b.diff};
}

BivarPoly closure(const TwoTerminalWeights& w) {
  return poly_q() * w.same + poly_q() * poly_q_minus(1) * w.diff;
}

TwoTerminalWeights dhl_weights(int m, int max_level) {
  if (m < 0) throw DomainError("dhl_weights: level must be nonnegative");
  if (m > max_level)
    throw ResourceError("dhl_weights: level " + std::to_string(m) +
                        " above configured maximum " + std::to_string(max_level) +
                        " (coefficients grow combinatorially)");
  TwoTerminalWeights w = edge_weights();
  for (int k = 0; k < m; ++k) {
    TwoTerminalWeights s = series(w, w);
    w = parallel(s, s);
  }
  return w;
}

BivarPoly dhl_partition(int m, int max_level) {
  static std::mutex mu;
  static std::map<int, BivarPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  BivarPoly z = closure(dhl_weights(m, max_level));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, z);
  return z;
}

std::vector<std::pair<int, int>> dhl_edges(int m) {
  if (m < 0) throw DomainError("dhl_edges: level must be nonnegative");
  std::vector<std::pair<int, int>> edges{{0, 1}};
  int next_vertex = 2;
  for (int k = 0; k < m; ++k) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size() * 4);
    for (auto [a, b] : edges) {
      int c = next_vertex++;
      int d = next_vertex++;
      out.emplace_back(a, c);
      out.emplace_back(c, b);
      out.emplace_back(a, d);
      out.emplace_back(d, b);
    }
    edges = std::move(out);
  }
  return edges;
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
    return true;
  }
};
}  // namespace

BivarPoly brute_force_partition(const std::vector<std::pair<int, int>>& edges,
                                int n_vertices) {
  if (n_vertices <= 0) throw DomainError("brute_force_partition: need at least one vertex");
  if (edges.size() > 24)
    throw ResourceError("brute_force_partition: edge cap is 24 (got " +
                        std::to_string(edges.size()) + ")");
  for (auto [a, b] : edges)
    if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices)
      throw DomainError("brute_force_partition: edge endpoint out of range");

  size_t ne = edges.size();
  // counts[k][e'] of spanning subgraphs; exact since 2^24 fits easily.
  std::vector<std::vector<unsigned long long>> counts(
      static_cast<size_t>(n_vertices) + 1,
      std::vector<unsigned long long>(ne + 1, 0));
  for (unsigned long long mask = 0; mask < (1ULL << ne); ++mask) {
    UnionFind uf(n_vertices);
    int merges = 0;
    int used = 0;
    for (size_t i = 0; i < ne; ++i)
      if (mask & (1ULL << i)) {
        ++used;
        if (uf.unite(edges[i].first, edges[i].second)) ++merges;
      }
    ++counts[static_cast<size_t>(n_vertices - merges)][static_cast<size_t>(used)];
  }
  BivarPoly z;
  for (int k = 1; k <= n_vertices; ++k)
    for (size_t e = 0; e <= ne; ++e)
      if (counts[static_cast<size_t>(k)][e])
        z.set_coeff(k, static_cast<int>(e),
                    Rational(mpz_class(static_cast<unsigned long>(counts[static_cast<size_t>(k)][e]))));
  return z;
}

BivarPoly circuit_partition(int n) {
  if (n < 3) throw DomainError("circuit_partition: n >= 3 required");
  // (q+v)^n expanded by binomials, plus (q-1) v^n.
  BivarPoly z;
  mpz_class binom = 1;
  for (int k = 0; k <= n; ++k) {
    z.set_coeff(k, n - k, Rational(binom));
    binom = binom * (n - k) / (k + 1);
  }
  z += BivarPoly::monomial(1, n, 1);
  z += BivarPoly::monomial(0, n, -1);
  return z;
}

std::pair<Rational, Rational> circuit_q_crossings(const Rational& v0) {
  if (v0 == 0) throw DomainError("circuit_q_crossings: v0 = 0 has all zeros at q = 0");
  return {Rational(0), Rational(-2) * v0};
}

GraphStats graph_stats(int m) {
  if (m < 0) throw DomainError("graph_stats: level must be nonnegative");
  if (m > 30) throw ResourceError("graph_stats: level too large for exact integer counts");
  GraphStats s;
  s.e = 1LL << (2 * m);
  s.n = 2 * (s.e + 2) / 3;
  s.delta_eff = Rational(2 * s.e, s.n);
  s.delta_eff.canonicalize();
  s.hausdorff_dim = 2.0;  // ln 4 / ln 2
  return s;
}

namespace {
UnivarPoly specialize_second(const BivarPoly& p, const Rational& x1) {
  std::vector<Rational> pow1(static_cast<size_t>(p.deg1()) + 1);
  pow1[0] = 1;
  for (size_t i = 1; i < pow1.size(); ++i) pow1[i] = pow1[i - 1] * x1;
  std::vector<Rational> c(static_cast<size_t>(p.deg0()) + 1);
  for (const auto& [k, coef] : p.terms())
    c[static_cast<size_t>(k.first)] += coef * pow1[static_cast<size_t>(k.second)];
  return UnivarPoly(std::move(c));
}
}  // namespace

UnivarPoly chromatic(int m, int max_level) {
  return specialize_second(dhl_partition(m, max_level), Rational(-1));
}

BivarPoly reduced(const BivarPoly& p) {
  BivarPoly out;
  for (const auto& [k, c] : p.terms()) {
    if (k.first == 0)
      throw DivisibilityError("reduced: polynomial has a nonzero constant-in-q term");
    out.set_coeff(k.first - 1, k.second, c);
  }
  return out;
}

UnivarPoly reduced(const UnivarPoly& p) {
  if (p.is_zero()) return p;
  if (p.coeff(0) != 0)
    throw DivisibilityError("reduced: polynomial has a nonzero constant term");
  std::vector<Rational> c(p.coeffs().begin() + 1, p.coeffs().end());
  return UnivarPoly(std::move(c));
}

namespace {

// Substitute var -> var - 1 ... i.e. given P in the shifted variable s,
// produce P(x-1) by Horner over the rows of the chosen variable.
BivarPoly compose_shift(const BivarPoly& p, int which_var) {
  int deg = which_var == 0 ? p.deg0() : p.deg1();
  // rows[i] = coefficient polynomial of (shifted var)^i in the other variable
  std::vector<BivarPoly> rows(static_cast<size_t>(deg) + 1);
  for (const auto& [k, c] : p.terms()) {
    int i = which_var == 0 ? k.first : k.second;
    int j = which_var == 0 ? k.second : k.first;
    rows[static_cast<size_t>(i)] += which_var == 0 ? BivarPoly::monomial(0, j, c)
                                                   : BivarPoly::monomial(j, 0, c);
  }
  auto mul_by_x_minus_1 = [&](const BivarPoly& a) {
    BivarPoly out;
    for (const auto& [k, c] : a.terms()) {
      int d0 = k.first + (which_var == 0 ? 1 : 0);
      int d1 = k.second + (which_var == 0 ? 0 : 1);
      out.set_coeff(d0, d1, out.coeff(d0, d1) + c);
      out.set_coeff(k.first, k.second, out.coeff(k.first, k.second) - c);
    }
    return out;
  };
  BivarPoly acc = rows[static_cast<size_t>(deg)];
  for (int i = deg - 1; i >= 0; --i) acc = mul_by_x_minus_1(acc) + rows[static_cast<size_t>(i)];
  return acc;
}

}  // namespace

BivarPoly tutte_from_potts(const BivarPoly& z, long long n, int k) {
  // q^{k'} v^{e'} -> (x-1)^{k'} (y-1)^{k'+e'}; divide by (x-1)^k (y-1)^n.
  BivarPoly shifted;
  for (const auto& [key, c] : z.terms()) {
    long long s = key.first - k;
    long long t = static_cast<long long>(key.first) + key.second - n;
    if (s < 0 || t < 0)
      throw DivisibilityError("tutte_from_potts: quotient is not polynomial "
                              "(is the input a connected-graph partition polynomial?)");
    shifted.set_coeff(static_cast<int>(s), static_cast<int>(t),
                      shifted.coeff(static_cast<int>(s), static_cast<int>(t)) + c);
  }
  return compose_shift(compose_shift(shifted, 0), 1);
}

double w_per_site(int m, const Rational& q, int max_level) {
  Rational p = chromatic(m, max_level).eval(q);
  if (p == 0) return 0.0;
  long long n = graph_stats(m).n;
  BigFloat x(p, 256);
  return exp(log(abs(x)) / BigFloat(static_cast<long>(n), 256)).to_double();
}

}  // namespace dhl::partition
