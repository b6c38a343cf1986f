#pragma once

// Reference computations for the tests. Dense, naive and written from the
// definitions; they share nothing with the library beyond Scalar and the
// sparse containers used to hand data back and forth.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "weakhopf/io.hpp"

// readable gtest failure output
namespace weakhopf {
inline void PrintTo(const Vector& v, std::ostream* os) {
  *os << "[";
  for (const auto& e : v.entries()) *os << " " << e.index << ":" << e.value;
  *os << " ] (len " << v.size() << ")";
}
inline void PrintTo(const Matrix& m, std::ostream* os) {
  *os << m.rows() << "x" << m.cols() << " {";
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j).entries()) *os << " (" << e.index << "," << j << ")=" << e.value;
  *os << " }";
}
inline void PrintTo(const Multiplier& m, std::ostream* os) {
  *os << "lambda ";
  PrintTo(m.lambda, os);
  *os << " rho ";
  PrintTo(m.rho, os);
}
inline void PrintTo(const Functional& f, std::ostream* os) {
  *os << "(";
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) *os << (k ? ", " : "") << f.coeffs[k];
  *os << ")";
}
}  // namespace weakhopf

namespace oracle {

using weakhopf::Matrix;
using weakhopf::Scalar;
using weakhopf::Vector;
using Dense = std::vector<std::vector<Scalar>>;  // row-major

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Scalar>(c)); }

inline Dense identity(std::size_t n) {
  Dense m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Dense dense(const Matrix& m) {
  Dense out = zeros(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j).entries()) out[e.index][j] = e.value;
  return out;
}

inline Matrix sparse(const Dense& d) { return Matrix::from_dense(d); }

inline Dense multiply(const Dense& a, const Dense& b) {
  std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  Dense out = zeros(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (!a[i][l].is_zero())
        for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

// Plain Gaussian elimination.
inline std::size_t rank(Dense m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Basis of {x : m x = 0} from the reduced row echelon form, one vector per
// free column.
inline Dense nullspace(Dense m, std::size_t cols) {
  std::size_t rows = m.size(), r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Scalar inv = Scalar(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  Dense out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Scalar> v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    out.push_back(v);
  }
  return out;
}

// dim span(U) == dim span(V) == dim span(U ∪ V), vectors given as rows
inline bool same_span(const Dense& u, const Dense& v) {
  Dense both = u;
  both.insert(both.end(), v.begin(), v.end());
  std::size_t ru = rank(u), rv = rank(v);
  return ru == rv && rank(both) == ru;
}

inline Dense columns_as_rows(const Matrix& m) {
  Dense t = zeros(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j).entries()) t[j][e.index] = e.value;
  return t;
}

// ---- algebras from structure constants ----

struct Alg {
  std::size_t d = 0;
  std::vector<Scalar> c;  // c[(i*d + j)*d + k] = coefficient of e_k in e_i e_j
  Scalar at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * d + j) * d + k]; }
};

inline Alg from_table(const weakhopf::FinAlgebra& a) {
  Alg o;
  o.d = a.dim();
  o.c.assign(o.d * o.d * o.d, Scalar(0));
  for (const auto& [i, j, k, v] : a.structure_constants()) o.c[(i * o.d + j) * o.d + k] = v;
  return o;
}

inline std::vector<Scalar> mul(const Alg& a, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  std::vector<Scalar> out(a.d);
  for (std::size_t i = 0; i < a.d; ++i)
    if (!x[i].is_zero())
      for (std::size_t j = 0; j < a.d; ++j)
        if (!y[j].is_zero())
          for (std::size_t k = 0; k < a.d; ++k) out[k] += x[i] * y[j] * a.at(i, j, k);
  return out;
}

// product in A⊗A, elements as d²-vectors with index i*d + j
inline std::vector<Scalar> mul2(const Alg& a, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  std::size_t d = a.d;
  std::vector<Scalar> out(d * d);
  for (std::size_t p = 0; p < d * d; ++p)
    if (!x[p].is_zero())
      for (std::size_t q = 0; q < d * d; ++q)
        if (!y[q].is_zero())
          for (std::size_t k = 0; k < d; ++k) {
            Scalar l = a.at(p / d, q / d, k);
            if (l.is_zero()) continue;
            for (std::size_t m = 0; m < d; ++m) out[k * d + m] += x[p] * y[q] * l * a.at(p % d, q % d, m);
          }
  return out;
}

inline std::vector<Scalar> unit_vec(std::size_t n, std::size_t i) {
  std::vector<Scalar> v(n);
  v[i] = 1;
  return v;
}

inline std::vector<Scalar> tensor(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  std::vector<Scalar> out;
  for (const auto& a : x)
    for (const auto& b : y) out.push_back(a * b);
  return out;
}

inline std::vector<Scalar> dense(const Vector& v) { return v.dense(); }

// ---- groupoids: pair groupoid on k objects times a cyclic or Klein group ----

struct GroupTable {
  std::size_t n;
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::size_t> inv;
};

inline GroupTable group_table(const std::string& name) {
  GroupTable g;
  if (name == "V4") {
    g.n = 4;
    g.mul = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    g.inv = {0, 1, 2, 3};
    return g;
  }
  g.n = static_cast<std::size_t>(std::stoi(name.substr(1)));
  g.mul.assign(g.n, std::vector<std::size_t>(g.n));
  for (std::size_t x = 0; x < g.n; ++x) {
    g.inv.push_back((g.n - x) % g.n);
    for (std::size_t y = 0; y < g.n; ++y) g.mul[x][y] = (x + y) % g.n;
  }
  return g;
}

// Arrows of a connected groupoid (k objects, group H) enumerated as
// ((t*k + s)*|H| + h) with target t and source s.
struct Transitive {
  std::size_t k;
  GroupTable H;
  std::size_t size() const { return k * k * H.n; }
  std::size_t index(std::size_t t, std::size_t s, std::size_t h) const { return (t * k + s) * H.n + h; }
  std::size_t target(std::size_t g) const { return g / H.n / k; }
  std::size_t source(std::size_t g) const { return (g / H.n) % k; }
  std::size_t elem(std::size_t g) const { return g % H.n; }
  bool composable(std::size_t f, std::size_t g) const { return source(f) == target(g); }
  std::size_t compose(std::size_t f, std::size_t g) const {
    return index(target(f), source(g), H.mul[elem(f)][elem(g)]);
  }
  std::size_t inverse(std::size_t g) const { return index(source(g), target(g), H.inv[elem(g)]); }
  bool is_unit(std::size_t g) const { return source(g) == target(g) && elem(g) == 0; }
};

inline Transitive transitive(std::size_t k, const std::string& group) { return {k, group_table(group)}; }

// Structure constants of the groupoid algebra, straight from composition.
inline Alg groupoid_algebra(const Transitive& G) {
  Alg a;
  a.d = G.size();
  a.c.assign(a.d * a.d * a.d, Scalar(0));
  for (std::size_t f = 0; f < a.d; ++f)
    for (std::size_t g = 0; g < a.d; ++g)
      if (G.composable(f, g)) a.c[(f * a.d + g) * a.d + G.compose(f, g)] = 1;
  return a;
}

// Δ(e_x) as d²-vectors: g⊗g on the groupoid algebra, Σ_{hk=g} δ_h⊗δ_k on functions.
inline Dense groupoid_deltas(const Transitive& G, bool functions) {
  std::size_t d = G.size();
  Dense out = zeros(d, d * d);
  for (std::size_t g = 0; g < d; ++g) {
    if (!functions) {
      out[g][g * d + g] = 1;
      continue;
    }
    for (std::size_t h = 0; h < d; ++h)
      for (std::size_t k = 0; k < d; ++k)
        if (G.composable(h, k) && G.compose(h, k) == g) out[g][h * d + k] = 1;
  }
  return out;
}

// Target (left) or source (right) counital subalgebra as rows: the units for
// the groupoid algebra, functions of t or s for the function algebra.
inline Dense counital_subalgebra(const Transitive& G, bool functions, bool target) {
  std::size_t d = G.size();
  Dense rows;
  for (std::size_t x = 0; x < G.k; ++x) {
    std::vector<Scalar> v(d);
    for (std::size_t g = 0; g < d; ++g)
      if (functions ? (target ? G.target(g) : G.source(g)) == x : g == G.index(x, x, 0)) v[g] = 1;
    rows.push_back(v);
  }
  return rows;
}

// All φ with (ι⊗φ)Δ(a) in the target subalgebra (left) or ψ with
// (ψ⊗ι)Δ(a) in the source subalgebra (right), for every basis a.
inline Dense integrals(const Transitive& G, bool functions, bool left) {
  std::size_t d = G.size();
  Dense deltas = groupoid_deltas(G, functions);
  Dense sub = counital_subalgebra(G, functions, left);
  Dense annihilator = nullspace(sub, d);
  Dense eqs;
  for (std::size_t a = 0; a < d; ++a)
    for (const auto& w : annihilator) {
      std::vector<Scalar> row(d);  // coefficient of φ_k
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) {
          const Scalar& c = deltas[a][p * d + q];
          if (c.is_zero()) continue;
          if (left)
            row[q] += c * w[p];
          else
            row[p] += c * w[q];
        }
      eqs.push_back(row);
    }
  return nullspace(eqs, d);
}

inline std::size_t index_of(const weakhopf::FinAlgebra& a, const std::string& label) {
  const auto& names = a.basis_names();
  auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end()) throw std::out_of_range("no basis element " + label);
  return static_cast<std::size_t>(it - names.begin());
}

inline Vector basis_vec(const weakhopf::FinAlgebra& a, const std::string& label) {
  return Vector::unit(a.dim(), index_of(a, label));
}

inline weakhopf::Example grp(std::size_t k, const std::string& g) {
  return weakhopf::groupoid_algebra(weakhopf::make_groupoid({{k, g}}));
}
inline weakhopf::Example fun(std::size_t k, const std::string& g) {
  return weakhopf::function_algebra(weakhopf::make_groupoid({{k, g}}));
}

// ---- hand-rolled generators ----

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t next() { return rng_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(std::size_t num = 1, std::size_t den = 2) { return below(den) < num; }

  weakhopf::Rational rational(long long span = 9) {
    long long n = static_cast<long long>(below(2 * span + 1)) - span;
    long long d = 1 + static_cast<long long>(below(span));
    return weakhopf::Rational(n, d);
  }
  // occasionally huge, to exercise the big-number path
  weakhopf::Rational wide_rational() {
    if (!coin(1, 4)) return rational();
    std::string num = std::to_string(1 + below(9));
    std::size_t len = 15 + below(30);
    for (std::size_t i = 0; i < len; ++i) num += static_cast<char>('0' + below(10));
    if (coin()) num = "-" + num;
    return weakhopf::Rational::parse(num + "/" + std::to_string(1 + below(97)));
  }
  Scalar scalar(bool complex = false) {
    if (complex && coin()) return Scalar(wide_rational(), wide_rational());
    return Scalar(wide_rational());
  }
  Scalar nonzero_scalar(bool complex = false) {
    Scalar s;
    do s = scalar(complex);
    while (s.is_zero());
    return s;
  }
  Vector vector(std::size_t n, std::size_t density_pct = 60) {
    std::vector<Scalar> v(n);
    for (auto& x : v)
      if (below(100) < density_pct) x = Scalar(rational());
    return Vector::from_dense(v);
  }
  Matrix matrix(std::size_t r, std::size_t c, std::size_t density_pct = 60) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < c; ++j) cols.push_back(vector(r, density_pct));
    return Matrix::from_columns(r, std::move(cols));
  }
  // rank at most k: product of r×k and k×c
  Matrix low_rank(std::size_t r, std::size_t c, std::size_t k) { return matrix(r, k, 80) * matrix(k, c, 80); }
  // unit lower times unit upper triangular, always invertible
  Matrix invertible(std::size_t n) {
    Dense l = identity(n), u = identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        if (coin()) l[i][j] = Scalar(rational(3));
        if (coin()) u[j][i] = Scalar(rational(3));
      }
    return sparse(multiply(l, u));
  }
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
    return p;
  }
  // components with total object count ≤ max_objects and total dim ≤ max_dim
  std::vector<weakhopf::GroupoidComponent> groupoid(std::size_t max_objects, std::size_t max_dim) {
    static const std::vector<std::string> groups = {"C1", "C2", "C3", "C4", "V4"};
    static const std::vector<std::size_t> orders = {1, 2, 3, 4, 4};
    for (;;) {
      std::vector<weakhopf::GroupoidComponent> comps;
      std::size_t total = 1 + below(max_objects), dim = 0;
      while (total > 0) {
        std::size_t k = 1 + below(total), g = below(groups.size());
        comps.push_back({k, groups[g]});
        dim += k * k * orders[g];
        total -= k;
      }
      if (dim <= max_dim) return comps;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
