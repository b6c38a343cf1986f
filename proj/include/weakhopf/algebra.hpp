#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "weakhopf/linalg.hpp"
#include "weakhopf/report.hpp"

namespace weakhopf {

inline Vector kron(const Vector& a, const Vector& b) {
  Vector r(a.size() * b.size());
  std::vector<Entry> raw;
  raw.reserve(a.nnz() * b.nnz());
  for (const auto& x : a.entries())
    for (const auto& y : b.entries()) raw.push_back({x.index * b.size() + y.index, x.value * y.value});
  return Vector::from_entries(a.size() * b.size(), std::move(raw));
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  std::vector<Vector> cols;
  cols.reserve(a.cols() * b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(kron(a.column(i), b.column(j)));
  return Matrix::from_columns(a.rows() * b.rows(), std::move(cols));
}

// P M P^-1 for the permutation P e_i = e_perm[i].
inline Matrix conjugate_by_permutation(const Matrix& m, const std::vector<std::size_t>& perm) {
  std::vector<Vector> cols(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    std::vector<Entry> raw;
    for (const auto& e : m.column(i).entries()) raw.push_back({perm[e.index], e.value});
    cols[perm[i]] = Vector::from_entries(m.rows(), std::move(raw));
  }
  return Matrix::from_columns(m.rows(), std::move(cols));
}

struct Functional {
  std::vector<Scalar> coeffs;

  std::size_t dim() const { return coeffs.size(); }
  Scalar operator()(const Vector& v) const { return dot(coeffs, v); }
  friend bool operator==(const Functional& a, const Functional& b) { return a.coeffs == b.coeffs; }
};

// Element of M(X) as a compatible pair of left and right actions.
struct Multiplier {
  Matrix lambda;
  Matrix rho;

  std::size_t dim() const { return lambda.cols(); }
  friend bool operator==(const Multiplier& a, const Multiplier& b) { return a.lambda == b.lambda && a.rho == b.rho; }
  friend bool operator!=(const Multiplier& a, const Multiplier& b) { return !(a == b); }
};

inline Multiplier operator*(const Multiplier& a, const Multiplier& b) { return {a.lambda * b.lambda, b.rho * a.rho}; }
inline Multiplier operator+(const Multiplier& a, const Multiplier& b) { return {a.lambda + b.lambda, a.rho + b.rho}; }
inline Multiplier operator-(const Multiplier& a, const Multiplier& b) { return {a.lambda - b.lambda, a.rho - b.rho}; }
inline Multiplier scaled(const Multiplier& m, const Scalar& s) { return {m.lambda.scaled(s), m.rho.scaled(s)}; }
inline Multiplier identity_multiplier(std::size_t n) { return {Matrix::identity(n), Matrix::identity(n)}; }
inline Multiplier zero_multiplier(std::size_t n) { return {Matrix(n, n), Matrix(n, n)}; }

// (λ | ρ) stacked column by column into one vector of length 2n².
inline Vector flatten(const Multiplier& m) {
  std::size_t n = m.dim();
  std::vector<Entry> raw;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& e : m.lambda.column(j).entries()) raw.push_back({j * n + e.index, e.value});
    for (const auto& e : m.rho.column(j).entries()) raw.push_back({n * n + j * n + e.index, e.value});
  }
  return Vector::from_entries(2 * n * n, std::move(raw));
}

inline Multiplier unflatten(std::size_t n, const Vector& v) {
  std::vector<std::vector<Entry>> l(n), r(n);
  for (const auto& e : v.entries()) {
    std::size_t k = e.index;
    if (k < n * n)
      l[k / n].push_back({k % n, e.value});
    else
      r[(k - n * n) / n].push_back({(k - n * n) % n, e.value});
  }
  Multiplier m{Matrix(n, n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    m.lambda.set_column(j, Vector::from_entries(n, std::move(l[j])));
    m.rho.set_column(j, Vector::from_entries(n, std::move(r[j])));
  }
  return m;
}

inline Multiplier linear_combination(std::size_t n, const std::vector<Multiplier>& basis, const std::vector<Scalar>& c) {
  Multiplier m = zero_multiplier(n);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!c[k].is_zero()) m = m + scaled(basis[k], c[k]);
  return m;
}

template <class A>
concept AlgebraLike = requires(const A& a, std::size_t i) {
  { a.dim() } -> std::convertible_to<std::size_t>;
  { a.product(i, i) } -> std::convertible_to<Vector>;
  { a.unit() } -> std::convertible_to<std::optional<Vector>>;
};

// Finite-dimensional algebra given by structure constants e_i e_j = Σ c_ijk e_k.
class FinAlgebra {
 public:
  FinAlgebra() = default;

  // table[i*d + j] = e_i e_j. The unit is solved for unless supplied.
  FinAlgebra(std::vector<std::string> names, std::vector<Vector> table, std::optional<Matrix> involution = std::nullopt,
             std::optional<std::optional<Vector>> known_unit = std::nullopt)
      : names_(std::move(names)), table_(std::move(table)), involution_(std::move(involution)) {
    std::size_t d = names_.size();
    if (table_.size() != d * d) throw std::invalid_argument("structure table has wrong size");
    for (const auto& v : table_)
      if (v.size() != d) throw std::invalid_argument("structure table vector has wrong length");
    if (involution_ && (involution_->rows() != d || involution_->cols() != d))
      throw std::invalid_argument("involution has wrong shape");
    unit_ = known_unit ? *known_unit : solve_unit();
  }

  static FinAlgebra from_constants(std::vector<std::string> names,
                                   const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>>& c,
                                   std::optional<Matrix> involution = std::nullopt) {
    std::size_t d = names.size();
    std::vector<std::vector<Entry>> raw(d * d);
    for (const auto& [i, j, k, v] : c) {
      if (i >= d || j >= d || k >= d) throw std::out_of_range("structure constant index out of range");
      raw[i * d + j].push_back({k, v});
    }
    std::vector<Vector> table;
    table.reserve(d * d);
    for (auto& r : raw) table.push_back(Vector::from_entries(d, std::move(r)));
    return FinAlgebra(std::move(names), std::move(table), std::move(involution));
  }

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Vector& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  const std::optional<Vector>& unit() const { return unit_; }
  const std::optional<Matrix>& involution() const { return involution_; }
  const std::vector<Vector>& table() const { return table_; }

  Vector basis(std::size_t i) const { return Vector::unit(dim(), i); }

  Vector multiply(const Vector& a, const Vector& b) const {
    VectorBuilder out(dim());
    for (const auto& x : a.entries())
      for (const auto& y : b.entries()) out.add(x.value * y.value, product(x.index, y.index));
    return out.finish();
  }

  // a* = J conj(a)
  Vector star(const Vector& a) const {
    if (!involution_) throw std::logic_error("algebra has no involution");
    VectorBuilder out(dim());
    for (const auto& x : a.entries()) out.add(x.value.conj(), involution_->column(x.index));
    return out.finish();
  }

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> structure_constants() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (const auto& tmp_e = product(i, j); const auto& e : tmp_e.entries()) out.emplace_back(i, j, e.index, e.value);
    return out;
  }

  FinAlgebra with_involution(std::optional<Matrix> inv) const {
    FinAlgebra a = *this;
    if (inv && (inv->rows() != dim() || inv->cols() != dim())) throw std::invalid_argument("involution has wrong shape");
    a.involution_ = std::move(inv);
    return a;
  }

  friend bool operator==(const FinAlgebra& a, const FinAlgebra& b) {
    return a.names_ == b.names_ && a.table_ == b.table_ && a.involution_ == b.involution_;
  }

 private:
  std::optional<Vector> solve_unit() const {
    std::size_t d = dim();
    if (d == 0) return std::nullopt;
    // column i: (e_i e_j)_j stacked with (e_j e_i)_j
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Entry> raw;
      for (std::size_t j = 0; j < d; ++j) {
        for (const auto& tmp_e = product(i, j); const auto& e : tmp_e.entries()) raw.push_back({j * d + e.index, e.value});
        for (const auto& tmp_e = product(j, i); const auto& e : tmp_e.entries()) raw.push_back({d * d + j * d + e.index, e.value});
      }
      cols.push_back(Vector::from_entries(2 * d * d, std::move(raw)));
    }
    std::vector<Entry> rhs;
    for (std::size_t j = 0; j < d; ++j) {
      rhs.push_back({j * d + j, Scalar(1)});
      rhs.push_back({d * d + j * d + j, Scalar(1)});
    }
    auto res = solve_linear(Matrix::from_columns(2 * d * d, std::move(cols)), Vector::from_entries(2 * d * d, rhs));
    return res.solution;
  }

  std::vector<std::string> names_;
  std::vector<Vector> table_;
  std::optional<Matrix> involution_;
  std::optional<Vector> unit_;
};

// A^{⊗k} without materializing its structure table. Basis index of
// e_{i1}⊗...⊗e_{ik} is row-major: ((i1*d + i2)*d + ...).
class TensorPower {
 public:
  TensorPower(const FinAlgebra& base, std::size_t degree) : base_(&base), degree_(degree) {
    dim_ = 1;
    for (std::size_t k = 0; k < degree; ++k) dim_ *= base.dim();
    if (base.unit()) {
      Vector u = *base.unit();
      for (std::size_t k = 1; k < degree; ++k) u = kron(u, *base.unit());
      unit_ = u;
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const FinAlgebra& base() const { return *base_; }
  const std::optional<Vector>& unit() const { return unit_; }

  std::vector<std::size_t> decode(std::size_t idx) const {
    std::vector<std::size_t> legs(degree_);
    std::size_t d = base_->dim();
    for (std::size_t k = degree_; k-- > 0;) {
      legs[k] = idx % d;
      idx /= d;
    }
    return legs;
  }
  std::size_t encode(const std::vector<std::size_t>& legs) const {
    std::size_t idx = 0;
    for (auto l : legs) idx = idx * base_->dim() + l;
    return idx;
  }

  Vector product(std::size_t i, std::size_t j) const {
    auto a = decode(i);
    auto b = decode(j);
    Vector r = base_->product(a[0], b[0]);
    for (std::size_t k = 1; k < degree_; ++k) {
      if (r.is_zero()) return Vector(dim_);
      r = kron(r, base_->product(a[k], b[k]));
    }
    r.resize(dim_);
    return r;
  }

 private:
  const FinAlgebra* base_;
  std::size_t degree_;
  std::size_t dim_;
  std::optional<Vector> unit_;
};

template <AlgebraLike Alg>
Vector mul(const Alg& x, const Vector& a, const Vector& b) {
  VectorBuilder out(x.dim());
  for (const auto& p : a.entries())
    for (const auto& q : b.entries()) out.add(p.value * q.value, x.product(p.index, q.index));
  return out.finish();
}

template <AlgebraLike Alg>
Matrix left_mult(const Alg& x, const Vector& a) {
  std::vector<Vector> cols;
  cols.reserve(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) {
    VectorBuilder out(x.dim());
    for (const auto& p : a.entries()) out.add(p.value, x.product(p.index, j));
    cols.push_back(out.finish());
  }
  return Matrix::from_columns(x.dim(), std::move(cols));
}

template <AlgebraLike Alg>
Matrix right_mult(const Alg& x, const Vector& a) {
  std::vector<Vector> cols;
  cols.reserve(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) {
    VectorBuilder out(x.dim());
    for (const auto& p : a.entries()) out.add(p.value, x.product(j, p.index));
    cols.push_back(out.finish());
  }
  return Matrix::from_columns(x.dim(), std::move(cols));
}

template <AlgebraLike Alg>
Multiplier embed(const Alg& x, const Vector& a) {
  return {left_mult(x, a), right_mult(x, a)};
}

// Module laws and compatibility of (λ, ρ). With a unit the pair is a
// multiplier iff λ = L_m, ρ = R_m for m = λ(1) = ρ(1).
template <AlgebraLike Alg>
Check check_multiplier(const Alg& x, const Multiplier& m, bool force_pairwise = false) {
  std::size_t n = x.dim();
  if (m.lambda.rows() != n || m.lambda.cols() != n || m.rho.rows() != n || m.rho.cols() != n)
    return fail("multiplier_shape", "action matrices have the wrong size");
  if (x.unit() && !force_pairwise) {
    const Vector& u = *x.unit();
    Vector l1 = m.lambda.apply(u);
    if (m.rho.apply(u) != l1) return fail("multiplier_compatibility", "rho(1) != lambda(1)");
    for (std::size_t j = 0; j < n; ++j) {
      Vector ej = Vector::unit(n, j);
      if (m.lambda.column(j) != mul(x, l1, ej)) return fail("multiplier_left_module", "lambda(x) != lambda(1)x", {j});
      if (m.rho.column(j) != mul(x, ej, l1)) return fail("multiplier_right_module", "rho(x) != x rho(1)", {j});
    }
    return pass("multiplier");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector ei = Vector::unit(n, i), ej = Vector::unit(n, j);
      Vector p = x.product(i, j);
      if (m.lambda.apply(p) != mul(x, m.lambda.column(i), ej))
        return fail("multiplier_left_module", "lambda(ab) != lambda(a)b", {i, j});
      if (m.rho.apply(p) != mul(x, ei, m.rho.column(j)))
        return fail("multiplier_right_module", "rho(ab) != a rho(b)", {i, j});
      if (mul(x, m.rho.column(i), ej) != mul(x, ei, m.lambda.column(j)))
        return fail("multiplier_compatibility", "rho(a)b != a lambda(b)", {i, j});
    }
  }
  return pass("multiplier");
}

// Element whose left multiplication is the given action, if one exists.
template <AlgebraLike Alg, class F>
std::optional<Vector> covered_element(const Alg& x, F&& left_action) {
  std::size_t n = x.dim();
  if (x.unit()) return left_action(*x.unit());
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Entry> raw;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& tmp_e = x.product(k, j); const auto& e : tmp_e.entries()) raw.push_back({j * n + e.index, e.value});
    cols.push_back(Vector::from_entries(n * n, std::move(raw)));
  }
  std::vector<Entry> rhs;
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& tmp_e = left_action(Vector::unit(n, j)); const auto& e : tmp_e.entries()) rhs.push_back({j * n + e.index, e.value});
  auto res = solve_linear(Matrix::from_columns(n * n, std::move(cols)), Vector::from_entries(n * n, std::move(rhs)));
  return res.solution;
}

template <AlgebraLike Alg>
std::optional<Vector> as_element(const Alg& x, const Multiplier& m) {
  auto w = covered_element(x, [&](const Vector& v) { return m.lambda.apply(v); });
  if (!w) return std::nullopt;
  if (embed(x, *w) != m) return std::nullopt;
  return w;
}

// Applies a linear map on A to one leg of an element of A^{⊗k}.
inline Vector apply_on_leg(const Vector& w, std::size_t d, std::size_t degree, std::size_t leg, const Matrix& m) {
  std::size_t stride = 1;
  for (std::size_t k = leg + 1; k < degree; ++k) stride *= d;
  std::vector<Entry> raw;
  for (const auto& e : w.entries()) {
    std::size_t l = (e.index / stride) % d;
    std::size_t base = e.index - l * stride;
    for (const auto& x : m.column(l).entries()) raw.push_back({base + x.index * stride, e.value * x.value});
  }
  return Vector::from_entries(w.size(), std::move(raw));
}

// (ι⊗f)(w) for w in A⊗A
inline Vector slice_second(const Vector& w, std::size_t d, const std::vector<Scalar>& f) {
  VectorBuilder out(d);
  for (const auto& e : w.entries()) out.add(e.index / d, e.value * f[e.index % d]);
  return out.finish();
}

// (f⊗ι)(w) for w in A⊗A
inline Vector slice_first(const Vector& w, std::size_t d, const std::vector<Scalar>& f) {
  VectorBuilder out(d);
  for (const auto& e : w.entries()) out.add(e.index % d, e.value * f[e.index / d]);
  return out.finish();
}

// (f⊗ι⊗ι) and (ι⊗ι⊗f) on A⊗A⊗A, landing in A⊗A
inline Vector slice_first3(const Vector& w, std::size_t d, const std::vector<Scalar>& f) {
  VectorBuilder out(d * d);
  for (const auto& e : w.entries()) out.add(e.index % (d * d), e.value * f[e.index / (d * d)]);
  return out.finish();
}
inline Vector slice_third3(const Vector& w, std::size_t d, const std::vector<Scalar>& f) {
  VectorBuilder out(d * d);
  for (const auto& e : w.entries()) out.add(e.index / d, e.value * f[e.index % d]);
  return out.finish();
}

// Legs of w ∈ A⊗A multiplied together: m(w).
inline Vector multiply_legs(const FinAlgebra& a, const Vector& w) {
  std::size_t d = a.dim();
  VectorBuilder out(d);
  for (const auto& e : w.entries()) out.add(e.value, a.product(e.index / d, e.index % d));
  return out.finish();
}

inline Vector flip(const Vector& w, std::size_t d) {
  std::vector<Entry> raw;
  for (const auto& e : w.entries()) raw.push_back({(e.index % d) * d + e.index / d, e.value});
  return Vector::from_entries(w.size(), std::move(raw));
}

inline std::vector<std::size_t> flip12_permutation(std::size_t d) {
  std::vector<std::size_t> p(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) p[(i * d + j) * d + k] = (j * d + i) * d + k;
  return p;
}

// m⊗1 and 1⊗m on A⊗A⊗A for a multiplier m of A⊗A
inline Multiplier leg12(const Multiplier& m, std::size_t d) {
  return {kron(m.lambda, Matrix::identity(d)), kron(m.rho, Matrix::identity(d))};
}
inline Multiplier leg23(const Multiplier& m, std::size_t d) {
  return {kron(Matrix::identity(d), m.lambda), kron(Matrix::identity(d), m.rho)};
}

// m sitting in legs 1 and 3: the flip of the first two factors conjugating m₂₃.
inline Multiplier leg13(const FinAlgebra& a, const Multiplier& m) {
  std::size_t d = a.dim();
  if (m.dim() != d * d) throw std::invalid_argument("leg13: not a multiplier of A⊗A");
  auto p = flip12_permutation(d);
  Multiplier m23 = leg23(m, d);
  return {conjugate_by_permutation(m23.lambda, p), conjugate_by_permutation(m23.rho, p)};
}

// x⊗y for multipliers x, y of A
inline Multiplier tensor(const Multiplier& x, const Multiplier& y) { return {kron(x.lambda, y.lambda), kron(x.rho, y.rho)}; }

inline FinAlgebra tensor_square(const FinAlgebra& a) {
  std::size_t d = a.dim();
  TensorPower x(a, 2);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) names.push_back(a.basis_names()[i] + "⊗" + a.basis_names()[j]);
  std::vector<Vector> table;
  table.reserve(d * d * d * d);
  for (std::size_t i = 0; i < d * d; ++i)
    for (std::size_t j = 0; j < d * d; ++j) table.push_back(x.product(i, j));
  std::optional<Matrix> inv;
  if (a.involution()) inv = kron(*a.involution(), *a.involution());
  return FinAlgebra(std::move(names), std::move(table), std::move(inv), x.unit());
}

inline Check check_associativity(const FinAlgebra& a) {
  std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        VectorBuilder l(d), r(d);
        for (const auto& tmp_e = a.product(i, j); const auto& e : tmp_e.entries()) l.add(e.value, a.product(e.index, k));
        for (const auto& tmp_e = a.product(j, k); const auto& e : tmp_e.entries()) r.add(e.value, a.product(i, e.index));
        if (l.finish() != r.finish()) return fail("associativity", "(e_i e_j) e_k != e_i (e_j e_k)", {i, j, k});
      }
  return pass("associativity");
}

inline Check check_involution(const FinAlgebra& a) {
  if (!a.involution()) return pass("involution", "no involution");
  std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    if (a.star(a.star(a.basis(i))) != a.basis(i)) return fail("involution", "a** != a", {i});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (a.star(a.product(i, j)) != a.multiply(a.star(a.basis(j)), a.star(a.basis(i))))
        return fail("involution", "(ab)* != b*a*", {i, j});
  return pass("involution");
}

// Trivial kernel of a ↦ (a e_j)_j and of a ↦ (e_j a)_j.
inline Check check_nondegenerate(const FinAlgebra& a) {
  std::size_t d = a.dim();
  for (int side = 0; side < 2; ++side) {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Entry> raw;
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& tmp_e = (side == 0 ? a.product(i, j) : a.product(j, i)); const auto& e : tmp_e.entries())
          raw.push_back({j * d + e.index, e.value});
      cols.push_back(Vector::from_entries(d * d, std::move(raw)));
    }
    Subspace k = kernel_basis(Matrix::from_columns(d * d, std::move(cols)));
    if (k.dim() > 0) {
      Witness w;
      for (const auto& e : k.basis()[0].entries()) w.push_back(e.index);
      return fail("nondegenerate", side == 0 ? "nonzero a with a A = 0" : "nonzero a with A a = 0", w);
    }
  }
  return pass("nondegenerate");
}

inline Check check_idempotent_algebra(const FinAlgebra& a) {
  std::size_t d = a.dim();
  Echelon e(d);
  for (const auto& v : a.table()) {
    e.insert(v);
    if (e.rank() == d) break;
  }
  if (e.rank() != d) return fail("idempotent_algebra", "A^2 has dimension " + std::to_string(e.rank()));
  return pass("idempotent_algebra");
}

// Algebra structure on a linearly independent family of multipliers that is
// closed under composition.
inline FinAlgebra algebra_of_multipliers(const std::vector<Multiplier>& basis, std::vector<std::string> names) {
  std::size_t t = basis.size();
  if (t == 0) return FinAlgebra(std::move(names), {});
  std::size_t n = basis[0].dim();
  Echelon e(2 * n * n, true);
  for (const auto& b : basis)
    if (!e.insert(flatten(b))) throw std::invalid_argument("multiplier family is linearly dependent");
  std::vector<Vector> table;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      auto c = e.express(flatten(basis[i] * basis[j]));
      if (!c) throw StructuralError("closure", "span of multipliers is not closed under products", {i, j});
      c->resize(t);
      table.push_back(std::move(*c));
    }
  return FinAlgebra(std::move(names), std::move(table));
}

struct MultiplierAlgebra {
  std::vector<Multiplier> basis;
  FinAlgebra algebra;
};

// Solves the multiplier equations directly: unknowns λ then ρ, column-major.
inline MultiplierAlgebra multiplier_algebra_by_solving(const FinAlgebra& a) {
  if (!check_nondegenerate(a)) throw StructuralError("nondegenerate", "multiplier algebra needs a non-degenerate algebra");
  std::size_t d = a.dim();
  auto lam = [d](std::size_t row, std::size_t col) { return col * d + row; };
  auto rho = [d](std::size_t row, std::size_t col) { return d * d + col * d + row; };
  std::vector<std::vector<Entry>> cols(2 * d * d);
  std::size_t eq = 0;
  auto add = [&](std::size_t r, std::size_t unknown, const Scalar& v) { cols[unknown].push_back({eq + r, v}); };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      // λ(e_i e_j) - λ(e_i) e_j
      for (const auto& tmp_p = a.product(i, j); const auto& p : tmp_p.entries())
        for (std::size_t r = 0; r < d; ++r) add(r, lam(r, p.index), p.value);
      for (std::size_t s = 0; s < d; ++s)
        for (const auto& tmp_p = a.product(s, j); const auto& p : tmp_p.entries()) add(p.index, lam(s, i), -p.value);
      eq += d;
      // ρ(e_i e_j) - e_i ρ(e_j)
      for (const auto& tmp_p = a.product(i, j); const auto& p : tmp_p.entries())
        for (std::size_t r = 0; r < d; ++r) add(r, rho(r, p.index), p.value);
      for (std::size_t s = 0; s < d; ++s)
        for (const auto& tmp_p = a.product(i, s); const auto& p : tmp_p.entries()) add(p.index, rho(s, j), -p.value);
      eq += d;
      // ρ(e_i) e_j - e_i λ(e_j)
      for (std::size_t s = 0; s < d; ++s) {
        for (const auto& tmp_p = a.product(s, j); const auto& p : tmp_p.entries()) add(p.index, rho(s, i), p.value);
        for (const auto& tmp_p = a.product(i, s); const auto& p : tmp_p.entries()) add(p.index, lam(s, j), -p.value);
      }
      eq += d;
    }
  std::vector<Vector> mcols;
  for (auto& c : cols) mcols.push_back(Vector::from_entries(eq, std::move(c)));
  Subspace k = kernel_basis(Matrix::from_columns(eq, std::move(mcols)));
  MultiplierAlgebra out;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < k.dim(); ++t) {
    out.basis.push_back(unflatten(d, k.basis()[t]));
    names.push_back("m" + std::to_string(t));
  }
  out.algebra = algebra_of_multipliers(out.basis, std::move(names));
  return out;
}

// For unital A the multiplier algebra is A itself.
inline MultiplierAlgebra multiplier_algebra(const FinAlgebra& a) {
  if (!a.unit()) return multiplier_algebra_by_solving(a);
  if (!check_nondegenerate(a)) throw StructuralError("nondegenerate", "multiplier algebra needs a non-degenerate algebra");
  MultiplierAlgebra out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.basis.push_back(embed(a, a.basis(i)));
  out.algebra = a;
  return out;
}

}  // namespace weakhopf
