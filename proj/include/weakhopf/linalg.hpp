#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weakhopf/scalar.hpp"

namespace weakhopf {

struct Entry {
  std::size_t index;
  Scalar value;
};

// Sparse coordinate vector; entries sorted by index, no explicit zeros.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : size_(n) {}

  static Vector unit(std::size_t n, std::size_t i, Scalar v = 1) {
    Vector r(n);
    if (!v.is_zero()) r.entries_.push_back({i, std::move(v)});
    return r;
  }
  static Vector from_dense(const std::vector<Scalar>& d) {
    Vector r(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!d[i].is_zero()) r.entries_.push_back({i, d[i]});
    return r;
  }
  // Entries may be unsorted and repeated; repeated indices are summed.
  static Vector from_entries(std::size_t n, std::vector<Entry> raw) {
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    Vector r(n);
    r.entries_.reserve(raw.size());
    for (auto& e : raw) {
      if (!r.entries_.empty() && r.entries_.back().index == e.index) {
        r.entries_.back().value += e.value;
        if (r.entries_.back().value.is_zero()) r.entries_.pop_back();
      } else if (!e.value.is_zero()) {
        r.entries_.push_back(std::move(e));
      }
    }
    return r;
  }

  std::size_t size() const { return size_; }
  void resize(std::size_t n) { size_ = n; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  std::size_t leading() const { return entries_.front().index; }

  Scalar at(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.index < k; });
    if (it != entries_.end() && it->index == i) return it->value;
    return Scalar();
  }

  std::vector<Scalar> dense() const {
    std::vector<Scalar> d(size_);
    for (const auto& e : entries_) d[e.index] = e.value;
    return d;
  }

  Vector scaled(const Scalar& a) const {
    if (a.is_zero()) return Vector(size_);
    if (a.is_one()) return *this;
    Vector r(size_);
    r.entries_.reserve(entries_.size());
    for (const auto& e : entries_) r.entries_.push_back({e.index, e.value * a});
    return r;
  }

  // this += a * x
  void axpy(const Scalar& a, const Vector& x) {
    if (a.is_zero() || x.entries_.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + x.entries_.size());
    auto i = entries_.begin();
    auto j = x.entries_.begin();
    while (i != entries_.end() || j != x.entries_.end()) {
      if (j == x.entries_.end() || (i != entries_.end() && i->index < j->index)) {
        out.push_back(std::move(*i++));
      } else if (i == entries_.end() || j->index < i->index) {
        out.push_back({j->index, a * j->value});
        ++j;
      } else {
        Scalar v = i->value + a * j->value;
        if (!v.is_zero()) out.push_back({i->index, std::move(v)});
        ++i;
        ++j;
      }
    }
    entries_ = std::move(out);
  }

  friend Vector operator+(Vector a, const Vector& b) {
    a.axpy(1, b);
    return a;
  }
  friend Vector operator-(Vector a, const Vector& b) {
    a.axpy(-1, b);
    return a;
  }
  friend bool operator==(const Vector& a, const Vector& b) {
    if (a.size_ != b.size_ || a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      if (a.entries_[k].index != b.entries_[k].index || a.entries_[k].value != b.entries_[k].value)
        return false;
    return true;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Entry> entries_;
};

// Accumulates scaled contributions, then sorts and merges once.
class VectorBuilder {
 public:
  explicit VectorBuilder(std::size_t n) : size_(n) {}
  void add(std::size_t i, Scalar v) {
    if (!v.is_zero()) raw_.push_back({i, std::move(v)});
  }
  void add(const Scalar& a, const Vector& x) {
    if (a.is_zero()) return;
    for (const auto& e : x.entries()) raw_.push_back({e.index, a.is_one() ? e.value : a * e.value});
  }
  Vector finish() { return Vector::from_entries(size_, std::move(raw_)); }

 private:
  std::size_t size_;
  std::vector<Entry> raw_;
};

inline Scalar dot(const std::vector<Scalar>& f, const Vector& v) {
  Scalar s;
  for (const auto& e : v.entries()) s += f[e.index] * e.value;
  return s;
}

// Column-major sparse matrix; the API is that of a dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols, Vector(rows)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i] = Vector::unit(n, i);
    return m;
  }
  static Matrix from_columns(std::size_t rows, std::vector<Vector> cols) {
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols.size();
    for (auto& c : cols)
      if (c.size() != rows) throw std::invalid_argument("column length mismatch");
    m.data_ = std::move(cols);
    return m;
  }
  static Matrix from_dense(const std::vector<std::vector<Scalar>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Matrix m(r, c);
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Entry> raw;
      for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
        if (!rows[i][j].is_zero()) raw.push_back({i, rows[i][j]});
      }
      m.data_[j] = Vector::from_entries(r, std::move(raw));
    }
    return m;
  }
  // Triplets (row, col, value); repeated positions are summed.
  static Matrix from_triplets(std::size_t rows, std::size_t cols,
                              const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& t) {
    std::vector<std::vector<Entry>> raw(cols);
    for (const auto& [i, j, v] : t) {
      if (i >= rows || j >= cols) throw std::out_of_range("matrix entry out of range");
      raw[j].push_back({i, v});
    }
    Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) m.data_[j] = Vector::from_entries(rows, std::move(raw[j]));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Vector& column(std::size_t j) const { return data_[j]; }
  void set_column(std::size_t j, Vector v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    data_[j] = std::move(v);
  }
  Scalar at(std::size_t i, std::size_t j) const { return data_[j].at(i); }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : data_) n += c.nnz();
    return n;
  }
  bool is_zero() const {
    for (const auto& c : data_)
      if (!c.is_zero()) return false;
    return true;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    if (x.nnz() == 1 && x.entries()[0].value.is_one()) return data_[x.entries()[0].index];
    VectorBuilder b(rows_);
    for (const auto& e : x.entries()) b.add(e.value, data_[e.index]);
    return b.finish();
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("compose: dimension mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) m.data_[j] = a.apply(b.data_[j]);
    return m;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m = a;
    for (std::size_t j = 0; j < a.cols_; ++j) m.data_[j].axpy(1, b.data_[j]);
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m = a;
    for (std::size_t j = 0; j < a.cols_; ++j) m.data_[j].axpy(-1, b.data_[j]);
    return m;
  }
  Matrix scaled(const Scalar& s) const {
    Matrix m(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) m.data_[j] = data_[j].scaled(s);
    return m;
  }
  Matrix transpose() const {
    std::vector<std::vector<Entry>> raw(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : data_[j].entries()) raw[e.index].push_back({j, e.value});
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) m.data_[i] = Vector::from_entries(cols_, std::move(raw[i]));
    return m;
  }
  std::vector<std::vector<Scalar>> dense() const {
    std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols_));
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : data_[j].entries()) d[e.index][j] = e.value;
    return d;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Vector> data_;
};

// Canonical reduced echelon basis: leading coefficient 1, zero above and
// below every pivot, rows sorted by pivot.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  Subspace(std::size_t ambient, std::vector<Vector> rref_rows) : ambient_(ambient), rows_(std::move(rref_rows)) {
    std::sort(rows_.begin(), rows_.end(), [](const Vector& a, const Vector& b) { return a.leading() < b.leading(); });
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& basis() const { return rows_; }

  // Coordinates of v in the echelon basis; nullopt when v lies outside.
  std::optional<std::vector<Scalar>> coordinates(const Vector& v) const {
    std::vector<Scalar> c(rows_.size());
    Vector r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      c[k] = v.at(rows_[k].leading());
      r.axpy(-c[k], rows_[k]);
    }
    if (!r.is_zero()) return std::nullopt;
    return c;
  }
  bool contains(const Vector& v) const { return coordinates(v).has_value(); }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.ambient_ == b.ambient_ && a.rows_ == b.rows_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
};

// Incremental reduced row echelon form. With tracking, every row also carries
// its expression as a combination of the inserted generators, and every
// generator that reduced to zero leaves a relation behind.
class Echelon {
 public:
  explicit Echelon(std::size_t dim, bool track = false, bool keep_relations = true)
      : dim_(dim), track_(track), keep_relations_(keep_relations) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t generators() const { return generators_; }
  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<Vector>& relations() const { return relations_; }

  bool contains(const Vector& v) const { return reduce(v, nullptr).is_zero(); }

  // Returns true when v enlarges the span.
  bool insert(const Vector& v) {
    if (v.size() != dim_) throw std::invalid_argument("echelon: dimension mismatch");
    std::size_t gen = generators_++;
    Vector combo;
    Vector r = reduce(v, track_ ? &combo : nullptr);
    if (track_) combo.axpy(1, Vector::unit(0, gen));
    if (r.is_zero()) {
      if (track_ && keep_relations_) relations_.push_back(std::move(combo));
      return false;
    }
    std::size_t q = r.leading();
    Scalar inv = r.entries()[0].value.inverse();
    r = r.scaled(inv);
    if (track_) combo = combo.scaled(inv);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Scalar c = rows_[k].at(q);
      if (c.is_zero()) continue;
      rows_[k].axpy(-c, r);
      if (track_) combos_[k].axpy(-c, combo);
    }
    pivot_row_.emplace(q, rows_.size());
    rows_.push_back(std::move(r));
    if (track_) combos_.push_back(std::move(combo));
    return true;
  }

  // Combination of generators equal to v, if v is in the span (tracking only).
  std::optional<Vector> express(const Vector& v) const {
    if (!track_) throw std::logic_error("echelon: express needs tracking");
    Vector combo;
    Vector r = reduce(v, &combo);
    if (!r.is_zero()) return std::nullopt;
    Vector out = combo.scaled(-1);
    out.resize(generators_);
    return out;
  }

  Subspace subspace() const { return Subspace(dim_, rows_); }

  // Expression of row k through the generators (tracking only).
  Vector row_combination(std::size_t k) const {
    Vector c = combos_.at(k);
    c.resize(generators_);
    return c;
  }
  std::size_t pivot(std::size_t k) const { return rows_[k].leading(); }

  // Reduces v; if combo is given it receives -(sum of coef * row combos).
  Vector reduce(const Vector& v, Vector* combo) const {
    VectorBuilder b(dim_);
    b.add(1, v);
    VectorBuilder cb(0);
    bool any = false;
    for (const auto& e : v.entries()) {
      auto it = pivot_row_.find(e.index);
      if (it == pivot_row_.end()) continue;
      any = true;
      b.add(-e.value, rows_[it->second]);
      if (combo) cb.add(-e.value, combos_[it->second]);
    }
    if (combo) *combo = cb.finish();
    if (!any) return v;
    return b.finish();
  }

 private:
  std::size_t dim_;
  bool track_;
  bool keep_relations_;
  std::size_t generators_ = 0;
  std::vector<Vector> rows_;
  std::vector<Vector> combos_;
  std::vector<Vector> relations_;
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

inline Subspace span_of(std::size_t ambient, const std::vector<Vector>& vs) {
  Echelon e(ambient);
  for (const auto& v : vs) e.insert(v);
  return e.subspace();
}

inline Subspace image_basis(const Matrix& a) {
  Echelon e(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) e.insert(a.column(j));
  return e.subspace();
}

inline Subspace kernel_basis(const Matrix& a) {
  Echelon e(a.rows(), true);
  for (std::size_t j = 0; j < a.cols(); ++j) e.insert(a.column(j));
  std::vector<Vector> rel;
  for (auto r : e.relations()) {
    r.resize(a.cols());
    rel.push_back(std::move(r));
  }
  return span_of(a.cols(), rel);
}

inline std::size_t rank(const Matrix& a) { return image_basis(a).dim(); }

inline bool subspace_equal(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("subspace_equal: ambient mismatch");
  return u == v;
}

struct SolveResult {
  std::optional<Vector> solution;
  Subspace kernel;
};

inline SolveResult solve_linear(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_linear: rows != len(b)");
  Echelon e(a.rows(), true);
  for (std::size_t j = 0; j < a.cols(); ++j) e.insert(a.column(j));
  SolveResult res;
  auto x = e.express(b);
  if (x) {
    x->resize(a.cols());
    res.solution = std::move(*x);
  }
  std::vector<Vector> rel;
  for (auto r : e.relations()) {
    r.resize(a.cols());
    rel.push_back(std::move(r));
  }
  res.kernel = span_of(a.cols(), rel);
  return res;
}

// Inverse of a square matrix, nullopt if singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  std::size_t n = a.rows();
  Echelon e(n, true);
  for (std::size_t j = 0; j < n; ++j) e.insert(a.column(j));
  if (e.rank() != n) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = e.express(Vector::unit(n, i));
    x->resize(n);
    inv.set_column(i, std::move(*x));
  }
  return inv;
}

// R with R T = P and T R = Q, where Q projects onto Im T. Without Q the
// complement of Im T is spanned by the unit vectors off the echelon pivots.
inline Matrix restricted_inverse(const Matrix& t, const Subspace& k, const Matrix& p,
                                 const std::optional<Matrix>& q = std::nullopt) {
  std::size_t n = t.cols();
  std::size_t m = t.rows();
  if (p.rows() != n || p.cols() != n) throw std::invalid_argument("restricted_inverse: P shape");
  if (k.ambient_dim() != n) throw std::invalid_argument("restricted_inverse: K ambient");
  if (p * p != p) throw std::invalid_argument("restricted_inverse: P is not idempotent");
  if (t * p != t) throw std::invalid_argument("restricted_inverse: T P != T");
  Subspace imp = image_basis(p);
  Echelon both(n);
  for (const auto& v : imp.basis()) both.insert(v);
  for (const auto& v : k.basis()) both.insert(v);
  if (both.rank() != n || imp.dim() + k.dim() != n)
    throw std::invalid_argument("restricted_inverse: image of P is not a complement of K");

  Echelon e(m, true);
  for (std::size_t j = 0; j < n; ++j) e.insert(t.column(j));
  if (e.rank() + k.dim() != n) throw std::invalid_argument("restricted_inverse: K is not the kernel of T");
  Matrix r(n, m);
  for (std::size_t row = 0; row < e.rank(); ++row)
    r.set_column(e.pivot(row), p.apply([&] {
      Vector c = e.row_combination(row);
      c.resize(n);
      return c;
    }()));
  if (!q) return r;
  if (q->rows() != m || q->cols() != m) throw std::invalid_argument("restricted_inverse: Q shape");
  if (*q * *q != *q || image_basis(*q) != e.subspace())
    throw std::invalid_argument("restricted_inverse: Q is not a projection onto Im T");
  return r * *q;
}

// Finds the linear map M with M p_k = s_k for a whole family, or the
// combination of family members exhibiting an inconsistency.
struct FamilySolve {
  std::optional<Matrix> map;
  std::optional<Vector> inconsistency;  // combination over family indices
  std::size_t input_rank = 0;
};

inline FamilySolve solve_map_from_family(std::size_t in_dim, std::size_t out_dim, const std::vector<Vector>& inputs,
                                         const std::vector<Vector>& outputs) {
  if (inputs.size() != outputs.size()) throw std::invalid_argument("family size mismatch");
  Echelon e(in_dim + out_dim, true);
  FamilySolve res;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    VectorBuilder b(in_dim + out_dim);
    for (const auto& x : inputs[k].entries()) b.add(x.index, x.value);
    for (const auto& x : outputs[k].entries()) b.add(in_dim + x.index, x.value);
    Vector aug = b.finish();
    Vector combo;
    Vector r = e.reduce(aug, &combo);
    if (!r.is_zero() && r.leading() >= in_dim) {
      combo.axpy(1, Vector::unit(0, k));
      combo.resize(inputs.size());
      res.inconsistency = std::move(combo);
      return res;
    }
    e.insert(aug);
  }
  std::size_t in_rank = 0;
  for (const auto& row : e.rows())
    if (row.leading() < in_dim) ++in_rank;
  res.input_rank = in_rank;
  if (in_rank != in_dim) return res;
  Matrix m(out_dim, in_dim);
  for (const auto& row : e.rows()) {
    std::vector<Entry> raw;
    for (const auto& x : row.entries())
      if (x.index >= in_dim) raw.push_back({x.index - in_dim, x.value});
    m.set_column(row.leading(), Vector::from_entries(out_dim, std::move(raw)));
  }
  res.map = std::move(m);
  return res;
}

}  // namespace weakhopf
