#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weakhopf/algebra.hpp"

namespace weakhopf {

// Δ : A → M(A⊗A), one multiplier of A⊗A per basis element of A.
class Coproduct {
 public:
  Coproduct() = default;
  Coproduct(std::shared_ptr<const FinAlgebra> a, std::vector<Multiplier> delta)
      : a_(std::move(a)), delta_(std::move(delta)) {
    std::size_t d = a_->dim();
    if (delta_.size() != d) throw std::invalid_argument("coproduct needs one multiplier per basis element");
    for (const auto& m : delta_)
      if (m.lambda.rows() != d * d || m.lambda.cols() != d * d || m.rho.rows() != d * d || m.rho.cols() != d * d)
        throw std::invalid_argument("coproduct multiplier has the wrong shape");
    for (std::size_t i = 0; i < d; ++i) {
      left_.push_back(left_mult(*a_, a_->basis(i)));
      right_.push_back(right_mult(*a_, a_->basis(i)));
    }
  }

  // From the elements Δ(e_i) ∈ A⊗A (any A; the multipliers are their embeddings).
  static Coproduct from_elements(std::shared_ptr<const FinAlgebra> a, const std::vector<Vector>& images) {
    TensorPower x(*a, 2);
    std::vector<Multiplier> ms;
    for (const auto& w : images) ms.push_back(embed(x, w));
    return Coproduct(std::move(a), std::move(ms));
  }

  const FinAlgebra& algebra() const { return *a_; }
  const std::shared_ptr<const FinAlgebra>& algebra_ptr() const { return a_; }
  std::size_t dim() const { return a_->dim(); }
  const Multiplier& delta(std::size_t i) const { return delta_[i]; }
  const std::vector<Multiplier>& deltas() const { return delta_; }
  TensorPower square() const { return TensorPower(*a_, 2); }
  TensorPower cube() const { return TensorPower(*a_, 3); }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  const Matrix& right(std::size_t i) const { return right_[i]; }

  Multiplier of(const Vector& a) const {
    std::size_t n = dim() * dim();
    Multiplier m = zero_multiplier(n);
    for (const auto& e : a.entries()) m = m + scaled(delta_[e.index], e.value);
    return m;
  }
  Matrix left_of(const Vector& a) const { return left_mult(*a_, a); }
  Matrix right_of(const Vector& a) const { return right_mult(*a_, a); }

  friend bool operator==(const Coproduct& x, const Coproduct& y) {
    return *x.a_ == *y.a_ && x.delta_ == y.delta_;
  }

 private:
  std::shared_ptr<const FinAlgebra> a_;
  std::vector<Multiplier> delta_;
  std::vector<Matrix> left_, right_;
};

inline Check check_coproduct_multipliers(const Coproduct& D) {
  TensorPower x = D.square();
  for (std::size_t i = 0; i < D.dim(); ++i) {
    Check c = check_multiplier(x, D.delta(i));
    if (!c) return fail("coproduct_multiplier", "Δ(e_i) is not a multiplier of A⊗A: " + c.detail, {i});
  }
  return pass("coproduct_multiplier");
}

// Δ(e_i)Δ(e_j) == Δ(e_i e_j). Assumes each Δ(e_i) is a valid multiplier.
inline Check check_homomorphism(const Coproduct& D) {
  const FinAlgebra& a = D.algebra();
  std::size_t d = a.dim();
  TensorPower x = D.square();
  if (x.unit()) {
    std::vector<Vector> w;
    for (std::size_t i = 0; i < d; ++i) w.push_back(D.delta(i).lambda.apply(*x.unit()));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        VectorBuilder rhs(d * d);
        for (const auto& tmp_e = a.product(i, j); const auto& e : tmp_e.entries()) rhs.add(e.value, w[e.index]);
        if (mul(x, w[i], w[j]) != rhs.finish())
          return fail("coproduct_homomorphism", "Δ(e_i)Δ(e_j) != Δ(e_i e_j)", {i, j});
      }
    return pass("coproduct_homomorphism");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (D.delta(i) * D.delta(j) != D.of(a.product(i, j)))
        return fail("coproduct_homomorphism", "Δ(e_i)Δ(e_j) != Δ(e_i e_j)", {i, j});
  return pass("coproduct_homomorphism");
}

// The four matrices T1(a⊗b) = Δ(a)(1⊗b), T2(c⊗a) = (c⊗1)Δ(a),
// T3(a⊗b) = (1⊗b)Δ(a), T4(c⊗a) = Δ(a)(c⊗1).
struct CanonicalMapSet {
  Matrix T1, T2, T3, T4;
};

namespace detail {

// Element of A⊗A given by a covered product; throws when the product is not covered.
template <class F>
Vector covered2(const TensorPower& x, F&& left_action, std::size_t a, std::size_t b, const char* what) {
  auto w = covered_element(x, std::forward<F>(left_action));
  if (!w) throw StructuralError("regularity", std::string(what) + " does not lie in A⊗A", {a, b});
  return *w;
}

}  // namespace detail

inline CanonicalMapSet canonical_maps(const Coproduct& D) {
  std::size_t d = D.dim();
  std::size_t n = d * d;
  TensorPower x = D.square();
  std::vector<Vector> c1(n), c2(n), c3(n), c4(n);
  if (x.unit()) {
    const Vector& u = *D.algebra().unit();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const Multiplier& m = D.delta(a);
        Vector ub = kron(u, D.algebra().basis(b));
        Vector bu = kron(D.algebra().basis(b), u);
        c1[a * d + b] = m.lambda.apply(ub);
        c3[a * d + b] = m.rho.apply(ub);
        c2[b * d + a] = m.rho.apply(bu);
        c4[b * d + a] = m.lambda.apply(bu);
      }
  } else {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const Multiplier& m = D.delta(a);
        const Matrix& lb = D.left(b);
        c1[a * d + b] = detail::covered2(
            x, [&](const Vector& v) { return m.lambda.apply(apply_on_leg(v, d, 2, 1, lb)); }, a, b, "Δ(a)(1⊗b)");
        c3[a * d + b] = detail::covered2(
            x, [&](const Vector& v) { return apply_on_leg(m.lambda.apply(v), d, 2, 1, lb); }, a, b, "(1⊗b)Δ(a)");
        c2[b * d + a] = detail::covered2(
            x, [&](const Vector& v) { return apply_on_leg(m.lambda.apply(v), d, 2, 0, lb); }, b, a, "(c⊗1)Δ(a)");
        c4[b * d + a] = detail::covered2(
            x, [&](const Vector& v) { return m.lambda.apply(apply_on_leg(v, d, 2, 0, lb)); }, b, a, "Δ(a)(c⊗1)");
      }
  }
  return {Matrix::from_columns(n, std::move(c1)), Matrix::from_columns(n, std::move(c2)),
          Matrix::from_columns(n, std::move(c3)), Matrix::from_columns(n, std::move(c4))};
}

// All four covered products exist in A⊗A. With our finite representation this
// only fails for non-unital A, where it is a genuine condition.
inline Check check_regularity(const Coproduct& D) {
  try {
    canonical_maps(D);
  } catch (const StructuralError& e) {
    return fail("regularity", e.what(), e.witness());
  }
  return pass("regularity");
}

// (c⊗1⊗1)(Δ⊗ι)(Δ(a)(1⊗b)) = (ι⊗Δ)((c⊗1)Δ(a))(1⊗1⊗b) and its mirror
// (Δ⊗ι)((1⊗b)Δ(a))(c⊗1⊗1) = (1⊗1⊗b)(ι⊗Δ)(Δ(a)(c⊗1)).
inline Report check_coassociativity(const Coproduct& D, const CanonicalMapSet& T) {
  std::size_t d = D.dim();
  std::size_t n = d * d;
  std::size_t n3 = n * d;
  Report rep;
  auto run = [&](const Matrix& outer, const Matrix& left_inner, const Matrix& mid, const Matrix& right_inner,
                 const std::string& name, const char* detail) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const Vector& w = outer.column(a * d + b);
        for (std::size_t c = 0; c < d; ++c) {
          // Σ w_kl [left_inner(c⊗e_k)] ⊗ e_l
          VectorBuilder lhs(n3);
          for (const auto& e : w.entries()) {
            std::size_t k = e.index / d, l = e.index % d;
            for (const auto& y : left_inner.column(c * d + k).entries()) lhs.add(y.index * d + l, e.value * y.value);
          }
          // Σ v_kl e_k ⊗ [right_inner(e_l⊗b)], v = mid(c⊗a)
          VectorBuilder rhs(n3);
          for (const auto& e : mid.column(c * d + a).entries()) {
            std::size_t k = e.index / d, l = e.index % d;
            for (const auto& y : right_inner.column(l * d + b).entries()) rhs.add(k * n + y.index, e.value * y.value);
          }
          if (lhs.finish() != rhs.finish()) {
            rep.add(fail(name, detail, {a, b, c}));
            return;
          }
        }
      }
    rep.add(pass(name));
  };
  run(T.T1, T.T2, T.T2, T.T1, "coassociativity", "(c⊗1⊗1)(Δ⊗ι)(Δ(a)(1⊗b)) != (ι⊗Δ)((c⊗1)Δ(a))(1⊗1⊗b)");
  run(T.T3, T.T4, T.T4, T.T3, "coassociativity_opposite", "(Δ⊗ι)((1⊗b)Δ(a))(c⊗1⊗1) != (1⊗1⊗b)(ι⊗Δ)(Δ(a)(c⊗1))");
  return rep;
}

namespace detail {

// Span of one leg of the given family of elements of A⊗A.
inline Echelon leg_span(const Matrix& t, std::size_t d, bool first_leg) {
  Echelon e(d);
  for (std::size_t j = 0; j < t.cols() && e.rank() < d; ++j) {
    std::vector<std::vector<Entry>> slices(d);
    for (const auto& x : t.column(j).entries()) {
      std::size_t k = x.index / d, l = x.index % d;
      if (first_leg)
        slices[l].push_back({k, x.value});
      else
        slices[k].push_back({l, x.value});
    }
    for (auto& s : slices)
      if (!s.empty()) e.insert(Vector::from_entries(d, std::move(s)));
  }
  return e;
}

}  // namespace detail

// Legs of Δ(A) are all of A, tested on every covered form.
inline Check check_fullness(const Coproduct& D, const CanonicalMapSet& T) {
  std::size_t d = D.dim();
  struct Leg {
    const Matrix* t;
    bool first;
    const char* what;
  };
  const Leg legs[] = {{&T.T2, false, "span (ω⊗ι)((a⊗1)Δ(b))"},
                      {&T.T1, true, "span (ι⊗ω)(Δ(b)(1⊗a))"},
                      {&T.T4, false, "span (ω⊗ι)(Δ(b)(a⊗1))"},
                      {&T.T3, true, "span (ι⊗ω)((1⊗a)Δ(b))"}};
  // witness: which covered form, then the first basis element outside the span
  for (std::size_t i = 0; i < 4; ++i) {
    Echelon e = detail::leg_span(*legs[i].t, d, legs[i].first);
    if (e.rank() == d) continue;
    std::size_t missing = 0;
    while (e.contains(Vector::unit(d, missing))) ++missing;
    return fail("fullness", std::string(legs[i].what) + " has dimension " + std::to_string(e.rank()) + " < " + std::to_string(d),
                {i, missing});
  }
  return pass("fullness");
}

struct CanonicalIdempotent {
  Multiplier E;
  Subspace left_range;   // Δ(A)(A⊗A)
  Subspace right_range;  // (A⊗A)Δ(A)
};

namespace detail {

// Projection onto `range` along the common kernel of the given actions.
inline Matrix projection_along_kernel(std::size_t n, const Subspace& range, const std::vector<const Matrix*>& actions,
                                      const char* side) {
  std::vector<Vector> stacked(n);
  std::size_t k = actions.size();
  for (std::size_t z = 0; z < n; ++z) {
    std::vector<Entry> raw;
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& e : actions[i]->column(z).entries()) raw.push_back({i * n + e.index, e.value});
    stacked[z] = Vector::from_entries(k * n, std::move(raw));
  }
  Subspace ker = kernel_basis(Matrix::from_columns(k * n, std::move(stacked)));
  if (ker.dim() + range.dim() != n)
    throw StructuralError("canonical_idempotent", std::string("no canonical idempotent: ") + side +
                                                      " range and annihilator are not complementary");
  Echelon e(n, true, false);
  for (const auto& v : range.basis()) e.insert(v);
  for (const auto& v : ker.basis()) e.insert(v);
  if (e.rank() != n)
    throw StructuralError("canonical_idempotent",
                          std::string("no canonical idempotent: ") + side + " range meets the annihilator");
  std::size_t r = range.dim();
  std::vector<Vector> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector c = *e.express(Vector::unit(n, j));
    VectorBuilder out(n);
    for (const auto& x : c.entries())
      if (x.index < r) out.add(x.value, range.basis()[x.index]);
    cols[j] = out.finish();
  }
  return Matrix::from_columns(n, std::move(cols));
}

}  // namespace detail

// E with λ_E the projection onto Δ(A)(A⊗A) along {z : Δ(a)z = 0 ∀a} and ρ_E
// the projection onto (A⊗A)Δ(A) along {z : zΔ(a) = 0 ∀a}.
inline CanonicalIdempotent find_canonical_idempotent(const Coproduct& D) {
  std::size_t d = D.dim();
  std::size_t n = d * d;
  Echelon l(n), r(n);
  std::vector<const Matrix*> lam, rho;
  for (std::size_t i = 0; i < d; ++i) {
    lam.push_back(&D.delta(i).lambda);
    rho.push_back(&D.delta(i).rho);
    for (std::size_t z = 0; z < n; ++z) {
      if (l.rank() < n) l.insert(D.delta(i).lambda.column(z));
      if (r.rank() < n) r.insert(D.delta(i).rho.column(z));
    }
  }
  CanonicalIdempotent ci;
  ci.left_range = l.subspace();
  ci.right_range = r.subspace();
  ci.E.lambda = detail::projection_along_kernel(n, ci.left_range, lam, "left");
  ci.E.rho = detail::projection_along_kernel(n, ci.right_range, rho, "right");
  TensorPower x = D.square();
  Check m = check_multiplier(x, ci.E);
  if (!m) throw StructuralError("canonical_idempotent", "no canonical idempotent: the two projections are not one multiplier (" + m.detail + ")");
  if (ci.E * ci.E != ci.E) throw StructuralError("canonical_idempotent", "no canonical idempotent: E is not idempotent");
  for (std::size_t i = 0; i < d; ++i)
    if (ci.E * D.delta(i) != D.delta(i) || D.delta(i) * ci.E != D.delta(i))
      throw StructuralError("canonical_idempotent", "no canonical idempotent: EΔ(a) = Δ(a)E = Δ(a) fails", {i});
  return ci;
}

// Every idempotent F with FΔ = ΔF = Δ satisfies FE = EF = E. Tested on the
// supplied competitors plus 1, E and E + P, 1 - P for the elementary
// idempotents P = e_p⊗e_q orthogonal to E.
inline Check check_minimality(const Coproduct& D, const CanonicalIdempotent& ci, std::vector<Multiplier> competitors = {}) {
  std::size_t d = D.dim();
  std::size_t n = d * d;
  const Multiplier& E = ci.E;
  for (std::size_t z = 0; z < n; ++z) {
    if (!ci.left_range.contains(E.lambda.column(z))) return fail("minimality", "Im λ_E leaves Δ(A)(A⊗A)", {z});
    if (!ci.right_range.contains(E.rho.column(z))) return fail("minimality", "Im ρ_E leaves (A⊗A)Δ(A)", {z});
  }
  TensorPower x = D.square();
  std::size_t tested = 0;
  auto fixes_delta = [&](const Multiplier& F) {
    for (std::size_t i = 0; i < d; ++i)
      if (F * D.delta(i) != D.delta(i) || D.delta(i) * F != D.delta(i)) return false;
    return true;
  };
  for (std::size_t k = 0; k < competitors.size(); ++k) {
    const Multiplier& F = competitors[k];
    if (F * F != F || !fixes_delta(F)) continue;
    ++tested;
    if (F * E != E || E * F != E) return fail("minimality", "competing idempotent F with FE != E or EF != E", {k});
  }
  if (!x.unit()) {
    for (const Multiplier& F : {identity_multiplier(n), E}) {
      if (F * F != F || !fixes_delta(F)) continue;
      ++tested;
      if (F * E != E || E * F != E) return fail("minimality", "competing idempotent F with FE != E or EF != E");
    }
    return pass("minimality", std::to_string(tested) + " competing idempotents");
  }

  // Unital: multipliers are elements of A⊗A. A competitor base + s·P expands
  // bilinearly, so only products with the single basis tensor P are new.
  const FinAlgebra& a = D.algebra();
  const Vector& one = *x.unit();
  Vector e = E.lambda.apply(one);
  std::vector<Vector> del(d);
  for (std::size_t i = 0; i < d; ++i) del[i] = D.delta(i).lambda.apply(one);
  auto mul2 = [&](const Vector& u, const Vector& v) {
    VectorBuilder out(n);
    for (const auto& p : u.entries())
      for (const auto& q : v.entries()) {
        const Vector& l = a.product(p.index / d, q.index / d);
        if (l.is_zero()) continue;
        const Vector& r = a.product(p.index % d, q.index % d);
        Scalar c = p.value * q.value;
        for (const auto& y : l.entries())
          for (const auto& z : r.entries()) out.add(y.index * d + z.index, c * y.value * z.value);
      }
    return out.finish();
  };
  struct Base {
    Vector b, bb, be, eb;
    std::vector<Vector> bd, db;
  };
  auto make_base = [&](const Vector& b) {
    Base r{b, mul2(b, b), mul2(b, e), mul2(e, b), {}, {}};
    for (std::size_t i = 0; i < d; ++i) {
      r.bd.push_back(mul2(b, del[i]));
      r.db.push_back(mul2(del[i], b));
    }
    return r;
  };
  const Base bases[] = {make_base(one), make_base(e)};
  // Is base + s·P an idempotent fixing Δ, and if so does it absorb E?
  auto test = [&](const Base& B, const Scalar& s, const Vector& P) -> std::optional<bool> {
    auto sp = [&](const Vector& v) { return v.scaled(s); };
    Vector f = B.b + sp(P);
    Vector ff = B.bb + sp(mul2(B.b, P) + mul2(P, B.b)) + mul2(P, P).scaled(s * s);
    if (ff != f) return std::nullopt;
    for (std::size_t i = 0; i < d; ++i)
      if (B.bd[i] + sp(mul2(P, del[i])) != del[i] || B.db[i] + sp(mul2(del[i], P)) != del[i]) return std::nullopt;
    return B.be + sp(mul2(P, e)) == e && B.eb + sp(mul2(e, P)) == e;
  };
  Vector none(n);
  for (const auto& B : bases) {
    auto r = test(B, Scalar(0), none);
    if (!r) continue;
    ++tested;
    if (!*r) return fail("minimality", "competing idempotent F with FE != E or EF != E");
  }
  std::vector<std::size_t> idem;
  for (std::size_t p = 0; p < d; ++p)
    if (a.product(p, p) == a.basis(p)) idem.push_back(p);
  for (auto p : idem)
    for (auto q : idem) {
      Vector P = Vector::unit(n, p * d + q);
      if (!mul2(P, e).is_zero() || !mul2(e, P).is_zero()) continue;
      for (const auto& [B, s] : {std::pair<const Base*, Scalar>{&bases[1], Scalar(1)}, {&bases[0], Scalar(-1)}}) {
        auto r = test(*B, s, P);
        if (!r) continue;
        ++tested;
        if (!*r) return fail("minimality", "competing idempotent F with FE != E or EF != E", {p, q});
      }
    }
  return pass("minimality", std::to_string(tested) + " competing idempotents");
}

// Extensions of Δ to M(A), and of Δ⊗ι, ι⊗Δ to M(A⊗A), by E-compression.
class DeltaExtension {
 public:
  DeltaExtension(const Coproduct& D, const Multiplier& E) : D_(&D), d_(D.dim()), n_(d_ * d_) {
    Echelon l(n_, true, false), r(n_, true, false);
    std::size_t lr = image_basis(E.lambda).dim(), rr = image_basis(E.rho).dim();
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t z = 0; z < n_; ++z) {
        if (l.rank() < lr)
          l.insert(D.delta(i).lambda.column(z));
        else
          l.insert(Vector(n_));
        if (r.rank() < rr)
          r.insert(D.delta(i).rho.column(z));
        else
          r.insert(Vector(n_));
      }
    left_.resize(n_);
    right_.resize(n_);
    for (std::size_t z = 0; z < n_; ++z) {
      auto lc = l.express(E.lambda.column(z));
      auto rc = r.express(E.rho.column(z));
      if (!lc || !rc) {
        ok_ = false;
        return;
      }
      left_[z] = std::move(*lc);
      right_[z] = std::move(*rc);
    }
    const FinAlgebra& a = D.algebra();
    Echelon f(d_, true, false);
    for (std::size_t p = 0; p < d_; ++p)
      for (std::size_t q = 0; q < d_; ++q) f.insert(f.rank() < d_ ? a.product(p, q) : Vector(d_));
    for (std::size_t c = 0; c < d_; ++c) {
      auto fc = f.express(a.basis(c));
      if (!fc) {
        ok_ = false;
        return;
      }
      factor_.push_back(std::move(*fc));
    }
  }

  bool ok() const { return ok_; }

  // Δ̃(m) for m ∈ M(A)
  std::optional<Multiplier> extend(const Multiplier& m) const {
    if (!ok_) return std::nullopt;
    std::vector<Vector> lc(n_), rc(n_);
    for (std::size_t z = 0; z < n_; ++z) {
      VectorBuilder lb(n_), rb(n_);
      for (const auto& g : left_[z].entries()) {
        std::size_t i = g.index / n_, w = g.index % n_;
        for (const auto& mu : m.lambda.column(i).entries())
          lb.add(g.value * mu.value, D_->delta(mu.index).lambda.column(w));
      }
      for (const auto& g : right_[z].entries()) {
        std::size_t i = g.index / n_, w = g.index % n_;
        for (const auto& mu : m.rho.column(i).entries()) rb.add(g.value * mu.value, D_->delta(mu.index).rho.column(w));
      }
      lc[z] = lb.finish();
      rc[z] = rb.finish();
    }
    return Multiplier{Matrix::from_columns(n_, std::move(lc)), Matrix::from_columns(n_, std::move(rc))};
  }

  // (Δ⊗ι)(m) for m ∈ M(A⊗A)
  std::optional<Multiplier> extend_left(const Multiplier& m) const {
    if (!ok_) return std::nullopt;
    const FinAlgebra& a = D_->algebra();
    std::size_t n3 = n_ * d_;
    std::vector<Vector> lc(n3), rc(n3);
    for (std::size_t ab = 0; ab < n_; ++ab)
      for (std::size_t c = 0; c < d_; ++c) {
        VectorBuilder lb(n3), rb(n3);
        for (const auto& g : left_[ab].entries()) {
          std::size_t i = g.index / n_, w = g.index % n_;
          for (const auto& f : factor_[c].entries()) {
            std::size_t p = f.index / d_, q = f.index % d_;
            Scalar cf = g.value * f.value;
            for (const auto& mu : m.lambda.column(i * d_ + p).entries()) {
              std::size_t r = mu.index / d_, s = mu.index % d_;
              add_kron(lb, cf * mu.value, D_->delta(r).lambda.column(w), a.product(s, q));
            }
          }
        }
        for (const auto& g : right_[ab].entries()) {
          std::size_t i = g.index / n_, w = g.index % n_;
          for (const auto& f : factor_[c].entries()) {
            std::size_t p = f.index / d_, q = f.index % d_;
            Scalar cf = g.value * f.value;
            for (const auto& mu : m.rho.column(i * d_ + q).entries()) {
              std::size_t r = mu.index / d_, s = mu.index % d_;
              add_kron(rb, cf * mu.value, D_->delta(r).rho.column(w), a.product(p, s));
            }
          }
        }
        lc[ab * d_ + c] = lb.finish();
        rc[ab * d_ + c] = rb.finish();
      }
    return Multiplier{Matrix::from_columns(n3, std::move(lc)), Matrix::from_columns(n3, std::move(rc))};
  }

  // (ι⊗Δ)(m) for m ∈ M(A⊗A)
  std::optional<Multiplier> extend_right(const Multiplier& m) const {
    if (!ok_) return std::nullopt;
    const FinAlgebra& a = D_->algebra();
    std::size_t n3 = n_ * d_;
    std::vector<Vector> lc(n3), rc(n3);
    for (std::size_t x = 0; x < d_; ++x)
      for (std::size_t bc = 0; bc < n_; ++bc) {
        VectorBuilder lb(n3), rb(n3);
        for (const auto& g : left_[bc].entries()) {
          std::size_t i = g.index / n_, w = g.index % n_;
          for (const auto& f : factor_[x].entries()) {
            std::size_t p = f.index / d_, q = f.index % d_;
            Scalar cf = g.value * f.value;
            for (const auto& mu : m.lambda.column(p * d_ + i).entries()) {
              std::size_t r = mu.index / d_, s = mu.index % d_;
              add_kron(lb, cf * mu.value, a.product(r, q), D_->delta(s).lambda.column(w));
            }
          }
        }
        for (const auto& g : right_[bc].entries()) {
          std::size_t i = g.index / n_, w = g.index % n_;
          for (const auto& f : factor_[x].entries()) {
            std::size_t p = f.index / d_, q = f.index % d_;
            Scalar cf = g.value * f.value;
            for (const auto& mu : m.rho.column(q * d_ + i).entries()) {
              std::size_t r = mu.index / d_, s = mu.index % d_;
              add_kron(rb, cf * mu.value, a.product(p, r), D_->delta(s).rho.column(w));
            }
          }
        }
        lc[x * n_ + bc] = lb.finish();
        rc[x * n_ + bc] = rb.finish();
      }
    return Multiplier{Matrix::from_columns(n3, std::move(lc)), Matrix::from_columns(n3, std::move(rc))};
  }

 private:
  static void add_kron(VectorBuilder& b, const Scalar& s, const Vector& x, const Vector& y) {
    if (s.is_zero()) return;
    for (const auto& p : x.entries())
      for (const auto& q : y.entries()) b.add(p.index * y.size() + q.index, s * p.value * q.value);
  }

  const Coproduct* D_;
  std::size_t d_, n_;
  bool ok_ = true;
  std::vector<Vector> left_, right_;  // E z and z E over generators g = i*n + w
  std::vector<Vector> factor_;        // e_c over generators e_p e_q, g = p*d + q
};

// (Δ⊗ι)E = (E⊗1)(1⊗E) = (1⊗E)(E⊗1), and (Δ⊗ι)E = (ι⊗Δ)E.
inline Report check_weak_comult_unit(const Coproduct& D, const Multiplier& E) {
  Report rep;
  std::size_t d = D.dim();
  DeltaExtension ext(D, E);
  auto l = ext.extend_left(E);
  auto r = ext.extend_right(E);
  if (!l || !r) {
    rep.add(fail("weak_comultiplicativity", "E-compression decomposition of the extension failed"));
    return rep;
  }
  Multiplier e12 = leg12(E, d), e23 = leg23(E, d);
  Multiplier p1 = e12 * e23, p2 = e23 * e12;
  std::size_t n3 = d * d * d;
  auto first_diff = [&](const Multiplier& x, const Multiplier& y) -> Witness {
    for (std::size_t z = 0; z < n3; ++z)
      if (x.lambda.column(z) != y.lambda.column(z) || x.rho.column(z) != y.rho.column(z)) return {z / (d * d), (z / d) % d, z % d};
    return {};
  };
  if (*l != p1)
    rep.add(fail("weak_comultiplicativity", "(Δ⊗ι)E != (E⊗1)(1⊗E)", first_diff(*l, p1)));
  else if (*l != p2)
    rep.add(fail("weak_comultiplicativity", "(Δ⊗ι)E != (1⊗E)(E⊗1)", first_diff(*l, p2)));
  else
    rep.add(pass("weak_comultiplicativity"));
  if (*l != *r)
    rep.add(fail("weak_comultiplicativity_sides", "(Δ⊗ι)E != (ι⊗Δ)E", first_diff(*l, *r)));
  else
    rep.add(pass("weak_comultiplicativity_sides"));
  return rep;
}

// Counit laws on all basis pairs: (ε⊗ι)(Δ(a)(1⊗b)) = ab, (ι⊗ε)((a⊗1)Δ(b)) = ab,
// and the regular-side forms (ε⊗ι)((1⊗a)Δ(b)) = ab, (ι⊗ε)(Δ(a)(b⊗1)) = ab.
inline Check check_counit(const Coproduct& D, const Functional& eps, const CanonicalMapSet& T) {
  const FinAlgebra& a = D.algebra();
  std::size_t d = a.dim();
  if (eps.dim() != d) return fail("counit", "counit has the wrong length");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vector& ij = a.product(i, j);
      if (slice_first(T.T1.column(i * d + j), d, eps.coeffs) != ij)
        return fail("counit", "(ε⊗ι)(Δ(a)(1⊗b)) != ab", {i, j});
      if (slice_second(T.T2.column(i * d + j), d, eps.coeffs) != ij)
        return fail("counit", "(ι⊗ε)((a⊗1)Δ(b)) != ab", {i, j});
      if (slice_first(T.T3.column(j * d + i), d, eps.coeffs) != ij)
        return fail("counit", "(ε⊗ι)((1⊗a)Δ(b)) != ab", {i, j});
      if (slice_second(T.T4.column(j * d + i), d, eps.coeffs) != ij)
        return fail("counit", "(ι⊗ε)(Δ(a)(b⊗1)) != ab", {i, j});
    }
  return pass("counit");
}

inline Check check_counit(const Coproduct& D, const Functional& eps) { return check_counit(D, eps, canonical_maps(D)); }

// ε(abc) = (ε⊗ε)((a⊗1)Δ(b)(1⊗c)) = (ε⊗ε)((1⊗a)Δ(b)(c⊗1)) on all basis triples.
inline Check check_weak_mult_counit(const Coproduct& D, const Functional& eps, const CanonicalMapSet& T) {
  const FinAlgebra& a = D.algebra();
  std::size_t d = a.dim();
  if (eps.dim() != d) return fail("weak_multiplicativity", "counit has the wrong length");
  std::vector<Scalar> ep(d * d);  // ε(e_l e_c)
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t c = 0; c < d; ++c) ep[l * d + c] = eps(a.product(l, c));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vector& w2 = T.T2.column(i * d + j);  // (a⊗1)Δ(b)
      const Vector& w3 = T.T3.column(j * d + i);  // (1⊗a)Δ(b)
      for (std::size_t c = 0; c < d; ++c) {
        Scalar lhs;
        for (const auto& tmp_e = a.product(i, j); const auto& e : tmp_e.entries()) lhs += e.value * ep[e.index * d + c];
        Scalar r1, r2;
        for (const auto& e : w2.entries()) r1 += e.value * eps.coeffs[e.index / d] * ep[(e.index % d) * d + c];
        for (const auto& e : w3.entries()) r2 += e.value * ep[(e.index / d) * d + c] * eps.coeffs[e.index % d];
        if (lhs != r1) return fail("weak_multiplicativity", "ε(abc) != (ε⊗ε)((a⊗1)Δ(b)(1⊗c))", {i, j, c});
        if (lhs != r2) return fail("weak_multiplicativity", "ε(abc) != (ε⊗ε)((1⊗a)Δ(b)(c⊗1))", {i, j, c});
      }
    }
  return pass("weak_multiplicativity");
}

struct CounitalMaps {
  std::vector<Multiplier> eps_s, eps_s_prime, eps_t, eps_t_prime;
  Report report;
};

// ε_s(a) = (ι⊗ε)((1⊗a)E), ε_s'(a) = (ι⊗ε)(E(1⊗a)), ε_t(a) = (ε⊗ι)(E(a⊗1)),
// ε_t'(a) = (ε⊗ι)((a⊗1)E), each as a multiplier of A.
inline CounitalMaps counital_maps(const Coproduct& D, const Multiplier& E, const Functional& eps) {
  const FinAlgebra& a = D.algebra();
  std::size_t d = a.dim();
  TensorPower x = D.square();
  const auto& f = eps.coeffs;
  auto on = [&](std::size_t leg, std::size_t k) { return [&, leg, k](const Vector& v) { return apply_on_leg(v, d, 2, leg, D.left(k)); }; };
  auto cov = [&](auto&& act) {
    auto w = covered_element(x, act);
    if (!w) throw StructuralError("counital_maps", "covered product is not in A⊗A");
    return *w;
  };
  CounitalMaps out;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Vector> sl(d), sr(d), spl(d), spr(d), tl(d), tr(d), tpl(d), tpr(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t ij = i * d + j, ji = j * d + i;
      // ε_s(a)x = (ι⊗ε)((1⊗a)E(x⊗1)), xε_s(a) = (ι⊗ε)((x⊗a)E)
      sl[j] = slice_second(cov([&](const Vector& v) { return on(1, i)(E.lambda.apply(on(0, j)(v))); }), d, f);
      sr[j] = slice_second(E.rho.column(ji), d, f);
      // ε_s'(a)x = (ι⊗ε)(E(x⊗a)), xε_s'(a) = (ι⊗ε)((x⊗1)E(1⊗a))
      spl[j] = slice_second(E.lambda.column(ji), d, f);
      spr[j] = slice_second(cov([&](const Vector& v) { return on(0, j)(E.lambda.apply(on(1, i)(v))); }), d, f);
      // ε_t(a)x = (ε⊗ι)(E(a⊗x)), xε_t(a) = (ε⊗ι)((1⊗x)E(a⊗1))
      tl[j] = slice_first(E.lambda.column(ij), d, f);
      tr[j] = slice_first(cov([&](const Vector& v) { return on(1, j)(E.lambda.apply(on(0, i)(v))); }), d, f);
      // ε_t'(a)x = (ε⊗ι)((a⊗1)E(1⊗x)), xε_t'(a) = (ε⊗ι)((a⊗x)E)
      tpl[j] = slice_first(cov([&](const Vector& v) { return on(0, i)(E.lambda.apply(on(1, j)(v))); }), d, f);
      tpr[j] = slice_first(E.rho.column(ij), d, f);
    }
    auto mk = [d](std::vector<Vector>& l, std::vector<Vector>& r) {
      return Multiplier{Matrix::from_columns(d, std::move(l)), Matrix::from_columns(d, std::move(r))};
    };
    out.eps_s.push_back(mk(sl, sr));
    out.eps_s_prime.push_back(mk(spl, spr));
    out.eps_t.push_back(mk(tl, tr));
    out.eps_t_prime.push_back(mk(tpl, tpr));
  }
  auto valid = [&](const std::vector<Multiplier>& ms, const char* name) {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      Check c = check_multiplier(a, ms[i]);
      if (!c) return fail(name, "not a multiplier of A: " + c.detail, {i});
    }
    return pass(name);
  };
  out.report.add(valid(out.eps_s, "counital_map_s"));
  out.report.add(valid(out.eps_s_prime, "counital_map_s_prime"));
  out.report.add(valid(out.eps_t, "counital_map_t"));
  out.report.add(valid(out.eps_t_prime, "counital_map_t_prime"));
  auto span = [d](const std::vector<Multiplier>& ms) {
    std::vector<Vector> v;
    for (const auto& m : ms) v.push_back(flatten(m));
    return span_of(2 * d * d, v);
  };
  Subspace s = span(out.eps_s), sp = span(out.eps_s_prime), t = span(out.eps_t), tp = span(out.eps_t_prime);
  out.report.add(s == sp ? pass("source_ranges_coincide", "dim " + std::to_string(s.dim()))
                         : fail("source_ranges_coincide", "ranges of ε_s and ε_s' differ"));
  out.report.add(t == tp ? pass("target_ranges_coincide", "dim " + std::to_string(t.dim()))
                         : fail("target_ranges_coincide", "ranges of ε_t and ε_t' differ"));
  return out;
}

inline bool is_hopf_case(const Coproduct& D, const Multiplier& E) {
  return E == identity_multiplier(D.dim() * D.dim());
}

}  // namespace weakhopf
