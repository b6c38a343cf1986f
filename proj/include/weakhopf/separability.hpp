#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weakhopf/coproduct.hpp"

namespace weakhopf {

// Tensor product of distinct algebras, basis row-major over the legs.
class MixedTensor {
 public:
  explicit MixedTensor(std::vector<const FinAlgebra*> legs) : legs_(std::move(legs)) {
    dim_ = 1;
    bool unital = true;
    for (auto* l : legs_) {
      dim_ *= l->dim();
      unital = unital && l->unit().has_value();
    }
    if (unital) {
      Vector u = *legs_[0]->unit();
      for (std::size_t k = 1; k < legs_.size(); ++k) u = kron(u, *legs_[k]->unit());
      unit_ = u;
    }
  }
  std::size_t dim() const { return dim_; }
  const std::optional<Vector>& unit() const { return unit_; }
  Vector product(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> a(legs_.size()), b(legs_.size());
    for (std::size_t k = legs_.size(); k-- > 0;) {
      a[k] = i % legs_[k]->dim();
      i /= legs_[k]->dim();
      b[k] = j % legs_[k]->dim();
      j /= legs_[k]->dim();
    }
    Vector r = legs_[0]->product(a[0], b[0]);
    for (std::size_t k = 1; k < legs_.size(); ++k) {
      if (r.is_zero()) return Vector(dim_);
      r = kron(r, legs_[k]->product(a[k], b[k]));
    }
    r.resize(dim_);
    return r;
  }

 private:
  std::vector<const FinAlgebra*> legs_;
  std::size_t dim_;
  std::optional<Vector> unit_;
};

// Coefficient matrix (rows × cols) as an element of X⊗Y, index r*cols + c.
inline Vector as_tensor(const Matrix& coef) {
  std::vector<Entry> raw;
  for (std::size_t c = 0; c < coef.cols(); ++c)
    for (const auto& e : coef.column(c).entries()) raw.push_back({e.index * coef.cols() + c, e.value});
  return Vector::from_entries(coef.rows() * coef.cols(), std::move(raw));
}
inline Matrix from_tensor(const Vector& v, std::size_t rows, std::size_t cols) {
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t;
  for (const auto& e : v.entries()) t.emplace_back(e.index / cols, e.index % cols, e.value);
  return Matrix::from_triplets(rows, cols, t);
}

// Coordinates of multipliers against a fixed linearly independent family.
class MultiplierBasis {
 public:
  MultiplierBasis() = default;
  explicit MultiplierBasis(std::vector<Multiplier> basis) : basis_(std::move(basis)) {
    std::size_t n = basis_.empty() ? 0 : basis_[0].dim();
    echelon_ = Echelon(2 * n * n, true, false);
    for (const auto& b : basis_)
      if (!echelon_.insert(flatten(b))) throw std::invalid_argument("multiplier family is linearly dependent");
  }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Multiplier>& elements() const { return basis_; }
  const Multiplier& operator[](std::size_t k) const { return basis_[k]; }
  std::optional<Vector> coordinates(const Multiplier& m) const {
    auto c = echelon_.express(flatten(m));
    if (c) c->resize(basis_.size());
    return c;
  }
  Multiplier combine(const Vector& c) const {
    std::size_t n = basis_[0].dim();
    Multiplier m = zero_multiplier(n);
    for (const auto& e : c.entries()) m = m + scaled(basis_[e.index], e.value);
    return m;
  }

 private:
  std::vector<Multiplier> basis_;
  Echelon echelon_{0};
};

struct Legs {
  std::vector<Multiplier> B, C;  // bases of the left and right legs of E inside M(A)
  Report report;
};

// Left leg from slices (ι⊗ω)(E(1⊗a)), right leg from (ω⊗ι)(E(a⊗1)); the
// mirrored slices (ι⊗ω)((1⊗a)E), (ω⊗ι)((a⊗1)E) must span the same spaces.
inline Legs extract_legs(const FinAlgebra& a, const Multiplier& E) {
  std::size_t d = a.dim();
  TensorPower x(a, 2);
  std::vector<Matrix> L;
  for (std::size_t k = 0; k < d; ++k) L.push_back(left_mult(a, a.basis(k)));
  auto on = [&](std::size_t leg, std::size_t k, const Vector& v) { return apply_on_leg(v, d, 2, leg, L[k]); };
  auto cov = [&](auto&& act) {
    auto w = covered_element(x, act);
    if (!w) throw StructuralError("separability", "slice of E is not covered");
    return *w;
  };
  // Distributes the elements w_y (indexed by y) into d multipliers by slicing
  // the given leg with each coordinate functional.
  auto slices = [&](const std::vector<Vector>& lam, const std::vector<Vector>& rho, bool first_leg,
                    std::vector<Vector>& out) {
    std::vector<std::vector<Entry>> raw(d);
    auto put = [&](const std::vector<Vector>& ws, std::size_t offset) {
      for (std::size_t y = 0; y < d; ++y)
        for (const auto& e : ws[y].entries()) {
          std::size_t k = e.index / d, l = e.index % d;
          std::size_t slot = first_leg ? k : l, keep = first_leg ? l : k;
          raw[slot].push_back({offset + y * d + keep, e.value});
        }
    };
    put(lam, 0);
    put(rho, d * d);
    for (auto& r : raw) out.push_back(Vector::from_entries(2 * d * d, std::move(r)));
  };
  std::vector<Vector> b1, b2, c1, c2;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Vector> l(d), r(d);
    for (std::size_t y = 0; y < d; ++y) {
      l[y] = E.lambda.column(y * d + i);
      r[y] = cov([&](const Vector& v) { return on(0, y, E.lambda.apply(on(1, i, v))); });
    }
    slices(l, r, false, b1);
    for (std::size_t y = 0; y < d; ++y) {
      l[y] = cov([&](const Vector& v) { return on(1, i, E.lambda.apply(on(0, y, v))); });
      r[y] = E.rho.column(y * d + i);
    }
    slices(l, r, false, b2);
    for (std::size_t y = 0; y < d; ++y) {
      l[y] = E.lambda.column(i * d + y);
      r[y] = cov([&](const Vector& v) { return on(1, y, E.lambda.apply(on(0, i, v))); });
    }
    slices(l, r, true, c1);
    for (std::size_t y = 0; y < d; ++y) {
      l[y] = cov([&](const Vector& v) { return on(0, i, E.lambda.apply(on(1, y, v))); });
      r[y] = E.rho.column(i * d + y);
    }
    slices(l, r, true, c2);
  }
  Subspace sb1 = span_of(2 * d * d, b1), sb2 = span_of(2 * d * d, b2);
  Subspace sc1 = span_of(2 * d * d, c1), sc2 = span_of(2 * d * d, c2);
  Legs legs;
  for (const auto& v : sb1.basis()) legs.B.push_back(unflatten(d, v));
  for (const auto& v : sc1.basis()) legs.C.push_back(unflatten(d, v));
  legs.report.add(sb1 == sb2 ? pass("left_leg_sides", "dim " + std::to_string(sb1.dim()))
                             : fail("left_leg_sides", "left legs of E(1⊗A) and (1⊗A)E differ"));
  legs.report.add(sc1 == sc2 ? pass("right_leg_sides", "dim " + std::to_string(sc1.dim()))
                             : fail("right_leg_sides", "right legs of E(A⊗1) and (A⊗1)E differ"));
  for (std::size_t k = 0; k < legs.B.size(); ++k) {
    Check c = check_multiplier(a, legs.B[k]);
    if (!c) legs.report.add(fail("left_leg_multipliers", c.detail, {k}));
  }
  for (std::size_t k = 0; k < legs.C.size(); ++k) {
    Check c = check_multiplier(a, legs.C[k]);
    if (!c) legs.report.add(fail("right_leg_multipliers", c.detail, {k}));
  }
  return legs;
}

// E ∈ B⊗C in coordinates: B, C abstract algebras, E a |B|×|C| coefficient matrix.
struct SeparabilityData {
  FinAlgebra B, C;
  Matrix E;
};

inline std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(stem + std::to_string(k));
  return v;
}

// Structure constants of B and C from products in M(A), and E's coefficients.
inline SeparabilityData abstract_separability(const Legs& legs, const Multiplier& E) {
  SeparabilityData s;
  s.B = algebra_of_multipliers(legs.B, numbered("b", legs.B.size()));
  s.C = algebra_of_multipliers(legs.C, numbered("c", legs.C.size()));
  std::size_t nb = legs.B.size(), nc = legs.C.size();
  std::size_t n = E.dim();
  Echelon e(2 * n * n, true, false);
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t l = 0; l < nc; ++l) e.insert(flatten(tensor(legs.B[k], legs.C[l])));
  auto c = e.express(flatten(E));
  if (!c) throw StructuralError("separability", "E does not lie in B⊗C");
  c->resize(nb * nc);
  s.E = from_tensor(*c, nb, nc);
  return s;
}

namespace detail {

inline const Vector& unit_of(const FinAlgebra& a, const char* which) {
  if (!a.unit()) throw StructuralError("separability", std::string(which) + " has no unit");
  return *a.unit();
}

// x ↦ E(x⊗1) etc. as matrices into B⊗C
inline Matrix side_map(const SeparabilityData& s, bool on_b, bool e_left) {
  MixedTensor bc({&s.B, &s.C});
  Vector e = as_tensor(s.E);
  const FinAlgebra& alg = on_b ? s.B : s.C;
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    Vector x = on_b ? kron(alg.basis(i), unit_of(s.C, "C")) : kron(unit_of(s.B, "B"), alg.basis(i));
    cols.push_back(e_left ? mul(bc, e, x) : mul(bc, x, e));
  }
  return Matrix::from_columns(bc.dim(), std::move(cols));
}

}  // namespace detail

// Regular separability, finite-dimensional: E idempotent and full in B⊗C, with
// E(B⊗1) = E(1⊗C) and (B⊗1)E = (1⊗C)E.
inline Check check_regular_separability(const SeparabilityData& s) {
  std::size_t nb = s.B.dim(), nc = s.C.dim();
  if (s.E.rows() != nb || s.E.cols() != nc) return fail("regular_separability", "E has the wrong shape");
  if (!s.B.unit() || !s.C.unit()) return fail("regular_separability", "B or C has no unit");
  MixedTensor bc({&s.B, &s.C});
  Vector e = as_tensor(s.E);
  if (mul(bc, e, e) != e) return fail("regular_separability", "E is not idempotent");
  std::size_t r = rank(s.E);
  if (r != nb || r != nc)
    return fail("regular_separability", "E is not full: coefficient rank " + std::to_string(r) + ", |B| = " +
                                            std::to_string(nb) + ", |C| = " + std::to_string(nc));
  if (image_basis(detail::side_map(s, true, true)) != image_basis(detail::side_map(s, false, true)))
    return fail("regular_separability", "E(B⊗1) != E(1⊗C)");
  if (image_basis(detail::side_map(s, true, false)) != image_basis(detail::side_map(s, false, false)))
    return fail("regular_separability", "(B⊗1)E != (1⊗C)E");
  return pass("regular_separability");
}

struct AntipodalMaps {
  Matrix SB;  // B → C, |C|×|B|
  Matrix SC;  // C → B, |B|×|C|
  Report report;
};

namespace detail {

inline Matrix solve_columns(const Matrix& a, const Matrix& rhs, const char* what) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto r = solve_linear(a, rhs.column(j));
    if (!r.solution) throw StructuralError("separability", std::string("not separability: ") + what + " has no solution", {j});
    if (r.kernel.dim() != 0) throw StructuralError("separability", std::string("not separability: ") + what + " is not unique", {j});
    cols.push_back(*r.solution);
  }
  return Matrix::from_columns(a.cols(), std::move(cols));
}

inline Check anti_multiplicative(const FinAlgebra& from, const FinAlgebra& to, const Matrix& s, const char* name) {
  for (std::size_t i = 0; i < from.dim(); ++i)
    for (std::size_t j = 0; j < from.dim(); ++j)
      if (s.apply(from.product(i, j)) != to.multiply(s.column(j), s.column(i)))
        return fail(name, "S(xy) != S(y)S(x)", {i, j});
  return pass(name);
}

}  // namespace detail

// E(b⊗1) = E(1⊗S_B(b)) and (1⊗c)E = (S_C(c)⊗1)E.
inline AntipodalMaps antipodal_maps(const SeparabilityData& s) {
  AntipodalMaps out;
  out.SB = detail::solve_columns(detail::side_map(s, false, true), detail::side_map(s, true, true), "E(b⊗1) = E(1⊗x)");
  out.SC = detail::solve_columns(detail::side_map(s, true, false), detail::side_map(s, false, false), "(1⊗c)E = (x⊗1)E");
  if (!inverse(out.SB) || !inverse(out.SC)) throw StructuralError("separability", "not separability: antipodal map is not bijective");
  out.report.add(detail::anti_multiplicative(s.B, s.C, out.SB, "antipodal_S_B"));
  out.report.add(detail::anti_multiplicative(s.C, s.B, out.SC, "antipodal_S_C"));
  // m_C(S_B⊗ι)(E(1⊗c)) = c and m_B(ι⊗S_C)((b⊗1)E) = b
  Matrix ec = detail::side_map(s, false, true), be = detail::side_map(s, true, false);
  std::size_t nb = s.B.dim(), nc = s.C.dim();
  Check b3 = pass("separability_multiplication");
  for (std::size_t j = 0; j < nc && b3; ++j) {
    VectorBuilder acc(nc);
    for (const auto& e : ec.column(j).entries())
      acc.add(e.value, s.C.multiply(out.SB.column(e.index / nc), s.C.basis(e.index % nc)));
    if (acc.finish() != s.C.basis(j)) b3 = fail("separability_multiplication", "m(S_B⊗ι)(E(1⊗c)) != c", {j});
  }
  for (std::size_t i = 0; i < nb && b3; ++i) {
    VectorBuilder acc(nb);
    for (const auto& e : be.column(i).entries())
      acc.add(e.value, s.B.multiply(s.B.basis(e.index / nc), out.SC.column(e.index % nc)));
    if (acc.finish() != s.B.basis(i)) b3 = fail("separability_multiplication", "m(ι⊗S_C)((b⊗1)E) != b", {i});
  }
  out.report.add(b3);
  // (S_B⊗S_C)E = ζE
  out.report.add(out.SB * s.E * out.SC.transpose() == s.E.transpose()
                     ? pass("antipodal_flip")
                     : fail("antipodal_flip", "(S_B⊗S_C)E != ζE"));
  return out;
}

struct DistinguishedFunctionals {
  Functional phiB, phiC;
  Report report;
};

namespace detail {

inline Check faithful_functional(const FinAlgebra& a, const Functional& f, const char* name) {
  std::size_t n = a.dim();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = f(a.product(i, j));
    cols.push_back(Vector::from_dense(col));
  }
  Subspace k = kernel_basis(Matrix::from_columns(n, std::move(cols)).transpose());
  if (k.dim() != 0) return fail(name, "functional is not faithful");
  return pass(name);
}

}  // namespace detail

// (φ_B⊗ι)E = 1 and (ι⊗φ_C)E = 1.
inline DistinguishedFunctionals distinguished_functionals(const SeparabilityData& s, const AntipodalMaps& maps) {
  DistinguishedFunctionals out;
  auto solve = [](const Matrix& m, const Vector& rhs, const char* what) {
    auto r = solve_linear(m, rhs);
    if (!r.solution) throw StructuralError("separability", std::string("no distinguished functional: ") + what);
    if (r.kernel.dim() != 0) throw StructuralError("separability", std::string("distinguished functional not unique: ") + what);
    return Functional{r.solution->dense()};
  };
  out.phiB = solve(s.E.transpose(), detail::unit_of(s.C, "C"), "(φ_B⊗ι)E = 1");
  out.phiC = solve(s.E, detail::unit_of(s.B, "B"), "(ι⊗φ_C)E = 1");
  out.report.add(detail::faithful_functional(s.B, out.phiB, "faithful_phi_B"));
  out.report.add(detail::faithful_functional(s.C, out.phiC, "faithful_phi_C"));
  Check rel = pass("distinguished_relations");
  for (std::size_t k = 0; k < s.B.dim() && rel; ++k)
    if (out.phiB.coeffs[k] != out.phiC(maps.SB.column(k))) rel = fail("distinguished_relations", "φ_B != φ_C∘S_B", {k});
  for (std::size_t l = 0; l < s.C.dim() && rel; ++l)
    if (out.phiC.coeffs[l] != out.phiB(maps.SC.column(l))) rel = fail("distinguished_relations", "φ_C != φ_B∘S_C", {l});
  out.report.add(rel);
  return out;
}

struct ModularAutomorphisms {
  Matrix sigmaB, sigmaC;                      // the convention satisfying weak KMS
  Matrix sigmaB_composite, sigmaC_composite;  // σ_B = S_C S_B, σ_C = (S_B S_C)^-1
  Matrix sigmaB_inverse, sigmaC_inverse;      // σ_B = (S_C S_B)^-1, σ_C = S_B S_C
  bool conventions_agree = true;
  Report report;
};

inline bool satisfies_kms(const FinAlgebra& a, const Functional& f, const Matrix& sigma) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (f(a.product(i, j)) != f(a.multiply(a.basis(j), sigma.column(i)))) return false;
  return true;
}

// φ(xy) = φ(yσ(x)) on B and C; both conventions are computed.
inline ModularAutomorphisms modular_automorphisms(const SeparabilityData& s, const AntipodalMaps& maps,
                                                  const DistinguishedFunctionals& f) {
  ModularAutomorphisms out;
  Matrix cb = maps.SC * maps.SB;  // B → B
  Matrix bc = maps.SB * maps.SC;  // C → C
  Matrix cb_inv = *inverse(cb), bc_inv = *inverse(bc);
  out.sigmaB_composite = cb;
  out.sigmaC_composite = bc_inv;
  out.sigmaB_inverse = cb_inv;
  out.sigmaC_inverse = bc;
  out.conventions_agree = cb == cb_inv && bc == bc_inv;
  auto pick = [&](const FinAlgebra& alg, const Functional& phi, const Matrix& first, const Matrix& second,
                  Matrix& chosen, const char* name) {
    if (satisfies_kms(alg, phi, second)) {
      chosen = second;
      out.report.add(pass(name));
    } else if (satisfies_kms(alg, phi, first)) {
      chosen = first;
      out.report.add(pass(name, "only the inverse convention satisfies the KMS identity"));
    } else {
      chosen = second;
      out.report.add(fail(name, "neither convention satisfies φ(xy) = φ(yσ(x))"));
    }
  };
  pick(s.B, f.phiB, out.sigmaB_composite, out.sigmaB_inverse, out.sigmaB, "kms_B");
  pick(s.C, f.phiC, out.sigmaC_composite, out.sigmaC_inverse, out.sigmaC, "kms_C");
  if (!out.conventions_agree)
    out.report.note("modular automorphisms: the two conventions differ here; reported σ_B = (S_C S_B)^-1, "
                    "σ_C = S_B S_C (the ones satisfying φ(xy) = φ(yσ(x)))");
  auto multiplicative = [](const FinAlgebra& a, const Matrix& m, const char* name) {
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (m.apply(a.product(i, j)) != a.multiply(m.column(i), m.column(j))) return fail(name, "σ(xy) != σ(x)σ(y)", {i, j});
    return pass(name);
  };
  out.report.add(multiplicative(s.B, out.sigmaB, "sigma_B_automorphism"));
  out.report.add(multiplicative(s.C, out.sigmaC, "sigma_C_automorphism"));
  return out;
}

struct FMultipliers {
  Matrix F1, F3;  // in B⊗B
  Matrix F2, F4;  // in C⊗C
  Report report;
};

inline FMultipliers compute_F_multipliers(const SeparabilityData& s, const AntipodalMaps& maps,
                                          const DistinguishedFunctionals& f) {
  FMultipliers out;
  Matrix sb_inv = *inverse(maps.SB), sc_inv = *inverse(maps.SC);
  out.F1 = s.E * maps.SC.transpose();
  out.F2 = maps.SB * s.E;
  out.F3 = s.E * sb_inv.transpose();
  out.F4 = sc_inv * s.E;
  const FinAlgebra &B = s.B, &C = s.C;
  const Vector &uB = detail::unit_of(B, "B"), &uC = detail::unit_of(C, "C");
  std::size_t nb = B.dim();
  MixedTensor bbc({&B, &B, &C}), bcc({&B, &C, &C});
  // element of X⊗Y⊗Z from a coefficient matrix sitting on two legs, unit on the third
  auto place = [](const Matrix& coef, std::size_t free_leg, const Vector& unit) {
    std::vector<Entry> raw;
    std::size_t r = coef.rows(), c = coef.cols(), u = unit.size();
    for (std::size_t q = 0; q < c; ++q)
      for (const auto& e : coef.column(q).entries())
        for (const auto& x : unit.entries()) {
          std::size_t idx = free_leg == 0   ? (x.index * r + e.index) * c + q
                            : free_leg == 1 ? (e.index * u + x.index) * c + q
                                            : (e.index * c + q) * u + x.index;
          raw.push_back({idx, e.value * x.value});
        }
    return Vector::from_entries(r * c * u, std::move(raw));
  };
  Vector E13_bbc = place(s.E, 1, uB), E13_bcc = place(s.E, 1, uC);
  Vector oneE = place(s.E, 0, uB), Eone = place(s.E, 2, uC);
  auto id = [&](bool ok, const char* name, const char* what) { out.report.add(ok ? pass(name) : fail(name, what)); };
  id(mul(bbc, E13_bbc, place(out.F1, 2, uC)) == mul(bbc, E13_bbc, oneE), "F1_identity", "E13(F1⊗1) != E13(1⊗E)");
  id(mul(bbc, place(out.F3, 2, uC), E13_bbc) == mul(bbc, oneE, E13_bbc), "F3_identity", "(F3⊗1)E13 != (1⊗E)E13");
  id(mul(bcc, place(out.F2, 0, uB), E13_bcc) == mul(bcc, Eone, E13_bcc), "F2_identity", "(1⊗F2)E13 != (E⊗1)E13");
  id(mul(bcc, E13_bcc, place(out.F4, 0, uB)) == mul(bcc, E13_bcc, Eone), "F4_identity", "E13(1⊗F4) != E13(E⊗1)");
  // m F1 = 1, (φ_B⊗ι)F1 = (ι⊗φ_B)F1 = 1, (b⊗1)F1 = F1(1⊗b)
  VectorBuilder m(nb);
  for (std::size_t q = 0; q < nb; ++q)
    for (const auto& e : out.F1.column(q).entries()) m.add(e.value, B.product(e.index, q));
  id(m.finish() == uB, "F1_multiplication", "m(F1) != 1");
  VectorBuilder l(nb), r(nb);
  for (std::size_t q = 0; q < nb; ++q)
    for (const auto& e : out.F1.column(q).entries()) {
      l.add(e.value * f.phiB.coeffs[e.index], B.basis(q));
      r.add(e.value * f.phiB.coeffs[q], B.basis(e.index));
    }
  id(l.finish() == uB && r.finish() == uB, "F1_counit", "(φ_B⊗ι)F1 or (ι⊗φ_B)F1 != 1");
  MixedTensor bb({&B, &B});
  Vector F1t = as_tensor(out.F1);
  Check bimod = pass("F1_bimodule");
  for (std::size_t k = 0; k < nb && bimod; ++k)
    if (mul(bb, kron(B.basis(k), uB), F1t) != mul(bb, F1t, kron(uB, B.basis(k))))
      bimod = fail("F1_bimodule", "(b⊗1)F1 != F1(1⊗b)", {k});
  out.report.add(bimod);
  return out;
}

struct SeparabilityStructure {
  Multiplier E;
  MultiplierBasis B_basis, C_basis;  // inside M(A)
  SeparabilityData data;
  AntipodalMaps maps;
  DistinguishedFunctionals functionals;
  ModularAutomorphisms modular;
  FMultipliers F;
  Report report;

  // F1..F4 as multipliers of A⊗A
  Multiplier F_multiplier(int k) const {
    const Matrix& c = k == 1 ? F.F1 : k == 2 ? F.F2 : k == 3 ? F.F3 : F.F4;
    const MultiplierBasis& legs = (k == 1 || k == 3) ? B_basis : C_basis;
    std::size_t n = E.dim();
    Multiplier m = zero_multiplier(n);
    for (std::size_t q = 0; q < c.cols(); ++q)
      for (const auto& e : c.column(q).entries()) m = m + scaled(tensor(legs[e.index], legs[q]), e.value);
    return m;
  }
  // b ∈ B and c ∈ C coordinates to multipliers of A
  Multiplier b_element(const Vector& coords) const { return B_basis.combine(coords); }
  Multiplier c_element(const Vector& coords) const { return C_basis.combine(coords); }
};

// B and C commute inside M(A) and both have units.
inline Report check_legs_in_multipliers(const SeparabilityStructure& s) {
  Report rep;
  Check comm = pass("legs_commute");
  for (std::size_t k = 0; k < s.B_basis.size() && comm; ++k)
    for (std::size_t l = 0; l < s.C_basis.size() && comm; ++l)
      if (s.B_basis[k] * s.C_basis[l] != s.C_basis[l] * s.B_basis[k]) comm = fail("legs_commute", "bc != cb", {k, l});
  rep.add(comm);
  rep.add(s.data.B.unit() && s.data.C.unit() ? pass("local_units") : fail("local_units", "B or C has no unit"));
  return rep;
}

// Everything above for the canonical idempotent of a coproduct.
inline SeparabilityStructure analyze_separability(const FinAlgebra& a, const Multiplier& E) {
  SeparabilityStructure s;
  s.E = E;
  Legs legs = extract_legs(a, E);
  s.report.merge(legs.report);
  s.B_basis = MultiplierBasis(legs.B);
  s.C_basis = MultiplierBasis(legs.C);
  s.data = abstract_separability(legs, E);
  Check reg = check_regular_separability(s.data);
  s.report.add(reg);
  if (!reg) throw StructuralError(reg);
  s.maps = antipodal_maps(s.data);
  s.report.merge(s.maps.report);
  s.functionals = distinguished_functionals(s.data, s.maps);
  s.report.merge(s.functionals.report);
  s.modular = modular_automorphisms(s.data, s.maps, s.functionals);
  s.report.merge(s.modular.report);
  s.F = compute_F_multipliers(s.data, s.maps, s.functionals);
  s.report.merge(s.F.report);
  s.report.merge(check_legs_in_multipliers(s));
  return s;
}

// Separability analysis on an abstract E ∈ B⊗C (no ambient algebra).
struct AbstractSeparability {
  AntipodalMaps maps;
  DistinguishedFunctionals functionals;
  ModularAutomorphisms modular;
  FMultipliers F;
  Report report;
};

inline AbstractSeparability analyze_abstract(const SeparabilityData& s) {
  AbstractSeparability out;
  Check reg = check_regular_separability(s);
  out.report.add(reg);
  if (!reg) throw StructuralError(reg);
  out.maps = antipodal_maps(s);
  out.report.merge(out.maps.report);
  out.functionals = distinguished_functionals(s, out.maps);
  out.report.merge(out.functionals.report);
  out.modular = modular_automorphisms(s, out.maps, out.functionals);
  out.report.merge(out.modular.report);
  out.F = compute_F_multipliers(s, out.maps, out.functionals);
  out.report.merge(out.F.report);
  return out;
}

namespace detail {

// v* on A^{⊗k} for the involution J of A
inline Vector star_tensor(const FinAlgebra& a, const Vector& v, std::size_t degree) {
  const Matrix& J = *a.involution();
  std::size_t d = a.dim();
  std::vector<Entry> cur;
  for (const auto& e : v.entries()) cur.push_back({e.index, e.value.conj()});
  Vector w = Vector::from_entries(v.size(), std::move(cur));
  for (std::size_t leg = 0; leg < degree; ++leg) w = apply_on_leg(w, d, degree, leg, J);
  return w;
}

inline Multiplier star_multiplier(const FinAlgebra& a, const Multiplier& m, std::size_t degree) {
  std::size_t n = m.dim();
  std::vector<Vector> l(n), r(n);
  for (std::size_t z = 0; z < n; ++z) {
    Vector zs = star_tensor(a, Vector::unit(n, z), degree);
    l[z] = star_tensor(a, m.rho.apply(zs), degree);
    r[z] = star_tensor(a, m.lambda.apply(zs), degree);
  }
  return {Matrix::from_columns(n, std::move(l)), Matrix::from_columns(n, std::move(r))};
}

// Leading principal minors of a Hermitian matrix all positive.
inline bool positive_definite(std::vector<std::vector<Scalar>> g) {
  std::size_t n = g.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar& p = g[k][k];
    if (!p.is_real() || p.re().sign() <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Scalar f = g[i][k] / p;
      if (f.is_zero()) continue;
      for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return true;
}

}  // namespace detail

// The involutive case: E and Δ self-adjoint, S_C(S_B(b*))* = b,
// S_B(S_C(c)*)* = c, φ_B and φ_C positive.
inline Report check_involutive(const Coproduct& D, const SeparabilityStructure& s) {
  const FinAlgebra& a = D.algebra();
  if (!a.involution()) throw StructuralError("involution", "algebra carries no involution");
  Report rep;
  if (detail::star_multiplier(a, s.E, 2) != s.E) throw StructuralError("involution", "E is not self-adjoint");
  for (std::size_t i = 0; i < D.dim(); ++i)
    if (D.of(a.star(a.basis(i))) != detail::star_multiplier(a, D.delta(i), 2))
      throw StructuralError("involution", "Δ(a*) != Δ(a)*: E is not self-adjoint for this structure", {i});
  auto coords = [&](const MultiplierBasis& mb, const Multiplier& m) -> std::optional<Vector> { return mb.coordinates(m); };
  Check sb = pass("involutive_antipodal");
  for (std::size_t k = 0; k < s.B_basis.size() && sb; ++k) {
    auto x = coords(s.B_basis, detail::star_multiplier(a, s.B_basis[k], 1));
    if (!x) {
      sb = fail("involutive_antipodal", "B is not *-closed", {k});
      break;
    }
    Vector y = s.maps.SC.apply(s.maps.SB.apply(*x));
    if (detail::star_multiplier(a, s.B_basis.combine(y), 1) != s.B_basis[k])
      sb = fail("involutive_antipodal", "S_C(S_B(b*))* != b", {k});
  }
  for (std::size_t l = 0; l < s.C_basis.size() && sb; ++l) {
    Multiplier sc = s.B_basis.combine(s.maps.SC.column(l));
    auto x = coords(s.B_basis, detail::star_multiplier(a, sc, 1));
    if (!x) {
      sb = fail("involutive_antipodal", "B is not *-closed", {l});
      break;
    }
    Multiplier back = s.C_basis.combine(s.maps.SB.apply(*x));
    if (detail::star_multiplier(a, back, 1) != s.C_basis[l]) sb = fail("involutive_antipodal", "S_B(S_C(c)*)* != c", {l});
  }
  rep.add(sb);
  auto gram = [&](const MultiplierBasis& mb, const Functional& phi) {
    std::size_t n = mb.size();
    std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i) {
      Multiplier si = detail::star_multiplier(a, mb[i], 1);
      for (std::size_t j = 0; j < n; ++j) {
        auto c = mb.coordinates(si * mb[j]);
        if (!c) return false;
        g[i][j] = phi(*c);
      }
    }
    return detail::positive_definite(std::move(g));
  };
  rep.add(gram(s.B_basis, s.functionals.phiB) ? pass("positive_phi_B") : fail("positive_phi_B", "Gram matrix of φ_B is not positive definite"));
  rep.add(gram(s.C_basis, s.functionals.phiC) ? pass("positive_phi_C") : fail("positive_phi_C", "Gram matrix of φ_C is not positive definite"));
  return rep;
}

}  // namespace weakhopf
