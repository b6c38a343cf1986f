#pragma once

#include <string>
#include <vector>

#include "weakhopf/separability.hpp"

namespace weakhopf {

struct IntegralSpace {
  std::vector<Functional> left_basis, right_basis;
  bool left_faithful = false, right_faithful = false;
};

namespace detail {

// The d multipliers (ι⊗e_j*)Δ(a) (second_leg) or (e_j*⊗ι)Δ(a), flattened.
// Column x of λ comes from tl, column x of ρ from tr.
inline std::vector<Vector> delta_slices(const Matrix& tl, const Matrix& tr, std::size_t d, std::size_t a, bool a_second,
                                        bool second_leg) {
  std::vector<std::vector<Entry>> raw(d);
  auto put = [&](const Matrix& t, std::size_t offset) {
    for (std::size_t x = 0; x < d; ++x)
      for (const auto& e : t.column(a_second ? x * d + a : a * d + x).entries()) {
        std::size_t k = e.index / d, l = e.index % d;
        std::size_t slot = second_leg ? l : k, keep = second_leg ? k : l;
        raw[slot].push_back({offset + x * d + keep, e.value});
      }
  };
  put(tl, 0);
  put(tr, d * d);
  std::vector<Vector> out;
  for (auto& r : raw) out.push_back(Vector::from_entries(2 * d * d, std::move(r)));
  return out;
}

inline std::vector<Functional> invariant_functionals(std::size_t d, const MultiplierBasis& target,
                                                     const std::function<std::vector<Vector>(std::size_t)>& slices) {
  Echelon t(2 * d * d);
  for (const auto& m : target.elements()) t.insert(flatten(m));
  std::size_t block = 2 * d * d;
  std::vector<std::vector<Entry>> cols(d);
  for (std::size_t a = 0; a < d; ++a) {
    auto s = slices(a);
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& tmp_e = t.reduce(s[j], nullptr); const auto& e : tmp_e.entries()) cols[j].push_back({a * block + e.index, e.value});
  }
  std::vector<Vector> mc;
  for (auto& c : cols) mc.push_back(Vector::from_entries(d * block, std::move(c)));
  Subspace k = kernel_basis(Matrix::from_columns(d * block, std::move(mc)));
  std::vector<Functional> out;
  for (const auto& v : k.basis()) out.push_back(Functional{v.dense()});
  return out;
}

}  // namespace detail

// φ with (ι⊗φ)Δ(a) ∈ A_t for all a; A_t = M(C) = C as C is unital.
inline std::vector<Functional> solve_left_integrals(const Coproduct& D, const CanonicalMapSet& T,
                                                    const SeparabilityStructure& sep) {
  std::size_t d = D.dim();
  return detail::invariant_functionals(d, sep.C_basis, [&](std::size_t a) {
    return detail::delta_slices(T.T4, T.T2, d, a, true, true);
  });
}

// ψ with (ψ⊗ι)Δ(a) ∈ A_s = B for all a.
inline std::vector<Functional> solve_right_integrals(const Coproduct& D, const CanonicalMapSet& T,
                                                     const SeparabilityStructure& sep) {
  std::size_t d = D.dim();
  return detail::invariant_functionals(d, sep.B_basis, [&](std::size_t a) {
    return detail::delta_slices(T.T1, T.T3, d, a, false, false);
  });
}

// {a : φ(ab) = 0 ∀b, φ} = 0 and {a : φ(ba) = 0 ∀b, φ} = 0.
inline Check check_faithful_set(const std::vector<Functional>& space, const FinAlgebra& a) {
  std::size_t d = a.dim();
  if (space.empty()) return fail("faithful_set", "no integrals");
  for (int side = 0; side < 2; ++side) {
    std::vector<Vector> cols;
    for (std::size_t x = 0; x < d; ++x) {
      std::vector<Entry> raw;
      for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t b = 0; b < d; ++b) {
          Scalar v = space[i](side == 0 ? a.product(x, b) : a.product(b, x));
          if (!v.is_zero()) raw.push_back({i * d + b, v});
        }
      cols.push_back(Vector::from_entries(space.size() * d, std::move(raw)));
    }
    Subspace k = kernel_basis(Matrix::from_columns(space.size() * d, std::move(cols)));
    if (k.dim() != 0) {
      Witness w;
      for (const auto& e : k.basis()[0].entries()) w.push_back(e.index);
      return fail("faithful_set", side == 0 ? "nonzero a with φ(ab) = 0 for all b and φ" : "nonzero a with φ(ba) = 0 for all b and φ", w);
    }
  }
  return pass("faithful_set");
}

inline IntegralSpace solve_integrals(const Coproduct& D, const CanonicalMapSet& T, const SeparabilityStructure& sep) {
  IntegralSpace s;
  s.left_basis = solve_left_integrals(D, T, sep);
  s.right_basis = solve_right_integrals(D, T, sep);
  s.left_faithful = static_cast<bool>(check_faithful_set(s.left_basis, D.algebra()));
  s.right_faithful = static_cast<bool>(check_faithful_set(s.right_basis, D.algebra()));
  return s;
}

// The four identities relating (ι⊗φ)Δ(a), (ψ⊗ι)Δ(a) to F2, F4, F1, F3, and
// φ(ya) = φ(aσ_C(y)), ψ(xa) = ψ(aσ_B(x)).
inline Report verify_invariance_identities(const Coproduct& D, const CanonicalMapSet& T, const SeparabilityStructure& sep,
                                           const std::vector<Functional>& left, const std::vector<Functional>& right) {
  Report rep;
  std::size_t d = D.dim();
  const auto& Bm = sep.B_basis;
  const auto& Cm = sep.C_basis;
  // combination Σ_kl F_kl f(x_l(a)) y_k, flattened; x_l(a) is c_l a or a c_l etc.
  auto rhs = [&](const Matrix& F, const MultiplierBasis& legs, const std::vector<Vector>& inner, const Functional& f,
                 bool first_index_kept) {
    VectorBuilder out(2 * d * d);
    for (std::size_t q = 0; q < F.cols(); ++q)
      for (const auto& e : F.column(q).entries()) {
        std::size_t keep = first_index_kept ? e.index : q, used = first_index_kept ? q : e.index;
        Scalar v = e.value * f(inner[used]);
        if (!v.is_zero()) out.add(v, flatten(legs[keep]));
      }
    return out.finish();
  };
  auto combine = [&](const std::vector<Vector>& slices, const Functional& f) {
    VectorBuilder out(2 * d * d);
    for (std::size_t j = 0; j < d; ++j) out.add(f.coeffs[j], slices[j]);
    return out.finish();
  };
  Matrix sigC = sep.modular.sigmaC_inverse, sigB = sep.modular.sigmaB_inverse;
  std::vector<Multiplier> sc, sb;
  for (std::size_t k = 0; k < Cm.size(); ++k) sc.push_back(Cm.combine(sigC.column(k)));
  for (std::size_t k = 0; k < Bm.size(); ++k) sb.push_back(Bm.combine(sigB.column(k)));
  Check l2 = pass("invariance_left_F2"), l4 = pass("invariance_left_F4"), r1 = pass("invariance_right_F1"),
        r3 = pass("invariance_right_F3"), ml = pass("modular_left"), mr = pass("modular_right");
  for (std::size_t a = 0; a < d; ++a) {
    Vector ea = D.algebra().basis(a);
    std::vector<Vector> c_a, a_c, b_a, a_b;  // c_l a, a c_l, b_k a, a b_k
    for (std::size_t k = 0; k < Cm.size(); ++k) {
      c_a.push_back(Cm[k].lambda.apply(ea));
      a_c.push_back(Cm[k].rho.apply(ea));
    }
    for (std::size_t k = 0; k < Bm.size(); ++k) {
      b_a.push_back(Bm[k].lambda.apply(ea));
      a_b.push_back(Bm[k].rho.apply(ea));
    }
    auto ls = detail::delta_slices(T.T4, T.T2, d, a, true, true);
    auto rs = detail::delta_slices(T.T1, T.T3, d, a, false, false);
    for (std::size_t i = 0; i < left.size(); ++i) {
      Vector lhs = combine(ls, left[i]);
      if (l2 && lhs != rhs(sep.F.F2, Cm, c_a, left[i], true)) l2 = fail("invariance_left_F2", "(ι⊗φ)Δ(a) != (ι⊗φ)(F2(1⊗a))", {i, a});
      if (l4 && lhs != rhs(sep.F.F4, Cm, a_c, left[i], true)) l4 = fail("invariance_left_F4", "(ι⊗φ)Δ(a) != (ι⊗φ)((1⊗a)F4)", {i, a});
      for (std::size_t k = 0; k < Cm.size() && ml; ++k)
        if (left[i](c_a[k]) != left[i](sc[k].rho.apply(ea))) ml = fail("modular_left", "φ(ya) != φ(aσ_C(y))", {i, k, a});
    }
    for (std::size_t i = 0; i < right.size(); ++i) {
      Vector lhs = combine(rs, right[i]);
      if (r1 && lhs != rhs(sep.F.F1, Bm, a_b, right[i], false)) r1 = fail("invariance_right_F1", "(ψ⊗ι)Δ(a) != (ψ⊗ι)((a⊗1)F1)", {i, a});
      if (r3 && lhs != rhs(sep.F.F3, Bm, b_a, right[i], false)) r3 = fail("invariance_right_F3", "(ψ⊗ι)Δ(a) != (ψ⊗ι)(F3(a⊗1))", {i, a});
      for (std::size_t k = 0; k < Bm.size() && mr; ++k)
        if (right[i](b_a[k]) != right[i](sb[k].rho.apply(ea))) mr = fail("modular_right", "ψ(xa) != ψ(aσ_B(x))", {i, k, a});
    }
  }
  for (auto* c : {&l2, &l4, &r1, &r3, &ml, &mr}) rep.add(*c);
  return rep;
}

// The four covered identities T_i(smeared product) = E-image, on all basis
// triples (a, b, c) and every integral basis element.
inline Report verify_smeared_ranges(const Coproduct& D, const CanonicalMapSet& T, const Multiplier& E,
                                    const std::vector<Functional>& left, const std::vector<Functional>& right) {
  Report rep;
  std::size_t d = D.dim(), n = d * d;
  auto slice2 = [&](const Vector& w, const Functional& f) { return slice_second(w, d, f.coeffs); };
  auto slice1 = [&](const Vector& w, const Functional& f) { return slice_first(w, d, f.coeffs); };
  Check c1 = pass("smeared_T1"), c3 = pass("smeared_T3"), c2 = pass("smeared_T2"), c4 = pass("smeared_T4");
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Functional& phi = left[i];
    // P1[a][l] = (ι⊗φ)T1(a⊗e_l), P3[b][l] = (ι⊗φ)T3(b⊗e_l) kept as elements of A⊗A with φ on leg 2 only later
    std::vector<Vector> P1(n);
    for (std::size_t z = 0; z < n; ++z) P1[z] = slice2(T.T1.column(z), phi);
    for (std::size_t a = 0; a < d && c1; ++a)
      for (std::size_t b = 0; b < d && c1; ++b)
        for (std::size_t c = 0; c < d && c1; ++c) {
          VectorBuilder y(n);
          for (const auto& w : T.T4.column(c * d + b).entries())
            for (const auto& p : P1[a * d + w.index % d].entries()) y.add(p.index * d + w.index / d, w.value * p.value);
          Vector lhs = T.T1.apply(y.finish());
          Vector rhs = E.lambda.apply(kron(P1[a * d + b], D.algebra().basis(c)));
          if (lhs != rhs) c1 = fail("smeared_T1", "T1((ι⊗ι⊗φ)(Δ13(a)Δ23(b)(1⊗c⊗1))) != E(p⊗c)", {i, a, b, c});
        }
    for (std::size_t a = 0; a < d && c3; ++a)
      for (std::size_t b = 0; b < d && c3; ++b)
        for (std::size_t c = 0; c < d && c3; ++c) {
          // Y = Σ w_kl (ι⊗ι⊗φ)(σ12(e_k ⊗ T3(b⊗e_l))), w = T2(c⊗a)
          VectorBuilder y(n);
          for (const auto& w : T.T2.column(c * d + a).entries()) {
            std::size_t k = w.index / d, l = w.index % d;
            for (const auto& t : T.T3.column(b * d + l).entries()) {
              Scalar v = w.value * t.value * phi.coeffs[t.index % d];
              if (!v.is_zero()) y.add((t.index / d) * d + k, v);
            }
          }
          Vector lhs = T.T3.apply(y.finish());
          Vector p = slice2(T.T3.column(b * d + a), phi);
          Vector rhs = E.rho.apply(kron(p, D.algebra().basis(c)));
          if (lhs != rhs) c3 = fail("smeared_T3", "T3((ι⊗ι⊗φ)((1⊗c⊗1)Δ23(a)Δ13(b))) != (p⊗c)E", {i, a, b, c});
        }
  }
  for (std::size_t i = 0; i < right.size(); ++i) {
    const Functional& psi = right[i];
    for (std::size_t a = 0; a < d && c2; ++a)
      for (std::size_t b = 0; b < d && c2; ++b)
        for (std::size_t c = 0; c < d && c2; ++c) {
          // Y = Σ w_kl (ψ⊗ι⊗ι)(σ23(T2(e_k⊗b) ⊗ e_l)), w = T3(a⊗c)
          VectorBuilder y(n);
          for (const auto& w : T.T3.column(a * d + c).entries()) {
            std::size_t k = w.index / d, l = w.index % d;
            for (const auto& t : T.T2.column(k * d + b).entries()) {
              Scalar v = w.value * t.value * psi.coeffs[t.index / d];
              if (!v.is_zero()) y.add(l * d + t.index % d, v);
            }
          }
          Vector lhs = T.T2.apply(y.finish());
          Vector q = slice1(T.T2.column(a * d + b), psi);
          Vector rhs = E.rho.apply(kron(D.algebra().basis(c), q));
          if (lhs != rhs) c2 = fail("smeared_T2", "T2((ψ⊗ι⊗ι)((1⊗c⊗1)Δ12(a)Δ13(b))) != (c⊗q)E", {i, a, b, c});
        }
    for (std::size_t a = 0; a < d && c4; ++a)
      for (std::size_t b = 0; b < d && c4; ++b)
        for (std::size_t c = 0; c < d && c4; ++c) {
          // Y = Σ w_kl (ψ⊗ι⊗ι)(σ23(T4(e_k⊗a) ⊗ e_l)), w = T1(b⊗c)
          VectorBuilder y(n);
          for (const auto& w : T.T1.column(b * d + c).entries()) {
            std::size_t k = w.index / d, l = w.index % d;
            for (const auto& t : T.T4.column(k * d + a).entries()) {
              Scalar v = w.value * t.value * psi.coeffs[t.index / d];
              if (!v.is_zero()) y.add(l * d + t.index % d, v);
            }
          }
          Vector lhs = T.T4.apply(y.finish());
          Vector q = slice1(T.T4.column(b * d + a), psi);
          Vector rhs = E.lambda.apply(kron(D.algebra().basis(c), q));
          if (lhs != rhs) c4 = fail("smeared_T4", "T4((ψ⊗ι⊗ι)(Δ13(a)Δ12(b)(1⊗c⊗1))) != E(c⊗q)", {i, a, b, c});
        }
  }
  for (auto* c : {&c1, &c3, &c2, &c4}) rep.add(*c);
  return rep;
}

}  // namespace weakhopf
