#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weakhopf/integrals.hpp"

namespace weakhopf {

namespace detail {

// Compares span(gens) with a given subspace; the witness is a generator index
// outside `target`, or a target basis vector's leading index outside span(gens).
inline Check compare_span(const std::string& name, const std::string& what, const std::vector<Vector>& gens,
                          const Subspace& target, std::size_t d) {
  Echelon e(target.ambient_dim());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (!target.contains(gens[j])) return fail(name, what + " (generator outside)", {j / d, j % d});
    e.insert(gens[j]);
  }
  if (e.rank() != target.dim()) {
    for (const auto& v : target.basis())
      if (!e.contains(v)) {
        std::size_t z = v.leading();
        return fail(name, what + " (missing direction)", {z / d, z % d});
      }
  }
  return pass(name, "dim " + std::to_string(target.dim()));
}

inline std::vector<Vector> columns(const Matrix& m) {
  std::vector<Vector> v;
  v.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.column(j));
  return v;
}

}  // namespace detail

// T1, T4 have range E(A⊗A); T2, T3 have range (A⊗A)E.
inline Report check_range_theorems(const CanonicalMapSet& T, const Multiplier& E) {
  Report rep;
  std::size_t n = E.dim();
  std::size_t d = 0;
  while (d * d < n) ++d;
  Subspace le = image_basis(E.lambda), re = image_basis(E.rho);
  rep.add(detail::compare_span("range_T1", "T1(A⊗A) != E(A⊗A)", detail::columns(T.T1), le, d));
  rep.add(detail::compare_span("range_T2", "T2(A⊗A) != (A⊗A)E", detail::columns(T.T2), re, d));
  rep.add(detail::compare_span("range_T3", "T3(A⊗A) != (A⊗A)E", detail::columns(T.T3), re, d));
  rep.add(detail::compare_span("range_T4", "T4(A⊗A) != E(A⊗A)", detail::columns(T.T4), le, d));
  return rep;
}

struct GMaps {
  Matrix G1, G2, G3, G4;
};

// G1(a⊗b) = (a⊗1)F1(1⊗b), G2(a⊗b) = (a⊗1)F2(1⊗b),
// G3(a⊗b) = (1⊗b)F3(a⊗1), G4(a⊗b) = (1⊗b)F4(a⊗1).
inline GMaps g_maps(const SeparabilityStructure& sep) {
  std::size_t n = sep.E.dim();
  std::size_t d = sep.B_basis.size() ? sep.B_basis[0].dim() : 0;
  auto build = [&](const Matrix& F, const MultiplierBasis& legs, bool outer) {
    // outer: a·x_k ⊗ x_l·b; otherwise x_k·a ⊗ b·x_l
    std::vector<Vector> cols(n);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        VectorBuilder out(n);
        for (std::size_t l = 0; l < F.cols(); ++l)
          for (const auto& e : F.column(l).entries()) {
            const Multiplier &xk = legs[e.index], &xl = legs[l];
            Vector left = outer ? xk.rho.column(a) : xk.lambda.column(a);
            Vector right = outer ? xl.lambda.column(b) : xl.rho.column(b);
            out.add(e.value, kron(left, right));
          }
        cols[a * d + b] = out.finish();
      }
    return Matrix::from_columns(n, std::move(cols));
  };
  return {build(sep.F.F1, sep.B_basis, true), build(sep.F.F2, sep.C_basis, true), build(sep.F.F3, sep.B_basis, false),
          build(sep.F.F4, sep.C_basis, false)};
}

// Ker T_i = Im(1 - G_i), plus rank + nullity of T1.
inline Report check_kernel_theorems(const CanonicalMapSet& T, const SeparabilityStructure& sep) {
  Report rep;
  std::size_t n = sep.E.dim();
  std::size_t d = sep.B_basis.size() ? sep.B_basis[0].dim() : 0;
  GMaps g = g_maps(sep);
  Matrix id = Matrix::identity(n);
  const Matrix* ts[] = {&T.T1, &T.T2, &T.T3, &T.T4};
  const Matrix* gs[] = {&g.G1, &g.G2, &g.G3, &g.G4};
  const char* names[] = {"kernel_T1", "kernel_T2", "kernel_T3", "kernel_T4"};
  const char* what[] = {"Ker T1 != (A⊗1)(1-F1)(1⊗A)", "Ker T2 != (A⊗1)(1-F2)(1⊗A)", "Ker T3 != (1⊗A)(1-F3)(A⊗1)",
                        "Ker T4 != (1⊗A)(1-F4)(A⊗1)"};
  for (int i = 0; i < 4; ++i) {
    Subspace ker = kernel_basis(*ts[i]);
    rep.add(detail::compare_span(names[i], what[i], detail::columns(id - *gs[i]), ker, d));
    if (i == 0) {
      std::size_t r = rank(T.T1);
      rep.add(r + ker.dim() == n ? pass("rank_nullity_T1", std::to_string(r) + " + " + std::to_string(ker.dim()))
                                 : fail("rank_nullity_T1", "dim Ran T1 + dim Ker T1 != dim(A)^2"));
    }
  }
  return rep;
}

namespace detail {

// p = (ι⊗φ)(Δ(a)(1⊗b)) over integrals (solution order) then basis pairs (lexicographic).
struct SpanningFamily {
  std::vector<Vector> p;
  std::vector<Witness> label;  // {integral, a, b}
};

inline SpanningFamily spanning_family(const CanonicalMapSet& T, std::size_t d, const std::vector<Functional>& left) {
  SpanningFamily f;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        f.p.push_back(slice_second(T.T1.column(a * d + b), d, left[i].coeffs));
        f.label.push_back({i, a, b});
      }
  return f;
}

inline Witness family_witness(const SpanningFamily& f, const Vector& combo) {
  Witness w;
  for (const auto& e : combo.entries()) w.insert(w.end(), f.label[e.index].begin(), f.label[e.index].end());
  return w;
}

inline std::string family_detail(const SpanningFamily& f, const Vector& combo) {
  std::string s;
  for (const auto& e : combo.entries()) {
    const auto& l = f.label[e.index];
    if (!s.empty()) s += " + ";
    s += "(" + e.value.str() + ")·p[φ" + std::to_string(l[0]) + ",e" + std::to_string(l[1]) + ",e" +
         std::to_string(l[2]) + "]";
  }
  return s;
}

}  // namespace detail

// ε from ε((ι⊗φ)(Δ(a)(1⊗b))) = φ(ab), solved over the whole family.
inline Functional construct_counit(const Coproduct& D, const CanonicalMapSet& T, const std::vector<Functional>& left) {
  const FinAlgebra& A = D.algebra();
  std::size_t d = A.dim();
  auto fam = detail::spanning_family(T, d, left);
  std::vector<Vector> values;
  values.reserve(fam.p.size());
  for (const auto& l : fam.label) {
    Scalar v = left[l[0]](A.product(l[1], l[2]));
    values.push_back(v.is_zero() ? Vector(1) : Vector::unit(1, 0, v));
  }
  FamilySolve s = solve_map_from_family(d, 1, fam.p, values);
  if (s.inconsistency)
    throw StructuralError("counit", "inconsistent counit system: " + detail::family_detail(fam, *s.inconsistency) +
                                        " = 0 but the values do not cancel",
                          detail::family_witness(fam, *s.inconsistency));
  if (!s.map) throw StructuralError("counit", "counit not determined: the family spans a proper subspace of A");
  Functional eps{std::vector<Scalar>(d)};
  for (std::size_t j = 0; j < d; ++j) eps.coeffs[j] = s.map->column(j).at(0);
  Check c = check_counit(D, eps, T);
  if (!c) throw StructuralError(c);
  return eps;
}

// S((ι⊗φ)(Δ(a)(1⊗b))) = (ι⊗φ)((1⊗a)Δ(b)), solved over the whole family.
inline Matrix construct_antipode(const Coproduct& D, const CanonicalMapSet& T, const std::vector<Functional>& left) {
  const FinAlgebra& A = D.algebra();
  std::size_t d = A.dim();
  auto fam = detail::spanning_family(T, d, left);
  std::vector<Vector> values;
  values.reserve(fam.p.size());
  for (const auto& l : fam.label) values.push_back(slice_second(T.T3.column(l[2] * d + l[1]), d, left[l[0]].coeffs));
  FamilySolve s = solve_map_from_family(d, d, fam.p, values);
  if (s.inconsistency)
    throw StructuralError("antipode", "inconsistent antipode system: " + detail::family_detail(fam, *s.inconsistency) +
                                          " = 0 but its image is nonzero",
                          detail::family_witness(fam, *s.inconsistency));
  if (!s.map) throw StructuralError("antipode", "antipode not determined: the family spans a proper subspace of A");
  if (!inverse(*s.map)) {
    Subspace k = kernel_basis(*s.map);
    throw StructuralError("antipode", "antipode not bijective", {k.basis()[0].leading()});
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (s.map->apply(A.product(i, j)) != A.multiply(s.map->column(j), s.map->column(i)))
        throw StructuralError("antipode", "S(ab) != S(b)S(a)", {i, j});
  return *s.map;
}

struct GeneralizedInverseRoute {
  Matrix R1, S;
};

// R1 with R1T1 = G1 and T1R1 = E(·); S(p)c = (ε⊗ι)R1(p⊗c).
inline GeneralizedInverseRoute antipode_via_generalized_inverse(const Coproduct& D, const CanonicalMapSet& T,
                                                                const SeparabilityStructure& sep,
                                                                const Functional& eps) {
  const FinAlgebra& A = D.algebra();
  std::size_t d = A.dim();
  GMaps g = g_maps(sep);
  Subspace ker = kernel_basis(T.T1);
  GeneralizedInverseRoute out;
  try {
    out.R1 = restricted_inverse(T.T1, ker, g.G1, sep.E.lambda);
  } catch (const std::invalid_argument& e) {
    throw StructuralError("antipode_generalized_inverse", std::string("no generalized inverse: ") + e.what());
  }
  std::vector<Vector> cols(d);
  for (std::size_t p = 0; p < d; ++p) {
    // x ↦ Σ x_c (ε⊗ι)R1(p⊗e_c) is left multiplication by S(p)
    auto act = [&](const Vector& x) {
      VectorBuilder b(d);
      for (const auto& e : x.entries()) b.add(e.value, slice_first(out.R1.column(p * d + e.index), d, eps.coeffs));
      return b.finish();
    };
    auto s = covered_element(A, act);
    if (!s) throw StructuralError("antipode_generalized_inverse", "(ε⊗ι)R1(p⊗·) is not left multiplication", {p});
    for (std::size_t c = 0; c < d; ++c)
      if (A.multiply(*s, A.basis(c)) != act(A.basis(c)))
        throw StructuralError("antipode_generalized_inverse", "(ε⊗ι)R1(p⊗c) != S(p)c", {p, c});
    cols[p] = std::move(*s);
  }
  out.S = Matrix::from_columns(d, std::move(cols));
  return out;
}

// S on M(A): S(m)S(y) = S(ym), S(y)S(m) = S(my).
inline Multiplier extend_antipode(const Matrix& S, const Matrix& S_inv, const Multiplier& m) {
  return {S * m.rho * S_inv, S * m.lambda * S_inv};
}

// S agrees with S_B on B and S_C on C, checked both through the coordinates
// and through the covered identities (1⊗y)Δ(b) = (S(y)⊗1)Δ(b), y ∈ C, and
// Δ(b)(x⊗1) = Δ(b)(1⊗S(x)), x ∈ B. Also S(S(B)) ⊆ B.
inline Report check_antipode_restrictions(const Matrix& S, const Coproduct& D, const CanonicalMapSet& T,
                                          const SeparabilityStructure& sep) {
  Report rep;
  std::size_t d = D.dim();
  auto inv = inverse(S);
  if (!inv) {
    rep.add(fail("antipode_restriction_B", "S is not invertible"));
    return rep;
  }
  const auto &Bm = sep.B_basis, &Cm = sep.C_basis;
  std::vector<Multiplier> sb, sc;
  for (std::size_t k = 0; k < Bm.size(); ++k) sb.push_back(extend_antipode(S, *inv, Bm[k]));
  for (std::size_t l = 0; l < Cm.size(); ++l) sc.push_back(extend_antipode(S, *inv, Cm[l]));

  Check cb = pass("antipode_restriction_B"), cc = pass("antipode_restriction_C");
  for (std::size_t k = 0; k < Bm.size() && cb; ++k)
    if (sb[k] != Cm.combine(sep.maps.SB.column(k))) cb = fail("antipode_restriction_B", "S(b) != S_B(b)", {k});
  for (std::size_t l = 0; l < Cm.size() && cc; ++l)
    if (sc[l] != Bm.combine(sep.maps.SC.column(l))) cc = fail("antipode_restriction_C", "S(y) != S_C(y)", {l});
  rep.add(cb);
  rep.add(cc);

  // covered forms: (1⊗y)Δ(b)(c⊗1) vs (S(y)⊗1)Δ(b)(c⊗1), and (c⊗1)Δ(b)(x⊗1) vs (c⊗1)Δ(b)(1⊗S(x))
  Check vc = pass("antipode_covered_C"), vb = pass("antipode_covered_B");
  for (std::size_t l = 0; l < Cm.size() && vc; ++l)
    for (std::size_t z = 0; z < d * d && vc; ++z) {
      const Vector& w = T.T4.column(z);
      if (apply_on_leg(w, d, 2, 1, Cm[l].lambda) != apply_on_leg(w, d, 2, 0, sc[l].lambda))
        vc = fail("antipode_covered_C", "(1⊗y)Δ(b)(c⊗1) != (S(y)⊗1)Δ(b)(c⊗1)", {l, z % d, z / d});
    }
  for (std::size_t k = 0; k < Bm.size() && vb; ++k)
    for (std::size_t z = 0; z < d * d && vb; ++z) {
      const Vector& w = T.T2.column(z);
      if (apply_on_leg(w, d, 2, 0, Bm[k].rho) != apply_on_leg(w, d, 2, 1, sb[k].rho))
        vb = fail("antipode_covered_B", "(c⊗1)Δ(b)(x⊗1) != (c⊗1)Δ(b)(1⊗S(x))", {k, z / d, z % d});
    }
  rep.add(vc);
  rep.add(vb);

  Echelon bspan(2 * d * d);
  for (const auto& m : Bm.elements()) bspan.insert(flatten(m));
  Check sq = pass("antipode_square_B");
  for (std::size_t k = 0; k < Bm.size() && sq; ++k)
    if (!bspan.contains(flatten(extend_antipode(S, *inv, sb[k])))) sq = fail("antipode_square_B", "S(S(b)) is not in B", {k});
  rep.add(sq);
  return rep;
}

// ε_s(a)b = m(S⊗ι)(Δ(a)(1⊗b)), bε_s'(a) = Σ w2 S⁻¹(w1) for w = (1⊗b)Δ(a),
// bε_t(a) = m(ι⊗S)((b⊗1)Δ(a)), ε_t'(a)b = Σ S⁻¹(w2)w1 for w = Δ(a)(b⊗1).
// In the Hopf case also m(S⊗ι)(Δ(a)(1⊗b)) = ε(a)b = m(ι⊗S)((b⊗1)Δ(a)).
inline Report check_counital_antipode_identities(const Matrix& S, const Functional& eps, const Coproduct& D,
                                                 const CanonicalMapSet& T, const CounitalMaps& cm, bool hopf) {
  Report rep;
  const FinAlgebra& A = D.algebra();
  std::size_t d = A.dim();
  auto inv = inverse(S);
  if (!inv) {
    rep.add(fail("counital_antipode_identities", "S is not invertible"));
    return rep;
  }
  // Σ f(w1) g(w2) or swapped order
  auto contract = [&](const Vector& w, const Matrix* f1, const Matrix* f2, bool swap) {
    VectorBuilder out(d);
    for (const auto& e : w.entries()) {
      Vector x = f1 ? f1->column(e.index / d) : A.basis(e.index / d);
      Vector y = f2 ? f2->column(e.index % d) : A.basis(e.index % d);
      out.add(e.value, swap ? A.multiply(y, x) : A.multiply(x, y));
    }
    return out.finish();
  };
  Check s = pass("eps_s_is_PiR"), sp = pass("eps_s_prime_is_barPiR"), t = pass("eps_t_is_PiL"),
        tp = pass("eps_t_prime_is_barPiL"), h = pass("hopf_antipode_law");
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Vector w1 = T.T1.column(a * d + b), w2 = T.T2.column(b * d + a), w3 = T.T3.column(a * d + b),
             w4 = T.T4.column(b * d + a);
      Vector piR = contract(w1, &S, nullptr, false);
      Vector piL = contract(w2, nullptr, &S, false);
      if (s && cm.eps_s[a].lambda.column(b) != piR) s = fail("eps_s_is_PiR", "ε_s(a)b != Σ S(a(1))a(2)b", {a, b});
      if (sp && cm.eps_s_prime[a].rho.column(b) != contract(w3, &*inv, nullptr, true))
        sp = fail("eps_s_prime_is_barPiR", "bε_s'(a) != Σ b a(2)S⁻¹(a(1))", {a, b});
      if (t && cm.eps_t[a].rho.column(b) != piL) t = fail("eps_t_is_PiL", "bε_t(a) != Σ b a(1)S(a(2))", {a, b});
      if (tp && cm.eps_t_prime[a].lambda.column(b) != contract(w4, nullptr, &*inv, true))
        tp = fail("eps_t_prime_is_barPiL", "ε_t'(a)b != Σ S⁻¹(a(2))a(1)b", {a, b});
      if (hopf && h) {
        Vector rhs = A.basis(b).scaled(eps.coeffs[a]);
        if (piR != rhs || piL != rhs) h = fail("hopf_antipode_law", "m(S⊗ι)Δ(a) != ε(a)1", {a, b});
      }
    }
  for (auto* c : {&s, &sp, &t, &tp}) rep.add(*c);
  if (hopf) rep.add(h);
  return rep;
}

struct Stage {
  std::string name;
  Report report;
  bool passed = true;
  bool skipped = false;
};

struct PipelineOptions {
  std::set<std::string> skip_stages;
  std::optional<std::vector<std::size_t>> left_integral_subset;  // restrict the left integral basis
  std::optional<std::vector<std::size_t>> right_integral_subset;
  std::string stop_after;  // end the run once this stage passes; the verdict stays negative and unset
};

struct WeakHopfResult {
  Functional epsilon;
  Matrix S;
  Matrix R1;
  std::vector<Stage> stages;
  bool positive = false;
  bool hopf_case = false;
  std::string verdict;
  std::string failed_stage;
  std::string failure_detail;
  Witness witness;
  std::optional<Multiplier> E;
  IntegralSpace integrals;

  // all checks of all stages, flattened
  Report report() const {
    Report r;
    for (const auto& s : stages) r.merge(s.report);
    return r;
  }
};

inline const std::vector<std::string>& pipeline_stages() {
  static const std::vector<std::string> names = {
      "associativity",          "nondegenerate",          "idempotent_algebra",   "coproduct_homomorphism",
      "coassociativity",        "fullness",               "canonical_idempotent", "weak_comultiplicativity",
      "separability",           "integrals",              "faithful_integrals",   "invariance",
      "smeared_ranges",         "range_theorems",         "kernel_theorems",      "counit",
      "antipode",               "antipode_generalized_inverse", "antipode_restrictions", "g_maps",
      "weak_multiplicativity",  "counital_antipode_identities"};
  return names;
}

// The Larson-Sweedler checklist in order; the first failed stage aborts.
inline WeakHopfResult full_pipeline(const Coproduct& D, const PipelineOptions& opt = {}) {
  const FinAlgebra& A = D.algebra();
  std::size_t d = A.dim();
  WeakHopfResult res;
  std::optional<CanonicalMapSet> T;
  std::optional<CanonicalIdempotent> ci;
  std::optional<SeparabilityStructure> sep;
  std::vector<Functional> left, right;
  bool stopped = false;

  auto run = [&](const std::string& name, const std::function<void(Report&)>& body) {
    Stage st{name, {}, true, false};
    if (opt.skip_stages.count(name)) {
      st.skipped = true;
      res.stages.push_back(std::move(st));
      return true;
    }
    try {
      body(st.report);
      if (const Check* f = st.report.first_failure()) {
        st.passed = false;
        res.failure_detail = f->name + ": " + f->detail;
        res.witness = f->witness;
      }
    } catch (const StructuralError& e) {
      st.passed = false;
      st.report.add(fail(e.law(), e.what(), e.witness()));
      res.failure_detail = e.what();
      res.witness = e.witness();
    } catch (const std::exception& e) {
      st.passed = false;
      st.report.add(fail(name, e.what()));
      res.failure_detail = e.what();
    }
    res.stages.push_back(std::move(st));
    if (!res.stages.back().passed) {
      res.failed_stage = name;
      res.verdict = "not a regular weak multiplier Hopf algebra";
      return false;
    }
    if (name == opt.stop_after) {
      stopped = true;
      return false;
    }
    return true;
  };
  auto need_T = [&]() -> const CanonicalMapSet& {
    if (!T) T = canonical_maps(D);
    return *T;
  };
  auto need = [&](bool have, const char* what) {
    if (!have) throw std::logic_error(std::string("stage needs ") + what + ", which was skipped");
  };
  auto subset = [](const std::vector<Functional>& all, const std::optional<std::vector<std::size_t>>& idx) {
    if (!idx) return all;
    std::vector<Functional> out;
    for (std::size_t i : *idx)
      if (i < all.size()) out.push_back(all[i]);
    return out;
  };

  bool ok = run("associativity", [&](Report& r) { r.add(check_associativity(A)); }) &&
            run("nondegenerate", [&](Report& r) { r.add(check_nondegenerate(A)); }) &&
            run("idempotent_algebra", [&](Report& r) { r.add(check_idempotent_algebra(A)); }) &&
            run("coproduct_homomorphism",
                [&](Report& r) {
                  r.add(check_coproduct_multipliers(D));
                  if (!r.passed()) return;
                  r.add(check_homomorphism(D));
                  if (!r.passed()) return;
                  r.add(check_regularity(D));
                }) &&
            run("coassociativity", [&](Report& r) { r.merge(check_coassociativity(D, need_T())); }) &&
            run("fullness", [&](Report& r) { r.add(check_fullness(D, need_T())); }) &&
            run("canonical_idempotent",
                [&](Report& r) {
                  ci = find_canonical_idempotent(D);
                  r.add(pass("canonical_idempotent", "rank " + std::to_string(image_basis(ci->E.lambda).dim())));
                  r.add(check_minimality(D, *ci));
                  res.E = ci->E;
                  res.hopf_case = is_hopf_case(D, ci->E);
                  if (res.hopf_case) r.note("Hopf special case: E = 1⊗1");
                }) &&
            run("weak_comultiplicativity",
                [&](Report& r) {
                  need(ci.has_value(), "the canonical idempotent");
                  r.merge(check_weak_comult_unit(D, ci->E));
                }) &&
            run("separability",
                [&](Report& r) {
                  need(ci.has_value(), "the canonical idempotent");
                  sep = analyze_separability(A, ci->E);
                  r.merge(sep->report);
                  if (A.involution()) r.merge(check_involutive(D, *sep));
                }) &&
            run("integrals",
                [&](Report& r) {
                  need(sep.has_value(), "separability");
                  res.integrals.left_basis = solve_left_integrals(D, need_T(), *sep);
                  res.integrals.right_basis = solve_right_integrals(D, need_T(), *sep);
                  left = subset(res.integrals.left_basis, opt.left_integral_subset);
                  right = subset(res.integrals.right_basis, opt.right_integral_subset);
                  r.add(left.empty() ? fail("left_integrals", "no nonzero left integral")
                                     : pass("left_integrals", "dim " + std::to_string(res.integrals.left_basis.size())));
                  r.add(right.empty()
                            ? fail("right_integrals", "no nonzero right integral")
                            : pass("right_integrals", "dim " + std::to_string(res.integrals.right_basis.size())));
                }) &&
            run("faithful_integrals",
                [&](Report& r) {
                  Check l = check_faithful_set(left, A), rt = check_faithful_set(right, A);
                  res.integrals.left_faithful = l.passed;
                  res.integrals.right_faithful = rt.passed;
                  l.name = "faithful_left_integrals";
                  rt.name = "faithful_right_integrals";
                  r.add(l);
                  r.add(rt);
                }) &&
            run("invariance",
                [&](Report& r) {
                  need(sep.has_value(), "separability");
                  r.merge(verify_invariance_identities(D, need_T(), *sep, left, right));
                }) &&
            run("smeared_ranges",
                [&](Report& r) {
                  need(ci.has_value(), "the canonical idempotent");
                  r.merge(verify_smeared_ranges(D, need_T(), ci->E, left, right));
                }) &&
            run("range_theorems",
                [&](Report& r) {
                  need(ci.has_value(), "the canonical idempotent");
                  r.merge(check_range_theorems(need_T(), ci->E));
                }) &&
            run("kernel_theorems",
                [&](Report& r) {
                  need(sep.has_value(), "separability");
                  r.merge(check_kernel_theorems(need_T(), *sep));
                }) &&
            run("counit",
                [&](Report& r) {
                  res.epsilon = construct_counit(D, need_T(), left);
                  r.add(pass("counit", "both counit laws hold on all basis pairs"));
                }) &&
            run("antipode",
                [&](Report& r) {
                  res.S = construct_antipode(D, need_T(), left);
                  r.add(pass("antipode", "consistent, anti-multiplicative, bijective"));
                }) &&
            run("antipode_generalized_inverse",
                [&](Report& r) {
                  need(sep.has_value(), "separability");
                  need(res.epsilon.dim() == d, "the counit");
                  auto g = antipode_via_generalized_inverse(D, need_T(), *sep, res.epsilon);
                  res.R1 = g.R1;
                  if (res.S.cols() == d && g.S != res.S) {
                    std::size_t j = 0;
                    while (j < d && g.S.column(j) == res.S.column(j)) ++j;
                    throw StructuralError("antipode_generalized_inverse", "the two antipode routes disagree", {j});
                  }
                  if (res.S.cols() != d) res.S = g.S;
                  r.add(pass("antipode_routes_agree"));
                }) &&
            run("antipode_restrictions",
                [&](Report& r) {
                  need(sep.has_value(), "separability");
                  r.merge(check_antipode_restrictions(res.S, D, need_T(), *sep));
                }) &&
            run("g_maps",
                [&](Report& r) {
                  need(sep.has_value() && res.R1.cols() == d * d, "separability and R1");
                  GMaps g = g_maps(*sep);
                  r.add(res.R1 * need_T().T1 == g.G1 ? pass("R1T1_is_G1") : fail("R1T1_is_G1", "R1T1(a⊗b) != (a⊗1)F1(1⊗b)"));
                  r.add(need_T().T1 * res.R1 == ci->E.lambda ? pass("T1R1_is_E") : fail("T1R1_is_E", "T1R1 != E(·)"));
                  r.add(g.G1 * g.G1 == g.G1 && g.G2 * g.G2 == g.G2 ? pass("G_idempotent")
                                                                   : fail("G_idempotent", "G1 or G2 is not idempotent"));
                  r.add(need_T().T2 * g.G2 == need_T().T2 ? pass("T2G2_is_T2") : fail("T2G2_is_T2", "T2G2 != T2"));
                }) &&
            run("weak_multiplicativity",
                [&](Report& r) { r.add(check_weak_mult_counit(D, res.epsilon, need_T())); }) &&
            run("counital_antipode_identities", [&](Report& r) {
              need(ci.has_value(), "the canonical idempotent");
              CounitalMaps cm = counital_maps(D, ci->E, res.epsilon);
              r.merge(cm.report);
              r.merge(check_counital_antipode_identities(res.S, res.epsilon, D, need_T(), cm, res.hopf_case));
            });
  if (stopped) return res;
  res.positive = ok;
  if (ok) res.verdict = res.hopf_case ? "Hopf algebra" : "regular weak multiplier Hopf algebra";
  return res;
}

}  // namespace weakhopf
