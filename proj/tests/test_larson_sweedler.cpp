#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace weakhopf;

namespace {

struct Solved {
  Example ex;
  CanonicalMapSet T;
  SeparabilityStructure sep;
  IntegralSpace space;
};

Solved solve(Example ex) {
  auto T = canonical_maps(ex.coproduct);
  auto sep = analyze_separability(*ex.algebra, ex.coproduct.of(*ex.algebra->unit()));
  auto space = solve_integrals(ex.coproduct, T, sep);
  return {std::move(ex), std::move(T), std::move(sep), std::move(space)};
}

// pair groupoid on two objects with Δ(g1_2) replaced by 0
Coproduct pair2_without_g12() {
  auto ex = oracle::grp(2, "C1");
  std::size_t g12 = oracle::index_of(*ex.algebra, "g1_2");
  std::vector<Multiplier> deltas = ex.coproduct.deltas();
  deltas[g12] = zero_multiplier(16);
  return Coproduct(ex.algebra, deltas);
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(RangeTheorems, HopfIsEverything) {
  auto ex = oracle::grp(1, "C2");
  Report r = check_range_theorems(canonical_maps(ex.coproduct), identity_multiplier(4));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(image_basis(canonical_maps(ex.coproduct).T1).dim(), 4u);
}

TEST(RangeTheorems, PairGroupoid) {
  auto s = solve(oracle::grp(2, "C1"));
  Report r = check_range_theorems(s.T, s.sep.E);
  EXPECT_TRUE(r.passed());
  for (const char* n : {"range_T1", "range_T2", "range_T3", "range_T4"}) EXPECT_EQ(find(r, n)->detail, "dim 8");
}

TEST(RangeTheorems, BrokenCoproductMissesDirection) {
  auto ex = oracle::grp(2, "C1");
  Multiplier E = ex.coproduct.of(*ex.algebra->unit());
  Report r = check_range_theorems(canonical_maps(pair2_without_g12()), E);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_failure()->name, "range_T1");
  EXPECT_EQ(r.first_failure()->witness.size(), 2u);
}

TEST(KernelTheorems, HopfAndPair) {
  auto c2 = solve(oracle::grp(1, "C2"));
  EXPECT_EQ(kernel_basis(c2.T.T1).dim(), 0u);
  EXPECT_TRUE(check_kernel_theorems(c2.T, c2.sep).passed());

  auto p = solve(oracle::grp(2, "C1"));
  EXPECT_EQ(kernel_basis(p.T.T1).dim(), 8u);
  Report r = check_kernel_theorems(p.T, p.sep);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(find(r, "rank_nullity_T1")->detail, "8 + 8");
}

TEST(KernelTheorems, SkewedNonTracial) {
  auto [a, D] = skewed_weak_hopf();
  auto T = canonical_maps(D);
  auto sep = analyze_separability(*a, find_canonical_idempotent(D).E);
  EXPECT_TRUE(check_kernel_theorems(T, sep).passed());
  EXPECT_TRUE(check_range_theorems(T, sep.E).passed());
}

TEST(Counit, Constructed) {
  for (auto ex : {oracle::grp(1, "C2"), oracle::grp(2, "C1"), oracle::fun(1, "C2"), oracle::fun(2, "C2")}) {
    auto s = solve(ex);
    EXPECT_EQ(construct_counit(s.ex.coproduct, s.T, s.space.left_basis), s.ex.epsilon);
  }
  auto c2 = solve(oracle::grp(1, "C2"));
  EXPECT_EQ(construct_counit(c2.ex.coproduct, c2.T, c2.space.left_basis).coeffs, (std::vector<Scalar>{1, 1}));
  auto f = solve(oracle::fun(1, "C2"));
  EXPECT_EQ(construct_counit(f.ex.coproduct, f.T, f.space.left_basis).coeffs, (std::vector<Scalar>{1, 0}));
}

TEST(Antipode, Constructed) {
  auto c2 = solve(oracle::grp(1, "C2"));
  EXPECT_EQ(construct_antipode(c2.ex.coproduct, c2.T, c2.space.left_basis), Matrix::identity(2));
  auto p = solve(oracle::grp(2, "C1"));
  Matrix S = construct_antipode(p.ex.coproduct, p.T, p.space.left_basis);
  const FinAlgebra& a = *p.ex.algebra;
  EXPECT_EQ(S.apply(oracle::basis_vec(a, "g1_2")), oracle::basis_vec(a, "g2_1"));
  EXPECT_EQ(S.apply(oracle::basis_vec(a, "g1_1")), oracle::basis_vec(a, "g1_1"));
  auto f = solve(oracle::fun(1, "C2"));
  EXPECT_EQ(construct_antipode(f.ex.coproduct, f.T, f.space.left_basis), Matrix::identity(2));
}

TEST(Antipode, GeneralizedInverseRouteAgrees) {
  for (auto ex : {oracle::grp(1, "C3"), oracle::grp(2, "C1"), oracle::grp(2, "C2"), oracle::fun(2, "C1")}) {
    auto s = solve(ex);
    Matrix S = construct_antipode(s.ex.coproduct, s.T, s.space.left_basis);
    auto route = antipode_via_generalized_inverse(s.ex.coproduct, s.T, s.sep, s.ex.epsilon);
    EXPECT_EQ(route.S, S);
    EXPECT_EQ(route.S, s.ex.S);
    GMaps g = g_maps(s.sep);
    EXPECT_EQ(route.R1 * s.T.T1, g.G1);
    EXPECT_EQ(s.T.T1 * route.R1, s.sep.E.lambda);
  }
}

TEST(Antipode, HopfRouteIsInverseOfT1) {
  auto s = solve(oracle::grp(1, "C3"));
  auto route = antipode_via_generalized_inverse(s.ex.coproduct, s.T, s.sep, s.ex.epsilon);
  EXPECT_EQ(route.R1, *inverse(s.T.T1));
}

TEST(Antipode, Restrictions) {
  for (auto ex : {oracle::grp(2, "C1"), oracle::grp(1, "C3"), oracle::fun(2, "C2")}) {
    auto s = solve(ex);
    Report r = check_antipode_restrictions(s.ex.S, s.ex.coproduct, s.T, s.sep);
    EXPECT_TRUE(r.passed()) << r.first_failure()->name;
  }
  auto p = solve(oracle::grp(2, "C1"));
  EXPECT_FALSE(check_antipode_restrictions(Matrix::identity(4).scaled(Scalar(2)), p.ex.coproduct, p.T, p.sep).passed());
}

TEST(CounitalAntipode, Identities) {
  for (auto ex : {oracle::grp(2, "C1"), oracle::grp(1, "C2"), oracle::fun(1, "C2"), oracle::fun(2, "C2")}) {
    auto s = solve(ex);
    std::size_t d = s.ex.algebra->dim();
    auto cm = counital_maps(s.ex.coproduct, s.sep.E, s.ex.epsilon);
    bool hopf = is_hopf_case(s.ex.coproduct, s.sep.E);
    EXPECT_EQ(hopf, s.sep.E == identity_multiplier(d * d));
    Report r = check_counital_antipode_identities(s.ex.S, s.ex.epsilon, s.ex.coproduct, s.T, cm, hopf);
    EXPECT_TRUE(r.passed()) << r.first_failure()->name;
    EXPECT_EQ(find(r, "hopf_antipode_law") != nullptr, hopf);
  }
}

// m(S⊗ι)(Δ(g12)(1⊗g22)) = g21 g12 g22 = g22 = ε_s(g12) g22
TEST(CounitalAntipode, PairGroupoidSourceMap) {
  auto s = solve(oracle::grp(2, "C1"));
  const FinAlgebra& a = *s.ex.algebra;
  auto cm = counital_maps(s.ex.coproduct, s.sep.E, s.ex.epsilon);
  std::size_t g12 = oracle::index_of(a, "g1_2"), g22 = oracle::index_of(a, "g2_2");
  EXPECT_EQ(cm.eps_s[g12].lambda.apply(a.basis(g22)), a.basis(g22));
  EXPECT_TRUE(cm.eps_s[g12].lambda.apply(oracle::basis_vec(a, "g1_1")).is_zero());
}

TEST(Pipeline, PairGroupoidPositive) {
  auto ex = oracle::grp(2, "C1");
  auto r = full_pipeline(ex.coproduct);
  EXPECT_TRUE(r.positive) << r.failed_stage << ": " << r.failure_detail;
  EXPECT_EQ(r.verdict, "regular weak multiplier Hopf algebra");
  EXPECT_FALSE(r.hopf_case);
  EXPECT_EQ(r.epsilon, ex.epsilon);
  EXPECT_EQ(r.S, ex.S);
  EXPECT_EQ(r.stages.size(), pipeline_stages().size());
  for (std::size_t k = 0; k < r.stages.size(); ++k) {
    EXPECT_EQ(r.stages[k].name, pipeline_stages()[k]);
    EXPECT_TRUE(r.stages[k].passed);
  }
  EXPECT_TRUE(r.report().passed());
}

TEST(Pipeline, GroupIsHopf) {
  auto ex = oracle::grp(1, "C2");
  auto r = full_pipeline(ex.coproduct);
  EXPECT_TRUE(r.positive);
  EXPECT_TRUE(r.hopf_case);
  EXPECT_EQ(r.verdict, "Hopf algebra");
  EXPECT_EQ(r.epsilon.coeffs, (std::vector<Scalar>{1, 1}));
  EXPECT_EQ(r.S, Matrix::identity(2));
}

TEST(Pipeline, SkewedWeakHopf) {
  auto [a, D] = skewed_weak_hopf();
  auto r = full_pipeline(D);
  ASSERT_TRUE(r.positive) << r.failed_stage << ": " << r.failure_detail;
  EXPECT_FALSE(r.hopf_case);
  EXPECT_EQ(r.integrals.left_basis.size(), 4u);
  EXPECT_FALSE(r.report().notes.empty());
}

TEST(Pipeline, ZeroedDeltaAbortsAtHomomorphism) {
  auto r = full_pipeline(pair2_without_g12());
  EXPECT_FALSE(r.positive);
  EXPECT_EQ(r.failed_stage, "coproduct_homomorphism");
  EXPECT_FALSE(r.witness.empty());
  EXPECT_EQ(r.stages.back().name, "coproduct_homomorphism");
}

TEST(Pipeline, StopAfter) {
  PipelineOptions opt;
  opt.stop_after = "faithful_integrals";
  auto r = full_pipeline(oracle::grp(2, "C1").coproduct, opt);
  EXPECT_FALSE(r.positive);
  EXPECT_TRUE(r.failed_stage.empty());
  EXPECT_EQ(r.stages.back().name, "faithful_integrals");
  EXPECT_EQ(r.integrals.left_basis.size(), 2u);
}

TEST(Pipeline, NegativeFixtures) {
  {
    auto [a, D] = pair2_broken_associativity();
    auto r = full_pipeline(D);
    EXPECT_EQ(r.failed_stage, "associativity");
    EXPECT_EQ(r.witness, (Witness{1, 2, 1}));
  }
  {
    auto [a, D] = c2_broken_coassociativity();
    EXPECT_EQ(full_pipeline(D).failed_stage, "coassociativity");
  }
  {
    auto [a, D] = c2_non_full();
    EXPECT_EQ(full_pipeline(D).failed_stage, "fullness");
  }
  {
    PipelineOptions opt;
    opt.left_integral_subset = std::vector<std::size_t>{0};
    auto r = full_pipeline(oracle::grp(2, "C1").coproduct, opt);
    EXPECT_EQ(r.failed_stage, "faithful_integrals");
    EXPECT_FALSE(r.witness.empty());
  }
  {
    auto [a, D] = c2_broken_coassociativity();
    PipelineOptions opt;
    opt.skip_stages = {"coproduct_homomorphism", "coassociativity", "fullness", "invariance",
                       "smeared_ranges", "range_theorems", "kernel_theorems"};
    auto r = full_pipeline(D, opt);
    EXPECT_EQ(r.failed_stage, "counit");
    EXPECT_FALSE(r.witness.empty());
  }
}
