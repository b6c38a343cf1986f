#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace weakhopf;

namespace {

constexpr int kRounds = 60;

mpq_class q(const Rational& r) { return r.to_mpq(); }

// The same algebra and coproduct in a relabelled basis: old e_i becomes new e_perm[i].
Example relabel(const Example& ex, const std::vector<std::size_t>& perm) {
  const FinAlgebra& a = *ex.algebra;
  std::size_t d = a.dim();
  std::vector<std::string> names(d);
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
  for (std::size_t i = 0; i < d; ++i) {
    names[perm[i]] = a.basis_names()[i];
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& e : a.product(i, j).entries()) c.emplace_back(perm[i], perm[j], perm[e.index], e.value);
  }
  auto b = std::make_shared<const FinAlgebra>(FinAlgebra::from_constants(names, c));
  std::vector<std::size_t> pp(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) pp[i * d + j] = perm[i] * d + perm[j];
  std::vector<Multiplier> deltas(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Multiplier& m = ex.coproduct.delta(i);
    deltas[perm[i]] = {conjugate_by_permutation(m.lambda, pp), conjugate_by_permutation(m.rho, pp)};
  }
  std::vector<Scalar> eps(d);
  for (std::size_t i = 0; i < d; ++i) eps[perm[i]] = ex.epsilon.coeffs[i];
  return {b, Coproduct(b, deltas), Functional{eps}, conjugate_by_permutation(ex.S, perm)};
}

// closed forms read off the arrows: ε and S for both duals
Functional closed_counit(const FiniteGroupoid& G, bool functions) {
  std::vector<Scalar> e(G.size(), Scalar(functions ? 0 : 1));
  if (functions)
    for (std::size_t u : G.units) e[u] = 1;
  return {e};
}

Matrix closed_antipode(const FiniteGroupoid& G) {
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t;
  for (std::size_t g = 0; g < G.size(); ++g) t.emplace_back(G.inverse[g], g, Scalar(1));
  return Matrix::from_triplets(G.size(), G.size(), t);
}

}  // namespace

TEST(RationalProperties, FieldAxiomsAgainstGmp) {
  oracle::Gen gen(11);
  for (int round = 0; round < 500; ++round) {
    Rational a = gen.wide_rational(), b = gen.wide_rational(), c = gen.wide_rational();
    EXPECT_EQ(q(a + b), q(a) + q(b));
    EXPECT_EQ(q(a - b), q(a) - q(b));
    EXPECT_EQ(q(a * b), q(a) * q(b));
    if (!b.is_zero()) {
      EXPECT_EQ(q(a / b), q(a) / q(b));
    }
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(Rational::parse(a.str()), a);
    EXPECT_EQ(a < b, q(a) < q(b));
  }
}

TEST(ScalarProperties, GaussianFieldAxioms) {
  oracle::Gen gen(12);
  for (int round = 0; round < 300; ++round) {
    Scalar a = gen.scalar(true), b = gen.scalar(true), c = gen.scalar(true);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
    EXPECT_EQ(Scalar::parse(a.str()), a);
  }
}

TEST(LinalgProperties, RankMatchesDenseOracleAndTranspose) {
  oracle::Gen gen(21);
  for (int round = 0; round < kRounds; ++round) {
    std::size_t r = 1 + gen.below(7), c = 1 + gen.below(7), k = gen.below(5);
    Matrix m = gen.coin() ? gen.low_rank(r, c, k) : gen.matrix(r, c, 40);
    std::size_t rk = rank(m);
    EXPECT_EQ(rk, oracle::rank(oracle::dense(m)));
    EXPECT_EQ(rk, rank(m.transpose()));
    Subspace ker = kernel_basis(m);
    EXPECT_EQ(rk + ker.dim(), c);
    for (const auto& v : ker.basis()) EXPECT_TRUE(m.apply(v).is_zero());
    EXPECT_EQ(ker.dim(), oracle::nullspace(oracle::dense(m), c).size());
  }
}

TEST(LinalgProperties, SolveConsistency) {
  oracle::Gen gen(22);
  for (int round = 0; round < kRounds; ++round) {
    std::size_t r = 1 + gen.below(6), c = 1 + gen.below(6);
    Matrix m = gen.low_rank(r, c, 1 + gen.below(4));
    Vector x = gen.vector(c);
    auto s = solve_linear(m, m.apply(x));
    ASSERT_TRUE(s.solution);
    EXPECT_EQ(m.apply(*s.solution), m.apply(x));
    EXPECT_TRUE(s.kernel.contains(x - *s.solution));
    Vector b = gen.vector(r, 80);
    auto t = solve_linear(m, b);
    EXPECT_EQ(t.solution.has_value(), image_basis(m).contains(b));
  }
}

TEST(LinalgProperties, InverseOfInvertible) {
  oracle::Gen gen(23);
  for (int round = 0; round < kRounds; ++round) {
    std::size_t n = 1 + gen.below(7);
    Matrix m = gen.invertible(n);
    auto inv = inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_EQ(m * *inv, Matrix::identity(n));
    EXPECT_EQ(*inv * m, Matrix::identity(n));
  }
  EXPECT_FALSE(inverse(gen.low_rank(4, 4, 2)));
}

// P = projection onto a random complement W of ker T along ker T.
TEST(LinalgProperties, RestrictedInverseLaws) {
  oracle::Gen gen(24);
  int exercised = 0;
  for (int round = 0; round < kRounds; ++round) {
    std::size_t n = 2 + gen.below(5);
    Matrix t = gen.low_rank(n, n, 1 + gen.below(n));
    Subspace k = kernel_basis(t);
    std::size_t r = n - k.dim();
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < r; ++i) cols.push_back(gen.vector(n, 90));
    for (const auto& v : k.basis()) cols.push_back(v);
    Matrix basis = Matrix::from_columns(n, cols);
    auto binv = inverse(basis);
    if (!binv) continue;
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> diag;
    for (std::size_t i = 0; i < r; ++i) diag.emplace_back(i, i, Scalar(1));
    Matrix p = basis * Matrix::from_triplets(n, n, diag) * *binv;
    Matrix rinv = restricted_inverse(t, k, p);
    EXPECT_EQ(rinv * t, p);
    EXPECT_EQ(t * rinv * t, t);
    ++exercised;
  }
  EXPECT_GT(exercised, kRounds / 2);
}

// Random groupoids and their duals: positive verdict, ε and S equal the closed forms.
TEST(PipelineProperties, RandomGroupoidsArePositive) {
  oracle::Gen gen(31);
  for (int round = 0; round < 12; ++round) {
    FiniteGroupoid G = make_groupoid(gen.groupoid(3, 12));
    for (bool functions : {false, true}) {
      Example ex = functions ? function_algebra(G) : groupoid_algebra(G);
      auto r = full_pipeline(ex.coproduct);
      ASSERT_TRUE(r.positive) << round << " " << functions << " " << r.failed_stage << ": " << r.failure_detail;
      EXPECT_EQ(r.epsilon, closed_counit(G, functions));
      EXPECT_EQ(r.S, closed_antipode(G));
      EXPECT_EQ(r.integrals.left_basis.size(), r.integrals.right_basis.size());
    }
  }
}

TEST(PipelineProperties, BasisPermutationInvariance) {
  oracle::Gen gen(32);
  for (int round = 0; round < 8; ++round) {
    FiniteGroupoid G = make_groupoid(gen.groupoid(3, 10));
    Example ex = gen.coin() ? function_algebra(G) : groupoid_algebra(G);
    auto perm = gen.permutation(ex.algebra->dim());
    Example moved = relabel(ex, perm);
    auto a = full_pipeline(ex.coproduct);
    auto b = full_pipeline(moved.coproduct);
    ASSERT_TRUE(a.positive);
    ASSERT_TRUE(b.positive) << b.failed_stage;
    EXPECT_EQ(b.epsilon, moved.epsilon);
    EXPECT_EQ(b.S, conjugate_by_permutation(a.S, perm));
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.integrals.left_basis.size(), b.integrals.left_basis.size());
  }
}

TEST(PipelineProperties, DoubledCoproductIsNotHomomorphism) {
  oracle::Gen gen(33);
  for (int round = 0; round < 6; ++round) {
    FiniteGroupoid G = make_groupoid(gen.groupoid(3, 10));
    Example ex = gen.coin() ? function_algebra(G) : groupoid_algebra(G);
    std::vector<Multiplier> twice;
    for (const auto& m : ex.coproduct.deltas())
      twice.push_back({m.lambda.scaled(Scalar(2)), m.rho.scaled(Scalar(2))});
    auto r = full_pipeline(Coproduct(ex.algebra, twice));
    EXPECT_FALSE(r.positive);
    EXPECT_EQ(r.failed_stage, "coproduct_homomorphism");
  }
}

TEST(IoProperties, SerializeRoundTrip) {
  oracle::Gen gen(41);
  for (int round = 0; round < 10; ++round) {
    FiniteGroupoid G = make_groupoid(gen.groupoid(3, 12));
    bool functions = gen.coin();
    Example ex = functions ? function_algebra(G) : groupoid_algebra(G);
    Presentation p = presentation_of(ex, groupoid_metadata(G, functions ? "function_algebra" : "groupoid_algebra"));
    std::vector<Scalar> c(ex.algebra->dim());
    for (auto& s : c) s = gen.scalar(true);
    p.counit = Functional{c};
    std::string text = serialize(p);
    Presentation back = parse_unchecked(text);
    EXPECT_EQ(back, p);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(IoProperties, ReportsAreDeterministic) {
  oracle::Gen gen(42);
  for (int round = 0; round < 4; ++round) {
    FiniteGroupoid G = make_groupoid(gen.groupoid(2, 8));
    Example ex = groupoid_algebra(G);
    Presentation p = presentation_of(ex, groupoid_metadata(G, "groupoid_algebra"));
    Presentation p2 = parse(serialize(p));
    auto r1 = full_pipeline(p.coproduct);
    auto r2 = full_pipeline(p2.coproduct);
    EXPECT_EQ(result_text(r1, p), result_text(r2, p2));
    EXPECT_EQ(result_json(r1, p).dump(2), result_json(r2, p2).dump(2));
  }
}
