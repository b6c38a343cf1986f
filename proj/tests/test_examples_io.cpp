#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace weakhopf;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(WEAKHOPF_FIXTURE_DIR) + "/" + name); }

// minimal valid document for C[C2], edited by the parse-error tests
ojson c2_doc() { return ojson::parse(fixture("c2_group.wha")); }

std::string where_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST(Groups, Tables) {
  for (const auto& name : group_names()) {
    FiniteGroup H = make_group(name);
    oracle::GroupTable g = oracle::group_table(name);
    ASSERT_EQ(H.order(), g.n) << name;
    for (std::size_t x = 0; x < g.n; ++x) {
      EXPECT_EQ(H.inv[x], g.inv[x]);
      for (std::size_t y = 0; y < g.n; ++y) EXPECT_EQ(H.mul[x][y], g.mul[x][y]);
    }
  }
  EXPECT_THROW(make_group("S3"), std::invalid_argument);
}

TEST(Groupoid, SingleObjectIsGroupAlgebra) {
  auto ex = oracle::grp(1, "C2");
  EXPECT_EQ(ex.algebra->basis_names(), (std::vector<std::string>{"g1_1.e", "g1_1.a"}));
  EXPECT_EQ(oracle::from_table(*ex.algebra).c, oracle::groupoid_algebra(oracle::transitive(1, "C2")).c);
}

TEST(Groupoid, PairOnTwoObjects) {
  auto ex = oracle::grp(2, "C1");
  EXPECT_EQ(ex.algebra->basis_names(), (std::vector<std::string>{"g1_1", "g1_2", "g2_1", "g2_2"}));
  auto ci = find_canonical_idempotent(ex.coproduct);
  std::size_t g11 = 0, g22 = 3;
  VectorBuilder e(16);
  e.add(g11 * 4 + g11, Scalar(1));
  e.add(g22 * 4 + g22, Scalar(1));
  EXPECT_EQ(ci.E, embed(ex.coproduct.square(), e.finish()));
}

// Two objects with C2 isotropy: 8 arrows, structure constants straight from composition.
TEST(Groupoid, TwoObjectsWithIsotropy) {
  FiniteGroupoid G = make_groupoid({{2, "C2"}});
  EXPECT_EQ(G.size(), 8u);
  EXPECT_TRUE(check_groupoid(G));
  auto ex = groupoid_algebra(G);
  EXPECT_EQ(oracle::from_table(*ex.algebra).c, oracle::groupoid_algebra(oracle::transitive(2, "C2")).c);
  oracle::Transitive T = oracle::transitive(2, "C2");
  for (std::size_t g = 0; g < 8; ++g) {
    EXPECT_EQ(G.inverse[g], T.inverse(g));
    EXPECT_EQ(G.is_unit(g), T.is_unit(g));
  }
}

TEST(Groupoid, DisconnectedComponentsDoNotCompose) {
  FiniteGroupoid G = make_groupoid({{1, "C2"}, {2, "C1"}});
  EXPECT_EQ(G.size(), 6u);
  EXPECT_EQ(G.objects.size(), 3u);
  EXPECT_TRUE(check_groupoid(G));
  EXPECT_FALSE(G.compose[0][2]);
  EXPECT_THROW(make_groupoid({{0, "C1"}}), std::invalid_argument);
}

TEST(FunctionAlgebra, GroupCaseIsHopf) {
  auto ex = oracle::fun(1, "C2");
  auto ci = find_canonical_idempotent(ex.coproduct);
  EXPECT_EQ(ci.E, identity_multiplier(4));
  EXPECT_EQ(ex.epsilon.coeffs, (std::vector<Scalar>{1, 0}));
}

TEST(FunctionAlgebra, PairGroupoidCommutativeWithComposablePairs) {
  auto ex = oracle::fun(2, "C1");
  const FinAlgebra& a = *ex.algebra;
  ASSERT_EQ(a.dim(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(a.product(i, j), a.product(j, i));
  // E = Σ over composable pairs δ_h ⊗ δ_k
  oracle::Transitive G = oracle::transitive(2, "C1");
  VectorBuilder e(16);
  for (std::size_t h = 0; h < 4; ++h)
    for (std::size_t k = 0; k < 4; ++k)
      if (G.composable(h, k)) e.add(h * 4 + k, Scalar(1));
  EXPECT_EQ(find_canonical_idempotent(ex.coproduct).E, embed(ex.coproduct.square(), e.finish()));
}

TEST(FunctionAlgebra, ThreeObjectPairIntegrals) {
  auto ex = oracle::fun(3, "C1");
  EXPECT_EQ(ex.algebra->dim(), 9u);
  auto r = full_pipeline(ex.coproduct);
  ASSERT_TRUE(r.positive) << r.failed_stage;
  oracle::Transitive G = oracle::transitive(3, "C1");
  oracle::Dense left;
  for (const auto& f : r.integrals.left_basis) left.push_back(f.coeffs);
  EXPECT_TRUE(oracle::same_span(left, oracle::integrals(G, true, true)));
  EXPECT_EQ(r.epsilon, ex.epsilon);
  EXPECT_EQ(r.S, ex.S);
}

TEST(RandomGroupoid, TrivialPoolAndDeterminism) {
  FiniteGroupoid one = random_groupoid(0, 1, {"C1"});
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(random_groupoid_on(3, 2, {"C2"}).size(), 8u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FiniteGroupoid a = random_groupoid(seed, 4, {"C1", "C2", "C3", "C4", "V4"});
    FiniteGroupoid b = random_groupoid(seed, 4, {"C1", "C2", "C3", "C4", "V4"});
    EXPECT_EQ(a.size(), b.size());
    std::vector<std::string> la, lb;
    for (const auto& x : a.arrows) la.push_back(x.label);
    for (const auto& x : b.arrows) lb.push_back(x.label);
    EXPECT_EQ(la, lb);
    EXPECT_TRUE(check_groupoid(a));
    EXPECT_EQ(groupoid_algebra(a).algebra->dim(), function_algebra(a).algebra->dim());
  }
  EXPECT_THROW(random_groupoid(0, 0, {"C1"}), std::invalid_argument);
  EXPECT_THROW(random_groupoid_on(0, 2, {}), std::invalid_argument);
}

TEST(Parse, FixturesParse) {
  for (const char* f : {"c2_group.wha", "pair2.wha", "pair2_dual.wha", "broken.wha"}) {
    EXPECT_NO_THROW(parse(fixture(f))) << f;
  }
  Presentation p = parse(fixture("pair2.wha"));
  EXPECT_EQ(p.algebra->dim(), 4u);
  EXPECT_EQ(p.coproduct.deltas(), oracle::grp(2, "C1").coproduct.deltas());
}

TEST(Parse, BrokenAssociativityIsStructuralError) {
  try {
    parse(fixture("broken_assoc.wha"));
    FAIL() << "expected a structural error";
  } catch (const StructuralError& e) {
    EXPECT_EQ(e.law(), "associativity");
    EXPECT_EQ(e.witness(), (Witness{1, 2, 1}));
  }
  EXPECT_NO_THROW(parse_unchecked(fixture("broken_assoc.wha")));
}

TEST(Parse, MalformedJsonReportsLine) {
  std::string text = "{\n  \"dim\": 2,\n  \"basis_names\": [\"1\" \"g\"]\n}\n";
  std::string w = where_of(text);
  EXPECT_EQ(w, "line 3");
}

TEST(Parse, FieldErrors) {
  {
    ojson j = c2_doc();
    j["extra"] = 1;
    EXPECT_EQ(where_of(j.dump()), "extra");
  }
  {
    ojson j = c2_doc();
    j.erase("coproduct");
    EXPECT_EQ(where_of(j.dump()), "coproduct");
  }
  {
    ojson j = c2_doc();
    j["structure_constants"].push_back(ojson::array({0, 0, 0, "1"}));
    EXPECT_EQ(where_of(j.dump()), "structure_constants");
  }
  {
    ojson j = c2_doc();
    j["structure_constants"][0][3] = "1/0";
    EXPECT_EQ(where_of(j.dump()), "structure_constants[0][3]");
  }
  {
    ojson j = c2_doc();
    j["structure_constants"][0][3] = 1;
    EXPECT_EQ(where_of(j.dump()), "structure_constants[0][3]");
  }
  {
    ojson j = c2_doc();
    j["structure_constants"][0][0] = 5;
    EXPECT_EQ(where_of(j.dump()), "structure_constants[0][0]");
  }
  {
    ojson j = c2_doc();
    j["dim"] = 0;
    EXPECT_EQ(where_of(j.dump()), "dim");
  }
  {
    ojson j = c2_doc();
    j["basis_names"] = ojson::array({"1"});
    EXPECT_EQ(where_of(j.dump()), "basis_names");
  }
  {
    ojson j = c2_doc();
    j["coproduct"][1]["lambda"].push_back(j["coproduct"][1]["lambda"][0]);
    EXPECT_EQ(where_of(j.dump()), "coproduct[1].lambda");
  }
}

TEST(Parse, ComplexScalarsAccepted) {
  ojson j = c2_doc();
  j["counit"] = ojson::array({"1", "1/2+3/4*i"});
  Presentation p = parse(j.dump());
  ASSERT_TRUE(p.counit);
  EXPECT_EQ(p.counit->coeffs[1], Scalar(Rational(1, 2), Rational(3, 4)));
}

TEST(Serialize, RoundTripFixturesByteForByte) {
  for (const char* f : {"c2_group.wha", "pair2.wha", "pair2_dual.wha", "broken.wha", "broken_assoc.wha"}) {
    std::string text = fixture(f);
    Presentation p = parse_unchecked(text);
    EXPECT_EQ(serialize(p), text) << f;
    EXPECT_EQ(parse_unchecked(serialize(p)), p) << f;
  }
}

TEST(Serialize, GeneratedDualRecordsGroupoid) {
  FiniteGroupoid G = make_groupoid({{2, "C2"}});
  Presentation g = presentation_of(groupoid_algebra(G), groupoid_metadata(G, "groupoid_algebra"), true);
  Presentation back = parse(serialize(g));
  EXPECT_EQ(back, g);
  FiniteGroupoid H = groupoid_from_metadata(back.metadata);
  EXPECT_EQ(H.size(), G.size());
  EXPECT_THROW(groupoid_from_metadata(ojson()), ParseError);
}

TEST(Reports, TextAndJsonAgreeOnVerdict) {
  Presentation p = parse(fixture("pair2.wha"));
  auto r = full_pipeline(p.coproduct);
  std::string text = result_text(r, p);
  ojson j = result_json(r, p);
  EXPECT_NE(text.find("regular weak multiplier Hopf algebra"), std::string::npos);
  EXPECT_EQ(j["verdict"], "positive");
  EXPECT_EQ(j["structure"], "regular weak multiplier Hopf algebra");
  EXPECT_EQ(j["integrals"]["left_dim"], 2);
  EXPECT_EQ(result_text(full_pipeline(p.coproduct), p), text);
}
