#pragma once

#include <memory>
#include <optional>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakhopf/coproduct.hpp"
#include "weakhopf/separability.hpp"

namespace weakhopf {

struct FiniteGroup {
  std::string name;
  std::vector<std::string> elements;  // index 0 is the identity
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::size_t> inv;
  std::size_t order() const { return elements.size(); }
};

inline const std::vector<std::string>& group_names() {
  static const std::vector<std::string> g = {"C1", "C2", "C3", "C4", "V4"};
  return g;
}

inline FiniteGroup make_group(const std::string& name) {
  FiniteGroup g;
  g.name = name;
  if (name == "V4") {
    g.elements = {"e", "a", "b", "ab"};
    g.mul.assign(4, std::vector<std::size_t>(4));
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 4; ++y) g.mul[x][y] = x ^ y;
    g.inv = {0, 1, 2, 3};
    return g;
  }
  if (name.size() != 2 || name[0] != 'C' || name[1] < '1' || name[1] > '4')
    throw std::invalid_argument("unknown group '" + name + "' (expected C1, C2, C3, C4 or V4)");
  std::size_t n = static_cast<std::size_t>(name[1] - '0');
  for (std::size_t k = 0; k < n; ++k) g.elements.push_back(k == 0 ? "e" : k == 1 ? "a" : "a" + std::to_string(k));
  g.mul.assign(n, std::vector<std::size_t>(n));
  g.inv.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) g.mul[x][y] = (x + y) % n;
    g.inv[x] = (n - x) % n;
  }
  return g;
}

// A connected piece: the pair groupoid on `objects` objects times a group.
struct GroupoidComponent {
  std::size_t objects = 1;
  std::string group = "C1";
  friend bool operator==(const GroupoidComponent&, const GroupoidComponent&) = default;
};

struct Arrow {
  std::size_t source, target;
  std::string label;
};

// Arrow g with target t and source s composes as f∘g when source(f) = target(g).
struct FiniteGroupoid {
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::vector<std::optional<std::size_t>>> compose;
  std::vector<std::size_t> inverse;
  std::vector<std::size_t> units;  // per object
  std::vector<GroupoidComponent> components;

  std::size_t size() const { return arrows.size(); }
  bool is_unit(std::size_t g) const {
    for (auto u : units)
      if (u == g) return true;
    return false;
  }
};

inline FiniteGroupoid make_groupoid(const std::vector<GroupoidComponent>& comps) {
  FiniteGroupoid G;
  G.components = comps;
  struct Tag {
    std::size_t comp, t, s, h;
  };
  std::vector<Tag> tags;
  std::vector<FiniteGroup> groups;
  std::size_t base = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].objects == 0) throw std::invalid_argument("groupoid component with no objects");
    groups.push_back(make_group(comps[c].group));
    const FiniteGroup& H = groups.back();
    std::size_t k = comps[c].objects;
    for (std::size_t o = 0; o < k; ++o) G.objects.push_back("x" + std::to_string(base + o + 1));
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t s = 0; s < k; ++s)
        for (std::size_t h = 0; h < H.order(); ++h) {
          std::string label = "g" + std::to_string(base + t + 1) + "_" + std::to_string(base + s + 1);
          if (H.order() > 1) label += "." + H.elements[h];
          G.arrows.push_back({base + s, base + t, label});
          tags.push_back({c, base + t, base + s, h});
        }
    base += k;
  }
  std::size_t n = G.arrows.size();
  auto find = [&](std::size_t comp, std::size_t t, std::size_t s, std::size_t h) {
    for (std::size_t i = 0; i < n; ++i)
      if (tags[i].comp == comp && tags[i].t == t && tags[i].s == s && tags[i].h == h) return i;
    throw std::logic_error("groupoid arrow lookup failed");
  };
  G.compose.assign(n, std::vector<std::optional<std::size_t>>(n));
  G.inverse.resize(n);
  G.units.resize(G.objects.size());
  for (std::size_t f = 0; f < n; ++f) {
    const Tag& a = tags[f];
    const FiniteGroup& H = groups[a.comp];
    G.inverse[f] = find(a.comp, a.s, a.t, H.inv[a.h]);
    if (a.t == a.s && a.h == 0) G.units[a.t] = f;
    for (std::size_t g = 0; g < n; ++g) {
      const Tag& b = tags[g];
      if (b.comp == a.comp && a.s == b.t) G.compose[f][g] = find(a.comp, a.t, b.s, H.mul[a.h][b.h]);
    }
  }
  return G;
}

// Composition defined iff endpoints match, associativity, unit and inverse laws.
inline Check check_groupoid(const FiniteGroupoid& G) {
  std::size_t n = G.size();
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      bool match = G.arrows[f].source == G.arrows[g].target;
      if (match != G.compose[f][g].has_value()) return fail("groupoid", "composition domain mismatch", {f, g});
      if (match) {
        std::size_t fg = *G.compose[f][g];
        if (G.arrows[fg].source != G.arrows[g].source || G.arrows[fg].target != G.arrows[f].target)
          return fail("groupoid", "composite has wrong endpoints", {f, g});
        for (std::size_t h = 0; h < n; ++h)
          if (G.arrows[g].source == G.arrows[h].target && G.compose[fg][h] != G.compose[f][*G.compose[g][h]])
            return fail("groupoid", "composition is not associative", {f, g, h});
      }
    }
  for (std::size_t f = 0; f < n; ++f) {
    const Arrow& a = G.arrows[f];
    if (G.compose[G.units[a.target]][f] != f || G.compose[f][G.units[a.source]] != f)
      return fail("groupoid", "unit law fails", {f});
    if (G.compose[f][G.inverse[f]] != G.units[a.target] || G.compose[G.inverse[f]][f] != G.units[a.source])
      return fail("groupoid", "inverse law fails", {f});
  }
  return pass("groupoid");
}

// Presentation together with closed-form oracles for the counit and antipode.
struct Example {
  std::shared_ptr<const FinAlgebra> algebra;
  Coproduct coproduct;
  Functional epsilon;
  Matrix S;
};

namespace detail {
inline Matrix permutation_matrix(const std::vector<std::size_t>& p) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < p.size(); ++i) cols.push_back(Vector::unit(p.size(), p[i]));
  return Matrix::from_columns(p.size(), std::move(cols));
}
inline std::vector<std::string> arrow_labels(const FiniteGroupoid& G) {
  std::vector<std::string> v;
  for (const auto& a : G.arrows) v.push_back(a.label);
  return v;
}
}  // namespace detail

// Basis = arrows, product = composition or 0, Δ(g) = g⊗g, ε ≡ 1, S(g) = g⁻¹.
inline Example groupoid_algebra(const FiniteGroupoid& G) {
  std::size_t n = G.size();
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g)
      if (G.compose[f][g]) c.emplace_back(f, g, *G.compose[f][g], Scalar(1));
  auto a = std::make_shared<const FinAlgebra>(FinAlgebra::from_constants(detail::arrow_labels(G), c));
  std::vector<Vector> images;
  for (std::size_t g = 0; g < n; ++g) images.push_back(Vector::unit(n * n, g * n + g));
  Coproduct D = Coproduct::from_elements(a, images);
  return {a, D, Functional{std::vector<Scalar>(n, Scalar(1))}, detail::permutation_matrix(G.inverse)};
}

// Point functions δ_g with pointwise product, Δ(δ_g) = Σ_{h∘k=g} δ_h⊗δ_k,
// ε(f) = Σ_units f(u), S(f) = f∘inverse.
inline Example function_algebra(const FiniteGroupoid& G) {
  std::size_t n = G.size();
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
  for (std::size_t g = 0; g < n; ++g) c.emplace_back(g, g, g, Scalar(1));
  std::vector<std::string> names;
  for (const auto& a : G.arrows) names.push_back("d(" + a.label + ")");
  auto a = std::make_shared<const FinAlgebra>(FinAlgebra::from_constants(names, c));
  std::vector<std::vector<Entry>> raw(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k)
      if (G.compose[h][k]) raw[*G.compose[h][k]].push_back({h * n + k, Scalar(1)});
  std::vector<Vector> images;
  for (auto& r : raw) images.push_back(Vector::from_entries(n * n, std::move(r)));
  Coproduct D = Coproduct::from_elements(a, images);
  Functional eps{std::vector<Scalar>(n)};
  for (auto u : G.units) eps.coeffs[u] = 1;
  return {a, D, eps, detail::permutation_matrix(G.inverse)};
}

namespace detail {

// Reduction is done by hand so the result does not depend on the standard
// library's distributions.
inline FiniteGroupoid split_objects(std::mt19937_64& rng, std::size_t total, const std::vector<std::string>& pool) {
  if (pool.empty()) throw std::invalid_argument("empty group pool");
  for (const auto& g : pool) make_group(g);
  std::vector<GroupoidComponent> comps;
  while (total > 0) {
    std::size_t k = 1 + rng() % total;
    comps.push_back({k, pool[rng() % pool.size()]});
    total -= k;
  }
  return make_groupoid(comps);
}

}  // namespace detail

// Exactly `objects` objects, split into components whose sizes and groups are
// drawn from the seed.
inline FiniteGroupoid random_groupoid_on(std::uint64_t seed, std::size_t objects, const std::vector<std::string>& pool) {
  if (objects == 0 || objects > 4) throw std::invalid_argument("object count must be in 1..4");
  std::mt19937_64 rng(seed);
  return detail::split_objects(rng, objects, pool);
}

// Total object count drawn in 1..max_objects, then split as above.
inline FiniteGroupoid random_groupoid(std::uint64_t seed, std::size_t max_objects, const std::vector<std::string>& pool) {
  if (max_objects == 0 || max_objects > 4) throw std::invalid_argument("max_objects must be in 1..4");
  std::mt19937_64 rng(seed);
  std::size_t total = 1 + rng() % max_objects;
  return detail::split_objects(rng, total, pool);
}

namespace detail {

inline std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> matrix_unit_constants(std::size_t m,
                                                                                                   bool op) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          // e_ij e_kl = δ_jk e_il; in the opposite algebra e_ij · e_kl = e_kl e_ij = δ_li e_kj
          if (!op && j == k) c.emplace_back(i * m + j, k * m + l, i * m + l, Scalar(1));
          if (op && l == i) c.emplace_back(i * m + j, k * m + l, k * m + j, Scalar(1));
        }
  return c;
}

inline std::vector<std::string> matrix_unit_names(std::size_t m, const std::string& stem) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) v.push_back(stem + std::to_string(i + 1) + std::to_string(j + 1));
  return v;
}

}  // namespace detail

inline FinAlgebra matrix_algebra(std::size_t m, bool op = false) {
  return FinAlgebra::from_constants(detail::matrix_unit_names(m, op ? "f" : "e"), detail::matrix_unit_constants(m, op));
}

// E = Σ d_j e_ij ⊗ e_ji in M2 ⊗ M2^op with weights d = (1/3, 2/3): a regular
// separability idempotent whose distinguished functional is not a trace.
inline SeparabilityData skewed_separability() {
  SeparabilityData s;
  s.B = matrix_algebra(2);
  s.C = matrix_algebra(2, true);
  const Scalar d[2] = {Scalar(Rational(1, 3)), Scalar(Rational(2, 3))};
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> t;
  std::vector<std::vector<Scalar>> e(4, std::vector<Scalar>(4));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) e[i * 2 + j][j * 2 + i] = d[j];
  s.E = Matrix::from_dense(e);
  return s;
}

// E = Σ_i e_i1 ⊗ e_1i: idempotent in M2 ⊗ M2^op but not full.
inline SeparabilityData non_full_separability() {
  SeparabilityData s;
  s.B = matrix_algebra(2);
  s.C = matrix_algebra(2, true);
  std::vector<std::vector<Scalar>> e(4, std::vector<Scalar>(4));
  for (std::size_t i = 0; i < 2; ++i) e[i * 2 + 0][0 * 2 + i] = Scalar(1);
  s.E = Matrix::from_dense(e);
  return s;
}

// A = B⊗C for the skewed E ∈ B⊗C, Δ(b⊗c) = Σ (b⊗E₂)⊗(E₁⊗c). A weak Hopf
// algebra (dimension 16) whose canonical idempotent is non-tracial.
inline std::pair<std::shared_ptr<const FinAlgebra>, Coproduct> skewed_weak_hopf() {
  SeparabilityData s = skewed_separability();
  std::size_t nb = s.B.dim(), nc = s.C.dim(), n = nb * nc;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t c1 = 0; c1 < nc; ++c1)
      for (std::size_t b2 = 0; b2 < nb; ++b2)
        for (std::size_t c2 = 0; c2 < nc; ++c2)
          for (const auto& tmp_x = s.B.product(b1, b2); const auto& x : tmp_x.entries())
            for (const auto& tmp_y = s.C.product(c1, c2); const auto& y : tmp_y.entries())
              c.emplace_back(b1 * nc + c1, b2 * nc + c2, x.index * nc + y.index, x.value * y.value);
  std::vector<std::string> names;
  for (const auto& b : s.B.basis_names())
    for (const auto& y : s.C.basis_names()) names.push_back(b + "*" + y);
  auto a = std::make_shared<const FinAlgebra>(FinAlgebra::from_constants(names, c));
  std::vector<Vector> images;
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t y = 0; y < nc; ++y) {
      std::vector<Entry> raw;
      for (std::size_t q = 0; q < nc; ++q)
        for (const auto& e : s.E.column(q).entries())  // e.index ∈ B, q ∈ C
          raw.push_back({(b * nc + q) * n + (e.index * nc + y), e.value});
      images.push_back(Vector::from_entries(n * n, std::move(raw)));
    }
  return {a, Coproduct::from_elements(a, images)};
}

// ℂ[C₂] with basis (1, g) and a chosen coproduct image for g.
inline std::pair<std::shared_ptr<const FinAlgebra>, Coproduct> c2_with_delta_g(const Vector& delta_g) {
  auto a = std::make_shared<const FinAlgebra>(
      FinAlgebra::from_constants({"1", "g"}, {{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 0, 1, Scalar(1)},
                                              {1, 1, 0, Scalar(1)}}));
  return {a, Coproduct::from_elements(a, {Vector::unit(4, 0), delta_g})};
}

// Δ(g) = -g⊗1: a homomorphism that is not coassociative.
inline std::pair<std::shared_ptr<const FinAlgebra>, Coproduct> c2_broken_coassociativity() {
  return c2_with_delta_g(Vector::unit(4, 2, Scalar(-1)));
}

// Δ(x) = x⊗1: coassociative but the second leg only spans ℂ1.
inline std::pair<std::shared_ptr<const FinAlgebra>, Coproduct> c2_non_full() {
  return c2_with_delta_g(Vector::unit(4, 2));
}

// Pair groupoid on two objects with g12·g21 = 2·g11.
inline std::pair<std::shared_ptr<const FinAlgebra>, Coproduct> pair2_broken_associativity() {
  Example ex = groupoid_algebra(make_groupoid({{2, "C1"}}));
  const FinAlgebra& a = *ex.algebra;
  std::vector<Vector> table = a.table();
  std::size_t d = a.dim();
  // basis order g1_1, g1_2, g2_1, g2_2
  table[1 * d + 2] = Vector::unit(d, 0, Scalar(2));
  auto b = std::make_shared<const FinAlgebra>(FinAlgebra(a.basis_names(), table));
  std::vector<Vector> images;
  for (std::size_t g = 0; g < d; ++g) images.push_back(Vector::unit(d * d, g * d + g));
  return {b, Coproduct::from_elements(b, images)};
}

}  // namespace weakhopf
