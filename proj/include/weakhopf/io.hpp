#pragma once

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "weakhopf/examples.hpp"
#include "weakhopf/larson_sweedler.hpp"

namespace weakhopf {

using ojson = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error("parse error at " + where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct Presentation {
  std::shared_ptr<const FinAlgebra> algebra;
  Coproduct coproduct;
  std::optional<Functional> counit;
  ojson metadata;  // null when absent

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return *a.algebra == *b.algebra && a.coproduct.deltas() == b.coproduct.deltas() && a.counit == b.counit &&
           a.metadata == b.metadata;
  }
};

namespace io_detail {

inline ojson sparse_matrix(const Matrix& m) {
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> t;
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c).entries()) t.emplace_back(e.index, c, e.value.str());
  std::sort(t.begin(), t.end());
  ojson out = ojson::array();
  for (auto& [r, c, s] : t) out.push_back(ojson::array({r, c, s}));
  return out;
}

// Arrays of plain values go on one line, everything else is broken up.
inline void write_json(std::ostream& os, const ojson& j, int indent) {
  std::string pad(indent, ' ');
  auto flat = [](const ojson& x) {
    return !x.is_structured() ||
           (x.is_array() && std::none_of(x.begin(), x.end(), [](const ojson& e) { return e.is_structured(); }));
  };
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      os << pad << "  " << ojson(it.key()).dump() << ": ";
      write_json(os, it.value(), indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array() && !flat(j)) {
    os << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      os << pad << "  ";
      write_json(os, j[k], indent + 2);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "]";
  } else {
    os << j.dump(-1, ' ', false);
  }
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

inline std::size_t index_at(const ojson& j, const std::string& where, std::size_t bound) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ParseError(where, "expected a non-negative integer");
  if (j.is_number_integer() && j.get<long long>() < 0) throw ParseError(where, "negative index");
  auto v = j.get<unsigned long long>();
  if (v >= bound) throw ParseError(where, "index " + std::to_string(v) + " out of range (bound " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(v);
}

inline Scalar scalar_at(const ojson& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "scalars must be strings like \"a/b\" or \"a/b+c/d*i\"");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where, std::string("bad scalar \"") + j.get<std::string>() + "\": " + e.what());
  }
}

inline Matrix matrix_at(const ojson& j, const std::string& where, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw ParseError(where, "expected a list of [row, col, scalar] triplets");
  std::vector<std::vector<Entry>> raw(cols);
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string w = where + "[" + std::to_string(k) + "]";
    const ojson& t = j[k];
    if (!t.is_array() || t.size() != 3) throw ParseError(w, "expected [row, col, scalar]");
    std::size_t r = index_at(t[0], w + "[0]", rows), c = index_at(t[1], w + "[1]", cols);
    seen.emplace_back(r, c);
    raw[c].push_back({r, scalar_at(t[2], w + "[2]")});
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw ParseError(where, "duplicate matrix entry");
  std::vector<Vector> v;
  for (auto& r : raw) v.push_back(Vector::from_entries(rows, std::move(r)));
  return Matrix::from_columns(rows, std::move(v));
}

}  // namespace io_detail

inline std::string to_json_text(const ojson& j) {
  std::ostringstream os;
  io_detail::write_json(os, j, 0);
  os << "\n";
  return os.str();
}

// Canonical .wha text: fixed field order, sorted sparse entries.
inline std::string serialize(const Presentation& p) {
  const FinAlgebra& a = *p.algebra;
  ojson j;
  j["dim"] = a.dim();
  j["basis_names"] = a.basis_names();
  ojson sc = ojson::array();
  for (const auto& [i, k, l, v] : a.structure_constants()) sc.push_back(ojson::array({i, k, l, v.str()}));
  j["structure_constants"] = sc;
  ojson cp = ojson::array();
  for (const auto& m : p.coproduct.deltas()) {
    ojson e;
    e["lambda"] = io_detail::sparse_matrix(m.lambda);
    e["rho"] = io_detail::sparse_matrix(m.rho);
    cp.push_back(e);
  }
  j["coproduct"] = cp;
  if (p.counit) {
    ojson c = ojson::array();
    for (const auto& s : p.counit->coeffs) c.push_back(s.str());
    j["counit"] = c;
  }
  if (a.involution()) j["involution"] = io_detail::sparse_matrix(*a.involution());
  if (!p.metadata.is_null()) j["metadata"] = p.metadata;
  return to_json_text(j);
}

// Invariants every presentation must satisfy: associativity, the involution
// laws, Δ(e_i) are multipliers, Δ is a homomorphism and covered products land
// in A⊗A. Throws StructuralError naming the law.
inline void validate(const Presentation& p) {
  const FinAlgebra& a = *p.algebra;
  Check c = check_associativity(a);
  if (!c) throw StructuralError(c);
  if (a.involution()) {
    c = check_involution(a);
    if (!c) throw StructuralError(c);
  }
  c = check_coproduct_multipliers(p.coproduct);
  if (!c) throw StructuralError(c);
  c = check_homomorphism(p.coproduct);
  if (!c) throw StructuralError(c);
  c = check_regularity(p.coproduct);
  if (!c) throw StructuralError(c);
}

inline Presentation parse_unchecked(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ParseError("line " + std::to_string(io_detail::line_of(text, e.byte)), e.what());
  }
  if (!j.is_object()) throw ParseError("top level", "expected an object");
  static const std::vector<std::string> allowed = {"dim",     "basis_names", "structure_constants", "coproduct",
                                                   "counit",  "involution",  "metadata"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) throw ParseError(it.key(), "unknown field");
  for (const char* f : {"dim", "basis_names", "structure_constants", "coproduct"})
    if (!j.contains(f)) throw ParseError(f, "missing required field");
  if (!j["dim"].is_number_unsigned() && !(j["dim"].is_number_integer() && j["dim"].get<long long>() > 0))
    throw ParseError("dim", "expected a positive integer");
  std::size_t d = j["dim"].get<std::size_t>();
  if (d == 0) throw ParseError("dim", "expected a positive integer");
  const ojson& names = j["basis_names"];
  if (!names.is_array() || names.size() != d) throw ParseError("basis_names", "expected " + std::to_string(d) + " names");
  std::vector<std::string> nm;
  for (std::size_t k = 0; k < d; ++k) {
    if (!names[k].is_string()) throw ParseError("basis_names[" + std::to_string(k) + "]", "expected a string");
    nm.push_back(names[k].get<std::string>());
  }
  const ojson& sc = j["structure_constants"];
  if (!sc.is_array()) throw ParseError("structure_constants", "expected a list of [i, j, k, scalar]");
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>> c;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < sc.size(); ++k) {
    std::string w = "structure_constants[" + std::to_string(k) + "]";
    const ojson& t = sc[k];
    if (!t.is_array() || t.size() != 4) throw ParseError(w, "expected [i, j, k, scalar]");
    std::size_t a = io_detail::index_at(t[0], w + "[0]", d), b = io_detail::index_at(t[1], w + "[1]", d),
                r = io_detail::index_at(t[2], w + "[2]", d);
    seen.emplace_back(a, b, r);
    c.emplace_back(a, b, r, io_detail::scalar_at(t[3], w + "[3]"));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw ParseError("structure_constants", "duplicate structure constant");
  std::optional<Matrix> inv;
  if (j.contains("involution")) inv = io_detail::matrix_at(j["involution"], "involution", d, d);
  Presentation p;
  p.algebra = std::make_shared<const FinAlgebra>(FinAlgebra::from_constants(nm, c, inv));
  const ojson& cp = j["coproduct"];
  if (!cp.is_array() || cp.size() != d) throw ParseError("coproduct", "expected " + std::to_string(d) + " entries");
  std::vector<Multiplier> ms;
  for (std::size_t k = 0; k < d; ++k) {
    std::string w = "coproduct[" + std::to_string(k) + "]";
    const ojson& e = cp[k];
    if (!e.is_object() || !e.contains("lambda") || !e.contains("rho") || e.size() != 2)
      throw ParseError(w, "expected {\"lambda\": ..., \"rho\": ...}");
    ms.push_back({io_detail::matrix_at(e["lambda"], w + ".lambda", d * d, d * d),
                  io_detail::matrix_at(e["rho"], w + ".rho", d * d, d * d)});
  }
  p.coproduct = Coproduct(p.algebra, std::move(ms));
  if (j.contains("counit")) {
    const ojson& e = j["counit"];
    if (!e.is_array() || e.size() != d) throw ParseError("counit", "expected " + std::to_string(d) + " scalars");
    Functional f{std::vector<Scalar>(d)};
    for (std::size_t k = 0; k < d; ++k) f.coeffs[k] = io_detail::scalar_at(e[k], "counit[" + std::to_string(k) + "]");
    p.counit = f;
  }
  if (j.contains("metadata")) p.metadata = j["metadata"];
  return p;
}

inline Presentation parse(const std::string& text) {
  Presentation p = parse_unchecked(text);
  validate(p);
  return p;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline ojson groupoid_metadata(const FiniteGroupoid& G, const std::string& kind) {
  ojson m;
  m["kind"] = kind;
  ojson comps = ojson::array();
  for (const auto& c : G.components) {
    ojson x;
    x["objects"] = c.objects;
    x["group"] = c.group;
    comps.push_back(x);
  }
  m["groupoid"] = comps;
  return m;
}

inline FiniteGroupoid groupoid_from_metadata(const ojson& m) {
  if (!m.is_object() || !m.contains("groupoid") || !m["groupoid"].is_array())
    throw ParseError("metadata.groupoid", "file does not record a groupoid");
  std::vector<GroupoidComponent> comps;
  for (std::size_t k = 0; k < m["groupoid"].size(); ++k) {
    const ojson& c = m["groupoid"][k];
    std::string w = "metadata.groupoid[" + std::to_string(k) + "]";
    if (!c.is_object() || !c.contains("objects") || !c.contains("group") || !c["objects"].is_number_unsigned() ||
        !c["group"].is_string())
      throw ParseError(w, "expected {\"objects\": N, \"group\": name}");
    comps.push_back({c["objects"].get<std::size_t>(), c["group"].get<std::string>()});
  }
  try {
    return make_groupoid(comps);
  } catch (const std::invalid_argument& e) {
    throw ParseError("metadata.groupoid", e.what());
  }
}

inline Presentation presentation_of(const Example& ex, ojson metadata, bool with_counit = false) {
  Presentation p{ex.algebra, ex.coproduct, std::nullopt, std::move(metadata)};
  if (with_counit) p.counit = ex.epsilon;
  return p;
}

// ---- reports ----

inline ojson check_json(const Check& c) {
  ojson j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

inline ojson functional_json(const Functional& f) {
  ojson a = ojson::array();
  for (const auto& s : f.coeffs) a.push_back(s.str());
  return a;
}

inline ojson result_json(const WeakHopfResult& r, const Presentation& p) {
  ojson j;
  j["dim"] = p.algebra->dim();
  j["verdict"] = r.positive ? "positive" : "negative";
  j["structure"] = r.verdict;
  j["hopf_case"] = r.hopf_case;
  if (!r.positive) {
    j["failed_stage"] = r.failed_stage;
    j["failure"] = r.failure_detail;
    j["witness"] = r.witness;
  }
  ojson stages = ojson::array();
  for (const auto& s : r.stages) {
    ojson st;
    st["name"] = s.name;
    st["status"] = s.skipped ? "skipped" : s.passed ? "pass" : "fail";
    ojson checks = ojson::array();
    for (const auto& c : s.report.checks) checks.push_back(check_json(c));
    st["checks"] = checks;
    if (!s.report.notes.empty()) st["notes"] = s.report.notes;
    stages.push_back(st);
  }
  j["stages"] = stages;
  bool reached = std::any_of(r.stages.begin(), r.stages.end(), [](const Stage& s) { return s.name == "integrals" && s.passed && !s.skipped; });
  if (reached) {
    ojson in;
    in["left_dim"] = r.integrals.left_basis.size();
    in["right_dim"] = r.integrals.right_basis.size();
    ojson lb = ojson::array(), rb = ojson::array();
    for (const auto& f : r.integrals.left_basis) lb.push_back(functional_json(f));
    for (const auto& f : r.integrals.right_basis) rb.push_back(functional_json(f));
    in["left_basis"] = lb;
    in["right_basis"] = rb;
    j["integrals"] = in;
  }
  if (r.positive) {
    j["counit"] = functional_json(r.epsilon);
    j["antipode"] = io_detail::sparse_matrix(r.S);
  }
  return j;
}

inline std::string result_text(const WeakHopfResult& r, const Presentation& p) {
  std::ostringstream os;
  const FinAlgebra& a = *p.algebra;
  os << "algebra: dim " << a.dim() << "\n";
  for (const auto& s : r.stages) {
    os << "stage " << s.name << ": " << (s.skipped ? "skipped" : s.passed ? "pass" : "FAIL") << "\n";
    for (const auto& c : s.report.checks) {
      os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << " - " << c.detail;
      if (!c.witness.empty()) {
        os << " witness (";
        for (std::size_t k = 0; k < c.witness.size(); ++k) os << (k ? ", " : "") << c.witness[k];
        os << ")";
      }
      os << "\n";
    }
    for (const auto& n : s.report.notes) os << "  note: " << n << "\n";
  }
  if (r.positive) {
    os << "counit:";
    for (std::size_t k = 0; k < a.dim(); ++k) os << " " << a.basis_names()[k] << "=" << r.epsilon.coeffs[k].str();
    os << "\nantipode:\n";
    for (std::size_t k = 0; k < a.dim(); ++k) {
      os << "  S(" << a.basis_names()[k] << ") =";
      bool first = true;
      for (const auto& e : r.S.column(k).entries()) {
        os << (first ? " " : " + ") << "(" << e.value.str() << ")" << a.basis_names()[e.index];
        first = false;
      }
      if (first) os << " 0";
      os << "\n";
    }
    os << "verdict: positive (" << r.verdict << ")\n";
  } else {
    os << "verdict: negative\nfailed stage: " << r.failed_stage << "\n";
    os << "failure: " << r.failure_detail << "\n";
    os << "witness: [";
    for (std::size_t k = 0; k < r.witness.size(); ++k) os << (k ? ", " : "") << r.witness[k];
    os << "]\n";
  }
  return os.str();
}

}  // namespace weakhopf
