#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "weakhopf/io.hpp"

using namespace weakhopf;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNegative = 2, kInvalid = 3 };

struct Failure {
  std::string stage, message;
  Witness witness;
};

// Parse and validate, or describe why not.
std::optional<Presentation> load(const std::string& path, Failure& f) {
  try {
    return parse(read_file(path));
  } catch (const ParseError& e) {
    f = {"parse", e.what(), {}};
  } catch (const StructuralError& e) {
    f = {"invariant:" + e.law(), e.what(), e.witness()};
  } catch (const std::exception& e) {
    f = {"io", e.what(), {}};
  }
  return std::nullopt;
}

int report_failure(const Failure& f, bool json) {
  if (json) {
    ojson j;
    j["verdict"] = "error";
    j["failed_stage"] = f.stage;
    j["failure"] = f.message;
    j["witness"] = f.witness;
    std::cout << to_json_text(j);
  }
  std::cerr << "error: " << f.message;
  if (!f.witness.empty()) {
    std::cerr << " (witness";
    for (auto w : f.witness) std::cerr << " " << w;
    std::cerr << ")";
  }
  std::cerr << "\n";
  return kInvalid;
}

// A counit stored in the file must agree with the constructed one.
void compare_declared_counit(WeakHopfResult& r, const Presentation& p) {
  if (!p.counit || !r.positive) return;
  Stage st{"declared_counit", {}, true, false};
  if (*p.counit == r.epsilon) {
    st.report.add(pass("declared_counit", "stored counit equals the constructed one"));
  } else {
    Witness w;
    for (std::size_t k = 0; k < r.epsilon.coeffs.size(); ++k)
      if (p.counit->coeffs[k] != r.epsilon.coeffs[k]) w.push_back(k);
    st.report.add(fail("declared_counit", "stored counit differs from the constructed one", w));
    st.passed = false;
    r.positive = false;
    r.verdict = "not a regular weak multiplier Hopf algebra";
    r.failed_stage = st.name;
    r.failure_detail = "declared_counit: stored counit differs from the constructed one";
    r.witness = w;
  }
  r.stages.push_back(std::move(st));
}

int cmd_check(const std::string& file, const std::string& report, bool json) {
  Failure f;
  auto p = load(file, f);
  if (!p) return report_failure(f, json);
  WeakHopfResult r = full_pipeline(p->coproduct);
  compare_declared_counit(r, *p);
  std::string text = json ? to_json_text(result_json(r, *p)) : result_text(r, *p);
  std::cout << text;
  if (!report.empty()) {
    try {
      write_file(report, text);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return r.positive ? kOk : kNegative;
}

std::string functional_text(const Functional& f) {
  std::string s = "[";
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) s += (k ? ", " : "") + f.coeffs[k].str();
  return s + "]";
}

int cmd_integrals(const std::string& file) {
  Failure f;
  auto p = load(file, f);
  if (!p) return report_failure(f, false);
  PipelineOptions opt;
  opt.stop_after = "faithful_integrals";
  WeakHopfResult r = full_pipeline(p->coproduct, opt);
  if (!r.failed_stage.empty() && r.failed_stage != "faithful_integrals") {
    std::cout << "failed stage: " << r.failed_stage << "\nfailure: " << r.failure_detail << "\n";
    return kNegative;
  }
  const IntegralSpace& s = r.integrals;
  std::cout << "left integrals (basis of " << s.left_basis.size() << "):\n";
  for (const auto& phi : s.left_basis) std::cout << "  " << functional_text(phi) << "\n";
  std::cout << "right integrals (basis of " << s.right_basis.size() << "):\n";
  for (const auto& psi : s.right_basis) std::cout << "  " << functional_text(psi) << "\n";
  std::cout << "left/right dims " << s.left_basis.size() << "/" << s.right_basis.size() << ", faithful "
            << (s.left_faithful ? "true" : "false") << "/" << (s.right_faithful ? "true" : "false") << "\n";
  return kOk;
}

int cmd_construct(const std::string& file, const std::string& out) {
  Failure f;
  auto p = load(file, f);
  if (!p) return report_failure(f, false);
  WeakHopfResult r = full_pipeline(p->coproduct);
  if (!r.positive) {
    std::cerr << "negative verdict at stage " << r.failed_stage << ": " << r.failure_detail << "\n";
    return kNegative;
  }
  ojson j;
  j["dim"] = p->algebra->dim();
  j["basis_names"] = p->algebra->basis_names();
  j["structure"] = r.verdict;
  j["counit"] = functional_json(r.epsilon);
  j["antipode"] = io_detail::sparse_matrix(r.S);
  try {
    write_file(out, to_json_text(j));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << "wrote counit and antipode to " << out << "\n";
  return kOk;
}

int write_presentation(const Presentation& p, const std::string& out) {
  try {
    write_file(out, serialize(p));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << "wrote " << out << " (dim " << p.algebra->dim() << ")\n";
  return kOk;
}

int cmd_gen_groupoid(std::size_t objects, const std::string& group, std::optional<std::uint64_t> seed,
                     const std::string& out) {
  FiniteGroupoid G;
  try {
    G = seed ? random_groupoid_on(*seed, objects, {group}) : make_groupoid({{objects, group}});
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return write_presentation(presentation_of(groupoid_algebra(G), groupoid_metadata(G, "groupoid_algebra"), true), out);
}

// The dual of a groupoid algebra is the function algebra, and conversely.
int cmd_gen_dual(const std::string& file, const std::string& out) {
  Failure f;
  auto p = load(file, f);
  if (!p) return report_failure(f, false);
  try {
    FiniteGroupoid G = groupoid_from_metadata(p->metadata);
    std::string kind = p->metadata.value("kind", "");
    bool from_functions = kind == "function_algebra";
    if (!from_functions && kind != "groupoid_algebra")
      throw ParseError("metadata.kind", "expected \"groupoid_algebra\" or \"function_algebra\"");
    Example self = from_functions ? function_algebra(G) : groupoid_algebra(G);
    if (!(*self.algebra == *p->algebra) || self.coproduct.deltas() != p->coproduct.deltas())
      throw ParseError("metadata", "recorded groupoid does not match the presented algebra");
    Example dual = from_functions ? groupoid_algebra(G) : function_algebra(G);
    return write_presentation(
        presentation_of(dual, groupoid_metadata(G, from_functions ? "groupoid_algebra" : "function_algebra"), true),
        out);
  } catch (const ParseError& e) {
    return report_failure({"parse", e.what(), {}}, false);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of regular weak multiplier Hopf algebras"};
  app.require_subcommand(1);

  std::string file, out, report, group;
  bool json = false;
  std::size_t objects = 0;
  std::optional<std::uint64_t> seed;

  auto* check = app.add_subcommand("check", "run the full verification pipeline");
  check->add_option("file", file, ".wha presentation")->required();
  check->add_option("--report", report, "also write the report to this file");
  check->add_flag("--json", json, "emit the report as JSON");

  auto* integrals = app.add_subcommand("integrals", "solve for left and right integrals");
  integrals->add_option("file", file, ".wha presentation")->required();

  auto* construct = app.add_subcommand("construct", "construct the counit and antipode");
  construct->add_option("file", file, ".wha presentation")->required();
  construct->add_option("--out", out, "result file")->required();

  auto* gen = app.add_subcommand("gen", "generate fixtures");
  gen->require_subcommand(1);
  auto* gen_groupoid = gen->add_subcommand("groupoid", "groupoid algebra of a (pair groupoid) x group");
  gen_groupoid->add_option("--objects", objects, "number of objects")->required()->check(CLI::PositiveNumber);
  gen_groupoid->add_option("--group", group, "isotropy group")->required()->check(CLI::IsMember(group_names()));
  gen_groupoid->add_option("--seed", seed, "split the objects into random components");
  gen_groupoid->add_option("--out", out, "output .wha")->required();
  auto* gen_dual = gen->add_subcommand("dual", "function algebra of a groupoid fixture, or back");
  gen_dual->add_option("file", file, ".wha groupoid fixture")->required();
  gen_dual->add_option("--out", out, "output .wha")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  if (*check) return cmd_check(file, report, json);
  if (*integrals) return cmd_integrals(file);
  if (*construct) return cmd_construct(file, out);
  if (*gen_groupoid) return cmd_gen_groupoid(objects, group, seed, out);
  if (*gen_dual) return cmd_gen_dual(file, out);
  return kUsage;
}
