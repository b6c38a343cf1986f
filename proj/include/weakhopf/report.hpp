#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weakhopf {

using Witness = std::vector<std::size_t>;

// Outcome of one named identity check. The witness holds basis indices of a
// violating input (empty when the check passed).
struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  Witness witness;

  explicit operator bool() const { return passed; }
};

inline Check pass(std::string name, std::string detail = {}) { return Check{std::move(name), true, std::move(detail), {}}; }
inline Check fail(std::string name, std::string detail, Witness w = {}) {
  return Check{std::move(name), false, std::move(detail), std::move(w)};
}

struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(Check c) { checks.push_back(std::move(c)); }
  void note(std::string n) { notes.push_back(std::move(n)); }
  void merge(const Report& r) {
    checks.insert(checks.end(), r.checks.begin(), r.checks.end());
    notes.insert(notes.end(), r.notes.begin(), r.notes.end());
  }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

// A law that fails on concrete input. Carries the law name and witness.
class StructuralError : public std::runtime_error {
 public:
  StructuralError(std::string law, const std::string& what, Witness w = {})
      : std::runtime_error(what), law_(std::move(law)), witness_(std::move(w)) {}
  explicit StructuralError(const Check& c) : StructuralError(c.name, c.name + ": " + c.detail, c.witness) {}
  const std::string& law() const { return law_; }
  const Witness& witness() const { return witness_; }

 private:
  std::string law_;
  Witness witness_;
};

}  // namespace weakhopf
