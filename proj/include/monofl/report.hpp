#pragma once

#include <string>
#include <vector>

#include "monofl/error.hpp"

namespace monofl {

// Outcome of one named verification. Failures carry concrete witnesses so a
// reader can rerun the offending case by hand; notes are informational.
struct Report {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  explicit Report(std::string n = "") : name(std::move(n)) {}

  void fail_with(const std::string& witness) {
    passed = false;
    failures.push_back(witness);
  }

  void note(const std::string& line) { notes.push_back(line); }

  void check(bool ok, const std::string& witness) {
    if (!ok) fail_with(witness);
  }

  void absorb(const Report& sub) {
    if (!sub.passed) passed = false;
    for (const auto& f : sub.failures)
      failures.push_back(sub.name.empty() ? f : sub.name + ": " + f);
    for (const auto& n : sub.notes)
      notes.push_back(sub.name.empty() ? n : sub.name + ": " + n);
  }
};

}  // namespace monofl
