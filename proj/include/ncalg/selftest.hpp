#pragma once

#include <string>
#include <vector>

namespace ncalg {

// One acceptance check: a stable name, the verdict, and a one-line
// evidence note (counts checked, or the first failure found).
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string note;
};

// The acceptance battery as named entries so callers can run and report
// one criterion at a time. Every check compares engine output against an
// independently computed expected value with exact arithmetic.
struct NamedCheck {
  const char* name;
  CheckResult (*run)();
};
const std::vector<NamedCheck>& acceptance_suite();

// Runs the whole suite in order, one result per criterion.
std::vector<CheckResult> acceptance_checks();

// Golden corpus: runs every *.json fixture under dir, one result per file,
// in filename order.
std::vector<CheckResult> fixture_checks(const std::string& dir);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace ncalg
