// Runs the full acceptance battery and the golden fixture corpus, printing
// one pass/fail line per check as it finishes. Exit status is 0 exactly
// when everything passes. Usage: test_acceptance [fixture_dir]
#include <chrono>
#include <cstdio>

#include "ncalg/selftest.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  bool ok = true;
  std::printf("acceptance criteria:\n");
  for (const auto& entry : ncalg::acceptance_suite()) {
    auto start = std::chrono::steady_clock::now();
    ncalg::CheckResult r = entry.run();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && r.pass;
    std::printf("  %s  %-30s %s [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.note.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("golden fixtures:\n");
  for (const auto& r : ncalg::fixture_checks(dir)) {
    ok = ok && r.pass;
    std::printf("  %s  %-30s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.note.c_str());
  }
  std::printf("%s\n", ok ? "all checks passed" : "FAILURES present");
  return ok ? 0 : 1;
}
