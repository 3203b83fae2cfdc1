// Acceptance suite: runs every criterion of the verification contract and
// prints one PASS/FAIL line per criterion (and per named check within it).
// Exit status 0 iff everything passes. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <string>

#include "ellconn/selftest.hpp"

int main() {
  using Clock = std::chrono::steady_clock;
  struct Entry {
    const char* name;
    ellconn::Report (*fn)();
  };
  const Entry entries[] = {
      {"criterion 1: family validity (100 samples)", &ellconn::criterion_family_validity},
      {"criterion 2: par closed form and round trips", &ellconn::criterion_par_closed_form},
      {"criterion 3: apparent map consistency", &ellconn::criterion_app_consistency},
      {"criterion 4: degeneration ladder", &ellconn::criterion_degeneration_ladder},
      {"criterion 5: chart transition", &ellconn::criterion_chart_transition},
      {"criterion 6: symplectic identities", &ellconn::criterion_symplectic_identities},
      {"criterion 7: elementary transformations", &ellconn::criterion_elementary_transformations},
      {"criterion 8: residue conservation", &ellconn::criterion_conservation},
      {"criterion 9: flatness decisions", &ellconn::criterion_flatness_decisions},
      {"criterion 10: incidence identity", &ellconn::criterion_incidence_identity},
  };
  bool all_ok = true;
  for (const auto& e : entries) {
    auto start = Clock::now();
    ellconn::Report rep = e.fn();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    bool ok = rep.all_pass();
    all_ok = all_ok && ok;
    std::printf("[%s] %s (%lld ms)\n", ok ? "PASS" : "FAIL", e.name,
                static_cast<long long>(ms));
    for (const auto& c : rep.checks) {
      std::printf("    [%s] %s%s%s\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                  c.detail.empty() ? "" : " -- ", c.detail.c_str());
    }
  }
  std::printf("%s\n", all_ok ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES present");
  return all_ok ? 0 : 1;
}
