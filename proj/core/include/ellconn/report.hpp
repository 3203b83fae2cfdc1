#pragma once

#include <string>
#include <vector>

namespace ellconn {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;  // offending exact value on failure, empty otherwise
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

}  // namespace ellconn
