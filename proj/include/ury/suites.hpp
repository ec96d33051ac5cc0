#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ury/json_io.hpp"

namespace ury {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int steps = 100;       // bookkeeping steps for builder-based suites
  int height = 4;        // bookkeeping height cap
  int trials = 100;      // random-case count
  int max_level = 12;    // deepest selection / representation level
  int precision = 16;    // embedding precision
  bool inject_fault = false;
};

struct CheckAssertion {
  std::string name;
  bool pass;
  std::string witness;  // exact rational witnesses on failure, empty otherwise
};

struct CheckReport {
  std::string suite;
  std::vector<CheckAssertion> assertions;

  bool pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }
  void add(const std::string& name, bool ok, const std::string& witness = "") {
    assertions.push_back({name, ok, ok ? "" : witness});
  }
};

Json check_report_to_json(const CheckReport& r);

const std::vector<std::string>& suite_names();
CheckReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace ury
