#pragma once

#include "output.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace holo::cli {

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
  json data = json::object();

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

struct VerifyOptions {
  std::uint64_t seed = 20241016;
  double tol_scale = 1.0;  // multiplies every suite tolerance
};

std::vector<std::string> suite_names();

// Throws Error(usage) for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

}  // namespace holo::cli
