#pragma once

#include <string>
#include <vector>

#include "emvt/parallel.hpp"

namespace emvt::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Small exact identities across every module; each one is cheap.
std::vector<CheckResult> run_all(const EngineConfig& cfg = {});

}  // namespace emvt::selftest
