#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tsite {

// One acceptance criterion evaluated on seeded instances.
struct CriterionResult {
  int number = 0;
  std::string id;
  std::string title;
  int instances = 0;
  bool pass = true;
  std::string detail;   // counts and values worth printing on success
  std::string witness;  // first failure
};

struct CriterionSpec {
  int number;
  std::string id;
  std::string title;
  std::function<CriterionResult(std::uint64_t seed, int scale)> run;
};

// The twelve criteria in order; scale >= 1 multiplies the instance counts.
const std::vector<CriterionSpec>& criteria();
CriterionResult run_criterion(const CriterionSpec& c, std::uint64_t seed, int scale);

}  // namespace tsite
