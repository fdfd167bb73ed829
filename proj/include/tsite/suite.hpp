#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsite/io.hpp"

namespace tsite {

struct SuiteItem {
  std::string id;
  std::string anchor;  // what is checked
  int instances = 0;
  bool pass = true;
  std::string detail;
  std::string witness;
};

struct SuiteRun {
  std::uint64_t seed = 0;
  int scale = 1;
  std::string filter;
  std::vector<SuiteItem> items;  // sorted by id
  bool pass() const;
};

// Module invariants plus the acceptance criteria; items whose id contains
// filter (all when empty). Deterministic given (seed, scale, filter).
SuiteRun run_suite(std::uint64_t seed, int scale, const std::string& filter);
std::vector<std::string> suite_ids();

// One line per item: status, id, instance count, anchor, then the witness.
std::string render_text(const SuiteRun& run);
Json render_json(const SuiteRun& run);

}  // namespace tsite
