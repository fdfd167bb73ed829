#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tsite/criteria.hpp"

using namespace tsite;

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  int failed = 0;
  for (const CriterionSpec& c : criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = run_criterion(c, seed, 1);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d %-36s %5d instances  %s\n", r.pass ? "PASS" : "FAIL", r.number, r.id.c_str(),
                r.instances, r.detail.c_str());
    if (!r.pass) {
      std::printf("     witness: %s\n", r.witness.c_str());
      ++failed;
    }
    std::fprintf(stderr, "criterion %d took %.1fs\n", r.number, secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria().size()) - failed, criteria().size());
  return failed == 0 ? 0 : 1;
}
