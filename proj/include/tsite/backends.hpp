#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsite/presheaf.hpp"
#include "tsite/tsheaf.hpp"

namespace tsite {

constexpr int kMaxFinitePoints = 12;

// sierpinski | chain(n) | discrete(n) | conic_toy(zbase, rays) | zigzag(n) | diamond.
// conic_toy puts each base point below its rays, so an open containing a base
// point contains its rays. Throws std::invalid_argument past kMaxFinitePoints.
FinitePoset gen_finite(const std::string& name, const std::vector<int>& params = {});
// Finite spaces as sites; adds indiscrete(n), which is not T0.
FiniteSite gen_finite_site(const std::string& name, const std::vector<int>& params = {});

struct NamedSite {
  std::string name;
  FiniteSite site;
};
// The shapes used by the finite equivalence checks.
std::vector<NamedSite> finite_shapes();

// constant(U) | skyscraper(q) | boundary(U,V) | random(seed,{e0,e1,...},maxdim)
ConstructibleTSheaf gen_line_sheaf(const std::string& spec);
ConstructibleTSheaf gen_random_line_sheaf(std::uint64_t seed, const std::vector<Rational>& e, int max_dim);

// Splits "name(a,b,...)" at top-level commas; brackets and braces nest.
struct GeneratorCall {
  std::string name;
  std::vector<std::string> args;
};
GeneratorCall parse_generator(const std::string& s);

}  // namespace tsite
