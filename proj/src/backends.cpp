#include "tsite/backends.hpp"

#include <stdexcept>

#include "tsite/homalg.hpp"

namespace tsite {

namespace {

void check_size(int n) {
  if (n < 1) throw std::invalid_argument("instance needs at least one point");
  if (n > kMaxFinitePoints)
    throw std::invalid_argument("instance has " + std::to_string(n) + " points, bound is " +
                                std::to_string(kMaxFinitePoints));
}

int param(const std::vector<int>& p, size_t i, int dflt) { return i < p.size() ? p[i] : dflt; }

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

FinitePoset gen_finite(const std::string& name, const std::vector<int>& params) {
  if (name == "sierpinski") return FinitePoset({"closed", "open"}, {{0, 1}});
  if (name == "chain") {
    check_size(param(params, 0, 3));
    return FinitePoset::chain(param(params, 0, 3));
  }
  if (name == "discrete") {
    check_size(param(params, 0, 3));
    return FinitePoset::discrete(param(params, 0, 3));
  }
  if (name == "diamond") return FinitePoset({"bottom", "left", "right", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  if (name == "zigzag") {
    // v0 < e0 > v1 < e1 ... : the cell poset of n vertices on a segment.
    int n = param(params, 0, 2);
    check_size(2 * n);
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) {
      names.push_back("v" + std::to_string(i));
      names.push_back("e" + std::to_string(i));
      rel.emplace_back(2 * i, 2 * i + 1);
      if (i > 0) rel.emplace_back(2 * i, 2 * i - 1);
    }
    return FinitePoset(names, rel);
  }
  if (name == "conic_toy") {
    int base = param(params, 0, 2);
    int rays = param(params, 1, 2);
    if (base < 1 || rays < 0) throw std::invalid_argument("conic_toy needs zbase >= 1 and rays >= 0");
    check_size(base * (1 + rays));
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (int b = 0; b < base; ++b) {
      int bi = static_cast<int>(names.size());
      names.push_back("z" + std::to_string(b));
      for (int r = 0; r < rays; ++r) {
        rel.emplace_back(bi, static_cast<int>(names.size()));
        names.push_back("z" + std::to_string(b) + "r" + std::to_string(r));
      }
    }
    return FinitePoset(names, rel);
  }
  throw std::invalid_argument("unknown finite instance: " + name);
}

FiniteSite gen_finite_site(const std::string& name, const std::vector<int>& params) {
  if (name == "indiscrete") {
    int n = param(params, 0, 2);
    check_size(n);
    return FiniteSite(n, {Mask(n, 0), Mask(n, 1)});
  }
  return FiniteSite::of_poset(gen_finite(name, params));
}

std::vector<NamedSite> finite_shapes() {
  return {{"sierpinski", gen_finite_site("sierpinski")},
          {"chain3", gen_finite_site("chain", {3})},
          {"discrete3", gen_finite_site("discrete", {3})},
          {"conic_toy(2,2)", gen_finite_site("conic_toy", {2, 2})},
          {"zigzag2", gen_finite_site("zigzag", {2})},
          {"diamond", gen_finite_site("diamond")},
          {"indiscrete2", gen_finite_site("indiscrete", {2})}};
}

GeneratorCall parse_generator(const std::string& s0) {
  std::string s = trim(s0);
  GeneratorCall g;
  size_t open = s.find('(');
  if (open == std::string::npos) {
    g.name = s;
    return g;
  }
  if (s.back() != ')') throw std::invalid_argument("unbalanced generator call: " + s0);
  g.name = trim(s.substr(0, open));
  std::string body = s.substr(open + 1, s.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      g.args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced generator call: " + s0);
  if (!trim(cur).empty() || !g.args.empty()) g.args.push_back(trim(cur));
  return g;
}

ConstructibleTSheaf gen_random_line_sheaf(std::uint64_t seed, const std::vector<Rational>& e, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("maxdim must be nonnegative");
  Rng rng(seed);
  return random_tsheaf(rng, merge_points(e, {}), max_dim);
}

ConstructibleTSheaf gen_line_sheaf(const std::string& spec) {
  GeneratorCall g = parse_generator(spec);
  auto need = [&](size_t n) {
    if (g.args.size() != n)
      throw std::invalid_argument(g.name + " takes " + std::to_string(n) + " arguments: " + spec);
  };
  if (g.name == "constant") {
    need(1);
    return constant_sheaf(SemilinearSet::parse(g.args[0]));
  }
  if (g.name == "skyscraper") {
    need(1);
    return skyscraper(parse_rational(g.args[0]));
  }
  if (g.name == "boundary") {
    need(2);
    return boundary_sheaf(SemilinearSet::parse(g.args[0]), SemilinearSet::parse(g.args[1]));
  }
  if (g.name == "random") {
    need(3);
    std::string es = g.args[1];
    if (es.size() < 2 || es.front() != '{' || es.back() != '}')
      throw std::invalid_argument("random endpoints are written {e0,e1,...}");
    std::vector<Rational> e;
    for (const std::string& x : parse_generator("E(" + es.substr(1, es.size() - 2) + ")").args)
      e.push_back(parse_rational(x));
    return gen_random_line_sheaf(std::stoull(g.args[0]), e, std::stoi(g.args[2]));
  }
  throw std::invalid_argument("unknown line sheaf generator: " + g.name);
}

}  // namespace tsite
