#include "tsite/io.hpp"

#include <fstream>
#include <stdexcept>

namespace tsite {

namespace {

const char* kFiniteFormat = "tsite-finite";
const char* kLineFormat = "tsite-line-sheaf";

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("malformed instance: " + what);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.to_strings()}};
}

Matrix matrix_from_json(const Json& j) {
  expect(j.is_object() && j.contains("rows") && j.contains("cols"), "matrix needs rows and cols");
  int r = j.at("rows").get<int>();
  int c = j.at("cols").get<int>();
  std::vector<std::string> e = j.value("entries", std::vector<std::string>{});
  expect(r >= 0 && c >= 0 && static_cast<long>(e.size()) == static_cast<long>(r) * c, "matrix entry count");
  return Matrix::from_strings(r, c, e);
}

Json poset_to_json(const FinitePoset& p) {
  Json names = Json::array();
  for (int i = 0; i < p.size(); ++i) names.push_back(p.name(i));
  Json rel = Json::array();
  for (auto [a, b] : p.hasse()) rel.push_back({a, b});
  return Json{{"elements", names}, {"relations", rel}};
}

FinitePoset poset_from_json(const Json& j) {
  expect(j.contains("elements") && j.at("elements").is_array(), "poset needs an element list");
  std::vector<std::string> names = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<int, int>> rel;
  for (const Json& r : j.value("relations", Json::array())) {
    expect(r.is_array() && r.size() == 2, "relation is a pair");
    int a = r[0].get<int>(), b = r[1].get<int>();
    expect(a >= 0 && b >= 0 && a < static_cast<int>(names.size()) && b < static_cast<int>(names.size()),
           "relation index out of range");
    rel.emplace_back(a, b);
  }
  return FinitePoset(names, rel);
}

Json cellular_to_json(const CellularSheaf& f) {
  Json maps = Json::array();
  for (auto [a, b] : f.poset().hasse()) maps.push_back({{"from", a}, {"to", b}, {"matrix", matrix_to_json(f.cover_map(a, b))}});
  return Json{{"dims", f.dims()}, {"maps", maps}};
}

CellularSheaf cellular_from_json(const Json& j, const FinitePoset& p) {
  expect(j.contains("dims"), "sheaf needs dims");
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  expect(static_cast<int>(dims.size()) == p.size(), "one dim per element");
  for (int d : dims) expect(d >= 0, "dims are nonnegative");
  CellularSheaf f(p, dims);
  std::vector<char> seen(p.hasse().size(), 0);
  for (const Json& m : j.value("maps", Json::array())) {
    int a = m.at("from").get<int>(), b = m.at("to").get<int>();
    size_t k = 0;
    while (k < p.hasse().size() && p.hasse()[k] != std::make_pair(a, b)) ++k;
    expect(k < p.hasse().size(), "map on a pair that is not a Hasse relation");
    Matrix mat = matrix_from_json(m.at("matrix"));
    expect(mat.rows() == dims[b] && mat.cols() == dims[a], "map shape");
    f.set_map(a, b, mat);
    seen[k] = 1;
  }
  for (size_t k = 0; k < seen.size(); ++k)
    expect(seen[k] || dims[p.hasse()[k].first] == 0 || dims[p.hasse()[k].second] == 0,
           "missing map on a Hasse relation");
  std::string why;
  expect(f.is_functorial(&why), why);
  return f;
}

Json site_to_json(const FiniteSite& s) {
  Json opens = Json::array();
  for (const Mask& m : s.opens()) {
    Json o = Json::array();
    for (int i = 0; i < s.points(); ++i)
      if (m[i]) o.push_back(i);
    opens.push_back(o);
  }
  return Json{{"points", s.points()}, {"opens", opens}};
}

FiniteSite site_from_json(const Json& j) {
  expect(j.contains("points") && j.contains("opens"), "site needs points and opens");
  int n = j.at("points").get<int>();
  std::vector<Mask> opens;
  for (const Json& o : j.at("opens")) {
    Mask m(n, 0);
    for (int i : o.get<std::vector<int>>()) {
      expect(i >= 0 && i < n, "open index out of range");
      m[i] = 1;
    }
    opens.push_back(m);
  }
  return FiniteSite(n, opens);
}

Json finite_instance_to_json(const FiniteInstance& inst) {
  Json j{{"format", kFiniteFormat}, {"name", inst.name}};
  if (inst.poset) {
    j["poset"] = poset_to_json(*inst.poset);
  } else {
    j["site"] = site_to_json(inst.site);
  }
  if (inst.sheaf) j["sheaf"] = cellular_to_json(*inst.sheaf);
  return j;
}

FiniteInstance finite_instance_from_json(const Json& j) {
  expect(j.value("format", "") == kFiniteFormat, std::string("format must be ") + kFiniteFormat);
  FiniteInstance inst;
  inst.name = j.value("name", "");
  if (j.contains("poset")) {
    inst.poset = poset_from_json(j.at("poset"));
    inst.site = FiniteSite::of_poset(*inst.poset);
  } else {
    expect(j.contains("site"), "instance needs a poset or a site");
    inst.site = site_from_json(j.at("site"));
  }
  if (j.contains("sheaf")) {
    expect(inst.poset.has_value(), "a sheaf needs a poset");
    inst.sheaf = cellular_from_json(j.at("sheaf"), *inst.poset);
  }
  return inst;
}

Json tsheaf_to_json(const ConstructibleTSheaf& f) {
  std::vector<std::string> e;
  for (const Rational& q : f.cx.E) e.push_back(q.get_str());
  Json j = cellular_to_json(f.data);
  j["format"] = kLineFormat;
  j["endpoints"] = e;
  return j;
}

ConstructibleTSheaf tsheaf_from_json(const Json& j) {
  expect(j.value("format", "") == kLineFormat, std::string("format must be ") + kLineFormat);
  std::vector<Rational> e;
  for (const std::string& s : j.value("endpoints", std::vector<std::string>{})) e.push_back(parse_rational(s));
  for (size_t i = 1; i < e.size(); ++i) expect(e[i - 1] < e[i], "endpoints strictly increasing");
  CellComplex cx = cells(e);
  return ConstructibleTSheaf::make(cx, cellular_from_json(j, FinitePoset::from_cells(cx)));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw std::invalid_argument(path + ": " + ex.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace tsite
