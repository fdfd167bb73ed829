#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "tsite/presheaf.hpp"
#include "tsite/tsheaf.hpp"

namespace tsite {

using Json = nlohmann::json;

// Row-major "p/q" strings with explicit shape.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Elements and Hasse relations.
Json poset_to_json(const FinitePoset& p);
FinitePoset poset_from_json(const Json& j);

// Per-element dims and one matrix per Hasse relation; validated on read.
Json cellular_to_json(const CellularSheaf& f);
CellularSheaf cellular_from_json(const Json& j, const FinitePoset& p);

// Point count and opens as index lists.
Json site_to_json(const FiniteSite& s);
FiniteSite site_from_json(const Json& j);

// .tp files: a finite space given as a poset or as an explicit topology,
// optionally with a sheaf on the poset.
struct FiniteInstance {
  std::string name;
  std::optional<FinitePoset> poset;
  FiniteSite site;
  std::optional<CellularSheaf> sheaf;
};
Json finite_instance_to_json(const FiniteInstance& inst);
FiniteInstance finite_instance_from_json(const Json& j);

// .ts files: endpoint list plus the cellular data on the cell poset.
Json tsheaf_to_json(const ConstructibleTSheaf& f);
ConstructibleTSheaf tsheaf_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tsite
