#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsite/cellsheaf.hpp"

namespace tsite {

// A finite topology: the site whose objects are its opens and whose coverings
// are the families with union equal to the target.
class FiniteSite {
 public:
  FiniteSite() = default;
  // opens must contain the empty set and the whole carrier and be closed under ∪ and ∩.
  FiniteSite(int points, std::vector<Mask> opens);
  static FiniteSite of_poset(const FinitePoset& p);

  int points() const { return points_; }
  int num_opens() const { return static_cast<int>(opens_.size()); }
  const Mask& open(int i) const { return opens_[i]; }
  const std::vector<Mask>& opens() const { return opens_; }
  int index_of(const Mask& m) const;
  int empty_index() const { return index_of(Mask(points_, 0)); }
  int whole_index() const { return index_of(Mask(points_, 1)); }
  bool contained(int w, int v) const { return mask_subset(opens_[w], opens_[v]); }
  int meet(int a, int b) const { return index_of(mask_and(opens_[a], opens_[b])); }
  int join(int a, int b) const { return index_of(mask_or(opens_[a], opens_[b])); }
  // Smallest open containing the point.
  int minimal_neighborhood(int point) const;
  // Distinct minimal neighborhoods of the points of U: the finest covering of U.
  std::vector<int> finest_covering(int u) const;
  // Opens ordered by reverse inclusion: V <= W iff W ⊆ V.
  const FinitePoset& inclusion_poset() const { return incl_; }

 private:
  int points_ = 0;
  std::vector<Mask> opens_;
  std::map<Mask, int> index_;
  FinitePoset incl_;
};

// A presheaf of finite-dimensional spaces: a functor on the reverse-inclusion poset.
struct Presheaf {
  FiniteSite site;
  CellularSheaf data;

  int dim(int u) const { return data.dim(u); }
  // P(V) -> P(W) for W ⊆ V.
  const Matrix& res(int v, int w) const { return data.map(v, w); }
};

Presheaf random_presheaf(const FiniteSite& site, Rng& rng, int max_dim);
// U ↦ Γ(U; F) for a sheaf on a poset.
Presheaf sections_presheaf(const CellularSheaf& f);
// Stalk at p is P(minimal neighborhood of p); the site must come from a poset.
CellularSheaf to_cellular(const Presheaf& p, const FinitePoset& poset);

// Matching families on a covering: the kernel of ⊕P(W_i) -> ⊕P(W_i ∩ W_j).
struct FamilySpace {
  std::vector<int> members;
  std::vector<int> offset;
  int total = 0;
  Matrix basis;
  int dim() const { return basis.cols(); }
};
FamilySpace matching_families(const Presheaf& p, const std::vector<int>& covering);
// Map P(U) -> P(S) for a covering S of U, in the family basis.
Matrix to_families(const Presheaf& p, int u, const FamilySpace& s);

struct PlusResult {
  Presheaf plus;
  std::vector<Matrix> unit;  // P(U) -> P⁺(U)
};

// P⁺(U) = P(S_U) for the finest covering S_U, which refines every covering of U.
PlusResult plus_construction(const Presheaf& p);
// P⁺⁺ with the composite unit P -> P⁺⁺.
PlusResult sheafify(const Presheaf& p);
// Induced map P⁺ -> Q⁺ for a morphism φ: P -> Q (components per open).
std::vector<Matrix> plus_map(const Presheaf& p, const Presheaf& q, const std::vector<Matrix>& phi);

bool is_separated(const Presheaf& p);
bool is_sheaf(const Presheaf& p);
bool is_presheaf_morphism(const Presheaf& p, const Presheaf& q, const std::vector<Matrix>& phi);

}  // namespace tsite
