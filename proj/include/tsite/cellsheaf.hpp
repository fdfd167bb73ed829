#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsite/exactla.hpp"
#include "tsite/lineorder.hpp"
#include "tsite/rng.hpp"

namespace tsite {

// Membership flags over the elements of a poset.
using Mask = std::vector<char>;

// Opens are up-sets. p <= q means q is a generization of p.
class FinitePoset {
 public:
  FinitePoset() = default;
  // relations are pairs (a, b) meaning a <= b; the order is their transitive closure.
  FinitePoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& relations);
  static FinitePoset from_cells(const CellComplex& c);
  static FinitePoset chain(int n);
  static FinitePoset discrete(int n);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int p) const { return names_[p]; }
  int index_of(const std::string& name) const;
  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * size() + b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  // Covering pairs (a, b): a < b with nothing strictly between.
  const std::vector<std::pair<int, int>>& hasse() const { return hasse_; }
  const std::vector<int>& lower_covers(int q) const { return lower_[q]; }
  std::vector<int> up(int p) const;
  std::vector<int> down(int p) const;
  Mask up_mask(int p) const;
  Mask all() const { return Mask(size(), 1); }
  Mask none() const { return Mask(size(), 0); }
  bool is_upset(const Mask& m) const;
  bool is_downset(const Mask& m) const;
  // p <= r <= q with p, q in the mask forces r in the mask.
  bool is_convex(const Mask& m) const;
  Mask up_closure(const Mask& m) const;
  Mask down_closure(const Mask& m) const;
  // All up-sets; exponential, intended for small posets.
  std::vector<Mask> opens() const;
  // Element order compatible with <=, stable in element index.
  const std::vector<int>& linear_extension() const { return linext_; }
  std::string str() const;

  friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<std::pair<int, int>> hasse_;
  std::vector<std::vector<int>> lower_;
  std::vector<int> linext_;
};

Mask mask_and(const Mask& a, const Mask& b);
Mask mask_or(const Mask& a, const Mask& b);
Mask mask_minus(const Mask& a, const Mask& b);
bool mask_subset(const Mask& a, const Mask& b);
int mask_count(const Mask& a);

// A functor on a poset: a stalk per element and a generization map per covering pair.
class CellularSheaf {
 public:
  CellularSheaf() = default;
  CellularSheaf(FinitePoset poset, std::vector<int> dims);

  static CellularSheaf zero(const FinitePoset& poset);
  // Extension by zero of k on a convex subset: stalk k on s, identities inside s.
  static CellularSheaf constant_on(const FinitePoset& poset, const Mask& s);

  const FinitePoset& poset() const { return poset_; }
  int size() const { return poset_.size(); }
  int dim(int p) const { return dims_[p]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  // Sets the map on a covering pair.
  void set_map(int p, int q, const Matrix& m);
  // Map for any p <= q (identity when p == q), composed along a chain of covers.
  const Matrix& map(int p, int q) const;
  const Matrix& cover_map(int p, int q) const;
  // Shapes and path independence; describes the first defect in *why.
  bool is_functorial(std::string* why = nullptr) const;
  void validate() const;

 private:
  void build_cache() const;
  FinitePoset poset_;
  std::vector<int> dims_;
  std::map<std::pair<int, int>, Matrix> cover_;
  mutable std::vector<Matrix> all_;
  mutable bool cached_ = false;
};

struct SheafMap {
  std::vector<Matrix> comp;
};

bool is_morphism(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi);
SheafMap identity_map(const CellularSheaf& f);
SheafMap zero_map(const CellularSheaf& f, const CellularSheaf& g);
SheafMap compose(const SheafMap& second, const SheafMap& first);
SheafMap add_maps(const SheafMap& a, const SheafMap& b);
SheafMap scale_map(const Scalar& s, const SheafMap& a);
bool is_zero_map(const SheafMap& a);
bool is_mono(const SheafMap& a);
bool is_epi(const SheafMap& a);
bool is_iso(const SheafMap& a);
bool same_map(const SheafMap& a, const SheafMap& b);

// Sections over an up-set, with coordinates at every element of the up-set.
struct SectionSpace {
  Mask where;
  std::vector<int> offset;  // -1 outside the up-set
  int total = 0;
  Matrix basis;  // total x dim
  int dim() const { return basis.cols(); }
  // Stalk component of the basis at p.
  Matrix proj(const CellularSheaf& f, int p) const;
};

SectionSpace sections(const CellularSheaf& f, const Mask& u);
int sections_dim(const CellularSheaf& f, const Mask& u);
// Matrix of Γ(V) -> Γ(U) in the section bases, for up-sets U ⊆ V.
Matrix restriction(const CellularSheaf& f, const SectionSpace& v, const SectionSpace& u);
// Γ(U;φ) in the section bases of source and target.
Matrix section_map(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi, const SectionSpace& su,
                   const SectionSpace& tu);

struct Kernel {
  CellularSheaf sheaf;
  SheafMap incl;
};
struct Cokernel {
  CellularSheaf sheaf;
  SheafMap proj;
};
struct DirectSum {
  CellularSheaf sheaf;
  SheafMap in1, in2, pr1, pr2;
};

Kernel kernel(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi);
Cokernel cokernel(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi);
// Image as a subsheaf of g.
Kernel image(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi);
DirectSum direct_sum(const CellularSheaf& f, const CellularSheaf& g);
CellularSheaf direct_sum_all(const FinitePoset& poset, const std::vector<CellularSheaf>& parts);
CellularSheaf tensor(const CellularSheaf& f, const CellularSheaf& g);
SheafMap tensor_maps(const CellularSheaf& f1, const CellularSheaf& f2, const SheafMap& a, const SheafMap& b);

// Basis of the space of sheaf maps f -> g over an up-set (all elements by default).
struct HomSpace {
  std::vector<SheafMap> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};
HomSpace hom_space(const CellularSheaf& f, const CellularSheaf& g);
HomSpace hom_space_on(const CellularSheaf& f, const CellularSheaf& g, const Mask& u);
// All entries of the components stacked in one column, row-major per element.
Matrix flatten_map(const SheafMap& m);
// Coordinates of m in the basis of h; nullopt when m is outside the span.
std::optional<Matrix> hom_coordinates(const HomSpace& h, const SheafMap& m);
// Hom sheaf: stalk at p is Hom(f|↑p, g|↑p).
CellularSheaf internal_hom(const CellularSheaf& f, const CellularSheaf& g);

// Derived limits over an up-set via the normalized chain complex of the order.
int cohomology_dim(const CellularSheaf& f, const Mask& u, int n);
// Restriction H^n(V) -> H^n(U) for up-sets U ⊆ V: dimension of its kernel and image.
struct CohomologyMap {
  int source_dim = 0;
  int target_dim = 0;
  int rank = 0;
};
CohomologyMap cohomology_restriction(const CellularSheaf& f, const Mask& v, const Mask& u, int n);

// Stalk k on ↓p with identity maps.
CellularSheaf elementary_injective(const FinitePoset& poset, int p);
// Stalk k on ↑p with identity maps.
CellularSheaf elementary_projective(const FinitePoset& poset, int p);

// 0 -> F -> I^0 -> I^1 -> ..., each I^n = ⊕_p J_p^{mult[n][p]}.
// The stalk of I^n at q is ⊕_{p >= q} k^{mult[n][p]}, blocks ordered by p.
struct InjectiveResolution {
  std::vector<CellularSheaf> terms;
  std::vector<std::vector<int>> mult;
  std::vector<SheafMap> maps;  // maps[0]: F -> I^0, maps[n]: I^{n-1} -> I^n
};
InjectiveResolution injective_resolution(const CellularSheaf& f, int length);
// Pointwise exactness of 0 -> F -> I^0 -> ... -> I^length.
bool is_exact_resolution(const CellularSheaf& f, const InjectiveResolution& r);
// Ext^n(F, G) from Hom(F, I^•) with I^• resolving G.
int ext_dim(const CellularSheaf& f, const CellularSheaf& g, int n);

// Extensions 0 -> A -> B -> C -> 0 through cocycles c_{pq}: C_p -> A_q on covering pairs.
struct CocycleSpace {
  std::vector<std::pair<int, int>> covers;
  std::vector<int> offset;  // per cover, into the cocycle vector
  int length = 0;
  Matrix cocycles;     // columns: basis of path-independent cochains
  Matrix coboundaries; // columns: spanning set of coboundaries
  int ext1_dim() const;
};
CocycleSpace ext1_cocycles(const CellularSheaf& c, const CellularSheaf& a);
struct ShortExact {
  CellularSheaf a, b, c;
  SheafMap i, pi;
};
ShortExact extension_from_cocycle(const CellularSheaf& a, const CellularSheaf& c, const CocycleSpace& z,
                                  const Matrix& cochain);
bool is_short_exact(const ShortExact& s);

// Random functor with stalks of dimension <= max_dim and small entries.
CellularSheaf random_sheaf(const FinitePoset& poset, Rng& rng, int max_dim);
SheafMap random_map(const CellularSheaf& f, const CellularSheaf& g, Rng& rng);

// Flabbiness on a finite poset via the local criterion at each element.
struct FlabbyWitness {
  Mask big;
  Mask small;
};
std::optional<FlabbyWitness> poset_flabby_failure(const CellularSheaf& f);

// One representative per isomorphism class of posets with n elements.
std::vector<FinitePoset> all_posets(int n);

}  // namespace tsite
