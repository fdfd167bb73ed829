#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsite/cellsheaf.hpp"
#include "tsite/lineorder.hpp"

namespace tsite {

// A sheaf on the line that is constant on the cells of a finite endpoint set.
// Two values describe the same object when they agree after a common refinement.
struct ConstructibleTSheaf {
  CellComplex cx;
  CellularSheaf data;  // on FinitePoset::from_cells(cx)

  static ConstructibleTSheaf zero();
  // Checks that data lives on the cell poset of cx.
  static ConstructibleTSheaf make(const CellComplex& cx, const CellularSheaf& data);
  const std::vector<Rational>& endpoints() const { return cx.E; }
  // Pullback to the refinement of cx by extra points.
  ConstructibleTSheaf refine(const std::vector<Rational>& extra) const;
  // Zero on both unbounded edges.
  bool has_bounded_support() const;
  // Union of the cells with a nonzero stalk.
  SemilinearSet support() const;
  std::string str() const;
};

// Objects of mod(k_X) use the same cellular representation.
using XSheaf = ConstructibleTSheaf;

// A morphism stored on a complex shared by source and target.
struct TSheafMap {
  ConstructibleTSheaf src;
  ConstructibleTSheaf tgt;
  SheafMap map;

  TSheafMap refine(const std::vector<Rational>& extra) const;
  bool valid() const;
};

std::pair<ConstructibleTSheaf, ConstructibleTSheaf> common_refinement(const ConstructibleTSheaf& a,
                                                                      const ConstructibleTSheaf& b);
// Identical cellular data after refining both to the union of endpoints.
bool same_up_to_refinement(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b);
// An explicit isomorphism, searched among combinations of a Hom basis.
std::optional<SheafMap> find_isomorphism(const CellularSheaf& a, const CellularSheaf& b);
std::optional<TSheafMap> find_isomorphism(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b);

// Extension by zero of k on a locally closed semilinear set.
ConstructibleTSheaf constant_sheaf(const SemilinearSet& z);
ConstructibleTSheaf skyscraper(const Rational& q);
ConstructibleTSheaf direct_sum(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b);
ConstructibleTSheaf direct_sum_all(const std::vector<ConstructibleTSheaf>& parts);
ConstructibleTSheaf tensor(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b);
ConstructibleTSheaf sheaf_hom(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b);

// Random cellular data on cells(E); bounded_support forces zero unbounded edges.
ConstructibleTSheaf random_tsheaf(Rng& rng, const std::vector<Rational>& e, int max_dim,
                                  bool bounded_support = false);
// Sorted random endpoints on the grid of random_grid_point.
std::vector<Rational> random_endpoints(Rng& rng, int max_count, int span = 3, int den = 2);
TSheafMap random_tmap(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b, Rng& rng);
TSheafMap identity_tmap(const ConstructibleTSheaf& a);
// k_W -> k_W' for opens W ⊆ W'.
TSheafMap inclusion_map(const SemilinearSet& w, const SemilinearSet& w2);
TSheafMap compose(const TSheafMap& second, const TSheafMap& first);

struct TKernel {
  ConstructibleTSheaf sheaf;
  TSheafMap incl;
};
struct TCokernel {
  ConstructibleTSheaf sheaf;
  TSheafMap proj;
};
TKernel kernel(const TSheafMap& m);
TCokernel cokernel(const TSheafMap& m);
TKernel image(const TSheafMap& m);

// Sections over an open union of cells, in a basis that does not depend on the
// refinement used to compute it.
SectionSpace cell_sections(const ConstructibleTSheaf& f, const SemilinearSet& u);
int sections_dim(const ConstructibleTSheaf& f, const SemilinearSet& u);
// Γ(V) -> Γ(U) for opens U ⊆ V.
Matrix restriction_on(const ConstructibleTSheaf& f, const SemilinearSet& v, const SemilinearSet& u);
// Γ(U; φ).
Matrix section_map_on(const TSheafMap& m, const SemilinearSet& u);
int hom_dim(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b);

// An inverse sequence of finite-dimensional spaces standing for a limit that
// need not be finite-dimensional.
struct ProObject {
  std::vector<int> stage_dims;      // stage n = 1, 2, ...
  std::vector<Matrix> transitions;  // transitions[i]: stage i+2 -> stage i+1
  bool stable = false;
  int stable_from = 0;
  int limit_dim = -1;  // meaningful when stable
  std::string str() const;
};

// Γ(U; F) for U in T_loc along the chain U ∩ (-n, n), n = 1..depth (extended
// past the endpoints of F when needed to certify stability).
ProObject evaluate_tloc(const ConstructibleTSheaf& f, const TlocOpen& u, int depth);

// Cellular data repeated with a period: vertices at E0 + k*period.
struct PeriodicSheaf {
  Rational period;
  std::vector<Rational> e0;  // sorted, in [0, period)
  std::vector<int> vdim;     // stalk at e0[i]
  std::vector<int> edim;     // stalk on the edge right of e0[i]
  std::vector<Matrix> right; // vertex i -> edge i
  std::vector<Matrix> left;  // vertex i -> edge i-1 (cyclically)

  // ⊕_{n ∈ ℤ} k_{{n}}.
  static PeriodicSheaf integer_skyscrapers();
  // Cellular data agreeing with the periodic sheaf on (-n, n).
  ConstructibleTSheaf window(long n) const;
};
ProObject evaluate_tloc(const PeriodicSheaf& f, const TlocOpen& u, int depth);

// A presheaf on bounded semilinear opens given by callbacks.
struct TPresheaf {
  std::string name;
  std::function<int(const SemilinearSet&)> dim;
  // P(V) -> P(U) for U ⊆ V.
  std::function<Matrix(const SemilinearSet& v, const SemilinearSet& u)> res;
};
TPresheaf sections_tpresheaf(const ConstructibleTSheaf& f);
// k on every nonempty open, identity restrictions.
TPresheaf constant_tpresheaf();
// Sections of F with every proper restriction doubled: composites disagree.
TPresheaf rescaled_tpresheaf(const ConstructibleTSheaf& f);

struct AxiomReport {
  bool pass = true;
  int pairs = 0;
  int triples = 0;
  int coverings = 0;
  std::string witness;
};
// P(∅) = 0, functoriality on nested triples, two-open gluing on random pairs,
// and the equalizer condition on random finite coverings.
AxiomReport sheaf_axioms_check(const TPresheaf& p, int budget, std::uint64_t seed);
// Exactness of 0 -> P(U∪V) -> P(U)⊕P(V) -> P(U∩V).
bool gluing_exact(const TPresheaf& p, const SemilinearSet& u, const SemilinearSet& v);

struct CertificateViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sequence F_1 -> F_2 -> ... with a stabilization certificate per bounded open.
struct IndSheaf {
  std::string name;
  std::function<ConstructibleTSheaf(int)> stage;
  // Stage n -> stage n+1, stored on a common refinement.
  std::function<TSheafMap(int)> transition;
  // n0(U): past this index Γ(U; F_n) is claimed to be constant.
  std::function<int(const SemilinearSet&)> certificate;
};

// colim_n Γ(U; F_n), read off at n0(U) after checking that the next two
// transitions are isomorphisms on U. Throws CertificateViolation otherwise.
int ind_colimit_sections(const IndSheaf& s, const SemilinearSet& u);
// Γ(U; F_{n0(U)}) -> Γ(U; F_n) for n >= n0(U).
Matrix ind_transition_on(const IndSheaf& s, const SemilinearSet& u, int from, int to);
// U ↦ colim_n Γ(U; F_n) with the induced restrictions.
TPresheaf ind_colimit_presheaf(const IndSheaf& s);
// Γ(U; C) where C is the stalkwise colimit of F_1 -> ... -> F_N, N = n0(U) + 2.
int stalkwise_colimit_sections(const IndSheaf& s, const SemilinearSet& u);

IndSheaf constant_ind(const ConstructibleTSheaf& f);
// F_n = F ⊗ k_{W_n} with W_n = (a + (b-a)/(n+1), b) increasing to (a, b).
IndSheaf growing_ind(const ConstructibleTSheaf& f, const Rational& a, const Rational& b);
// F_n = ⊕^n k_{(0,1)} with the inclusions; carries a deliberately false certificate.
IndSheaf unbounded_ind();

}  // namespace tsite
