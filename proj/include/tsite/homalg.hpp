#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsite/functors.hpp"
#include "tsite/tsheaf.hpp"

namespace tsite {

// Union of the cells in a mask.
SemilinearSet mask_set(const CellComplex& cx, const Mask& m);

// ---------------------------------------------------------------- flabby

struct FlabbyResult {
  bool flabby = true;
  // (V, U) with U ⊆ V bounded and Γ(V) -> Γ(U) not surjective.
  std::optional<std::pair<SemilinearSet, SemilinearSet>> witness;
};
// Decided on the refinement by one interior point per edge.
FlabbyResult is_flabby(const ConstructibleTSheaf& f);
// Γ(V) -> Γ(U) surjective.
bool restriction_surjective(const ConstructibleTSheaf& f, const SemilinearSet& v, const SemilinearSet& u);
// All edge stalks vanish, i.e. F is a finite sum of skyscrapers.
bool edge_stalks_vanish(const ConstructibleTSheaf& f);

struct GlobalFlabbyReport {
  bool surjective = true;
  bool conclusive = false;
  int opens = 0;
  int stages = 0;
  std::string witness;
};
// Periodic, unbounded, bounded and witness-shaped T_loc opens for F.
std::vector<TlocOpen> tloc_sample_opens(const ConstructibleTSheaf& f, Rng& rng, int count);
// Depth from which a stage failure is visible for every sampled open.
int conclusive_depth(const ConstructibleTSheaf& f, const std::vector<TlocOpen>& opens);
// Γ((-n,n); F) -> Γ(U ∩ (-n,n); F) surjective for n = 1..depth.
GlobalFlabbyReport is_flabby_global(const ConstructibleTSheaf& f, int depth, const std::vector<TlocOpen>& opens);

// ---------------------------------------------------------------- c-soft

// Γ(K; F) = lind_{W ⊇ K} Γ(W; F) for a compact K, on the open star of K.
SectionSpace closure_sections(const ConstructibleTSheaf& f, const SemilinearSet& k);
// Γ(W; F) -> Γ(K; F) for a compact K ⊆ W.
Matrix closure_restriction(const ConstructibleTSheaf& f, const SemilinearSet& w, const SemilinearSet& k);
// dim Γ(K + (-1/n, 1/n); F).
int neighborhood_sections(const ConstructibleTSheaf& f, const SemilinearSet& k, int n);

struct CSoftResult {
  bool csoft = true;
  int pairs = 0;
  bool colimit_agrees = true;
  // (W, V) with V ⊂⊂ W and Γ(W) -> Γ(closure V) not surjective.
  std::optional<std::pair<SemilinearSet, SemilinearSet>> witness;
};
// K ranges over one or two disjoint closed cells of the refinement by two
// interior points per edge; W is a bounded open containing K and every endpoint.
CSoftResult is_c_soft(const XSheaf& f);

// ---------------------------------------------------------------- coherent

struct CoherentPresentation {
  std::vector<SemilinearSet> generators;  // ⊕ k_{U_i}
  std::vector<SemilinearSet> relations;   // ⊕ k_{V_j}
  TSheafMap pi;                           // ⊕ k_{U_i} -> F
  TSheafMap rel;                          // ⊕ k_{V_j} -> ⊕ k_{U_i}
  bool exact = false;                     // rel, pi exact and pi onto, cellwise
  bool stalk_exact = false;               // the same at points on both sides of each endpoint
};
// Generators k_U -> F are sections over bounded open intervals, chosen greedily.
// Returns nullopt when F has unbounded support (no finite presentation by k_U, U ∈ T).
std::optional<CoherentPresentation> coherent_presentation(const ConstructibleTSheaf& f);
bool is_coherent(const ConstructibleTSheaf& f);
// A surjection ⊕ k_{U_i} -> F with every U_i a bounded open interval.
std::optional<std::pair<std::vector<SemilinearSet>, TSheafMap>> coherent_generators(const ConstructibleTSheaf& f);

// ---------------------------------------------------------------- Ext

// k_{V∖U} for opens U ⊆ V.
ConstructibleTSheaf boundary_sheaf(const SemilinearSet& u, const SemilinearSet& v);
// Ext¹(k_{V∖U}, F) from the long exact sequence of 0 -> k_U -> k_V -> k_{V∖U} -> 0.
int ext1_boundary_les(const ConstructibleTSheaf& f, const SemilinearSet& u, const SemilinearSet& v);
// Extⁿ(G, F) on the common refinement, through an injective resolution.
int ext_dim(const ConstructibleTSheaf& g, const ConstructibleTSheaf& f, int n);

struct FlabbyExtReport {
  bool flabby = false;        // (i)
  bool ext_vanishes = false;  // (ii) Ext¹(G, F) = 0 for sampled G
  bool boundary_vanishes = false;  // (iii) Ext¹(k_{V∖U}, F) = 0 for sampled U ⊆ V
  bool methods_agree = true;  // LES and resolution give the same boundary Ext¹
  int sampled = 0;
  std::string witness;
  bool consistent() const { return methods_agree && flabby == ext_vanishes && flabby == boundary_vanishes; }
};
// Boundary pairs U ⊆ V: splits of small intervals plus random pairs.
std::vector<std::pair<SemilinearSet, SemilinearSet>> boundary_pairs(const ConstructibleTSheaf& f, Rng& rng,
                                                                    int random_count);
FlabbyExtReport flabby_ext_criterion(const ConstructibleTSheaf& f, Rng& rng, int samples);

// ---------------------------------------------------------------- acyclicity

struct TShortExact {
  ConstructibleTSheaf a, b, c;
  TSheafMap i, p;
};
bool is_short_exact(const TShortExact& s);
// Finite sum of skyscrapers at random points.
ConstructibleTSheaf random_skyscraper_sum(Rng& rng, int max_points, int max_dim);
// 0 -> A -> B -> C -> 0 from a random extension cocycle.
TShortExact random_extension(Rng& rng, const ConstructibleTSheaf& a, const ConstructibleTSheaf& c);
// 0 -> Γ(U;A) -> Γ(U;B) -> Γ(U;C) -> 0 exact.
bool sections_exact(const TShortExact& s, const SemilinearSet& u);
// 0 -> Hom(G,A) -> Hom(G,B) -> Hom(G,C) -> 0 exact.
bool hom_exact(const ConstructibleTSheaf& g, const TShortExact& s);
// 0 -> Hom(C,F) -> Hom(B,F) -> Hom(A,F) -> 0 exact.
bool hom_exact_contravariant(const TShortExact& s, const ConstructibleTSheaf& f);
// 0 -> k_{(0,1)+(2,3)} -> k_{(0,3)} -> k_{[1,2]} -> 0.
TShortExact boundary_sequence();

struct SuiteReport {
  int instances = 0;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> witnesses;
  bool pass() const { return failures == 0; }
  void record(bool ok, const std::string& what);
};
// Sequences with flabby first term: Γ(U;·) and Hom(G,·) exactness, the Hom sheaf
// test for flabbiness, and exactness of Hom(·, F) on coherent sequences.
SuiteReport flabby_acyclicity_suite(std::uint64_t seed, int count);
// The deliberately non-flabby cases must fail.
SuiteReport flabby_counterexamples();

// Closure-section exactness with c-soft first term, quotient stability, and
// exactness of global sections along the exhaustion (-n, n).
SuiteReport csoft_suite(std::uint64_t seed, int count);

}  // namespace tsite
