#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsite/homalg.hpp"
#include "tsite/presheaf.hpp"
#include "tsite/tsheaf.hpp"

namespace tsite {

// ---------------------------------------------------------------- finite algebras

// The Boolean subalgebra of subsets of {0..n-1} generated by a family.
class FinBoolAlg {
 public:
  FinBoolAlg(int carrier, const std::vector<Mask>& generators);

  int carrier() const { return carrier_; }
  // Atoms partition the carrier; every element is a union of atoms.
  const std::vector<Mask>& atoms() const { return atoms_; }
  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  bool contains(const Mask& m) const;
  // Union of the atoms selected by the bits of code.
  Mask element(std::uint64_t code) const;
  // All 2^atoms elements; intended for small algebras.
  std::vector<Mask> elements() const;
  // Atom containing the point.
  int atom_of(int point) const { return atom_of_[point]; }

 private:
  int carrier_;
  std::vector<Mask> atoms_;
  std::vector<int> atom_of_;
};

// The four ultrafilter axioms checked over all elements of the algebra.
bool ultrafilter_validate(const FinBoolAlg& alg, const std::vector<Mask>& candidate);
// Elements containing the atom.
std::vector<Mask> principal_ultrafilter(const FinBoolAlg& alg, int atom);
// Every subfamily of the algebra that validates; needs at most 4 atoms.
std::vector<std::vector<Mask>> brute_ultrafilters(const FinBoolAlg& alg);

// A finite T-spectrum: points are atoms meeting some member of T, opens are
// unions of the basic sets Ũ.
struct FiniteSpectrum {
  std::vector<int> atoms;       // atom index of each spectrum point
  std::vector<Mask> basis;      // Ũ for each T member, over spectrum points
  std::vector<char> basis_qc;   // every cover of Ũ by basic sets has a finite subcover
  FiniteSite space;             // the topology generated by the basis
};
FiniteSpectrum spectrum_points(const FinBoolAlg& alg, const std::vector<Mask>& t_members);
// Ũ over the points of a spectrum.
Mask tilde(const FinBoolAlg& alg, const FiniteSpectrum& s, const Mask& u);

// ---------------------------------------------------------------- finite equivalence

// The T-site of a finite space whose T is its full open lattice.
struct FiniteTSpace {
  FiniteSite site;
  FinBoolAlg alg;
  FiniteSpectrum spec;
  std::vector<int> open_to_spec;  // index of Ũ among the opens of spec.space
  std::vector<int> spec_to_open;  // smallest U with W ⊆ Ũ, per open W of spec.space

  explicit FiniteTSpace(const FiniteSite& site);
};

// ζ_*G(V) = G(Ṽ).
Presheaf zeta_push(const FiniteTSpace& x, const Presheaf& g);
// ζ⁻¹F = (W ↦ colim_{W ⊆ Ṽ} F(V))⁺⁺, with the unit F(V) -> ζ⁻¹F(Ṽ).
PlusResult zeta_pull(const FiniteTSpace& x, const Presheaf& f);

struct EquivalenceReport {
  int instances = 0;
  int checks = 0;
  bool pass = true;
  std::string witness;
};
// ζ_*ζ⁻¹F ≅ F and ζ⁻¹ζ_*G ≅ G on random sheaves, section-wise and stalk-wise.
EquivalenceReport finite_equivalence_check(const FiniteSite& site, Rng& rng, int count);

// ---------------------------------------------------------------- line points

// A point of the spectrum of the line, given symbolically.
struct UltraPoint {
  enum class Kind { Principal, RightGerm, LeftGerm, Cut, PlusInfinity, MinusInfinity, Atom };
  Kind kind = Kind::Principal;
  Rational q;       // principal and germs
  Rational lo, hi;  // cut: the point lies strictly between lo and hi
  int atom = -1;    // finite algebras

  static UltraPoint principal(const Rational& q);
  static UltraPoint right_germ(const Rational& q);
  static UltraPoint left_germ(const Rational& q);
  static UltraPoint cut(const Rational& lo, const Rational& hi);
  static UltraPoint plus_infinity();
  static UltraPoint minus_infinity();
  // "q", "q+", "q-", "cut(lo,hi)", "+inf", "-inf".
  static UltraPoint parse(const std::string& s);
  std::string str() const;
  // Contains a bounded open, i.e. lies in the spectrum of the site.
  bool in_spectrum() const;
};

struct NonRepresentable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// α ∈ S̃ for a semilinear set S. A cut whose interval meets an endpoint of S throws.
bool membership(const UltraPoint& a, const SemilinearSet& s);
// A basic open Ũ containing α inside which every constructible datum of F is
// constant near α: the open star of α's cell in F refined by α.
SemilinearSet small_neighborhood(const ConstructibleTSheaf& f, const UltraPoint& a);
// The cell of F (refined by α) carrying the stalk at α.
struct StalkCell {
  ConstructibleTSheaf refined;
  int cell = 0;
};
StalkCell stalk_cell(const ConstructibleTSheaf& f, const UltraPoint& a);
int stalk_at(const ConstructibleTSheaf& f, const UltraPoint& a);
// colim over Ũ ∋ α of Γ(U;F), read on two nested basic neighborhoods after
// checking the restriction between them is an isomorphism.
int stalk_by_colimit(const ConstructibleTSheaf& f, const UltraPoint& a);
// φ_α in the cellular bases.
Matrix stalk_map(const TSheafMap& phi, const UltraPoint& a);

// Principal points at the endpoints and one cut per edge.
std::vector<UltraPoint> detection_points(const CellComplex& cx);
struct DetectionReport {
  bool mono = false, epi = false, iso = false;  // from stalks
  bool cell_mono = false, cell_epi = false, cell_iso = false;  // from the cellular map
  bool agrees() const { return mono == cell_mono && epi == cell_epi && iso == cell_iso; }
};
DetectionReport stalk_detection(const TSheafMap& phi);

// Γ(U;F) rebuilt as the limit over the cells in U of the stalks at their symbolic
// points, with generization maps read from restrictions between basic opens.
int sections_from_stalks(const ConstructibleTSheaf& f, const SemilinearSet& u);

// Stalks of 0 -> A -> B -> C -> 0 are exact at every detection point.
bool stalks_exact(const TShortExact& s);

// Ũ∩Ṽ = (U∩V)~ and Ũ∪Ṽ = (U∪V)~ at the given points.
bool basis_compatible(const SemilinearSet& u, const SemilinearSet& v, const std::vector<UltraPoint>& pts);

}  // namespace tsite
