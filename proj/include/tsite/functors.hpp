#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsite/presheaf.hpp"
#include "tsite/tsheaf.hpp"

namespace tsite {

// ρ_*: the cellular data of a constructible X-sheaf read as a T-sheaf.
ConstructibleTSheaf rho_star(const XSheaf& f);

// W_m(U) = {x : [x - 1/m, x + 1/m] ⊆ U} ∩ (-m, m), a cofinal chain of V ⊂⊂ U.
SemilinearSet compact_shrink(const SemilinearSet& u, int m);

// Γ(U; ρ⁻¹G) as the limit of Γ(W_m(U); G), m = 1..depth (extended when the
// endpoints require it). Transitions are the restrictions W_{m+1} -> W_m.
ProObject rho_inv_chain(const ConstructibleTSheaf& g, const SemilinearSet& u, int depth);
// The first index from which the chain is constant for G.
int rho_inv_stable_index(const ConstructibleTSheaf& g, const SemilinearSet& u);
// dim Γ(U; ρ⁻¹G).
int rho_inv_sections(const ConstructibleTSheaf& g, const SemilinearSet& u);

// ρ⁻¹ρ_*F ≅ F on U: Γ(U;F) -> Γ(W_m(U);F) is an isomorphism at the stable index,
// the chain is constant from there, and restrictions to a smaller V ⊆ U commute.
struct UnitReport {
  bool pass = true;
  int opens = 0;
  std::string witness;
};
UnitReport rho_inv_star_check(const XSheaf& f, const std::vector<SemilinearSet>& opens);
// η_G ∘ Γ(U;φ) = Γ(W;φ) ∘ η_F for a map φ.
bool rho_inv_natural(const TSheafMap& phi, const SemilinearSet& u);

// ρ_!F as the ind-system F_n = k_{(-R-n, R+n)} ⊗ s_n⁻¹F, where s_n collapses
// [e - δ_n, e + δ_n] onto e for every endpoint e of F.
struct ShriekStage {
  CellComplex cx;
  std::vector<int> origin;  // cell of cx -> the cell of F's complex it lies in
  std::vector<int> target;  // cell of cx -> cell s_n(c) of F's complex
  std::vector<char> live;   // inside the cutoff (-R-n, R+n)
};
ShriekStage shriek_stage(const CellComplex& fcx, int n);
ConstructibleTSheaf rho_shriek_stage(const XSheaf& f, int n);
// ρ_!φ at stage n for φ on a common complex.
TSheafMap rho_shriek_stage_map(const TSheafMap& phi, int n);
IndSheaf rho_shriek(const XSheaf& f);
// Stage from which F_n is combinatorially constant relative to the given points.
int shriek_certificate(const CellComplex& fcx, const std::vector<Rational>& pts);
// The natural map F_n -> F.
TSheafMap shriek_counit(const XSheaf& f, int n);

// Hom(ρ_!F, G) ≅ Hom(F, ρ⁻¹G) with ξ and θ written out as matrices in Hom bases.
struct AdjunctionReport {
  bool pass = true;
  int stage = 0;
  int hom_shriek = 0;  // dim lim_n Hom(F_n, G)
  int hom_inv = 0;     // dim Hom(F, ρ⁻¹G)
  bool stage_stable = false;
  bool theta_xi_id = false;
  bool xi_theta_id = false;
  bool xi_natural = false;
  std::string witness;
};
AdjunctionReport adjunction_check(const XSheaf& f, const ConstructibleTSheaf& g);

// ρ⁻¹ρ_!F ≅ F on U: at two consecutive W_m(U) past the stable index, the counit
// F_n -> F is an isomorphism on sections at a certified n, and so is Γ(U;F) -> Γ(W_m;F).
bool rho_inv_shriek_check(const XSheaf& f, const SemilinearSet& u);
// Stagewise exactness of ρ_! on a short exact sequence on a common complex.
bool rho_shriek_exact(const TSheafMap& i, const TSheafMap& p, int stages);
// ρ_!(F⊗G) and ρ_!F ⊗ ρ_!G agree stage by stage.
bool rho_shriek_tensor(const XSheaf& f, const XSheaf& g, int stages);

// The two values in the colimit formula for ρ_!k_X: the presheaf colimit
// lind_{V ⊃⊃ U} Γ(V; F) over V ⊇ closure(U), and the sheaf value.
struct ShriekValues {
  int presheaf_colimit = 0;
  int sheaf = 0;
  int star = 0;
};
ShriekValues shriek_values(const XSheaf& f, const SemilinearSet& u);

// k_U on the T-site built twice over the cell poset of U: the sheaf associated to
// the presheaf V ↦ k for V ⊆ U (0 otherwise), and ρ_*k_U. The all-ones section
// gives a presheaf map from the first to the second; the check is that it becomes
// an isomorphism after sheafification, and that both agree on connected V ⊆ U.
struct TwoWaysReport {
  bool pass = true;
  int opens = 0;
  int connected = 0;
  std::string witness;
};
TwoWaysReport constant_sheaf_two_ways(const SemilinearSet& u);

// A monotone piecewise-affine homeomorphism of the line, or a constant map.
class SiteMap {
 public:
  // Breakpoints x_0 < ... < x_k with images y_i, strictly monotone, k >= 1;
  // extended affinely past both ends.
  static SiteMap piecewise(const std::vector<Rational>& xs, const std::vector<Rational>& ys);
  static SiteMap affine(const Rational& slope, const Rational& shift);
  static SiteMap constant(const Rational& c);
  bool is_constant() const { return constant_; }
  bool increasing() const;
  Rational apply(const Rational& x) const;
  Rational inverse(const Rational& y) const;
  // f⁻¹(V); throws for a constant map and bounded V (the preimage is not in T).
  SemilinearSet preimage(const SemilinearSet& v) const;
  // Whether f⁻¹ sends bounded opens to bounded opens.
  bool is_T_morphism() const { return !constant_; }

 private:
  std::vector<Rational> xs_, ys_;
  bool constant_ = false;
};

// f_*F; throws std::invalid_argument for a constant map.
ConstructibleTSheaf pushforward(const SiteMap& f, const ConstructibleTSheaf& F);
// For a constant map into a point, Γ(pt; f_*F) = Γ(X; F) evaluated over T_loc.
ProObject pushforward_point_sections(const SiteMap& f, const ConstructibleTSheaf& F, int depth);

}  // namespace tsite
