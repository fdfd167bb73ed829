#pragma once

#include "tsite/cellsheaf.hpp"
#include "tsite/presheaf.hpp"

namespace tsite {

// Independent reference computations used to guard the fast paths.

// P⁺(U) as the colimit of P(S) over every covering S of U, ordered by refinement.
// Exponential in the number of opens inside U: refused past kBrutePlusMaxOpens,
// and memory stays small up to kBrutePlusRoutineOpens.
constexpr size_t kBrutePlusMaxOpens = 12;
constexpr int kBrutePlusRoutineOpens = 7;
int brute_plus_dim(const Presheaf& p, int u);

// Surjectivity of Γ(V) -> Γ(U) checked for every pair of opens U ⊆ V.
bool brute_is_flabby(const CellularSheaf& f);

// Ext^n(F, G) from a projective resolution of F by sums of k_{↑p}.
int projective_ext_dim(const CellularSheaf& f, const CellularSheaf& g, int n);

// Ext^1(F, G) by counting extension cocycles modulo coboundaries.
int yoneda_ext1_dim(const CellularSheaf& f, const CellularSheaf& g);

}  // namespace tsite
