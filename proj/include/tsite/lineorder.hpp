#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsite/rng.hpp"

namespace tsite {

// Coordinates on the line are always rationals, whatever the base field.
using Rational = mpq_class;

// n/d in canonical form (mpq_class(n, d) alone is not canonicalized).
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& s);

struct Endpoint {
  int inf = 0;  // -1, 0 (finite) or +1
  Rational q;

  static Endpoint neg_inf() { return {-1, 0}; }
  static Endpoint pos_inf() { return {1, 0}; }
  static Endpoint at(const Rational& v) { return {0, v}; }
  bool finite() const { return inf == 0; }
  std::string str() const;
  static Endpoint parse(const std::string& s);
};

bool operator<(const Endpoint& a, const Endpoint& b);
bool operator==(const Endpoint& a, const Endpoint& b);
inline bool operator!=(const Endpoint& a, const Endpoint& b) { return !(a == b); }
inline bool operator<=(const Endpoint& a, const Endpoint& b) { return !(b < a); }

// A point {q} (lo == hi) or an open interval (lo, hi).
struct Piece {
  bool point = false;
  Endpoint lo;
  Endpoint hi;
};

class SemilinearSet {
 public:
  SemilinearSet() = default;

  static SemilinearSet interval(const Endpoint& a, const Endpoint& b);
  static SemilinearSet interval(const Rational& a, const Rational& b);
  static SemilinearSet closed_interval(const Rational& a, const Rational& b);
  static SemilinearSet point(const Rational& q);
  static SemilinearSet line();
  static SemilinearSet from_pieces(const std::vector<Piece>& pieces);
  // Syntax: pieces joined by '+', e.g. "(0,1)+{1}+(1,2)"; "empty" for the empty set.
  static SemilinearSet parse(const std::string& s);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool contains(const Rational& q) const;
  bool is_open() const;
  bool is_bounded() const;
  // Finite endpoints of all pieces, sorted and distinct.
  std::vector<Rational> endpoints() const;
  std::string str() const;

  friend bool operator==(const SemilinearSet& a, const SemilinearSet& b);
  friend bool operator!=(const SemilinearSet& a, const SemilinearSet& b) { return !(a == b); }

 private:
  std::vector<Piece> pieces_;
  friend SemilinearSet from_atoms(const std::vector<Rational>& pts, const std::vector<char>& in);
};

using SemilinearOpen = SemilinearSet;

enum class BoolOp { Union, Intersect, Diff, Complement };

SemilinearSet bool_ops(const SemilinearSet& a, const SemilinearSet& b, BoolOp op);
SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet diff(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet complement(const SemilinearSet& a);
bool subset(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet closure(const SemilinearSet& a);
SemilinearSet interior(const SemilinearSet& a);
SemilinearSet translate(const SemilinearSet& a, const Rational& t);
// Number of connected components (the T-connected components of a T-subset).
int connected_components(const SemilinearSet& a);
std::vector<SemilinearSet> components(const SemilinearSet& a);

bool is_T_open(const SemilinearSet& u);

// A T_loc open: a finite union, or the locally finite union of the
// translates pattern + k*period over all integers k.
struct TlocOpen {
  enum class Kind { Finite, Periodic };
  Kind kind = Kind::Finite;
  SemilinearSet set;
  SemilinearSet pattern;
  Rational period;

  static TlocOpen finite(const SemilinearSet& s);
  static TlocOpen periodic(const SemilinearSet& pattern, const Rational& period);
  static TlocOpen whole_line() { return finite(SemilinearSet::line()); }
  // U ∩ (lo, hi).
  SemilinearSet window(const Rational& lo, const Rational& hi) const;
  SemilinearSet truncate(long n) const { return window(Rational(-n), Rational(n)); }
  std::string str() const;
};

// Validates the representation; throws std::invalid_argument when malformed.
bool is_Tloc_open(const TlocOpen& u);

// U ⊂⊂ V on the line: U bounded and closure(U) ⊆ V.
bool rwqc(const SemilinearSet& u, const SemilinearSet& v);

// An increasing covering {W_n} of V, given symbolically.
struct WitnessCovering {
  std::string description;
  std::function<SemilinearSet(int)> member;
};

// A covering of V with no finite subfamily covering U; present iff !rwqc(U,V).
std::optional<WitnessCovering> rwqc_witness(const SemilinearSet& u, const SemilinearSet& v);
// Checks the witness on its first n members: each lies in V, none of the
// finite prefixes covers U, and sample points of V are eventually covered.
bool witness_defeats(const SemilinearSet& u, const SemilinearSet& v, const WitnessCovering& w, int n);
// Standard increasing coverings of V (shrinking toward each boundary point
// and toward infinity); true iff each admits a finite prefix covering U.
bool definitional_rwqc_probe(const SemilinearSet& u, const SemilinearSet& v, int n);

// Indices of a subfamily covering U, or nullopt when the family does not cover U.
std::optional<std::vector<int>> cover_finite_subcover(const SemilinearSet& u,
                                                      const std::vector<SemilinearSet>& family);

// Cells of a finite endpoint set E = {e_0 < ... < e_{m-1}}. Cell 2i is the open
// edge ending at e_i (cell 2m is the last unbounded edge), cell 2i+1 is {e_i}.
// Every vertex lies below its two adjacent edges.
struct CellComplex {
  std::vector<Rational> E;

  int size() const { return 2 * static_cast<int>(E.size()) + 1; }
  int num_vertices() const { return static_cast<int>(E.size()); }
  static bool is_vertex(int c) { return c % 2 == 1; }
  static int vertex_cell(int i) { return 2 * i + 1; }
  static int edge_cell(int i) { return 2 * i; }
  const Rational& vertex_value(int c) const { return E[(c - 1) / 2]; }
  bool is_bounded_cell(int c) const;
  SemilinearSet cell_set(int c) const;
  // A representative point of the cell.
  Rational sample(int c) const;
  int locate(const Rational& q) const;
  // Covering relations (vertex, edge) of the zigzag.
  std::vector<std::pair<int, int>> covers() const;
  // Membership mask when S is a union of cells.
  std::optional<std::vector<char>> mask_of(const SemilinearSet& s) const;
  std::string cell_str(int c) const;
};

CellComplex cells(std::vector<Rational> e);

struct Refinement {
  CellComplex fine;
  std::vector<int> to_coarse;  // cell of the refinement -> containing cell
};

Refinement refine(const CellComplex& c, const std::vector<Rational>& extra);
// One interior point in each edge, unbounded edges included.
std::vector<Rational> edge_samples(const CellComplex& c);
std::vector<Rational> merge_points(const std::vector<Rational>& a, const std::vector<Rational>& b);

std::vector<SemilinearSet> exhaustion_chain(int n);

struct LwcReport {
  int lwc1 = 0;
  int lwc2 = 0;
  int lwc3 = 0;
  std::vector<std::string> counterexamples;
  bool pass() const { return counterexamples.empty(); }
};

LwcReport lwc_validate(int sample_size, std::uint64_t seed);
// W with U' ⊂⊂ W ⊂⊂ U, built from closure gaps; requires rwqc(U', U).
SemilinearSet lwc3_witness(const SemilinearSet& uprime, const SemilinearSet& u);

// Random data on the grid {k/den : |k| <= span*den}.
Rational random_grid_point(Rng& rng, int span = 4, int den = 4);
SemilinearSet random_open(Rng& rng, int max_pieces, bool bounded, int span = 4, int den = 4);
SemilinearSet random_set(Rng& rng, int max_pieces, int span = 4, int den = 4);

}  // namespace tsite
