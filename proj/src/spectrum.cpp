#include "tsite/spectrum.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tsite {

// ---------------------------------------------------------------- finite algebras

FinBoolAlg::FinBoolAlg(int carrier, const std::vector<Mask>& generators) : carrier_(carrier), atom_of_(carrier, -1) {
  std::map<std::vector<char>, int> by_signature;
  for (int p = 0; p < carrier; ++p) {
    std::vector<char> sig;
    for (const Mask& g : generators) {
      if (static_cast<int>(g.size()) != carrier) throw std::invalid_argument("generator has wrong carrier size");
      sig.push_back(g[p]);
    }
    auto [it, fresh] = by_signature.emplace(sig, static_cast<int>(atoms_.size()));
    if (fresh) atoms_.emplace_back(carrier, 0);
    atoms_[it->second][p] = 1;
    atom_of_[p] = it->second;
  }
}

bool FinBoolAlg::contains(const Mask& m) const {
  if (static_cast<int>(m.size()) != carrier_) return false;
  for (const Mask& a : atoms_) {
    int hit = mask_count(mask_and(a, m));
    if (hit != 0 && hit != mask_count(a)) return false;
  }
  return true;
}

Mask FinBoolAlg::element(std::uint64_t code) const {
  Mask m(carrier_, 0);
  for (int i = 0; i < num_atoms(); ++i)
    if (code >> i & 1) m = mask_or(m, atoms_[i]);
  return m;
}

std::vector<Mask> FinBoolAlg::elements() const {
  if (num_atoms() > 20) throw std::invalid_argument("algebra too large to enumerate");
  std::vector<Mask> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << num_atoms()); ++c) out.push_back(element(c));
  return out;
}

namespace {

std::uint64_t code_of(const FinBoolAlg& alg, const Mask& m) {
  std::uint64_t c = 0;
  for (int i = 0; i < alg.num_atoms(); ++i)
    if (mask_subset(alg.atoms()[i], m)) c |= std::uint64_t{1} << i;
  return c;
}

// Axioms on a family given as a bitset over element codes.
bool ultra_codes(int k, const std::vector<char>& in) {
  const std::uint64_t n = std::uint64_t{1} << k;
  if (!in[n - 1] || in[0]) return false;
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = a; b < n; ++b) {
      if (static_cast<bool>(in[a & b]) != (in[a] && in[b])) return false;
      if (static_cast<bool>(in[a | b]) != (in[a] || in[b])) return false;
    }
  return true;
}

}  // namespace

bool ultrafilter_validate(const FinBoolAlg& alg, const std::vector<Mask>& candidate) {
  const int k = alg.num_atoms();
  if (k > 20) throw std::invalid_argument("algebra too large to validate");
  std::vector<char> in(std::size_t{1} << k, 0);
  for (const Mask& m : candidate) {
    if (!alg.contains(m)) return false;
    in[code_of(alg, m)] = 1;
  }
  return ultra_codes(k, in);
}

std::vector<Mask> principal_ultrafilter(const FinBoolAlg& alg, int atom) {
  std::vector<Mask> out;
  for (const Mask& m : alg.elements())
    if (mask_subset(alg.atoms()[atom], m)) out.push_back(m);
  return out;
}

std::vector<std::vector<Mask>> brute_ultrafilters(const FinBoolAlg& alg) {
  const int k = alg.num_atoms();
  if (k > 4) throw std::invalid_argument("brute ultrafilter enumeration needs at most 4 atoms");
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << n); ++fam) {
    std::vector<char> in(n);
    for (std::uint64_t c = 0; c < n; ++c) in[c] = fam >> c & 1;
    if (!ultra_codes(k, in)) continue;
    std::vector<Mask> u;
    for (std::uint64_t c = 0; c < n; ++c)
      if (in[c]) u.push_back(alg.element(c));
    out.push_back(u);
  }
  return out;
}

namespace {

std::vector<Mask> lattice_closure(int n, std::vector<Mask> ms) {
  ms.push_back(Mask(n, 0));
  ms.push_back(Mask(n, 1));
  std::set<Mask> seen(ms.begin(), ms.end());
  std::vector<Mask> all(seen.begin(), seen.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Mask> cur = all;
    for (const Mask& a : cur)
      for (const Mask& b : cur)
        for (const Mask& c : {mask_and(a, b), mask_or(a, b)})
          if (seen.insert(c).second) {
            all.push_back(c);
            grew = true;
          }
  }
  return all;
}

}  // namespace

Mask tilde(const FinBoolAlg& alg, const FiniteSpectrum& s, const Mask& u) {
  if (!alg.contains(u)) throw std::invalid_argument("set is not in the algebra");
  Mask m(s.atoms.size(), 0);
  for (size_t i = 0; i < s.atoms.size(); ++i) m[i] = mask_subset(alg.atoms()[s.atoms[i]], u);
  return m;
}

FiniteSpectrum spectrum_points(const FinBoolAlg& alg, const std::vector<Mask>& t_members) {
  FiniteSpectrum s;
  for (int a = 0; a < alg.num_atoms(); ++a) {
    bool meets = false;
    for (const Mask& u : t_members) {
      if (!alg.contains(u)) throw std::invalid_argument("T member is not in the algebra");
      if (mask_subset(alg.atoms()[a], u)) meets = true;
    }
    if (meets) s.atoms.push_back(a);
  }
  for (const Mask& u : t_members) s.basis.push_back(tilde(alg, s, u));
  s.space = FiniteSite(static_cast<int>(s.atoms.size()), lattice_closure(static_cast<int>(s.atoms.size()), s.basis));
  return s;
}

// ---------------------------------------------------------------- finite equivalence

FiniteTSpace::FiniteTSpace(const FiniteSite& s)
    : site(s), alg(s.points(), s.opens()), spec(spectrum_points(alg, s.opens())) {
  for (const Mask& u : site.opens()) open_to_spec.push_back(spec.space.index_of(tilde(alg, spec, u)));
  for (const Mask& w : spec.space.opens()) {
    Mask acc(site.points(), 1);
    for (int u = 0; u < site.num_opens(); ++u)
      if (mask_subset(w, spec.space.open(open_to_spec[u]))) acc = mask_and(acc, site.open(u));
    spec_to_open.push_back(site.index_of(acc));
  }
}

namespace {

Presheaf build_presheaf(const FiniteSite& site, const std::vector<int>& dims,
                        const std::function<Matrix(int, int)>& res) {
  CellularSheaf data(site.inclusion_poset(), dims);
  for (auto [v, w] : site.inclusion_poset().hasse()) data.set_map(v, w, res(v, w));
  return Presheaf{site, data};
}

bool all_iso(const std::vector<Matrix>& ms) {
  for (const Matrix& m : ms)
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  return true;
}

Presheaf random_site_sheaf(const FiniteSite& site, Rng& rng, int max_dim) {
  return sheafify(random_presheaf(site, rng, max_dim)).plus;
}

}  // namespace

Presheaf zeta_push(const FiniteTSpace& x, const Presheaf& g) {
  std::vector<int> dims;
  for (int u = 0; u < x.site.num_opens(); ++u) dims.push_back(g.dim(x.open_to_spec[u]));
  return build_presheaf(x.site, dims,
                        [&](int v, int w) { return g.res(x.open_to_spec[v], x.open_to_spec[w]); });
}

PlusResult zeta_pull(const FiniteTSpace& x, const Presheaf& f) {
  const FiniteSite& s = x.spec.space;
  std::vector<int> dims;
  for (int w = 0; w < s.num_opens(); ++w) dims.push_back(f.dim(x.spec_to_open[w]));
  Presheaf pre =
      build_presheaf(s, dims, [&](int v, int w) { return f.res(x.spec_to_open[v], x.spec_to_open[w]); });
  return sheafify(pre);
}

EquivalenceReport finite_equivalence_check(const FiniteSite& site, Rng& rng, int count) {
  EquivalenceReport rep;
  FiniteTSpace x(site);
  auto fail = [&](const std::string& what) {
    if (rep.pass) rep.witness = what;
    rep.pass = false;
  };
  // The basis is closed under ∩ and ∪ through ~.
  for (int a = 0; a < site.num_opens(); ++a)
    for (int b = 0; b < site.num_opens(); ++b) {
      ++rep.checks;
      const Mask& ta = x.spec.space.open(x.open_to_spec[a]);
      const Mask& tb = x.spec.space.open(x.open_to_spec[b]);
      if (x.spec.space.open(x.open_to_spec[site.meet(a, b)]) != mask_and(ta, tb) ||
          x.spec.space.open(x.open_to_spec[site.join(a, b)]) != mask_or(ta, tb))
        fail("basis not compatible with ∩/∪");
    }
  for (int t = 0; t < count; ++t) {
    ++rep.instances;
    // ζ_*ζ⁻¹F ≅ F through the unit F(V) -> ζ⁻¹F(Ṽ).
    Presheaf f = random_site_sheaf(site, rng, 2);
    PlusResult pulled = zeta_pull(x, f);
    Presheaf back = zeta_push(x, pulled.plus);
    std::vector<Matrix> unit;
    for (int u = 0; u < site.num_opens(); ++u) unit.push_back(pulled.unit[x.open_to_spec[u]]);
    ++rep.checks;
    if (!is_sheaf(pulled.plus)) fail("ζ⁻¹F is not a sheaf");
    ++rep.checks;
    if (!is_presheaf_morphism(f, back, unit) || !all_iso(unit)) fail("F -> ζ_*ζ⁻¹F is not an isomorphism");
    for (int p = 0; p < site.points(); ++p) {
      ++rep.checks;
      int nb = site.minimal_neighborhood(p);
      int alpha = -1;
      for (size_t i = 0; i < x.spec.atoms.size(); ++i)
        if (x.spec.atoms[i] == x.alg.atom_of(p)) alpha = static_cast<int>(i);
      if (alpha < 0 || x.spec.space.minimal_neighborhood(alpha) != x.open_to_spec[nb] ||
          pulled.plus.dim(x.open_to_spec[nb]) != f.dim(nb))
        fail("stalk of ζ⁻¹F differs at point " + std::to_string(p));
    }
    // ζ⁻¹ζ_*G ≅ G through colim_{W ⊆ Ṽ} G(Ṽ) -> G(W).
    Presheaf g = random_site_sheaf(x.spec.space, rng, 2);
    Presheaf pushed = zeta_push(x, g);
    const FiniteSite& s = x.spec.space;
    std::vector<int> dims;
    for (int w = 0; w < s.num_opens(); ++w) dims.push_back(pushed.dim(x.spec_to_open[w]));
    Presheaf pre =
        build_presheaf(s, dims, [&](int v, int w) { return pushed.res(x.spec_to_open[v], x.spec_to_open[w]); });
    std::vector<Matrix> phi;
    for (int w = 0; w < s.num_opens(); ++w) phi.push_back(g.res(x.open_to_spec[x.spec_to_open[w]], w));
    ++rep.checks;
    if (!is_presheaf_morphism(pre, g, phi)) {
      fail("counit is not natural");
      continue;
    }
    PlusResult p1 = plus_construction(pre);
    PlusResult g1 = plus_construction(g);
    std::vector<Matrix> m1 = plus_map(pre, g, phi);
    std::vector<Matrix> m2 = plus_map(p1.plus, g1.plus, m1);
    PlusResult g2 = plus_construction(g1.plus);
    std::vector<Matrix> gu;
    for (size_t w = 0; w < g1.unit.size(); ++w) gu.push_back(g2.unit[w] * g1.unit[w]);
    ++rep.checks;
    if (!all_iso(gu) || !all_iso(m2)) fail("ζ⁻¹ζ_*G -> G is not an isomorphism");
    for (int a = 0; a < s.points(); ++a) {
      ++rep.checks;
      int nb = s.minimal_neighborhood(a);
      if (m2[nb].rows() != g.dim(nb)) fail("stalk of ζ⁻¹ζ_*G differs at point " + std::to_string(a));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- line points

UltraPoint UltraPoint::principal(const Rational& q) {
  UltraPoint a;
  a.kind = Kind::Principal;
  a.q = q;
  return a;
}

UltraPoint UltraPoint::right_germ(const Rational& q) {
  UltraPoint a = principal(q);
  a.kind = Kind::RightGerm;
  return a;
}

UltraPoint UltraPoint::left_germ(const Rational& q) {
  UltraPoint a = principal(q);
  a.kind = Kind::LeftGerm;
  return a;
}

UltraPoint UltraPoint::cut(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("cut needs lo < hi");
  UltraPoint a;
  a.kind = Kind::Cut;
  a.lo = lo;
  a.hi = hi;
  return a;
}

UltraPoint UltraPoint::plus_infinity() {
  UltraPoint a;
  a.kind = Kind::PlusInfinity;
  return a;
}

UltraPoint UltraPoint::minus_infinity() {
  UltraPoint a;
  a.kind = Kind::MinusInfinity;
  return a;
}

namespace {

std::string q_str(const Rational& q) { return q.get_str(); }

}  // namespace

UltraPoint UltraPoint::parse(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (c != ' ') s += c;
  if (s.empty()) throw std::invalid_argument("empty point");
  if (s == "+inf" || s == "inf") return plus_infinity();
  if (s == "-inf") return minus_infinity();
  if (s.rfind("cut(", 0) == 0 && s.back() == ')') {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad cut: " + s0);
    return cut(parse_rational(s.substr(4, comma - 4)), parse_rational(s.substr(comma + 1, s.size() - comma - 2)));
  }
  if (s.size() > 1 && s.back() == '+') return right_germ(parse_rational(s.substr(0, s.size() - 1)));
  if (s.size() > 1 && s.back() == '-') return left_germ(parse_rational(s.substr(0, s.size() - 1)));
  return principal(parse_rational(s));
}

std::string UltraPoint::str() const {
  switch (kind) {
    case Kind::Principal: return q_str(q);
    case Kind::RightGerm: return q_str(q) + "+";
    case Kind::LeftGerm: return q_str(q) + "-";
    case Kind::Cut: return "cut(" + q_str(lo) + "," + q_str(hi) + ")";
    case Kind::PlusInfinity: return "+inf";
    case Kind::MinusInfinity: return "-inf";
    case Kind::Atom: return "atom " + std::to_string(atom);
  }
  return "";
}

bool UltraPoint::in_spectrum() const { return kind != Kind::PlusInfinity && kind != Kind::MinusInfinity; }

bool membership(const UltraPoint& a, const SemilinearSet& s) {
  std::vector<Rational> ep = s.endpoints();
  switch (a.kind) {
    case UltraPoint::Kind::Principal: return s.contains(a.q);
    case UltraPoint::Kind::RightGerm: {
      Rational t = a.q + 1;
      for (const Rational& e : ep)
        if (e > a.q && e < t) t = e;
      return s.contains((a.q + t) / 2);
    }
    case UltraPoint::Kind::LeftGerm: {
      Rational t = a.q - 1;
      for (const Rational& e : ep)
        if (e < a.q && e > t) t = e;
      return s.contains((a.q + t) / 2);
    }
    case UltraPoint::Kind::Cut:
      for (const Rational& e : ep)
        if (e >= a.lo && e <= a.hi) throw NonRepresentable("cut " + a.str() + " meets an endpoint of " + s.str());
      return s.contains((a.lo + a.hi) / 2);
    case UltraPoint::Kind::PlusInfinity: return s.contains(ep.empty() ? Rational(0) : Rational(ep.back() + 1));
    case UltraPoint::Kind::MinusInfinity: return s.contains(ep.empty() ? Rational(0) : Rational(ep.front() - 1));
    case UltraPoint::Kind::Atom: break;
  }
  throw std::invalid_argument("finite-algebra point queried against a semilinear set");
}

namespace {

std::vector<Rational> alpha_points(const UltraPoint& a) {
  switch (a.kind) {
    case UltraPoint::Kind::Principal:
    case UltraPoint::Kind::RightGerm:
    case UltraPoint::Kind::LeftGerm: return {a.q};
    case UltraPoint::Kind::Cut: return {};
    default: throw std::invalid_argument("point " + a.str() + " is not in the spectrum");
  }
}

int cell_of(const CellComplex& cx, const UltraPoint& a) {
  switch (a.kind) {
    case UltraPoint::Kind::Principal: return cx.locate(a.q);
    case UltraPoint::Kind::RightGerm: return cx.locate(a.q) + 1;
    case UltraPoint::Kind::LeftGerm: return cx.locate(a.q) - 1;
    case UltraPoint::Kind::Cut: {
      for (const Rational& e : cx.E)
        if (e >= a.lo && e <= a.hi) throw NonRepresentable("cut " + a.str() + " meets an endpoint");
      return cx.locate((a.lo + a.hi) / 2);
    }
    default: throw std::invalid_argument("point " + a.str() + " is not in the spectrum");
  }
}

// Bounded open piece of a cell's star: the star for a vertex, the edge for an edge,
// clipped to a unit window past the outermost endpoints.
SemilinearSet star_of(const CellComplex& cx, int c, const UltraPoint& a) {
  const auto& e = cx.E;
  if (CellComplex::is_vertex(c)) {
    int i = (c - 1) / 2;
    Rational lo = i == 0 ? Rational(e[i] - 1) : e[i - 1];
    Rational hi = i + 1 == static_cast<int>(e.size()) ? Rational(e[i] + 1) : e[i + 1];
    return SemilinearSet::interval(lo, hi);
  }
  int i = c / 2;
  Rational ref = a.kind == UltraPoint::Kind::Cut ? a.lo : a.q;
  Rational ref_hi = a.kind == UltraPoint::Kind::Cut ? a.hi : a.q;
  Rational lo = i == 0 ? Rational(ref - 1) : e[i - 1];
  Rational hi = i == static_cast<int>(e.size()) ? Rational(ref_hi + 1) : e[i];
  return SemilinearSet::interval(lo, hi);
}

}  // namespace

StalkCell stalk_cell(const ConstructibleTSheaf& f, const UltraPoint& a) {
  ConstructibleTSheaf r = f.refine(alpha_points(a));
  return {r, cell_of(r.cx, a)};
}

int stalk_at(const ConstructibleTSheaf& f, const UltraPoint& a) {
  StalkCell s = stalk_cell(f, a);
  return s.refined.data.dim(s.cell);
}

SemilinearSet small_neighborhood(const ConstructibleTSheaf& f, const UltraPoint& a) {
  StalkCell s = stalk_cell(f, a);
  return star_of(s.refined.cx, s.cell, a);
}

namespace {

// A smaller basic open around α inside n.
SemilinearSet shrink_around(const SemilinearSet& n, const UltraPoint& a) {
  std::vector<Rational> ep = n.endpoints();
  Rational lo = ep[0], hi = ep[1];
  switch (a.kind) {
    case UltraPoint::Kind::Principal: return SemilinearSet::interval((lo + a.q) / 2, (a.q + hi) / 2);
    case UltraPoint::Kind::RightGerm: return SemilinearSet::interval(a.q, (a.q + hi) / 2);
    case UltraPoint::Kind::LeftGerm: return SemilinearSet::interval((lo + a.q) / 2, a.q);
    default: return SemilinearSet::interval((lo + a.lo) / 2, (a.hi + hi) / 2);
  }
}

}  // namespace

int stalk_by_colimit(const ConstructibleTSheaf& f, const UltraPoint& a) {
  SemilinearSet n1 = small_neighborhood(f, a);
  SemilinearSet n2 = shrink_around(n1, a);
  if (!membership(a, n1) || !membership(a, n2)) throw std::logic_error("neighborhood misses " + a.str());
  Matrix r = restriction_on(f, n1, n2);
  if (r.rows() != r.cols() || rank(r) != r.rows())
    throw std::logic_error("sections near " + a.str() + " have not stabilized");
  return r.rows();
}

Matrix stalk_map(const TSheafMap& phi, const UltraPoint& a) {
  TSheafMap r = phi.refine(alpha_points(a));
  return r.map.comp[cell_of(r.src.cx, a)];
}

std::vector<UltraPoint> detection_points(const CellComplex& cx) {
  const auto& e = cx.E;
  if (e.empty()) return {UltraPoint::cut(Rational(-1), Rational(1))};
  std::vector<UltraPoint> out;
  out.push_back(UltraPoint::cut(Rational(e.front() - frac(1, 2)), Rational(e.front() - frac(1, 4))));
  for (size_t i = 0; i < e.size(); ++i) {
    out.push_back(UltraPoint::principal(e[i]));
    if (i + 1 < e.size()) {
      Rational d = (e[i + 1] - e[i]) / 3;
      out.push_back(UltraPoint::cut(e[i] + d, e[i] + 2 * d));
    }
  }
  out.push_back(UltraPoint::cut(Rational(e.back() + frac(1, 4)), Rational(e.back() + frac(1, 2))));
  return out;
}

DetectionReport stalk_detection(const TSheafMap& phi) {
  DetectionReport rep;
  rep.mono = rep.epi = true;
  for (const UltraPoint& a : detection_points(phi.src.cx)) {
    // The stalk map read as Γ(N; φ) on a basic neighborhood of α.
    Matrix m = section_map_on(phi, small_neighborhood(phi.src, a));
    if (!is_injective(m)) rep.mono = false;
    if (!is_surjective(m)) rep.epi = false;
  }
  rep.iso = rep.mono && rep.epi;
  rep.cell_mono = is_mono(phi.map);
  rep.cell_epi = is_epi(phi.map);
  rep.cell_iso = is_iso(phi.map);
  return rep;
}

int sections_from_stalks(const ConstructibleTSheaf& f, const SemilinearSet& u) {
  ConstructibleTSheaf r = f.refine(u.endpoints());
  const CellComplex& cx = r.cx;
  auto mask = cx.mask_of(u);
  if (!mask) throw std::invalid_argument("not an open union of cells: " + u.str());
  std::vector<UltraPoint> pts = detection_points(cx);
  // detection_points lists cells left to right: edge, vertex, edge, ..., edge.
  std::vector<SemilinearSet> nb;
  std::vector<int> dims(cx.size(), 0);
  for (int c = 0; c < cx.size(); ++c) {
    nb.push_back(CellComplex::is_vertex(c) ? small_neighborhood(r, pts[c])
                                           : SemilinearSet::interval(pts[c].lo, pts[c].hi));
    if ((*mask)[c]) dims[c] = stalk_by_colimit(r, pts[c]);
  }
  FinitePoset P = FinitePoset::from_cells(cx);
  CellularSheaf s(P, dims);
  for (auto [v, e] : P.hasse()) {
    if ((*mask)[v] && (*mask)[e])
      s.set_map(v, e, restriction_on(r, nb[v], nb[e]));
    else
      s.set_map(v, e, Matrix(dims[e], dims[v]));
  }
  return sections_dim(s, *mask);
}

bool stalks_exact(const TShortExact& s) {
  std::vector<Rational> e = merge_points(merge_points(s.a.cx.E, s.b.cx.E), s.c.cx.E);
  for (const UltraPoint& a : detection_points(cells(e))) {
    Matrix i = stalk_map(s.i, a);
    Matrix p = stalk_map(s.p, a);
    if (!(p * i).is_zero() || !is_injective(i) || !is_surjective(p)) return false;
    if (rank(i) != p.cols() - rank(p)) return false;
  }
  return true;
}

bool basis_compatible(const SemilinearSet& u, const SemilinearSet& v, const std::vector<UltraPoint>& pts) {
  for (const UltraPoint& a : pts) {
    try {
      bool mu = membership(a, u), mv = membership(a, v);
      if (membership(a, intersect(u, v)) != (mu && mv)) return false;
      if (membership(a, unite(u, v)) != (mu || mv)) return false;
    } catch (const NonRepresentable&) {
      continue;
    }
  }
  return true;
}

}  // namespace tsite
