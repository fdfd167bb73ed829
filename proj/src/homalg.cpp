#include "tsite/homalg.hpp"

#include <algorithm>

namespace tsite {

namespace {

long ceil_of(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_si();
}

Rational max_abs(const std::vector<Rational>& pts) {
  Rational m(0);
  for (const Rational& q : pts)
    if (abs(q) > m) m = abs(q);
  return m;
}

Mask open_mask(const CellComplex& cx, const SemilinearSet& u) {
  auto m = cx.mask_of(u);
  if (!m) throw std::invalid_argument("set is not a union of cells: " + u.str());
  return *m;
}

// Exactness of X --a--> Y --b--> Z with a injective and b surjective.
bool short_exact_matrices(const Matrix& a, const Matrix& b) {
  if (!(b * a).is_zero()) return false;
  if (!is_injective(a) || !is_surjective(b)) return false;
  return rank(a) == b.cols() - rank(b);
}

// Adds the midpoint of every elementary interval, so the open star of a closed
// union of cells is a neighborhood retracting onto it.
ConstructibleTSheaf closure_refinement(const ConstructibleTSheaf& f, const std::vector<Rational>& extra) {
  std::vector<Rational> pts = merge_points(f.cx.E, extra);
  std::vector<Rational> mid;
  for (size_t i = 0; i + 1 < pts.size(); ++i) mid.push_back((pts[i] + pts[i + 1]) / 2);
  return f.refine(merge_points(pts, mid));
}

}  // namespace

SemilinearSet mask_set(const CellComplex& cx, const Mask& m) {
  SemilinearSet s;
  for (int c = 0; c < cx.size(); ++c)
    if (m[c]) s = unite(s, cx.cell_set(c));
  return s;
}

// ---------------------------------------------------------------- flabby

bool restriction_surjective(const ConstructibleTSheaf& f, const SemilinearSet& v, const SemilinearSet& u) {
  Matrix r = restriction_on(f, v, u);
  return rank(r) == r.rows();
}

bool edge_stalks_vanish(const ConstructibleTSheaf& f) {
  for (int c = 0; c < f.cx.size(); c += 2)
    if (f.data.dim(c) != 0) return false;
  return true;
}

FlabbyResult is_flabby(const ConstructibleTSheaf& f) {
  ConstructibleTSheaf r = f.refine(edge_samples(f.cx));
  FlabbyResult out;
  auto w = poset_flabby_failure(r.data);
  if (!w) return out;
  out.flabby = false;
  SemilinearSet v = mask_set(r.cx, w->big);
  SemilinearSet u = mask_set(r.cx, w->small);
  if (restriction_surjective(f, v, u)) throw std::logic_error("flabby witness does not verify");
  out.witness = std::make_pair(v, u);
  return out;
}

std::vector<TlocOpen> tloc_sample_opens(const ConstructibleTSheaf& f, Rng& rng, int count) {
  std::vector<TlocOpen> out = {TlocOpen::whole_line(),
                               TlocOpen::periodic(SemilinearSet::interval(Rational(0), frac(1, 2)), Rational(1))};
  // Two small intervals inside each edge with a nonzero stalk.
  const CellComplex& cx = f.cx;
  for (int c = 0; c < cx.size(); c += 2) {
    if (f.data.dim(c) == 0) continue;
    Rational s = cx.sample(c);
    Rational d = frac(1, 4);
    if (cx.is_bounded_cell(c)) {
      SemilinearSet cs = cx.cell_set(c);
      std::vector<Rational> ep = cs.endpoints();
      d = std::min(d, Rational((ep[1] - ep[0]) / 4));
    }
    out.push_back(TlocOpen::finite(unite(SemilinearSet::interval(Rational(s - d), Rational(s - d / 2)),
                                         SemilinearSet::interval(Rational(s + d / 2), Rational(s + d)))));
  }
  while (static_cast<int>(out.size()) < count) {
    int kind = static_cast<int>(rng.uniform(0, 2));
    if (kind == 0) {
      out.push_back(TlocOpen::finite(random_open(rng, 3, false)));
    } else if (kind == 1) {
      out.push_back(TlocOpen::finite(random_open(rng, 3, true)));
    } else {
      Rational p(rng.uniform(1, 3));
      Rational a = frac(rng.uniform(0, 3), 4) * p;
      Rational b = a + frac(rng.uniform(1, 3), 8) * p;
      out.push_back(TlocOpen::periodic(SemilinearSet::interval(a, b), p));
    }
  }
  return out;
}

int conclusive_depth(const ConstructibleTSheaf& f, const std::vector<TlocOpen>& opens) {
  std::vector<Rational> pts = f.cx.E;
  Rational per(0);
  for (const TlocOpen& u : opens) {
    if (u.kind == TlocOpen::Kind::Finite) {
      pts = merge_points(pts, u.set.endpoints());
    } else {
      pts = merge_points(pts, u.pattern.endpoints());
      if (u.period > per) per = u.period;
    }
  }
  return static_cast<int>(ceil_of(max_abs(pts)) + 1 + 2 * ceil_of(per) + 2);
}

GlobalFlabbyReport is_flabby_global(const ConstructibleTSheaf& f, int depth, const std::vector<TlocOpen>& opens) {
  GlobalFlabbyReport rep;
  rep.conclusive = depth >= conclusive_depth(f, opens);
  for (const TlocOpen& u : opens) {
    ++rep.opens;
    for (int n = 1; n <= depth; ++n) {
      SemilinearSet un = u.truncate(n);
      if (un.empty()) continue;
      ++rep.stages;
      if (!restriction_surjective(f, SemilinearSet::interval(Rational(-n), Rational(n)), un)) {
        if (rep.surjective) rep.witness = "Γ((-" + std::to_string(n) + "," + std::to_string(n) + ")) -> Γ(" + un.str() + ") for U = " + u.str();
        rep.surjective = false;
        break;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- c-soft

SectionSpace closure_sections(const ConstructibleTSheaf& f, const SemilinearSet& k) {
  ConstructibleTSheaf r = closure_refinement(f, k.endpoints());
  return sections(r.data, r.data.poset().up_closure(open_mask(r.cx, k)));
}

Matrix closure_restriction(const ConstructibleTSheaf& f, const SemilinearSet& w, const SemilinearSet& k) {
  if (!subset(k, w)) throw std::invalid_argument("closure restriction needs K ⊆ W");
  ConstructibleTSheaf r = closure_refinement(f, merge_points(w.endpoints(), k.endpoints()));
  SectionSpace sw = sections(r.data, open_mask(r.cx, w));
  SectionSpace sk = sections(r.data, r.data.poset().up_closure(open_mask(r.cx, k)));
  return restriction(r.data, sw, sk);
}

int neighborhood_sections(const ConstructibleTSheaf& f, const SemilinearSet& k, int n) {
  Rational eps = frac(1, n);
  std::vector<Piece> nb;
  for (const Piece& p : k.pieces()) {
    Piece q;
    q.lo = Endpoint::at(p.lo.q - eps);
    q.hi = Endpoint::at(p.hi.q + eps);
    nb.push_back(q);
  }
  return sections_dim(f, SemilinearSet::from_pieces(nb));
}

namespace {

// Two interior points on bounded edges, four on unbounded ones.
std::vector<Rational> csoft_points(const CellComplex& cx) {
  std::vector<Rational> out;
  const auto& e = cx.E;
  if (e.empty()) return {Rational(-2), Rational(-1), Rational(1), Rational(2)};
  for (int k = 1; k <= 4; ++k) {
    out.push_back(e.front() - k);
    out.push_back(e.back() + k);
  }
  for (size_t i = 0; i + 1 < e.size(); ++i) {
    Rational d = (e[i + 1] - e[i]) / 3;
    out.push_back(e[i] + d);
    out.push_back(e[i] + 2 * d);
  }
  return out;
}

}  // namespace

CSoftResult is_c_soft(const XSheaf& f) {
  CSoftResult out;
  ConstructibleTSheaf r = f.refine(csoft_points(f.cx));
  const std::vector<Rational>& v = r.cx.E;
  SemilinearSet w = SemilinearSet::interval(Rational(v.front() - 1), Rational(v.back() + 1));
  std::vector<SemilinearSet> pieces;
  for (size_t i = 0; i + 1 < v.size(); ++i) pieces.push_back(SemilinearSet::closed_interval(v[i], v[i + 1]));
  // Neighborhoods K ± 1/n with 1/n below a third of the smallest gap are cofinal and stable.
  Rational gap = v.back() - v.front() + 1;
  for (size_t i = 0; i + 1 < v.size(); ++i) gap = std::min(gap, Rational(v[i + 1] - v[i]));
  int nstable = static_cast<int>(ceil_of(Rational(3) / gap)) + 1;
  ConstructibleTSheaf rw = closure_refinement(r, w.endpoints());
  SectionSpace sw = sections(rw.data, open_mask(rw.cx, w));
  auto check = [&](const SemilinearSet& k) {
    ++out.pairs;
    SectionSpace sk = sections(rw.data, rw.data.poset().up_closure(open_mask(rw.cx, k)));
    Matrix res = restriction(rw.data, sw, sk);
    if (rank(res) != sk.dim() && out.csoft) {
      out.csoft = false;
      out.witness = std::make_pair(w, interior(k));
    }
    return sk.dim();
  };
  for (size_t i = 0; i < pieces.size(); ++i) {
    int d = check(pieces[i]);
    if (neighborhood_sections(f, pieces[i], nstable) != d) out.colimit_agrees = false;
    for (size_t j = i + 2; j < pieces.size(); ++j) check(unite(pieces[i], pieces[j]));
  }
  return out;
}

// ---------------------------------------------------------------- coherent

namespace {

struct Greedy {
  std::vector<SemilinearSet> opens;
  std::vector<std::vector<Matrix>> parts;  // per generator, per cell: stalk column (or 0 columns outside)
};

// f lives on a complex whose vertices bound every candidate interval.
Greedy greedy_generators(const ConstructibleTSheaf& f) {
  const CellComplex& cx = f.cx;
  const std::vector<Rational>& e = cx.E;
  std::vector<std::pair<int, int>> cand;
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j) cand.emplace_back(static_cast<int>(i), static_cast<int>(j));
  std::stable_sort(cand.begin(), cand.end(),
                   [](auto a, auto b) { return a.second - a.first > b.second - b.first; });
  std::vector<Matrix> img(cx.size());
  int have = 0;
  for (int c = 0; c < cx.size(); ++c) img[c] = Matrix(f.data.dim(c), 0);
  const int want = f.data.total_dim();
  Greedy g;
  for (auto [i, j] : cand) {
    if (have == want) break;
    SemilinearSet u = SemilinearSet::interval(e[i], e[j]);
    Mask m = open_mask(cx, u);
    SectionSpace s = sections(f.data, m);
    for (int col = 0; col < s.dim() && have < want; ++col) {
      std::vector<Matrix> part(cx.size());
      int gain = 0;
      for (int c = 0; c < cx.size(); ++c) {
        if (!m[c]) {
          part[c] = Matrix(f.data.dim(c), 0);
          continue;
        }
        part[c] = s.proj(f.data, c).cols_range(col, 1);
        gain += rank(hstack(img[c], part[c])) - rank(img[c]);
      }
      if (gain == 0) continue;
      for (int c = 0; c < cx.size(); ++c) img[c] = hstack(img[c], part[c]);
      have += gain;
      g.opens.push_back(u);
      g.parts.push_back(part);
    }
  }
  if (have != want) throw std::logic_error("greedy generators did not reach every stalk");
  return g;
}

// ⊕ k_{U_i} on cx and the map to f given by the chosen sections.
std::pair<ConstructibleTSheaf, SheafMap> generator_map(const ConstructibleTSheaf& f, const Greedy& g) {
  const CellComplex& cx = f.cx;
  FinitePoset P = FinitePoset::from_cells(cx);
  std::vector<Mask> masks;
  for (const auto& u : g.opens) masks.push_back(open_mask(cx, u));
  std::vector<CellularSheaf> parts;
  for (const Mask& m : masks) parts.push_back(CellularSheaf::constant_on(P, m));
  CellularSheaf sum = direct_sum_all(P, parts);
  SheafMap pi;
  for (int c = 0; c < cx.size(); ++c) {
    Matrix col(f.data.dim(c), 0);
    for (size_t i = 0; i < g.opens.size(); ++i)
      if (masks[i][c]) col = hstack(col, g.parts[i][c]);
    pi.comp.push_back(col);
  }
  return {{cx, sum}, pi};
}

bool cellwise_exact(const SheafMap& rel, const SheafMap& pi) {
  for (size_t c = 0; c < pi.comp.size(); ++c) {
    const Matrix& a = rel.comp[c];
    const Matrix& b = pi.comp[c];
    if (!is_surjective(b) || !(b * a).is_zero()) return false;
    if (rank(a) != b.cols() - rank(b)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::pair<std::vector<SemilinearSet>, TSheafMap>> coherent_generators(const ConstructibleTSheaf& f0) {
  if (!f0.has_bounded_support()) return std::nullopt;
  if (f0.data.is_zero()) {
    ConstructibleTSheaf z = ConstructibleTSheaf::zero().refine(f0.cx.E);
    return std::make_pair(std::vector<SemilinearSet>{}, TSheafMap{z, f0, zero_map(z.data, f0.data)});
  }
  const auto& e = f0.cx.E;
  ConstructibleTSheaf f = f0.refine({e.front() - 1, e.back() + 1});
  Greedy g = greedy_generators(f);
  auto [sum, pi] = generator_map(f, g);
  return std::make_pair(g.opens, TSheafMap{sum, f, pi});
}

std::optional<CoherentPresentation> coherent_presentation(const ConstructibleTSheaf& f) {
  auto gens = coherent_generators(f);
  if (!gens) return std::nullopt;
  CoherentPresentation p;
  p.generators = gens->first;
  p.pi = gens->second;
  TKernel k = kernel(p.pi);
  Greedy g = greedy_generators(k.sheaf);
  auto [rsum, rmap] = generator_map(k.sheaf, g);
  p.relations = g.opens;
  p.rel = TSheafMap{rsum, p.pi.src, compose(k.incl.map, rmap)};
  p.exact = p.pi.valid() && p.rel.valid() && cellwise_exact(p.rel.map, p.pi.map);
  // Stalks at points on both sides of every endpoint, read on a finer complex.
  std::vector<Rational> mid;
  const auto& e = p.pi.src.cx.E;
  for (size_t i = 0; i + 1 < e.size(); ++i) {
    mid.push_back(e[i] + (e[i + 1] - e[i]) / 4);
    mid.push_back(e[i + 1] - (e[i + 1] - e[i]) / 4);
  }
  TSheafMap pf = p.pi.refine(mid);
  TSheafMap rf = p.rel.refine(mid);
  p.stalk_exact = cellwise_exact(rf.map, pf.map);
  return p;
}

bool is_coherent(const ConstructibleTSheaf& f) {
  auto p = coherent_presentation(f);
  return p && p->exact && p->stalk_exact;
}

// ---------------------------------------------------------------- Ext

ConstructibleTSheaf boundary_sheaf(const SemilinearSet& u, const SemilinearSet& v) {
  if (!u.is_open() || !v.is_open() || !subset(u, v)) throw std::invalid_argument("boundary sheaf needs opens U ⊆ V");
  return constant_sheaf(diff(v, u));
}

int ext1_boundary_les(const ConstructibleTSheaf& f, const SemilinearSet& u, const SemilinearSet& v) {
  ConstructibleTSheaf r = f.refine(merge_points(u.endpoints(), v.endpoints()));
  Mask mu = open_mask(r.cx, u);
  Mask mv = open_mask(r.cx, v);
  SectionSpace su = sections(r.data, mu);
  SectionSpace sv = sections(r.data, mv);
  int coker = su.dim() - rank(restriction(r.data, sv, su));
  CohomologyMap h = cohomology_restriction(r.data, mv, mu, 1);
  return coker + (h.source_dim - h.rank);
}

int ext_dim(const ConstructibleTSheaf& g, const ConstructibleTSheaf& f, int n) {
  auto [x, y] = common_refinement(g, f);
  return ext_dim(x.data, y.data, n);
}

std::vector<std::pair<SemilinearSet, SemilinearSet>> boundary_pairs(const ConstructibleTSheaf& f, Rng& rng,
                                                                    int random_count) {
  std::vector<std::pair<SemilinearSet, SemilinearSet>> out;
  CellComplex r = refine(f.cx, edge_samples(f.cx)).fine;
  const auto& v = r.E;
  for (size_t i = 0; i < v.size(); ++i) {
    Rational lo = i == 0 ? Rational(v[i] - 1) : v[i - 1];
    Rational hi = i + 1 == v.size() ? Rational(v[i] + 1) : v[i + 1];
    SemilinearSet star = SemilinearSet::interval(lo, hi);
    out.emplace_back(diff(star, SemilinearSet::point(v[i])), star);
    out.emplace_back(SemilinearSet::interval(lo, v[i]), star);
  }
  for (int k = 0; k < random_count; ++k) {
    SemilinearSet vv = random_open(rng, 2, true);
    out.emplace_back(intersect(vv, random_open(rng, 3, true)), vv);
  }
  return out;
}

FlabbyExtReport flabby_ext_criterion(const ConstructibleTSheaf& f, Rng& rng, int samples) {
  FlabbyExtReport rep;
  rep.flabby = is_flabby(f).flabby;
  rep.boundary_vanishes = true;
  rep.ext_vanishes = true;
  for (const auto& [u, v] : boundary_pairs(f, rng, samples)) {
    ++rep.sampled;
    int les = ext1_boundary_les(f, u, v);
    int res = ext_dim(boundary_sheaf(u, v), f, 1);
    if (les != res) {
      rep.methods_agree = false;
      rep.witness = "LES and resolution disagree for V=" + v.str() + ", U=" + u.str();
    }
    if (les != 0) {
      if (rep.boundary_vanishes && rep.witness.empty())
        rep.witness = "Ext¹(k_{V∖U}, F) = " + std::to_string(les) + " for V=" + v.str() + ", U=" + u.str();
      rep.boundary_vanishes = false;
      rep.ext_vanishes = false;
    }
  }
  for (int k = 0; k < samples; ++k) {
    ++rep.sampled;
    ConstructibleTSheaf g = random_tsheaf(rng, random_endpoints(rng, 3), 1, true);
    if (ext_dim(g, f, 1) != 0) rep.ext_vanishes = false;
  }
  return rep;
}

// ---------------------------------------------------------------- acyclicity

bool is_short_exact(const TShortExact& s) {
  return s.i.valid() && s.p.valid() && is_short_exact(ShortExact{s.a.data, s.b.data, s.c.data, s.i.map, s.p.map});
}

ConstructibleTSheaf random_skyscraper_sum(Rng& rng, int max_points, int max_dim) {
  std::vector<Rational> pts = random_endpoints(rng, max_points);
  CellComplex cx = cells(pts);
  FinitePoset P = FinitePoset::from_cells(cx);
  std::vector<int> dims(cx.size(), 0);
  for (int c = 1; c < cx.size(); c += 2) dims[c] = static_cast<int>(rng.uniform(0, max_dim));
  CellularSheaf f(P, dims);
  for (auto [v, e] : P.hasse()) f.set_map(v, e, Matrix(0, dims[v]));
  return {cx, f};
}

TShortExact random_extension(Rng& rng, const ConstructibleTSheaf& a0, const ConstructibleTSheaf& c0) {
  auto [a, c] = common_refinement(a0, c0);
  CocycleSpace z = ext1_cocycles(c.data, a.data);
  Matrix coeff(z.cocycles.cols(), 1);
  for (int i = 0; i < coeff.rows(); ++i) coeff.at(i, 0) = Scalar(rng.uniform(-2, 2));
  Matrix cochain = z.cocycles.cols() > 0 ? z.cocycles * coeff : Matrix(z.length, 1);
  ShortExact s = extension_from_cocycle(a.data, c.data, z, cochain);
  ConstructibleTSheaf b{a.cx, s.b};
  return {a, b, c, {a, b, s.i}, {b, c, s.pi}};
}

bool sections_exact(const TShortExact& s, const SemilinearSet& u) {
  std::vector<Rational> e = u.endpoints();
  return short_exact_matrices(section_map_on(s.i.refine(e), u), section_map_on(s.p.refine(e), u));
}

namespace {

// Matrix of φ ↦ post ∘ φ from Hom(G, X) to Hom(G, Y), or of φ ↦ φ ∘ pre.
Matrix induced(const HomSpace& from, const HomSpace& to, const std::function<SheafMap(const SheafMap&)>& op) {
  Matrix m(to.dim(), from.dim());
  for (int j = 0; j < from.dim(); ++j) {
    auto c = hom_coordinates(to, op(from.basis[j]));
    if (!c) throw std::logic_error("induced map leaves the Hom space");
    m.set_block(0, j, *c);
  }
  return m;
}

}  // namespace

bool hom_exact(const ConstructibleTSheaf& g0, const TShortExact& s0) {
  std::vector<Rational> e = merge_points(g0.cx.E, s0.a.cx.E);
  ConstructibleTSheaf g = g0.refine(e);
  TSheafMap i = s0.i.refine(e);
  TSheafMap p = s0.p.refine(e);
  HomSpace ha = hom_space(g.data, i.src.data);
  HomSpace hb = hom_space(g.data, i.tgt.data);
  HomSpace hc = hom_space(g.data, p.tgt.data);
  Matrix a = induced(ha, hb, [&](const SheafMap& x) { return compose(i.map, x); });
  Matrix b = induced(hb, hc, [&](const SheafMap& x) { return compose(p.map, x); });
  return short_exact_matrices(a, b);
}

bool hom_exact_contravariant(const TShortExact& s0, const ConstructibleTSheaf& f0) {
  std::vector<Rational> e = merge_points(f0.cx.E, s0.a.cx.E);
  ConstructibleTSheaf f = f0.refine(e);
  TSheafMap i = s0.i.refine(e);
  TSheafMap p = s0.p.refine(e);
  HomSpace hc = hom_space(p.tgt.data, f.data);
  HomSpace hb = hom_space(i.tgt.data, f.data);
  HomSpace ha = hom_space(i.src.data, f.data);
  Matrix a = induced(hc, hb, [&](const SheafMap& x) { return compose(x, p.map); });
  Matrix b = induced(hb, ha, [&](const SheafMap& x) { return compose(x, i.map); });
  return short_exact_matrices(a, b);
}

TShortExact boundary_sequence() {
  TSheafMap inc = inclusion_map(SemilinearSet::parse("(0,1)+(2,3)"), SemilinearSet::parse("(0,3)"));
  TCokernel c = cokernel(inc);
  return {inc.src, inc.tgt, c.sheaf, inc, c.proj};
}

void SuiteReport::record(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failures;
  if (witnesses.size() < 5) witnesses.push_back(what);
}

SuiteReport flabby_acyclicity_suite(std::uint64_t seed, int count) {
  SuiteReport rep;
  Rng rng(seed);
  ConstructibleTSheaf kx = constant_sheaf(SemilinearSet::line());
  for (int t = 0; t < count; ++t) {
    ++rep.instances;
    ConstructibleTSheaf a = random_skyscraper_sum(rng, 3, 2);
    ConstructibleTSheaf c = random_tsheaf(rng, random_endpoints(rng, 3), 2, t % 2 == 0);
    TShortExact s = random_extension(rng, a, c);
    std::string tag = "instance " + std::to_string(t);
    rep.record(is_flabby(a).flabby, tag + ": first term flabby");
    rep.record(is_short_exact(s), tag + ": sequence exact");
    SemilinearSet u = random_open(rng, 3, true);
    bool gamma = sections_exact(s, u);
    rep.record(gamma, tag + ": Γ(" + u.str() + ";·) exact");
    rep.record(hom_exact(constant_sheaf(u), s) == gamma, tag + ": Hom(k_U,·) matches Γ(U;·)");
    ConstructibleTSheaf g = random_tsheaf(rng, random_endpoints(rng, 3), 2, true);
    rep.record(hom_exact(g, s), tag + ": Hom(G,·) exact");
    rep.record(is_flabby(sheaf_hom(g, a)).flabby, tag + ": Hom(G,F) flabby for flabby F");
    bool cf = is_flabby(c).flabby;
    rep.record(is_flabby(sheaf_hom(kx, c)).flabby == cf, tag + ": Hom(k_X,F) flabby iff F flabby");
    ConstructibleTSheaf x = random_tsheaf(rng, random_endpoints(rng, 2), 1, true);
    ConstructibleTSheaf y = random_tsheaf(rng, random_endpoints(rng, 2), 1, true);
    rep.record(hom_exact_contravariant(random_extension(rng, x, y), a), tag + ": Hom(·,F) exact on coherent sequences");
  }
  rep.record(hom_exact_contravariant(boundary_sequence(), random_skyscraper_sum(rng, 3, 2)),
             "boundary sequence against a flabby sheaf");
  return rep;
}

SuiteReport flabby_counterexamples() {
  SuiteReport rep;
  ConstructibleTSheaf kx = constant_sheaf(SemilinearSet::line());
  ConstructibleTSheaf k12 = constant_sheaf(SemilinearSet::closed_interval(Rational(1), Rational(2)));
  // A nonsplit 0 -> k_X -> B -> k_{[1,2]} -> 0.
  {
    ++rep.instances;
    auto [a, c] = common_refinement(kx, k12);
    CocycleSpace z = ext1_cocycles(c.data, a.data);
    std::optional<Matrix> chosen;
    for (int j = 0; j < z.cocycles.cols() && !chosen; ++j) {
      Matrix col = z.cocycles.cols_range(j, 1);
      if (rank(hstack(z.coboundaries, col)) > rank(z.coboundaries)) chosen = col;
    }
    rep.record(chosen.has_value(), "k_X admits a nonsplit extension by k_[1,2]");
    if (chosen) {
      ShortExact s = extension_from_cocycle(a.data, c.data, z, *chosen);
      ConstructibleTSheaf b{a.cx, s.b};
      TShortExact t{a, b, c, {a, b, s.i}, {b, c, s.pi}};
      rep.record(is_short_exact(t), "nonsplit sequence exact");
      rep.record(!hom_exact(k12, t), "Hom(k_[1,2],·) fails with first term k_X");
    }
  }
  // 0 -> k_(0,1) -> k_[0,1] -> k_{0} ⊕ k_{1} -> 0 loses surjectivity on Γ((-1,2)).
  {
    ++rep.instances;
    ConstructibleTSheaf open = constant_sheaf(SemilinearSet::parse("(0,1)"));
    ConstructibleTSheaf closed = constant_sheaf(SemilinearSet::closed_interval(Rational(0), Rational(1)));
    SheafMap m = zero_map(open.data, closed.data);
    m.comp[2] = Matrix::identity(1);
    TSheafMap i{open, closed, m};
    TCokernel q = cokernel(i);
    TShortExact t{open, closed, q.sheaf, i, q.proj};
    rep.record(is_short_exact(t), "closure sequence exact");
    rep.record(!sections_exact(t, SemilinearSet::parse("(-1,2)")), "Γ((-1,2);·) fails with first term k_(0,1)");
  }
  ++rep.instances;
  rep.record(!hom_exact_contravariant(boundary_sequence(), kx), "Hom(·,k_X) fails on the boundary sequence");
  rep.record(!is_flabby(sheaf_hom(kx, kx)).flabby, "Hom(k_X,k_X) is not flabby");
  return rep;
}

SuiteReport csoft_suite(std::uint64_t seed, int count) {
  SuiteReport rep;
  Rng rng(seed);
  for (int t = 0; t < count; ++t) {
    ++rep.instances;
    std::string tag = "instance " + std::to_string(t);
    ConstructibleTSheaf a = random_skyscraper_sum(rng, 3, 2);
    ConstructibleTSheaf c = random_tsheaf(rng, random_endpoints(rng, 3), 2, t % 2 == 0);
    TShortExact s = random_extension(rng, a, c);
    rep.record(is_c_soft(a).csoft, tag + ": first term c-soft");
    // Closure sections over a compact K of one or two closed intervals.
    SemilinearSet k;
    int pieces = static_cast<int>(rng.uniform(1, 2));
    for (int j = 0; j < pieces; ++j) {
      Rational x = random_grid_point(rng, 3, 2);
      k = unite(k, SemilinearSet::closed_interval(x, x + frac(rng.uniform(1, 4), 2)));
    }
    std::vector<Rational> ke = k.endpoints();
    TSheafMap i = s.i.refine(ke);
    TSheafMap p = s.p.refine(ke);
    Mask km = i.src.data.poset().up_closure(open_mask(i.src.cx, k));
    SectionSpace sa = sections(i.src.data, km);
    SectionSpace sb = sections(i.tgt.data, km);
    SectionSpace sc = sections(p.tgt.data, km);
    rep.record(short_exact_matrices(section_map(i.src.data, i.tgt.data, i.map, sa, sb),
                                     section_map(p.src.data, p.tgt.data, p.map, sb, sc)),
               tag + ": Γ(" + k.str() + ";·) exact");
    // Quotients of c-soft by c-soft are c-soft.
    ConstructibleTSheaf c2 = random_skyscraper_sum(rng, 3, 2);
    TShortExact q = random_extension(rng, a, c2);
    bool cs_b = is_c_soft(q.b).csoft;
    rep.record(!(cs_b && is_c_soft(q.a).csoft) || is_c_soft(q.c).csoft, tag + ": quotient c-soft");
    TShortExact q2 = random_extension(rng, a, c);
    if (is_c_soft(q2.b).csoft) rep.record(is_c_soft(q2.c).csoft, tag + ": quotient of c-soft B c-soft");
    // Global sections along the exhaustion (-n, n).
    long reach = ceil_of(max_abs(s.a.cx.E)) + 2;
    bool ok = true;
    for (long n = 1; n <= reach && ok; ++n) {
      SemilinearSet in = SemilinearSet::interval(Rational(-n), Rational(n));
      ok = sections_exact(s, in);
      SemilinearSet out = SemilinearSet::interval(Rational(-n - 1), Rational(n + 1));
      ok = ok && restriction_surjective(s.a, out, in);
    }
    rep.record(ok, tag + ": exhaustion chain exact with surjective transitions on the first term");
  }
  return rep;
}

}  // namespace tsite
