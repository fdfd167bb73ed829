#include "tsite/functors.hpp"

#include <algorithm>

namespace tsite {

ConstructibleTSheaf rho_star(const XSheaf& f) { return f; }

// ---------------------------------------------------------------- ρ⁻¹

namespace {

long ceil_of(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c.get_si();
}

Rational min_gap(const std::vector<Rational>& pts) {
  Rational g(1);
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Rational d = pts[i + 1] - pts[i];
    if (i == 0 || d < g) g = d;
  }
  return pts.size() < 2 ? Rational(1) : g;
}

SemilinearSet cells_union(const CellComplex& cx, const Mask& m) {
  SemilinearSet s;
  for (int c = 0; c < cx.size(); ++c)
    if (m[c]) s = unite(s, cx.cell_set(c));
  return s;
}

std::string mask_set_str(const CellComplex& cx, const Mask& m) { return cells_union(cx, m).str(); }

Rational max_abs(const std::vector<Rational>& pts) {
  Rational m(0);
  for (const Rational& q : pts)
    if (abs(q) > m) m = abs(q);
  return m;
}

bool iso(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

SemilinearSet compact_shrink(const SemilinearSet& u, int m) {
  if (!u.is_open()) throw std::invalid_argument("compact_shrink needs an open set");
  Rational eps = frac(1, m);
  std::vector<Piece> out;
  for (const Piece& p : u.pieces()) {
    Piece q = p;
    if (q.lo.finite()) q.lo.q += eps;
    if (q.hi.finite()) q.hi.q -= eps;
    if (q.lo < q.hi) out.push_back(q);
  }
  return intersect(SemilinearSet::from_pieces(out), SemilinearSet::interval(Rational(-m), Rational(m)));
}

int rho_inv_stable_index(const ConstructibleTSheaf& g, const SemilinearSet& u) {
  std::vector<Rational> p = merge_points(g.cx.E, u.endpoints());
  long a = ceil_of(Rational(2) / min_gap(p)) + 1;
  long b = ceil_of(max_abs(p)) + 2;
  return static_cast<int>(std::max(a, b));
}

ProObject rho_inv_chain(const ConstructibleTSheaf& g, const SemilinearSet& u, int depth) {
  int m0 = rho_inv_stable_index(g, u);
  int top = std::max(depth, m0 + 2);
  std::vector<SemilinearSet> w;
  std::vector<Rational> pts = u.endpoints();
  for (int m = 1; m <= top; ++m) {
    w.push_back(compact_shrink(u, m));
    pts = merge_points(pts, w.back().endpoints());
  }
  ConstructibleTSheaf r = g.refine(pts);
  ProObject out;
  std::vector<SectionSpace> s;
  for (const SemilinearSet& x : w) {
    s.push_back(sections(r.data, *r.cx.mask_of(x)));
    out.stage_dims.push_back(s.back().dim());
  }
  for (size_t i = 0; i + 1 < s.size(); ++i) out.transitions.push_back(restriction(r.data, s[i + 1], s[i]));
  int from = static_cast<int>(s.size());
  for (int i = static_cast<int>(out.transitions.size()) - 1; i >= 0 && iso(out.transitions[i]); --i) from = i + 1;
  out.stable_from = from;
  out.stable = from <= m0;
  if (out.stable) out.limit_dim = out.stage_dims[from - 1];
  return out;
}

int rho_inv_sections(const ConstructibleTSheaf& g, const SemilinearSet& u) {
  ProObject p = rho_inv_chain(g, u, 0);
  if (!p.stable) throw std::logic_error("inverse image chain does not stabilize on " + u.str());
  return p.limit_dim;
}

UnitReport rho_inv_star_check(const XSheaf& f, const std::vector<SemilinearSet>& opens) {
  UnitReport rep;
  auto fail = [&](const std::string& w) {
    if (rep.pass) rep.witness = w;
    rep.pass = false;
  };
  ConstructibleTSheaf g = rho_star(f);
  for (size_t i = 0; i < opens.size(); ++i) {
    const SemilinearSet& u = opens[i];
    ++rep.opens;
    ProObject p = rho_inv_chain(g, u, 0);
    if (!p.stable) {
      fail("chain not stable on " + u.str());
      continue;
    }
    int m = rho_inv_stable_index(g, u);
    Matrix eta = restriction_on(f, u, compact_shrink(u, m));
    if (!iso(eta) || p.limit_dim != eta.rows()) fail("unit not an isomorphism on " + u.str());
    const SemilinearSet v = intersect(u, opens[(i + 1) % opens.size()]);
    int mv = std::max(m, rho_inv_stable_index(g, v));
    SemilinearSet wu = compact_shrink(u, mv);
    SemilinearSet wv = compact_shrink(v, mv);
    Matrix lhs = restriction_on(g, wu, wv) * restriction_on(f, u, wu);
    Matrix rhs = restriction_on(f, v, wv) * restriction_on(f, u, v);
    if (lhs != rhs) fail("unit not natural for " + v.str() + " ⊆ " + u.str());
  }
  return rep;
}

bool rho_inv_natural(const TSheafMap& phi, const SemilinearSet& u) {
  int m = std::max(rho_inv_stable_index(phi.src, u), rho_inv_stable_index(phi.tgt, u));
  SemilinearSet w = compact_shrink(u, m);
  Matrix a = restriction_on(phi.tgt, u, w) * section_map_on(phi, u);
  Matrix b = section_map_on(phi, w) * restriction_on(phi.src, u, w);
  return a == b;
}

// ---------------------------------------------------------------- ρ_!

namespace {

struct ShriekScale {
  Rational g;
  Rational r;
};

ShriekScale shriek_scale(const CellComplex& fcx) {
  return {min_gap(fcx.E), Rational(ceil_of(max_abs(fcx.E)) + 1)};
}

Rational shriek_delta(const ShriekScale& s, int n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
  Rational d = s.g / Rational(p);
  d.canonicalize();
  return d;
}

// s_n(x) as a cell of fcx, and whether x is inside the cutoff.
std::pair<int, bool> shriek_point(const CellComplex& fcx, const ShriekScale& s, int n, const Rational& x) {
  Rational d = shriek_delta(s, n);
  bool live = x > -s.r - n && x < s.r + n;
  for (size_t i = 0; i < fcx.E.size(); ++i)
    if (abs(x - fcx.E[i]) <= d) return {CellComplex::vertex_cell(static_cast<int>(i)), live};
  return {fcx.locate(x), live};
}

std::vector<Rational> stage_points(const CellComplex& fcx, const ShriekScale& s, int n) {
  Rational d = shriek_delta(s, n);
  std::vector<Rational> pts;
  for (const Rational& e : fcx.E) {
    pts.push_back(e - d);
    pts.push_back(e);
    pts.push_back(e + d);
  }
  pts.push_back(-s.r - n);
  pts.push_back(s.r + n);
  return merge_points(pts, {});
}

// F_n's data on an arbitrary complex finer than the stage complex.
ConstructibleTSheaf stage_on(const XSheaf& f, const ShriekScale& s, int n, const CellComplex& cx) {
  FinitePoset P = FinitePoset::from_cells(cx);
  std::vector<std::pair<int, bool>> t(cx.size());
  std::vector<int> dims(cx.size());
  for (int c = 0; c < cx.size(); ++c) {
    t[c] = shriek_point(f.cx, s, n, cx.sample(c));
    dims[c] = t[c].second ? f.data.dim(t[c].first) : 0;
  }
  CellularSheaf out(P, dims);
  for (auto [v, e] : P.hasse())
    out.set_map(v, e, t[v].second && t[e].second ? f.data.map(t[v].first, t[e].first) : Matrix(dims[e], dims[v]));
  return {cx, out};
}

}  // namespace

ShriekStage shriek_stage(const CellComplex& fcx, int n) {
  ShriekScale s = shriek_scale(fcx);
  ShriekStage out;
  out.cx = cells(stage_points(fcx, s, n));
  for (int c = 0; c < out.cx.size(); ++c) {
    Rational x = out.cx.sample(c);
    auto [t, live] = shriek_point(fcx, s, n, x);
    out.origin.push_back(fcx.locate(x));
    out.target.push_back(t);
    out.live.push_back(live);
  }
  return out;
}

ConstructibleTSheaf rho_shriek_stage(const XSheaf& f, int n) {
  ShriekScale s = shriek_scale(f.cx);
  return stage_on(f, s, n, cells(stage_points(f.cx, s, n)));
}

TSheafMap rho_shriek_stage_map(const TSheafMap& phi, int n) {
  if (phi.src.cx.E != phi.tgt.cx.E) throw std::invalid_argument("map must live on one complex");
  ShriekStage st = shriek_stage(phi.src.cx, n);
  TSheafMap out{rho_shriek_stage(phi.src, n), rho_shriek_stage(phi.tgt, n), {}};
  for (int c = 0; c < st.cx.size(); ++c)
    out.map.comp.push_back(st.live[c] ? phi.map.comp[st.target[c]]
                                      : Matrix(out.tgt.data.dim(c), out.src.data.dim(c)));
  return out;
}

int shriek_certificate(const CellComplex& fcx, const std::vector<Rational>& pts) {
  ShriekScale s = shriek_scale(fcx);
  std::vector<Rational> p = merge_points(fcx.E, pts);
  Rational gp = min_gap(p);
  Rational reach = max_abs(p) + 1;
  int n = 1;
  while (!(shriek_delta(s, n) * 3 < gp && s.r + n > reach)) ++n;
  return n;
}

IndSheaf rho_shriek(const XSheaf& f) {
  ShriekScale s = shriek_scale(f.cx);
  IndSheaf out;
  out.name = "ρ_!(" + f.str() + ")";
  out.stage = [f](int n) { return rho_shriek_stage(f, n); };
  out.transition = [f, s](int n) {
    CellComplex cx = cells(merge_points(stage_points(f.cx, s, n), stage_points(f.cx, s, n + 1)));
    TSheafMap m{stage_on(f, s, n, cx), stage_on(f, s, n + 1, cx), {}};
    for (int c = 0; c < cx.size(); ++c) {
      Rational x = cx.sample(c);
      auto [a, la] = shriek_point(f.cx, s, n, x);
      auto [b, lb] = shriek_point(f.cx, s, n + 1, x);
      m.map.comp.push_back(la && lb ? f.data.map(a, b) : Matrix(m.tgt.data.dim(c), m.src.data.dim(c)));
    }
    return m;
  };
  CellComplex fcx = f.cx;
  out.certificate = [fcx](const SemilinearSet& u) { return shriek_certificate(fcx, u.endpoints()); };
  return out;
}

TSheafMap shriek_counit(const XSheaf& f, int n) {
  ShriekStage st = shriek_stage(f.cx, n);
  ConstructibleTSheaf src = rho_shriek_stage(f, n);
  ConstructibleTSheaf tgt = f.refine(st.cx.E);
  TSheafMap m{src, tgt, {}};
  for (int c = 0; c < st.cx.size(); ++c)
    m.map.comp.push_back(st.live[c] ? f.data.map(st.target[c], st.origin[c])
                                    : Matrix(tgt.data.dim(c), src.data.dim(c)));
  return m;
}

// ---------------------------------------------------------------- adjunction

namespace {

// A point of the stage-n picture lying in the shrunk part of the cell x of F.
Rational shrunk_rep(const CellComplex& fcx, const ShriekScale& s, int n, int x) {
  if (fcx.E.empty()) return Rational(0);
  if (CellComplex::is_vertex(x)) return fcx.vertex_value(x);
  Rational d = shriek_delta(s, n);
  int i = x / 2;
  int m = fcx.num_vertices();
  Rational lo = i == 0 ? Rational(-s.r - n) : Rational(fcx.E[i - 1] + d);
  Rational hi = i == m ? Rational(s.r + n) : Rational(fcx.E[i] - d);
  return (lo + hi) / 2;
}

}  // namespace

AdjunctionReport adjunction_check(const XSheaf& f0, const ConstructibleTSheaf& g0) {
  AdjunctionReport rep;
  auto fail = [&](const std::string& w) {
    if (rep.pass) rep.witness = w;
    rep.pass = false;
  };
  std::vector<Rational> e = merge_points(f0.cx.E, g0.cx.E);
  XSheaf f = f0.refine(e);
  ConstructibleTSheaf g = g0.refine(e);
  ShriekScale s = shriek_scale(f.cx);
  int n = shriek_certificate(f.cx, e);
  rep.stage = n;
  CellComplex cx = cells(merge_points(stage_points(f.cx, s, n), stage_points(f.cx, s, n + 1)));
  Refinement rf = refine(f.cx, cx.E);
  ConstructibleTSheaf fn = stage_on(f, s, n, cx);
  ConstructibleTSheaf fn1 = stage_on(f, s, n + 1, cx);
  ConstructibleTSheaf gc = g.refine(cx.E);
  TSheafMap tr = rho_shriek(f).transition(n);
  if (!tr.valid()) fail("transition is not a morphism");

  HomSpace h1 = hom_space(fn.data, gc.data);
  HomSpace h1n = hom_space(fn1.data, gc.data);
  HomSpace h2 = hom_space(f.data, g.data);
  rep.hom_shriek = h1.dim();
  rep.hom_inv = h2.dim();

  // Precomposition with F_n -> F_{n+1} is an isomorphism on Hom(-, G).
  Matrix pre(h1.dim(), h1n.dim());
  bool ok = true;
  for (int j = 0; j < h1n.dim() && ok; ++j) {
    auto c = hom_coordinates(h1, compose(h1n.basis[j], tr.map));
    if (!c) ok = false;
    else pre.set_block(0, j, *c);
  }
  rep.stage_stable = ok && iso(pre);
  if (!rep.stage_stable) fail("Hom(F_n, G) not stable at the certified stage");

  auto xi_at = [&](const SheafMap& phi, int stage) {
    SheafMap psi;
    for (int c = 0; c < cx.size(); ++c) {
      Rational x = cx.sample(c);
      auto [t, live] = shriek_point(f.cx, s, stage, x);
      int o = rf.to_coarse[c];
      if (live)
        psi.comp.push_back(g.data.map(t, o) * phi.comp[t]);
      else
        psi.comp.push_back(Matrix(gc.data.dim(c), 0));
    }
    return psi;
  };
  Matrix xi(h1.dim(), h2.dim());
  bool xi_ok = true;
  bool natural = true;
  for (int j = 0; j < h2.dim(); ++j) {
    SheafMap psi = xi_at(h2.basis[j], n);
    if (!is_morphism(fn.data, gc.data, psi)) {
      xi_ok = false;
      break;
    }
    auto c = hom_coordinates(h1, psi);
    if (!c) {
      xi_ok = false;
      break;
    }
    xi.set_block(0, j, *c);
    SheafMap psi1 = xi_at(h2.basis[j], n + 1);
    if (!same_map(compose(psi1, tr.map), psi)) natural = false;
  }
  rep.xi_natural = xi_ok && natural;
  if (!xi_ok) fail("ξ does not produce morphisms");

  Matrix theta(h2.dim(), h1.dim());
  bool th_ok = true;
  for (int j = 0; j < h1.dim() && th_ok; ++j) {
    SheafMap phi;
    for (int x = 0; x < f.cx.size(); ++x) phi.comp.push_back(h1.basis[j].comp[cx.locate(shrunk_rep(f.cx, s, n, x))]);
    if (!is_morphism(f.data, g.data, phi)) th_ok = false;
    auto c = hom_coordinates(h2, phi);
    if (!c) th_ok = false;
    else theta.set_block(0, j, *c);
  }
  if (!th_ok) fail("θ does not produce morphisms");
  rep.theta_xi_id = xi_ok && th_ok && theta * xi == Matrix::identity(h2.dim());
  rep.xi_theta_id = xi_ok && th_ok && xi * theta == Matrix::identity(h1.dim());
  if (!rep.theta_xi_id || !rep.xi_theta_id) fail("ξ and θ are not mutually inverse");
  if (!rep.xi_natural && rep.pass) fail("ξ does not commute with the transitions");
  return rep;
}

bool rho_inv_shriek_check(const XSheaf& f, const SemilinearSet& u) {
  int m = rho_inv_stable_index(f, u);
  for (int k = m; k <= m + 1; ++k) {
    SemilinearSet w = compact_shrink(u, k);
    int n = shriek_certificate(f.cx, merge_points(u.endpoints(), w.endpoints()));
    TSheafMap eps = shriek_counit(f, n);
    if (!eps.valid()) return false;
    if (!iso(section_map_on(eps, w))) return false;
    if (!iso(restriction_on(f, u, w))) return false;
  }
  return true;
}

bool rho_shriek_exact(const TSheafMap& i, const TSheafMap& p, int stages) {
  for (int n = 1; n <= stages; ++n) {
    TSheafMap a = rho_shriek_stage_map(i, n);
    TSheafMap b = rho_shriek_stage_map(p, n);
    if (!a.valid() || !b.valid()) return false;
    for (size_t c = 0; c < a.map.comp.size(); ++c) {
      const Matrix& x = a.map.comp[c];
      const Matrix& y = b.map.comp[c];
      if (!is_injective(x) || !is_surjective(y) || !(y * x).is_zero()) return false;
      if (rank(x) != y.cols() - rank(y)) return false;
    }
  }
  return true;
}

bool rho_shriek_tensor(const XSheaf& f0, const XSheaf& g0, int stages) {
  auto [f, g] = common_refinement(f0, g0);
  ConstructibleTSheaf fg = tensor(f, g);
  for (int n = 1; n <= stages; ++n) {
    ConstructibleTSheaf a = rho_shriek_stage(fg, n);
    ConstructibleTSheaf b = tensor(rho_shriek_stage(f, n), rho_shriek_stage(g, n));
    if (a.cx.E != b.cx.E || a.data.dims() != b.data.dims()) return false;
    for (auto [v, e] : a.data.poset().hasse())
      if (a.data.cover_map(v, e) != b.data.cover_map(v, e)) return false;
  }
  return true;
}

ShriekValues shriek_values(const XSheaf& f, const SemilinearSet& u) {
  if (!u.is_bounded()) throw std::invalid_argument("shriek_values needs a bounded open");
  std::vector<Rational> p = merge_points(f.cx.E, u.endpoints());
  Rational eps = min_gap(p) / 3;
  std::vector<Piece> nb;
  for (const Piece& c : closure(u).pieces()) {
    Piece q;
    q.lo = Endpoint::at(c.lo.q - eps);
    q.hi = Endpoint::at(c.hi.q + eps);
    nb.push_back(q);
  }
  ShriekValues v;
  v.presheaf_colimit = sections_dim(f, SemilinearSet::from_pieces(nb));
  v.sheaf = ind_colimit_sections(rho_shriek(f), u);
  v.star = sections_dim(rho_star(f), u);
  return v;
}

// ---------------------------------------------------------------- k_U two ways

TwoWaysReport constant_sheaf_two_ways(const SemilinearSet& u) {
  if (!u.is_open()) throw std::invalid_argument("constant_sheaf_two_ways needs an open set");
  TwoWaysReport r;
  CellComplex cx = cells(u.endpoints());
  ConstructibleTSheaf ku = constant_sheaf(u).refine(cx.E);
  FiniteSite site = FiniteSite::of_poset(ku.data.poset());
  Mask um = *cx.mask_of(u);
  auto fail = [&](const std::string& w) {
    r.pass = false;
    if (r.witness.empty()) r.witness = u.str() + ": " + w;
  };

  std::vector<int> dims(site.num_opens());
  for (int v = 0; v < site.num_opens(); ++v) dims[v] = mask_subset(site.open(v), um) ? 1 : 0;
  CellularSheaf ind(site.inclusion_poset(), dims);
  for (auto [v, w] : site.inclusion_poset().hasse())
    ind.set_map(v, w, dims[v] && dims[w] ? Matrix::identity(1) : Matrix(dims[w], dims[v]));
  Presheaf p{site, ind};
  Presheaf g = sections_presheaf(ku.data);

  std::vector<Matrix> phi;
  for (int v = 0; v < site.num_opens(); ++v) {
    if (!dims[v]) {
      phi.push_back(Matrix(g.dim(v), 0));
      continue;
    }
    SectionSpace s = sections(ku.data, site.open(v));
    Matrix ones(s.total, 1);
    for (int i = 0; i < s.total; ++i) ones.at(i, 0) = Scalar(1);
    auto x = solve(s.basis, ones);
    if (!x) {
      fail("the unit section is not a section");
      return r;
    }
    phi.push_back(*x);
  }
  if (!is_presheaf_morphism(p, g, phi)) fail("unit sections do not commute with restriction");

  PlusResult p1 = plus_construction(p);
  PlusResult g1 = plus_construction(g);
  PlusResult g2 = plus_construction(g1.plus);
  std::vector<Matrix> phi2 = plus_map(p1.plus, g1.plus, plus_map(p, g, phi));
  for (int v = 0; v < site.num_opens(); ++v) {
    ++r.opens;
    Matrix back = g2.unit[v] * g1.unit[v];
    if (!inverse(back)) {
      fail("sections of k_U are not a sheaf at " + mask_set_str(cx, site.open(v)));
      continue;
    }
    if (!inverse(phi2[v])) fail("sheafified comparison not invertible on " + mask_set_str(cx, site.open(v)));
    if (dims[v] && connected_components(cells_union(cx, site.open(v))) == 1) {
      ++r.connected;
      if (g.dim(v) != 1 || rank(phi[v]) != 1) fail("connected open " + mask_set_str(cx, site.open(v)));
    }
  }
  return r;
}

// ---------------------------------------------------------------- site maps

SiteMap SiteMap::piecewise(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) throw std::invalid_argument("site map needs at least two breakpoints");
  bool inc = ys[1] > ys[0];
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) throw std::invalid_argument("breakpoints must increase");
    if (ys[i] == ys[i + 1] || (ys[i + 1] > ys[i]) != inc) throw std::invalid_argument("site map must be strictly monotone");
  }
  SiteMap m;
  m.xs_ = xs;
  m.ys_ = ys;
  return m;
}

SiteMap SiteMap::affine(const Rational& slope, const Rational& shift) {
  return piecewise({Rational(0), Rational(1)}, {shift, slope + shift});
}

SiteMap SiteMap::constant(const Rational& c) {
  SiteMap m;
  m.constant_ = true;
  m.ys_ = {c};
  return m;
}

bool SiteMap::increasing() const { return !constant_ && ys_[1] > ys_[0]; }

namespace {

Rational interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys, const Rational& x) {
  size_t k = xs.size();
  size_t i = 0;
  if (x >= xs[k - 1])
    i = k - 2;
  else
    while (i + 2 < k && x >= xs[i + 1]) ++i;
  return ys[i] + (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) * (x - xs[i]);
}

}  // namespace

Rational SiteMap::apply(const Rational& x) const {
  if (constant_) return ys_[0];
  return interpolate(xs_, ys_, x);
}

Rational SiteMap::inverse(const Rational& y) const {
  if (constant_) throw std::invalid_argument("a constant map has no inverse");
  if (increasing()) return interpolate(ys_, xs_, y);
  std::vector<Rational> ry(ys_.rbegin(), ys_.rend());
  std::vector<Rational> rx(xs_.rbegin(), xs_.rend());
  return interpolate(ry, rx, y);
}

SemilinearSet SiteMap::preimage(const SemilinearSet& v) const {
  if (constant_) {
    bool hit = v.contains(ys_[0]);
    if (hit && v.is_bounded()) throw std::invalid_argument("preimage of " + v.str() + " is the whole line, not in T");
    return hit ? SemilinearSet::line() : SemilinearSet();
  }
  bool inc = increasing();
  auto back = [&](const Endpoint& e) {
    if (!e.finite()) return Endpoint{inc ? e.inf : -e.inf, Rational(0)};
    return Endpoint::at(inverse(e.q));
  };
  std::vector<Piece> out;
  for (const Piece& p : v.pieces()) {
    Piece q = p;
    q.lo = back(inc ? p.lo : p.hi);
    q.hi = back(inc ? p.hi : p.lo);
    out.push_back(q);
  }
  return SemilinearSet::from_pieces(out);
}

ConstructibleTSheaf pushforward(const SiteMap& f, const ConstructibleTSheaf& F) {
  if (f.is_constant()) throw std::invalid_argument("a constant map does not define a morphism of T-sites");
  const ConstructibleTSheaf& r = F;
  std::vector<Rational> img;
  for (const Rational& x : r.cx.E) img.push_back(f.apply(x));
  std::sort(img.begin(), img.end());
  CellComplex cx = cells(img);
  FinitePoset P = FinitePoset::from_cells(cx);
  int n = cx.size();
  bool inc = f.increasing();
  auto idx = [&](int c) { return inc ? c : n - 1 - c; };
  std::vector<int> dims(n);
  for (int c = 0; c < n; ++c) dims[idx(c)] = r.data.dim(c);
  CellularSheaf out(P, dims);
  for (auto [v, e] : r.data.poset().hasse()) out.set_map(idx(v), idx(e), r.data.cover_map(v, e));
  return {cx, out};
}

ProObject pushforward_point_sections(const SiteMap& f, const ConstructibleTSheaf& F, int depth) {
  if (!f.is_constant()) throw std::invalid_argument("expected a constant map");
  return evaluate_tloc(F, TlocOpen::whole_line(), depth);
}

}  // namespace tsite
