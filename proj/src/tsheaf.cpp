#include "tsite/tsheaf.hpp"

#include <algorithm>
#include <sstream>

namespace tsite {

// ---------------------------------------------------------------- objects

ConstructibleTSheaf ConstructibleTSheaf::zero() {
  CellComplex c = cells({});
  return {c, CellularSheaf::zero(FinitePoset::from_cells(c))};
}

ConstructibleTSheaf ConstructibleTSheaf::make(const CellComplex& cx, const CellularSheaf& data) {
  if (!(data.poset() == FinitePoset::from_cells(cx)))
    throw std::invalid_argument("cellular data does not live on the cells of E");
  data.validate();
  return {cx, data};
}

ConstructibleTSheaf ConstructibleTSheaf::refine(const std::vector<Rational>& extra) const {
  Refinement r = tsite::refine(cx, extra);
  if (r.fine.E == cx.E) return *this;
  FinitePoset P = FinitePoset::from_cells(r.fine);
  std::vector<int> dims(r.fine.size());
  for (int c = 0; c < r.fine.size(); ++c) dims[c] = data.dim(r.to_coarse[c]);
  CellularSheaf out(P, dims);
  for (auto [v, e] : P.hasse()) {
    int cv = r.to_coarse[v];
    int ce = r.to_coarse[e];
    out.set_map(v, e, cv == ce ? Matrix::identity(dims[v]) : data.map(cv, ce));
  }
  return {r.fine, out};
}

bool ConstructibleTSheaf::has_bounded_support() const { return data.dim(0) == 0 && data.dim(cx.size() - 1) == 0; }

SemilinearSet ConstructibleTSheaf::support() const {
  SemilinearSet s;
  for (int c = 0; c < cx.size(); ++c)
    if (data.dim(c) > 0) s = unite(s, cx.cell_set(c));
  return s;
}

std::string ConstructibleTSheaf::str() const {
  std::ostringstream os;
  os << "E=[";
  for (size_t i = 0; i < cx.E.size(); ++i) os << (i ? "," : "") << cx.E[i].get_str();
  os << "] dims=[";
  for (int c = 0; c < cx.size(); ++c) os << (c ? "," : "") << data.dim(c);
  os << "]";
  return os.str();
}

TSheafMap TSheafMap::refine(const std::vector<Rational>& extra) const {
  Refinement r = tsite::refine(src.cx, extra);
  if (r.fine.E == src.cx.E) return *this;
  TSheafMap out{src.refine(extra), tgt.refine(extra), {}};
  for (int c = 0; c < r.fine.size(); ++c) out.map.comp.push_back(map.comp[r.to_coarse[c]]);
  return out;
}

bool TSheafMap::valid() const { return src.cx.E == tgt.cx.E && is_morphism(src.data, tgt.data, map); }

std::pair<ConstructibleTSheaf, ConstructibleTSheaf> common_refinement(const ConstructibleTSheaf& a,
                                                                      const ConstructibleTSheaf& b) {
  std::vector<Rational> e = merge_points(a.cx.E, b.cx.E);
  return {a.refine(e), b.refine(e)};
}

bool same_up_to_refinement(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b) {
  auto [x, y] = common_refinement(a, b);
  if (x.data.dims() != y.data.dims()) return false;
  for (auto [p, q] : x.data.poset().hasse())
    if (x.data.cover_map(p, q) != y.data.cover_map(p, q)) return false;
  return true;
}

std::optional<SheafMap> find_isomorphism(const CellularSheaf& a, const CellularSheaf& b) {
  if (a.dims() != b.dims()) return std::nullopt;
  HomSpace h = hom_space(a, b);
  Rng rng(0x150);
  for (int attempt = 0; attempt < 12; ++attempt) {
    SheafMap m = zero_map(a, b);
    for (const SheafMap& x : h.basis) m = add_maps(m, scale_map(Scalar(rng.uniform(-5, 5)), x));
    if (is_iso(m)) return m;
  }
  return std::nullopt;
}

std::optional<TSheafMap> find_isomorphism(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b) {
  auto [x, y] = common_refinement(a, b);
  auto m = find_isomorphism(x.data, y.data);
  if (!m) return std::nullopt;
  return TSheafMap{x, y, *m};
}

ConstructibleTSheaf constant_sheaf(const SemilinearSet& z) {
  CellComplex c = cells(z.endpoints());
  FinitePoset P = FinitePoset::from_cells(c);
  Mask m = *c.mask_of(z);
  if (!P.is_convex(m)) throw std::invalid_argument("constant_sheaf needs a locally closed set: " + z.str());
  return {c, CellularSheaf::constant_on(P, m)};
}

ConstructibleTSheaf skyscraper(const Rational& q) { return constant_sheaf(SemilinearSet::point(q)); }

ConstructibleTSheaf direct_sum(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b) {
  auto [x, y] = common_refinement(a, b);
  return {x.cx, direct_sum(x.data, y.data).sheaf};
}

ConstructibleTSheaf direct_sum_all(const std::vector<ConstructibleTSheaf>& parts) {
  ConstructibleTSheaf out = ConstructibleTSheaf::zero();
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

ConstructibleTSheaf tensor(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b) {
  auto [x, y] = common_refinement(a, b);
  return {x.cx, tensor(x.data, y.data)};
}

ConstructibleTSheaf sheaf_hom(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b) {
  auto [x, y] = common_refinement(a, b);
  return {x.cx, internal_hom(x.data, y.data)};
}

ConstructibleTSheaf random_tsheaf(Rng& rng, const std::vector<Rational>& e, int max_dim, bool bounded_support) {
  CellComplex c = cells(e);
  FinitePoset P = FinitePoset::from_cells(c);
  std::vector<int> dims(c.size());
  for (int k = 0; k < c.size(); ++k) dims[k] = static_cast<int>(rng.uniform(0, max_dim));
  if (bounded_support) dims.front() = dims.back() = 0;
  CellularSheaf f(P, dims);
  for (auto [v, ed] : P.hasse()) {
    Matrix m(dims[ed], dims[v]);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar(rng.uniform(-2, 2));
    f.set_map(v, ed, m);
  }
  return {c, f};
}

std::vector<Rational> random_endpoints(Rng& rng, int max_count, int span, int den) {
  int n = static_cast<int>(rng.uniform(0, max_count));
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) out.push_back(random_grid_point(rng, span, den));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TSheafMap random_tmap(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b, Rng& rng) {
  auto [x, y] = common_refinement(a, b);
  return {x, y, random_map(x.data, y.data, rng)};
}

TSheafMap identity_tmap(const ConstructibleTSheaf& a) { return {a, a, identity_map(a.data)}; }

TSheafMap compose(const TSheafMap& second, const TSheafMap& first) {
  std::vector<Rational> e = merge_points(first.src.cx.E, second.src.cx.E);
  TSheafMap f = first.refine(e);
  TSheafMap s = second.refine(e);
  if (f.tgt.data.dims() != s.src.data.dims()) throw std::invalid_argument("maps do not compose");
  return {f.src, s.tgt, compose(s.map, f.map)};
}

TKernel kernel(const TSheafMap& m) {
  Kernel k = kernel(m.src.data, m.tgt.data, m.map);
  ConstructibleTSheaf s{m.src.cx, k.sheaf};
  return {s, {s, m.src, k.incl}};
}

TCokernel cokernel(const TSheafMap& m) {
  Cokernel k = cokernel(m.src.data, m.tgt.data, m.map);
  ConstructibleTSheaf s{m.src.cx, k.sheaf};
  return {s, {m.tgt, s, k.proj}};
}

TKernel image(const TSheafMap& m) {
  Kernel k = image(m.src.data, m.tgt.data, m.map);
  ConstructibleTSheaf s{m.src.cx, k.sheaf};
  return {s, {s, m.tgt, k.incl}};
}

// ---------------------------------------------------------------- sections

namespace {

Mask open_mask(const ConstructibleTSheaf& f, const SemilinearSet& u) {
  if (!u.is_open()) throw std::invalid_argument("sections are taken over open sets: " + u.str());
  auto m = f.cx.mask_of(u);
  if (!m) throw std::invalid_argument("open is not a union of cells: " + u.str());
  return *m;
}

}  // namespace

SectionSpace cell_sections(const ConstructibleTSheaf& f, const SemilinearSet& u) {
  ConstructibleTSheaf r = f.refine(u.endpoints());
  return sections(r.data, open_mask(r, u));
}

int sections_dim(const ConstructibleTSheaf& f, const SemilinearSet& u) { return cell_sections(f, u).dim(); }

Matrix restriction_on(const ConstructibleTSheaf& f, const SemilinearSet& v, const SemilinearSet& u) {
  if (!subset(u, v)) throw std::invalid_argument("restriction needs U ⊆ V");
  ConstructibleTSheaf r = f.refine(merge_points(u.endpoints(), v.endpoints()));
  SectionSpace sv = sections(r.data, open_mask(r, v));
  SectionSpace su = sections(r.data, open_mask(r, u));
  return restriction(r.data, sv, su);
}

Matrix section_map_on(const TSheafMap& m, const SemilinearSet& u) {
  TSheafMap r = m.refine(u.endpoints());
  Mask mk = open_mask(r.src, u);
  return section_map(r.src.data, r.tgt.data, r.map, sections(r.src.data, mk), sections(r.tgt.data, mk));
}

int hom_dim(const ConstructibleTSheaf& a, const ConstructibleTSheaf& b) {
  auto [x, y] = common_refinement(a, b);
  return hom_space(x.data, y.data).dim();
}

// ---------------------------------------------------------------- T_loc

std::string ProObject::str() const {
  std::ostringstream os;
  os << "stages [";
  for (size_t i = 0; i < stage_dims.size(); ++i) os << (i ? "," : "") << stage_dims[i];
  os << "]";
  if (stable)
    os << " stable from " << stable_from << ", limit dim " << limit_dim;
  else
    os << " not stabilizing";
  return os.str();
}

namespace {

long ceil_abs(const Rational& q) {
  Rational a = abs(q);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return c.get_si();
}

long bound_of(const std::vector<Rational>& pts) {
  long b = 0;
  for (const Rational& q : pts) b = std::max(b, ceil_abs(q));
  return b;
}

Rational rational_lcm(const Rational& a, const Rational& b) {
  mpz_class den = lcm(a.get_den(), b.get_den());
  mpz_class na = a.get_num() * (den / a.get_den());
  mpz_class nb = b.get_num() * (den / b.get_den());
  Rational r(lcm(na, nb), den);
  r.canonicalize();
  return r;
}

// Stages U ∩ (-n, n) for n = 1..N over data already covering (-N-1, N+1).
// Stable when every transition from check_from on is an isomorphism.
ProObject chain_eval(const ConstructibleTSheaf& f, const TlocOpen& u, int n_max, int check_from) {
  std::vector<Rational> pts = f.cx.E;
  for (long n = 1; n <= n_max; ++n) {
    pts.push_back(Rational(n));
    pts.push_back(Rational(-n));
  }
  pts = merge_points(pts, u.truncate(n_max).endpoints());
  ConstructibleTSheaf r = f.refine(pts);
  std::vector<SectionSpace> s;
  ProObject out;
  for (long n = 1; n <= n_max; ++n) {
    s.push_back(sections(r.data, open_mask(r, u.truncate(n))));
    out.stage_dims.push_back(s.back().dim());
  }
  for (size_t i = 0; i + 1 < s.size(); ++i) out.transitions.push_back(restriction(r.data, s[i + 1], s[i]));
  int from = static_cast<int>(s.size());
  for (int i = static_cast<int>(out.transitions.size()) - 1; i >= 0; --i) {
    const Matrix& t = out.transitions[i];
    if (t.rows() != t.cols() || rank(t) != t.rows()) break;
    from = i + 1;
  }
  out.stable_from = from;
  out.stable = from <= check_from;
  if (out.stable) out.limit_dim = out.stage_dims[from - 1];
  return out;
}

}  // namespace

ProObject evaluate_tloc(const ConstructibleTSheaf& f, const TlocOpen& u, int depth) {
  is_Tloc_open(u);
  std::vector<Rational> pts = f.cx.E;
  long per = 0;
  if (u.kind == TlocOpen::Kind::Finite) {
    pts = merge_points(pts, u.set.endpoints());
  } else {
    per = ceil_abs(u.period);
    pts = merge_points(pts, u.pattern.endpoints());
  }
  long b = bound_of(pts) + 2;
  long n_max = std::max<long>(depth, b + per + 2);
  return chain_eval(f, u, static_cast<int>(n_max), static_cast<int>(b));
}

PeriodicSheaf PeriodicSheaf::integer_skyscrapers() {
  PeriodicSheaf p;
  p.period = 1;
  p.e0 = {Rational(0)};
  p.vdim = {1};
  p.edim = {0};
  p.right = {Matrix(0, 1)};
  p.left = {Matrix(0, 1)};
  return p;
}

ConstructibleTSheaf PeriodicSheaf::window(long n) const {
  const int m = static_cast<int>(e0.size());
  if (m == 0 || period <= 0) throw std::invalid_argument("periodic data needs a positive period and a vertex");
  long kmax = ceil_abs(Rational(n) / period) + 1;
  std::vector<Rational> pts;
  std::vector<int> kind;
  for (long k = -kmax; k <= kmax; ++k)
    for (int i = 0; i < m; ++i) {
      pts.push_back(e0[i] + period * k);
      kind.push_back(i);
    }
  CellComplex c = cells(pts);
  FinitePoset P = FinitePoset::from_cells(c);
  std::vector<int> dims(c.size());
  dims[0] = edim[(kind[0] + m - 1) % m];
  for (size_t j = 0; j < pts.size(); ++j) {
    dims[2 * j + 1] = vdim[kind[j]];
    dims[2 * j + 2] = edim[kind[j]];
  }
  CellularSheaf f(P, dims);
  for (size_t j = 0; j < pts.size(); ++j) {
    int v = static_cast<int>(2 * j + 1);
    f.set_map(v, v - 1, left[kind[j]]);
    f.set_map(v, v + 1, right[kind[j]]);
  }
  return {c, f};
}

ProObject evaluate_tloc(const PeriodicSheaf& f, const TlocOpen& u, int depth) {
  is_Tloc_open(u);
  Rational l = f.period;
  if (u.kind == TlocOpen::Kind::Periodic) l = rational_lcm(l, u.period);
  long span = ceil_abs(l) + 1;
  long b = u.kind == TlocOpen::Kind::Finite ? bound_of(u.set.endpoints()) + 2 : 1;
  long n_max = std::max<long>(depth, b + 2 * span + 1);
  ProObject p = chain_eval(f.window(n_max + 1), u, static_cast<int>(n_max), static_cast<int>(n_max - span));
  return p;
}

// ---------------------------------------------------------------- presheaf checks

TPresheaf sections_tpresheaf(const ConstructibleTSheaf& f) {
  return {"sections of " + f.str(), [f](const SemilinearSet& u) { return sections_dim(f, u); },
          [f](const SemilinearSet& v, const SemilinearSet& u) { return restriction_on(f, v, u); }};
}

TPresheaf constant_tpresheaf() {
  return {"constant presheaf k", [](const SemilinearSet& u) { return u.empty() ? 0 : 1; },
          [](const SemilinearSet& v, const SemilinearSet& u) {
            return Matrix::identity(1).block(0, 0, u.empty() ? 0 : 1, v.empty() ? 0 : 1);
          }};
}

TPresheaf rescaled_tpresheaf(const ConstructibleTSheaf& f) {
  return {"rescaled sections of " + f.str(), [f](const SemilinearSet& u) { return sections_dim(f, u); },
          [f](const SemilinearSet& v, const SemilinearSet& u) {
            Matrix r = restriction_on(f, v, u);
            return u == v ? r : Scalar(2) * r;
          }};
}

bool gluing_exact(const TPresheaf& p, const SemilinearSet& u, const SemilinearSet& v) {
  SemilinearSet uv = unite(u, v);
  SemilinearSet w = intersect(u, v);
  int a = p.dim(uv);
  int b = p.dim(u);
  int c = p.dim(v);
  int d = p.dim(w);
  Matrix m1 = vstack(p.res(uv, u), p.res(uv, v));
  Matrix m2 = hstack(p.res(u, w), Scalar(-1) * p.res(v, w));
  if (m1.rows() != b + c || m1.cols() != a || m2.rows() != d) return false;
  if (!(m2 * m1).is_zero()) return false;
  int r1 = rank(m1);
  return r1 == a && r1 == b + c - rank(m2);
}

namespace {

// Equalizer condition for a finite covering of their union.
bool covering_exact(const TPresheaf& p, const std::vector<SemilinearSet>& cov) {
  SemilinearSet u;
  for (const auto& s : cov) u = unite(u, s);
  std::vector<Matrix> down;
  int total = 0;
  for (const auto& s : cov) {
    down.push_back(p.res(u, s));
    total += p.dim(s);
  }
  Matrix m1 = vstack(down, p.dim(u));
  std::vector<Matrix> rows;
  int off = 0;
  std::vector<int> offs;
  for (const auto& s : cov) {
    offs.push_back(off);
    off += p.dim(s);
  }
  for (size_t i = 0; i < cov.size(); ++i)
    for (size_t j = i + 1; j < cov.size(); ++j) {
      SemilinearSet w = intersect(cov[i], cov[j]);
      Matrix r(p.dim(w), total);
      r.set_block(0, offs[i], p.res(cov[i], w));
      r.set_block(0, offs[j], Scalar(-1) * p.res(cov[j], w));
      rows.push_back(r);
    }
  Matrix m2 = rows.empty() ? Matrix(0, total) : vstack(rows, total);
  if (!(m2 * m1).is_zero()) return false;
  int r1 = rank(m1);
  return r1 == p.dim(u) && r1 == total - rank(m2);
}

}  // namespace

AxiomReport sheaf_axioms_check(const TPresheaf& p, int budget, std::uint64_t seed) {
  AxiomReport rep;
  auto fail = [&](const std::string& w) {
    if (rep.pass) rep.witness = w;
    rep.pass = false;
  };
  if (p.dim(SemilinearSet()) != 0) fail("P(empty) is nonzero");
  Rng rng(seed);
  std::vector<std::pair<SemilinearSet, SemilinearSet>> pairs = {
      {SemilinearSet::parse("(0,1)"), SemilinearSet::parse("(2,3)")},
      {SemilinearSet::parse("(0,2)"), SemilinearSet::parse("(1,3)")},
      {SemilinearSet::parse("(0,1)"), SemilinearSet::parse("(1,2)")}};
  while (static_cast<int>(pairs.size()) < budget)
    pairs.emplace_back(random_open(rng, 3, true), random_open(rng, 3, true));
  for (const auto& [u, v] : pairs) {
    ++rep.pairs;
    if (!gluing_exact(p, u, v)) fail("gluing fails for U=" + u.str() + ", V=" + v.str());
  }
  for (int i = 0; i < std::max(1, budget / 2); ++i) {
    SemilinearSet a = random_open(rng, 3, true);
    SemilinearSet b = intersect(a, random_open(rng, 3, true));
    SemilinearSet c = intersect(b, random_open(rng, 3, true));
    ++rep.triples;
    if (p.res(a, c) != p.res(b, c) * p.res(a, b))
      fail("restrictions do not compose for " + a.str() + " ⊇ " + b.str() + " ⊇ " + c.str());
  }
  for (int i = 0; i < std::max(1, budget / 4); ++i) {
    std::vector<SemilinearSet> cov;
    int k = static_cast<int>(rng.uniform(2, 4));
    for (int j = 0; j < k; ++j) cov.push_back(random_open(rng, 2, true));
    ++rep.coverings;
    if (!covering_exact(p, cov)) {
      std::string w = "covering fails:";
      for (const auto& s : cov) w += " " + s.str();
      fail(w);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- ind-systems

Matrix ind_transition_on(const IndSheaf& s, const SemilinearSet& u, int from, int to) {
  Matrix t = Matrix::identity(sections_dim(s.stage(from), u));
  for (int n = from; n < to; ++n) t = section_map_on(s.transition(n), u) * t;
  return t;
}

int ind_colimit_sections(const IndSheaf& s, const SemilinearSet& u) {
  int n0 = s.certificate(u);
  for (int n = n0; n < n0 + 2; ++n) {
    Matrix t = section_map_on(s.transition(n), u);
    if (t.rows() != t.cols() || rank(t) != t.rows())
      throw CertificateViolation(s.name + ": sections over " + u.str() + " change between stages " +
                                 std::to_string(n) + " and " + std::to_string(n + 1));
  }
  return sections_dim(s.stage(n0), u);
}

TPresheaf ind_colimit_presheaf(const IndSheaf& s) {
  return {"colimit of " + s.name, [s](const SemilinearSet& u) { return ind_colimit_sections(s, u); },
          [s](const SemilinearSet& v, const SemilinearSet& u) {
            int nv = s.certificate(v);
            int nu = s.certificate(u);
            int n = std::max(nu, nv);
            Matrix tv = ind_transition_on(s, v, nv, n);
            Matrix tu = ind_transition_on(s, u, nu, n);
            auto inv = inverse(tu);
            if (!inv) throw CertificateViolation(s.name + ": unstable past the certificate on " + u.str());
            return *inv * restriction_on(s.stage(n), v, u) * tv;
          }};
}

int stalkwise_colimit_sections(const IndSheaf& s, const SemilinearSet& u) {
  int big = s.certificate(u) + 2;
  std::vector<Rational> pts = u.endpoints();
  std::vector<TSheafMap> tr;
  for (int n = 1; n < big; ++n) {
    tr.push_back(s.transition(n));
    pts = merge_points(pts, tr.back().src.cx.E);
  }
  for (auto& t : tr) t = t.refine(pts);
  const ConstructibleTSheaf& last = tr.back().tgt;
  const CellularSheaf& proto = last.data;
  const FinitePoset& P = proto.poset();
  std::vector<FinDiagram> diag(P.size());
  std::vector<Colimit> col(P.size());
  std::vector<int> dims(P.size());
  for (int c = 0; c < P.size(); ++c) {
    for (size_t i = 0; i < tr.size(); ++i) {
      diag[c].dims.push_back(tr[i].src.data.dim(c));
      diag[c].arrows.push_back({static_cast<int>(i), static_cast<int>(i + 1), tr[i].map.comp[c]});
    }
    diag[c].dims.push_back(last.data.dim(c));
    col[c] = finite_colimit(diag[c]);
    dims[c] = col[c].dim;
  }
  CellularSheaf cf(P, dims);
  for (auto [v, e] : P.hasse()) {
    std::vector<Matrix> legs;
    for (size_t i = 0; i < tr.size(); ++i) legs.push_back(col[e].inj[i] * tr[i].src.data.cover_map(v, e));
    legs.push_back(col[e].inj.back() * last.data.cover_map(v, e));
    auto m = cofactor_cocone(diag[v], col[v], legs);
    if (!m) throw std::logic_error("stalk maps do not form a cocone");
    cf.set_map(v, e, *m);
  }
  return sections(cf, open_mask(last, u)).dim();
}

IndSheaf constant_ind(const ConstructibleTSheaf& f) {
  return {"constant system", [f](int) { return f; }, [f](int) { return identity_tmap(f); },
          [](const SemilinearSet&) { return 1; }};
}

TSheafMap inclusion_map(const SemilinearSet& w, const SemilinearSet& w2) {
  if (!subset(w, w2) || !w.is_open() || !w2.is_open()) throw std::invalid_argument("inclusion_map needs opens W ⊆ W'");
  auto [a, b] = common_refinement(constant_sheaf(w), constant_sheaf(w2));
  SheafMap m = zero_map(a.data, b.data);
  for (int c = 0; c < a.cx.size(); ++c)
    if (a.data.dim(c) == 1) m.comp[c] = Matrix::identity(1);
  return {a, b, m};
}

IndSheaf growing_ind(const ConstructibleTSheaf& f, const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("growing_ind needs a < b");
  auto w = [a, b](int n) { return SemilinearSet::interval(Rational(a + (b - a) / (n + 1)), b); };
  IndSheaf s;
  s.name = "F ⊗ k_{W_n}, W_n increasing to (" + a.get_str() + "," + b.get_str() + ")";
  s.stage = [f, w](int n) { return tensor(f, constant_sheaf(w(n))); };
  s.transition = [f, w](int n) {
    TSheafMap inc = inclusion_map(w(n), w(n + 1));
    std::vector<Rational> e = merge_points(f.cx.E, inc.src.cx.E);
    ConstructibleTSheaf fr = f.refine(e);
    inc = inc.refine(e);
    ConstructibleTSheaf src{fr.cx, tensor(fr.data, inc.src.data)};
    ConstructibleTSheaf tgt{fr.cx, tensor(fr.data, inc.tgt.data)};
    return TSheafMap{src, tgt, tensor_maps(fr.data, inc.src.data, identity_map(fr.data), inc.map)};
  };
  s.certificate = [f, a, b](const SemilinearSet& u) {
    std::vector<Rational> pts = merge_points(f.cx.E, u.endpoints());
    pts.push_back(b);
    Rational m = b;
    for (const Rational& q : pts)
      if (q > a && q < m) m = q;
    int n = 1;
    while (!(a + (b - a) / (n + 1) < m)) ++n;
    return n;
  };
  return s;
}

IndSheaf unbounded_ind() {
  ConstructibleTSheaf k01 = constant_sheaf(SemilinearSet::parse("(0,1)"));
  auto stage = [k01](int n) {
    std::vector<ConstructibleTSheaf> parts(n, k01);
    return direct_sum_all(parts);
  };
  IndSheaf s;
  s.name = "⊕^n k_(0,1)";
  s.stage = stage;
  s.transition = [stage](int n) {
    ConstructibleTSheaf a = stage(n);
    ConstructibleTSheaf b = stage(n + 1);
    auto [x, y] = common_refinement(a, b);
    SheafMap m = zero_map(x.data, y.data);
    for (int c = 0; c < x.cx.size(); ++c)
      if (x.data.dim(c) > 0) m.comp[c] = Matrix::identity(y.data.dim(c)).cols_range(0, x.data.dim(c));
    return TSheafMap{x, y, m};
  };
  s.certificate = [](const SemilinearSet&) { return 1; };
  return s;
}

}  // namespace tsite
