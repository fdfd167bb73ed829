#include "tsite/oracles.hpp"

#include <stdexcept>
#include <string>

namespace tsite {

int brute_plus_dim(const Presheaf& p, int u) {
  const FiniteSite& site = p.site;
  std::vector<int> inside;
  for (int w = 0; w < site.num_opens(); ++w)
    if (site.contained(w, u)) inside.push_back(w);
  if (inside.size() > kBrutePlusMaxOpens)
    throw std::invalid_argument("brute-force plus limited to " + std::to_string(kBrutePlusMaxOpens) + " opens");
  std::vector<std::vector<int>> covs;
  for (unsigned long bits = 0; bits < (1UL << inside.size()); ++bits) {
    std::vector<int> fam;
    Mask uni(site.points(), 0);
    for (size_t i = 0; i < inside.size(); ++i)
      if ((bits >> i) & 1) {
        fam.push_back(inside[i]);
        uni = mask_or(uni, site.open(inside[i]));
      }
    if (uni == site.open(u)) covs.push_back(fam);
  }
  std::vector<FamilySpace> spaces;
  FinDiagram d;
  for (const auto& c : covs) {
    spaces.push_back(matching_families(p, c));
    d.dims.push_back(spaces.back().dim());
  }
  for (size_t a = 0; a < covs.size(); ++a)
    for (size_t b = 0; b < covs.size(); ++b) {
      if (a == b) continue;
      // Does covs[b] refine covs[a]? Pick τ(W') = first W ⊇ W'.
      const FamilySpace& sa = spaces[a];
      const FamilySpace& sb = spaces[b];
      Matrix y(sb.total, sa.dim());
      bool refines = true;
      for (size_t j = 0; j < covs[b].size() && refines; ++j) {
        int wp = covs[b][j];
        int tau = -1;
        for (size_t i = 0; i < covs[a].size(); ++i)
          if (site.contained(wp, covs[a][i])) {
            tau = static_cast<int>(i);
            break;
          }
        if (tau < 0) {
          refines = false;
          break;
        }
        int w = covs[a][tau];
        y.set_block(sb.offset[j], 0, p.res(w, wp) * sa.basis.rows_range(sa.offset[tau], p.dim(w)));
      }
      if (!refines) continue;
      auto x = solve(sb.basis, y);
      if (!x) throw std::logic_error("refinement does not preserve matching families");
      d.arrows.push_back({static_cast<int>(a), static_cast<int>(b), *x});
    }
  return finite_colimit(d).dim;
}

bool brute_is_flabby(const CellularSheaf& f) {
  const FinitePoset& P = f.poset();
  std::vector<Mask> opens = P.opens();
  std::vector<SectionSpace> s;
  for (const Mask& m : opens) s.push_back(sections(f, m));
  for (size_t v = 0; v < opens.size(); ++v)
    for (size_t u = 0; u < opens.size(); ++u) {
      if (!mask_subset(opens[u], opens[v]) || s[u].dim() == 0) continue;
      if (rank(restriction(f, s[v], s[u])) != s[u].dim()) return false;
    }
  return true;
}

namespace {

// Offset of the p-block in the stalk at q of ⊕_r P_r^{mult[r]} (blocks r <= q).
int proj_block(const FinitePoset& P, const std::vector<int>& mult, int q, int p) {
  int off = 0;
  for (int r = 0; r < p; ++r)
    if (P.leq(r, q)) off += mult[r];
  return off;
}

CellularSheaf projective_sum(const FinitePoset& P, const std::vector<int>& mult) {
  std::vector<int> dims(P.size(), 0);
  for (int q = 0; q < P.size(); ++q)
    for (int p = 0; p < P.size(); ++p)
      if (P.leq(p, q)) dims[q] += mult[p];
  CellularSheaf s(P, dims);
  for (auto [a, b] : P.hasse()) {
    Matrix m(dims[b], dims[a]);
    for (int p = 0; p < P.size(); ++p)
      if (P.leq(p, a) && mult[p] > 0)
        m.set_block(proj_block(P, mult, b, p), proj_block(P, mult, a, p), Matrix::identity(mult[p]));
    s.set_map(a, b, m);
  }
  return s;
}

SheafMap projective_cover(const CellularSheaf& f, const std::vector<int>& mult, const CellularSheaf& proj) {
  const FinitePoset& P = f.poset();
  SheafMap e;
  for (int q = 0; q < P.size(); ++q) {
    Matrix m(f.dim(q), proj.dim(q));
    for (int p = 0; p < P.size(); ++p)
      if (P.leq(p, q) && mult[p] > 0) m.set_block(0, proj_block(P, mult, q, p), f.map(p, q));
    e.comp.push_back(m);
  }
  return e;
}

int hom_total(const CellularSheaf& g, const std::vector<int>& mult) {
  int t = 0;
  for (int p = 0; p < g.size(); ++p) t += g.dim(p) * mult[p];
  return t;
}

// Hom(P, G) -> Hom(P', G) induced by d: P' -> P.
Matrix induced(const CellularSheaf& g, const std::vector<int>& m, const std::vector<int>& m2, const SheafMap& d) {
  const FinitePoset& P = g.poset();
  std::vector<int> o1(P.size()), o2(P.size());
  int t1 = 0, t2 = 0;
  for (int p = 0; p < P.size(); ++p) {
    o1[p] = t1;
    t1 += g.dim(p) * m[p];
    o2[p] = t2;
    t2 += g.dim(p) * m2[p];
  }
  Matrix out(t2, t1);
  for (int q = 0; q < P.size(); ++q) {
    if (m2[q] == 0 || g.dim(q) == 0) continue;
    for (int p = 0; p < P.size(); ++p) {
      if (!P.leq(p, q) || m[p] == 0 || g.dim(p) == 0) continue;
      Matrix b = d.comp[q].block(proj_block(P, m, q, p), proj_block(P, m2, q, q), m[p], m2[q]);
      Matrix k = kron(g.map(p, q), b.transpose());
      out.set_block(o2[q], o1[p], out.block(o2[q], o1[p], k.rows(), k.cols()) + k);
    }
  }
  return out;
}

}  // namespace

int projective_ext_dim(const CellularSheaf& f, const CellularSheaf& g, int n) {
  if (n < 0) return 0;
  const FinitePoset& P = f.poset();
  std::vector<std::vector<int>> mult;
  std::vector<SheafMap> d;  // d[k]: P_k -> P_{k-1} for k >= 1
  CellularSheaf cur = f;
  SheafMap incl_prev;
  for (int k = 0; k <= n + 1; ++k) {
    std::vector<int> m = cur.dims();
    CellularSheaf pk = projective_sum(P, m);
    SheafMap e = projective_cover(cur, m, pk);
    mult.push_back(m);
    d.push_back(k == 0 ? SheafMap{} : compose(incl_prev, e));
    Kernel ker = kernel(pk, cur, e);
    cur = ker.sheaf;
    incl_prev = ker.incl;
  }
  Matrix dn = induced(g, mult[n], mult[n + 1], d[n + 1]);
  int ker = hom_total(g, mult[n]) - rank(dn);
  int im = n > 0 ? rank(induced(g, mult[n - 1], mult[n], d[n])) : 0;
  return ker - im;
}

int yoneda_ext1_dim(const CellularSheaf& f, const CellularSheaf& g) { return ext1_cocycles(f, g).ext1_dim(); }

}  // namespace tsite
