#include "tsite/presheaf.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsite {

namespace {

std::string mask_name(const Mask& m) {
  std::string s = "{";
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i]) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

}  // namespace

FiniteSite::FiniteSite(int points, std::vector<Mask> opens) : points_(points) {
  for (const Mask& m : opens) {
    if (static_cast<int>(m.size()) != points) throw std::invalid_argument("open has wrong carrier size");
    if (index_.count(m)) continue;
    index_[m] = static_cast<int>(opens_.size());
    opens_.push_back(m);
  }
  if (!index_.count(Mask(points, 0)) || !index_.count(Mask(points, 1)))
    throw std::invalid_argument("a topology contains the empty set and the carrier");
  for (const Mask& a : opens_)
    for (const Mask& b : opens_)
      if (!index_.count(mask_and(a, b)) || !index_.count(mask_or(a, b)))
        throw std::invalid_argument("opens must be closed under union and intersection");
  std::vector<std::string> names;
  for (const Mask& m : opens_) names.push_back(mask_name(m));
  std::vector<std::pair<int, int>> rel;
  for (int v = 0; v < num_opens(); ++v)
    for (int w = 0; w < num_opens(); ++w)
      if (v != w && contained(w, v)) rel.emplace_back(v, w);
  incl_ = FinitePoset(names, rel);
}

FiniteSite FiniteSite::of_poset(const FinitePoset& p) { return FiniteSite(p.size(), p.opens()); }

int FiniteSite::index_of(const Mask& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw std::invalid_argument("not an open of the site: " + mask_name(m));
  return it->second;
}

int FiniteSite::minimal_neighborhood(int point) const {
  Mask acc(points_, 1);
  for (const Mask& m : opens_)
    if (m[point]) acc = mask_and(acc, m);
  return index_of(acc);
}

std::vector<int> FiniteSite::finest_covering(int u) const {
  std::vector<int> out;
  for (int p = 0; p < points_; ++p)
    if (opens_[u][p]) out.push_back(minimal_neighborhood(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Presheaf random_presheaf(const FiniteSite& site, Rng& rng, int max_dim) {
  return Presheaf{site, random_sheaf(site.inclusion_poset(), rng, max_dim)};
}

Presheaf sections_presheaf(const CellularSheaf& f) {
  FiniteSite site = FiniteSite::of_poset(f.poset());
  std::vector<SectionSpace> s;
  std::vector<int> dims;
  for (const Mask& u : site.opens()) {
    s.push_back(sections(f, u));
    dims.push_back(s.back().dim());
  }
  CellularSheaf data(site.inclusion_poset(), dims);
  for (auto [v, w] : site.inclusion_poset().hasse()) data.set_map(v, w, restriction(f, s[v], s[w]));
  return Presheaf{site, data};
}

CellularSheaf to_cellular(const Presheaf& p, const FinitePoset& poset) {
  std::vector<int> nb(poset.size());
  std::vector<int> dims(poset.size());
  for (int q = 0; q < poset.size(); ++q) {
    nb[q] = p.site.index_of(poset.up_mask(q));
    dims[q] = p.dim(nb[q]);
  }
  CellularSheaf f(poset, dims);
  for (auto [a, b] : poset.hasse()) f.set_map(a, b, p.res(nb[a], nb[b]));
  return f;
}

FamilySpace matching_families(const Presheaf& p, const std::vector<int>& covering) {
  FamilySpace s;
  s.members = covering;
  for (int w : covering) {
    s.offset.push_back(s.total);
    s.total += p.dim(w);
  }
  std::vector<Matrix> rows;
  for (size_t i = 0; i < covering.size(); ++i)
    for (size_t j = i + 1; j < covering.size(); ++j) {
      int k = p.site.meet(covering[i], covering[j]);
      if (p.dim(k) == 0) continue;
      Matrix r(p.dim(k), s.total);
      r.set_block(0, s.offset[i], p.res(covering[i], k));
      r.set_block(0, s.offset[j], Scalar(-1) * p.res(covering[j], k));
      rows.push_back(r);
    }
  s.basis = rows.empty() ? Matrix::identity(s.total) : kernel_basis(vstack(rows, s.total));
  return s;
}

Matrix to_families(const Presheaf& p, int u, const FamilySpace& s) {
  Matrix y(s.total, p.dim(u));
  for (size_t i = 0; i < s.members.size(); ++i) y.set_block(s.offset[i], 0, p.res(u, s.members[i]));
  auto x = solve(s.basis, y);
  if (!x) throw std::logic_error("restrictions do not form a matching family");
  return *x;
}

namespace {

// Matrix of P(S_V) -> P(S_W) for W ⊆ V, where S_W is a subfamily of S_V.
Matrix family_restriction(const FamilySpace& big, const FamilySpace& small, const Presheaf& p) {
  Matrix y(small.total, big.dim());
  for (size_t j = 0; j < small.members.size(); ++j) {
    auto it = std::find(big.members.begin(), big.members.end(), small.members[j]);
    if (it == big.members.end()) throw std::logic_error("finest coverings are not nested");
    size_t i = static_cast<size_t>(it - big.members.begin());
    y.set_block(small.offset[j], 0, big.basis.rows_range(big.offset[i], p.dim(small.members[j])));
  }
  auto x = solve(small.basis, y);
  if (!x) throw std::logic_error("restricted family is not matching");
  return *x;
}

std::vector<FamilySpace> all_families(const Presheaf& p) {
  std::vector<FamilySpace> out;
  for (int u = 0; u < p.site.num_opens(); ++u) out.push_back(matching_families(p, p.site.finest_covering(u)));
  return out;
}

}  // namespace

PlusResult plus_construction(const Presheaf& p) {
  const FiniteSite& site = p.site;
  std::vector<FamilySpace> fam = all_families(p);
  std::vector<int> dims;
  for (const FamilySpace& s : fam) dims.push_back(s.dim());
  CellularSheaf data(site.inclusion_poset(), dims);
  for (auto [v, w] : site.inclusion_poset().hasse()) data.set_map(v, w, family_restriction(fam[v], fam[w], p));
  PlusResult r{Presheaf{site, data}, {}};
  for (int u = 0; u < site.num_opens(); ++u) r.unit.push_back(to_families(p, u, fam[u]));
  return r;
}

PlusResult sheafify(const Presheaf& p) {
  PlusResult a = plus_construction(p);
  PlusResult b = plus_construction(a.plus);
  for (size_t u = 0; u < b.unit.size(); ++u) b.unit[u] = b.unit[u] * a.unit[u];
  return b;
}

std::vector<Matrix> plus_map(const Presheaf& p, const Presheaf& q, const std::vector<Matrix>& phi) {
  std::vector<FamilySpace> fp = all_families(p);
  std::vector<FamilySpace> fq = all_families(q);
  std::vector<Matrix> out;
  for (int u = 0; u < p.site.num_opens(); ++u) {
    Matrix y(fq[u].total, fp[u].dim());
    for (size_t i = 0; i < fp[u].members.size(); ++i) {
      int w = fp[u].members[i];
      y.set_block(fq[u].offset[i], 0, phi[w] * fp[u].basis.rows_range(fp[u].offset[i], p.dim(w)));
    }
    auto x = solve(fq[u].basis, y);
    if (!x) throw std::invalid_argument("plus_map needs a presheaf morphism");
    out.push_back(*x);
  }
  return out;
}

bool is_separated(const Presheaf& p) {
  PlusResult r = plus_construction(p);
  for (const Matrix& m : r.unit)
    if (!is_injective(m)) return false;
  return true;
}

bool is_sheaf(const Presheaf& p) {
  PlusResult r = plus_construction(p);
  for (const Matrix& m : r.unit)
    if (!is_injective(m) || !is_surjective(m)) return false;
  return true;
}

bool is_presheaf_morphism(const Presheaf& p, const Presheaf& q, const std::vector<Matrix>& phi) {
  if (static_cast<int>(phi.size()) != p.site.num_opens()) return false;
  for (int u = 0; u < p.site.num_opens(); ++u)
    if (phi[u].rows() != q.dim(u) || phi[u].cols() != p.dim(u)) return false;
  for (auto [v, w] : p.site.inclusion_poset().hasse())
    if (q.res(v, w) * phi[v] != phi[w] * p.res(v, w)) return false;
  return true;
}

}  // namespace tsite
