#include "tsite/cellsheaf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tsite {

// ---------------------------------------------------------------- posets

FinitePoset::FinitePoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& relations)
    : names_(std::move(names)) {
  const int n = size();
  leq_.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) leq_[static_cast<size_t>(i) * n + i] = 1;
  for (auto [a, b] : relations) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("poset relation out of range");
    leq_[static_cast<size_t>(a) * n + b] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq(i, k))
        for (int j = 0; j < n; ++j)
          if (leq(k, j)) leq_[static_cast<size_t>(i) * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq(i, j) && leq(j, i)) throw std::invalid_argument("poset relations contain a cycle");
  lower_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c) cover = !(lt(a, c) && lt(c, b));
      if (cover) {
        hasse_.emplace_back(a, b);
        lower_[b].push_back(a);
      }
    }
  std::vector<char> placed(n, 0);
  while (static_cast<int>(linext_.size()) < n) {
    for (int q = 0; q < n; ++q) {
      if (placed[q]) continue;
      bool ready = true;
      for (int p = 0; p < n && ready; ++p) ready = !(lt(p, q) && !placed[p]);
      if (ready) {
        placed[q] = 1;
        linext_.push_back(q);
        break;
      }
    }
  }
}

FinitePoset FinitePoset::from_cells(const CellComplex& c) {
  std::vector<std::string> names;
  for (int k = 0; k < c.size(); ++k) names.push_back(c.cell_str(k));
  return FinitePoset(names, c.covers());
}

FinitePoset FinitePoset::chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(i - 1, i);
  }
  return FinitePoset(names, rel);
}

FinitePoset FinitePoset::discrete(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return FinitePoset(names, {});
}

int FinitePoset::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  throw std::invalid_argument("unknown poset element '" + name + "'");
}

std::vector<int> FinitePoset::up(int p) const {
  std::vector<int> out;
  for (int q = 0; q < size(); ++q)
    if (leq(p, q)) out.push_back(q);
  return out;
}

std::vector<int> FinitePoset::down(int p) const {
  std::vector<int> out;
  for (int q = 0; q < size(); ++q)
    if (leq(q, p)) out.push_back(q);
  return out;
}

Mask FinitePoset::up_mask(int p) const {
  Mask m(size(), 0);
  for (int q = 0; q < size(); ++q) m[q] = leq(p, q);
  return m;
}

bool FinitePoset::is_upset(const Mask& m) const {
  if (static_cast<int>(m.size()) != size()) return false;
  for (auto [a, b] : hasse_)
    if (m[a] && !m[b]) return false;
  return true;
}

bool FinitePoset::is_downset(const Mask& m) const {
  if (static_cast<int>(m.size()) != size()) return false;
  for (auto [a, b] : hasse_)
    if (m[b] && !m[a]) return false;
  return true;
}

bool FinitePoset::is_convex(const Mask& m) const {
  for (int p = 0; p < size(); ++p)
    for (int r = 0; r < size(); ++r)
      for (int q = 0; q < size(); ++q)
        if (m[p] && m[q] && !m[r] && leq(p, r) && leq(r, q)) return false;
  return true;
}

Mask FinitePoset::up_closure(const Mask& m) const {
  Mask out(size(), 0);
  for (int p = 0; p < size(); ++p)
    if (m[p])
      for (int q = 0; q < size(); ++q)
        if (leq(p, q)) out[q] = 1;
  return out;
}

Mask FinitePoset::down_closure(const Mask& m) const {
  Mask out(size(), 0);
  for (int p = 0; p < size(); ++p)
    if (m[p])
      for (int q = 0; q < size(); ++q)
        if (leq(q, p)) out[q] = 1;
  return out;
}

std::vector<Mask> FinitePoset::opens() const {
  if (size() > 20) throw std::invalid_argument("open enumeration limited to 20 elements");
  std::vector<Mask> out;
  for (unsigned long bits = 0; bits < (1UL << size()); ++bits) {
    Mask m(size());
    for (int i = 0; i < size(); ++i) m[i] = (bits >> i) & 1;
    if (is_upset(m)) out.push_back(m);
  }
  return out;
}

std::string FinitePoset::str() const {
  std::string out = "elements:";
  for (const auto& n : names_) out += " " + n;
  out += "; covers:";
  for (auto [a, b] : hasse_) out += " " + names_[a] + "<" + names_[b];
  return out;
}

Mask mask_and(const Mask& a, const Mask& b) {
  Mask m(a.size());
  for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
  return m;
}

Mask mask_or(const Mask& a, const Mask& b) {
  Mask m(a.size());
  for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] || b[i];
  return m;
}

Mask mask_minus(const Mask& a, const Mask& b) {
  Mask m(a.size());
  for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] && !b[i];
  return m;
}

bool mask_subset(const Mask& a, const Mask& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

int mask_count(const Mask& a) { return static_cast<int>(std::count(a.begin(), a.end(), 1)); }

// ---------------------------------------------------------------- sheaves

CellularSheaf::CellularSheaf(FinitePoset poset, std::vector<int> dims) : poset_(std::move(poset)), dims_(std::move(dims)) {
  if (static_cast<int>(dims_.size()) != poset_.size()) throw std::invalid_argument("one stalk dimension per element");
  for (int d : dims_)
    if (d < 0) throw std::invalid_argument("negative stalk dimension");
  for (auto [p, q] : poset_.hasse()) cover_[{p, q}] = Matrix(dims_[q], dims_[p]);
}

CellularSheaf CellularSheaf::zero(const FinitePoset& poset) { return CellularSheaf(poset, std::vector<int>(poset.size(), 0)); }

CellularSheaf CellularSheaf::constant_on(const FinitePoset& poset, const Mask& s) {
  if (!poset.is_convex(s)) throw std::invalid_argument("constant sheaf support must be convex");
  std::vector<int> dims(poset.size());
  for (int p = 0; p < poset.size(); ++p) dims[p] = s[p] ? 1 : 0;
  CellularSheaf f(poset, dims);
  for (auto [p, q] : poset.hasse())
    if (s[p] && s[q]) f.set_map(p, q, Matrix::identity(1));
  return f;
}

int CellularSheaf::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

void CellularSheaf::set_map(int p, int q, const Matrix& m) {
  auto it = cover_.find({p, q});
  if (it == cover_.end()) throw std::invalid_argument("set_map needs a covering pair");
  if (m.rows() != dims_[q] || m.cols() != dims_[p]) throw std::invalid_argument("generization map has wrong shape");
  it->second = m;
  cached_ = false;
}

const Matrix& CellularSheaf::cover_map(int p, int q) const {
  auto it = cover_.find({p, q});
  if (it == cover_.end()) throw std::invalid_argument("not a covering pair");
  return it->second;
}

void CellularSheaf::build_cache() const {
  const int n = size();
  all_.assign(static_cast<size_t>(n) * n, Matrix());
  for (int q : poset_.linear_extension()) {
    for (int p = 0; p < n; ++p) {
      if (!poset_.leq(p, q)) continue;
      Matrix& slot = all_[static_cast<size_t>(p) * n + q];
      if (p == q) {
        slot = Matrix::identity(dims_[q]);
        continue;
      }
      for (int r : poset_.lower_covers(q)) {
        if (poset_.leq(p, r)) {
          slot = cover_.at({r, q}) * all_[static_cast<size_t>(p) * n + r];
          break;
        }
      }
    }
  }
  cached_ = true;
}

const Matrix& CellularSheaf::map(int p, int q) const {
  if (!poset_.leq(p, q)) throw std::invalid_argument("map requires p <= q");
  if (!cached_) build_cache();
  return all_[static_cast<size_t>(p) * size() + q];
}

bool CellularSheaf::is_functorial(std::string* why) const {
  for (auto [p, q] : poset_.hasse()) {
    const Matrix& m = cover_.at({p, q});
    if (m.rows() != dims_[q] || m.cols() != dims_[p]) {
      if (why) *why = "shape mismatch on " + poset_.name(p) + "<" + poset_.name(q);
      return false;
    }
  }
  for (int q = 0; q < size(); ++q) {
    const auto& lc = poset_.lower_covers(q);
    for (int p = 0; p < size(); ++p) {
      if (!poset_.lt(p, q)) continue;
      int ref = -1;
      for (int r : lc) {
        if (!poset_.leq(p, r)) continue;
        if (ref < 0) {
          ref = r;
          continue;
        }
        if (cover_.at({r, q}) * map(p, r) != cover_.at({ref, q}) * map(p, ref)) {
          if (why)
            *why = "paths " + poset_.name(p) + "->" + poset_.name(ref) + "->" + poset_.name(q) + " and via " +
                   poset_.name(r) + " disagree";
          return false;
        }
      }
    }
  }
  return true;
}

void CellularSheaf::validate() const {
  std::string why;
  if (!is_functorial(&why)) throw std::invalid_argument("not a functor: " + why);
}

// ---------------------------------------------------------------- maps

bool is_morphism(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi) {
  if (static_cast<int>(phi.comp.size()) != f.size() || f.size() != g.size()) return false;
  for (int p = 0; p < f.size(); ++p)
    if (phi.comp[p].rows() != g.dim(p) || phi.comp[p].cols() != f.dim(p)) return false;
  for (auto [p, q] : f.poset().hasse())
    if (g.cover_map(p, q) * phi.comp[p] != phi.comp[q] * f.cover_map(p, q)) return false;
  return true;
}

SheafMap identity_map(const CellularSheaf& f) {
  SheafMap m;
  for (int p = 0; p < f.size(); ++p) m.comp.push_back(Matrix::identity(f.dim(p)));
  return m;
}

SheafMap zero_map(const CellularSheaf& f, const CellularSheaf& g) {
  SheafMap m;
  for (int p = 0; p < f.size(); ++p) m.comp.push_back(Matrix(g.dim(p), f.dim(p)));
  return m;
}

SheafMap compose(const SheafMap& second, const SheafMap& first) {
  SheafMap m;
  for (size_t p = 0; p < first.comp.size(); ++p) m.comp.push_back(second.comp[p] * first.comp[p]);
  return m;
}

SheafMap add_maps(const SheafMap& a, const SheafMap& b) {
  SheafMap m;
  for (size_t p = 0; p < a.comp.size(); ++p) m.comp.push_back(a.comp[p] + b.comp[p]);
  return m;
}

SheafMap scale_map(const Scalar& s, const SheafMap& a) {
  SheafMap m;
  for (const Matrix& c : a.comp) m.comp.push_back(s * c);
  return m;
}

bool is_zero_map(const SheafMap& a) {
  for (const Matrix& c : a.comp)
    if (!c.is_zero()) return false;
  return true;
}

bool is_mono(const SheafMap& a) {
  for (const Matrix& c : a.comp)
    if (!is_injective(c)) return false;
  return true;
}

bool is_epi(const SheafMap& a) {
  for (const Matrix& c : a.comp)
    if (!is_surjective(c)) return false;
  return true;
}

bool is_iso(const SheafMap& a) { return is_mono(a) && is_epi(a); }

bool same_map(const SheafMap& a, const SheafMap& b) {
  if (a.comp.size() != b.comp.size()) return false;
  for (size_t p = 0; p < a.comp.size(); ++p)
    if (a.comp[p] != b.comp[p]) return false;
  return true;
}

// ---------------------------------------------------------------- sections

Matrix SectionSpace::proj(const CellularSheaf& f, int p) const {
  if (offset[p] < 0) throw std::invalid_argument("element outside the section domain");
  return basis.rows_range(offset[p], f.dim(p));
}

SectionSpace sections(const CellularSheaf& f, const Mask& u) {
  const FinitePoset& P = f.poset();
  if (!P.is_upset(u)) throw std::invalid_argument("sections need an up-set");
  const int n = P.size();
  SectionSpace s;
  s.where = u;
  s.offset.assign(n, -1);
  for (int p = 0; p < n; ++p)
    if (u[p]) {
      s.offset[p] = s.total;
      s.total += f.dim(p);
    }
  std::vector<int> mins;
  std::vector<int> moff(n, -1);
  int nmin = 0;
  for (int p = 0; p < n; ++p) {
    if (!u[p]) continue;
    bool minimal = true;
    for (int r = 0; r < n && minimal; ++r) minimal = !(u[r] && P.lt(r, p));
    if (minimal) {
      mins.push_back(p);
      moff[p] = nmin;
      nmin += f.dim(p);
    }
  }
  std::vector<Matrix> rows;
  for (int q = 0; q < n; ++q) {
    if (!u[q]) continue;
    int first = -1;
    for (int m : mins) {
      if (!P.leq(m, q)) continue;
      if (first < 0) {
        first = m;
        continue;
      }
      Matrix r(f.dim(q), nmin);
      r.set_block(0, moff[first], f.map(first, q));
      r.set_block(0, moff[m], Scalar(-1) * f.map(m, q));
      rows.push_back(r);
    }
  }
  Matrix k = rows.empty() ? Matrix::identity(nmin) : kernel_basis(vstack(rows, nmin));
  s.basis = Matrix(s.total, k.cols());
  for (int q = 0; q < n; ++q) {
    if (!u[q]) continue;
    for (int m : mins)
      if (P.leq(m, q)) {
        s.basis.set_block(s.offset[q], 0, f.map(m, q) * k.rows_range(moff[m], f.dim(m)));
        break;
      }
  }
  // Reduced echelon form of the column space: pivots sit on the earliest
  // coordinates, so bases survive inserting duplicated coordinates.
  if (s.basis.cols() > 0) {
    Matrix r = rref(s.basis.transpose()).r;
    s.basis = r.rows_range(0, s.basis.cols()).transpose();
  }
  return s;
}

int sections_dim(const CellularSheaf& f, const Mask& u) { return sections(f, u).dim(); }

Matrix restriction(const CellularSheaf& f, const SectionSpace& v, const SectionSpace& u) {
  if (!mask_subset(u.where, v.where)) throw std::invalid_argument("restriction needs U ⊆ V");
  Matrix r(u.total, v.dim());
  for (int p = 0; p < f.size(); ++p)
    if (u.where[p]) r.set_block(u.offset[p], 0, v.basis.rows_range(v.offset[p], f.dim(p)));
  auto x = solve(u.basis, r);
  if (!x) throw std::logic_error("restricted section is not a section");
  return *x;
}

Matrix section_map(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi, const SectionSpace& su,
                   const SectionSpace& tu) {
  Matrix y(tu.total, su.dim());
  for (int p = 0; p < f.size(); ++p)
    if (su.where[p]) y.set_block(tu.offset[p], 0, phi.comp[p] * su.basis.rows_range(su.offset[p], f.dim(p)));
  auto x = solve(tu.basis, y);
  if (!x) throw std::logic_error("image of a section is not a section");
  (void)g;
  return *x;
}

// ---------------------------------------------------------------- abelian operations

Kernel kernel(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi) {
  if (!is_morphism(f, g, phi)) throw std::invalid_argument("kernel of a non-morphism");
  std::vector<Matrix> k;
  std::vector<int> dims;
  for (int p = 0; p < f.size(); ++p) {
    k.push_back(kernel_basis(phi.comp[p]));
    dims.push_back(k.back().cols());
  }
  CellularSheaf out(f.poset(), dims);
  for (auto [p, q] : f.poset().hasse()) out.set_map(p, q, *solve(k[q], f.cover_map(p, q) * k[p]));
  return {out, SheafMap{k}};
}

Cokernel cokernel(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi) {
  if (!is_morphism(f, g, phi)) throw std::invalid_argument("cokernel of a non-morphism");
  std::vector<Matrix> q;
  std::vector<int> dims;
  for (int p = 0; p < g.size(); ++p) {
    q.push_back(cokernel_projection(phi.comp[p]));
    dims.push_back(q.back().rows());
  }
  CellularSheaf out(g.poset(), dims);
  for (auto [a, b] : g.poset().hasse()) out.set_map(a, b, *solve_left(q[a], q[b] * g.cover_map(a, b)));
  return {out, SheafMap{q}};
}

Kernel image(const CellularSheaf& f, const CellularSheaf& g, const SheafMap& phi) {
  if (!is_morphism(f, g, phi)) throw std::invalid_argument("image of a non-morphism");
  std::vector<Matrix> im;
  std::vector<int> dims;
  for (int p = 0; p < g.size(); ++p) {
    im.push_back(image_basis(phi.comp[p]));
    dims.push_back(im.back().cols());
  }
  CellularSheaf out(g.poset(), dims);
  for (auto [a, b] : g.poset().hasse()) out.set_map(a, b, *solve(im[b], g.cover_map(a, b) * im[a]));
  return {out, SheafMap{im}};
}

DirectSum direct_sum(const CellularSheaf& f, const CellularSheaf& g) {
  std::vector<int> dims;
  for (int p = 0; p < f.size(); ++p) dims.push_back(f.dim(p) + g.dim(p));
  DirectSum s;
  s.sheaf = CellularSheaf(f.poset(), dims);
  for (auto [p, q] : f.poset().hasse()) s.sheaf.set_map(p, q, block_diag(f.cover_map(p, q), g.cover_map(p, q)));
  for (int p = 0; p < f.size(); ++p) {
    int a = f.dim(p), b = g.dim(p);
    s.in1.comp.push_back(vstack(Matrix::identity(a), Matrix(b, a)));
    s.in2.comp.push_back(vstack(Matrix(a, b), Matrix::identity(b)));
    s.pr1.comp.push_back(hstack(Matrix::identity(a), Matrix(a, b)));
    s.pr2.comp.push_back(hstack(Matrix(b, a), Matrix::identity(b)));
  }
  return s;
}

CellularSheaf direct_sum_all(const FinitePoset& poset, const std::vector<CellularSheaf>& parts) {
  CellularSheaf acc = CellularSheaf::zero(poset);
  for (const CellularSheaf& f : parts) acc = direct_sum(acc, f).sheaf;
  return acc;
}

CellularSheaf tensor(const CellularSheaf& f, const CellularSheaf& g) {
  std::vector<int> dims;
  for (int p = 0; p < f.size(); ++p) dims.push_back(f.dim(p) * g.dim(p));
  CellularSheaf out(f.poset(), dims);
  for (auto [p, q] : f.poset().hasse()) out.set_map(p, q, kron(f.cover_map(p, q), g.cover_map(p, q)));
  return out;
}

SheafMap tensor_maps(const CellularSheaf& f1, const CellularSheaf& f2, const SheafMap& a, const SheafMap& b) {
  (void)f2;
  SheafMap m;
  for (int p = 0; p < f1.size(); ++p) m.comp.push_back(kron(a.comp[p], b.comp[p]));
  return m;
}

// ---------------------------------------------------------------- Hom

namespace {

// Row-major vectorization of the components of a map over a mask.
struct HomLayout {
  std::vector<int> offset;
  int total = 0;
};

HomLayout hom_layout(const CellularSheaf& f, const CellularSheaf& g, const Mask& u) {
  HomLayout l;
  l.offset.assign(f.size(), -1);
  for (int p = 0; p < f.size(); ++p)
    if (u[p]) {
      l.offset[p] = l.total;
      l.total += g.dim(p) * f.dim(p);
    }
  return l;
}

Matrix vec_of(const SheafMap& m, const HomLayout& l) {
  Matrix v(l.total, 1);
  for (size_t p = 0; p < m.comp.size(); ++p) {
    if (l.offset[p] < 0) continue;
    const Matrix& c = m.comp[p];
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) v.at(l.offset[p] + i * c.cols() + j, 0) = c.at(i, j);
  }
  return v;
}

SheafMap map_of(const Matrix& v, int col, const CellularSheaf& f, const CellularSheaf& g, const HomLayout& l) {
  SheafMap m = zero_map(f, g);
  for (int p = 0; p < f.size(); ++p) {
    if (l.offset[p] < 0) continue;
    Matrix& c = m.comp[p];
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) c.at(i, j) = v.at(l.offset[p] + i * c.cols() + j, col);
  }
  return m;
}

}  // namespace

HomSpace hom_space_on(const CellularSheaf& f, const CellularSheaf& g, const Mask& u) {
  if (!f.poset().is_upset(u)) throw std::invalid_argument("Hom needs an up-set");
  HomLayout l = hom_layout(f, g, u);
  std::vector<Matrix> rows;
  for (auto [p, q] : f.poset().hasse()) {
    if (!u[p]) continue;
    int fp = f.dim(p), gq = g.dim(q);
    if (fp == 0 || gq == 0) continue;
    Matrix r(gq * fp, l.total);
    if (g.dim(p) > 0) r.set_block(0, l.offset[p], kron(g.cover_map(p, q), Matrix::identity(fp)));
    if (f.dim(q) > 0)
      r.set_block(0, l.offset[q], r.block(0, l.offset[q], gq * fp, gq * f.dim(q)) -
                                      kron(Matrix::identity(gq), f.cover_map(p, q).transpose()));
    rows.push_back(r);
  }
  Matrix k = rows.empty() ? Matrix::identity(l.total) : kernel_basis(vstack(rows, l.total));
  HomSpace h;
  for (int c = 0; c < k.cols(); ++c) h.basis.push_back(map_of(k, c, f, g, l));
  return h;
}

HomSpace hom_space(const CellularSheaf& f, const CellularSheaf& g) { return hom_space_on(f, g, f.poset().all()); }

Matrix flatten_map(const SheafMap& m) {
  int total = 0;
  for (const Matrix& c : m.comp) total += c.rows() * c.cols();
  Matrix v(total, 1);
  int k = 0;
  for (const Matrix& c : m.comp)
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) v.at(k++, 0) = c.at(i, j);
  return v;
}

std::optional<Matrix> hom_coordinates(const HomSpace& h, const SheafMap& m) {
  Matrix v = flatten_map(m);
  Matrix b(v.rows(), h.dim());
  for (int j = 0; j < h.dim(); ++j) b.set_block(0, j, flatten_map(h.basis[j]));
  return solve(b, v);
}

CellularSheaf internal_hom(const CellularSheaf& f, const CellularSheaf& g) {
  const FinitePoset& P = f.poset();
  std::vector<HomSpace> h;
  std::vector<int> dims;
  for (int p = 0; p < P.size(); ++p) {
    h.push_back(hom_space_on(f, g, P.up_mask(p)));
    dims.push_back(h.back().dim());
  }
  CellularSheaf out(P, dims);
  for (auto [p, q] : P.hasse()) {
    HomLayout lq = hom_layout(f, g, P.up_mask(q));
    Matrix target(lq.total, dims[q]);
    for (int c = 0; c < dims[q]; ++c) target.set_block(0, c, vec_of(h[q].basis[c], lq));
    Matrix src(lq.total, dims[p]);
    for (int c = 0; c < dims[p]; ++c) src.set_block(0, c, vec_of(h[p].basis[c], lq));
    out.set_map(p, q, *solve(target, src));
  }
  return out;
}

// ---------------------------------------------------------------- cohomology

namespace {

using Chain = std::vector<int>;

std::vector<Chain> chains_of_length(const FinitePoset& P, const Mask& u, int k) {
  std::vector<Chain> out;
  if (k < 0) return out;
  Chain cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == k + 1) {
      out.push_back(cur);
      return;
    }
    for (int q = 0; q < P.size(); ++q) {
      if (!u[q]) continue;
      if (!cur.empty() && !P.lt(cur.back(), q)) continue;
      cur.push_back(q);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

struct Cochains {
  std::vector<Chain> chains;
  std::vector<int> offset;
  int total = 0;
};

Cochains cochains(const CellularSheaf& f, const Mask& u, int k) {
  Cochains c;
  c.chains = chains_of_length(f.poset(), u, k);
  for (const Chain& ch : c.chains) {
    c.offset.push_back(c.total);
    c.total += f.dim(ch.back());
  }
  return c;
}

// d: C^k -> C^{k+1}.
Matrix differential(const CellularSheaf& f, const Cochains& src, const Cochains& dst) {
  Matrix d(dst.total, src.total);
  std::map<Chain, int> index;
  for (size_t i = 0; i < src.chains.size(); ++i) index[src.chains[i]] = static_cast<int>(i);
  for (size_t j = 0; j < dst.chains.size(); ++j) {
    const Chain& s = dst.chains[j];
    const int top = static_cast<int>(s.size()) - 1;
    for (int i = 0; i <= top; ++i) {
      Chain face = s;
      face.erase(face.begin() + i);
      auto it = index.find(face);
      if (it == index.end()) continue;
      Scalar sign = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
      Matrix block = i < top ? Matrix::identity(f.dim(s.back())) : f.map(s[top - 1], s[top]);
      int r0 = dst.offset[j], c0 = src.offset[it->second];
      d.set_block(r0, c0, d.block(r0, c0, block.rows(), block.cols()) + sign * block);
    }
  }
  return d;
}

struct CohomologyData {
  Cochains c;
  Matrix cycles;      // basis of Z^n, columns in C^n
  Matrix boundaries;  // spanning set of B^n
};

CohomologyData cohomology_data(const CellularSheaf& f, const Mask& u, int n) {
  CohomologyData h;
  h.c = cochains(f, u, n);
  Cochains next = cochains(f, u, n + 1);
  h.cycles = next.total == 0 ? Matrix::identity(h.c.total) : kernel_basis(differential(f, h.c, next));
  if (n == 0) {
    h.boundaries = Matrix(h.c.total, 0);
  } else {
    Cochains prev = cochains(f, u, n - 1);
    h.boundaries = differential(f, prev, h.c);
  }
  return h;
}

}  // namespace

int cohomology_dim(const CellularSheaf& f, const Mask& u, int n) {
  if (!f.poset().is_upset(u)) throw std::invalid_argument("cohomology needs an up-set");
  if (n < 0) return 0;
  CohomologyData h = cohomology_data(f, u, n);
  return h.cycles.cols() - rank(h.boundaries);
}

CohomologyMap cohomology_restriction(const CellularSheaf& f, const Mask& v, const Mask& u, int n) {
  if (!mask_subset(u, v)) throw std::invalid_argument("cohomology restriction needs U ⊆ V");
  CohomologyData hv = cohomology_data(f, v, n);
  CohomologyData hu = cohomology_data(f, u, n);
  Matrix r(hu.c.total, hv.c.total);
  std::map<Chain, int> index;
  for (size_t i = 0; i < hv.c.chains.size(); ++i) index[hv.c.chains[i]] = static_cast<int>(i);
  for (size_t j = 0; j < hu.c.chains.size(); ++j) {
    int i = index.at(hu.c.chains[j]);
    r.set_block(hu.c.offset[j], hv.c.offset[i], Matrix::identity(f.dim(hu.c.chains[j].back())));
  }
  CohomologyMap m;
  int bu = rank(hu.boundaries);
  m.source_dim = hv.cycles.cols() - rank(hv.boundaries);
  m.target_dim = hu.cycles.cols() - bu;
  m.rank = rank(hstack(r * hv.cycles, hu.boundaries)) - bu;
  return m;
}

// ---------------------------------------------------------------- injectives and Ext

CellularSheaf elementary_injective(const FinitePoset& poset, int p) {
  Mask m(poset.size(), 0);
  for (int q : poset.down(p)) m[q] = 1;
  return CellularSheaf::constant_on(poset, m);
}

CellularSheaf elementary_projective(const FinitePoset& poset, int p) {
  return CellularSheaf::constant_on(poset, poset.up_mask(p));
}

namespace {

// Offset of the p-block inside the stalk at q of ⊕_r J_r^{mult[r]}.
int inj_block(const FinitePoset& P, const std::vector<int>& mult, int q, int p) {
  int off = 0;
  for (int r = 0; r < p; ++r)
    if (P.leq(q, r)) off += mult[r];
  return off;
}

CellularSheaf injective_sum(const FinitePoset& P, const std::vector<int>& mult) {
  std::vector<int> dims(P.size(), 0);
  for (int q = 0; q < P.size(); ++q)
    for (int p = 0; p < P.size(); ++p)
      if (P.leq(q, p)) dims[q] += mult[p];
  CellularSheaf s(P, dims);
  for (auto [a, b] : P.hasse()) {
    Matrix m(dims[b], dims[a]);
    for (int p = 0; p < P.size(); ++p)
      if (P.leq(b, p) && mult[p] > 0)
        m.set_block(inj_block(P, mult, b, p), inj_block(P, mult, a, p), Matrix::identity(mult[p]));
    s.set_map(a, b, m);
  }
  return s;
}

// The canonical embedding F -> ⊕_p J_p^{dim F_p}.
SheafMap injective_embedding(const CellularSheaf& f, const std::vector<int>& mult, const CellularSheaf& inj) {
  const FinitePoset& P = f.poset();
  SheafMap e;
  for (int q = 0; q < P.size(); ++q) {
    Matrix m(inj.dim(q), f.dim(q));
    for (int p = 0; p < P.size(); ++p)
      if (P.leq(q, p) && mult[p] > 0) m.set_block(inj_block(P, mult, q, p), 0, f.map(q, p));
    e.comp.push_back(m);
  }
  return e;
}

}  // namespace

InjectiveResolution injective_resolution(const CellularSheaf& f, int length) {
  if (length < 0) throw std::invalid_argument("negative resolution length");
  const FinitePoset& P = f.poset();
  InjectiveResolution r;
  CellularSheaf cur = f;
  SheafMap proj_prev;
  for (int n = 0; n <= length; ++n) {
    std::vector<int> mult = cur.dims();
    CellularSheaf inj = injective_sum(P, mult);
    SheafMap e = injective_embedding(cur, mult, inj);
    r.maps.push_back(n == 0 ? e : compose(e, proj_prev));
    r.terms.push_back(inj);
    r.mult.push_back(mult);
    Cokernel c = cokernel(cur, inj, e);
    cur = c.sheaf;
    proj_prev = c.proj;
  }
  return r;
}

bool is_exact_resolution(const CellularSheaf& f, const InjectiveResolution& r) {
  for (size_t n = 0; n < r.terms.size(); ++n) {
    const CellularSheaf& src = n == 0 ? f : r.terms[n - 1];
    if (!is_morphism(src, r.terms[n], r.maps[n])) return false;
  }
  for (int p = 0; p < f.size(); ++p) {
    if (!is_injective(r.maps[0].comp[p])) return false;
    for (size_t n = 1; n < r.maps.size(); ++n) {
      const Matrix& a = r.maps[n - 1].comp[p];
      const Matrix& b = r.maps[n].comp[p];
      if (!(b * a).is_zero()) return false;
      if (rank(a) + rank(b) != a.rows()) return false;
    }
  }
  return true;
}

namespace {

// Hom(F, ⊕_p J_p^{m_p}) ≅ ⊕_p Mat(m_p x dim F_p), row-major per p.
std::vector<int> inj_hom_offsets(const CellularSheaf& f, const std::vector<int>& mult, int* total) {
  std::vector<int> off(f.size());
  int t = 0;
  for (int p = 0; p < f.size(); ++p) {
    off[p] = t;
    t += mult[p] * f.dim(p);
  }
  *total = t;
  return off;
}

// Matrix of Hom(F, I) -> Hom(F, I') induced by d: I -> I'.
Matrix induced_on_hom(const CellularSheaf& f, const std::vector<int>& m, const std::vector<int>& m2, const SheafMap& d) {
  const FinitePoset& P = f.poset();
  int t1 = 0, t2 = 0;
  std::vector<int> o1 = inj_hom_offsets(f, m, &t1);
  std::vector<int> o2 = inj_hom_offsets(f, m2, &t2);
  Matrix out(t2, t1);
  for (int q = 0; q < P.size(); ++q) {
    if (m2[q] == 0 || f.dim(q) == 0) continue;
    for (int p = 0; p < P.size(); ++p) {
      if (!P.leq(q, p) || m[p] == 0 || f.dim(p) == 0) continue;
      Matrix a = d.comp[q].block(inj_block(P, m2, q, q), inj_block(P, m, q, p), m2[q], m[p]);
      Matrix b = f.map(q, p);
      Matrix k = kron(a, b.transpose());
      out.set_block(o2[q], o1[p], out.block(o2[q], o1[p], k.rows(), k.cols()) + k);
    }
  }
  return out;
}

}  // namespace

int ext_dim(const CellularSheaf& f, const CellularSheaf& g, int n) {
  if (n < 0) return 0;
  InjectiveResolution r = injective_resolution(g, n + 1);
  int t_n = 0;
  inj_hom_offsets(f, r.mult[n], &t_n);
  Matrix dn = induced_on_hom(f, r.mult[n], r.mult[n + 1], r.maps[n + 1]);
  int ker = t_n - rank(dn);
  int im = 0;
  if (n > 0) im = rank(induced_on_hom(f, r.mult[n - 1], r.mult[n], r.maps[n]));
  return ker - im;
}

// ---------------------------------------------------------------- Yoneda extensions

int CocycleSpace::ext1_dim() const { return cocycles.cols() - rank(coboundaries); }

CocycleSpace ext1_cocycles(const CellularSheaf& c, const CellularSheaf& a) {
  const FinitePoset& P = c.poset();
  const int n = P.size();
  CocycleSpace z;
  z.covers = P.hasse();
  std::map<std::pair<int, int>, int> cover_index;
  for (size_t i = 0; i < z.covers.size(); ++i) {
    auto [p, q] = z.covers[i];
    cover_index[{p, q}] = static_cast<int>(i);
    z.offset.push_back(z.length);
    z.length += a.dim(q) * c.dim(p);
  }
  const int N = z.length;
  // ur[p*n+q]: linear map from cochains to vec of the upper-right block C_p -> A_q along the canonical path.
  std::vector<Matrix> ur(static_cast<size_t>(n) * n);
  auto via = [&](int p, int r, int q) {
    Matrix out(a.dim(q) * c.dim(p), N);
    if (p != r) out = kron(a.map(r, q), Matrix::identity(c.dim(p))) * ur[static_cast<size_t>(p) * n + r];
    int off = z.offset[cover_index.at({r, q})];
    Matrix k = kron(Matrix::identity(a.dim(q)), c.map(p, r).transpose());
    out.set_block(0, off, out.block(0, off, k.rows(), k.cols()) + k);
    return out;
  };
  std::vector<Matrix> rows;
  for (int q : P.linear_extension()) {
    for (int p = 0; p < n; ++p) {
      if (!P.lt(p, q)) continue;
      int ref = -1;
      for (int r : P.lower_covers(q)) {
        if (!P.leq(p, r)) continue;
        if (ref < 0) {
          ref = r;
          ur[static_cast<size_t>(p) * n + q] = via(p, r, q);
          continue;
        }
        rows.push_back(via(p, r, q) - ur[static_cast<size_t>(p) * n + q]);
      }
    }
  }
  z.cocycles = rows.empty() ? Matrix::identity(N) : kernel_basis(vstack(rows, N));
  // Coboundaries of h = (h_p : C_p -> A_p).
  std::vector<int> hoff(n);
  int H = 0;
  for (int p = 0; p < n; ++p) {
    hoff[p] = H;
    H += a.dim(p) * c.dim(p);
  }
  z.coboundaries = Matrix(N, H);
  for (size_t i = 0; i < z.covers.size(); ++i) {
    auto [p, q] = z.covers[i];
    int rowsz = a.dim(q) * c.dim(p);
    if (rowsz == 0) continue;
    if (a.dim(p) * c.dim(p) > 0)
      z.coboundaries.set_block(z.offset[i], hoff[p], kron(a.cover_map(p, q), Matrix::identity(c.dim(p))));
    if (a.dim(q) * c.dim(q) > 0) {
      Matrix k = kron(Matrix::identity(a.dim(q)), c.cover_map(p, q).transpose());
      z.coboundaries.set_block(z.offset[i], hoff[q], z.coboundaries.block(z.offset[i], hoff[q], rowsz, k.cols()) -
                                                          k);
    }
  }
  return z;
}

ShortExact extension_from_cocycle(const CellularSheaf& a, const CellularSheaf& c, const CocycleSpace& z,
                                  const Matrix& cochain) {
  const FinitePoset& P = a.poset();
  ShortExact s;
  s.a = a;
  s.c = c;
  std::vector<int> dims;
  for (int p = 0; p < P.size(); ++p) dims.push_back(a.dim(p) + c.dim(p));
  s.b = CellularSheaf(P, dims);
  for (size_t i = 0; i < z.covers.size(); ++i) {
    auto [p, q] = z.covers[i];
    Matrix m(dims[q], dims[p]);
    m.set_block(0, 0, a.cover_map(p, q));
    m.set_block(a.dim(q), a.dim(p), c.cover_map(p, q));
    Matrix blk(a.dim(q), c.dim(p));
    for (int r = 0; r < blk.rows(); ++r)
      for (int col = 0; col < blk.cols(); ++col) blk.at(r, col) = cochain.at(z.offset[i] + r * blk.cols() + col, 0);
    m.set_block(0, a.dim(p), blk);
    s.b.set_map(p, q, m);
  }
  for (int p = 0; p < P.size(); ++p) {
    s.i.comp.push_back(vstack(Matrix::identity(a.dim(p)), Matrix(c.dim(p), a.dim(p))));
    s.pi.comp.push_back(hstack(Matrix(c.dim(p), a.dim(p)), Matrix::identity(c.dim(p))));
  }
  s.b.validate();
  return s;
}

bool is_short_exact(const ShortExact& s) {
  if (!s.b.is_functorial()) return false;
  if (!is_morphism(s.a, s.b, s.i) || !is_morphism(s.b, s.c, s.pi)) return false;
  if (!is_mono(s.i) || !is_epi(s.pi)) return false;
  for (int p = 0; p < s.b.size(); ++p) {
    if (!(s.pi.comp[p] * s.i.comp[p]).is_zero()) return false;
    if (s.a.dim(p) + s.c.dim(p) != s.b.dim(p)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- random data

CellularSheaf random_sheaf(const FinitePoset& poset, Rng& rng, int max_dim) {
  std::vector<int> dims(poset.size());
  for (int& d : dims) d = static_cast<int>(rng.uniform(0, max_dim));
  CellularSheaf f(poset, dims);
  for (int q : poset.linear_extension()) {
    const auto& lc = poset.lower_covers(q);
    if (lc.empty() || dims[q] == 0) continue;
    std::vector<int> off(lc.size());
    int N = 0;
    for (size_t i = 0; i < lc.size(); ++i) {
      off[i] = N;
      N += dims[q] * dims[lc[i]];
    }
    if (N == 0) continue;
    std::vector<Matrix> rows;
    for (int p = 0; p < poset.size(); ++p) {
      if (!poset.lt(p, q) || dims[p] == 0) continue;
      int ref = -1;
      for (size_t i = 0; i < lc.size(); ++i) {
        if (!poset.leq(p, lc[i])) continue;
        if (ref < 0) {
          ref = static_cast<int>(i);
          continue;
        }
        Matrix r(dims[q] * dims[p], N);
        if (dims[lc[i]] > 0)
          r.set_block(0, off[i], kron(Matrix::identity(dims[q]), f.map(p, lc[i]).transpose()));
        if (dims[lc[ref]] > 0) {
          Matrix k = kron(Matrix::identity(dims[q]), f.map(p, lc[ref]).transpose());
          r.set_block(0, off[ref], r.block(0, off[ref], k.rows(), k.cols()) - k);
        }
        rows.push_back(r);
      }
    }
    Matrix x(N, 1);
    if (rows.empty()) {
      for (int i = 0; i < N; ++i) x.at(i, 0) = Scalar(rng.uniform(-2, 2));
    } else {
      Matrix k = kernel_basis(vstack(rows, N));
      for (int c = 0; c < k.cols(); ++c) x = x + Scalar(rng.uniform(-2, 2)) * k.column(c);
    }
    for (size_t i = 0; i < lc.size(); ++i) {
      int r = lc[i];
      Matrix m(dims[q], dims[r]);
      for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b) m.at(a, b) = x.at(off[i] + a * m.cols() + b, 0);
      f.set_map(r, q, m);
    }
  }
  f.validate();
  return f;
}

SheafMap random_map(const CellularSheaf& f, const CellularSheaf& g, Rng& rng) {
  HomSpace h = hom_space(f, g);
  SheafMap m = zero_map(f, g);
  for (const SheafMap& b : h.basis) m = add_maps(m, scale_map(Scalar(rng.uniform(-2, 2)), b));
  return m;
}

// ---------------------------------------------------------------- flabbiness

std::optional<FlabbyWitness> poset_flabby_failure(const CellularSheaf& f) {
  const FinitePoset& P = f.poset();
  for (int p = 0; p < P.size(); ++p) {
    Mask big = P.up_mask(p);
    Mask small = big;
    small[p] = 0;
    if (mask_count(small) == 0) continue;
    SectionSpace sb = sections(f, big);
    SectionSpace ss = sections(f, small);
    if (ss.dim() == 0) continue;
    if (rank(restriction(f, sb, ss)) != ss.dim()) return FlabbyWitness{big, small};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- poset enumeration

std::vector<FinitePoset> all_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<int> perm(n);
  std::set<std::string> seen;
  std::vector<FinitePoset> out;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  for (unsigned long bits = 0; bits < (1UL << pairs.size()); ++bits) {
    std::vector<char> rel(static_cast<size_t>(n) * n, 0);
    std::vector<std::pair<int, int>> chosen;
    for (size_t k = 0; k < pairs.size(); ++k)
      if ((bits >> k) & 1) {
        rel[static_cast<size_t>(pairs[k].first) * n + pairs[k].second] = 1;
        chosen.push_back(pairs[k]);
      }
    bool closed = true;
    for (int i = 0; i < n && closed; ++i)
      for (int j = 0; j < n && closed; ++j)
        for (int k = 0; k < n && closed; ++k)
          if (rel[static_cast<size_t>(i) * n + j] && rel[static_cast<size_t>(j) * n + k] &&
              !rel[static_cast<size_t>(i) * n + k])
            closed = false;
    if (!closed) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
      std::string key(static_cast<size_t>(n) * n, '0');
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (rel[static_cast<size_t>(i) * n + j]) key[static_cast<size_t>(perm[i]) * n + perm[j]] = '1';
      if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.emplace_back(names, chosen);
  }
  return out;
}

}  // namespace tsite
