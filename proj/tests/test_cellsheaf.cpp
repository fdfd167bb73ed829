#include <doctest.h>

#include <functional>

#include "tsite/cellsheaf.hpp"

using namespace tsite;

namespace {

struct FieldGuard {
  explicit FieldGuard(unsigned long p) { set_field_prime(p); }
  ~FieldGuard() { set_field_prime(0); }
};

CellularSheaf line_constant(const CellComplex& c, const char* set) {
  FinitePoset P = FinitePoset::from_cells(c);
  return CellularSheaf::constant_on(P, *c.mask_of(SemilinearSet::parse(set)));
}

Mask line_mask(const CellComplex& c, const char* set) { return *c.mask_of(SemilinearSet::parse(set)); }

// Counts compatible families over an up-set by enumeration over F_p.
long count_sections(const CellularSheaf& f, const Mask& u, unsigned long p) {
  const FinitePoset& P = f.poset();
  std::vector<int> elems;
  for (int q = 0; q < P.size(); ++q)
    if (u[q]) elems.push_back(q);
  std::vector<Matrix> x(P.size());
  long count = 0;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == elems.size()) {
      for (int a : elems)
        for (int b : elems)
          if (P.leq(a, b) && f.map(a, b) * x[a] != x[b]) return;
      ++count;
      return;
    }
    int q = elems[k];
    int d = f.dim(q);
    long total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<long>(p);
    for (long code = 0; code < total; ++code) {
      Matrix v(d, 1);
      long c = code;
      for (int i = 0; i < d; ++i) {
        v.at(i, 0) = Scalar(c % static_cast<long>(p));
        c /= static_cast<long>(p);
      }
      x[q] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<FinitePoset> small_posets(int max_n) {
  std::vector<FinitePoset> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto& p : all_posets(n)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("poset basics") {
  FinitePoset P = FinitePoset::from_cells(cells({0, 1}));
  CHECK(P.size() == 5);
  CHECK(P.leq(1, 0));
  CHECK(P.leq(1, 2));
  CHECK_FALSE(P.leq(0, 1));
  CHECK(P.hasse().size() == 4);
  CHECK(P.opens().size() == 13);
  CHECK_THROWS(FinitePoset({"a", "b"}, {{0, 1}, {1, 0}}));
  FinitePoset ch = FinitePoset::chain(3);
  CHECK(ch.leq(0, 2));
  CHECK(ch.hasse().size() == 2);
}

TEST_CASE("poset enumeration counts isomorphism classes") {
  CHECK(all_posets(1).size() == 1);
  CHECK(all_posets(2).size() == 2);
  CHECK(all_posets(3).size() == 5);
  CHECK(all_posets(4).size() == 16);
  CHECK(all_posets(5).size() == 63);
}

TEST_CASE("section examples") {
  FinitePoset ch = FinitePoset::chain(3);
  CHECK(sections_dim(CellularSheaf::constant_on(ch, ch.all()), ch.all()) == 1);
  // e1 <- v -> e2 with stalk k only at e1.
  FinitePoset z({"e1", "v", "e2"}, {{1, 0}, {1, 2}});
  CellularSheaf f(z, {1, 0, 0});
  CHECK(sections_dim(f, z.all()) == 0);
  CHECK(sections_dim(f, z.up_mask(0)) == 1);
  FinitePoset d = FinitePoset::discrete(2);
  CHECK(sections_dim(CellularSheaf::constant_on(d, d.all()), d.all()) == 2);
  CHECK_THROWS(sections(f, Mask{0, 1, 0}));
}

TEST_CASE("line cell sections of constant sheaves") {
  CellComplex c = cells({0, 1, 2});
  CellularSheaf k01 = line_constant(c, "(0,1)");
  CHECK(sections_dim(k01, line_mask(c, "(0,1)")) == 1);
  CHECK(sections_dim(k01, line_mask(c, "(0,2)")) == 0);
  CellularSheaf k02 = line_constant(c, "(0,2)");
  CHECK(sections_dim(k02, line_mask(c, "(0,1)+(1,2)")) == 2);
  CHECK(hom_space(k02, k01).dim() == 0);
  CHECK(hom_space(k01, k02).dim() == 1);
}

TEST_CASE("section dimension matches enumeration over F_3") {
  FieldGuard g(3);
  Rng rng(31);
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2);
    for (const Mask& u : P.opens()) CHECK(ipow(3, sections_dim(f, u)) == count_sections(f, u, 3));
  }
}

TEST_CASE("sections satisfy the two-open equalizer condition") {
  Rng rng(32);
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2);
    auto opens = P.opens();
    for (size_t i = 0; i < opens.size(); i += 2)
      for (size_t j = 1; j < opens.size(); j += 3) {
        Mask u = opens[i], v = opens[j];
        SectionSpace su = sections(f, u), sv = sections(f, v);
        SectionSpace sun = sections(f, mask_or(u, v)), sin = sections(f, mask_and(u, v));
        Matrix a = vstack(restriction(f, sun, su), restriction(f, sun, sv));
        Matrix b = hstack(restriction(f, su, sin), Scalar(-1) * restriction(f, sv, sin));
        CHECK(is_injective(a));
        CHECK((b * a).is_zero());
        CHECK(rank(a) == b.cols() - rank(b));
      }
  }
}

TEST_CASE("random sheaves are functors and maps commute") {
  Rng rng(33);
  for (const FinitePoset& P : small_posets(5)) {
    CellularSheaf f = random_sheaf(P, rng, 2);
    CellularSheaf g = random_sheaf(P, rng, 2);
    CHECK(f.is_functorial());
    SheafMap m = random_map(f, g, rng);
    CHECK(is_morphism(f, g, m));
  }
}

TEST_CASE("broken generization is detected") {
  FinitePoset sq({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CellularSheaf f = CellularSheaf::constant_on(sq, sq.all());
  CHECK(f.is_functorial());
  f.set_map(2, 3, Matrix::from_rows({{2}}));
  std::string why;
  CHECK_FALSE(f.is_functorial(&why));
  CHECK_FALSE(why.empty());
  CHECK_THROWS(f.validate());
}

TEST_CASE("kernel, cokernel and tensor examples") {
  Rng rng(34);
  FinitePoset P = FinitePoset::chain(3);
  CellularSheaf f = random_sheaf(P, rng, 2);
  CellularSheaf z = CellularSheaf::zero(P);
  Cokernel c0 = cokernel(z, f, zero_map(z, f));
  CHECK(c0.sheaf.dims() == f.dims());
  CHECK(is_iso(c0.proj));
  CHECK(kernel(f, f, identity_map(f)).sheaf.is_zero());
  CellComplex c = cells({0, 1, 2, 3});
  CellularSheaf t = tensor(line_constant(c, "(0,2)"), line_constant(c, "(1,3)"));
  CellularSheaf k12 = line_constant(c, "(1,2)");
  CHECK(t.dims() == k12.dims());
  HomSpace h = hom_space(t, k12);
  bool some_iso = false;
  for (const SheafMap& m : h.basis) some_iso = some_iso || is_iso(m);
  CHECK(some_iso);
}

TEST_CASE("k_U ⊗ k_V = k_{U∩V} on up-sets") {
  for (const FinitePoset& P : small_posets(4)) {
    auto opens = P.opens();
    for (const Mask& u : opens)
      for (const Mask& v : opens) {
        CellularSheaf t = tensor(CellularSheaf::constant_on(P, u), CellularSheaf::constant_on(P, v));
        CHECK(t.dims() == CellularSheaf::constant_on(P, mask_and(u, v)).dims());
      }
  }
}

TEST_CASE("pointwise cokernel has the universal property") {
  Rng rng(35);
  int nontrivial = 0;
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2), g = random_sheaf(P, rng, 2), h = random_sheaf(P, rng, 2);
    SheafMap phi = random_map(f, g, rng);
    Cokernel c = cokernel(f, g, phi);
    CHECK(c.sheaf.is_functorial());
    CHECK(is_morphism(g, c.sheaf, c.proj));
    CHECK(is_zero_map(compose(c.proj, phi)));
    // Maps g -> h killing phi factor uniquely through the cokernel.
    HomSpace hc = hom_space(c.sheaf, h);
    for (const SheafMap& t : hom_space(g, h).basis) {
      SheafMap killed = compose(t, phi);
      if (!is_zero_map(killed)) continue;
      ++nontrivial;
      SheafMap u;
      bool ok = true;
      for (int p = 0; p < P.size() && ok; ++p) {
        auto x = solve_left(c.proj.comp[p], t.comp[p]);
        ok = x.has_value();
        if (ok) u.comp.push_back(*x);
      }
      CHECK(ok);
      if (ok) CHECK(is_morphism(c.sheaf, h, u));
    }
    // Hom(coker, h) = maps g -> h vanishing on the image.
    int killing = 0;
    {
      HomSpace gh = hom_space(g, h);
      std::vector<Matrix> cols;
      for (const SheafMap& t : gh.basis) {
        Matrix v(0, 1);
        SheafMap k = compose(t, phi);
        for (const Matrix& m : k.comp) {
          Matrix flat(m.rows() * m.cols(), 1);
          for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) flat.at(i * m.cols() + j, 0) = m.at(i, j);
          v = vstack(v, flat);
        }
        cols.push_back(v);
      }
      int rows = cols.empty() ? 0 : cols[0].rows();
      killing = gh.dim() - (cols.empty() ? 0 : rank(hstack(cols, rows)));
    }
    CHECK(hc.dim() == killing);
  }
  CHECK(nontrivial > 20);
}

TEST_CASE("Hom additivity and internal Hom") {
  Rng rng(36);
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2), g = random_sheaf(P, rng, 1);
    DirectSum gg = direct_sum(g, g);
    CHECK(hom_space(f, gg.sheaf).dim() == 2 * hom_space(f, g).dim());
    CellularSheaf ih = internal_hom(f, g);
    CHECK(ih.is_functorial());
    CHECK(sections_dim(ih, P.all()) == hom_space(f, g).dim());
  }
  FinitePoset ch = FinitePoset::chain(2);
  CellularSheaf k = CellularSheaf::constant_on(ch, ch.all());
  CHECK(hom_space(k, k).dim() == 1);
}

TEST_CASE("cohomology of poset models") {
  // Four-element model of the circle: two points below two points.
  FinitePoset circle({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CellularSheaf k = CellularSheaf::constant_on(circle, circle.all());
  CHECK(cohomology_dim(k, circle.all(), 0) == 1);
  CHECK(cohomology_dim(k, circle.all(), 1) == 1);
  CHECK(cohomology_dim(k, circle.all(), 2) == 0);
  FinitePoset line = FinitePoset::from_cells(cells({0, 1, 2}));
  CellularSheaf kl = CellularSheaf::constant_on(line, line.all());
  CHECK(cohomology_dim(kl, line.all(), 1) == 0);
  Rng rng(37);
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2);
    CHECK(cohomology_dim(f, P.all(), 0) == sections_dim(f, P.all()));
  }
}

TEST_CASE("elementary injectives and resolutions") {
  FinitePoset ch = FinitePoset::chain(2);
  // Skyscraper at the minimal element of a chain is J_0.
  CellularSheaf sky(ch, {1, 0});
  InjectiveResolution r = injective_resolution(sky, 2);
  CHECK(is_exact_resolution(sky, r));
  CHECK(r.terms[0].dims() == elementary_injective(ch, 0).dims());
  CHECK(r.terms[1].is_zero());
  CellularSheaf k = CellularSheaf::constant_on(ch, ch.all());
  InjectiveResolution rk = injective_resolution(k, 2);
  CHECK(is_exact_resolution(k, rk));
  // The canonical (non-minimal) resolution: I^0 = J_0 ⊕ J_1, I^1 = J_0.
  CHECK(rk.terms[0].dims() == std::vector<int>{2, 1});
  CHECK(rk.terms[1].dims() == std::vector<int>{1, 0});
  CHECK(rk.terms[2].is_zero());
  InjectiveResolution r0 = injective_resolution(CellularSheaf::zero(ch), 1);
  CHECK(r0.terms[0].is_zero());
  Rng rng(38);
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2);
    CHECK(is_exact_resolution(f, injective_resolution(f, 2)));
  }
}

TEST_CASE("Ext examples") {
  CellComplex c = cells({0, 1, 2, 3});
  CellularSheaf k12 = line_constant(c, "[1,2]");
  CellularSheaf k01 = line_constant(c, "(0,1)");
  CHECK(ext_dim(k12, k01, 1) == 1);
  CHECK(ext1_cocycles(k12, k01).ext1_dim() == 1);
  Rng rng(39);
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf f = random_sheaf(P, rng, 2);
    CellularSheaf g = random_sheaf(P, rng, 2);
    CHECK(ext_dim(f, g, 0) == hom_space(f, g).dim());
    for (int p = 0; p < P.size(); ++p) {
      CHECK(ext_dim(f, elementary_injective(P, p), 1) == 0);
      CHECK(ext_dim(elementary_projective(P, p), g, 1) == 0);
    }
  }
}

TEST_CASE("Ext^1 agrees with Yoneda cocycle counting") {
  Rng rng(40);
  for (const FinitePoset& P : small_posets(4)) {
    for (int t = 0; t < 2; ++t) {
      CellularSheaf f = random_sheaf(P, rng, 2);
      CellularSheaf g = random_sheaf(P, rng, 2);
      CHECK(ext_dim(f, g, 1) == ext1_cocycles(f, g).ext1_dim());
    }
  }
}

TEST_CASE("extensions from cocycles are short exact") {
  Rng rng(41);
  int nonsplit = 0;
  for (const FinitePoset& P : small_posets(4)) {
    CellularSheaf a = random_sheaf(P, rng, 2), c = random_sheaf(P, rng, 2);
    CocycleSpace z = ext1_cocycles(c, a);
    Matrix x(z.length, 1);
    for (int k = 0; k < z.cocycles.cols(); ++k) x = x + Scalar(rng.uniform(-1, 1)) * z.cocycles.column(k);
    ShortExact s = extension_from_cocycle(a, c, z, x);
    CHECK(is_short_exact(s));
    if (z.ext1_dim() > 0) ++nonsplit;
  }
  CHECK(nonsplit > 0);
}

TEST_CASE("local flabbiness criterion matches all open pairs") {
  Rng rng(42);
  for (const FinitePoset& P : small_posets(4)) {
    for (int t = 0; t < 3; ++t) {
      CellularSheaf f = random_sheaf(P, rng, 2);
      bool brute = true;
      auto opens = P.opens();
      for (const Mask& v : opens)
        for (const Mask& u : opens) {
          if (!brute || !mask_subset(u, v)) continue;
          SectionSpace sv = sections(f, v), su = sections(f, u);
          if (rank(restriction(f, sv, su)) != su.dim()) brute = false;
        }
      CHECK(poset_flabby_failure(f).has_value() == !brute);
    }
  }
}
