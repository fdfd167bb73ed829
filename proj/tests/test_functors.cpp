#include <doctest.h>

#include "tsite/functors.hpp"

using namespace tsite;

namespace {

SemilinearSet S(const std::string& s) { return SemilinearSet::parse(s); }

std::vector<SemilinearSet> sample_opens(Rng& rng, int n) {
  std::vector<SemilinearSet> out = {S("(-inf,inf)"), S("(0,1)+(1,2)"), S("(-1,3/2)")};
  while (static_cast<int>(out.size()) < n) out.push_back(random_open(rng, 3, rng.coin()));
  return out;
}

}  // namespace

TEST_CASE("compact shrink chain") {
  CHECK(compact_shrink(S("(0,1)"), 4) == S("(1/4,3/4)"));
  CHECK(compact_shrink(S("(0,1)"), 2).empty());
  CHECK(compact_shrink(S("(0,inf)"), 3) == S("(1/3,3)"));
  for (int m = 1; m < 6; ++m) CHECK(subset(compact_shrink(S("(-2,5)"), m), compact_shrink(S("(-2,5)"), m + 1)));
  CHECK(rwqc(compact_shrink(S("(0,1)+(2,9/2)"), 5), S("(0,1)+(2,9/2)")));
}

TEST_CASE("inverse image of the pushforward") {
  ConstructibleTSheaf kx = constant_sheaf(SemilinearSet::line());
  CHECK(rho_inv_sections(rho_star(kx), SemilinearSet::line()) == 1);
  CHECK(rho_inv_sections(rho_star(ConstructibleTSheaf::zero()), S("(0,1)")) == 0);
  CHECK(same_up_to_refinement(rho_star(constant_sheaf(S("(0,1)"))), constant_sheaf(S("(0,1)"))));

  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    XSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    UnitReport r = rho_inv_star_check(f, sample_opens(rng, 5));
    CHECK_MESSAGE(r.pass, r.witness);
    XSheaf g = random_tsheaf(rng, f.cx.E, 2);
    TSheafMap phi = random_tmap(f, g, rng);
    CHECK(rho_inv_natural(phi, random_open(rng, 3, false)));
    CHECK(hom_dim(rho_star(f), rho_star(g)) == hom_dim(f, g));
  }
}

TEST_CASE("shriek stages") {
  XSheaf k01 = constant_sheaf(S("(0,1)"));
  ConstructibleTSheaf s1 = rho_shriek_stage(k01, 1);
  CHECK(same_up_to_refinement(s1, constant_sheaf(S("(1/4,3/4)"))));
  IndSheaf rk = rho_shriek(k01);
  CHECK(ind_colimit_sections(rk, S("(0,1)")) == 0);
  CHECK(sections_dim(rho_star(k01), S("(0,1)")) == 1);
  CHECK(ind_colimit_sections(rk, S("(1/8,7/8)")) == 1);

  IndSheaf z = rho_shriek(ConstructibleTSheaf::zero());
  CHECK(ind_colimit_sections(z, S("(0,1)")) == 0);

  XSheaf kx = constant_sheaf(SemilinearSet::line());
  ShriekValues v = shriek_values(kx, S("(0,1)+(1,2)"));
  CHECK(v.presheaf_colimit == 1);
  CHECK(v.star == 2);
  CHECK(v.sheaf == 2);

  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    XSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    IndSheaf r = rho_shriek(f);
    for (int n = 1; n <= 3; ++n) CHECK(r.transition(n).valid());
    CHECK(shriek_counit(f, 2).valid());
    SemilinearSet u = random_open(rng, 3, true);
    CHECK(ind_colimit_sections(r, u) == stalkwise_colimit_sections(r, u));
    CHECK(sheaf_axioms_check(ind_colimit_presheaf(r), 6, 40 + trial).pass);
  }
}

TEST_CASE("adjunction between shriek and inverse image") {
  AdjunctionReport a = adjunction_check(constant_sheaf(S("(0,1)")), rho_star(constant_sheaf(S("(0,2)"))));
  CHECK_MESSAGE(a.pass, a.witness);
  CHECK(a.hom_shriek == 1);
  CHECK(a.hom_inv == 1);
  AdjunctionReport z = adjunction_check(ConstructibleTSheaf::zero(), constant_sheaf(S("(0,2)")));
  CHECK(z.pass);
  CHECK(z.hom_shriek == 0);
  CHECK(z.hom_inv == 0);

  Rng rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    XSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    ConstructibleTSheaf g = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    AdjunctionReport r = adjunction_check(f, g);
    CHECK_MESSAGE(r.pass, r.witness);
    CHECK(r.hom_shriek == r.hom_inv);
  }
}

TEST_CASE("shriek is exact, monoidal, and inverted by the inverse image") {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> e = random_endpoints(rng, 3);
    XSheaf f = random_tsheaf(rng, e, 2);
    XSheaf g = random_tsheaf(rng, e, 2);
    TSheafMap phi = random_tmap(f, g, rng);
    TKernel k = kernel(phi);
    TKernel im = image(phi);
    // 0 -> ker φ -> F -> im φ -> 0
    TSheafMap onto{f, im.sheaf, {}};
    for (size_t c = 0; c < phi.map.comp.size(); ++c) {
      auto x = solve(im.incl.map.comp[c], phi.map.comp[c]);
      REQUIRE(x.has_value());
      onto.map.comp.push_back(*x);
    }
    REQUIRE(onto.valid());
    CHECK(rho_shriek_exact(k.incl, onto, 3));
    CHECK(rho_shriek_tensor(f, g, 3));
    for (int j = 0; j < 3; ++j) CHECK(rho_inv_shriek_check(f, random_open(rng, 3, true)));
  }
  CHECK(rho_shriek_tensor(constant_sheaf(S("(0,2)")), constant_sheaf(S("(1,3)")), 3));
  CHECK(same_up_to_refinement(rho_shriek_stage(tensor(constant_sheaf(S("(0,2)")), constant_sheaf(S("(1,3)"))), 2),
                              constant_sheaf(S("(9/8,15/8)"))));
}

TEST_CASE("pushforward along site maps") {
  SiteMap t = SiteMap::affine(Rational(1), Rational(1));
  CHECK(same_up_to_refinement(pushforward(t, constant_sheaf(S("(0,1)"))), constant_sheaf(S("(1,2)"))));
  SiteMap d = SiteMap::affine(Rational(2), Rational(0));
  XSheaf f = constant_sheaf(S("[0,1)"));
  CHECK(sections_dim(pushforward(d, f), S("(0,2)")) == sections_dim(f, S("(0,1)")));
  SiteMap c = SiteMap::constant(Rational(0));
  CHECK_THROWS_AS(pushforward(c, f), std::invalid_argument);
  CHECK_THROWS_AS(c.preimage(S("(-1,1)")), std::invalid_argument);
  ProObject g = pushforward_point_sections(c, constant_sheaf(SemilinearSet::line()), 4);
  CHECK(g.stable);
  CHECK(g.limit_dim == 1);

  Rng rng(35);
  SiteMap pw = SiteMap::piecewise({Rational(-1), Rational(0), Rational(2)}, {Rational(3), Rational(1), Rational(0)});
  CHECK_FALSE(pw.increasing());
  for (int trial = 0; trial < 30; ++trial) {
    XSheaf h = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    SiteMap m = trial % 2 ? pw : SiteMap::affine(frac(trial % 5 + 1, 2), Rational(trial % 3 - 1));
    ConstructibleTSheaf p = pushforward(m, h);
    SemilinearSet v = random_open(rng, 3, true);
    CHECK(sections_dim(p, v) == sections_dim(h, m.preimage(v)));
    Rational x = random_grid_point(rng);
    CHECK(m.inverse(m.apply(x)) == x);
  }
}

TEST_CASE("constant sheaf of an open built two ways") {
  TwoWaysReport a = constant_sheaf_two_ways(S("(0,1)+(1,2)"));
  CHECK_MESSAGE(a.pass, a.witness);
  CHECK(a.connected > 0);
  CHECK(constant_sheaf_two_ways(SemilinearSet::line()).pass);
  CHECK(constant_sheaf_two_ways(S("(-inf,0)+(1,inf)")).pass);
  Rng rng(36);
  for (int trial = 0; trial < 15; ++trial) {
    TwoWaysReport r = constant_sheaf_two_ways(random_open(rng, 3, rng.coin()));
    CHECK_MESSAGE(r.pass, r.witness);
  }
}
