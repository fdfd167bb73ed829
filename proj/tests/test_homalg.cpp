#include <doctest.h>

#include "tsite/homalg.hpp"
#include "tsite/oracles.hpp"

using namespace tsite;

namespace {

SemilinearSet S(const std::string& s) { return SemilinearSet::parse(s); }

ConstructibleTSheaf kx() { return constant_sheaf(SemilinearSet::line()); }

ConstructibleTSheaf sky(const Rational& p, int d = 1) {
  ConstructibleTSheaf s = skyscraper(p);
  ConstructibleTSheaf out = s;
  for (int i = 1; i < d; ++i) out = direct_sum(out, s);
  return d == 0 ? ConstructibleTSheaf::zero() : out;
}

}  // namespace

TEST_CASE("flabby examples") {
  CHECK_FALSE(restriction_surjective(kx(), S("(0,3)"), S("(0,1)+(2,3)")));
  FlabbyResult r = is_flabby(kx());
  CHECK_FALSE(r.flabby);
  REQUIRE(r.witness.has_value());
  CHECK_FALSE(restriction_surjective(kx(), r.witness->first, r.witness->second));
  CHECK(is_flabby(sky(Rational(1))).flabby);
  CHECK(is_flabby(direct_sum(sky(Rational(0)), sky(frac(3, 2), 2))).flabby);
  CHECK(is_flabby(ConstructibleTSheaf::zero()).flabby);
  CHECK_FALSE(is_flabby(constant_sheaf(S("[0,1]"))).flabby);
  CHECK_FALSE(is_flabby(constant_sheaf(S("(0,1)"))).flabby);
}

TEST_CASE("flabby agrees with the brute force and with vanishing edge stalks") {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    ConstructibleTSheaf f = t % 3 == 0 ? random_skyscraper_sum(rng, 3, 2)
                                       : random_tsheaf(rng, random_endpoints(rng, 3), 1, t % 2 == 0);
    bool fl = is_flabby(f).flabby;
    CHECK(fl == edge_stalks_vanish(f));
    ConstructibleTSheaf r = f.refine(edge_samples(f.cx));
    CHECK(fl == brute_is_flabby(r.data));
    CHECK(fl == is_c_soft(f).csoft);
  }
}

TEST_CASE("c-soft examples") {
  CHECK_FALSE(is_c_soft(kx()).csoft);
  CHECK(closure_sections(kx(), S("[0,1]+[2,3]")).dim() == 2);
  Matrix res = closure_restriction(kx(), S("(-1,4)"), S("[0,1]+[2,3]"));
  CHECK(rank(res) == 1);
  CHECK(neighborhood_sections(kx(), S("[0,1]+[2,3]"), 4) == 2);
  CHECK(neighborhood_sections(kx(), S("[0,1]+[2,3]"), 1) == 1);
  CSoftResult c = is_c_soft(sky(Rational(0), 2));
  CHECK(c.csoft);
  CHECK(c.colimit_agrees);
  CHECK(c.pairs > 0);
  CHECK(is_c_soft(ConstructibleTSheaf::zero()).csoft);
  CSoftResult o = is_c_soft(constant_sheaf(S("(0,1)")));
  CHECK_FALSE(o.csoft);
  CHECK(o.colimit_agrees);
  REQUIRE(o.witness.has_value());

  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2, true);
    SemilinearSet k = S("[-1,1/2]");
    CHECK(closure_sections(f, k).dim() == neighborhood_sections(f, k, 64));
    CHECK(is_c_soft(f).colimit_agrees);
  }
}

TEST_CASE("coherent presentation of k_[1,2]") {
  auto p = coherent_presentation(constant_sheaf(S("[1,2]")));
  REQUIRE(p.has_value());
  CHECK(p->exact);
  CHECK(p->stalk_exact);
  REQUIRE(p->generators.size() == 1);
  CHECK(p->generators[0] == S("(0,3)"));
  REQUIRE(p->relations.size() == 2);
  CHECK(unite(p->relations[0], p->relations[1]) == S("(0,1)+(2,3)"));
  CHECK_FALSE(coherent_presentation(kx()).has_value());
  CHECK_FALSE(is_coherent(kx()));
  CHECK(is_coherent(ConstructibleTSheaf::zero()));
  CHECK(is_coherent(constant_sheaf(S("(0,1)"))));
  CHECK(is_coherent(sky(Rational(2), 2)));
}

TEST_CASE("coherent sheaves are closed under kernels, cokernels and tensor") {
  Rng rng(43);
  for (int t = 0; t < 25; ++t) {
    std::vector<Rational> e = random_endpoints(rng, 3);
    ConstructibleTSheaf f = random_tsheaf(rng, e, 2, true);
    ConstructibleTSheaf g = random_tsheaf(rng, e, 2, true);
    CHECK(is_coherent(f));
    TSheafMap phi = random_tmap(f, g, rng);
    CHECK(is_coherent(kernel(phi).sheaf));
    CHECK(is_coherent(cokernel(phi).sheaf));
    CHECK(is_coherent(tensor(f, g)));
    auto gens = coherent_generators(f);
    REQUIRE(gens.has_value());
    for (const auto& u : gens->first) CHECK(u.is_bounded());
  }
}

TEST_CASE("Ext through the boundary sequence and through resolutions") {
  ConstructibleTSheaf k01 = constant_sheaf(S("(0,1)"));
  ConstructibleTSheaf k12 = boundary_sheaf(S("(0,1)+(2,3)"), S("(0,3)"));
  CHECK(same_up_to_refinement(k12, constant_sheaf(S("[1,2]"))));
  CHECK(ext_dim(k12, kx(), 1) == 1);
  CHECK(ext1_boundary_les(kx(), S("(0,1)+(2,3)"), S("(0,3)")) == 1);
  CHECK(ext1_boundary_les(k01, S("(0,1)+(2,3)"), S("(0,3)")) == ext_dim(k12, k01, 1));
  CHECK(ext1_boundary_les(sky(Rational(1)), S("(0,1)+(2,3)"), S("(0,3)")) == 0);

  Rng rng(44);
  for (int t = 0; t < 25; ++t) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2, t % 2 == 0);
    ConstructibleTSheaf g = random_tsheaf(rng, random_endpoints(rng, 3), 1, true);
    auto [x, y] = common_refinement(g, f);
    int e1 = ext_dim(g, f, 1);
    CHECK(e1 == projective_ext_dim(x.data, y.data, 1));
    CHECK(e1 == yoneda_ext1_dim(x.data, y.data));
    CHECK(ext_dim(g, f, 0) == hom_dim(g, f));
    SemilinearSet v = random_open(rng, 2, true);
    SemilinearSet u = intersect(v, random_open(rng, 3, true));
    CHECK(ext1_boundary_les(f, u, v) == ext_dim(boundary_sheaf(u, v), f, 1));
  }
}

TEST_CASE("flabby iff Ext¹ vanishes") {
  Rng rng(45);
  FlabbyExtReport k = flabby_ext_criterion(kx(), rng, 4);
  CHECK(k.consistent());
  CHECK_FALSE(k.flabby);
  CHECK_FALSE(k.boundary_vanishes);
  FlabbyExtReport s = flabby_ext_criterion(sky(Rational(0), 2), rng, 4);
  CHECK(s.consistent());
  CHECK(s.flabby);
  for (int t = 0; t < 20; ++t) {
    ConstructibleTSheaf f = t % 2 ? random_skyscraper_sum(rng, 3, 2)
                                  : random_tsheaf(rng, random_endpoints(rng, 3), 2, t % 4 == 0);
    FlabbyExtReport r = flabby_ext_criterion(f, rng, 3);
    CHECK_MESSAGE(r.consistent(), r.witness);
  }
}

TEST_CASE("short exact sequences with flabby first term") {
  SuiteReport a = flabby_acyclicity_suite(46, 12);
  CHECK_MESSAGE(a.pass(), (a.witnesses.empty() ? "" : a.witnesses.front()));
  CHECK(a.instances == 12);
  SuiteReport c = flabby_counterexamples();
  CHECK_MESSAGE(c.pass(), (c.witnesses.empty() ? "" : c.witnesses.front()));
  SuiteReport s = csoft_suite(47, 12);
  CHECK_MESSAGE(s.pass(), (s.witnesses.empty() ? "" : s.witnesses.front()));
  CHECK(is_short_exact(boundary_sequence()));
}

TEST_CASE("flabbiness over the locally finite opens") {
  Rng rng(48);
  ConstructibleTSheaf f = sky(Rational(0), 2);
  auto opens = tloc_sample_opens(f, rng, 8);
  int d = conclusive_depth(f, opens);
  GlobalFlabbyReport r = is_flabby_global(f, d, opens);
  CHECK(r.surjective);
  CHECK(r.conclusive);
  auto ko = tloc_sample_opens(kx(), rng, 8);
  GlobalFlabbyReport k = is_flabby_global(kx(), conclusive_depth(kx(), ko), ko);
  CHECK_FALSE(k.surjective);
  CHECK_FALSE(k.witness.empty());
  for (int t = 0; t < 10; ++t) {
    ConstructibleTSheaf g = t % 2 ? random_skyscraper_sum(rng, 3, 2)
                                  : random_tsheaf(rng, random_endpoints(rng, 3), 1, true);
    auto o = tloc_sample_opens(g, rng, 6);
    GlobalFlabbyReport gr = is_flabby_global(g, conclusive_depth(g, o), o);
    bool fl = is_flabby(g).flabby;
    if (fl) CHECK(gr.surjective);
    if (!gr.surjective) CHECK_FALSE(fl);
  }
}

TEST_CASE("functors and flabbiness") {
  Rng rng(49);
  for (int t = 0; t < 15; ++t) {
    ConstructibleTSheaf f = random_skyscraper_sum(rng, 3, 2);
    SiteMap m = SiteMap::affine(frac(t % 3 + 1, 2), Rational(t % 5 - 2));
    CHECK(is_flabby(pushforward(m, f)).flabby);
    CHECK(is_c_soft(rho_star(f)).csoft);
    IndSheaf r = growing_ind(f, Rational(-2), Rational(2));
    for (int n = 1; n <= 3; ++n) CHECK(is_flabby(r.stage(n)).flabby);
  }
}
