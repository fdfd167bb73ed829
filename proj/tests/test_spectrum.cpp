#include <doctest.h>

#include "tsite/spectrum.hpp"

using namespace tsite;

namespace {

SemilinearSet S(const std::string& s) { return SemilinearSet::parse(s); }

Mask M(const std::string& bits) {
  Mask m;
  for (char c : bits) m.push_back(c == '1');
  return m;
}

FiniteSite diamond() {
  return FiniteSite::of_poset(FinitePoset({"b", "l", "r", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

FiniteSite zigzag() {
  return FiniteSite::of_poset(FinitePoset({"v0", "e0", "v1", "e1"}, {{0, 1}, {2, 1}, {2, 3}}));
}

}  // namespace

TEST_CASE("finite Boolean algebras and their ultrafilters") {
  FinBoolAlg full(3, {M("100"), M("010"), M("001")});
  CHECK(full.num_atoms() == 3);
  CHECK(full.elements().size() == 8);
  FinBoolAlg sier(2, {M("10")});
  CHECK(sier.num_atoms() == 2);
  CHECK(sier.contains(M("01")));

  CHECK(ultrafilter_validate(full, principal_ultrafilter(full, 1)));
  std::vector<Mask> no_x = principal_ultrafilter(full, 1);
  no_x.erase(std::find(no_x.begin(), no_x.end(), M("111")));
  CHECK_FALSE(ultrafilter_validate(full, no_x));
  std::vector<Mask> both = principal_ultrafilter(full, 0);
  both.push_back(M("011"));
  CHECK_FALSE(ultrafilter_validate(full, both));
  CHECK_FALSE(ultrafilter_validate(full, {M("111")}));
  CHECK_FALSE(ultrafilter_validate(sier, {M("11")}));
  CHECK(ultrafilter_validate(sier, {M("11"), M("10")}));

  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    int n = static_cast<int>(rng.uniform(1, 6));
    std::vector<Mask> gens;
    for (int g = 0; g < 2; ++g) {
      Mask m(n);
      for (auto& b : m) b = rng.coin();
      gens.push_back(m);
    }
    FinBoolAlg a(n, gens);
    REQUIRE(a.num_atoms() <= 4);
    auto ultra = brute_ultrafilters(a);
    CHECK(static_cast<int>(ultra.size()) == a.num_atoms());
    for (const auto& u : ultra) {
      int principal = 0;
      for (int i = 0; i < a.num_atoms(); ++i) {
        std::vector<Mask> p = principal_ultrafilter(a, i);
        if (std::is_permutation(p.begin(), p.end(), u.begin(), u.end())) ++principal;
      }
      CHECK(principal == 1);
    }
  }
}

TEST_CASE("finite spectra") {
  FiniteSite d3 = FiniteSite::of_poset(FinitePoset::discrete(3));
  FinBoolAlg a3(3, d3.opens());
  CHECK(spectrum_points(a3, d3.opens()).atoms.size() == 3);

  FiniteSite s = FiniteSite::of_poset(FinitePoset({"a", "b"}, {{1, 0}}));
  FinBoolAlg as(2, {M("10")});
  FiniteSpectrum sp = spectrum_points(as, s.opens());
  CHECK(sp.atoms.size() == 2);
  Mask ua = tilde(as, sp, M("10"));
  CHECK(mask_count(ua) == 1);
  CHECK(as.atoms()[sp.atoms[0]] == M("10"));
  CHECK(ua[0] == 1);

  CHECK(spectrum_points(a3, {M("000")}).atoms.empty());

  FiniteSite indiscrete(2, {M("00"), M("11")});
  FiniteTSpace x(indiscrete);
  CHECK(x.spec.atoms.size() == 1);
}

TEST_CASE("finite equivalence round trips") {
  Rng rng(52);
  std::vector<FiniteSite> shapes = {FiniteSite::of_poset(FinitePoset::chain(2)),
                                    FiniteSite::of_poset(FinitePoset::chain(3)),
                                    FiniteSite::of_poset(FinitePoset::discrete(3)),
                                    diamond(),
                                    zigzag(),
                                    FiniteSite(2, {M("00"), M("11")})};
  for (const FiniteSite& site : shapes) {
    EquivalenceReport r = finite_equivalence_check(site, rng, 6);
    CHECK_MESSAGE(r.pass, r.witness);
    CHECK(r.instances == 6);
  }
}

TEST_CASE("symbolic points of the line") {
  CHECK(membership(UltraPoint::right_germ(Rational(0)), S("(0,1)")));
  CHECK_FALSE(membership(UltraPoint::principal(Rational(1)), S("(0,1)")));
  CHECK(membership(UltraPoint::left_germ(Rational(1)), S("(0,1)")));
  CHECK_FALSE(membership(UltraPoint::right_germ(Rational(1)), S("(0,1)")));
  CHECK(membership(UltraPoint::cut(frac(1, 3), frac(1, 2)), S("(0,1)")));
  CHECK_THROWS_AS(membership(UltraPoint::cut(frac(1, 3), Rational(2)), S("(0,1)")), NonRepresentable);
  CHECK_FALSE(UltraPoint::plus_infinity().in_spectrum());
  CHECK(membership(UltraPoint::plus_infinity(), S("(0,inf)")));
  CHECK_FALSE(membership(UltraPoint::plus_infinity(), S("(0,5)")));
  CHECK(UltraPoint::right_germ(Rational(0)).in_spectrum());
  for (const char* p : {"1+", "1/2-", "-3", "cut(1/3,1/2)", "+inf", "-inf"})
    CHECK(UltraPoint::parse(p).str() == std::string(p));

  Rng rng(53);
  std::vector<UltraPoint> pts;
  for (int i = 0; i < 12; ++i) {
    Rational q = random_grid_point(rng, 3, 4);
    pts.push_back(UltraPoint::principal(q));
    pts.push_back(UltraPoint::right_germ(q));
    pts.push_back(UltraPoint::left_germ(q));
    pts.push_back(UltraPoint::cut(q + frac(1, 9), q + frac(1, 8)));
  }
  for (int t = 0; t < 60; ++t) CHECK(basis_compatible(random_open(rng, 3, true), random_open(rng, 3, true), pts));
}

TEST_CASE("stalks at symbolic points") {
  ConstructibleTSheaf k01 = constant_sheaf(S("(0,1)"));
  CHECK(stalk_at(k01, UltraPoint::left_germ(Rational(1))) == 1);
  CHECK(stalk_at(k01, UltraPoint::principal(Rational(1))) == 0);
  CHECK(stalk_at(k01, UltraPoint::right_germ(Rational(1))) == 0);
  ConstructibleTSheaf kx = constant_sheaf(SemilinearSet::line());
  for (const char* p : {"0", "0+", "0-", "cut(5,6)", "-7/2"}) CHECK(stalk_at(kx, UltraPoint::parse(p)) == 1);
  ConstructibleTSheaf sk = skyscraper(Rational(1));
  CHECK(stalk_at(sk, UltraPoint::principal(Rational(1))) == 1);
  CHECK(stalk_at(sk, UltraPoint::right_germ(Rational(1))) == 0);
  CHECK(stalk_at(sk, UltraPoint::left_germ(Rational(1))) == 0);
  CHECK(stalk_at(sk, UltraPoint::principal(Rational(0))) == 0);
  CHECK_THROWS_AS(stalk_at(sk, UltraPoint::cut(Rational(0), Rational(2))), NonRepresentable);
  CHECK_THROWS_AS(stalk_at(sk, UltraPoint::plus_infinity()), std::invalid_argument);

  Rng rng(54);
  for (int t = 0; t < 30; ++t) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    for (const UltraPoint& a : detection_points(f.cx)) CHECK(stalk_by_colimit(f, a) == stalk_at(f, a));
    Rational q = random_grid_point(rng, 3, 2);
    for (const UltraPoint& a : {UltraPoint::principal(q), UltraPoint::right_germ(q), UltraPoint::left_germ(q)})
      CHECK(stalk_by_colimit(f, a) == stalk_at(f, a));
    SemilinearSet u = random_open(rng, 3, t % 2 == 0);
    CHECK(sections_from_stalks(f, u) == sections_dim(f, u));
  }
}

TEST_CASE("stalks detect monomorphisms, epimorphisms and isomorphisms") {
  TSheafMap inc = inclusion_map(S("(0,1)+(2,3)"), S("(0,3)"));
  DetectionReport d = stalk_detection(inc);
  CHECK(d.mono);
  CHECK_FALSE(d.epi);
  CHECK(d.agrees());
  ConstructibleTSheaf q = cokernel(inc).sheaf;
  for (const UltraPoint& a : detection_points(cells({Rational(0), Rational(1), Rational(2), Rational(3)}))) {
    Rational x = a.kind == UltraPoint::Kind::Cut ? Rational((a.lo + a.hi) / 2) : a.q;
    CHECK((stalk_at(q, a) == 1) == (x >= 1 && x <= 2));
  }
  ConstructibleTSheaf k = constant_sheaf(S("(0,2)"));
  TSheafMap z{k, k, zero_map(k.data, k.data)};
  for (const UltraPoint& a : detection_points(k.cx)) CHECK(stalk_map(z, a).is_zero());
  CHECK(stalk_detection(identity_tmap(k)).iso);

  Rng rng(55);
  int mono = 0, epi = 0, iso = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<Rational> e = random_endpoints(rng, 3);
    ConstructibleTSheaf f = random_tsheaf(rng, e, 2);
    ConstructibleTSheaf g = random_tsheaf(rng, e, 2);
    TSheafMap phi = random_tmap(f, g, rng);
    for (const TSheafMap& m : {phi, kernel(phi).incl, cokernel(phi).proj, identity_tmap(f)}) {
      DetectionReport r = stalk_detection(m);
      CHECK(r.agrees());
      mono += r.mono;
      epi += r.epi;
      iso += r.iso;
    }
    TShortExact s = random_extension(rng, random_tsheaf(rng, e, 2), random_tsheaf(rng, random_endpoints(rng, 3), 2));
    CHECK(stalks_exact(s));
  }
  CHECK(mono > 60);
  CHECK(epi > 60);
  CHECK(iso >= 60);
}
