#include <doctest.h>

#include "tsite/tsheaf.hpp"

using namespace tsite;

namespace {

SemilinearSet S(const std::string& s) { return SemilinearSet::parse(s); }

std::vector<Rational> pts(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

bool is_iso(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

TEST_CASE("constant sheaf on an interval") {
  ConstructibleTSheaf k = constant_sheaf(S("(0,1)"));
  CHECK(k.endpoints() == pts({0, 1}));
  CHECK(k.data.dims() == std::vector<int>{0, 0, 1, 0, 0});
  CHECK(sections_dim(k, S("(0,1)")) == 1);
  CHECK(sections_dim(k, S("(0,2)")) == 0);
  CHECK(sections_dim(k, S("(-1,1/2)")) == 0);
  CHECK(sections_dim(k, S("(1/4,1/2)")) == 1);
  CHECK(k.has_bounded_support());
  CHECK(k.support() == S("(0,1)"));
  CHECK(constant_sheaf(S("[0,1)+{2}")).data.dims() == std::vector<int>{0, 1, 1, 0, 0, 1, 0});
  CHECK_THROWS(sections_dim(k, S("[0,1)")));
}

TEST_CASE("constructions agree with pointwise stalk arithmetic") {
  ConstructibleTSheaf a = constant_sheaf(S("(0,2)"));
  ConstructibleTSheaf b = constant_sheaf(S("(1,3)"));
  CHECK(same_up_to_refinement(tensor(a, b), constant_sheaf(S("(1,2)"))));

  TSheafMap inc = inclusion_map(S("(0,1)+(2,3)"), S("(0,3)"));
  REQUIRE(inc.valid());
  TCokernel c = cokernel(inc);
  CHECK(same_up_to_refinement(c.sheaf, constant_sheaf(S("[1,2]"))));
  CHECK(kernel(inc).sheaf.data.dims() == std::vector<int>(inc.src.cx.size(), 0));

  ConstructibleTSheaf k = constant_sheaf(S("(0,1)"));
  TKernel z = kernel(identity_tmap(k));
  CHECK(same_up_to_refinement(z.sheaf, ConstructibleTSheaf::zero()));
  CHECK(same_up_to_refinement(cokernel(TSheafMap{ConstructibleTSheaf::zero().refine(k.endpoints()), k,
                                                 zero_map(CellularSheaf::zero(k.data.poset()), k.data)})
                                  .sheaf,
                              k));
  CHECK(hom_dim(constant_sheaf(S("(0,2)")), constant_sheaf(S("(0,1)"))) == 0);
  CHECK(hom_dim(constant_sheaf(S("(0,1)")), constant_sheaf(S("(0,2)"))) == 1);
  CHECK(sections_dim(sheaf_hom(a, a), S("(0,2)")) == 1);
}

TEST_CASE("evaluation over T_loc opens") {
  ConstructibleTSheaf kx = constant_sheaf(SemilinearSet::line());
  ProObject p = evaluate_tloc(kx, TlocOpen::whole_line(), 6);
  CHECK(p.stable);
  CHECK(p.limit_dim == 1);

  ConstructibleTSheaf k02 = constant_sheaf(S("(0,2)"));
  CHECK(sections_dim(k02, S("(0,1)+(1,2)")) == 2);
  ProObject q = evaluate_tloc(k02, TlocOpen::finite(S("(0,1)+(1,2)")), 4);
  CHECK(q.stable);
  CHECK(q.limit_dim == 2);

  ProObject z = evaluate_tloc(PeriodicSheaf::integer_skyscrapers(), TlocOpen::whole_line(), 5);
  REQUIRE(z.stage_dims.size() >= 3);
  CHECK(z.stage_dims[0] == 1);
  CHECK(z.stage_dims[1] == 3);
  CHECK(z.stage_dims[2] == 5);
  CHECK_FALSE(z.stable);

  // A periodic open against a finite sheaf: only finitely many components meet the support.
  ProObject w = evaluate_tloc(constant_sheaf(S("(-2,3)")), TlocOpen::periodic(S("(0,1/2)"), Rational(1)), 4);
  CHECK(w.stable);
  CHECK(w.limit_dim == 5);
}

TEST_CASE("periodic window matches the periodic data") {
  PeriodicSheaf p = PeriodicSheaf::integer_skyscrapers();
  ConstructibleTSheaf w = p.window(3);
  for (long n = -3; n <= 3; ++n) CHECK(w.data.dim(w.cx.locate(Rational(n))) == 1);
  CHECK(w.data.dim(w.cx.locate(frac(1, 2))) == 0);
  CHECK(sections_dim(w, S("(-3/2,3/2)")) == 3);
}

TEST_CASE("refinement never changes section spaces") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    ConstructibleTSheaf g = f.refine(random_endpoints(rng, 4));
    CHECK(same_up_to_refinement(f, g));
    SemilinearSet u = random_open(rng, 3, true);
    SemilinearSet v = unite(u, random_open(rng, 2, true));
    SectionSpace a = cell_sections(f, u);
    SectionSpace b = cell_sections(g, u);
    CHECK(a.dim() == b.dim());
    CHECK(restriction_on(f, v, u) == restriction_on(g, v, u));
    auto iso = find_isomorphism(f, g);
    CHECK(iso.has_value());
  }
}

TEST_CASE("restrictions compose") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    SemilinearSet a = random_open(rng, 3, true);
    SemilinearSet b = intersect(a, random_open(rng, 3, true));
    SemilinearSet c = intersect(b, random_open(rng, 3, true));
    CHECK(restriction_on(f, a, c) == restriction_on(f, b, c) * restriction_on(f, a, b));
  }
}

TEST_CASE("sheaf axiom checker") {
  ConstructibleTSheaf k = constant_sheaf(S("(0,1)"));
  AxiomReport r = sheaf_axioms_check(sections_tpresheaf(k), 12, 1);
  CHECK(r.pass);
  CHECK(r.pairs >= 12);
  CHECK(r.coverings > 0);
  AxiomReport s = sheaf_axioms_check(
      sections_tpresheaf(direct_sum(constant_sheaf(S("(0,2)")), constant_sheaf(S("[1,3)")))), 12, 2);
  CHECK(s.pass);

  AxiomReport c = sheaf_axioms_check(constant_tpresheaf(), 12, 3);
  CHECK_FALSE(c.pass);
  CHECK(c.witness.find("gluing") != std::string::npos);
  CHECK_FALSE(gluing_exact(constant_tpresheaf(), S("(0,1)"), S("(2,3)")));

  AxiomReport b = sheaf_axioms_check(rescaled_tpresheaf(constant_sheaf(S("(-5,5)"))), 12, 4);
  CHECK_FALSE(b.pass);
  CHECK_FALSE(b.witness.empty());
}

TEST_CASE("gluing is exact for random constructible sheaves") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    TPresheaf p = sections_tpresheaf(f);
    CHECK(gluing_exact(p, random_open(rng, 3, true), random_open(rng, 3, true)));
  }
}

TEST_CASE("sections are left exact") {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> e = random_endpoints(rng, 3);
    ConstructibleTSheaf f = random_tsheaf(rng, e, 2);
    ConstructibleTSheaf g = random_tsheaf(rng, e, 2);
    TSheafMap phi = random_tmap(f, g, rng);
    REQUIRE(phi.valid());
    TKernel k = kernel(phi);
    SemilinearSet u = random_open(rng, 3, true);
    Matrix gi = section_map_on(k.incl, u);
    Matrix gp = section_map_on(phi, u);
    CHECK(is_injective(gi));
    CHECK((gp * gi).is_zero());
    CHECK(rank(gi) == gp.cols() - rank(gp));
  }
}

TEST_CASE("ind-systems") {
  ConstructibleTSheaf kx = constant_sheaf(SemilinearSet::line());
  IndSheaf s = growing_ind(kx, Rational(0), Rational(1));
  SemilinearSet u = S("(1/2,1)");
  CHECK(same_up_to_refinement(s.stage(1), constant_sheaf(u)));
  CHECK(sections_dim(s.stage(1), u) == 1);
  CHECK(is_iso(section_map_on(s.transition(1), u)));
  CHECK(ind_colimit_sections(s, u) == 1);

  Rng rng(5);
  ConstructibleTSheaf f = random_tsheaf(rng, pts({0, 2}), 2);
  IndSheaf c = constant_ind(f);
  CHECK(ind_colimit_sections(c, S("(-1,1)")) == sections_dim(f, S("(-1,1)")));

  IndSheaf bad = unbounded_ind();
  CHECK(sections_dim(bad.stage(3), S("(0,1)")) == 3);
  CHECK_THROWS_AS(ind_colimit_sections(bad, S("(0,1)")), CertificateViolation);
}

TEST_CASE("ind colimits commute with sections") {
  Rng rng(25);
  for (int trial = 0; trial < 15; ++trial) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    Rational a = random_grid_point(rng, 2, 2);
    Rational b = a + Rational(rng.uniform(1, 3));
    IndSheaf s = growing_ind(f, a, b);
    SemilinearSet u = random_open(rng, 3, true);
    int n0 = s.certificate(u);
    int d = ind_colimit_sections(s, u);
    CHECK(d == sections_dim(s.stage(n0 + 3), u));
    CHECK(d == stalkwise_colimit_sections(s, u));
    CHECK(is_iso(ind_transition_on(s, u, n0, n0 + 3)));
  }
  IndSheaf s = growing_ind(constant_sheaf(SemilinearSet::line()), Rational(0), Rational(2));
  AxiomReport r = sheaf_axioms_check(ind_colimit_presheaf(s), 8, 6);
  CHECK(r.pass);
}
