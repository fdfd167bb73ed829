#include <doctest.h>

#include "tsite/backends.hpp"
#include "tsite/homalg.hpp"
#include "tsite/io.hpp"
#include "tsite/suite.hpp"

using namespace tsite;

namespace {

SemilinearSet S(const std::string& s) { return SemilinearSet::parse(s); }

}  // namespace

TEST_CASE("finite generators") {
  CHECK(gen_finite("sierpinski").size() == 2);
  CHECK(gen_finite_site("sierpinski").num_opens() == 3);
  CHECK(gen_finite_site("discrete", {3}).num_opens() == 8);
  CHECK(gen_finite("chain", {4}).opens().size() == 5);

  FinitePoset c = gen_finite("conic_toy", {2, 2});
  CHECK(c.size() == 6);
  int opens_with_base = 0;
  for (const Mask& u : c.opens())
    for (int b : {c.index_of("z0"), c.index_of("z1")})
      if (u[b]) {
        ++opens_with_base;
        for (int r = 0; r < 2; ++r) CHECK(u[c.index_of(c.name(b) + "r" + std::to_string(r))]);
      }
  CHECK(opens_with_base > 0);

  FinitePoset z = gen_finite("zigzag", {2});
  CHECK(z.size() == 4);
  CHECK(z.leq(z.index_of("v1"), z.index_of("e0")));
  FiniteSite ind = gen_finite_site("indiscrete", {3});
  CHECK(ind.num_opens() == 2);

  CHECK_THROWS_AS(gen_finite("chain", {kMaxFinitePoints + 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_finite("conic_toy", {4, 3}), std::invalid_argument);
  CHECK_THROWS_AS(gen_finite("moebius"), std::invalid_argument);
  CHECK(finite_shapes().size() >= 5);
}

TEST_CASE("line generators") {
  CHECK(same_up_to_refinement(gen_line_sheaf("boundary((0,1)+(2,3),(0,3))"), constant_sheaf(S("[1,2]"))));
  CHECK(same_up_to_refinement(gen_line_sheaf("constant((0,1))"), constant_sheaf(S("(0,1)"))));
  CHECK(same_up_to_refinement(gen_line_sheaf("skyscraper(1/2)"), skyscraper(frac(1, 2))));
  ConstructibleTSheaf a = gen_line_sheaf("random(7,{0,1,2},2)");
  ConstructibleTSheaf b = gen_line_sheaf("random(7, {0, 1, 2}, 2)");
  CHECK(a.cx.E.size() == 3);
  CHECK(a.data.is_functorial());
  CHECK(same_up_to_refinement(a, b));
  CHECK(sheaf_axioms_check(sections_tpresheaf(a), 6, 7).pass);
  CHECK_THROWS_AS(gen_line_sheaf("constant((0,1),(2,3))"), std::invalid_argument);
  CHECK_THROWS_AS(gen_line_sheaf("random(1,0,1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(gen_line_sheaf("torus(1)"), std::invalid_argument);

  GeneratorCall g = parse_generator("boundary((0,1)+(2,3), (0,3))");
  CHECK(g.name == "boundary");
  REQUIRE(g.args.size() == 2);
  CHECK(g.args[0] == "(0,1)+(2,3)");
  CHECK(g.args[1] == "(0,3)");
  CHECK(parse_generator("sierpinski").args.empty());
  CHECK_THROWS(parse_generator("f((1,2)"));
}

TEST_CASE("instance files round trip") {
  Rng rng(71);
  for (const char* name : {"sierpinski", "diamond", "zigzag", "conic_toy"}) {
    FiniteInstance inst;
    inst.name = name;
    inst.poset = gen_finite(name);
    inst.site = FiniteSite::of_poset(*inst.poset);
    inst.sheaf = random_sheaf(*inst.poset, rng, 2);
    FiniteInstance back = finite_instance_from_json(Json::parse(finite_instance_to_json(inst).dump()));
    CHECK(back.name == inst.name);
    CHECK(*back.poset == *inst.poset);
    CHECK(back.site.opens() == inst.site.opens());
    CHECK(back.sheaf->dims() == inst.sheaf->dims());
    for (auto [p, q] : inst.poset->hasse()) CHECK(back.sheaf->cover_map(p, q) == inst.sheaf->cover_map(p, q));
  }
  FiniteInstance ind{"indiscrete", std::nullopt, gen_finite_site("indiscrete", {2}), std::nullopt};
  CHECK(finite_instance_from_json(finite_instance_to_json(ind)).site.opens() == ind.site.opens());

  for (int t = 0; t < 20; ++t) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    ConstructibleTSheaf g = tsheaf_from_json(Json::parse(tsheaf_to_json(f).dump()));
    CHECK(same_up_to_refinement(f, g));
  }

  Json bad = tsheaf_to_json(constant_sheaf(S("(0,1)")));
  bad["maps"][0]["matrix"]["entries"][0] = "2";
  CHECK_THROWS_AS(tsheaf_from_json(bad), std::invalid_argument);
  Json wrong = tsheaf_to_json(constant_sheaf(S("(0,1)")));
  wrong["format"] = "other";
  CHECK_THROWS_AS(tsheaf_from_json(wrong), std::invalid_argument);
  Json shape = tsheaf_to_json(constant_sheaf(S("(0,1)")));
  shape["dims"].push_back(1);
  CHECK_THROWS_AS(tsheaf_from_json(shape), std::invalid_argument);
}

TEST_CASE("suite reports are deterministic and filterable") {
  SuiteRun a = run_suite(5, 1, "spectrum.basis");
  SuiteRun b = run_suite(5, 1, "spectrum.basis");
  REQUIRE(a.items.size() == 1);
  CHECK(a.pass());
  CHECK(render_text(a) == render_text(b));
  CHECK(render_json(a) == render_json(b));
  CHECK(run_suite(5, 1, "no-such-item").items.empty());
  std::vector<std::string> ids = suite_ids();
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK(std::count_if(ids.begin(), ids.end(), [](const std::string& s) { return s.rfind("criterion-", 0) == 0; }) ==
        12);
  SuiteRun inv = run_suite(9, 1, "lineorder");
  CHECK(inv.items.size() == 2);
  CHECK(inv.pass());
}
