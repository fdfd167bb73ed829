#include "tsite/criteria.hpp"

#include <sstream>

#include "tsite/backends.hpp"
#include "tsite/functors.hpp"
#include "tsite/homalg.hpp"
#include "tsite/oracles.hpp"
#include "tsite/spectrum.hpp"

namespace tsite {

namespace {

SemilinearSet S(const std::string& s) { return SemilinearSet::parse(s); }

struct Tally {
  CriterionResult r;
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (r.pass) r.witness = what;
    r.pass = false;
  }
};

std::string str_of(int n) { return std::to_string(n); }

// ---------------------------------------------------------------- 1

CriterionResult inverse_image_of_pushforward(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x101);
  int count = 100 * scale;
  for (int i = 0; i < count; ++i) {
    XSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    std::vector<SemilinearSet> opens = {SemilinearSet::line()};
    for (int j = 0; j < 4; ++j) opens.push_back(random_open(rng, 3, j % 2 == 0));
    UnitReport u = rho_inv_star_check(f, opens);
    t.check(u.pass, f.str() + ": " + u.witness);
    XSheaf g = random_tsheaf(rng, f.cx.E, 2);
    TSheafMap phi = random_tmap(f, g, rng);
    SemilinearSet w = random_open(rng, 3, false);
    t.check(rho_inv_natural(phi, w), "naturality square fails on " + w.str());
    ++t.r.instances;
  }
  t.r.detail = str_of(t.r.instances) + " sheaves, 5 opens each";
  return t.r;
}

// ---------------------------------------------------------------- 2

CriterionResult sections_commute_with_ind_colimits(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x202);
  int count = 51 * scale;
  int opens = 0;
  for (int i = 0; i < count; ++i) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    IndSheaf s;
    if (i % 3 == 0) {
      Rational a = random_grid_point(rng, 3, 2);
      s = growing_ind(f, a, a + Rational(rng.uniform(1, 3)));
    } else if (i % 3 == 1) {
      s = constant_ind(f);
    } else {
      s = rho_shriek(f);
    }
    for (int j = 0; j < 5; ++j) {
      SemilinearSet u = random_open(rng, 3, true);
      try {
        int a = ind_colimit_sections(s, u);
        int b = stalkwise_colimit_sections(s, u);
        t.check(a == b, s.name + " on " + u.str() + ": colim of sections " + str_of(a) +
                            ", sections of colim " + str_of(b));
      } catch (const CertificateViolation& e) {
        t.check(false, s.name + " on " + u.str() + ": " + e.what());
      }
      ++opens;
    }
    ++t.r.instances;
  }
  bool caught = false;
  try {
    ind_colimit_sections(unbounded_ind(), S("(0,1)"));
  } catch (const CertificateViolation&) {
    caught = true;
  }
  t.check(caught, "a false stabilization certificate was accepted");
  t.r.detail = str_of(t.r.instances) + " ind-systems, " + str_of(opens) + " bounded opens; false certificate rejected";
  return t.r;
}

// ---------------------------------------------------------------- 3

CriterionResult two_open_gluing(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x303);
  int count = 200 * scale;
  for (int i = 0; i < count; ++i) {
    ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 4), 2);
    SemilinearSet u = random_open(rng, 3, true);
    SemilinearSet v = random_open(rng, 3, true);
    t.check(gluing_exact(sections_tpresheaf(f), u, v), f.str() + " on " + u.str() + ", " + v.str());
    ++t.r.instances;
  }
  TPresheaf c = constant_tpresheaf();
  t.check(!gluing_exact(c, S("(0,1)"), S("(2,3)")), "constant presheaf glued on disjoint opens");
  t.check(!sheaf_axioms_check(c, 12, seed).pass, "constant presheaf passed the sheaf axioms");
  t.check(!sheaf_axioms_check(rescaled_tpresheaf(constant_sheaf(S("(-5,5)"))), 12, seed).pass,
          "rescaled presheaf passed the sheaf axioms");
  t.r.detail = str_of(t.r.instances) + " triples; constant and rescaled presheaves rejected";
  return t.r;
}

// ---------------------------------------------------------------- 4

CriterionResult constant_sheaf_two_constructions(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x404);
  std::vector<SemilinearSet> opens = {S("(0,1)+(1,2)"), SemilinearSet::line(), S("(-inf,0)+(1,inf)")};
  int count = 50 * scale;
  while (static_cast<int>(opens.size()) < count) opens.push_back(random_open(rng, 3, rng.coin(2, 3)));
  int connected = 0;
  for (const SemilinearSet& u : opens) {
    TwoWaysReport r = constant_sheaf_two_ways(u);
    t.check(r.pass, r.witness);
    connected += r.connected;
    ++t.r.instances;
  }
  t.r.detail = str_of(t.r.instances) + " opens, " + str_of(connected) + " connected subopens compared directly";
  return t.r;
}

// ---------------------------------------------------------------- 5

CriterionResult coherent_presentations(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x505);
  int count = 60 * scale;
  int presented = 0;
  auto present = [&](const ConstructibleTSheaf& f, const std::string& what) {
    auto p = coherent_presentation(f);
    bool ok = p && p->exact && p->stalk_exact;
    if (p)
      for (const SemilinearSet& u : p->generators) ok = ok && u.is_bounded() && u.is_open();
    t.check(ok, what + " " + f.str() + " has no verified presentation");
    ++presented;
  };
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> e = random_endpoints(rng, 3);
    ConstructibleTSheaf f = random_tsheaf(rng, e, 2, true);
    ConstructibleTSheaf g = random_tsheaf(rng, e, 2, true);
    present(f, "random");
    TSheafMap phi = random_tmap(f, g, rng);
    present(kernel(phi).sheaf, "kernel");
    present(cokernel(phi).sheaf, "cokernel");
    present(tensor(f, g), "tensor");
    ++t.r.instances;
  }
  t.check(!coherent_presentation(constant_sheaf(SemilinearSet::line())).has_value(),
          "k on the whole line was presented by bounded opens");
  t.r.detail = str_of(t.r.instances) + " bounded-support sheaves, " + str_of(presented) + " presentations verified";
  return t.r;
}

// ---------------------------------------------------------------- 6

CriterionResult shriek_adjunction(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x606);
  int count = 50 * scale;
  for (int i = 0; i < count; ++i) {
    XSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    ConstructibleTSheaf g = random_tsheaf(rng, random_endpoints(rng, 3), 2);
    AdjunctionReport a = adjunction_check(f, g);
    t.check(a.pass && a.hom_shriek == a.hom_inv, f.str() + " / " + g.str() + ": " + a.witness);
    SemilinearSet u = random_open(rng, 3, true);
    t.check(rho_inv_shriek_check(f, u), "inverse image of shriek differs from " + f.str() + " on " + u.str());
    ++t.r.instances;
  }
  SemilinearSet u = S("(0,1)+(1,2)");
  ShriekValues v = shriek_values(constant_sheaf(SemilinearSet::line()), u);
  std::ostringstream ex;
  ex << "shriek(k_X) on " << u.str() << ": sheaf " << v.sheaf << ", unsheafified colimit " << v.presheaf_colimit
     << "; pushforward " << v.star;
  t.check(v.sheaf == 1 && v.star == 2, ex.str() + "; expected shriek 1 against pushforward 2");
  t.r.detail = str_of(t.r.instances) + " adjunction pairs; " + ex.str();
  return t.r;
}

// ---------------------------------------------------------------- 7

CriterionResult flabby_acyclicity(std::uint64_t seed, int scale) {
  Tally t;
  SuiteReport a = flabby_acyclicity_suite(seed ^ 0x707, 200 * scale);
  t.check(a.pass(), a.witnesses.empty() ? "acyclicity suite failed" : a.witnesses.front());
  SuiteReport b = flabby_counterexamples();
  t.check(b.pass(), b.witnesses.empty() ? "counterexamples failed" : b.witnesses.front());

  Rng rng(seed ^ 0x717);
  int sampled = 0, flabby = 0;
  for (int i = 0; i < 40 * scale; ++i) {
    ConstructibleTSheaf f = i % 2 ? random_skyscraper_sum(rng, 3, 2)
                                  : random_tsheaf(rng, random_endpoints(rng, 3), 2, i % 4 == 0);
    FlabbyExtReport r = flabby_ext_criterion(f, rng, 6);
    t.check(r.consistent(), f.str() + ": " + r.witness);
    ++sampled;
    flabby += r.flabby;
  }
  ConstructibleTSheaf k01 = constant_sheaf(S("(0,1)"));
  int les = ext1_boundary_les(k01, S("(0,1)+(2,3)"), S("(0,3)"));
  int res = ext_dim(boundary_sheaf(S("(0,1)+(2,3)"), S("(0,3)")), k01, 1);
  t.check(les == 1 && res == 1, "Ext1(k_[1,2], k_(0,1)): sequence " + str_of(les) + ", resolution " + str_of(res));
  t.r.instances = a.instances;
  t.r.detail = str_of(a.instances) + " sequences; flabby criterion consistent on " + str_of(sampled) + " sheaves (" +
               str_of(flabby) + " flabby); Ext1(k_[1,2], k_(0,1)) = " + str_of(les) + " = " + str_of(res);
  return t.r;
}

// ---------------------------------------------------------------- 8

CriterionResult csoft_theory(std::uint64_t seed, int scale) {
  Tally t;
  SuiteReport s = csoft_suite(seed ^ 0x808, 100 * scale);
  t.check(s.pass(), s.witnesses.empty() ? "c-soft suite failed" : s.witnesses.front());
  t.r.instances = s.instances;
  t.r.detail = str_of(s.instances) + " instances, " + str_of(s.checks) + " checks";
  return t.r;
}

// ---------------------------------------------------------------- 9

CriterionResult global_flabbiness(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0x909);
  int count = 51 * scale;
  int flabby = 0;
  for (int i = 0; i < count; ++i) {
    ConstructibleTSheaf f = i % 3 == 0   ? random_skyscraper_sum(rng, 3, 2)
                            : i % 3 == 1 ? random_tsheaf(rng, random_endpoints(rng, 3), 1, true)
                                         : random_tsheaf(rng, random_endpoints(rng, 3), 2);
    bool local = is_flabby(f).flabby;
    flabby += local;
    std::vector<TlocOpen> opens = tloc_sample_opens(f, rng, 6);
    int d = conclusive_depth(f, opens);
    for (int depth = d; depth <= d + 2; ++depth) {
      GlobalFlabbyReport g = is_flabby_global(f, depth, opens);
      t.check(g.conclusive, f.str() + ": depth " + str_of(depth) + " inconclusive");
      t.check(g.surjective == local, f.str() + " at depth " + str_of(depth) + ": local " + str_of(local) +
                                         ", global " + str_of(g.surjective) + " " + g.witness);
    }
    ++t.r.instances;
  }
  t.r.detail = str_of(t.r.instances) + " sheaves (" + str_of(flabby) + " flabby), 3 depths each";
  return t.r;
}

// ---------------------------------------------------------------- 10

CriterionResult spectrum_equivalence(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0xA0A);
  int finite = 0, shapes = 0;
  for (const NamedSite& s : finite_shapes()) {
    EquivalenceReport r = finite_equivalence_check(s.site, rng, 8 * scale);
    t.check(r.pass, s.name + ": " + r.witness);
    finite += r.instances;
    ++shapes;
  }
  int maps = 0;
  for (int i = 0; i < 50 * scale; ++i) {
    std::vector<Rational> e = random_endpoints(rng, 3);
    ConstructibleTSheaf f = random_tsheaf(rng, e, 2);
    ConstructibleTSheaf g = random_tsheaf(rng, e, 2);
    TSheafMap phi = random_tmap(f, g, rng);
    for (const TSheafMap& m : {phi, kernel(phi).incl, cokernel(phi).proj, identity_tmap(f)}) {
      DetectionReport d = stalk_detection(m);
      t.check(d.agrees(), "stalks and cells disagree on a map out of " + m.src.str());
      ++maps;
    }
  }
  t.r.instances = finite + maps;
  t.r.detail = str_of(finite) + " finite instances over " + str_of(shapes) + " shapes, " + str_of(maps) +
               " line maps";
  return t.r;
}

// ---------------------------------------------------------------- 11

// U ↦ im Γ(U; E), the sectionwise colimit of F -e-> F -e-> ... with E = e^N.
Presheaf image_presheaf(const CellularSheaf& f, const SheafMap& big) {
  FiniteSite site = FiniteSite::of_poset(f.poset());
  std::vector<SectionSpace> s;
  std::vector<Matrix> b;
  std::vector<int> dims;
  for (const Mask& u : site.opens()) {
    s.push_back(sections(f, u));
    b.push_back(image_basis(section_map(f, f, big, s.back(), s.back())));
    dims.push_back(b.back().cols());
  }
  CellularSheaf data(site.inclusion_poset(), dims);
  for (auto [v, w] : site.inclusion_poset().hasse()) {
    auto x = solve(b[w], restriction(f, s[v], s[w]) * b[v]);
    if (!x) throw std::logic_error("image presheaf is not closed under restriction");
    data.set_map(v, w, *x);
  }
  return Presheaf{site, data};
}

CriterionResult plus_construction_on_finite_spaces(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0xB0B);
  std::vector<NamedSite> sites = finite_shapes();
  for (const FinitePoset& p : all_posets(3)) sites.push_back({"poset " + p.str(), FiniteSite::of_poset(p)});
  int plus_checks = 0, sheaves = 0, colims = 0;
  for (const NamedSite& ns : sites) {
    const FiniteSite& site = ns.site;
    int x = site.whole_index();
    for (int k = 0; k < 4 * scale; ++k) {
      Presheaf p = random_presheaf(site, rng, 2);
      PlusResult once = plus_construction(p);
      PlusResult twice = sheafify(p);
      for (int u = 0; u < site.num_opens(); ++u) {
        int inside = 0;
        for (int w = 0; w < site.num_opens(); ++w) inside += site.contained(w, u);
        if (inside <= kBrutePlusRoutineOpens)
          t.check(once.plus.dim(u) == brute_plus_dim(p, u), ns.name + ": plus construction differs from the oracle");
      }
      t.check(is_sheaf(twice.plus), ns.name + ": sheafification is not a sheaf");
      ++plus_checks;
    }
    for (int k = 0; k < 4 * scale; ++k) {
      Presheaf p = sheafify(random_presheaf(site, rng, 2)).plus;
      PlusResult r = sheafify(p);
      t.check(static_cast<bool>(inverse(r.unit[x])), ns.name + ": F(X) -> F++(X) is not an isomorphism");
      ++sheaves;
    }
  }
  for (int n = 1; n <= 4; ++n)
    for (const FinitePoset& poset : all_posets(n)) {
      if (colims >= 30 * scale) break;
      CellularSheaf f = random_sheaf(poset, rng, 2);
      SheafMap e = random_map(f, f, rng);
      SheafMap big = identity_map(f);
      for (int i = 0; i <= f.total_dim(); ++i) big = compose(e, big);
      int lhs = sections_dim(image(f, f, big).sheaf, poset.all());
      SectionSpace sx = sections(f, poset.all());
      int direct = rank(section_map(f, f, big, sx, sx));
      Presheaf q = image_presheaf(f, big);
      PlusResult qs = sheafify(q);
      int x = q.site.whole_index();
      t.check(lhs == direct && qs.plus.dim(x) == direct && static_cast<bool>(inverse(qs.unit[x])),
              "colimit over " + poset.str() + ": sections of colim " + str_of(lhs) + ", colim of sections " +
                  str_of(direct) + ", sheafified " + str_of(qs.plus.dim(x)));
      ++colims;
    }
  t.r.instances = plus_checks + sheaves + colims;
  t.r.detail = str_of(plus_checks) + " presheaves against the covering oracle, " + str_of(sheaves) + " sheaves, " +
               str_of(colims) + " colimit systems over " + str_of(static_cast<int>(sites.size())) + " sites";
  return t.r;
}

// ---------------------------------------------------------------- 12

CriterionResult oracle_guards(std::uint64_t seed, int scale) {
  Tally t;
  Rng rng(seed ^ 0xC0C);
  int posets = 0, sheaves = 0, flabby = 0, ext_pairs = 0;
  for (int n = 1; n <= 5; ++n)
    for (const FinitePoset& p : all_posets(n)) {
      ++posets;
      std::vector<CellularSheaf> fs;
      for (int k = 0; k < 2 * scale; ++k) fs.push_back(random_sheaf(p, rng, 2));
      int top = p.linear_extension().back();
      fs.push_back(direct_sum(elementary_injective(p, top), elementary_injective(p, p.linear_extension().front())).sheaf);
      for (const CellularSheaf& f : fs) {
        bool fast = !poset_flabby_failure(f).has_value();
        t.check(fast == brute_is_flabby(f), "flabbiness on " + p.str());
        flabby += fast;
        ++sheaves;
      }
      for (size_t k = 0; k + 1 < fs.size(); ++k) {
        const CellularSheaf& f = fs[k];
        const CellularSheaf& g = fs[(k + 1) % fs.size()];
        for (int deg = 0; deg <= 2; ++deg) {
          int a = ext_dim(f, g, deg);
          int b = projective_ext_dim(f, g, deg);
          t.check(a == b, "Ext" + str_of(deg) + " on " + p.str() + ": resolution " + str_of(a) +
                              ", projective " + str_of(b));
        }
        int y = yoneda_ext1_dim(f, g);
        t.check(ext_dim(f, g, 1) == y, "Ext1 on " + p.str() + " differs from extension count " + str_of(y));
        ++ext_pairs;
      }
    }
  t.r.instances = sheaves;
  t.r.detail = str_of(posets) + " posets, " + str_of(sheaves) + " sheaves (" + str_of(flabby) + " flabby), " +
               str_of(ext_pairs) + " Ext pairs in degrees 0..2";
  return t.r;
}

}  // namespace

const std::vector<CriterionSpec>& criteria() {
  static const std::vector<CriterionSpec> all = {
      {1, "inverse-image-of-pushforward", "inverse image undoes pushforward on constructible sheaves",
       inverse_image_of_pushforward},
      {2, "sections-commute-with-ind-colimits", "sections on bounded opens commute with certified ind-colimits",
       sections_commute_with_ind_colimits},
      {3, "two-open-gluing", "two-open gluing is exact and a non-sheaf is rejected", two_open_gluing},
      {4, "constant-sheaf-two-constructions", "two constructions of the constant sheaf on an open agree",
       constant_sheaf_two_constructions},
      {5, "coherent-presentations", "bounded-support sheaves and their kernels, cokernels, tensors are presented",
       coherent_presentations},
      {6, "shriek-adjunction", "shriek is left adjoint to the inverse image; distinguishing value",
       shriek_adjunction},
      {7, "flabby-acyclicity", "flabby first terms give exact sections and Hom; flabby Ext criterion",
       flabby_acyclicity},
      {8, "csoft-theory", "c-soft closure exactness, quotients and exhaustion", csoft_theory},
      {9, "global-flabbiness", "flabbiness equals global restriction surjectivity on locally finite opens",
       global_flabbiness},
      {10, "spectrum-equivalence", "finite spectra round trip and stalks detect mono, epi, iso",
       spectrum_equivalence},
      {11, "plus-construction-on-finite-spaces", "sheafification and colimits commute with global sections",
       plus_construction_on_finite_spaces},
      {12, "oracle-guards", "flabbiness and Ext agree with brute-force oracles on posets up to 5 elements",
       oracle_guards},
  };
  return all;
}

CriterionResult run_criterion(const CriterionSpec& c, std::uint64_t seed, int scale) {
  CriterionResult r;
  try {
    r = c.run(seed, scale < 1 ? 1 : scale);
  } catch (const std::exception& e) {
    r.pass = false;
    r.witness = std::string("exception: ") + e.what();
  }
  r.number = c.number;
  r.id = c.id;
  r.title = c.title;
  return r;
}

}  // namespace tsite
