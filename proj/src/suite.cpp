#include "tsite/suite.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tsite/backends.hpp"
#include "tsite/criteria.hpp"
#include "tsite/functors.hpp"
#include "tsite/homalg.hpp"
#include "tsite/spectrum.hpp"

namespace tsite {

namespace {

struct Check {
  SuiteItem item;
  void operator()(bool ok, const std::string& what) {
    if (!ok && item.pass) item.witness = what;
    item.pass = item.pass && ok;
  }
};

using Runner = std::function<void(Check&, std::uint64_t, int)>;

struct Invariant {
  std::string id;
  std::string anchor;
  Runner run;
};

Matrix random_matrix(Rng& rng, int r, int c) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Scalar(rng.uniform(-2, 2));
  return m;
}

const std::vector<Invariant>& invariants() {
  static const std::vector<Invariant> all = {
      {"exactla.rank-nullity", "rank plus nullity is the column count; inverses are two-sided",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x11);
         for (int i = 0; i < 100 * scale; ++i) {
           Matrix m = random_matrix(rng, static_cast<int>(rng.uniform(0, 5)), static_cast<int>(rng.uniform(0, 5)));
           c(rank(m) + kernel_basis(m).cols() == m.cols(), "rank-nullity on " + m.str());
           if (m.rows() == m.cols())
             if (auto inv = inverse(m)) c(*inv * m == Matrix::identity(m.cols()), "left inverse on " + m.str());
           ++c.item.instances;
         }
       }},
      {"lineorder.boolean-algebra", "semilinear sets form a Boolean algebra",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x12);
         for (int i = 0; i < 100 * scale; ++i) {
           SemilinearSet a = random_set(rng, 3), b = random_set(rng, 3);
           c(complement(complement(a)) == a, "double complement of " + a.str());
           c(complement(unite(a, b)) == intersect(complement(a), complement(b)), "De Morgan on " + a.str());
           c(diff(a, b) == intersect(a, complement(b)), "difference on " + a.str() + ", " + b.str());
           ++c.item.instances;
         }
       }},
      {"lineorder.local-compactness", "open semilinear sets satisfy the three local compactness conditions",
       [](Check& c, std::uint64_t seed, int scale) {
         LwcReport r = lwc_validate(100 * scale, seed ^ 0x13);
         c(r.pass(), r.counterexamples.empty() ? "" : r.counterexamples.front());
         c.item.instances = r.lwc1 + r.lwc2 + r.lwc3;
       }},
      {"cellsheaf.equalizer", "sections on posets satisfy the two-open equalizer condition",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x14);
         for (int n = 1; n <= 4; ++n)
           for (const FinitePoset& p : all_posets(n))
             for (int k = 0; k < scale; ++k) {
               CellularSheaf f = random_sheaf(p, rng, 2);
               auto opens = p.opens();
               const Mask& u = opens[rng.uniform(0, static_cast<long>(opens.size()) - 1)];
               const Mask& v = opens[rng.uniform(0, static_cast<long>(opens.size()) - 1)];
               SectionSpace su = sections(f, u), sv = sections(f, v);
               SectionSpace sun = sections(f, mask_or(u, v)), sin = sections(f, mask_and(u, v));
               Matrix a = vstack(restriction(f, sun, su), restriction(f, sun, sv));
               Matrix b = hstack(restriction(f, su, sin), Scalar(-1) * restriction(f, sv, sin));
               c(is_injective(a) && (b * a).is_zero() && rank(a) == b.cols() - rank(b), "equalizer on " + p.str());
               ++c.item.instances;
             }
       }},
      {"presheaf.sheafification", "sheafification yields a sheaf and fixes sheaves",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x15);
         for (const NamedSite& s : finite_shapes())
           for (int k = 0; k < 5 * scale; ++k) {
             PlusResult r = sheafify(random_presheaf(s.site, rng, 2));
             c(is_sheaf(r.plus), s.name + ": sheafification is not a sheaf");
             PlusResult again = sheafify(r.plus);
             bool iso = true;
             for (const Matrix& m : again.unit) iso = iso && inverse(m).has_value();
             c(iso, s.name + ": sheafifying a sheaf changed it");
             ++c.item.instances;
           }
       }},
      {"tsheaf.sheaf-axioms", "sections of constructible sheaves satisfy the sheaf axioms",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x16);
         for (int i = 0; i < 20 * scale; ++i) {
           ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
           AxiomReport r = sheaf_axioms_check(sections_tpresheaf(f), 6, seed + i);
           c(r.pass, f.str() + ": " + r.witness);
           ++c.item.instances;
         }
       }},
      {"tsheaf.refinement-invariance", "sections do not depend on the refinement",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x17);
         for (int i = 0; i < 50 * scale; ++i) {
           ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
           ConstructibleTSheaf g = f.refine({random_grid_point(rng), random_grid_point(rng)});
           SemilinearSet u = random_open(rng, 3, rng.coin());
           c(sections_dim(f, u) == sections_dim(g, u), f.str() + " on " + u.str());
           c(same_up_to_refinement(f, g), "refinement changed " + f.str());
           ++c.item.instances;
         }
       }},
      {"functors.pushforward-flabby", "pushforward keeps flabby sheaves flabby",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x18);
         for (int i = 0; i < 20 * scale; ++i) {
           ConstructibleTSheaf f = random_skyscraper_sum(rng, 3, 2);
           SiteMap m = SiteMap::affine(frac(i % 3 + 1, 2), Rational(i % 5 - 2));
           c(is_flabby(pushforward(m, f)).flabby, "pushforward of " + f.str());
           ++c.item.instances;
         }
       }},
      {"functors.inverse-image-csoft", "inverse images of flabby sheaves are c-soft",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x19);
         for (int i = 0; i < 20 * scale; ++i) {
           ConstructibleTSheaf f = random_skyscraper_sum(rng, 3, 2);
           c(is_c_soft(f).csoft, "inverse image of " + f.str());
           ++c.item.instances;
         }
       }},
      {"functors.shriek-exact-monoidal", "shriek is exact and commutes with tensor products",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x1A);
         for (int i = 0; i < 10 * scale; ++i) {
           std::vector<Rational> e = random_endpoints(rng, 3);
           ConstructibleTSheaf a = random_tsheaf(rng, e, 2), b = random_tsheaf(rng, e, 2);
           TShortExact s = random_extension(rng, a, b);
           c(rho_shriek_exact(s.i, s.p, 3), "shriek of an exact sequence over " + a.str());
           c(rho_shriek_tensor(a, b, 3), "shriek of a tensor over " + a.str());
           ++c.item.instances;
         }
       }},
      {"homalg.flabby-ext-criterion", "flabby, vanishing Ext1, and vanishing boundary Ext1 agree",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x1B);
         for (int i = 0; i < 20 * scale; ++i) {
           ConstructibleTSheaf f = i % 2 ? random_skyscraper_sum(rng, 3, 2)
                                         : random_tsheaf(rng, random_endpoints(rng, 3), 2);
           FlabbyExtReport r = flabby_ext_criterion(f, rng, 6);
           c(r.consistent(), f.str() + ": " + r.witness);
           ++c.item.instances;
         }
       }},
      {"spectrum.ultrafilters", "ultrafilters of finite algebras are the principal ones, one per atom",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x1C);
         for (int i = 0; i < 30 * scale; ++i) {
           int n = static_cast<int>(rng.uniform(1, 6));
           std::vector<Mask> gens;
           for (int g = 0; g < 2; ++g) {
             Mask m(n);
             for (auto& bit : m) bit = rng.coin();
             gens.push_back(m);
           }
           FinBoolAlg a(n, gens);
           auto ultra = brute_ultrafilters(a);
           c(static_cast<int>(ultra.size()) == a.num_atoms(), "ultrafilter count differs from atom count");
           for (const auto& u : ultra) {
             int principal = 0;
             for (int k = 0; k < a.num_atoms(); ++k) {
               std::vector<Mask> p = principal_ultrafilter(a, k);
               principal += std::is_permutation(p.begin(), p.end(), u.begin(), u.end());
             }
             c(principal == 1, "non-principal ultrafilter");
           }
           ++c.item.instances;
         }
       }},
      {"spectrum.basis-compatibility", "tilde commutes with intersections and unions",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x1D);
         std::vector<UltraPoint> pts;
         for (int i = 0; i < 12; ++i) {
           Rational q = random_grid_point(rng, 3, 4);
           pts.push_back(UltraPoint::principal(q));
           pts.push_back(UltraPoint::right_germ(q));
           pts.push_back(UltraPoint::left_germ(q));
           pts.push_back(UltraPoint::cut(q + frac(1, 9), q + frac(1, 8)));
         }
         for (int i = 0; i < 50 * scale; ++i) {
           SemilinearSet u = random_open(rng, 3, true), v = random_open(rng, 3, true);
           c(basis_compatible(u, v, pts), u.str() + ", " + v.str());
           ++c.item.instances;
         }
       }},
      {"spectrum.stalks", "stalk sequences are exact and sections are recovered from stalks",
       [](Check& c, std::uint64_t seed, int scale) {
         Rng rng(seed ^ 0x1E);
         for (int i = 0; i < 30 * scale; ++i) {
           ConstructibleTSheaf f = random_tsheaf(rng, random_endpoints(rng, 3), 2);
           TShortExact s = random_extension(rng, f, random_tsheaf(rng, random_endpoints(rng, 3), 2));
           c(stalks_exact(s), "stalks of an extension of " + f.str());
           SemilinearSet u = random_open(rng, 3, rng.coin());
           c(sections_from_stalks(f, u) == sections_dim(f, u), f.str() + " on " + u.str());
           for (const UltraPoint& a : detection_points(f.cx))
             c(stalk_by_colimit(f, a) == stalk_at(f, a), f.str() + " at " + a.str());
           ++c.item.instances;
         }
       }},
      {"backends.generators", "generated instances are valid and deterministic",
       [](Check& c, std::uint64_t seed, int) {
         for (const NamedSite& s : finite_shapes()) {
           c(s.site.num_opens() >= 2, s.name + " has too few opens");
           ++c.item.instances;
         }
         c(gen_finite_site("sierpinski").num_opens() == 3, "sierpinski open count");
         c(gen_finite_site("discrete", {3}).num_opens() == 8, "discrete(3) open count");
         c(gen_finite("conic_toy", {2, 2}).size() == 6, "conic_toy(2,2) size");
         c(same_up_to_refinement(gen_line_sheaf("boundary((0,1)+(2,3),(0,3))"), gen_line_sheaf("constant([1,2])")),
           "boundary example");
         std::string r = "random(" + std::to_string(seed % 1000) + ",{0,1,2},2)";
         ConstructibleTSheaf a = gen_line_sheaf(r), b = gen_line_sheaf(r);
         c(a.data.is_functorial() && same_up_to_refinement(a, b), "random generator is not reproducible");
         c.item.instances += 4;
       }},
  };
  return all;
}

std::string criterion_id(const CriterionSpec& c) {
  std::ostringstream s;
  s << "criterion-" << (c.number < 10 ? "0" : "") << c.number << "." << c.id;
  return s.str();
}

}  // namespace

bool SuiteRun::pass() const {
  return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.pass; });
}

std::vector<std::string> suite_ids() {
  std::vector<std::string> ids;
  for (const Invariant& i : invariants()) ids.push_back(i.id);
  for (const CriterionSpec& c : criteria()) ids.push_back(criterion_id(c));
  std::sort(ids.begin(), ids.end());
  return ids;
}

SuiteRun run_suite(std::uint64_t seed, int scale, const std::string& filter) {
  SuiteRun run;
  run.seed = seed;
  run.scale = std::max(scale, 1);
  run.filter = filter;
  auto wanted = [&](const std::string& id) { return filter.empty() || id.find(filter) != std::string::npos; };
  for (const Invariant& inv : invariants()) {
    if (!wanted(inv.id)) continue;
    Check c;
    c.item.id = inv.id;
    c.item.anchor = inv.anchor;
    try {
      inv.run(c, seed, run.scale);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    run.items.push_back(c.item);
  }
  for (const CriterionSpec& spec : criteria()) {
    std::string id = criterion_id(spec);
    if (!wanted(id)) continue;
    CriterionResult r = run_criterion(spec, seed, run.scale);
    run.items.push_back({id, r.title, r.instances, r.pass, r.detail, r.witness});
  }
  std::sort(run.items.begin(), run.items.end(), [](const SuiteItem& a, const SuiteItem& b) { return a.id < b.id; });
  return run;
}

std::string render_text(const SuiteRun& run) {
  std::ostringstream out;
  int failed = 0, instances = 0;
  for (const SuiteItem& i : run.items) {
    out << (i.pass ? "PASS " : "FAIL ") << i.id << "  [" << i.instances << "]  " << i.anchor << "\n";
    if (!i.pass) {
      out << "     witness: " << i.witness << "\n";
      ++failed;
    }
    instances += i.instances;
  }
  out << run.items.size() - failed << "/" << run.items.size() << " items pass, " << instances
      << " instances, seed " << run.seed << ", scale " << run.scale << "\n";
  return out.str();
}

Json render_json(const SuiteRun& run) {
  Json items = Json::array();
  for (const SuiteItem& i : run.items)
    items.push_back({{"id", i.id},
                     {"anchor", i.anchor},
                     {"instances", i.instances},
                     {"status", i.pass ? "pass" : "fail"},
                     {"detail", i.detail},
                     {"witness", i.witness}});
  return Json{{"seed", run.seed}, {"scale", run.scale}, {"filter", run.filter}, {"pass", run.pass()},
              {"items", items}};
}

}  // namespace tsite
