#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "tsite/backends.hpp"
#include "tsite/functors.hpp"
#include "tsite/homalg.hpp"
#include "tsite/io.hpp"
#include "tsite/oracles.hpp"
#include "tsite/spectrum.hpp"
#include "tsite/suite.hpp"

using namespace tsite;

namespace {

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string field = "q";
  std::uint64_t seed = 1;
  int budget = 1;
};

void apply_field(const std::string& f) {
  if (f == "q" || f == "Q") {
    set_field_prime(0);
    return;
  }
  if (f.rfind("fp:", 0) != 0) throw std::invalid_argument("--field takes q or fp:<p>");
  set_field_prime(std::stoul(f.substr(3)));
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string x;
  while (std::getline(in, x, ','))
    if (!x.empty()) out.push_back(std::stoi(x));
  return out;
}

ConstructibleTSheaf load_line(const std::string& path) { return tsheaf_from_json(read_json_file(path)); }

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out, j);
}

std::string mask_str(const Mask& m) {
  std::string s = "{";
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i]) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
  return s + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sheaves on T-topologies: exact queries and the verification suite", "tsite"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "base field: q or fp:<p>");
  app.add_option("--seed", g.seed, "seed for random instances");
  app.add_option("--budget", g.budget, "instance multiplier for sampled checks")->check(CLI::PositiveNumber);
  int status = kPass;

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated instance");
  std::string gen_name, gen_params, gen_line, gen_out;
  gen->add_option("--name", gen_name, "sierpinski | chain | discrete | conic_toy | zigzag | diamond | indiscrete");
  gen->add_option("--params", gen_params, "comma-separated integers");
  gen->add_option("--line", gen_line, "line sheaf: constant(U) | skyscraper(q) | boundary(U,V) | random(s,{E},d)");
  gen->add_option("-o,--output", gen_out, "output file (stdout when absent)");
  gen->callback([&] {
    if (gen_line.empty() == gen_name.empty()) throw CLI::ValidationError("gen needs exactly one of --name, --line");
    if (!gen_line.empty()) {
      emit(tsheaf_to_json(gen_line_sheaf(gen_line)), gen_out);
      return;
    }
    FiniteInstance inst;
    inst.name = gen_name + (gen_params.empty() ? "" : "(" + gen_params + ")");
    if (gen_name == "indiscrete") {
      inst.site = gen_finite_site(gen_name, parse_ints(gen_params));
    } else {
      inst.poset = gen_finite(gen_name, parse_ints(gen_params));
      inst.site = FiniteSite::of_poset(*inst.poset);
      Rng rng(g.seed);
      inst.sheaf = random_sheaf(*inst.poset, rng, 2);
    }
    emit(finite_instance_to_json(inst), gen_out);
  });

  // sections
  auto* sec = app.add_subcommand("sections", "dimension of the sections over an open");
  std::string sec_file, sec_open;
  sec->add_option("file", sec_file, "line sheaf (.ts) or finite instance (.tp)")->required();
  sec->add_option("--open", sec_open, "open set, e.g. (0,1)+(1,2); point indices for finite instances")->required();
  sec->callback([&] {
    Json j = read_json_file(sec_file);
    if (j.value("format", "") == "tsite-finite") {
      FiniteInstance inst = finite_instance_from_json(j);
      if (!inst.sheaf) throw std::invalid_argument("instance carries no sheaf");
      Mask m(inst.poset->size(), 0);
      for (int i : parse_ints(sec_open)) m.at(i) = 1;
      if (!inst.poset->is_upset(m)) throw std::invalid_argument("not an open set of the instance");
      std::cout << "dim Γ(" << mask_str(m) << ") = " << sections_dim(*inst.sheaf, m) << "\n";
      return;
    }
    ConstructibleTSheaf f = tsheaf_from_json(j);
    SemilinearSet u = SemilinearSet::parse(sec_open);
    if (!u.is_open()) throw std::invalid_argument(u.str() + " is not open");
    std::cout << "dim Γ(" << u.str() << ") = " << sections_dim(f, u) << "\n";
  });

  // sheafify
  auto* shf = app.add_subcommand("sheafify", "plus construction of a seeded presheaf on a finite instance");
  std::string shf_file;
  shf->add_option("file", shf_file, "finite instance (.tp)")->required();
  shf->callback([&] {
    FiniteInstance inst = finite_instance_from_json(read_json_file(shf_file));
    Rng rng(g.seed);
    Presheaf p = random_presheaf(inst.site, rng, 2);
    PlusResult once = plus_construction(p);
    PlusResult twice = sheafify(p);
    std::cout << "open            P  P+  P++  oracle\n";
    for (int u = 0; u < inst.site.num_opens(); ++u) {
      int inside = 0;
      for (int w = 0; w < inst.site.num_opens(); ++w) inside += inst.site.contained(w, u);
      std::string oracle = "-";
      if (inside <= kBrutePlusRoutineOpens) {
        int b = brute_plus_dim(p, u);
        oracle = std::to_string(b);
        if (b != once.plus.dim(u)) status = kPropertyFailure;
      }
      std::printf("%-15s %2d %3d %4d  %s\n", mask_str(inst.site.open(u)).c_str(), p.dim(u), once.plus.dim(u),
                  twice.plus.dim(u), oracle.c_str());
    }
    if (!is_sheaf(twice.plus)) status = kPropertyFailure;
    std::cout << (status == kPass ? "sheafification verified\n" : "sheafification check failed\n");
  });

  // flabby
  auto* fl = app.add_subcommand("flabby", "decide flabbiness, with a witness pair when it fails");
  std::string fl_file;
  fl->add_option("file", fl_file, "line sheaf or finite instance")->required();
  fl->callback([&] {
    Json j = read_json_file(fl_file);
    if (j.value("format", "") == "tsite-finite") {
      FiniteInstance inst = finite_instance_from_json(j);
      if (!inst.sheaf) throw std::invalid_argument("instance carries no sheaf");
      auto w = poset_flabby_failure(*inst.sheaf);
      bool brute = brute_is_flabby(*inst.sheaf);
      std::cout << "flabby: " << (w ? "no" : "yes") << "\n";
      if (w) std::cout << "witness: Γ(" << mask_str(w->big) << ") -> Γ(" << mask_str(w->small) << ") not onto\n";
      std::cout << "brute-force oracle: " << (brute ? "yes" : "no") << "\n";
      if (brute == static_cast<bool>(w)) status = kPropertyFailure;
      return;
    }
    FlabbyResult r = is_flabby(load_line(fl_file));
    std::cout << "flabby: " << (r.flabby ? "yes" : "no") << "\n";
    if (r.witness)
      std::cout << "witness: Γ(" << r.witness->first.str() << ") -> Γ(" << r.witness->second.str() << ") not onto\n";
  });

  // csoft
  auto* cs = app.add_subcommand("csoft", "decide c-softness");
  std::string cs_file;
  cs->add_option("file", cs_file, "line sheaf")->required();
  cs->callback([&] {
    CSoftResult r = is_c_soft(load_line(cs_file));
    std::cout << "c-soft: " << (r.csoft ? "yes" : "no") << " (" << r.pairs << " pairs)\n";
    if (r.witness)
      std::cout << "witness: Γ(" << r.witness->first.str() << ") -> Γ(closure " << r.witness->second.str()
                << ") not onto\n";
    if (!r.colimit_agrees) status = kPropertyFailure;
  });

  // coherent
  auto* co = app.add_subcommand("coherent", "finite presentation by sums of k_U with U bounded");
  std::string co_file, co_emit;
  co->add_option("file", co_file, "line sheaf")->required();
  co->add_option("--emit-presentation", co_emit, "write generators and relations as JSON");
  co->callback([&] {
    auto p = coherent_presentation(load_line(co_file));
    if (!p) {
      std::cout << "coherent: no (unbounded support)\n";
      return;
    }
    std::cout << "coherent: yes\n";
    for (const auto& u : p->generators) std::cout << "  generator k_" << u.str() << "\n";
    for (const auto& v : p->relations) std::cout << "  relation  k_" << v.str() << "\n";
    std::cout << "exact: " << (p->exact ? "yes" : "no") << ", on stalks: " << (p->stalk_exact ? "yes" : "no") << "\n";
    if (!p->exact || !p->stalk_exact) status = kPropertyFailure;
    if (!co_emit.empty()) {
      Json gens = Json::array(), rels = Json::array();
      for (const auto& u : p->generators) gens.push_back(u.str());
      for (const auto& v : p->relations) rels.push_back(v.str());
      write_json_file(co_emit, Json{{"generators", gens},
                                    {"relations", rels},
                                    {"pi", cellular_to_json(p->pi.src.data)},
                                    {"exact", p->exact}});
    }
  });

  // ext
  auto* ex = app.add_subcommand("ext", "Ext^n(A, B) through an injective resolution of B");
  std::string ex_a, ex_b;
  int ex_deg = 1;
  std::vector<std::string> ex_les;
  ex->add_option("source", ex_a, "line sheaf A")->required();
  ex->add_option("target", ex_b, "line sheaf B")->required();
  ex->add_option("--degree", ex_deg, "n")->check(CLI::NonNegativeNumber);
  ex->add_option("--les", ex_les, "U V: also compute Ext1(k_{V-U}, B) from the long exact sequence")->expected(2);
  ex->callback([&] {
    ConstructibleTSheaf a = load_line(ex_a), b = load_line(ex_b);
    int d = ext_dim(a, b, ex_deg);
    std::cout << "dim Ext^" << ex_deg << " = " << d << "\n";
    if (ex_les.size() == 2) {
      SemilinearSet u = SemilinearSet::parse(ex_les[0]), v = SemilinearSet::parse(ex_les[1]);
      int les = ext1_boundary_les(b, u, v);
      int res = ext_dim(boundary_sheaf(u, v), b, 1);
      std::cout << "Ext^1(k_{V-U}, B): long exact sequence " << les << ", resolution " << res << "\n";
      if (les != res) status = kPropertyFailure;
    }
  });

  // rho
  auto* rho = app.add_subcommand("rho", "sections of the shriek, inverse image or pushforward");
  std::string rho_file, rho_op = "star", rho_open;
  rho->add_option("file", rho_file, "line sheaf")->required();
  rho->add_option("--op", rho_op, "shriek | inv | star")->check(CLI::IsMember({"shriek", "inv", "star"}));
  rho->add_option("--open", rho_open, "open set")->required();
  rho->callback([&] {
    ConstructibleTSheaf f = load_line(rho_file);
    SemilinearSet u = SemilinearSet::parse(rho_open);
    if (rho_op == "star") {
      std::cout << "dim Γ(" << u.str() << "; ρ_*F) = " << sections_dim(rho_star(f), u) << "\n";
    } else if (rho_op == "inv") {
      std::cout << "dim Γ(" << u.str() << "; ρ⁻¹F) = " << rho_inv_sections(f, u) << "\n";
    } else {
      if (!u.is_bounded()) throw std::invalid_argument("shriek sections are read on bounded opens");
      IndSheaf s = rho_shriek(f);
      int n0 = s.certificate(u);
      for (int n = 1; n <= n0 + 1; ++n)
        std::cout << "  stage " << n << ": " << sections_dim(s.stage(n), u) << "\n";
      ShriekValues v = shriek_values(f, u);
      std::cout << "dim Γ(" << u.str() << "; ρ_!F) = " << v.sheaf << " (certified from stage " << n0
                << "; unsheafified colimit " << v.presheaf_colimit << ")\n";
    }
  });

  // adjoint-check
  auto* adj = app.add_subcommand("adjoint-check", "Hom(ρ_!F, G) against Hom(F, ρ⁻¹G) with explicit inverses");
  std::string adj_f, adj_g;
  adj->add_option("F", adj_f, "line sheaf")->required();
  adj->add_option("G", adj_g, "line sheaf")->required();
  adj->callback([&] {
    AdjunctionReport r = adjunction_check(load_line(adj_f), load_line(adj_g));
    std::cout << "dim Hom(ρ_!F, G) = " << r.hom_shriek << ", dim Hom(F, ρ⁻¹G) = " << r.hom_inv << " (stage "
              << r.stage << ")\n";
    std::cout << "θξ = id: " << r.theta_xi_id << ", ξθ = id: " << r.xi_theta_id << ", natural: " << r.xi_natural
              << "\n";
    if (!r.pass) {
      std::cout << "witness: " << r.witness << "\n";
      status = kPropertyFailure;
    }
  });

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "T-spectrum of a finite instance and the equivalence round trips");
  std::string sp_file;
  sp->add_option("--instance", sp_file, "finite instance (.tp)")->required();
  sp->callback([&] {
    FiniteInstance inst = finite_instance_from_json(read_json_file(sp_file));
    FiniteTSpace x(inst.site);
    std::cout << "points: " << inst.site.points() << ", opens: " << inst.site.num_opens()
              << ", spectrum points: " << x.spec.atoms.size() << ", spectrum opens: " << x.spec.space.num_opens()
              << "\n";
    for (size_t i = 0; i < x.spec.atoms.size(); ++i)
      std::cout << "  point " << i << " = atom " << mask_str(x.alg.atoms()[x.spec.atoms[i]]) << "\n";
    Rng rng(g.seed);
    EquivalenceReport r = finite_equivalence_check(inst.site, rng, 4 * g.budget);
    std::cout << "round trips: " << (r.pass ? "identities" : "FAILED") << " on " << r.instances << " sheaves, "
              << r.checks << " checks\n";
    if (!r.pass) {
      std::cout << "witness: " << r.witness << "\n";
      status = kPropertyFailure;
    }
  });

  // stalk
  auto* st = app.add_subcommand("stalk", "stalk at a symbolic point: q, q+, q-, cut(a,b)");
  std::string st_file, st_point;
  st->add_option("file", st_file, "line sheaf")->required();
  st->add_option("--point", st_point, "point")->required();
  st->callback([&] {
    ConstructibleTSheaf f = load_line(st_file);
    UltraPoint a = UltraPoint::parse(st_point);
    int d = stalk_at(f, a);
    int c = stalk_by_colimit(f, a);
    std::cout << "stalk at " << a.str() << ": " << d << " (neighborhood " << small_neighborhood(f, a).str() << ")\n";
    if (c != d) status = kPropertyFailure;
  });

  // verify
  auto* ve = app.add_subcommand("verify", "run the verification suite");
  std::string ve_filter, ve_json;
  bool ve_list = false;
  ve->add_option("--filter", ve_filter, "only items whose id contains this text");
  ve->add_option("--json", ve_json, "also write the report as JSON");
  ve->add_flag("--list", ve_list, "list item ids");
  ve->callback([&] {
    if (ve_list) {
      for (const std::string& id : suite_ids()) std::cout << id << "\n";
      return;
    }
    SuiteRun run = run_suite(g.seed, g.budget, ve_filter);
    if (run.items.empty()) throw CLI::ValidationError("--filter matches no suite item");
    std::cout << render_text(run);
    if (!ve_json.empty()) write_json_file(ve_json, render_json(run));
    if (!run.pass()) status = kPropertyFailure;
  });

  app.parse_complete_callback([&] {
    try {
      apply_field(g.field);
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--field", e.what());
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPropertyFailure;
  }
  return status;
}
