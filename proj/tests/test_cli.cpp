#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("TSITE_BIN");
  return b ? b : "tsite";
}

fs::path workdir() {
  static fs::path d = [] {
    fs::path p = fs::temp_directory_path() / ("tsite_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return d;
}

Run run(const std::string& args) {
  std::string cmd = "cd '" + workdir().string() + "' && '" + bin() + "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_CASE("generate and query line sheaves") {
  REQUIRE(run("gen --line 'constant((0,1)+(1,2))' -o k.ts").code == 0);
  REQUIRE(run("gen --line 'boundary((0,1)+(2,3),(0,3))' -o b.ts").code == 0);
  REQUIRE(run("gen --line 'constant((0,1))' -o k01.ts").code == 0);
  REQUIRE(run("gen --line 'constant((-inf,inf))' -o kx.ts").code == 0);
  REQUIRE(run("gen --line 'skyscraper(1)' -o sky.ts").code == 0);

  Run s = run("sections k.ts --open '(0,1)+(1,2)'");
  CHECK(s.code == 0);
  CHECK(has(s, "= 2"));
  CHECK(has(run("sections k.ts --open '(0,2)'"), "= 0"));
  CHECK(has(run("sections b.ts --open '(0,3)'"), "= 1"));

  Run f = run("flabby sky.ts");
  CHECK(f.code == 0);
  CHECK(has(f, "flabby: yes"));
  Run nf = run("flabby k01.ts");
  CHECK(has(nf, "flabby: no"));
  CHECK(has(nf, "witness"));
  CHECK(has(run("csoft sky.ts"), "c-soft: yes"));

  Run c = run("coherent b.ts --emit-presentation pres.json");
  CHECK(c.code == 0);
  CHECK(has(c, "generator k_(0,3)"));
  CHECK(fs::exists(workdir() / "pres.json"));
  CHECK(has(run("coherent kx.ts"), "coherent: no"));

  Run e = run("ext b.ts k01.ts --degree 1 --les '(0,1)+(2,3)' '(0,3)'");
  CHECK(e.code == 0);
  CHECK(has(e, "dim Ext^1 = 1"));
  CHECK(has(e, "long exact sequence 1, resolution 1"));

  Run sh = run("rho kx.ts --op shriek --open '(0,1)+(1,2)'");
  CHECK(sh.code == 0);
  CHECK(has(sh, "unsheafified colimit 1"));
  CHECK(has(run("rho kx.ts --op star --open '(0,1)+(1,2)'"), "= 2"));
  CHECK(has(run("rho kx.ts --op inv --open '(-inf,inf)'"), "= 1"));

  Run a = run("adjoint-check k01.ts kx.ts");
  CHECK(a.code == 0);
  CHECK(has(a, "dim Hom(ρ_!F, G) = 1, dim Hom(F, ρ⁻¹G) = 1"));

  CHECK(has(run("stalk k01.ts --point 1-"), "stalk at 1-: 1"));
  CHECK(has(run("stalk k01.ts --point 1+"), "stalk at 1+: 0"));
  CHECK(run("stalk sky.ts --point 'cut(0,2)'").code == 2);
}

TEST_CASE("finite instances") {
  REQUIRE(run("gen --name conic_toy --params 2,2 -o conic.tp").code == 0);
  REQUIRE(run("gen --name sierpinski -o s.tp").code == 0);
  REQUIRE(run("gen --name indiscrete --params 2 -o ind.tp").code == 0);
  Run sp = run("spectrum --instance s.tp");
  CHECK(sp.code == 0);
  CHECK(has(sp, "spectrum points: 2"));
  CHECK(has(sp, "round trips: identities"));
  CHECK(has(run("spectrum --instance ind.tp"), "spectrum points: 1"));
  CHECK(run("spectrum --instance conic.tp").code == 0);
  Run sf = run("--seed 3 sheafify s.tp");
  CHECK(sf.code == 0);
  CHECK(has(sf, "sheafification verified"));
  CHECK(run("flabby conic.tp").code == 0);
  CHECK(run("sections conic.tp --open 1,2").code == 0);
  CHECK(run("sections conic.tp --open 0").code == 2);
  CHECK(run("gen --name chain --params 40").code == 2);
}

TEST_CASE("suite and usage errors") {
  Run v = run("verify --filter spectrum.ultra");
  CHECK(v.code == 0);
  CHECK(has(v, "PASS spectrum.ultrafilters"));
  Run j = run("--seed 4 verify --filter lineorder.boolean --json r.json");
  CHECK(j.code == 0);
  CHECK(fs::exists(workdir() / "r.json"));
  CHECK(run("--seed 4 verify --filter lineorder.boolean").out == j.out);
  CHECK(has(run("verify --list"), "criterion-06.shriek-adjunction"));
  CHECK(run("--field fp:7 verify --filter exactla").code == 0);

  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--field fp:8 verify --filter exactla").code == 2);
  CHECK(run("sections missing.ts --open '(0,1)'").code == 2);
  CHECK(run("rho k01.ts --op lower --open '(0,1)'").code == 2);
  CHECK(run("verify --filter nothing-matches").code == 2);
}
