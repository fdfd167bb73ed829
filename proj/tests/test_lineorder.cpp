#include <doctest.h>

#include "tsite/lineorder.hpp"

using namespace tsite;

namespace {

SemilinearSet S(const char* s) { return SemilinearSet::parse(s); }

// Probe points finer than the random grid, so every atom of a random set is hit.
std::vector<Rational> probes() {
  std::vector<Rational> out;
  for (int k = -48; k <= 48; ++k) out.push_back(frac(k, 8));
  return out;
}

bool pointwise(const SemilinearSet& r, const SemilinearSet& a, const SemilinearSet& b, BoolOp op) {
  for (const Rational& q : probes()) {
    bool x = a.contains(q), y = b.contains(q), want = false;
    switch (op) {
      case BoolOp::Union: want = x || y; break;
      case BoolOp::Intersect: want = x && y; break;
      case BoolOp::Diff: want = x && !y; break;
      case BoolOp::Complement: want = !x; break;
    }
    if (r.contains(q) != want) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("boolean operation examples") {
  SemilinearSet u = unite(S("(0,1)"), S("(1,2)"));
  CHECK(u.pieces().size() == 2);
  CHECK_FALSE(u.contains(1));
  CHECK(intersect(S("(0,2)"), S("(1,3)")) == S("(1,2)"));
  SemilinearSet c = complement(S("(0,1)"));
  CHECK(c.str() == "(-inf,0)+{0}+{1}+(1,+inf)");
  CHECK(c.contains(0));
  CHECK_FALSE(c.contains(frac(1, 2)));
  CHECK(c.contains(1));
}

TEST_CASE("canonical form merges (a,b)+{b}+(b,c)") {
  CHECK(S("(0,1)+{1}+(1,2)") == S("(0,2)"));
  CHECK(S("[0,1]").str() == "{0}+(0,1)+{1}");
  CHECK(S("(1,2)+(0,1)").str() == "(0,1)+(1,2)");
  CHECK(S("empty").empty());
  CHECK_THROWS(S("(0,1"));
  CHECK_THROWS(S("(2,1)"));
}

TEST_CASE("boolean operations agree with pointwise semantics") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    SemilinearSet a = random_set(rng, 3);
    SemilinearSet b = random_set(rng, 3);
    CHECK(pointwise(unite(a, b), a, b, BoolOp::Union));
    CHECK(pointwise(intersect(a, b), a, b, BoolOp::Intersect));
    CHECK(pointwise(diff(a, b), a, b, BoolOp::Diff));
    CHECK(pointwise(complement(a), a, b, BoolOp::Complement));
    CHECK(SemilinearSet::parse(a.str()) == a);
  }
}

TEST_CASE("boolean algebra laws hold structurally") {
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    SemilinearSet a = random_set(rng, 3), b = random_set(rng, 3), c = random_set(rng, 3);
    CHECK(unite(a, b) == unite(b, a));
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(unite(a, intersect(b, c)) == intersect(unite(a, b), unite(a, c)));
    CHECK(intersect(a, unite(b, c)) == unite(intersect(a, b), intersect(a, c)));
    CHECK(complement(unite(a, b)) == intersect(complement(a), complement(b)));
    CHECK(complement(complement(a)) == a);
    CHECK(unite(a, complement(a)) == SemilinearSet::line());
    CHECK(intersect(a, complement(a)).empty());
    CHECK(diff(a, b) == intersect(a, complement(b)));
  }
}

TEST_CASE("T membership") {
  CHECK(is_T_open(S("(0,1)+(2,3)")));
  CHECK_FALSE(is_T_open(S("(0,+inf)")));
  CHECK(is_T_open(SemilinearSet()));
  CHECK_FALSE(is_T_open(S("[0,1)")));
}

TEST_CASE("T is closed under sampled unions and intersections") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    SemilinearSet a = random_open(rng, 3, true), b = random_open(rng, 3, true);
    CHECK(is_T_open(unite(a, b)));
    CHECK(is_T_open(intersect(a, b)));
    CHECK(connected_components(a) == static_cast<int>(a.pieces().size()));
  }
}

TEST_CASE("T_loc opens") {
  CHECK(is_Tloc_open(TlocOpen::whole_line()));
  TlocOpen per = TlocOpen::periodic(S("(0,1/2)"), 1);
  CHECK(is_Tloc_open(per));
  CHECK(is_Tloc_open(TlocOpen::finite(S("(0,1)"))));
  CHECK(per.truncate(2) == S("(-2,-3/2)+(-1,-1/2)+(0,1/2)+(1,3/2)"));
  CHECK_THROWS(TlocOpen::periodic(S("(0,1/2)"), 0));
  CHECK_THROWS(TlocOpen::periodic(S("(0,+inf)"), 1));
  CHECK_THROWS(TlocOpen::periodic(S("{0}"), 1));
  // Each bounded window meets finitely many translates.
  Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    SemilinearSet w = random_open(rng, 2, true);
    SemilinearSet cut = intersect(per.truncate(6), w);
    CHECK(is_T_open(cut));
  }
}

TEST_CASE("rwqc examples and witnesses") {
  CHECK(rwqc(S("(0,1)"), S("(-1,2)")));
  CHECK(definitional_rwqc_probe(S("(0,1)"), S("(-1,2)"), 16));
  CHECK_FALSE(rwqc(S("(0,1)"), S("(0,2)")));
  auto w = rwqc_witness(S("(0,1)"), S("(0,2)"));
  REQUIRE(w.has_value());
  CHECK(w->member(3) == S("(1/3,2)"));
  CHECK(witness_defeats(S("(0,1)"), S("(0,2)"), *w, 32));
  CHECK(rwqc(SemilinearSet(), S("(0,1)")));
  CHECK(rwqc(SemilinearSet(), SemilinearSet()));
  CHECK_FALSE(rwqc_witness(S("(0,1)"), S("(-1,2)")).has_value());
}

TEST_CASE("rwqc decision agrees with the covering definition") {
  Rng rng(25);
  int positives = 0, negatives = 0;
  for (int t = 0; t < 300; ++t) {
    SemilinearSet v = random_open(rng, 3, false);
    SemilinearSet u = rng.coin() ? random_open(rng, 3, false) : intersect(random_open(rng, 4, false), v);
    bool r = rwqc(u, v);
    CHECK(definitional_rwqc_probe(u, v, 64) == r);
    auto w = rwqc_witness(u, v);
    CHECK(w.has_value() == !r);
    if (w) CHECK(witness_defeats(u, v, *w, 64));
    (r ? positives : negatives)++;
  }
  CHECK(positives > 20);
  CHECK(negatives > 20);
}

TEST_CASE("rwqc compatibility with inclusions") {
  Rng rng(26);
  for (int t = 0; t < 200; ++t) {
    SemilinearSet u = random_open(rng, 2, true), v = random_open(rng, 3, false), w = random_open(rng, 2, false);
    SemilinearSet vw = unite(v, w);
    if (rwqc(u, v)) CHECK(rwqc(u, vw));
    SemilinearSet sub = intersect(u, random_open(rng, 3, false));
    if (rwqc(u, v)) CHECK(rwqc(sub, v));
    CHECK(rwqc(u, SemilinearSet::line()));
  }
}

TEST_CASE("LWC axioms on random instances") {
  LwcReport r = lwc_validate(100, 7);
  CHECK(r.pass());
  CHECK(r.lwc1 > 50);
  CHECK(r.lwc2 == 100);
  CHECK(r.lwc3 == 100);
  CHECK(lwc3_witness(S("(0,1)"), S("(-1,2)")) == S("(-1/2,3/2)"));
}

TEST_CASE("finite subcovers") {
  auto a = cover_finite_subcover(S("(0,1)"), {S("(0,6/10)"), S("(4/10,1)")});
  REQUIRE(a.has_value());
  CHECK(a->size() == 2);
  CHECK_FALSE(cover_finite_subcover(S("(0,1)"), {S("(0,1/2)"), S("(6/10,1)")}).has_value());
  auto e = cover_finite_subcover(SemilinearSet(), {});
  REQUIRE(e.has_value());
  CHECK(e->empty());
  auto r = cover_finite_subcover(S("(0,1)"), {S("(0,2)"), S("(0,1/2)")});
  REQUIRE(r.has_value());
  CHECK(*r == std::vector<int>{0});
}

TEST_CASE("cell complexes and refinement") {
  CellComplex c = cells({1, 0});
  REQUIRE(c.size() == 5);
  CHECK(c.cell_str(0) == "(-inf,0)");
  CHECK(c.cell_str(1) == "{0}");
  CHECK(c.cell_str(2) == "(0,1)");
  CHECK(c.cell_str(3) == "{1}");
  CHECK(c.cell_str(4) == "(1,+inf)");
  Refinement r = refine(c, {frac(1, 2)});
  REQUIRE(r.fine.size() == 7);
  CHECK(r.fine.cell_str(2) == "(0,1/2)");
  CHECK(r.fine.cell_str(3) == "{1/2}");
  CHECK(r.fine.cell_str(4) == "(1/2,1)");
  CHECK(r.to_coarse == std::vector<int>{0, 1, 2, 2, 2, 3, 4});
  CellComplex empty = cells({});
  CHECK(empty.size() == 1);
  CHECK(empty.cell_set(0) == SemilinearSet::line());
}

TEST_CASE("cells partition the line") {
  Rng rng(27);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> e;
    for (int i = 0; i < rng.uniform(0, 5); ++i) e.push_back(random_grid_point(rng));
    CellComplex c = cells(e);
    SemilinearSet all;
    for (int k = 0; k < c.size(); ++k) {
      CHECK(intersect(all, c.cell_set(k)).empty());
      all = unite(all, c.cell_set(k));
      CHECK(c.locate(c.sample(k)) == k);
    }
    CHECK(all == SemilinearSet::line());
  }
}

TEST_CASE("exhaustion chain") {
  auto ch = exhaustion_chain(2);
  REQUIRE(ch.size() == 2);
  CHECK(ch[0] == S("(-1,1)"));
  CHECK(rwqc(ch[0], ch[1]));
  CHECK(exhaustion_chain(1).size() == 1);
  CHECK_THROWS(exhaustion_chain(0));
  auto big = exhaustion_chain(6);
  for (size_t i = 0; i + 1 < big.size(); ++i) CHECK(rwqc(big[i], big[i + 1]));
  CHECK(subset(S("(-9/2,5)"), big.back()));
}
