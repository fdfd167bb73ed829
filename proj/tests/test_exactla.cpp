#include <doctest.h>

#include <functional>

#include "tsite/exactla.hpp"
#include "tsite/rng.hpp"

using namespace tsite;

namespace {

struct FieldGuard {
  explicit FieldGuard(unsigned long p) { set_field_prime(p); }
  ~FieldGuard() { set_field_prime(0); }
};

Matrix random_matrix(Rng& rng, int r, int c, int lo = -2, int hi = 2) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Scalar(rng.uniform(lo, hi));
  return m;
}

// Number of vectors of F_p^n satisfying every arrow constraint, by enumeration.
long count_limit_points(const FinDiagram& d, unsigned long p) {
  int total = 0;
  std::vector<int> off;
  for (int x : d.dims) {
    off.push_back(total);
    total += x;
  }
  long count = 0;
  std::vector<long> v(total, 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == total) {
      Matrix x(total, 1);
      for (int i = 0; i < total; ++i) x.at(i, 0) = Scalar(v[i]);
      for (const Arrow& a : d.arrows) {
        Matrix xs = x.rows_range(off[a.src], d.dims[a.src]);
        Matrix xt = x.rows_range(off[a.tgt], d.dims[a.tgt]);
        if (a.m * xs != xt) return;
      }
      ++count;
      return;
    }
    for (unsigned long s = 0; s < p; ++s) {
      v[k] = static_cast<long>(s);
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("scalar canonical form") {
  CHECK(Scalar(2, 4) == Scalar(1, 2));
  CHECK(Scalar(1, -2).str() == "-1/2");
  CHECK(Scalar::parse("6/-4").str() == "-3/2");
  FieldGuard g(5);
  CHECK(Scalar(7).str() == "2");
  CHECK(Scalar(-1).str() == "4");
  CHECK(Scalar(1, 2).str() == "3");
  CHECK((Scalar(3) * Scalar(2)).str() == "1");
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(Matrix::identity(2)).cols() == 0);
  CHECK(kernel_basis(Matrix::zero(2, 3)).cols() == 3);
  Matrix k = kernel_basis(Matrix::from_rows({{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(same_column_space(k, Matrix::from_rows({{1}, {-1}})));
}

TEST_CASE("rank plus nullity equals columns on random matrices") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    int r = static_cast<int>(rng.uniform(0, 5));
    int c = static_cast<int>(rng.uniform(0, 5));
    Matrix m = random_matrix(rng, r, c, -1, 1);
    Matrix k = kernel_basis(m);
    CHECK(rank(m) + k.cols() == c);
    CHECK((m * k).is_zero());
    CHECK(rank(k) == k.cols());
  }
}

TEST_CASE("cokernel projection annihilates the image") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    Matrix m = random_matrix(rng, static_cast<int>(rng.uniform(1, 4)), static_cast<int>(rng.uniform(1, 4)), -1, 1);
    Matrix q = cokernel_projection(m);
    CHECK((q * m).is_zero());
    CHECK(q.rows() == m.rows() - rank(m));
    CHECK(is_surjective(q));
  }
}

TEST_CASE("limit examples") {
  FinDiagram same{{2, 1}, {{0, 1, Matrix::from_rows({{1, 1}})}, {0, 1, Matrix::from_rows({{1, 1}})}}};
  CHECK(finite_limit(same).dim == 2 + 0);

  // Equalizer of x and y, encoded as a parallel pair into a common target.
  FinDiagram eq{{2, 1}, {{0, 1, Matrix::from_rows({{1, 0}})}, {0, 1, Matrix::from_rows({{0, 1}})}}};
  Limit l = finite_limit(eq);
  REQUIRE(l.dim == 1);
  CHECK(same_column_space(l.proj[0], Matrix::from_rows({{1}, {1}})));

  FinDiagram prod{{2, 3}, {}};
  CHECK(finite_limit(prod).dim == 5);
}

TEST_CASE("colimit examples and field dependence") {
  CHECK(finite_colimit(FinDiagram{{1, 1}, {}}).dim == 2);
  FinDiagram idid{{1, 1}, {{0, 1, Matrix::identity(1)}, {0, 1, Matrix::identity(1)}}};
  CHECK(finite_colimit(idid).dim == 1);
  FinDiagram sign{{1, 1}, {{0, 1, Matrix::from_rows({{1}})}, {0, 1, Matrix::from_rows({{-1}})}}};
  CHECK(finite_colimit(sign).dim == 0);
  FieldGuard g(2);
  CHECK(finite_colimit(sign).dim == 1);
}

TEST_CASE("limit dimension matches enumeration over F_3") {
  FieldGuard g(3);
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    int n = static_cast<int>(rng.uniform(1, 3));
    FinDiagram d;
    for (int i = 0; i < n; ++i) d.dims.push_back(static_cast<int>(rng.uniform(0, 2)));
    int arrows = static_cast<int>(rng.uniform(0, 3));
    for (int a = 0; a < arrows; ++a) {
      int s = static_cast<int>(rng.uniform(0, n - 1));
      int u = static_cast<int>(rng.uniform(0, n - 1));
      d.arrows.push_back({s, u, random_matrix(rng, d.dims[u], d.dims[s], 0, 2)});
    }
    CHECK(ipow(3, finite_limit(d).dim) == count_limit_points(d, 3));
  }
}

TEST_CASE("universal properties on random cones and cocones") {
  Rng rng(14);
  for (int t = 0; t < 60; ++t) {
    FinDiagram d;
    int n = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < n; ++i) d.dims.push_back(static_cast<int>(rng.uniform(0, 3)));
    int arrows = static_cast<int>(rng.uniform(0, 3));
    for (int a = 0; a < arrows; ++a) {
      int s = static_cast<int>(rng.uniform(0, n - 1));
      int u = static_cast<int>(rng.uniform(0, n - 1));
      d.arrows.push_back({s, u, random_matrix(rng, d.dims[u], d.dims[s])});
    }
    Limit l = finite_limit(d);
    CHECK(is_cone(d, l.proj));
    int r = static_cast<int>(rng.uniform(0, 3));
    Matrix u = random_matrix(rng, l.dim, r);
    std::vector<Matrix> legs;
    for (const Matrix& p : l.proj) legs.push_back(p * u);
    auto f = factor_cone(d, l, legs);
    REQUIRE(f.has_value());
    CHECK(*f == u);

    Colimit c = finite_colimit(d);
    CHECK(is_cocone(d, c.inj));
    Matrix w = random_matrix(rng, r, c.dim);
    std::vector<Matrix> colegs;
    for (const Matrix& i : c.inj) colegs.push_back(w * i);
    auto g = cofactor_cocone(d, c, colegs);
    REQUIRE(g.has_value());
    CHECK(*g == w);
  }
}

TEST_CASE("non-cones are rejected") {
  FinDiagram d{{1, 1}, {{0, 1, Matrix::identity(1)}}};
  Limit l = finite_limit(d);
  std::vector<Matrix> legs{Matrix::from_rows({{1}}), Matrix::from_rows({{2}})};
  CHECK_FALSE(factor_cone(d, l, legs).has_value());
}

TEST_CASE("matrix serialization round trip") {
  Matrix m(2, 2, {Scalar(1, 2), Scalar(-3), Scalar(0), Scalar(5, 7)});
  CHECK(Matrix::from_strings(2, 2, m.to_strings()) == m);
  CHECK_THROWS(FinDiagram{{1, 2}, {{0, 1, Matrix::identity(1)}}}.validate());
}
