#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace tsite {

// Base field selection. 0 means the rationals; a prime p means F_p.
// Set once per session, before any Scalar is built.
void set_field_prime(unsigned long p);
unsigned long field_prime();
std::string field_name();

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);
  Scalar(long num, long den);
  explicit Scalar(const mpq_class& q);

  static Scalar parse(const std::string& s);

  bool is_zero() const { return v_ == 0; }
  const mpq_class& value() const { return v_; }
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }

 private:
  void normalize();
  mpq_class v_ = 0;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<Scalar> entries);

  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<long>>& rows, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return a_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  Matrix rows_range(int r0, int nr) const { return block(r0, 0, nr, cols_); }
  Matrix cols_range(int c0, int nc) const { return block(0, c0, rows_, nc); }
  void set_block(int r0, int c0, const Matrix& m);
  Matrix column(int j) const { return cols_range(j, 1); }

  std::string str() const;
  std::vector<std::string> to_strings() const;
  static Matrix from_strings(int rows, int cols, const std::vector<std::string>& s);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix m);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& ms, int rows);
Matrix vstack(const std::vector<Matrix>& ms, int cols);
Matrix block_diag(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

struct Rref {
  Matrix r;
  std::vector<int> pivots;
};

Rref rref(const Matrix& m);
int rank(const Matrix& m);
Matrix kernel_basis(const Matrix& m);
Matrix image_basis(const Matrix& m);
// Q with Q*m = 0 and Q surjective: the projection onto coker m.
Matrix cokernel_projection(const Matrix& m);
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
bool is_injective(const Matrix& m);
bool is_surjective(const Matrix& m);
// Canonical form of the column space (reduced echelon rows of the transpose).
Matrix column_space_key(const Matrix& m);
bool same_column_space(const Matrix& a, const Matrix& b);
bool column_space_contains(const Matrix& big, const Matrix& small);

struct Arrow {
  int src = 0;
  int tgt = 0;
  Matrix m;
};

struct FinDiagram {
  std::vector<int> dims;
  std::vector<Arrow> arrows;
  void validate() const;
};

struct Limit {
  int dim = 0;
  std::vector<Matrix> proj;
};

struct Colimit {
  int dim = 0;
  std::vector<Matrix> inj;
};

Limit finite_limit(const FinDiagram& d);
Colimit finite_colimit(const FinDiagram& d);
bool is_cone(const FinDiagram& d, const std::vector<Matrix>& legs);
bool is_cocone(const FinDiagram& d, const std::vector<Matrix>& legs);
// Unique u with proj_i * u = legs_i, or nullopt when legs are not a cone.
std::optional<Matrix> factor_cone(const FinDiagram& d, const Limit& l,
                                  const std::vector<Matrix>& legs);
// Unique u with u * inj_i = legs_i, or nullopt when legs are not a cocone.
std::optional<Matrix> cofactor_cocone(const FinDiagram& d, const Colimit& c,
                                      const std::vector<Matrix>& legs);

}  // namespace tsite
