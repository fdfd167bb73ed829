#include "tsite/exactla.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>

namespace tsite {

namespace {
std::atomic<unsigned long> g_prime{0};

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace

void set_field_prime(unsigned long p) {
  if (p != 0 && !is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  g_prime = p;
}

unsigned long field_prime() { return g_prime; }

std::string field_name() {
  unsigned long p = g_prime;
  return p == 0 ? std::string("Q") : "F_" + std::to_string(p);
}

Scalar::Scalar(long v) : v_(v) { normalize(); }

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
  normalize();
}

Scalar::Scalar(const mpq_class& q) : v_(q) { normalize(); }

Scalar Scalar::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("bad scalar: " + s);
  q.canonicalize();
  return Scalar(q);
}

void Scalar::normalize() {
  unsigned long p = g_prime;
  if (p == 0) return;
  if (v_.get_den() == 1 && v_.get_num() >= 0 && v_.get_num() < p) return;
  mpz_class pm(p);
  mpz_class n = v_.get_num() % pm;
  if (n < 0) n += pm;
  mpz_class d = v_.get_den() % pm;
  if (d == 0) throw std::domain_error("denominator vanishes in " + field_name());
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), pm.get_mpz_t());
  n = (n * inv) % pm;
  v_ = mpq_class(n);
}

std::string Scalar::str() const { return v_.get_str(); }

Scalar Scalar::operator-() const {
  Scalar r;
  r.v_ = -v_;
  r.normalize();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  v_ += o.v_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  v_ -= o.v_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  v_ *= o.v_;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  normalize();
  return *this;
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

Matrix::Matrix(int rows, int cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<size_t>(rows) * cols) throw std::invalid_argument("entry count != rows*cols");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  Matrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = Scalar(rows[i][j]);
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block");
  Matrix b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& m) {
  if (r0 < 0 || c0 < 0 || r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw std::out_of_range("matrix set_block");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) at(r0 + i, c0 + j) = m.at(i, j);
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
    os << "]";
  }
  os << "]";
  if (rows_ == 0 || cols_ == 0) os << "(" << rows_ << "x" << cols_ << ")";
  return os.str();
}

std::vector<std::string> Matrix::to_strings() const {
  std::vector<std::string> s;
  s.reserve(a_.size());
  for (const auto& x : a_) s.push_back(x.str());
  return s;
}

Matrix Matrix::from_strings(int rows, int cols, const std::vector<std::string>& s) {
  std::vector<Scalar> e;
  e.reserve(s.size());
  for (const auto& x : s) e.push_back(Scalar::parse(x));
  return Matrix(rows, cols, std::move(e));
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& y = b.at(k, j);
        if (!y.is_zero()) c.at(i, j) += x * y;
      }
    }
  return c;
}

Matrix operator*(const Scalar& s, Matrix m) {
  for (auto& x : m.a_) x *= s;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix hstack(const std::vector<Matrix>& ms, int rows) {
  int c = 0;
  for (const auto& m : ms) {
    if (m.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    c += m.cols();
  }
  Matrix out(rows, c);
  int off = 0;
  for (const auto& m : ms) {
    out.set_block(0, off, m);
    off += m.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& ms, int cols) {
  int r = 0;
  for (const auto& m : ms) {
    if (m.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    r += m.rows();
  }
  Matrix out(r, cols);
  int off = 0;
  for (const auto& m : ms) {
    out.set_block(off, 0, m);
    off += m.rows();
  }
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return m;
}

Rref rref(const Matrix& m) {
  Rref out{m, {}};
  Matrix& r = out.r;
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < r.rows(); ++i)
      if (!r.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(piv, j), r.at(row, j));
    Scalar inv = Scalar(1) / r.at(row, col);
    for (int j = col; j < r.cols(); ++j) r.at(row, j) *= inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r.at(i, col).is_zero()) continue;
      Scalar f = r.at(i, col);
      for (int j = col; j < r.cols(); ++j)
        if (!r.at(row, j).is_zero()) r.at(i, j) -= f * r.at(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix kernel_basis(const Matrix& m) {
  Rref rr = rref(m);
  int n = m.cols();
  std::vector<char> is_piv(n, 0);
  for (int p : rr.pivots) is_piv[p] = 1;
  std::vector<int> free;
  for (int j = 0; j < n; ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix k(n, static_cast<int>(free.size()));
  for (size_t f = 0; f < free.size(); ++f) {
    int fj = free[f];
    k.at(fj, static_cast<int>(f)) = 1;
    for (size_t i = 0; i < rr.pivots.size(); ++i) k.at(rr.pivots[i], static_cast<int>(f)) = -rr.r.at(static_cast<int>(i), fj);
  }
  return k;
}

Matrix image_basis(const Matrix& m) {
  Rref rr = rref(m);
  Matrix b(m.rows(), static_cast<int>(rr.pivots.size()));
  for (size_t i = 0; i < rr.pivots.size(); ++i) b.set_block(0, static_cast<int>(i), m.column(rr.pivots[i]));
  return b;
}

Matrix cokernel_projection(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  Rref rr = rref(hstack(a, b));
  int n = a.cols();
  for (int p : rr.pivots)
    if (p >= n) return std::nullopt;
  Matrix x(n, b.cols());
  for (size_t i = 0; i < rr.pivots.size(); ++i)
    for (int j = 0; j < b.cols(); ++j) x.at(rr.pivots[i], j) = rr.r.at(static_cast<int>(i), n + j);
  return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  auto x = solve(a.transpose(), b.transpose());
  if (!x) return std::nullopt;
  return x->transpose();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, Matrix::identity(m.rows()));
}

bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }
bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }

Matrix column_space_key(const Matrix& m) {
  Rref rr = rref(m.transpose());
  return rr.r.rows_range(0, static_cast<int>(rr.pivots.size()));
}

bool same_column_space(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && column_space_key(a) == column_space_key(b);
}

bool column_space_contains(const Matrix& big, const Matrix& small) {
  if (big.rows() != small.rows()) throw std::invalid_argument("column space dimension mismatch");
  return rank(hstack(big, small)) == rank(big);
}

void FinDiagram::validate() const {
  for (const auto& a : arrows) {
    if (a.src < 0 || a.tgt < 0 || a.src >= static_cast<int>(dims.size()) || a.tgt >= static_cast<int>(dims.size()))
      throw std::invalid_argument("arrow endpoint out of range");
    if (a.m.rows() != dims[a.tgt] || a.m.cols() != dims[a.src])
      throw std::invalid_argument("arrow shape mismatch");
  }
}

namespace {
std::vector<int> offsets(const std::vector<int>& dims) {
  std::vector<int> off(dims.size() + 1, 0);
  for (size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
  return off;
}
}  // namespace

Limit finite_limit(const FinDiagram& d) {
  d.validate();
  auto off = offsets(d.dims);
  int total = off.back();
  int crow = 0;
  for (const auto& a : d.arrows) crow += d.dims[a.tgt];
  Matrix c(crow, total);
  int r = 0;
  for (const auto& a : d.arrows) {
    c.set_block(r, off[a.src], a.m);
    for (int i = 0; i < d.dims[a.tgt]; ++i) c.at(r + i, off[a.tgt] + i) -= Scalar(1);
    r += d.dims[a.tgt];
  }
  Matrix k = kernel_basis(c);
  Limit l;
  l.dim = k.cols();
  for (size_t i = 0; i < d.dims.size(); ++i) l.proj.push_back(k.rows_range(off[i], d.dims[i]));
  return l;
}

Colimit finite_colimit(const FinDiagram& d) {
  d.validate();
  auto off = offsets(d.dims);
  int total = off.back();
  int ncol = 0;
  for (const auto& a : d.arrows) ncol += d.dims[a.src];
  Matrix rel(total, ncol);
  int c = 0;
  for (const auto& a : d.arrows) {
    rel.set_block(off[a.tgt], c, a.m);
    for (int i = 0; i < d.dims[a.src]; ++i) rel.at(off[a.src] + i, c + i) -= Scalar(1);
    c += d.dims[a.src];
  }
  Matrix q = cokernel_projection(rel);
  Colimit out;
  out.dim = q.rows();
  for (size_t i = 0; i < d.dims.size(); ++i) out.inj.push_back(q.cols_range(off[i], d.dims[i]));
  return out;
}

bool is_cone(const FinDiagram& d, const std::vector<Matrix>& legs) {
  if (legs.size() != d.dims.size()) return false;
  for (const auto& a : d.arrows)
    if (a.m * legs[a.src] != legs[a.tgt]) return false;
  return true;
}

bool is_cocone(const FinDiagram& d, const std::vector<Matrix>& legs) {
  if (legs.size() != d.dims.size()) return false;
  for (const auto& a : d.arrows)
    if (legs[a.tgt] * a.m != legs[a.src]) return false;
  return true;
}

std::optional<Matrix> factor_cone(const FinDiagram& d, const Limit& l, const std::vector<Matrix>& legs) {
  if (!is_cone(d, legs)) return std::nullopt;
  int apex = legs.empty() ? 0 : legs[0].cols();
  Matrix p = vstack(l.proj, l.dim);
  Matrix g = vstack(legs, apex);
  return solve(p, g);
}

std::optional<Matrix> cofactor_cocone(const FinDiagram& d, const Colimit& c, const std::vector<Matrix>& legs) {
  if (!is_cocone(d, legs)) return std::nullopt;
  int apex = legs.empty() ? 0 : legs[0].rows();
  Matrix q = hstack(c.inj, c.dim);
  Matrix g = hstack(legs, apex);
  return solve_left(q, g);
}

}  // namespace tsite
