#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation requires a nondegenerate Gram matrix.
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& what) : Error(what) {}
};

// Raised by overlattice construction when a glue vector is not in the dual
// or the extension fails to be even/integral; the message names the culprit.
struct GlueError : Error {
  explicit GlueError(const std::string& what) : Error(what) {}
};

Rat rat_of(long num, long den = 1);
Rat parse_rat(const std::string& s);  // "p/q" or "p"
std::string rat_str(const Rat& r);

// mpq_class(p, q) does not canonicalize; always build fractions through this.
inline Rat frac(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}
inline Rat frac(long num, long den) { return frac(Int(num), Int(den)); }

// Dense exact rational matrix.  Vectors throughout the library are rows.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {}
  QMat(std::initializer_list<std::initializer_list<long>> rows);

  static QMat identity(int n);
  static QMat zero(int rows, int cols) { return QMat(rows, cols); }
  static QMat row_vector(const std::vector<Rat>& v);
  static QMat diag(const std::vector<Rat>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QMat operator-() const;
  QMat operator*(const Rat& s) const;
  bool operator==(const QMat& o) const;
  bool operator!=(const QMat& o) const { return !(*this == o); }

  QMat transpose() const;
  QMat row(int i) const;
  QMat rows_slice(int begin, int end) const;   // rows [begin, end)
  QMat submatrix(int r0, int c0, int nr, int nc) const;
  void set_row(int i, const QMat& r);

  static QMat vstack(const QMat& top, const QMat& bottom);
  static QMat hstack(const QMat& left, const QMat& right);

  bool is_integral() const;
  bool is_symmetric() const;
  bool is_zero() const;
  Int denominator_lcm() const;

  // Exact Gauss elimination.
  int rank() const;
  Rat det() const;            // square only
  QMat inverse() const;       // throws DegenerateError if singular
  QMat kernel() const;        // rows span {x : x * this = 0} over Q

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// Row-convention product x * M for a single row given as a vector.
std::vector<Rat> apply_row(const std::vector<Rat>& x, const QMat& m);

// Solve X * basis = rows exactly (basis rows independent); throws if some
// row is outside the span.
QMat solve_in_basis(const QMat& rows, const QMat& basis);

// floor(sqrt(r)) for a nonnegative rational, exact.
Int floor_sqrt(const Rat& r);

}  // namespace k3lat
