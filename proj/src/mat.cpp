#include "k3lat/mat.hpp"

#include <sstream>

namespace k3lat {

Rat rat_of(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw Error("cannot parse rational: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();
}

QMat::QMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = int(rows.size());
  cols_ = rows_ ? int(rows.begin()->size()) : 0;
  a_.assign(size_t(rows_) * cols_, Rat(0));
  int i = 0;
  for (const auto& r : rows) {
    if (int(r.size()) != cols_) throw Error("ragged initializer");
    int j = 0;
    for (long v : r) (*this)(i, j++) = Rat(v);
    ++i;
  }
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::row_vector(const std::vector<Rat>& v) {
  QMat m(1, int(v.size()));
  for (int j = 0; j < int(v.size()); ++j) m(0, j) = v[j];
  return m;
}

QMat QMat::diag(const std::vector<Rat>& d) {
  QMat m(int(d.size()), int(d.size()));
  for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (sgn(o(k, j)) != 0) r(i, j) += x * o(k, j);
      }
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix diff shape mismatch");
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QMat QMat::operator-() const {
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

QMat QMat::operator*(const Rat& s) const {
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

bool QMat::operator==(const QMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

QMat QMat::transpose() const {
  QMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

QMat QMat::row(int i) const {
  QMat r(1, cols_);
  for (int j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
  return r;
}

QMat QMat::rows_slice(int begin, int end) const {
  QMat r(end - begin, cols_);
  for (int i = begin; i < end; ++i)
    for (int j = 0; j < cols_; ++j) r(i - begin, j) = (*this)(i, j);
  return r;
}

QMat QMat::submatrix(int r0, int c0, int nr, int nc) const {
  QMat r(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

void QMat::set_row(int i, const QMat& r) {
  for (int j = 0; j < cols_; ++j) (*this)(i, j) = r(0, j);
}

QMat QMat::vstack(const QMat& top, const QMat& bottom) {
  if (top.empty()) return bottom;
  if (bottom.empty()) return top;
  if (top.cols_ != bottom.cols_) throw Error("vstack shape mismatch");
  QMat r(top.rows_ + bottom.rows_, top.cols_);
  for (int i = 0; i < top.rows_; ++i)
    for (int j = 0; j < top.cols_; ++j) r(i, j) = top(i, j);
  for (int i = 0; i < bottom.rows_; ++i)
    for (int j = 0; j < top.cols_; ++j) r(top.rows_ + i, j) = bottom(i, j);
  return r;
}

QMat QMat::hstack(const QMat& left, const QMat& right) {
  if (left.rows_ != right.rows_) throw Error("hstack shape mismatch");
  QMat r(left.rows_, left.cols_ + right.cols_);
  for (int i = 0; i < left.rows_; ++i) {
    for (int j = 0; j < left.cols_; ++j) r(i, j) = left(i, j);
    for (int j = 0; j < right.cols_; ++j) r(i, left.cols_ + j) = right(i, j);
  }
  return r;
}

bool QMat::is_integral() const {
  for (const auto& x : a_)
    if (x.get_den() != 1) return false;
  return true;
}

bool QMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool QMat::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

Int QMat::denominator_lcm() const {
  Int l = 1;
  for (const auto& x : a_) {
    Int d = x.get_den();
    l = lcm(l, d);
  }
  return l;
}

namespace {

// Gauss elimination to row echelon form; returns rank, optionally tracks the
// determinant sign/value for square input.
int echelon(QMat& m, Rat* det_out) {
  int rank = 0;
  Rat det(1);
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (sgn(m(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      det = 0;
      continue;
    }
    if (piv != rank) {
      for (int j = 0; j < m.cols(); ++j) swap(m(piv, j), m(rank, j));
      det = -det;
    }
    det *= m(rank, col);
    Rat inv = 1 / m(rank, col);
    for (int j = col; j < m.cols(); ++j) m(rank, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == rank || sgn(m(i, col)) == 0) continue;
      Rat f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  if (det_out) *det_out = (rank == m.rows() && m.rows() == m.cols()) ? det : Rat(0);
  return rank;
}

}  // namespace

int QMat::rank() const {
  QMat m = *this;
  return echelon(m, nullptr);
}

Rat QMat::det() const {
  if (rows_ != cols_) throw Error("det of non-square matrix");
  if (rows_ == 0) return Rat(1);
  QMat m = *this;
  Rat d;
  echelon(m, &d);
  return d;
}

QMat QMat::inverse() const {
  if (rows_ != cols_) throw Error("inverse of non-square matrix");
  QMat aug = hstack(*this, identity(rows_));
  echelon(aug, nullptr);
  if (aug.submatrix(0, 0, rows_, cols_) != identity(rows_))
    throw DegenerateError("matrix not invertible");
  return aug.submatrix(0, cols_, rows_, cols_);
}

QMat QMat::kernel() const {
  // Solve x * M = 0, i.e. row-reduce M^T and read off free columns.
  QMat t = transpose();
  QMat m = t;
  echelon(m, nullptr);
  // Identify pivot columns of the echelon form of t (columns index this->rows).
  std::vector<int> pivot_col(m.rows(), -1);
  std::vector<bool> is_pivot(m.cols(), false);
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    if (sgn(m(r, col)) != 0) {
      pivot_col[r] = col;
      is_pivot[col] = true;
      ++r;
    }
  }
  QMat ker(m.cols() - r, m.cols());
  int k = 0;
  for (int col = 0; col < m.cols(); ++col) {
    if (is_pivot[col]) continue;
    ker(k, col) = 1;
    for (int i = 0; i < r; ++i)
      if (pivot_col[i] >= 0) ker(k, pivot_col[i]) = -m(i, col);
    ++k;
  }
  return ker;
}

std::string QMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? " [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << rat_str((*this)(i, j));
    os << "]" << (i + 1 < rows_ ? ",\n" : "");
  }
  os << "]";
  return os.str();
}

std::vector<Rat> apply_row(const std::vector<Rat>& x, const QMat& m) {
  if (int(x.size()) != m.rows()) throw Error("apply_row shape mismatch");
  std::vector<Rat> r(m.cols(), Rat(0));
  for (int i = 0; i < m.rows(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < m.cols(); ++j) r[j] += x[i] * m(i, j);
  }
  return r;
}

QMat solve_in_basis(const QMat& rows, const QMat& basis) {
  // Row-reduce [basis^T | rows^T]; the solution columns express rows in basis.
  QMat aug = QMat::hstack(basis.transpose(), rows.transpose());
  int k = basis.rows();
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < k && rank < aug.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < aug.rows(); ++i)
      if (sgn(aug(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < aug.cols(); ++j) swap(aug(piv, j), aug(rank, j));
    Rat inv = 1 / aug(rank, col);
    for (int j = 0; j < aug.cols(); ++j) aug(rank, j) *= inv;
    for (int i = 0; i < aug.rows(); ++i) {
      if (i == rank || sgn(aug(i, col)) == 0) continue;
      Rat f = aug(i, col);
      for (int j = 0; j < aug.cols(); ++j) aug(i, j) -= f * aug(rank, j);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank != k) throw Error("solve_in_basis: dependent basis rows");
  for (int i = rank; i < aug.rows(); ++i)
    for (int j = k; j < aug.cols(); ++j)
      if (sgn(aug(i, j)) != 0) throw Error("solve_in_basis: row outside the span");
  QMat x(rows.rows(), k);
  for (int r = 0; r < rank; ++r)
    for (int j = 0; j < rows.rows(); ++j) x(j, pivot_col[r]) = aug(r, k + j);
  return x;
}

Int floor_sqrt(const Rat& r) {
  if (sgn(r) < 0) throw Error("floor_sqrt of negative rational");
  // floor(sqrt(p/q)) = floor(isqrt(p*q)/q)
  Int p = r.get_num(), q = r.get_den();
  Int s;
  mpz_sqrt(s.get_mpz_t(), Int(p * q).get_mpz_t());
  return s / q;
}

}  // namespace k3lat
