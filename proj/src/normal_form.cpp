#include "k3lat/normal_form.hpp"

namespace k3lat {

namespace {

struct ZMat {
  int rows, cols;
  std::vector<Int> a;
  ZMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}
  Int& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
  static ZMat identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
};

ZMat from_q(const QMat& q) {
  if (!q.is_integral()) throw Error("integral matrix required");
  ZMat m(q.rows(), q.cols());
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) m(i, j) = q(i, j).get_num();
  return m;
}

QMat to_q(const ZMat& m) {
  QMat q(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) q(i, j) = Rat(m(i, j));
  return q;
}

void swap_rows(ZMat& m, int i, int j) {
  for (int k = 0; k < m.cols; ++k) swap(m(i, k), m(j, k));
}
void swap_cols(ZMat& m, int i, int j) {
  for (int k = 0; k < m.rows; ++k) swap(m(k, i), m(k, j));
}
// row i -= f * row j
void row_axpy(ZMat& m, int i, int j, const Int& f) {
  if (f == 0) return;
  for (int k = 0; k < m.cols; ++k) m(i, k) -= f * m(j, k);
}
void col_axpy(ZMat& m, int i, int j, const Int& f) {
  if (f == 0) return;
  for (int k = 0; k < m.rows; ++k) m(k, i) -= f * m(k, j);
}
void negate_row(ZMat& m, int i) {
  for (int k = 0; k < m.cols; ++k) m(i, k) = -m(i, k);
}

}  // namespace

std::vector<Int> Snf::invariant_factors() const {
  std::vector<Int> f;
  int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i)
    if (d(i, i) != 0) f.push_back(d(i, i).get_num());
  return f;
}

std::vector<Int> Snf::nontrivial_factors() const {
  std::vector<Int> f;
  for (const auto& x : invariant_factors())
    if (x > 1) f.push_back(x);
  return f;
}

Snf smith_normal_form(const QMat& a) {
  ZMat d = from_q(a);
  ZMat u = ZMat::identity(d.rows);
  ZMat v = ZMat::identity(d.cols);
  int n = std::min(d.rows, d.cols);
  for (int t = 0; t < n; ++t) {
    // Find a pivot of minimal absolute value in the trailing block.
    for (;;) {
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j) {
          if (d(i, j) == 0) continue;
          Int m = abs(d(i, j));
          if (pi < 0 || m < best) {
            best = m;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // trailing block zero
      if (pi != t) {
        swap_rows(d, t, pi);
        swap_rows(u, t, pi);
      }
      if (pj != t) {
        swap_cols(d, t, pj);
        swap_cols(v, t, pj);
      }
      bool clean = true;
      for (int i = t + 1; i < d.rows; ++i) {
        Int f = d(i, t) / d(t, t);  // truncated division is fine: iterate
        if (f != 0) {
          row_axpy(d, i, t, f);
          row_axpy(u, i, t, f);
        }
        if (d(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < d.cols; ++j) {
        Int f = d(t, j) / d(t, t);
        if (f != 0) {
          col_axpy(d, j, t, f);
          col_axpy(v, j, t, f);
        }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility fix-up: pivot must divide every remaining entry.
      bool fixed = true;
      for (int i = t + 1; i < d.rows && fixed; ++i)
        for (int j = t + 1; j < d.cols && fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            // add row i to row t and restart reduction at t
            row_axpy(d, t, i, Int(-1));
            row_axpy(u, t, i, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return Snf{to_q(u), to_q(d), to_q(v)};
}

QMat hnf_row_basis(const QMat& a) {
  ZMat m = from_q(a);
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    // Euclidean reduction of column `col` among rows >= r.
    for (;;) {
      int piv = -1;
      Int best = 0;
      for (int i = r; i < m.rows; ++i) {
        if (m(i, col) == 0) continue;
        Int v = abs(m(i, col));
        if (piv < 0 || v < best) {
          best = v;
          piv = i;
        }
      }
      if (piv < 0) break;
      if (piv != r) swap_rows(m, r, piv);
      if (m(r, col) < 0) negate_row(m, r);
      bool done = true;
      for (int i = r + 1; i < m.rows; ++i) {
        Int f = m(i, col) / m(r, col);
        row_axpy(m, i, r, f);
        if (m(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, col) != 0) {
      // Reduce entries above the pivot to the canonical range [0, pivot).
      for (int i = 0; i < r; ++i) {
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), m(i, col).get_mpz_t(), m(r, col).get_mpz_t());
        row_axpy(m, i, r, f);
      }
      ++r;
    }
  }
  QMat out(r, m.cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = Rat(m(i, j));
  return out;
}

QMat integer_kernel(const QMat& a) {
  Snf s = smith_normal_form(a);
  int n = a.cols();
  int r = 0;
  for (int i = 0; i < std::min(a.rows(), n); ++i)
    if (sgn(s.d(i, i)) != 0) ++r;
  // Columns of V beyond rank map to zero; return them as rows.
  QMat ker(n - r, n);
  for (int k = r; k < n; ++k)
    for (int i = 0; i < n; ++i) ker(k - r, i) = s.v(i, k);
  return ker;
}

SaturationResult saturate_rows(const QMat& a) {
  Snf s = smith_normal_form(a);
  int r = 0;
  Int index = 1;
  for (int i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (sgn(s.d(i, i)) != 0) {
      ++r;
      index *= s.d(i, i).get_num();
    }
  // Rows of V^{-1} indexed 0..r-1 span the saturation:
  // A = U^{-1} D V^{-1}, and dropping the d_i factors from D V^{-1} yields
  // primitive generators of the same Q-span.
  QMat vinv = s.v.inverse();
  QMat basis(r, a.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < a.cols(); ++j) basis(i, j) = vinv(i, j);
  if (a.rows() != r) index = 0;  // index only meaningful for independent rows
  return SaturationResult{hnf_row_basis(basis), index};
}

std::vector<Int> quotient_group(const QMat& sup, const QMat& sub) {
  if (sup.rows() != sub.rows()) throw Error("quotient_group: rank mismatch");
  // Express sub in sup-coordinates: sub = C * sup with C integral.
  QMat supt = sup.transpose();
  QMat subt = sub.transpose();
  QMat aug = QMat::hstack(supt, subt);
  // Solve supt * X = subt by row reduction of [supt | subt].
  QMat m = aug;
  int rank = 0;
  std::vector<int> pivot_of_row;
  for (int col = 0; col < sup.rows() && rank < m.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (sgn(m(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < m.cols(); ++j) swap(m(piv, j), m(rank, j));
    Rat inv = 1 / m(rank, col);
    for (int j = 0; j < m.cols(); ++j) m(rank, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == rank || sgn(m(i, col)) == 0) continue;
      Rat f = m(i, col);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    pivot_of_row.push_back(col);
    ++rank;
  }
  if (rank != sup.rows()) throw Error("quotient_group: sup rows dependent");
  for (int i = rank; i < m.rows(); ++i)
    for (int j = sup.rows(); j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) throw Error("quotient_group: sub not in span of sup");
  QMat c(sub.rows(), sup.rows());
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < sub.rows(); ++j) c(j, pivot_of_row[i]) = m(i, sup.rows() + j);
  if (!c.is_integral()) throw Error("quotient_group: sub not contained in sup lattice");
  Snf s = smith_normal_form(c);
  std::vector<Int> orders;
  for (const auto& f : s.invariant_factors())
    if (f > 1) orders.push_back(f);
  return orders;
}

}  // namespace k3lat
