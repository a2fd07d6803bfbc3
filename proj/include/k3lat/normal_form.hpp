#pragma once

#include "k3lat/mat.hpp"

namespace k3lat {

// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct Snf {
  QMat u, d, v;
  std::vector<Int> invariant_factors() const;        // all diagonal entries
  std::vector<Int> nontrivial_factors() const;       // entries > 1
};

Snf smith_normal_form(const QMat& a);  // a must be integral

// Row-style Hermite normal form of an integral matrix: returns a matrix whose
// rows are a basis of the row lattice (zero rows dropped).
QMat hnf_row_basis(const QMat& a);

// Basis (rows) of {x in Z^n : a * x^T = 0} for integral a; the result is
// saturated by construction.
QMat integer_kernel(const QMat& a);

// Rows span the saturation of the row lattice of `a` inside Z^n, i.e.
// Q-span(a) intersected with Z^n.  Also reports [sat : rowspan] when `a` has
// full row rank.
struct SaturationResult {
  QMat basis;
  Int index;
};
SaturationResult saturate_rows(const QMat& a);

// Group structure of Z-span(sup) / Z-span(sub) where both span the same
// Q-subspace and sub is contained in sup; returns cyclic orders > 1.
std::vector<Int> quotient_group(const QMat& sup, const QMat& sub);

}  // namespace k3lat
