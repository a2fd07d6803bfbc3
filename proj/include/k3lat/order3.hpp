#pragma once

#include "k3lat/specialize.hpp"

namespace k3lat {

// Order-3 analogue of the K3 frame.  Direct-sum coordinates:
//   0,1    F, S
//   2..13  M_1^(1), M_2^(1), ..., M_1^(6), M_2^(6)
//   14..21 v1, v2, u1, u2, a1, a2, b1, b2   (U + U(3) + A_2 + A_2)
// H^2(X,Z) is the index-3^5 overlattice glued by Mhat and the four classes
// eta_i + (t-part)/3.
struct K3Frame3 {
  IntegerLattice frame;  // 22x22 direct-sum Gram
  IntegerLattice h2;     // even unimodular (3,19)
  QMat h2_basis;         // rows: h2 basis in frame coordinates
  QMat h2_basis_inv;

  QMat eta;       // 4 rows in frame coords (rational, M-block support)
  QMat h2_glue3;  // 5 rows: Mhat and the four eta glue classes

  QMat ns_rows;   // 14 rows (h2 coords): F, S, A_2^6 units; saturates to U+M
  QMat ns_basis;  // saturated NS = U+M, h2 coords
  QMat t_rows;    // 8 rows (h2 coords): the transcendental basis
  QMat fs_rows;   // F, S in h2 coords

  IntegerLattice k12;           // complement of the sigma-invariant part
  QMat k12_basis;               // rows in NS coordinates
  QMat sigma_frame;             // 22x22 on frame coords
  QMat sigma_h2;                // 22x22 on h2 coords (integral)

  QMat frame_to_h2(const QMat& rows) const { return rows * h2_basis_inv; }
};

K3Frame3 build_frame3();

// The order-3 action: F fixed, M_1 -> M_2 -> M_0 = F - M_1 - M_2, S -> T_1.
LatticeMap sigma3(const K3Frame3& f);

// Gamma_3 frame on T_X3: pairs (W_i, V_i) with Gram diag(-6,-2) twice and
// diag(-12,-4), plus the positive part diag(12,4).
struct GammaFrame3 {
  QMat theta;     // 6 rows in t3 coordinates (W1,V1,W2,V2,W3,V3)
  QMat positive;  // 2 rows, Gram diag(12,4)
  QMat frame;     // 8 rows
  QMat frame_gram;
  QMat gamma_col;  // 8x8 block map, column convention
  QMat theta_alt;  // alternate third pair (W3', V3') rows appended variant
};
GammaFrame3 build_gamma3();

// Specialization context for the order-3 chain.
SpecializeContext specialize3_context(const K3Frame3& f);

// (U + M + <-6d>)': the unique index-3 overlattice with primitive summands.
IntegerLattice um_prime_6d(long d);

// All even index-3 overlattices of K12tilde, for comparison against K12.
std::vector<IntegerLattice> k12tilde_overlattices();

// The displayed pair of E6(2) diagrams, rows in frame coordinates.
QMat e6_diagram_rows(const K3Frame3& f);

}  // namespace k3lat
