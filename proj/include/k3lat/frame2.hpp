#pragma once

#include "k3lat/atlas.hpp"
#include "k3lat/fqf.hpp"

namespace k3lat {

// Coordinate layout of LambdaK3 = U^3 + E8 + E8 (see atlas):
//   0..5   u1^(1), u2^(1), u1^(2), u2^(2), u1^(3), u2^(3)
//   6..13  e1^(1)..e8^(1)
//   14..21 e1^(2)..e8^(2)
// The blown-up surface adds eight <-1> classes z1..z8 at 22..29.
//
// Y-frame layout (the sublattice pi_*(H^2) + exceptional curves):
//   0..5   U1^(1), U2^(1), U1^(2), U2^(2), U1^(3), U2^(3)   (pairing 2)
//   6..13  E1..E8                                           (E8)
//   14..21 n1..n7, nhat                                     (Nikulin)
struct K3Frame {
  IntegerLattice lambda;        // H^2(X,Z), unimodular (3,19)
  IntegerLattice lambda_tilde;  // H^2 of the blow-up: lambda + <-1>^8
  Sublattice phi_ns;            // rows F, S, N1..N7, Nhat
  Sublattice phi_t;             // rows t1..t12
  QMat h2x_glue;                // 6 rows completing NS + T to H^2(X,Z)

  IntegerLattice y_frame;  // U(2)^3 + E8 + N
  QMat y_glue;             // 6 rows completing the frame to H^2(Y,Z)
  IntegerLattice h2y;      // H^2(Y,Z), unimodular (3,19)
  QMat h2y_basis;          // rows: h2y basis in y_frame coordinates
  QMat h2y_basis_inv;

  QMat tau;  // 12 rows in y_frame coords; tau_1..tau_8 carry the matrix M

  QMat pi_star_mat;   // 30 x 22, lambda_tilde -> y_frame
  QMat pi_upper_mat;  // 22 x 30, y_frame -> lambda_tilde

  QMat t_to_lambda(const QMat& rows_t) const { return rows_t * phi_t.coords; }
  QMat ns_to_lambda(const QMat& rows_ns) const { return rows_ns * phi_ns.coords; }
  QMat yframe_to_h2y(const QMat& rows) const { return rows * h2y_basis_inv; }
  // push Lambda rows (22 wide) through pi_*, result in y_frame coords
  QMat push(const QMat& rows_lambda) const;
  // expected Gram of (F, S, N1..N7, Nhat)
  static QMat un_fs_gram();
};

// Builds the frame and verifies every structural invariant; throws on any
// transcription inconsistency.
K3Frame build_k3_frame();

// The involution on LambdaK3: swaps the two E8 blocks, fixes U^3.
LatticeMap sigma_star(const K3Frame& f);

std::vector<Rat> pi_star(const K3Frame& f, const std::vector<Rat>& v);  // 22 or 30 wide
struct PiUpperResult {
  std::vector<Rat> image;  // 30 wide
  bool integral;
};
PiUpperResult pi_upper_star(const K3Frame& f, const std::vector<Rat>& w);  // 22 wide

// Isometry-class comparison: same signature/determinant, isomorphic
// discriminant forms, and the uniqueness criterion to close the argument.
struct IsoClassVerdict {
  bool invariants_match = false;
  VerdictStatus disc_forms = VerdictStatus::Inconclusive;
  bool uniqueness = false;
  std::string verdict;  // "isometric" | "invariants match, isometry undecided" | "distinct"
};
IsoClassVerdict isometry_class_verdict(const IntegerLattice& a, const IntegerLattice& b);

struct QuotientTranscendental {
  IntegerLattice lattice;  // T_Y with its saturated basis Gram
  QMat basis;              // rows in h2y coordinates
  Int sat_index;           // [T_Y : pi_*(T_sub)]
};
// T_sub given by rows in t-coordinates; must be primitive in H^2(X,Z).
QuotientTranscendental compute_quotient_transcendental(const K3Frame& f, const QMat& t_sub);

struct QuotientNsReport {
  IntegerLattice ns_x, ns_y;
  Int ns_x_index = 1;  // saturation index over U+N + extras
  Int ns_y_index = 1;  // saturation index over pi_*(NS_X) + Nikulin
  std::vector<Int> ns_x_glue_group;  // structure of NS_X over the direct sum
  std::vector<Int> ns_y_glue_group;
};
// extras: rows in t-coordinates spanning a negative definite lattice.
QuotientNsReport quotient_ns(const K3Frame& f, const QMat& extras);

}  // namespace k3lat
