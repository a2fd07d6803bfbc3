#pragma once

#include "k3lat/frame2.hpp"

namespace k3lat {

// The rational frame of T_X on which the quotient map acts by blocks:
// Theta pairs (W_i, V_i) for i = 1..5 plus a rank-2 positive part.
struct GammaFrame {
  QMat theta;       // 10 rows (W1, V1, ..., W5, V5) in t-coordinates
  QMat positive;    // 2 rows in t-coordinates, Gram exactly diag(8, 4)
  QMat frame;       // the 12 rows stacked; spans T_X over Q
  QMat frame_gram;  // diag(-4,-2)^4 + diag(-8,-4) + diag(8,4)

  // Pinned identification psi : T_Y -> T_X (tau coords -> t coords) under
  // which pi_* becomes the self map gamma.
  QMat psi;
  QMat gamma_t;          // 12x12 action on t-coordinates (row convention)
  QMat gamma_frame_col;  // 12x12 action in the frame basis, column convention
  bool gamma_plus_integral = false;
  bool gamma_plus_squares_to_two = false;
};

GammaFrame build_gamma_frame(const K3Frame& f);

// The 10x10 block on the Theta part, column convention; build_gamma_frame
// guarantees it equals blockdiag([[0,1],[2,0]] x 5).
QMat gamma_on_theta(const GammaFrame& g);

// Complex multiplication by sqrt(-2) in the frame basis, with the exact
// derivation that pins it per block up to a global sign.
struct NuResult {
  QMat matrix;  // 12x12, column convention: blockdiag([[0,1],[-2,0]] x 6)
  std::vector<std::string> certificate;
};
NuResult nu_matrix(const GammaFrame& g);

// All 2x2 rational matrices A with A^2 = -k and isotropic eigenvectors on a
// form diag(kx, x): exactly +-[[0,1],[-k,0]].
std::vector<QMat> solve_cm(long k, std::vector<std::string>* derivation = nullptr);

struct InvarianceVerdict {
  bool invariant = false;
  // when invariant: the quotient computation and whether NS_X ~ NS_Y holds
  std::optional<QuotientNsReport> prediction;
  std::string ns_match_verdict;
};
// t_sub: rows spanning the rational subspace to test for gamma-stability.
InvarianceVerdict gamma_invariance_check(const K3Frame& f, const GammaFrame& g, const QMat& t_sub);

}  // namespace k3lat
