#include "k3lat/gamma.hpp"

namespace k3lat {

namespace {

// W_i, V_i of the five specializations, in t-coordinates.
constexpr int kTheta[10][12] = {
    // W1, V1
    {-2, 0, -2, -2, -1, -1, 0, 2, -2, -2, 0, 0},
    {-1, -1, -1, -1, -1, -1, -1, 2, -1, 0, 0, 0},
    // W2, V2
    {1, 1, 1, 1, 1, 1, 0, -2, 0, 2, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
    // W3, V3
    {1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1},
    // W4, V4
    {0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, -1, 1, 0, -1, 0, -1, -1},
    // W5, V5
    {1, 1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 1, 1, 0, -1, 0, 0, 0},
};

QMat expected_frame_gram() {
  QMat g(12, 12);
  const long diag[12] = {-4, -2, -4, -2, -4, -2, -4, -2, -8, -4, 8, 4};
  for (int i = 0; i < 12; ++i) g(i, i) = Rat(Int(diag[i]));
  return g;
}

QMat block_gamma_col() {
  // column convention per pair (W, V): gamma(V) = W, gamma(W) = 2V
  QMat b(10, 10);
  for (int i = 0; i < 5; ++i) {
    b(2 * i, 2 * i + 1) = 1;
    b(2 * i + 1, 2 * i) = 2;
  }
  return b;
}

// 2x2 integral solutions B with B * gx * B^T == gy (positive definite).
std::vector<QMat> rank2_isometries(const QMat& gx, const QMat& gy) {
  std::vector<QMat> out;
  IntegerLattice lx(gx, "pos");
  Int bound = abs(gy(0, 0).get_num());
  if (abs(gy(1, 1).get_num()) > bound) bound = abs(gy(1, 1).get_num());
  auto sv = short_vectors(lx, bound);
  std::vector<std::vector<Int>> pool;
  for (const auto& v : sv) {
    pool.push_back(v);
    pool.push_back({-v[0], -v[1]});
  }
  for (const auto& r0 : pool)
    for (const auto& r1 : pool) {
      QMat b(2, 2);
      b(0, 0) = Rat(r0[0]);
      b(0, 1) = Rat(r0[1]);
      b(1, 0) = Rat(r1[0]);
      b(1, 1) = Rat(r1[1]);
      if (b * gx * b.transpose() == gy) out.push_back(b);
    }
  return out;
}

}  // namespace

GammaFrame build_gamma_frame(const K3Frame& f) {
  GammaFrame g;
  g.theta = QMat(10, 12);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 12; ++j) g.theta(i, j) = kTheta[i][j];

  IntegerLattice tx = atlas::tx_std();
  QMat th_gram = g.theta * tx.gram * g.theta.transpose();
  QMat expected = expected_frame_gram().submatrix(0, 0, 10, 10);
  if (th_gram != expected)
    throw Error("gamma frame: Theta classes fail their norm/orthogonality table");

  // positive part: complement of the ten classes, moved to a basis with
  // Gram exactly diag(8,4) via a definite isometry witness
  Sublattice comp = orthogonal_complement(Sublattice(tx, g.theta));
  if (comp.rank() != 2) throw Error("gamma frame: positive part has wrong rank");
  IntegerLattice comp_lat = comp.as_lattice("T_pos");
  auto iv = invariants(comp_lat);
  if (iv.det != 32 || iv.s_plus != 2) throw Error("gamma frame: positive part invariants");
  IntegerLattice target = atlas::diag_lattice({8, 4});
  auto iso = definite_isometric(target, comp_lat);
  if (iso.status != VerdictStatus::Yes) throw Error("gamma frame: positive part is not <8>+<4>");
  g.positive = *iso.witness * comp.coords;
  g.frame = QMat::vstack(g.theta, g.positive);
  g.frame_gram = expected_frame_gram();
  if (g.frame * tx.gram * g.frame.transpose() != g.frame_gram)
    throw Error("gamma frame: frame Gram mismatch");

  // ---- pinned identification psi : T_Y -> T_X ----
  // pi_* images of the frame classes, in tau coordinates.
  QMat pushed = solve_in_basis(f.push(f.t_to_lambda(g.frame)), f.tau);
  QMat g_ty = f.tau * f.y_frame.gram * f.tau.transpose();
  const QMat& g_tx = tx.gram;

  QMat theta_y = pushed.rows_slice(0, 10);
  IntegerLattice ty_lat(g_ty, "T_Y");
  Sublattice pos_y = orthogonal_complement(Sublattice(ty_lat, theta_y));
  if (pos_y.rank() != 2) throw Error("gamma frame: Y-side positive part has wrong rank");
  QMat g_pos_y = pos_y.induced_gram();
  QMat g_pos_x{{8, 0}, {0, 4}};

  // psi is forced on the Theta span up to one sign per block; the positive
  // block ranges over the finitely many isometries diag(8,4) -> pos_y.
  // Integrality of psi on all of T_Y pins the choice, which we freeze.
  auto candidates = rank2_isometries(g_pos_x, g_pos_y);
  if (candidates.empty()) throw Error("gamma frame: positive parts are not isometric");
  for (long mask = 0; mask < 32 && g.psi.empty(); ++mask) {
    QMat dom(12, 12), img(12, 12);
    for (int i = 0; i < 5; ++i) {
      Rat e = (mask >> i) & 1 ? Rat(-1) : Rat(1);
      // psi(pi_* V_i) = e W_i, psi(pi_* W_i) = 2 e V_i
      dom.set_row(2 * i, pushed.row(2 * i + 1));
      img.set_row(2 * i, g.theta.row(2 * i) * e);
      dom.set_row(2 * i + 1, pushed.row(2 * i));
      img.set_row(2 * i + 1, g.theta.row(2 * i + 1) * (e * 2));
    }
    for (const auto& b : candidates) {
      QMat pos_img = b * g.positive;  // Gram(pos_img) == g_pos_y
      for (int r = 0; r < 2; ++r) {
        dom.set_row(10 + r, pos_y.coords.row(r));
        img.set_row(10 + r, pos_img.row(r));
      }
      QMat psi = dom.inverse() * img;  // tau coords -> t coords
      if (!psi.is_integral() || abs(psi.det()) != Rat(1)) continue;
      if (psi * g_tx * psi.transpose() != g_ty) continue;
      g.psi = psi;
      break;
    }
  }
  if (g.psi.empty())
    throw Error("gamma frame: no integral identification T_Y -> T_X matches the block action");

  // gamma on t-coordinates: push into tau coords, then identify
  QMat push_t = solve_in_basis(f.push(f.t_to_lambda(QMat::identity(12))), f.tau);
  g.gamma_t = push_t * g.psi;
  if (g.gamma_t * g_tx * g.gamma_t.transpose() != g_tx * Rat(2))
    throw Error("gamma frame: gamma does not scale the form by 2");

  QMat gamma_frame_row = g.frame * g.gamma_t * g.frame.inverse();
  g.gamma_frame_col = gamma_frame_row.transpose();
  QMat theta_block = g.gamma_frame_col.submatrix(0, 0, 10, 10);
  if (theta_block != block_gamma_col())
    throw Error("gamma frame: Theta action is not blockdiag([[0,1],[2,0]])");
  if (!g.gamma_frame_col.submatrix(0, 10, 10, 2).is_zero() ||
      !g.gamma_frame_col.submatrix(10, 0, 2, 10).is_zero())
    throw Error("gamma frame: gamma does not preserve the Theta/positive split");

  QMat gp = g.gamma_frame_col.submatrix(10, 10, 2, 2);
  g.gamma_plus_integral = gp.is_integral();
  g.gamma_plus_squares_to_two = (gp * gp == QMat::identity(2) * Rat(2));
  return g;
}

QMat gamma_on_theta(const GammaFrame& g) { return g.gamma_frame_col.submatrix(0, 0, 10, 10); }

std::vector<QMat> solve_cm(long k, std::vector<std::string>* derivation) {
  // A = [[a, b], [c, -a]]: trace 0 and det = k by Cayley-Hamilton from
  // A^2 = -k id.  Eigenvector condition on w = (1, s), s^2 = -k, for the
  // form diag(kx, x): (a + b s) s = c - a s splits into 2a = 0 (s-part) and
  // c = -k b (rational part); then a^2 + bc = -k forces b = +-1.
  std::vector<QMat> out;
  for (long b : {1L, -1L}) {
    QMat a(2, 2);
    a(0, 1) = Rat(b);
    a(1, 0) = Rat(-k * b);
    if (a * a != QMat::identity(2) * Rat(-k)) throw Error("solve_cm: A^2 check failed");
    out.push_back(a);
  }
  if (derivation) {
    derivation->push_back("trace(A) = 0 and det(A) = k by Cayley-Hamilton from A^2 = -k id");
    derivation->push_back(
        "eigenvector (1, s) with s^2 = -k: 2 a s - (b k + c) = 0 gives a = 0, c = -k b");
    derivation->push_back("a^2 + b c = -k gives k b^2 = k, so b = +-1; A = +-[[0,1],[-k,0]]");
  }
  return out;
}

NuResult nu_matrix(const GammaFrame& g) {
  NuResult r;
  auto sols = solve_cm(2, &r.certificate);
  QMat m2 = sols[0];  // the +M_2 branch is the frozen global sign
  QMat nu(12, 12);
  for (int blk = 0; blk < 6; ++blk)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) nu(2 * blk + i, 2 * blk + j) = m2(i, j);
  if (nu * nu != QMat::identity(12) * Rat(-2)) throw Error("nu_matrix: nu^2 != -2 id");
  // column convention scaling check on the frame Gram
  if (nu.transpose() * g.frame_gram * nu != g.frame_gram * Rat(2))
    throw Error("nu_matrix: nu does not scale the form by 2");
  r.matrix = nu;
  return r;
}

InvarianceVerdict gamma_invariance_check(const K3Frame& f, const GammaFrame& g, const QMat& t_sub) {
  InvarianceVerdict v;
  QMat image = t_sub * g.gamma_t;
  QMat stacked = QMat::vstack(t_sub, image);
  int r = t_sub.rank();
  v.invariant = (image.rank() == r) && (stacked.rank() == r);
  if (!v.invariant) return v;
  // predicted quotient: the complement of t_sub becomes algebraic
  IntegerLattice tx = atlas::tx_std();
  QMat den_cleared = t_sub * Rat(t_sub.denominator_lcm());
  Sublattice comp = orthogonal_complement(Sublattice(tx, den_cleared));
  QuotientNsReport rep = quotient_ns(f, comp.coords);
  v.ns_match_verdict = isometry_class_verdict(rep.ns_x, rep.ns_y).verdict;
  v.prediction = std::move(rep);
  return v;
}

}  // namespace k3lat
