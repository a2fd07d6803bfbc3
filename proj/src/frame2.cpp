#include "k3lat/frame2.hpp"

namespace k3lat {

namespace {

constexpr int kU13 = 4, kU23 = 5;  // third copy of U
constexpr int kE1 = 6, kE2 = 14;   // starts of the two E8 blocks
constexpr int kNY = 14;            // start of the Nikulin block on the Y side

// Embedding of (F, S, N1..N7, Nhat): coefficients on e^(1), e^(2), (u1,u2)^(3).
struct NsRowData {
  int e1[8];
  int e2[8];
  int u3[2];
};
constexpr NsRowData kNsRows[10] = {
    // F
    {{-4, -7, -10, -8, -6, -4, -2, -5}, {-4, -7, -10, -8, -6, -4, -2, -5}, {2, 2}},
    // S = e1^(2)
    {{0, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0}, {0, 0}},
    // N1..N7
    {{-2, -3, -4, -3, -2, -1, 0, -2}, {-2, -4, -6, -5, -4, -3, -2, -3}, {1, 1}},
    {{-2, -3, -4, -3, -2, -1, -1, -2}, {-2, -4, -6, -5, -4, -3, -1, -3}, {1, 1}},
    {{-2, -3, -4, -3, -2, -2, -1, -2}, {-2, -4, -6, -5, -4, -2, -1, -3}, {1, 1}},
    {{-2, -3, -4, -3, -3, -2, -1, -2}, {-2, -4, -6, -5, -3, -2, -1, -3}, {1, 1}},
    {{-2, -3, -4, -4, -3, -2, -1, -2}, {-2, -4, -6, -4, -3, -2, -1, -3}, {1, 1}},
    {{-2, -3, -5, -4, -3, -2, -1, -2}, {-2, -4, -5, -4, -3, -2, -1, -3}, {1, 1}},
    {{-2, -3, -5, -4, -3, -2, -1, -3}, {-2, -4, -5, -4, -3, -2, -1, -2}, {1, 1}},
    // Nhat
    {{-9, -14, -20, -16, -12, -8, -4, -10}, {-7, -14, -20, -16, -12, -8, -4, -10}, {4, 4}},
};

// t1..t8 have symmetric coefficients on both E8 copies.
constexpr int kTRows[8][8] = {
    {2, 4, 6, 5, 4, 3, 2, 3}, {2, 4, 6, 5, 4, 3, 1, 3}, {2, 4, 6, 5, 4, 2, 1, 3},
    {2, 4, 6, 5, 3, 2, 1, 3}, {2, 4, 6, 4, 3, 2, 1, 3}, {2, 4, 5, 4, 3, 2, 1, 3},
    {2, 4, 5, 4, 3, 2, 1, 2}, {7, 14, 20, 16, 12, 8, 4, 10}};
constexpr int kTU3[8][2] = {{-1, -1}, {-1, -1}, {-1, -1}, {-1, -1},
                            {-1, -1}, {-1, -1}, {-1, -1}, {-3, -4}};

// The intersection matrix carried by tau_1..tau_8 on the quotient.
constexpr int kMatrixM[8][8] = {
    {-4, -2, 0, 0, 0, 0, 0, -2}, {-2, -2, -1, 0, 0, 0, 0, -2}, {0, -1, -2, -1, 0, 0, 0, -2},
    {0, 0, -1, -2, -1, 0, 0, -2}, {0, 0, 0, -1, -2, -1, 0, -2}, {0, 0, 0, 0, -1, -2, -1, -2},
    {0, 0, 0, 0, 0, -1, -2, -2}, {-2, -2, -2, -2, -2, -2, -2, -8}};

// i in 1..8: the i-th exceptional class in (n1..n7, nhat) coordinates.
QMat exceptional_row(int i) {
  QMat r(1, 22);
  if (i <= 7)
    r(0, kNY + i - 1) = 1;
  else {
    for (int k = 0; k < 7; ++k) r(0, kNY + k) = -1;
    r(0, kNY + 7) = 2;
  }
  return r;
}

// Reduce possibly dependent rows to a Z-basis of their integer span.
QMat row_span_basis(const QMat& rows) {
  if (rows.rows() == 0) return rows;
  Int den = rows.denominator_lcm();
  QMat scaled = hnf_row_basis(rows * Rat(den));
  return scaled * frac(Int(1), den);
}

}  // namespace

QMat K3Frame::un_fs_gram() {
  QMat g(10, 10);
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = -2;
  IntegerLattice n = atlas::nikulin();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(2 + i, 2 + j) = n.gram(i, j);
  return g;
}

QMat K3Frame::push(const QMat& rows_lambda) const {
  QMat padded(rows_lambda.rows(), 30);
  for (int i = 0; i < rows_lambda.rows(); ++i)
    for (int j = 0; j < 22; ++j) padded(i, j) = rows_lambda(i, j);
  return padded * pi_star_mat;
}

K3Frame build_k3_frame() {
  K3Frame f;
  f.lambda = atlas::lambda_k3();
  f.lambda_tilde = direct_sum(f.lambda, atlas::diag_lattice({-1, -1, -1, -1, -1, -1, -1, -1}));
  f.lambda_tilde.name = "LambdaK3+<-1>^8";

  QMat ns(10, 22);
  for (int r = 0; r < 10; ++r) {
    for (int k = 0; k < 8; ++k) {
      ns(r, kE1 + k) = kNsRows[r].e1[k];
      ns(r, kE2 + k) = kNsRows[r].e2[k];
    }
    ns(r, kU13) = kNsRows[r].u3[0];
    ns(r, kU23) = kNsRows[r].u3[1];
  }
  f.phi_ns = Sublattice(f.lambda, ns);

  QMat t(12, 22);
  for (int r = 0; r < 8; ++r) {
    for (int k = 0; k < 8; ++k) {
      t(r, kE1 + k) = kTRows[r][k];
      t(r, kE2 + k) = kTRows[r][k];
    }
    t(r, kU13) = kTU3[r][0];
    t(r, kU23) = kTU3[r][1];
  }
  for (int r = 0; r < 4; ++r) t(8 + r, r) = 1;  // t9..t12 = U^(1), U^(2) basis
  f.phi_t = Sublattice(f.lambda, t);

  if (f.phi_ns.induced_gram() != K3Frame::un_fs_gram())
    throw Error("K3 frame: NS embedding does not reproduce the U+N Gram");
  if (f.phi_t.induced_gram() != atlas::tx_std().gram)
    throw Error("K3 frame: T embedding does not reproduce the U+U+N Gram");
  if (!(f.phi_ns.coords * f.lambda.gram * f.phi_t.coords.transpose()).is_zero())
    throw Error("K3 frame: NS and T are not orthogonal");

  // Glue classes completing NS + T to the unimodular lattice.
  auto nsrow = [&](int i) { return ns.row(i); };  // 0=F 1=S 2..8=N1..N7 9=Nhat
  auto trow = [&](int i) { return t.row(i - 1); };
  QMat n8 = nsrow(9) * Rat(2) - nsrow(2) - nsrow(3) - nsrow(4) - nsrow(5) - nsrow(6) - nsrow(7) -
            nsrow(8);
  QMat glue = (nsrow(2) + nsrow(3) + trow(1) + trow(2)) * Rat(1, 2);
  glue = QMat::vstack(glue, (nsrow(3) + nsrow(8) + trow(2) + trow(7)) * Rat(1, 2));
  glue = QMat::vstack(glue, (nsrow(4) + nsrow(5) + trow(3) + trow(4)) * Rat(1, 2));
  glue = QMat::vstack(
      glue, (nsrow(2) + nsrow(3) + nsrow(5) + nsrow(8) + trow(1) + trow(2) + trow(4) + trow(7)) *
                Rat(1, 2));
  glue = QMat::vstack(glue, (nsrow(6) + nsrow(7) + trow(5) + trow(6)) * Rat(1, 2));
  glue = QMat::vstack(glue, (nsrow(7) + n8 + trow(8) * Rat(2) - trow(1) - trow(2) - trow(3) -
                             trow(4) - trow(5) - trow(7)) *
                                Rat(1, 2));
  f.h2x_glue = glue;
  if (!glue.is_integral()) throw Error("K3 frame: glue classes are not integral");
  QMat full = QMat::vstack(QMat::vstack(ns, t), glue);
  if (abs(hnf_row_basis(full).det()) != Rat(1))
    throw Error("K3 frame: NS + T + glue does not span the unimodular lattice");

  // ---- quotient side ----
  IntegerLattice u2 = atlas::U_scaled(2);
  f.y_frame =
      direct_sum(direct_sum(direct_sum(u2, u2), direct_sum(u2, atlas::E8())), atlas::nikulin());
  f.y_frame.name = "U(2)^3+E8+N";

  // pi_*: (u, x, y, z) -> (u, x+y, z)
  f.pi_star_mat = QMat(30, 22);
  for (int j = 0; j < 6; ++j) f.pi_star_mat(j, j) = 1;
  for (int k = 0; k < 8; ++k) {
    f.pi_star_mat(kE1 + k, 6 + k) = 1;
    f.pi_star_mat(kE2 + k, 6 + k) = 1;
  }
  for (int i = 1; i <= 8; ++i) {
    QMat nr = exceptional_row(i);
    for (int j = 0; j < 22; ++j) f.pi_star_mat(22 + (i - 1), j) = nr(0, j);
  }

  // pi^*: U_j -> 2 u_j, E_k -> e_k^(1) + e_k^(2), n_i -> 2 z_i
  f.pi_upper_mat = QMat(22, 30);
  for (int j = 0; j < 6; ++j) f.pi_upper_mat(j, j) = 2;
  for (int k = 0; k < 8; ++k) {
    f.pi_upper_mat(6 + k, kE1 + k) = 1;
    f.pi_upper_mat(6 + k, kE2 + k) = 1;
  }
  for (int i = 0; i < 7; ++i) f.pi_upper_mat(kNY + i, 22 + i) = 2;
  for (int i = 0; i < 8; ++i) f.pi_upper_mat(kNY + 7, 22 + i) = 1;  // nhat -> sum z_i

  // projection formula <pi_* a, b>_Y = <a, pi^* b>_X on all basis pairs
  if (f.pi_star_mat * f.y_frame.gram != f.lambda_tilde.gram * f.pi_upper_mat.transpose())
    throw Error("K3 frame: projection formula fails");

  // tau basis of T_Y
  QMat tpush = f.push(t);
  f.tau = QMat(12, 22);
  f.tau.set_row(0, tpush.row(0));
  for (int i = 1; i <= 6; ++i) f.tau.set_row(i, (tpush.row(i - 1) + tpush.row(i)) * Rat(1, 2));
  for (int i = 7; i < 12; ++i) f.tau.set_row(i, tpush.row(i));
  QMat tau_gram = f.tau * f.y_frame.gram * f.tau.transpose();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (tau_gram(i, j) != Rat(kMatrixM[i][j]))
        throw Error("K3 frame: tau Gram does not match the matrix M");
  QMat u2u2 = direct_sum(u2, u2).gram;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (tau_gram(8 + i, 8 + j) != u2u2(i, j))
        throw Error("K3 frame: tau_9..tau_12 are not U(2)+U(2)");

  // H^2(Y,Z): add the six glue classes to the frame
  auto ny = [&](int i) { return exceptional_row(i); };
  auto taur = [&](int i) { return f.tau.row(i - 1); };
  QMat yg = (taur(11) + ny(1) + ny(2) + ny(3) + ny(4)) * Rat(1, 2);
  yg = QMat::vstack(yg, (taur(12) + ny(1) + ny(2) + ny(3) + ny(5)) * Rat(1, 2));
  yg = QMat::vstack(yg, (taur(9) + ny(1) + ny(2) + ny(6) + ny(7)) * Rat(1, 2));
  yg = QMat::vstack(yg, (taur(10) + ny(1) + ny(2) + ny(6) + ny(8)) * Rat(1, 2));
  yg = QMat::vstack(yg, (taur(1) + ny(1) + ny(2)) * Rat(1, 2));
  yg = QMat::vstack(yg, (taur(8) + ny(2) + ny(3) + ny(7) + ny(8)) * Rat(1, 2));
  f.y_glue = yg;
  Overlattice oy = overlattice(f.y_frame, yg);
  if (oy.index != 64) throw Error("K3 frame: H^2(Y) glue index is not 2^6");
  f.h2y = oy.lattice;
  f.h2y.name = "H2Y";
  f.h2y_basis = oy.base_change;
  f.h2y_basis_inv = oy.base_change.inverse();
  LatticeInvariants iy = invariants(f.h2y);
  if (iy.det != -1 || iy.s_plus != 3 || iy.s_minus != 19 || !iy.even)
    throw Error("K3 frame: H^2(Y) is not even unimodular of signature (3,19)");

  // tau really is the primitive closure of pi_*(T_X)
  QMat tau_h2y = f.yframe_to_h2y(f.tau);
  if (!tau_h2y.is_integral()) throw Error("K3 frame: tau not contained in H^2(Y)");
  auto sat = saturation(Sublattice(f.h2y, f.yframe_to_h2y(tpush)));
  if (sat.index != 64) throw Error("K3 frame: [T_Y : pi_* T_X] != 2^6");
  if (!quotient_group(sat.sub.coords, tau_h2y).empty())
    throw Error("K3 frame: tau does not span the saturation of pi_* T_X");

  return f;
}

LatticeMap sigma_star(const K3Frame& f) {
  QMat m = QMat::identity(22);
  for (int k = 0; k < 8; ++k) {
    m(kE1 + k, kE1 + k) = m(kE2 + k, kE2 + k) = 0;
    m(kE1 + k, kE2 + k) = m(kE2 + k, kE1 + k) = 1;
  }
  LatticeMap s{f.lambda, f.lambda, m, Rat(1)};
  if (!s.is_similarity() || m * m != QMat::identity(22))
    throw Error("sigma_star: not an isometry of order 2");
  // restriction to phi(U+N) follows the torsion-translation action:
  // F -> F, S -> 2F+S-Nhat, N_i -> F-N_i
  const QMat& ns = f.phi_ns.coords;
  if (ns.row(0) * m != ns.row(0)) throw Error("sigma_star: F not fixed");
  if (ns.row(1) * m != ns.row(0) * Rat(2) + ns.row(1) - ns.row(9))
    throw Error("sigma_star: S does not map to the 2-torsion section");
  for (int i = 2; i <= 8; ++i)
    if (ns.row(i) * m != ns.row(0) - ns.row(i))
      throw Error("sigma_star: N_i does not map to F-N_i");
  return s;
}

std::vector<Rat> pi_star(const K3Frame& f, const std::vector<Rat>& v) {
  if (v.size() != 22 && v.size() != 30) throw Error("pi_star: vector must be 22 or 30 wide");
  std::vector<Rat> padded = v;
  padded.resize(30, Rat(0));
  return apply_row(padded, f.pi_star_mat);
}

PiUpperResult pi_upper_star(const K3Frame& f, const std::vector<Rat>& w) {
  if (w.size() != 22) throw Error("pi_upper_star: vector must be 22 wide");
  std::vector<Rat> img = apply_row(w, f.pi_upper_mat);
  bool integral = true;  // integral on the sublattice U(2)^3+E8+N, Q-linear beyond
  for (const auto& c : w)
    if (c.get_den() != 1) integral = false;
  return PiUpperResult{img, integral};
}

IsoClassVerdict isometry_class_verdict(const IntegerLattice& a, const IntegerLattice& b) {
  IsoClassVerdict v;
  LatticeInvariants ia = invariants(a), ib = invariants(b);
  v.invariants_match =
      ia.det == ib.det && ia.s_plus == ib.s_plus && ia.s_minus == ib.s_minus && ia.even == ib.even;
  if (!v.invariants_match) {
    v.verdict = "distinct";
    return v;
  }
  auto fv = fqf_isomorphic(discriminant_form(a), discriminant_form(b), fqf_order_bound_from_env());
  v.disc_forms = fv.status;
  if (fv.status == VerdictStatus::No) {
    v.verdict = "distinct";
    return v;
  }
  if (fv.status == VerdictStatus::Inconclusive) {
    v.verdict = "invariants match, isometry undecided";
    return v;
  }
  v.uniqueness = uniqueness_criterion(a);
  v.verdict = v.uniqueness ? "isometric" : "invariants match, isometry undecided";
  return v;
}

QuotientTranscendental compute_quotient_transcendental(const K3Frame& f, const QMat& t_sub) {
  if (t_sub.rows() == 0)
    return QuotientTranscendental{IntegerLattice(QMat(0, 0), "T_Y"), QMat(0, 22), Int(1)};
  QMat rows_lambda = f.t_to_lambda(t_sub);
  if (!rows_lambda.is_integral())
    throw Error("compute_quotient_transcendental: non-integral input");
  auto satx = saturation(Sublattice(f.lambda, rows_lambda));
  if (satx.index != 1)
    throw Error("compute_quotient_transcendental: T_sub is not primitive in H^2(X,Z)");
  QMat pushed = f.yframe_to_h2y(f.push(rows_lambda));
  auto saty = saturation(Sublattice(f.h2y, pushed));
  IntegerLattice out = saty.sub.as_lattice("T_Y");
  return QuotientTranscendental{out, saty.sub.coords, saty.index};
}

QuotientNsReport quotient_ns(const K3Frame& f, const QMat& extras) {
  QuotientNsReport rep;
  QMat extra_lambda(0, 22);
  if (extras.rows() > 0) {
    extra_lambda = f.t_to_lambda(extras);
    IntegerLattice span(extra_lambda * f.lambda.gram * extra_lambda.transpose(), "extras");
    LatticeInvariants ie = invariants(span);
    if (ie.s_plus > 0 || ie.degenerate)
      throw Error("quotient_ns: extra classes must span a negative definite lattice");
  }
  QMat nsx_rows = QMat::vstack(f.phi_ns.coords, extra_lambda);
  auto satx = saturation(Sublattice(f.lambda, nsx_rows));
  rep.ns_x = satx.sub.as_lattice("NS_X");
  rep.ns_x_index = satx.index;
  rep.ns_x_glue_group = quotient_group(satx.sub.coords, nsx_rows);

  QMat nik(8, 22);
  for (int i = 0; i < 8; ++i) nik(i, kNY + i) = 1;  // n1..n7, nhat
  QMat nsy_rows = f.yframe_to_h2y(QMat::vstack(f.push(satx.sub.coords), nik));
  QMat basis = row_span_basis(nsy_rows);  // pushforwards of N_i collapse to F_Y
  auto saty = saturation(Sublattice(f.h2y, basis));
  rep.ns_y = saty.sub.as_lattice("NS_Y");
  rep.ns_y_index = saty.index;
  rep.ns_y_glue_group = quotient_group(saty.sub.coords, basis);
  return rep;
}

}  // namespace k3lat
