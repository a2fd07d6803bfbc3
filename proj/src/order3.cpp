#include "k3lat/order3.hpp"

#include <functional>

#include "k3lat/atlas.hpp"
#include "k3lat/fqf.hpp"

namespace k3lat {

namespace {

constexpr int kM = 2;    // start of the M block
constexpr int kT = 14;   // start of the transcendental block
constexpr int kV1 = 14, kU1 = 16, kA1 = 18, kB1 = 20;

QMat unit_row(int i) {
  QMat r(1, 22);
  r(0, i) = 1;
  return r;
}

QMat m_row(int j, int i) {  // M_i^(j), j in 1..6, i in 1..2
  return unit_row(kM + 2 * (j - 1) + (i - 1));
}

QMat mhat_row() {
  QMat r(1, 22);
  for (int j = 0; j < 6; ++j) {
    r(0, kM + 2 * j) = Rat(1, 3);
    r(0, kM + 2 * j + 1) = Rat(2, 3);
  }
  return r;
}

QMat mhat_prime_row() {
  QMat r(1, 22);
  for (int j = 0; j < 6; ++j) {
    r(0, kM + 2 * j) = Rat(2, 3);
    r(0, kM + 2 * j + 1) = Rat(1, 3);
  }
  return r;
}

}  // namespace

K3Frame3 build_frame3() {
  K3Frame3 f;
  QMat g(22, 22);
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = -2;  // (F, S) block, S a section of square -2
  for (int j = 0; j < 6; ++j) {
    int o = kM + 2 * j;
    g(o, o) = g(o + 1, o + 1) = -2;
    g(o, o + 1) = g(o + 1, o) = 1;
  }
  QMat t3 = atlas::tx3_std().gram;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(kT + i, kT + j) = t3(i, j);
  f.frame = IntegerLattice(g, "U+A2^6+T3");

  // discriminant classes of U+M on the A_2^6 block
  auto eta_sum = [&](int from, int to) {  // sum_{j=from..to} (M_1^(j) + 2 M_2^(j)) / 3
    QMat r(1, 22);
    for (int j = from; j <= to; ++j) {
      r(0, kM + 2 * (j - 1)) = Rat(1, 3);
      r(0, kM + 2 * (j - 1) + 1) = Rat(2, 3);
    }
    return r;
  };
  QMat eta1 = eta_sum(1, 3);
  QMat eta2 = eta_sum(2, 4);
  QMat eta3 = (m_row(2, 1) + m_row(2, 2) * Rat(2) - m_row(3, 1) - m_row(3, 2) * Rat(2)) * Rat(1, 3);
  QMat eta4 = eta_sum(1, 4) + (m_row(5, 1) * Rat(2) + m_row(5, 2)) * Rat(1, 3);
  f.eta = QMat::vstack(QMat::vstack(eta1, eta2), QMat::vstack(eta3, eta4));

  QMat glue = mhat_row();
  glue = QMat::vstack(glue, eta1 + unit_row(kU1) * Rat(1, 3));
  glue = QMat::vstack(glue, eta2 + unit_row(kU1 + 1) * Rat(1, 3));
  glue = QMat::vstack(glue, eta3 + (unit_row(kA1) + unit_row(kA1 + 1) * Rat(2)) * Rat(1, 3));
  glue = QMat::vstack(glue, eta4 + (unit_row(kB1) + unit_row(kB1 + 1) * Rat(2)) * Rat(1, 3));
  f.h2_glue3 = glue;
  Overlattice o = overlattice(f.frame, glue);
  if (o.index != 243) throw Error("order3 frame: glue index is not 3^5");
  f.h2 = o.lattice;
  f.h2.name = "H2X3";
  f.h2_basis = o.base_change;
  f.h2_basis_inv = o.base_change.inverse();
  LatticeInvariants ih = invariants(f.h2);
  if (ih.det != -1 || ih.s_plus != 3 || ih.s_minus != 19 || !ih.even)
    throw Error("order3 frame: H^2 is not even unimodular of signature (3,19)");

  QMat ns(14, 22);
  for (int i = 0; i < 2; ++i) ns(i, i) = 1;
  for (int i = 0; i < 12; ++i) ns(2 + i, kM + i) = 1;
  f.ns_rows = f.frame_to_h2(ns);
  auto sat = saturation(Sublattice(f.h2, f.ns_rows));
  if (sat.index != 3) throw Error("order3 frame: [U+M : U+A2^6] != 3");
  f.ns_basis = sat.sub.coords;
  IntegerLattice ns_lat = sat.sub.as_lattice("U+M");
  {
    LatticeInvariants ii = invariants(ns_lat);
    if (abs(ii.det) != 81 || ii.s_plus != 1 || ii.s_minus != 13)
      throw Error("order3 frame: NS is not U+M");
  }
  QMat t_frame(8, 22);
  for (int i = 0; i < 8; ++i) t_frame(i, kT + i) = 1;
  f.t_rows = f.frame_to_h2(t_frame);
  f.fs_rows = f.frame_to_h2(QMat::vstack(unit_row(0), unit_row(1)));

  // sigma_3 on frame coordinates
  QMat m = QMat(22, 22);
  QMat frow = unit_row(0), srow = unit_row(1);
  QMat t1 = frow * Rat(2) + srow - mhat_prime_row();
  for (int j = 0; j < 22; ++j) m(0, j) = frow(0, j);
  for (int j = 0; j < 22; ++j) m(1, j) = t1(0, j);
  for (int j = 1; j <= 6; ++j) {
    QMat m0 = frow - m_row(j, 1) - m_row(j, 2);
    for (int c = 0; c < 22; ++c) {
      m(kM + 2 * (j - 1), c) = m_row(j, 2)(0, c);  // M_1 -> M_2
      m(kM + 2 * (j - 1) + 1, c) = m0(0, c);       // M_2 -> M_0
    }
  }
  for (int i = kT; i < 22; ++i) m(i, i) = 1;  // trivial on the transcendental side
  f.sigma_frame = m;
  f.sigma_h2 = f.h2_basis * m * f.h2_basis_inv;
  if (!f.sigma_h2.is_integral()) throw Error("order3 frame: sigma does not preserve H^2");

  // invariant part of NS has rank 2 and contains F and S+T1+T2
  QMat c = solve_in_basis(f.ns_basis * f.sigma_h2, f.ns_basis);
  if (!c.is_integral()) throw Error("order3 frame: sigma does not preserve NS");
  QMat c3 = c * c * c;
  if (c3 != QMat::identity(14)) throw Error("order3 frame: sigma is not of order 3 on NS");
  QMat inv_rows = integer_kernel((c - QMat::identity(14)).transpose());
  if (inv_rows.rows() != 2) throw Error("order3 frame: invariant part has wrong rank");
  {
    // S+T1+T2 = 4F + 3S - sum_j (M_1^(j)+M_2^(j))
    QMat s3(1, 22);
    s3(0, 0) = 4;
    s3(0, 1) = 3;
    for (int i = 0; i < 12; ++i) s3(0, kM + i) = -1;
    QMat fv = solve_in_basis(f.frame_to_h2(QMat::vstack(unit_row(0), s3)), f.ns_basis);
    QMat stacked = QMat::vstack(inv_rows, fv);
    if (stacked.rank() != 2)
      throw Error("order3 frame: invariant part does not contain F and S+T1+T2");
  }

  // K12 = complement of the invariant part inside U+M
  Sublattice comp = orthogonal_complement(Sublattice(ns_lat, inv_rows));
  f.k12_basis = comp.coords;
  f.k12 = comp.as_lattice("K12");
  LatticeInvariants ik = invariants(f.k12);
  if (ik.s_minus != 12 || ik.s_plus != 0 || !ik.even)
    throw Error("order3 frame: K12 is not even negative definite of rank 12");

  return f;
}

// The displayed pair of E6(2) diagrams in the frame coordinates; the
// comparison against K12tilde is reported by the order-3 suite (the printed
// classes carry typos, so this is informative rather than a frame check).
QMat e6_diagram_rows(const K3Frame3&) {
  QMat diag(12, 22);
  QMat frow = unit_row(0);
  diag.set_row(0, frow * Rat(2) - mhat_row());
  diag.set_row(1, -frow + m_row(1, 1) + m_row(1, 2) + m_row(2, 2));
  diag.set_row(2, m_row(3, 2) - m_row(2, 2));
  diag.set_row(3, m_row(4, 2) - m_row(3, 2));
  diag.set_row(4, m_row(5, 2) - m_row(4, 2));
  diag.set_row(5, frow - m_row(1, 1) - m_row(1, 2) + m_row(2, 2));
  diag.set_row(6, mhat_prime_row() - mhat_row());
  diag.set_row(7, m_row(1, 2) - m_row(2, 1));
  diag.set_row(8, m_row(2, 1) - m_row(3, 1));
  diag.set_row(9, m_row(3, 1) - m_row(4, 1));
  diag.set_row(10, m_row(4, 1) - m_row(5, 1));
  diag.set_row(11, frow * Rat(2) - m_row(1, 2) - m_row(2, 1));
  return diag;
}

// All even index-3 overlattices of K12tilde, for comparison against K12.
std::vector<IntegerLattice> k12tilde_overlattices() {
  IntegerLattice kt = atlas::make({atlas::Family::K12tilde});
  FiniteQuadraticForm disc = discriminant_form(kt);
  std::vector<IntegerLattice> out;
  int n = disc.ngens();
  std::vector<Int> coef(n, Int(0));
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      bool order3 = false;
      for (int i = 0; i < n; ++i) {
        if (coef[i] == 0) continue;
        Int o = disc.invariant_factors[i] / gcd(disc.invariant_factors[i], coef[i]);
        if (o != 3) return;
        order3 = true;
      }
      if (!order3) return;
      if (disc.q_of(coef) != 0) return;
      QMat glue(1, kt.rank());
      for (int i = 0; i < n; ++i)
        if (coef[i] != 0) glue = glue + disc.generator_lifts.row(i) * Rat(coef[i]);
      Overlattice o = overlattice(kt, glue);
      if (o.index == 3) out.push_back(o.lattice);
      return;
    }
    for (Int c = 0; c < disc.invariant_factors[k]; ++c) {
      coef[k] = c;
      rec(k + 1);
    }
    coef[k] = 0;
  };
  rec(0);
  return out;
}

LatticeMap sigma3(const K3Frame3& f) {
  LatticeMap s{f.h2, f.h2, f.sigma_h2, Rat(1)};
  if (!s.is_similarity()) throw Error("sigma3: not an isometry");
  QMat m3 = f.sigma_h2 * f.sigma_h2 * f.sigma_h2;
  if (m3 != QMat::identity(22)) throw Error("sigma3: not of order 3");
  return s;
}

GammaFrame3 build_gamma3() {
  GammaFrame3 g;
  IntegerLattice t3 = atlas::tx3_std();
  // coordinates (v1, v2, u1, u2, a1, a2, b1, b2)
  QMat theta(6, 8);
  // W1 = u1 - u2, V1 = v1 - v2
  theta(0, 2) = 1;
  theta(0, 3) = -1;
  theta(1, 0) = 1;
  theta(1, 1) = -1;
  // W2 = a1 + 2 a2, V2 = b1
  theta(2, 4) = 1;
  theta(2, 5) = 2;
  theta(3, 6) = 1;
  // W3 = u1 + u2 + 3 a1, V3 = v1 + v2 + b1 + 2 b2
  theta(4, 2) = theta(4, 3) = 1;
  theta(4, 4) = 3;
  theta(5, 0) = theta(5, 1) = 1;
  theta(5, 6) = 1;
  theta(5, 7) = 2;
  g.theta = theta;

  QMat exp_gram(8, 8);
  const long diag[8] = {-6, -2, -6, -2, -12, -4, 12, 4};
  for (int i = 0; i < 8; ++i) exp_gram(i, i) = Rat(Int(diag[i]));
  if (theta * t3.gram * theta.transpose() != exp_gram.submatrix(0, 0, 6, 6))
    throw Error("gamma3: Theta classes fail their norm/orthogonality table");

  Sublattice comp = orthogonal_complement(Sublattice(t3, theta));
  if (comp.rank() != 2) throw Error("gamma3: positive part has wrong rank");
  IntegerLattice comp_lat = comp.as_lattice("T3_pos");
  auto iv = invariants(comp_lat);
  if (iv.det != 48 || iv.s_plus != 2) throw Error("gamma3: positive part invariants");
  IntegerLattice target = atlas::diag_lattice({12, 4});
  auto iso = definite_isometric(target, comp_lat);
  if (iso.status != VerdictStatus::Yes) throw Error("gamma3: positive part is not <12>+<4>");
  g.positive = *iso.witness * comp.coords;
  g.frame = QMat::vstack(theta, g.positive);
  g.frame_gram = exp_gram;
  if (g.frame * t3.gram * g.frame.transpose() != exp_gram)
    throw Error("gamma3: frame Gram mismatch");

  // abstract block action V -> W, W -> 3V on all four pairs
  QMat gc(8, 8);
  for (int i = 0; i < 4; ++i) {
    gc(2 * i, 2 * i + 1) = 1;
    gc(2 * i + 1, 2 * i) = 3;
  }
  g.gamma_col = gc;
  if (gc.transpose() * exp_gram * gc != exp_gram * Rat(3))
    throw Error("gamma3: gamma does not scale the form by 3");
  if (gc * gc != QMat::identity(8) * Rat(3)) throw Error("gamma3: gamma^2 != 3 id");

  // alternate third pair: W3' = b1 + 2 b2, V3' = a1
  QMat alt(2, 8);
  alt(0, 6) = 1;
  alt(0, 7) = 2;
  alt(1, 4) = 1;
  g.theta_alt = alt;
  QMat altg = alt * t3.gram * alt.transpose();
  if (altg(0, 0) != -6 || altg(1, 1) != -2 || altg(0, 1) != 0)
    throw Error("gamma3: alternate pair norms are wrong");
  return g;
}

SpecializeContext specialize3_context(const K3Frame3& f) {
  SpecializeContext ctx;
  ctx.ambient = f.h2;
  ctx.ns0 = f.ns_rows;
  ctx.fs = f.fs_rows;
  ctx.t_basis = f.t_rows;
  ctx.euler = 24;
  return ctx;
}

IntegerLattice um_prime_6d(long d) {
  if (d < 1) throw Error("um_prime_6d: d >= 1 required");
  IntegerLattice base =
      direct_sum(atlas::make({atlas::Family::UM}), atlas::diag_lattice({-6 * d}));
  FiniteQuadraticForm disc = discriminant_form(base);
  int n = disc.ngens();
  // search for an order-3 isotropic class with nontrivial parts on both
  // summands; generator lifts give the glue vector
  IntegerLattice result;
  std::vector<Int> coef(n, Int(0));
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n) {
      std::vector<Int> elt = coef;
      bool m_part = false, v_part = false;
      QMat glue(1, base.rank());
      for (int i = 0; i < n; ++i) {
        if (coef[i] == 0) continue;
        glue = glue + disc.generator_lifts.row(i) * Rat(coef[i]);
      }
      // order 3 and isotropic
      bool order3 = true;
      for (int i = 0; i < n; ++i) {
        Int o = disc.invariant_factors[i] / gcd(disc.invariant_factors[i], coef[i] == 0 ? disc.invariant_factors[i] : coef[i]);
        if (coef[i] != 0 && o != 3) order3 = false;
      }
      if (!order3) return false;
      if (disc.q_of(elt) != 0) return false;
      for (int j = 0; j < base.rank(); ++j) {
        if (glue(0, j).get_den() == 1) continue;
        if (j < 14) m_part = true;
        else v_part = true;
      }
      if (!m_part || !v_part) return false;
      Overlattice o = overlattice(base, glue);
      if (o.index != 3) return false;
      IntegerLattice out = o.lattice;
      out.name = "(U+M+<-" + std::to_string(6 * d) + ">)'";
      result = out;
      return true;
    }
    for (Int c = 0; c < disc.invariant_factors[k]; ++c) {
      coef[k] = c;
      if (rec(k + 1)) return true;
    }
    coef[k] = 0;
    return false;
  };
  if (!rec(0)) throw Error("um_prime_6d: no index-3 glue found");
  return result;
}

}  // namespace k3lat
