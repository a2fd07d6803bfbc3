#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "k3lat/frame2.hpp"

using namespace k3lat;

namespace {
const K3Frame& frame() {
  static K3Frame f = build_k3_frame();
  return f;
}

QMat t_row(int i) {  // unit row in t-coordinates, i in 1..12
  QMat r(1, 12);
  r(0, i - 1) = 1;
  return r;
}
}  // namespace

TEST_CASE("frame construction self-checks pass") {
  const K3Frame& f = frame();
  CHECK(f.phi_ns.rank() == 10);
  CHECK(f.phi_t.rank() == 12);
  // phi(S)^2 = -2 and phi(S).phi(F) = 1
  QMat g = f.phi_ns.induced_gram();
  CHECK(g(1, 1) == -2);
  CHECK(g(0, 1) == 1);
  // phi(Nhat).phi(N1) = -1
  CHECK(g(9, 2) == -1);
}

TEST_CASE("sigma_star") {
  const K3Frame& f = frame();
  LatticeMap s = sigma_star(f);
  CHECK(s.is_similarity());

  // anti-invariant lattice is spanned by e_k^(1) - e_k^(2) with Gram E8(2)
  QMat anti = integer_kernel((s.matrix + QMat::identity(22)).transpose());
  CHECK(anti.rows() == 8);
  QMat expected(8, 22);
  for (int k = 0; k < 8; ++k) {
    expected(k, 6 + k) = 1;
    expected(k, 14 + k) = -1;
  }
  CHECK(quotient_group(hnf_row_basis(anti), hnf_row_basis(expected)).empty());
  CHECK(expected * f.lambda.gram * expected.transpose() == atlas::E8_scaled2().gram);

  // phi(N5 - N6) = e_3^(1) - e_3^(2), anti-invariant
  QMat n5n6 = f.phi_ns.coords.row(6) - f.phi_ns.coords.row(7);
  QMat e3diff(1, 22);
  e3diff(0, 6 + 2) = 1;
  e3diff(0, 14 + 2) = -1;
  CHECK(n5n6 == e3diff);
  CHECK(n5n6 * s.matrix == -n5n6);

  // invariant lattice is U^3 + E8(2) up to isometry
  QMat invb = integer_kernel((s.matrix - QMat::identity(22)).transpose());
  IntegerLattice inv_lat(invb * f.lambda.gram * invb.transpose(), "invariant");
  auto ii = invariants(inv_lat);
  CHECK(ii.s_plus == 3);
  CHECK(ii.s_minus == 11);
  CHECK(ii.det == -256);
  auto v = isometry_class_verdict(
      inv_lat, direct_sum(direct_sum(atlas::U(), direct_sum(atlas::U(), atlas::U())),
                          atlas::E8_scaled2()));
  CHECK(v.verdict == "isometric");
}

TEST_CASE("pi_star and pi_upper_star") {
  const K3Frame& f = frame();
  // pi_* pi^* = 2 on the whole Y frame (including the Nikulin block)
  QMat comp = f.pi_upper_mat * f.pi_star_mat;
  CHECK(comp == QMat::identity(22) * Rat(2));

  // pi^* pi_* = 1 + sigma^* on H^2(X)
  LatticeMap s = sigma_star(f);
  QMat proj30 = f.pi_star_mat * f.pi_upper_mat;  // lambda_tilde -> lambda_tilde
  QMat restr(22, 22);
  for (int i = 0; i < 22; ++i)
    for (int j = 0; j < 22; ++j) restr(i, j) = proj30(i, j);
  CHECK(restr == QMat::identity(22) + s.matrix);

  // pi_*(u_1^(1)) has square 0 and pairs to 2 with pi_*(u_2^(1))
  std::vector<Rat> u1(22, Rat(0)), u2v(22, Rat(0));
  u1[0] = 1;
  u2v[1] = 1;
  auto pu1 = pi_star(f, u1);
  auto pu2 = pi_star(f, u2v);
  QMat m1 = QMat::row_vector(pu1), m2 = QMat::row_vector(pu2);
  CHECK((m1 * f.y_frame.gram * m1.transpose())(0, 0) == 0);
  CHECK((m1 * f.y_frame.gram * m2.transpose())(0, 0) == 2);
}

TEST_CASE("pi_upper_star flags the rational extension") {
  const K3Frame& f = frame();
  std::vector<Rat> on_sublattice(22, Rat(0));
  on_sublattice[6] = 1;  // E_1
  CHECK(pi_upper_star(f, on_sublattice).integral);
  std::vector<Rat> glue_class(22, Rat(0));
  for (int j = 0; j < 22; ++j) glue_class[j] = f.y_glue(4, j);  // (tau_1+n_1+n_2)/2
  CHECK_FALSE(pi_upper_star(f, glue_class).integral);
}

TEST_CASE("saturation finds the divided pushforward classes") {
  const K3Frame& f = frame();
  // span of pi_*(t1) + pi_*(t2) contains (pi_*(t1+t2))/2 after saturation
  QMat one_row = f.yframe_to_h2y(f.push(f.t_to_lambda(t_row(1) + t_row(2))));
  auto sat = saturation(Sublattice(f.h2y, one_row));
  CHECK(sat.index == 2);
}

TEST_CASE("quotient transcendental lattice of the full T_X") {
  const K3Frame& f = frame();
  auto qt = compute_quotient_transcendental(f, QMat::identity(12));
  CHECK(qt.sat_index == 64);
  auto inv = invariants(qt.lattice);
  CHECK(inv.s_plus == 2);
  CHECK(inv.s_minus == 10);
  CHECK(abs(inv.det) == 64);
  CHECK(inv.even);
  auto disc = discriminant_form(qt.lattice);
  CHECK(fqf_isomorphic(disc, fqf_power(fqf_u2(), 3)).status == VerdictStatus::Yes);
  // hence isometric to U+U+N by the uniqueness criterion
  auto v = isometry_class_verdict(qt.lattice, atlas::tx_std());
  CHECK(v.verdict == "isometric");
}

TEST_CASE("quotient transcendental for the rank 11 families") {
  const K3Frame& f = frame();
  for (long d : {1L, 2L, 3L}) {
    // T_X11 = <t_1..t_10, t_11 + d t_12>
    QMat rows(11, 12);
    for (int i = 0; i < 10; ++i) rows(i, i) = 1;
    rows(10, 10) = 1;
    rows(10, 11) = Rat(Int(d));
    auto qt = compute_quotient_transcendental(f, rows);
    auto inv = invariants(qt.lattice);
    CHECK(abs(inv.det) == 64 * d);
    // A_{T_Y} = (Z/2)^4 x Z/4d
    auto disc = discriminant_form(qt.lattice);
    std::vector<Int> expect{2, 2, 2, 2, Int(4 * d)};
    auto got = disc.group_invariants();
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
  }
}

TEST_CASE("rank 0 sublattice maps to rank 0") {
  const K3Frame& f = frame();
  auto qt = compute_quotient_transcendental(f, QMat(0, 12));
  CHECK(qt.lattice.rank() == 0);
}

TEST_CASE("non-primitive input is rejected") {
  const K3Frame& f = frame();
  CHECK_THROWS(compute_quotient_transcendental(f, t_row(1) * Rat(2)));
}

TEST_CASE("quotient_ns: generic (no extras) gives U+N on both sides") {
  const K3Frame& f = frame();
  auto rep = quotient_ns(f, QMat(0, 12));
  CHECK(rep.ns_x.rank() == 10);
  CHECK(rep.ns_y.rank() == 10);
  auto vx = isometry_class_verdict(rep.ns_x, atlas::make({atlas::Family::UN}));
  auto vy = isometry_class_verdict(rep.ns_y, atlas::make({atlas::Family::UN}));
  CHECK(vx.verdict == "isometric");
  CHECK(vy.verdict == "isometric");
}

TEST_CASE("quotient_ns: the rank 11 correspondences") {
  const K3Frame& f = frame();
  SUBCASE("Lambda_d with d = 3 lands in Lambda_{2d}^(a)") {
    QMat extras(1, 12);
    extras(0, 10) = 1;
    extras(0, 11) = -3;
    auto rep = quotient_ns(f, extras);
    auto v = isometry_class_verdict(rep.ns_y, atlas::make({atlas::Family::Lambda_d_a, 0, 6}));
    CHECK(v.verdict == "isometric");
    auto vx = isometry_class_verdict(rep.ns_x, atlas::make({atlas::Family::Lambda_d, 0, 3}));
    CHECK(vx.verdict == "isometric");
  }
  SUBCASE("Lambda_6^(a) lands in Lambda_3") {
    // d = 6 = 4k+2, k=1: V = t1+t2+2t11-2t12
    QMat extras(1, 12);
    extras(0, 0) = extras(0, 1) = 1;
    extras(0, 10) = 2;
    extras(0, 11) = -2;
    auto rep = quotient_ns(f, extras);
    auto vx = isometry_class_verdict(rep.ns_x, atlas::make({atlas::Family::Lambda_d_a, 0, 6}));
    CHECK(vx.verdict == "isometric");
    auto v = isometry_class_verdict(rep.ns_y, atlas::make({atlas::Family::Lambda_d, 0, 3}));
    CHECK(v.verdict == "isometric");
  }
  SUBCASE("rank 12 with d=2e=2: NS_X and NS_Y agree") {
    QMat extras(2, 12);
    extras(0, 0) = extras(0, 1) = 1;
    extras(0, 10) = 2;  // V = t1+t2+2t11 (k=0 form of the d=2 class)
    extras(1, 8) = 1;
    extras(1, 9) = -1;  // W = t9 - t10
    auto rep = quotient_ns(f, extras);
    auto v = isometry_class_verdict(rep.ns_x, rep.ns_y);
    CHECK(v.verdict == "isometric");
    auto target = direct_sum(atlas::make({atlas::Family::Lambda_d_a, 0, 2}),
                             atlas::diag_lattice({-2}));
    CHECK(isometry_class_verdict(rep.ns_x, target).verdict == "isometric");
  }
  SUBCASE("indefinite extras are rejected") {
    QMat extras(1, 12);
    extras(0, 8) = 1;  // t9 is isotropic
    CHECK_THROWS(quotient_ns(f, extras));
  }
}

TEST_CASE("the antiinvariant diagram inside U+N") {
  // chain 2F-Nhat, -F+N6+N7, N5-N6, N4-N5, N3-N4, N2-N3, N1-N2 with branch
  // N6-N7 glued at the third node; its Gram is E8(2) in the frozen node
  // convention and its complement in U+N is the rank-2 invariant part
  IntegerLattice un = atlas::make({atlas::Family::UN});
  auto r = [&](std::initializer_list<std::pair<int, long>> terms) {
    QMat v(1, 10);
    for (auto [i, cf] : terms) v(0, i) += Rat(cf);
    return v;
  };
  // coordinates: F=0 S=1 N1..N7=2..8 Nhat=9
  QMat diag(8, 10);
  diag.set_row(0, r({{0, 2}, {9, -1}}));
  diag.set_row(1, r({{0, -1}, {7, 1}, {8, 1}}));
  diag.set_row(2, r({{6, 1}, {7, -1}}));
  diag.set_row(3, r({{5, 1}, {6, -1}}));
  diag.set_row(4, r({{4, 1}, {5, -1}}));
  diag.set_row(5, r({{3, 1}, {4, -1}}));
  diag.set_row(6, r({{2, 1}, {3, -1}}));
  diag.set_row(7, r({{7, 1}, {8, -1}}));  // branch at the third node
  CHECK(diag * un.gram * diag.transpose() == atlas::E8_scaled2().gram);

  Sublattice comp = orthogonal_complement(Sublattice(un, diag));
  CHECK(comp.rank() == 2);
  // contains F
  QMat f(1, 10);
  f(0, 0) = 1;
  CHECK(solve_in_basis(f, comp.coords).is_integral());
}
