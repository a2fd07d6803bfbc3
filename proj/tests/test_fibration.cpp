#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3lat/fibration.hpp"
#include "k3lat/atlas.hpp"

using namespace k3lat;

namespace {
FibrationConfig eight_i2_eight_i1(int mw_rank) {
  FibrationConfig cfg;
  for (int i = 0; i < 8; ++i) cfg.fibers.push_back(Fiber{false, 2});
  for (int i = 0; i < 8; ++i) cfg.fibers.push_back(Fiber{false, 1});
  cfg.mw_torsion = {Int(2)};
  cfg.mw_rank = mw_rank;
  return cfg;
}
}  // namespace

TEST_CASE("mwl discriminant identity") {
  // 8I2+8I1, torsion Z/2, |d(NS)| = 2^7 d -> 2d
  for (long d = 1; d <= 4; ++d) {
    auto cfg = eight_i2_eight_i1(1);
    CHECK(mwl_discriminant(cfg, Int(128 * d)) == Rat(Int(2 * d)));
  }
  // 9I2+6I1, torsion Z/2, |d(NS)| = 2^7 -> 1 with rank 0
  FibrationConfig cfg;
  for (int i = 0; i < 9; ++i) cfg.fibers.push_back(Fiber{false, 2});
  for (int i = 0; i < 6; ++i) cfg.fibers.push_back(Fiber{false, 1});
  cfg.mw_torsion = {Int(2)};
  cfg.mw_rank = 0;
  CHECK(mwl_discriminant(cfg, Int(128)) == Rat(1));
  // 6I3+6I1, torsion Z/3, |d(NS)| = 3^4 -> 1
  FibrationConfig c3;
  for (int i = 0; i < 6; ++i) c3.fibers.push_back(Fiber{false, 3});
  for (int i = 0; i < 6; ++i) c3.fibers.push_back(Fiber{false, 1});
  c3.mw_torsion = {Int(3)};
  c3.mw_rank = 0;
  CHECK(mwl_discriminant(c3, Int(81)) == Rat(1));
}

TEST_CASE("height formula") {
  // torsion section through all eight non-trivial I2 components
  auto cfg = eight_i2_eight_i1(1);
  SectionData tor;
  tor.dot_zero = 0;
  for (int i = 0; i < 8; ++i) tor.fiber_contacts[i] = 1;
  CHECK(height(cfg, tor) == Rat(0));

  // G_X in Lambda_d: dot_zero = d-2, all trivial contacts -> 2d
  for (long d = 2; d <= 6; ++d) {
    SectionData g;
    g.dot_zero = Int(d - 2);
    CHECK(height(cfg, g) == Rat(Int(2 * d)));
  }
  // G_X in Lambda_d^(a): dot_zero (d-6)/4, two non-trivial I2 contacts -> d/2
  for (long d : {6L, 10L}) {
    SectionData g;
    g.dot_zero = Int((d - 6) / 4);
    g.fiber_contacts[0] = g.fiber_contacts[1] = 1;
    CHECK(height(cfg, g) == frac(Int(d), Int(2)));
  }
  // invalid component index
  SectionData bad;
  bad.dot_zero = 0;
  bad.fiber_contacts[0] = 5;
  CHECK_THROWS(height(cfg, bad));
}

TEST_CASE("III contributes 1/2") {
  FibrationConfig cfg;
  cfg.fibers.push_back(Fiber{true, 0});
  SectionData s;
  s.dot_zero = 0;
  s.fiber_contacts[0] = 1;
  CHECK(height(cfg, s) == Rat(7, 2));
}

TEST_CASE("section classes") {
  auto t = section_class(SectionKind::Torsion2, 1);
  CHECK(t.norm == -2);
  CHECK(t.f_deg == 1);
  CHECK(t.dot_s == 0);
  CHECK(t.integral_in_ns);

  for (long d = 2; d <= 12; ++d) {
    auto g = section_class(SectionKind::InfiniteLambdaD, d);
    CHECK(g.dot_s == Rat(Int(d - 2)));
    CHECK(g.dot_t == Rat(Int(d)));
    CHECK(g.integral_in_ns);
  }
  for (long d : {6L, 10L}) {
    auto g = section_class(SectionKind::InfiniteLambdaDA, d);
    CHECK(g.dot_s == frac(Int(d - 6), Int(4)));
    CHECK(g.dot_t == frac(Int(d - 2), Int(4)));
    CHECK(g.integral_in_ns);
  }
  for (long d : {4L, 8L, 12L}) {
    auto g = section_class(SectionKind::InfiniteLambdaDB, d);
    CHECK(g.dot_s == frac(Int(d - 4), Int(4)));
    CHECK(g.dot_t == frac(Int(d - 4), Int(4)));
    CHECK(g.integral_in_ns);
  }
}

TEST_CASE("glue chain forward and backward") {
  for (int n = 2; n <= 8; ++n) {
    auto gc = glue_chain(n);
    CHECK(gc.index == n);
    auto inv = invariants(gc.over.lattice);
    CHECK(inv.det * gc.index * gc.index ==
          invariants(direct_sum(direct_sum(atlas::A(n - 1), atlas::A(n - 1)),
                                atlas::diag_lattice({-2 * n})))
              .det);
    CHECK(ade_str(root_type(gc.over.lattice)) == "A" + std::to_string(2 * n - 1));
    // round trip
    CHECK(gc.backward * gc.chain_basis == QMat::identity(2 * n - 1));
    // backward formulas of the chain: a_i^(1) = b_{2i-1} + b_{2i},
    // a_i^(2) = b_{2i} + b_{2i+1}, v = sum b_{2i-1}
    for (int i = 1; i <= n - 1; ++i) {
      QMat a1(1, 2 * n - 1), a2(1, 2 * n - 1);
      a1(0, 2 * i - 2) = a1(0, 2 * i - 1) = 1;
      a2(0, 2 * i - 1) = a2(0, 2 * i) = 1;
      CHECK(gc.backward.row(i - 1) == a1);
      CHECK(gc.backward.row((n - 1) + i - 1) == a2);
    }
    QMat v(1, 2 * n - 1);
    for (int i = 1; i <= n; ++i) v(0, 2 * i - 2) = 1;
    CHECK(gc.backward.row(2 * n - 2) == v);
    // epsilon^2 = -2 at n = 2 becomes the b1^2 = -2 entry in general
    CHECK((gc.chain_basis * direct_sum(direct_sum(atlas::A(n - 1), atlas::A(n - 1)),
                                       atlas::diag_lattice({-2 * n}))
                                .gram *
           gc.chain_basis.transpose())(0, 0) == -2);
  }
  CHECK_THROWS(glue_chain(9));
}

TEST_CASE("n=2 glue chain yields A3 with epsilon of square -2") {
  auto gc = glue_chain(2);
  auto iso = definite_isometric(gc.over.lattice, atlas::A(3));
  CHECK(iso.status == VerdictStatus::Yes);
}

TEST_CASE("weierstrass quotient transform") {
  // generic member: a = 2(t^4+1), b = t^8 + t + 1 type choices
  QPoly a = QPoly::parse("0,0,0,0,1");
  QPoly b = QPoly::parse("1,1,0,0,0,0,0,0,1");
  auto p = discriminant_multiplicities(a, b);
  CHECK_FALSE(p.shared_ab_root);
  std::map<int, int> expect{{2, 8}, {1, 8}};
  CHECK(p.counts == expect);
  CHECK(p.fiber_string() == "8I2+8I1");

  // applying the transform twice gives (4a, 16b)
  auto [a1, b1] = quotient_weierstrass(a, b);
  auto [a2, b2] = quotient_weierstrass(a1, b1);
  CHECK(a2 == a * Rat(4));
  CHECK(b2 == b * Rat(16));

  // the quotient of the generic member again shows 8I2+8I1
  auto pq = discriminant_multiplicities(a1, b1);
  CHECK(pq.counts == expect);
}

TEST_CASE("degenerate discriminant is rejected") {
  // b = 0 makes the discriminant b^2(a^2-4b) vanish identically only if a = 0 too
  CHECK_THROWS(discriminant_multiplicities(QPoly(), QPoly()));
}

TEST_CASE("roots at infinity are counted") {
  // deg b = 4 < 8 with a = 0: disc = -4 b^3 has degree 12, so infinity
  // carries multiplicity 12
  QPoly b = QPoly::parse("1,0,0,0,1");
  auto p = discriminant_multiplicities(QPoly(), b);
  CHECK(p.counts[12] == 1);
}

TEST_CASE("CM family specialization gives I4+7I2+6I1") {
  // a = 2 alpha(t^2), b = alpha^2(t^2)/2 + t beta(t^2), with a double root
  // imposed on alpha^2(t^2) + 2 t beta(t^2) at t = 1.
  QPoly alpha = QPoly::parse("3,1,1");           // alpha(s) = s^2 + s + 3
  QPoly beta = QPoly::parse("-7/4,-47/4,0,1");   // beta(1) = -25/2, beta'(1) = -35/4
  QPoly a = alpha.at_t_squared() * Rat(2);
  QPoly t = QPoly::parse("0,1");
  QPoly b = alpha.at_t_squared() * alpha.at_t_squared() * Rat(1, 2) + t * beta.at_t_squared();
  // double-root bookkeeping: p_plus = alpha^2(t^2) + 2 t beta(t^2)
  QPoly p_plus = alpha.at_t_squared() * alpha.at_t_squared() + t * beta.at_t_squared() * Rat(2);
  CHECK(p_plus.eval(Rat(1)) == 0);
  CHECK(p_plus.derivative().eval(Rat(1)) == 0);
  auto pat = discriminant_multiplicities(a, b);
  std::map<int, int> expect{{4, 1}, {2, 7}, {1, 6}};
  CHECK(pat.counts == expect);
  CHECK(pat.fiber_string() == "I4+7I2+6I1");

  // fiber exchange under the quotient: multiplicity-2 factors of a^2-4b
  // become multiplicity-4 on the quotient side and conversely
  auto [aq, bq] = quotient_weierstrass(a, b);
  auto patq = discriminant_multiplicities(aq, bq);
  CHECK(patq.counts == expect);
}
