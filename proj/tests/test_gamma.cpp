#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3lat/gamma.hpp"
#include "k3lat/specialize.hpp"

using namespace k3lat;

namespace {
const K3Frame& frame() {
  static K3Frame f = build_k3_frame();
  return f;
}
const GammaFrame& gframe() {
  static GammaFrame g = build_gamma_frame(frame());
  return g;
}
}  // namespace

TEST_CASE("theta norms from the specialization classes") {
  const GammaFrame& g = gframe();
  IntegerLattice tx = atlas::tx_std();
  QMat gr = g.theta * tx.gram * g.theta.transpose();
  // V2 = t5 has norm -2; W5 has norm -8; V5 has norm -4
  CHECK(gr(3, 3) == -2);
  CHECK(gr(8, 8) == -8);
  CHECK(gr(9, 9) == -4);
  // positive part determinant 32 with Gram exactly diag(8,4)
  QMat pg = g.positive * tx.gram * g.positive.transpose();
  CHECK(pg == QMat{{8, 0}, {0, 4}});
}

TEST_CASE("gamma acts by [[0,1],[2,0]] blocks") {
  const GammaFrame& g = gframe();
  QMat th = gamma_on_theta(g);
  QMat expect(10, 10);
  for (int i = 0; i < 5; ++i) {
    expect(2 * i, 2 * i + 1) = 1;
    expect(2 * i + 1, 2 * i) = 2;
  }
  CHECK(th == expect);
  // gamma(V_1) = W_1 and gamma(W_1) = 2 V_1 as honest vectors
  CHECK(g.theta.row(1) * g.gamma_t == g.theta.row(0));
  CHECK(g.theta.row(0) * g.gamma_t == g.theta.row(1) * Rat(2));
  // <gamma x, gamma y> = 2 <x, y> on the theta span
  IntegerLattice tx = atlas::tx_std();
  QMat img = g.theta * g.gamma_t;
  CHECK(img * tx.gram * img.transpose() == (g.theta * tx.gram * g.theta.transpose()) * Rat(2));
}

TEST_CASE("gamma squared is multiplication by 2 on the theta span") {
  const GammaFrame& g = gframe();
  QMat sq = g.theta * g.gamma_t * g.gamma_t;
  CHECK(sq == g.theta * Rat(2));
}

TEST_CASE("gamma_plus") {
  const GammaFrame& g = gframe();
  CHECK(g.gamma_plus_integral);
  QMat gp = g.gamma_frame_col.submatrix(10, 10, 2, 2);
  QMat gpos{{8, 0}, {0, 4}};
  // column convention scaling: gp^T G gp = 2 G
  CHECK(gp.transpose() * gpos * gp == gpos * Rat(2));
}

TEST_CASE("psi is a genuine isometry identification") {
  const K3Frame& f = frame();
  const GammaFrame& g = gframe();
  QMat g_ty = f.tau * f.y_frame.gram * f.tau.transpose();
  CHECK(g.psi.is_integral());
  CHECK(abs(g.psi.det()) == 1);
  CHECK(g.psi * atlas::tx_std().gram * g.psi.transpose() == g_ty);
}

TEST_CASE("nu matrix and its certificate") {
  const GammaFrame& g = gframe();
  NuResult nu = nu_matrix(g);
  CHECK(nu.matrix * nu.matrix == QMat::identity(12) * Rat(-2));
  QMat expect(12, 12);
  for (int i = 0; i < 6; ++i) {
    expect(2 * i, 2 * i + 1) = -2;
    expect(2 * i + 1, 2 * i) = 1;
  }
  // column convention: entry (r, c) is the r-th coordinate of nu(frame_c)
  CHECK(nu.matrix == expect.transpose());
  CHECK(nu.certificate.size() == 3);

  auto m3 = solve_cm(3);
  REQUIRE(m3.size() == 2);
  CHECK(m3[0] == QMat{{0, 1}, {-3, 0}});
  CHECK(m3[1] == QMat{{0, -1}, {3, 0}});
}

TEST_CASE("invariance criterion") {
  const K3Frame& f = frame();
  const GammaFrame& g = gframe();
  IntegerLattice tx = atlas::tx_std();

  SUBCASE("complement of <W1, V1> is invariant and predicts matching NS") {
    Sublattice comp = orthogonal_complement(Sublattice(tx, g.theta.rows_slice(0, 2)));
    auto v = gamma_invariance_check(f, g, comp.coords);
    CHECK(v.invariant);
    CHECK(v.ns_match_verdict == "isometric");
  }
  SUBCASE("complement of <V1> alone is not invariant") {
    Sublattice comp = orthogonal_complement(Sublattice(tx, g.theta.rows_slice(1, 2)));
    auto v = gamma_invariance_check(f, g, comp.coords);
    CHECK_FALSE(v.invariant);
  }
  SUBCASE("full T_X is invariant") {
    auto v = gamma_invariance_check(f, g, QMat::identity(12));
    CHECK(v.invariant);
    CHECK(v.ns_match_verdict == "isometric");
  }
}

TEST_CASE("five specializations chain (compact)") {
  const K3Frame& f = frame();
  const GammaFrame& g = gframe();
  SpecializeContext ctx;
  ctx.ambient = f.lambda;
  ctx.ns0 = f.phi_ns.coords;
  ctx.fs = f.phi_ns.coords.rows_slice(0, 2);
  ctx.t_basis = f.phi_t.coords;
  std::vector<SpecializeStep> steps;
  for (int i = 0; i < 5; ++i)
    steps.push_back({"s", g.theta.rows_slice(2 * i, 2 * i + 2)});
  auto reps = specialize(ctx, steps);
  REQUIRE(reps.size() == 5);
  CHECK(reps[0].fiber_string == "I4+7I2+6I1");
  CHECK(reps[3].fiber_string == "4I4+4I2");
  CHECK(reps[4].fiber_string == "I8+3I4+2I2");
  CHECK(reps[4].rho == 20);
  CHECK(abs(reps[4].ns_inv.det) == 32);
  std::vector<Int> z42{2, 4};
  CHECK(reps[3].mw_torsion == z42);
  CHECK(reps[3].step_glue == z42);  // order 8 = 2 * 4
}

TEST_CASE("the identification fixture is frozen") {
  // The deterministic search must keep reproducing this exact matrix; any
  // change to the frame data or the search order shows up here.
  QMat expected{{1, 1, 1, 1, 1, 1, 2, -2, 0, 0, 0, -2},
                {0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, -1},
                {0, 0, 0, 0, 0, 0, 1, 0, -1, 0, -1, 0},
                {1, 1, 1, 1, 1, 0, 2, -2, 0, 0, -2, -1},
                {1, 1, 1, 1, 1, 0, 1, -2, 0, 1, -1, -1},
                {0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0},
                {0, 0, 0, -1, -1, 0, -1, 1, 0, 0, 1, 1},
                {0, 1, 0, -1, -1, 0, 1, 0, -2, 0, 0, 0},
                {-1, -1, -1, -1, -2, 0, -2, 2, 0, 0, 2, 2},
                {-1, 0, -1, -1, -1, 0, -2, 2, 0, 0, 2, 2},
                {2, 1, 1, 2, 1, 1, 0, -2, 2, 2, 0, 0},
                {1, 1, 2, 2, 1, 1, 0, -2, 2, 2, 0, 0}};
  CHECK(gframe().psi == expected);
}
