#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3lat/atlas.hpp"
#include "k3lat/fqf.hpp"

using namespace k3lat;
using namespace k3lat::atlas;

TEST_CASE("discriminant form of rank one lattices") {
  // <2d>, d=3: Z/6 with q(g) = 1/6 mod 2
  auto f = discriminant_form(diag_lattice({6}));
  REQUIRE(f.ngens() == 1);
  CHECK(f.invariant_factors[0] == 6);
  CHECK(f.q[0] == Rat(1, 6));

  auto g = discriminant_form(diag_lattice({-4}));
  CHECK(g.invariant_factors[0] == 4);
  CHECK(g.q[0] == mod2(Rat(-1, 4)));
}

TEST_CASE("discriminant form rejects odd and degenerate") {
  CHECK_THROWS_AS(discriminant_form(IntegerLattice(QMat{{1}}, "odd")), Error);
  CHECK_THROWS_AS(discriminant_form(IntegerLattice(QMat{{2, 2}, {2, 2}}, "deg")), DegenerateError);
}

TEST_CASE("discriminant forms of E8(2) and N") {
  auto e82 = discriminant_form(E8_scaled2());
  CHECK(e82.order() == 256);
  auto u2_4 = fqf_power(fqf_u2(), 4);
  auto v = fqf_isomorphic(e82, u2_4);
  CHECK(v.status == VerdictStatus::Yes);

  auto n = discriminant_form(nikulin());
  CHECK(n.order() == 64);
  auto u2_3 = fqf_power(fqf_u2(), 3);
  CHECK(fqf_isomorphic(n, u2_3).status == VerdictStatus::Yes);
}

TEST_CASE("u(2) is not Z/2+Z/2 with q=(1,1)") {
  auto bad = fqf_direct_sum(fqf_cyclic(Int(2), Rat(1)), fqf_cyclic(Int(2), Rat(1)));
  auto v = fqf_isomorphic(fqf_u2(), bad);
  CHECK(v.status == VerdictStatus::No);
}

TEST_CASE("reordered sums are isomorphic") {
  auto a = fqf_direct_sum(fqf_u2(), fqf_cyclic(Int(3), Rat(2, 3)));
  auto b = fqf_direct_sum(fqf_cyclic(Int(3), Rat(2, 3)), fqf_u2());
  CHECK(fqf_isomorphic(a, b).status == VerdictStatus::Yes);
}

TEST_CASE("order bound yields inconclusive") {
  auto a = fqf_cyclic(Int(101), Rat(2, 101));
  auto v = fqf_isomorphic(a, a, Int(50));
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK(v.reason.find("order too large") != std::string::npos);
}

TEST_CASE("disc(<2d>+N) vs disc((<2d>+E8(2))') for d=4") {
  auto dn = discriminant_form(direct_sum(diag_lattice({8}), nikulin()));
  auto pe = discriminant_form(make({Family::Prime_2d_E82, 0, 4}));
  auto v = fqf_isomorphic(dn, pe);
  CHECK(v.status == VerdictStatus::Yes);
  // both are Z_{2d}(1/2d) + u(2)^3 at d=4
  auto target = fqf_direct_sum(fqf_cyclic(Int(8), Rat(1, 8)), fqf_power(fqf_u2(), 3));
  CHECK(fqf_isomorphic(dn, target).status == VerdictStatus::Yes);

  // the primed N-side family drops one u(2):
  auto pn = discriminant_form(make({Family::Prime_2d_N, 0, 4}));
  auto target2 = fqf_direct_sum(fqf_cyclic(Int(8), Rat(1, 8)), fqf_power(fqf_u2(), 2));
  CHECK(fqf_isomorphic(pn, target2).status == VerdictStatus::Yes);
}

TEST_CASE("disc form of direct sum splits") {
  auto a = diag_lattice({6});
  auto b = A(2);
  auto lhs = discriminant_form(direct_sum(a, b));
  auto rhs = fqf_direct_sum(discriminant_form(a), discriminant_form(b));
  CHECK(fqf_isomorphic(lhs, rhs).status == VerdictStatus::Yes);
}

TEST_CASE("witness is a genuine isomorphism") {
  auto n = discriminant_form(nikulin());
  auto u2_3 = fqf_power(fqf_u2(), 3);
  auto v = fqf_isomorphic(n, u2_3);
  REQUIRE(v.witness.has_value());
  const QMat& w = *v.witness;
  // images preserve q and b on generators
  for (int i = 0; i < n.ngens(); ++i) {
    std::vector<Int> hi(u2_3.ngens());
    for (int j = 0; j < u2_3.ngens(); ++j) hi[j] = w(i, j).get_num();
    CHECK(u2_3.q_of(hi) == n.q[i]);
    for (int k = 0; k < i; ++k) {
      std::vector<Int> hk(u2_3.ngens());
      for (int j = 0; j < u2_3.ngens(); ++j) hk[j] = w(k, j).get_num();
      CHECK(u2_3.b_of(hi, hk) == n.b(i, k));
    }
  }
}
