#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3lat/atlas.hpp"
#include "k3lat/fqf.hpp"

using namespace k3lat;
using namespace k3lat::atlas;

TEST_CASE("LambdaK3 is the K3 lattice") {
  auto l = make({Family::LambdaK3});
  auto inv = invariants(l);
  CHECK(inv.det == -1);
  CHECK(inv.s_plus == 3);
  CHECK(inv.s_minus == 19);
  CHECK(inv.even);
}

TEST_CASE("M has rank 12, det 3^4, negative definite") {
  auto m = make({Family::M});
  auto inv = invariants(m);
  CHECK(m.rank() == 12);
  CHECK(inv.det == 81);
  CHECK(inv.s_plus == 0);
  CHECK(inv.s_minus == 12);
  CHECK(inv.even);
}

TEST_CASE("Lambda_6^(a): overlattice determinant identity") {
  auto l = make({Family::Lambda_d_a, 0, 6});
  auto inv = invariants(l);
  CHECK(abs(inv.det) == 192);  // (2^6 * 12) / 4
  CHECK(inv.s_plus == 1);
  CHECK(inv.s_minus == 10);
  CHECK(inv.even);
  CHECK_THROWS(make({Family::Lambda_d_a, 0, 4}));
  CHECK_THROWS(make({Family::Lambda_d_b, 0, 6}));
}

TEST_CASE("glue descriptions") {
  auto ga = glue_description({Family::Lambda_d_a, 0, 6});
  CHECK(ga.glue.rows() == 1);
  CHECK(ga.note.find("delta_1 + delta_2") != std::string::npos);
  auto gb = glue_description({Family::Lambda_d_b, 0, 8});
  CHECK(gb.glue.rows() == 1);
  CHECK_FALSE(has_glue({Family::UN}));
  CHECK_THROWS_AS(glue_description({Family::UN}), Error);
}

TEST_CASE("signature table") {
  CHECK(invariants(make({Family::N})).s_minus == 8);
  CHECK(invariants(make({Family::M})).s_minus == 12);
  auto k12t = invariants(make({Family::K12tilde}));
  CHECK(k12t.s_plus == 0);
  CHECK(k12t.s_minus == 12);
  for (long d = 1; d <= 4; ++d) {
    auto inv = invariants(make({Family::Lambda_d, 0, d}));
    CHECK(inv.s_plus == 1);
    CHECK(inv.s_minus == 10);
    CHECK(inv.even);
  }
}

TEST_CASE("K12tilde index 3 overlattices exist and match K12") {
  auto k12t = make({Family::K12tilde});
  auto k12 = make({Family::K12});
  auto it = invariants(k12t);
  auto ik = invariants(k12);
  CHECK(ik.det * 9 == it.det);
  CHECK(ik.s_minus == 12);
  CHECK(ik.even);
}

TEST_CASE("(<4e>+N)' vs <4e>+N: cited isometry at invariant level") {
  for (long e = 1; e <= 6; ++e) {
    auto prime = make({Family::Prime_2d_E82, 0, 2 * e});  // (<4e>+E8(2))'
    auto sum = direct_sum(diag_lattice({4 * e}), nikulin());
    auto ip = invariants(prime);
    auto is = invariants(sum);
    CHECK(ip.det == is.det);
    CHECK(ip.s_plus == is.s_plus);
    CHECK(ip.s_minus == is.s_minus);
    CHECK(ip.even);
    auto v = fqf_isomorphic(discriminant_form(prime), discriminant_form(sum));
    CHECK(v.status == VerdictStatus::Yes);
    CHECK(uniqueness_criterion(prime));
  }
}

TEST_CASE("TX_std and LambdaK3 bases") {
  auto tx = make({Family::TX_std});
  auto inv = invariants(tx);
  CHECK(inv.s_plus == 2);
  CHECK(inv.s_minus == 10);
  CHECK(abs(inv.det) == 64);
  auto tx3 = make({Family::TX3_std});
  auto i3 = invariants(tx3);
  CHECK(i3.s_plus == 2);
  CHECK(i3.s_minus == 6);
  CHECK(abs(i3.det) == 81);
}

TEST_CASE("name parsing") {
  CHECK(make(parse_name("U")).rank() == 2);
  CHECK(make(parse_name("U:2")).gram(0, 1) == 2);
  CHECK(make(parse_name("diag:-4")).gram(0, 0) == -4);
  CHECK(make(parse_name("A:3")).rank() == 3);
  CHECK(make(parse_name("Lambda:6:a")).rank() == 11);
  CHECK(make(parse_name("PrimeE8:4")).rank() == 9);
  CHECK_THROWS_AS(parse_name("nope"), Error);
}
