#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3lat/normal_form.hpp"

using namespace k3lat;

TEST_CASE("rational matrix basics") {
  QMat a{{1, 2}, {3, 4}};
  CHECK(a.det() == Rat(-2));
  CHECK(a.rank() == 2);
  QMat inv = a.inverse();
  CHECK(a * inv == QMat::identity(2));

  QMat sing{{1, 2}, {2, 4}};
  CHECK(sing.rank() == 1);
  CHECK(sing.det() == Rat(0));
  CHECK_THROWS_AS(sing.inverse(), DegenerateError);
}

TEST_CASE("kernel") {
  QMat a{{1, 2, 3}, {2, 4, 6}};
  QMat k = a.kernel();  // x * a = 0, x in Q^2
  CHECK(k.rows() == 1);
  CHECK((k * a).is_zero());
}

TEST_CASE("parse and print rationals") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK(rat_str(Rat(-3, 6)) == "-1/2");
}

TEST_CASE("floor_sqrt") {
  CHECK(floor_sqrt(Rat(0)) == 0);
  CHECK(floor_sqrt(Rat(8)) == 2);
  CHECK(floor_sqrt(Rat(9)) == 3);
  CHECK(floor_sqrt(Rat(1, 2)) == 0);
  CHECK(floor_sqrt(Rat(17, 4)) == 2);
}

TEST_CASE("smith normal form") {
  SUBCASE("identity") {
    Snf s = smith_normal_form(QMat::identity(3));
    CHECK(s.d == QMat::identity(3));
  }
  SUBCASE("divisibility chain and transform validity") {
    QMat a{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    Snf s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(s.u.det()) == Rat(1));
    CHECK(abs(s.v.det()) == Rat(1));
    auto f = s.invariant_factors();
    for (size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
  }
  SUBCASE("rectangular") {
    QMat a{{2, 0, 0, 4}, {0, 6, 0, 0}};
    Snf s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
  }
}

TEST_CASE("hnf row basis") {
  QMat a{{2, 0}, {0, 3}, {1, 1}};
  QMat h = hnf_row_basis(a);
  CHECK(h.rows() == 2);
  CHECK(abs(h.det()) == Rat(1));  // the rows span Z^2
}

TEST_CASE("integer kernel and saturation") {
  QMat a{{2, -2, 0}};
  QMat k = integer_kernel(a);  // {x : a x^T = 0}
  CHECK(k.rows() == 2);
  CHECK((a * k.transpose()).is_zero());

  QMat rows{{2, 0, 0}, {0, 3, 0}};
  SaturationResult s = saturate_rows(rows);
  CHECK(s.index == 6);
  CHECK(s.basis.rows() == 2);
}

TEST_CASE("quotient group structure") {
  QMat sup = QMat::identity(2);
  QMat sub{{2, 0}, {0, 4}};
  auto q = quotient_group(sup, sub);
  REQUIRE(q.size() == 2);
  CHECK(q[0] == 2);
  CHECK(q[1] == 4);
}
