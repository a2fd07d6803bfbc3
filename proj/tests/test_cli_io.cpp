#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "k3lat/verify.hpp"
#include "k3lat/atlas.hpp"
#include "k3lat/fqf.hpp"

using namespace k3lat;

TEST_CASE("lattice json round trip") {
  IntegerLattice n = atlas::nikulin();
  OJson j = lattice_to_json(n);
  IntegerLattice back = lattice_from_json(j);
  CHECK(back.gram == n.gram);
  CHECK(back.name == n.name);
  CHECK(back.labels == n.labels);
  CHECK(j["even"].get<bool>());
}

TEST_CASE("rational matrices serialize exactly") {
  QMat m(1, 3);
  m(0, 0) = Rat(1, 2);
  m(0, 1) = Rat(-7);
  m(0, 2) = frac(6, 4);
  OJson j = qmat_to_json(m);
  CHECK(j[0][0] == "1/2");
  CHECK(j[0][2] == "3/2");
  CHECK(qmat_from_json(j) == m);
}

TEST_CASE("sublattice file parsing") {
  OJson j;
  j["ambient"] = "U";
  j["coords"] = OJson::array({OJson::array({"1/2", "0"})});
  auto f = sublattice_from_json(j);
  CHECK(f.ambient_name == "U");
  CHECK(f.coords(0, 0) == Rat(1, 2));
}

TEST_CASE("report json is deterministic and respects --stable") {
  CheckReport a = run_check("disc-forms");
  CheckReport b = run_check("disc-forms");
  CHECK(a.to_json(true).dump() == b.to_json(true).dump());
  CHECK(a.to_json(true).dump().find("runtime") == std::string::npos);
  CHECK(a.to_json(false).dump().find("runtime_ms") != std::string::npos);
}

TEST_CASE("registry is sorted and manifest lists every check") {
  const auto& defs = check_registry();
  for (size_t i = 0; i + 1 < defs.size(); ++i) CHECK(defs[i].id < defs[i + 1].id);
  std::string manifest = manifest_text();
  for (const auto& d : defs) CHECK(manifest.find("| " + d.id + " |") != std::string::npos);
  CHECK(is_known_check("glue-lemma"));
  CHECK_FALSE(is_known_check("nope"));
  CHECK_THROWS_AS(run_check("nope"), Error);
}

TEST_CASE("fqf bound env override") {
  setenv("K3LAT_FQF_BOUND", "7", 1);
  CHECK(fqf_order_bound_from_env() == 7);
  unsetenv("K3LAT_FQF_BOUND");
  CHECK(fqf_order_bound_from_env() == 100000);
}

TEST_CASE("verify_all filters by suite") {
  auto lattice_only = verify_all("lattice", {{"trials", "5"}});
  for (const auto& r : lattice_only) {
    bool found = false;
    for (const auto& d : check_registry())
      if (d.id == r.check_id && d.suite == "lattice") found = true;
    CHECK(found);
  }
  CHECK(lattice_only.size() == 3);  // disc-forms, glue-lemma, property-suite
}
