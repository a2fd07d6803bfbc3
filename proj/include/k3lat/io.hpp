#pragma once

#include <json.hpp>

#include "k3lat/lattice.hpp"

namespace k3lat {

using OJson = nlohmann::ordered_json;

// Lattice file: { "name": str, "gram": [[int]], "labels": [str]?, "even": bool? }
OJson lattice_to_json(const IntegerLattice& l);
IntegerLattice lattice_from_json(const OJson& j);

// Matrices serialize row-major with exact rational strings.
OJson qmat_to_json(const QMat& m);
QMat qmat_from_json(const OJson& j);

OJson invariants_to_json(const LatticeInvariants& inv);
OJson ade_to_json(const std::vector<AdeComponent>& t);

// Sublattice file: { "ambient": name-or-inline, "coords": [["p/q"]] }
struct SublatticeFile {
  std::string ambient_name;  // empty if inline
  OJson ambient_inline;      // null if named
  QMat coords;
};
SublatticeFile sublattice_from_json(const OJson& j);

}  // namespace k3lat
