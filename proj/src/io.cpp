#include "k3lat/io.hpp"

namespace k3lat {

OJson lattice_to_json(const IntegerLattice& l) {
  OJson j;
  j["name"] = l.name;
  OJson gram = OJson::array();
  for (int i = 0; i < l.rank(); ++i) {
    OJson row = OJson::array();
    for (int k = 0; k < l.rank(); ++k) row.push_back((long long)l.gram(i, k).get_num().get_si());
    gram.push_back(row);
  }
  j["gram"] = gram;
  if (!l.labels.empty()) j["labels"] = l.labels;
  j["even"] = l.is_even();
  return j;
}

IntegerLattice lattice_from_json(const OJson& j) {
  if (!j.contains("gram")) throw Error("lattice json: missing 'gram'");
  const auto& g = j["gram"];
  int n = int(g.size());
  QMat gram(n, n);
  for (int i = 0; i < n; ++i) {
    if (int(g[i].size()) != n) throw Error("lattice json: gram is not square");
    for (int k = 0; k < n; ++k) {
      if (g[i][k].is_number_integer())
        gram(i, k) = Rat(Int((long)g[i][k].get<long long>()));
      else
        gram(i, k) = parse_rat(g[i][k].get<std::string>());
    }
  }
  std::string name = j.value("name", std::string());
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  IntegerLattice l(gram, name, labels);
  if (j.contains("even") && j["even"].get<bool>() && !l.is_even())
    throw Error("lattice json: flagged even but the Gram has odd diagonal entries");
  return l;
}

OJson qmat_to_json(const QMat& m) {
  OJson rows = OJson::array();
  for (int i = 0; i < m.rows(); ++i) {
    OJson row = OJson::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(rat_str(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

QMat qmat_from_json(const OJson& j) {
  int r = int(j.size());
  int c = r ? int(j[0].size()) : 0;
  QMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(j[i].size()) != c) throw Error("matrix json: ragged rows");
    for (int k = 0; k < c; ++k) {
      if (j[i][k].is_number_integer())
        m(i, k) = Rat(Int((long)j[i][k].get<long long>()));
      else
        m(i, k) = parse_rat(j[i][k].get<std::string>());
    }
  }
  return m;
}

OJson invariants_to_json(const LatticeInvariants& inv) {
  OJson j;
  j["det"] = inv.det.get_str();
  j["signature"] = OJson::array({inv.s_plus, inv.s_minus});
  j["even"] = inv.even;
  if (inv.degenerate) j["degenerate"] = true;
  return j;
}

OJson ade_to_json(const std::vector<AdeComponent>& t) {
  OJson a = OJson::array();
  for (const auto& c : t) a.push_back(std::string(1, c.letter) + std::to_string(c.rank));
  return a;
}

SublatticeFile sublattice_from_json(const OJson& j) {
  SublatticeFile f;
  if (!j.contains("coords")) throw Error("sublattice json: missing 'coords'");
  f.coords = qmat_from_json(j["coords"]);
  if (j.contains("ambient")) {
    if (j["ambient"].is_string())
      f.ambient_name = j["ambient"].get<std::string>();
    else
      f.ambient_inline = j["ambient"];
  }
  return f;
}

}  // namespace k3lat
