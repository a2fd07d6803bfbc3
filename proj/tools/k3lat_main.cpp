// k3lat: exact lattice calculus for K3 quotient bookkeeping.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "k3lat/gamma.hpp"
#include "k3lat/order3.hpp"
#include "k3lat/specialize.hpp"
#include "k3lat/verify.hpp"

using namespace k3lat;

namespace {

CheckParams parse_params(const std::string& s) {
  CheckParams out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto eq = cur.find('=');
    if (eq == std::string::npos) throw Error("params must be k=v pairs: '" + cur + "'");
    out[cur.substr(0, eq)] = cur.substr(eq + 1);
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ',')
      flush();
    else
      cur.push_back(ch);
  }
  flush();
  return out;
}

int cmd_lattice_info(const std::string& name, bool as_json) {
  atlas::NamedLatticeId id = atlas::parse_name(name);
  IntegerLattice l = atlas::make(id);
  if (as_json) {
    std::cout << lattice_to_json(l).dump(2) << "\n";
    return 0;
  }
  LatticeInvariants inv = invariants(l);
  std::cout << l.name << ": rank " << l.rank() << ", det " << inv.det.get_str() << ", signature ("
            << inv.s_plus << "," << inv.s_minus << ")" << (inv.even ? ", even" : ", odd") << "\n";
  if (atlas::has_glue(id)) {
    auto g = atlas::glue_description(id);
    std::cout << "glue: " << g.note << "\n";
    std::cout << "  " << qmat_to_json(g.glue).dump() << "\n";
  }
  if (!l.is_degenerate()) {
    auto disc = discriminant_form(l);
    std::cout << "discriminant group: ";
    if (disc.ngens() == 0)
      std::cout << "trivial";
    for (int i = 0; i < disc.ngens(); ++i)
      std::cout << (i ? " x " : "") << "Z/" << disc.invariant_factors[i].get_str();
    std::cout << "\n";
  }
  return 0;
}

int cmd_quotient_ns(const std::string& extras_path) {
  K3Frame f = build_k3_frame();
  QMat extras(0, 12);
  if (!extras_path.empty()) {
    std::ifstream in(extras_path);
    if (!in) throw Error("cannot open extras file: " + extras_path);
    OJson j = OJson::parse(in);
    extras = qmat_from_json(j.contains("coords") ? j["coords"] : j);
    if (extras.cols() != 12) throw Error("extras rows must have 12 t-coordinates");
  }
  auto rep = quotient_ns(f, extras);
  OJson out;
  out["ns_x"] = invariants_to_json(invariants(rep.ns_x));
  out["ns_x_gram"] = qmat_to_json(rep.ns_x.gram);
  out["ns_y"] = invariants_to_json(invariants(rep.ns_y));
  out["ns_y_gram"] = qmat_to_json(rep.ns_y.gram);
  out["verdict"] = isometry_class_verdict(rep.ns_x, rep.ns_y).verdict;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_gamma(bool print_matrix) {
  K3Frame f = build_k3_frame();
  GammaFrame g = build_gamma_frame(f);
  OJson out;
  out["theta_block"] = qmat_to_json(gamma_on_theta(g));
  out["gamma_plus"] = qmat_to_json(g.gamma_frame_col.submatrix(10, 10, 2, 2));
  out["gamma_plus_squares_to_two"] = g.gamma_plus_squares_to_two;
  if (print_matrix) {
    out["gamma_frame"] = qmat_to_json(g.gamma_frame_col);
    out["gamma_t_coords"] = qmat_to_json(g.gamma_t);
    out["psi"] = qmat_to_json(g.psi);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_specialize(const std::string& chain_path) {
  K3Frame f = build_k3_frame();
  GammaFrame g = build_gamma_frame(f);
  SpecializeContext ctx;
  ctx.ambient = f.lambda;
  ctx.ns0 = f.phi_ns.coords;
  ctx.fs = f.phi_ns.coords.rows_slice(0, 2);
  ctx.t_basis = f.phi_t.coords;

  std::vector<SpecializeStep> steps;
  std::ifstream in(chain_path);
  if (!in) throw Error("cannot open chain file: " + chain_path);
  OJson j = OJson::parse(in);
  for (const auto& step : j["steps"]) {
    SpecializeStep s;
    if (step.is_string()) {
      // named steps reference the five standard specializations
      std::string name = step.get<std::string>();
      if (name.size() == 5 && name.rfind("step", 0) == 0) {
        int i = name[4] - '1';
        if (i < 0 || i > 4) throw Error("named steps are step1..step5");
        s.name = name;
        s.classes = g.theta.rows_slice(2 * i, 2 * i + 2);
      } else {
        throw Error("unknown named step: " + name);
      }
    } else {
      s.name = step.value("name", std::string("step"));
      s.classes = qmat_from_json(step["classes"]);
      if (s.classes.cols() != 12) throw Error("step classes must have 12 t-coordinates");
    }
    steps.push_back(s);
  }
  auto reports = specialize(ctx, steps);
  OJson out = OJson::array();
  for (const auto& r : reports) {
    OJson e;
    e["name"] = r.name;
    e["rho"] = r.rho;
    e["ns"] = invariants_to_json(r.ns_inv);
    e["t"] = invariants_to_json(r.t_inv);
    e["roots"] = ade_to_json(r.roots);
    e["fibers"] = r.fiber_string;
    e["fiber_inference"] = r.fiber_inference;
    e["mw_rank"] = r.mw_rank;
    OJson tors = OJson::array();
    for (const auto& t : r.mw_torsion) tors.push_back(t.get_str());
    e["mw_torsion"] = tors;
    OJson glue = OJson::array();
    for (const auto& t : r.step_glue) glue.push_back(t.get_str());
    e["step_glue"] = glue;
    out.push_back(e);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_weierstrass(const std::string& a_str, const std::string& b_str, bool quotient) {
  QPoly a = QPoly::parse(a_str);
  QPoly b = QPoly::parse(b_str);
  if (quotient) {
    auto [aq, bq] = quotient_weierstrass(a, b);
    a = aq;
    b = bq;
  }
  auto pat = discriminant_multiplicities(a, b);
  OJson out;
  out["a"] = a.str();
  out["b"] = b.str();
  out["fibers"] = pat.fiber_string();
  OJson mults = OJson::object();
  for (const auto& [m, cnt] : pat.counts) mults[std::to_string(m)] = cnt;
  out["multiplicities"] = mults;
  if (pat.shared_ab_root) out["caveat"] = "a and b share a root: a fiber may be of type III";
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_order3(const std::string& check_id) {
  if (!check_id.empty() && check_id != "order3-suite")
    throw Error("order3 exposes the 'order3-suite' check");
  CheckReport rep = run_check("order3-suite");
  std::cout << rep.to_json(true).dump(2) << "\n";
  return rep.status == "pass" ? 0 : 1;
}

int cmd_verify(const std::string& suite, const std::string& check_id, const std::string& params,
               const std::string& out_path, bool stable, bool list) {
  if (list) {
    std::cout << manifest_text();
    return 0;
  }
  CheckParams p = parse_params(params);
  std::vector<CheckReport> reports;
  if (!check_id.empty())
    reports.push_back(run_check(check_id, p));
  else
    reports = verify_all(suite, p);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error("cannot open output file: " + out_path);
    os = &file;
  }
  bool all_pass = true;
  for (const auto& r : reports) {
    *os << r.to_json(stable).dump() << "\n";
    if (r.status == "fail") all_pass = false;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice calculus and verification for K3 quotient bookkeeping"};
  app.require_subcommand(1);

  auto* lat = app.add_subcommand("lattice", "named lattice constructors");
  auto* info = lat->add_subcommand("info", "print invariants and glue provenance");
  std::string lattice_name;
  bool as_json = false;
  info->add_option("name", lattice_name, "e.g. U, N, E8_2, Lambda:6:a, PrimeE8:4")->required();
  info->add_flag("--json", as_json, "emit the lattice file format");

  auto* qns = app.add_subcommand("quotient-ns", "Neron-Severi of the quotient surface");
  std::string extras_path;
  qns->add_option("--extras", extras_path, "JSON file with extra classes in t-coordinates");

  auto* gam = app.add_subcommand("gamma", "the block action of the quotient self map");
  bool print_matrix = false;
  gam->add_flag("--print-matrix", print_matrix, "include the full 12x12 matrices");

  auto* spec = app.add_subcommand("specialize", "run a specialization chain");
  std::string chain_path;
  spec->add_option("--chain", chain_path, "JSON chain file")->required();

  auto* wei = app.add_subcommand("weierstrass", "fiber multiplicities of y^2 = x(x^2+ax+b)");
  std::string a_str, b_str;
  bool quotient = false;
  wei->add_option("--a", a_str, "coefficients c0,c1,... of a(t)")->required();
  wei->add_option("--b", b_str, "coefficients of b(t)")->required();
  wei->add_flag("--quotient", quotient, "apply the 2-isogeny transform first");

  auto* ord3 = app.add_subcommand("order3", "order-3 verification");
  std::string order3_check;
  ord3->add_option("--check", order3_check, "check id (order3-suite)");

  auto* ver = app.add_subcommand("verify", "run registered checks");
  std::string suite = "all", check_id, params, out_path;
  bool stable = false, list = false;
  ver->add_option("--suite", suite, "all | lattice | order2 | order3");
  ver->add_option("--check", check_id, "single check id");
  ver->add_option("--params", params, "k=v,k=v overrides");
  ver->add_option("--out", out_path, "write JSON lines to a file");
  ver->add_flag("--stable", stable, "omit runtimes for byte-stable output");
  ver->add_flag("--list", list, "print the check manifest");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) return cmd_lattice_info(lattice_name, as_json);
    if (*qns) return cmd_quotient_ns(extras_path);
    if (*gam) return cmd_gamma(print_matrix);
    if (*spec) return cmd_specialize(chain_path);
    if (*wei) return cmd_weierstrass(a_str, b_str, quotient);
    if (*ord3) return cmd_order3(order3_check);
    if (*ver) return cmd_verify(suite, check_id, params, out_path, stable, list);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
