#include "k3lat/verify.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "k3lat/gamma.hpp"
#include "k3lat/order3.hpp"
#include "k3lat/specialize.hpp"

namespace k3lat {

namespace {

const K3Frame& the_frame() {
  static K3Frame f = build_k3_frame();
  return f;
}
const GammaFrame& the_gamma() {
  static GammaFrame g = build_gamma_frame(the_frame());
  return g;
}
const K3Frame3& the_frame3() {
  static K3Frame3 f = build_frame3();
  return f;
}

long param_long(const CheckParams& p, const std::string& key, long dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : std::stol(it->second);
}

// Accumulates named conditions; the first failure wins.
struct Checker {
  OJson details = OJson::object();
  std::string status = "pass";
  std::string reason;

  void require(bool cond, const std::string& what) {
    if (!cond && status == "pass") {
      status = "fail";
      reason = what;
    }
  }
  void inconclusive(const std::string& why) {
    if (status == "pass") {
      status = "inconclusive";
      reason = why;
    }
  }
  void finish(CheckReport& rep) {
    if (!reason.empty()) details["reason"] = reason;
    rep.status = status;
    rep.details = details;
  }
};

QMat t_unit(int i) {  // 1-based unit row in t-coordinates
  QMat r(1, 12);
  r(0, i - 1) = 1;
  return r;
}

std::vector<std::string> torsion_strings(const std::vector<Int>& t) {
  std::vector<std::string> out;
  for (const auto& x : t) out.push_back(x.get_str());
  return out;
}

// The five-specialization chain, shared by several checks.
const std::vector<StepReport>& five_chain() {
  static std::vector<StepReport> reports = [] {
    const K3Frame& f = the_frame();
    const GammaFrame& g = the_gamma();
    SpecializeContext ctx;
    ctx.ambient = f.lambda;
    ctx.ns0 = f.phi_ns.coords;
    ctx.fs = f.phi_ns.coords.rows_slice(0, 2);
    ctx.t_basis = f.phi_t.coords;
    std::vector<SpecializeStep> steps;
    for (int i = 0; i < 5; ++i)
      steps.push_back({"step" + std::to_string(i + 1), g.theta.rows_slice(2 * i, 2 * i + 2)});
    return specialize(ctx, steps);
  }();
  return reports;
}

// ---- individual checks ----

void check_disc_forms(const CheckParams&, Checker& c) {
  auto e82 = discriminant_form(atlas::E8_scaled2());
  auto vn = fqf_isomorphic(e82, fqf_power(fqf_u2(), 4));
  c.require(vn.status == VerdictStatus::Yes, "disc(E8(2)) is not u(2)^4");
  auto n = discriminant_form(atlas::nikulin());
  auto v3 = fqf_isomorphic(n, fqf_power(fqf_u2(), 3));
  c.require(v3.status == VerdictStatus::Yes, "disc(N) is not u(2)^3");
  c.details["E8(2)"] = "u(2)^4";
  c.details["N"] = "u(2)^3";
}

void check_matrix_m(const CheckParams&, Checker& c) {
  const K3Frame& f = the_frame();
  auto qt = compute_quotient_transcendental(f, QMat::identity(12));
  c.require(qt.sat_index == 64, "[T_Y : pi_* T_X] is not 2^6");
  QMat tau_h2y = f.yframe_to_h2y(f.tau);
  c.require(quotient_group(qt.basis, tau_h2y).empty(), "tau does not span T_Y");
  QMat tau_gram = f.tau * f.y_frame.gram * f.tau.transpose();
  c.details["matrix_M"] = qmat_to_json(tau_gram.submatrix(0, 0, 8, 8));
  auto inv = invariants(qt.lattice);
  c.require(inv.s_plus == 2 && inv.s_minus == 10, "T_Y signature is not (2,10)");
  auto disc = fqf_isomorphic(discriminant_form(qt.lattice), fqf_power(fqf_u2(), 3));
  c.require(disc.status == VerdictStatus::Yes, "T_Y discriminant form is not u(2)^3");
  auto verdict = isometry_class_verdict(qt.lattice, atlas::tx_std());
  c.require(verdict.verdict == "isometric", "T_Y is not U+U+N");
  c.details["T_Y"] = invariants_to_json(inv);
}

void check_rank10(const CheckParams& p, Checker& c) {
  const K3Frame& f = the_frame();
  long d0 = param_long(p, "d", 0);
  OJson per = OJson::array();
  for (long d = d0 ? d0 : 1; d <= (d0 ? d0 : 12); ++d) {
    // <4d> generator orthogonal to the antiinvariant E8(2), chosen so that
    // the saturation is the index-2 overlattice
    QMat g(1, 22);
    g(0, 0) = 2;
    g(0, 1) = Rat(Int(d + 1 + (d % 2 == 0 ? 1 : 0)));
    g(0, 6) = g(0, 14) = 1;  // e_1^(1) + e_1^(2)
    if (d % 2 == 0) g(0, 8) = g(0, 16) = 1;  // + e_3^(1) + e_3^(2)
    QMat rows(10, 22);
    rows.set_row(0, g);
    for (int k = 0; k < 8; ++k) {
      rows(1 + k, 6 + k) = 1;
      rows(1 + k, 14 + k) = -1;
    }
    rows(9, 2) = -1;
    rows(9, 3) = Rat(Int(d));  // -u_1^(2) + d u_2^(2), square -2d
    auto satx = saturation(Sublattice(f.lambda, rows));
    IntegerLattice nsx = satx.sub.as_lattice("NS_X");
    IntegerLattice target = direct_sum(atlas::make({atlas::Family::Prime_2d_E82, 0, 2 * d}),
                                       atlas::diag_lattice({-2 * d}));
    c.require(satx.index == 2, "d=" + std::to_string(d) + ": NS_X saturation index is not 2");
    auto vx = isometry_class_verdict(nsx, target);
    c.require(vx.verdict == "isometric",
              "d=" + std::to_string(d) + ": NS_X is not (<4d>+E8(2))'+<-2d>");
    QMat nik(8, 22);
    for (int i = 0; i < 8; ++i) nik(i, 14 + i) = 1;
    QMat nsy_rows = f.yframe_to_h2y(QMat::vstack(f.push(satx.sub.coords), nik));
    Int den = nsy_rows.denominator_lcm();
    QMat basis = hnf_row_basis(nsy_rows * Rat(den)) * frac(Int(1), den);
    auto saty = saturation(Sublattice(f.h2y, basis));
    IntegerLattice nsy = saty.sub.as_lattice("NS_Y");
    auto vy = isometry_class_verdict(nsy, target);
    OJson e;
    e["d"] = d;
    e["ns_x"] = invariants_to_json(invariants(nsx));
    e["ns_y"] = invariants_to_json(invariants(nsy));
    e["stated_verdict"] = vy.verdict;
    // The primitive closure also divides the pushforward of the <-2d>
    // summand by the exceptional classes, exactly as in the rank 11
    // computation; the class it lands in is <2d> + (N + <-4d>)'.
    {
      IntegerLattice nb = direct_sum(atlas::nikulin(), atlas::diag_lattice({-4 * d}));
      QMat glue(1, 9);
      glue(0, 8) = Rat(1, 2);
      glue(0, 0) = glue(0, 1) = Rat(1, 2);
      if (d % 2 == 0) glue(0, 2) = glue(0, 3) = Rat(1, 2);
      Overlattice no = overlattice(nb, glue);
      IntegerLattice computed =
          direct_sum(atlas::diag_lattice({2 * d}), no.lattice);
      auto vc = isometry_class_verdict(nsy, computed);
      e["computed_class"] = "<2d> + (N + <-4d>)'";
      e["computed_verdict"] = vc.verdict;
    }
    per.push_back(e);
    c.require(vy.verdict == "isometric",
              "d=" + std::to_string(d) + ": NS_Y does not match NS_X's class");
    c.require(uniqueness_criterion(nsy), "d=" + std::to_string(d) + ": uniqueness criterion fails");
  }
  c.details["cases"] = per;
  c.details["analysis"] =
      "the saturation of pi_*(NS_X) + N in H^2(Y,Z) always contains "
      "(pi_*(h) + n-combination)/2 for the <-2d> generator h, the same divided class the rank-11 "
      "computation exhibits; NS_Y therefore lands in <2d> + (N + <-4d>)' of determinant "
      "2^7 d^2 rather than in the stated class of determinant 2^9 d^2";
}

QMat rank11_extras(char family, long d) {
  if (family == 'd') {
    QMat e(1, 12);
    e(0, 10) = 1;
    e(0, 11) = Rat(Int(-d));
    return e;
  }
  if (family == 'a') {
    long k = (d - 2) / 4;
    QMat e = t_unit(1) + t_unit(2) + t_unit(11) * Rat(2) - t_unit(12) * Rat(Int(2 * k));
    return e;
  }
  long k = (d - 4) / 4;
  return t_unit(1) + t_unit(2) + t_unit(3) + t_unit(4) + t_unit(11) * Rat(2) -
         t_unit(12) * Rat(Int(2 * k));
}

void check_rank11_table(const CheckParams& p, Checker& c) {
  const K3Frame& f = the_frame();
  long d0 = param_long(p, "d", 0);
  OJson per = OJson::array();
  for (long d = d0 ? d0 : 1; d <= (d0 ? d0 : 12); ++d) {
    // X in L_d  <->  Y in L_{2d}^(a) (d odd) or L_{2d}^(b) (d even)
    {
      auto rep = quotient_ns(f, rank11_extras('d', d));
      auto vx = isometry_class_verdict(rep.ns_x, atlas::make({atlas::Family::Lambda_d, 0, d}));
      c.require(vx.verdict == "isometric", "d=" + std::to_string(d) + ": NS_X is not Lambda_d");
      auto fam = d % 2 == 1 ? atlas::Family::Lambda_d_a : atlas::Family::Lambda_d_b;
      auto vy = isometry_class_verdict(rep.ns_y, atlas::make({fam, 0, 2 * d}));
      c.require(vy.verdict == "isometric",
                "d=" + std::to_string(d) + ": NS_Y is not Lambda_{2d}^(" +
                    (d % 2 == 1 ? "a" : "b") + ")");
      OJson e;
      e["family"] = "Lambda_" + std::to_string(d);
      e["quotient"] = "Lambda_" + std::to_string(2 * d) + (d % 2 == 1 ? "a" : "b");
      per.push_back(e);
    }
    if (d % 4 == 2 || d % 4 == 0) {
      char fam = d % 4 == 2 ? 'a' : 'b';
      auto rep = quotient_ns(f, rank11_extras(fam, d));
      auto xfam = fam == 'a' ? atlas::Family::Lambda_d_a : atlas::Family::Lambda_d_b;
      auto vx = isometry_class_verdict(rep.ns_x, atlas::make({xfam, 0, d}));
      c.require(vx.verdict == "isometric",
                "d=" + std::to_string(d) + ": NS_X is not Lambda_d^(" + fam + ")");
      auto vy =
          isometry_class_verdict(rep.ns_y, atlas::make({atlas::Family::Lambda_d, 0, d / 2}));
      c.require(vy.verdict == "isometric",
                "d=" + std::to_string(d) + ": NS_Y is not Lambda_{d/2}");
      OJson e;
      e["family"] = "Lambda_" + std::to_string(d) + std::string(1, fam);
      e["quotient"] = "Lambda_" + std::to_string(d / 2);
      per.push_back(e);
    }
  }
  c.details["cases"] = per;
}

// roots / torsion / Mordell-Weil bookkeeping inside a rank 11 lattice
struct Rank11Analysis {
  std::vector<AdeComponent> roots;
  std::vector<Int> torsion;
  Int det_abs;
};
Rank11Analysis analyze_rank11(atlas::Family fam, long d) {
  IntegerLattice base = direct_sum(atlas::make({atlas::Family::UN}), atlas::diag_lattice({-2 * d}));
  QMat basis;
  IntegerLattice lat;
  if (fam == atlas::Family::Lambda_d) {
    lat = base;
    basis = QMat::identity(11);
  } else {
    Overlattice o = overlattice(base, atlas::glue_description({fam, 0, d}).glue);
    lat = o.lattice;
    basis = o.base_change;
  }
  QMat fs(2, 11);
  fs(0, 0) = 1;
  fs(1, 1) = 1;
  QMat fs_in = solve_in_basis(fs, basis);
  Sublattice froots = orthogonal_complement(Sublattice(lat, fs_in));
  Rank11Analysis a;
  a.roots = root_type(froots.as_lattice());
  a.det_abs = abs(invariants(lat).det);
  QMat root_rows = root_sublattice_basis(froots.as_lattice()) * froots.coords;
  QMat tr = QMat::vstack(fs_in, root_rows);
  auto sat = saturation(Sublattice(lat, tr));
  a.torsion = quotient_group(sat.sub.coords, tr);
  return a;
}

void check_rank11_fibrations(const CheckParams& p, Checker& c) {
  long d0 = param_long(p, "d", 0);
  OJson per = OJson::array();
  std::vector<Int> z2{2};
  FibrationConfig generic;
  for (int i = 0; i < 8; ++i) generic.fibers.push_back(Fiber{false, 2});
  for (int i = 0; i < 8; ++i) generic.fibers.push_back(Fiber{false, 1});
  generic.mw_torsion = z2;
  generic.mw_rank = 1;

  for (long d = d0 ? d0 : 1; d <= (d0 ? d0 : 12); ++d) {
    {
      auto a = analyze_rank11(atlas::Family::Lambda_d, d);
      OJson e;
      e["family"] = "Lambda_" + std::to_string(d);
      if (d == 1) {
        c.require(ade_str(a.roots) == "9*A1", "Lambda_1 roots are not A1^9");
        c.require(a.torsion == z2, "Lambda_1 torsion is not Z/2");
        e["fibers"] = "9I2+6I1";
      } else {
        c.require(ade_str(a.roots) == "8*A1", "Lambda_d roots are not A1^8");
        c.require(a.torsion == z2, "Lambda_d torsion is not Z/2");
        Rat mwl = mwl_discriminant(generic, a.det_abs);
        c.require(mwl == Rat(Int(2 * d)), "Lambda_d MWL discriminant is not 2d");
        auto g = section_class(SectionKind::InfiniteLambdaD, d);
        c.require(g.integral_in_ns && g.dot_s == Rat(Int(d - 2)) && g.dot_t == Rat(Int(d)),
                  "Lambda_d infinite section intersections are off");
        SectionData sd;
        sd.dot_zero = g.dot_s.get_num();
        c.require(height(generic, sd) == mwl, "Lambda_d height does not equal the MWL value");
        e["mwl"] = rat_str(mwl);
      }
      per.push_back(e);
    }
    if (d % 4 == 2 || (d % 4 == 0 && d >= 4)) {
      bool is_a = d % 4 == 2;
      auto fam = is_a ? atlas::Family::Lambda_d_a : atlas::Family::Lambda_d_b;
      auto a = analyze_rank11(fam, d);
      OJson e;
      e["family"] = "Lambda_" + std::to_string(d) + (is_a ? "a" : "b");
      if (d == 2) {
        c.require(ade_str(a.roots) == "6*A1+A3", "Lambda_2^(a) roots are not A3+A1^6");
        c.require(a.torsion == z2, "Lambda_2^(a) torsion is not Z/2");
        e["fibers"] = "I4+6I2+8I1";
      } else {
        c.require(ade_str(a.roots) == "8*A1", "overlattice family roots are not A1^8");
        c.require(a.torsion == z2, "overlattice family torsion is not Z/2");
        Rat mwl = mwl_discriminant(generic, a.det_abs);
        c.require(mwl == frac(Int(d), Int(2)), "overlattice family MWL discriminant is not d/2");
        auto g = section_class(is_a ? SectionKind::InfiniteLambdaDA : SectionKind::InfiniteLambdaDB,
                               d);
        c.require(g.integral_in_ns, "infinite section is not in the overlattice");
        Rat exp_s = is_a ? frac(Int(d - 6), Int(4)) : frac(Int(d - 4), Int(4));
        Rat exp_t = is_a ? frac(Int(d - 2), Int(4)) : frac(Int(d - 4), Int(4));
        c.require(g.dot_s == exp_s && g.dot_t == exp_t,
                  "overlattice family section intersections are off");
        SectionData sd;
        sd.dot_zero = g.dot_s.get_num();  // integral for these d
        int contacts = is_a ? 2 : 4;
        for (int i = 0; i < contacts; ++i) sd.fiber_contacts[i] = 1;
        c.require(height(generic, sd) == mwl, "overlattice height does not equal the MWL value");
        e["mwl"] = rat_str(mwl);
      }
      per.push_back(e);
    }
  }
  c.details["cases"] = per;
}

void check_rank12_equal(const CheckParams& p, Checker& c) {
  const K3Frame& f = the_frame();
  long e0 = param_long(p, "e", 0);
  OJson per = OJson::array();
  for (long e = e0 ? e0 : 1; e <= (e0 ? e0 : 6); ++e) {
    long d = 2 * e;
    char fam = d % 4 == 2 ? 'a' : 'b';
    QMat extras = QMat::vstack(rank11_extras(fam, d), t_unit(9) - t_unit(10) * Rat(Int(e)));
    auto rep = quotient_ns(f, extras);
    auto v = isometry_class_verdict(rep.ns_x, rep.ns_y);
    c.require(v.verdict == "isometric", "e=" + std::to_string(e) + ": NS_X and NS_Y differ");
    auto xfam = fam == 'a' ? atlas::Family::Lambda_d_a : atlas::Family::Lambda_d_b;
    IntegerLattice target = direct_sum(atlas::make({xfam, 0, d}), atlas::diag_lattice({-2 * e}));
    auto vt = isometry_class_verdict(rep.ns_x, target);
    c.require(vt.verdict == "isometric",
              "e=" + std::to_string(e) + ": NS_X is not Lambda_{2e}^()+<-2e>");
    OJson entry;
    entry["e"] = e;
    entry["verdict"] = v.verdict;
    per.push_back(entry);
  }
  c.details["cases"] = per;
}

void check_glue_lemma(const CheckParams& p, Checker& c) {
  long n0 = param_long(p, "n", 0);
  OJson per = OJson::array();
  for (long n = n0 ? n0 : 2; n <= (n0 ? n0 : 8); ++n) {
    auto gc = glue_chain(int(n));
    c.require(gc.index == n, "n=" + std::to_string(n) + ": index is not n");
    IntegerLattice base = direct_sum(direct_sum(atlas::A(int(n) - 1), atlas::A(int(n) - 1)),
                                     atlas::diag_lattice({-2 * n}));
    c.require(invariants(gc.over.lattice).det * gc.index * gc.index == invariants(base).det,
              "n=" + std::to_string(n) + ": det identity fails");
    c.require(ade_str(root_type(gc.over.lattice)) == "A" + std::to_string(2 * n - 1),
              "n=" + std::to_string(n) + ": overlattice is not A_{2n-1}");
    c.require(gc.backward * gc.chain_basis == QMat::identity(int(2 * n - 1)),
              "n=" + std::to_string(n) + ": round trip is not the identity");
    OJson e;
    e["n"] = n;
    e["det"] = invariants(gc.over.lattice).det.get_str();
    per.push_back(e);
  }
  c.details["cases"] = per;
}

void check_five_specializations(const CheckParams&, Checker& c) {
  const K3Frame& f = the_frame();
  const GammaFrame& g = the_gamma();
  const auto& reps = five_chain();
  const int rhos[5] = {12, 14, 16, 18, 20};
  const char* roots[5] = {"7*A1+A3", "6*A1+2*A3", "5*A1+3*A3", "4*A1+4*A3", "2*A1+3*A3+A7"};
  const char* fibers[5] = {"I4+7I2+6I1", "2I4+6I2+4I1", "3I4+5I2+2I1", "4I4+4I2", "I8+3I4+2I2"};
  const long dets[5] = {-128, -256, -512, -64, -32};
  OJson per = OJson::array();
  for (int i = 0; i < 5; ++i) {
    c.require(reps[i].rho == rhos[i], "step " + std::to_string(i + 1) + ": wrong Picard number");
    c.require(ade_str(reps[i].roots) == roots[i],
              "step " + std::to_string(i + 1) + ": wrong root type");
    c.require(reps[i].fiber_string == fibers[i],
              "step " + std::to_string(i + 1) + ": wrong fibers");
    c.require(reps[i].ns_inv.det == dets[i],
              "step " + std::to_string(i + 1) + ": wrong determinant");
    OJson e;
    e["step"] = i + 1;
    e["rho"] = reps[i].rho;
    e["roots"] = ade_str(reps[i].roots);
    e["fibers"] = reps[i].fiber_string;
    e["det"] = reps[i].ns_inv.det.get_str();
    e["mw_torsion"] = torsion_strings(reps[i].mw_torsion);
    e["step_glue"] = torsion_strings(reps[i].step_glue);
    per.push_back(e);
  }
  std::vector<Int> z2{2}, z42{2, 4};
  for (int i = 0; i < 3; ++i)
    c.require(reps[i].mw_torsion == z2, "early steps should keep torsion Z/2");
  c.require(reps[3].mw_torsion == z42, "step 4 torsion is not Z/4 x Z/2");
  c.require(reps[4].mw_torsion == z42, "step 5 torsion is not Z/4 x Z/2");
  c.require(reps[3].step_glue == z42,
            "step 4 saturation quotient is not Z/4 x Z/2 (order 8 = 2*4)");

  // the displayed divisible classes of the fourth step, with the dependency
  // 2Q = (W4+N2+N4)/2 modulo the unglued lattice that trims the index to 8
  auto nsr = [&](int i) { return f.phi_ns.coords.row(i); };
  auto th = [&](int i) { return QMat(g.theta.row(i)) * f.phi_t.coords; };
  QMat F = nsr(0), S = nsr(1);
  QMat P = F * Rat(2) + S - (th(4) + th(6) + th(1) + th(3) + th(5) + th(7)) * Rat(1, 2);
  QMat Q = F * Rat(2) + S -
           (th(0) * Rat(-1) + nsr(7) * Rat(2) - th(2) + nsr(8) * Rat(2) - th(4) + nsr(4) * Rat(2) -
            th(6) + nsr(3) * Rat(2) + th(5) * Rat(2) + th(7) * Rat(2)) *
               Rat(1, 4);
  auto in_basis = [&](const QMat& v, const QMat& basis) {
    try {
      return solve_in_basis(v, basis).is_integral();
    } catch (...) {
      return false;
    }
  };
  auto nrm = [&](const QMat& v) { return (v * f.lambda.gram * v.transpose())(0, 0); };
  c.require(in_basis(P, reps[3].ns_basis) && nrm(P) == -2, "P is not a (-2) class of NS_18");
  c.require(in_basis(Q, reps[3].ns_basis) && nrm(Q) == -2, "Q is not a (-2) class of NS_18");
  // Q + Q = T in the Mordell-Weil group: 2Q - T lies in the trivial lattice
  QMat T = F * Rat(2) + S - nsr(9);
  {
    IntegerLattice ns = Sublattice(f.lambda, reps[3].ns_basis).as_lattice("ns18");
    QMat fs_in_ns = solve_in_basis(f.phi_ns.coords.rows_slice(0, 2), reps[3].ns_basis);
    Sublattice froots = orthogonal_complement(Sublattice(ns, fs_in_ns));
    QMat tr = QMat::vstack(f.phi_ns.coords.rows_slice(0, 2),
                           root_sublattice_basis(froots.as_lattice()) * froots.coords *
                               reps[3].ns_basis);
    c.require(in_basis(Q * Rat(2) - T, tr), "Q+Q is not the 2-torsion section T");
    // the formal torsion section stays 2-torsion at every step
    for (int i = 0; i < 5; ++i) {
      IntegerLattice nsk = Sublattice(f.lambda, reps[i].ns_basis).as_lattice();
      QMat fsk = solve_in_basis(f.phi_ns.coords.rows_slice(0, 2), reps[i].ns_basis);
      Sublattice fr = orthogonal_complement(Sublattice(nsk, fsk));
      QMat trk = QMat::vstack(f.phi_ns.coords.rows_slice(0, 2),
                              root_sublattice_basis(fr.as_lattice()) * fr.coords * reps[i].ns_basis);
      c.require(!in_basis(T, trk) && in_basis(T * Rat(2), trk),
                "step " + std::to_string(i + 1) + ": T is not 2-torsion modulo the trivial lattice");
    }
  }
  // final transcendental lattice is <8>+<4>
  IntegerLattice t20 = Sublattice(f.lambda, reps[4].t_basis).as_lattice("T20");
  auto iso = definite_isometric(t20, atlas::diag_lattice({8, 4}));
  c.require(iso.status == VerdictStatus::Yes, "T_20 is not <8>+<4>");
  c.details["steps"] = per;
  c.details["note"] =
      "the fourth saturation has quotient Z/4 x Z/2 of order 8: the three displayed divisible "
      "classes satisfy 2Q = (W4+N2+N4)/2 modulo the unglued lattice";
}

void check_gamma_blocks(const CheckParams&, Checker& c) {
  const GammaFrame& g = the_gamma();
  QMat th = gamma_on_theta(g);
  QMat expect(10, 10);
  for (int i = 0; i < 5; ++i) {
    expect(2 * i, 2 * i + 1) = 1;
    expect(2 * i + 1, 2 * i) = 2;
  }
  c.require(th == expect, "gamma is not blockdiag([[0,1],[2,0]] x 5) on the Theta part");
  IntegerLattice tx = atlas::tx_std();
  c.require(g.gamma_t * tx.gram * g.gamma_t.transpose() == tx.gram * Rat(2),
            "<gamma x, gamma y> != 2 <x,y>");
  c.require(g.gamma_plus_integral, "gamma_plus is not integral on <8>+<4>");
  QMat gp = g.gamma_frame_col.submatrix(10, 10, 2, 2);
  QMat gpos{{8, 0}, {0, 4}};
  c.require(gp.transpose() * gpos * gp == gpos * Rat(2), "gamma_plus does not scale by 2");
  c.details["gamma_theta"] = qmat_to_json(th);
  c.details["gamma_plus"] = qmat_to_json(gp);
  c.details["gamma_plus_squares_to_two"] = g.gamma_plus_squares_to_two;
  c.details["psi_fixture"] = qmat_to_json(g.psi);
}

void check_nu_blocks(const CheckParams&, Checker& c) {
  const GammaFrame& g = the_gamma();
  NuResult nu = nu_matrix(g);
  QMat expect(12, 12);
  for (int i = 0; i < 6; ++i) {
    expect(2 * i, 2 * i + 1) = 1;
    expect(2 * i + 1, 2 * i) = -2;
  }
  c.require(nu.matrix == expect, "nu is not blockdiag([[0,1],[-2,0]] x 6)");
  c.require(nu.matrix * nu.matrix == QMat::identity(12) * Rat(-2), "nu^2 != -2 id");
  c.require(nu.matrix.transpose() * g.frame_gram * nu.matrix == g.frame_gram * Rat(2),
            "<nu x, nu y> != 2 <x, y>");
  auto m3 = solve_cm(3);
  c.require(m3.size() == 2 && m3[0] == QMat{{0, 1}, {-3, 0}} && m3[1] == QMat{{0, -1}, {3, 0}},
            "solve_cm(3) does not give +-M_3");
  OJson cert = OJson::array();
  for (const auto& s : nu.certificate) cert.push_back(s);
  c.details["certificate"] = cert;
  c.details["nu"] = qmat_to_json(nu.matrix);
}

void check_gamma_criterion(const CheckParams&, Checker& c) {
  const K3Frame& f = the_frame();
  const GammaFrame& g = the_gamma();
  IntegerLattice tx = atlas::tx_std();
  OJson per = OJson::array();
  for (int j = 1; j <= 5; ++j) {
    Sublattice comp = orthogonal_complement(Sublattice(tx, g.theta.rows_slice(0, 2 * j)));
    auto v = gamma_invariance_check(f, g, comp.coords);
    c.require(v.invariant, "complement of Theta_" + std::to_string(10 + 2 * j) + " not invariant");
    c.require(v.ns_match_verdict == "isometric",
              "predicted and direct NS classes differ at Theta_" + std::to_string(10 + 2 * j));
    OJson e;
    e["theta"] = 10 + 2 * j;
    e["verdict"] = v.ns_match_verdict;
    per.push_back(e);
  }
  // negative control: the complement of <V_1> alone moves under gamma
  Sublattice bad = orthogonal_complement(Sublattice(tx, g.theta.rows_slice(1, 2)));
  auto v = gamma_invariance_check(f, g, bad.coords);
  c.require(!v.invariant, "the complement of <V_1> should not be gamma-stable");
  c.details["cases"] = per;
}

void check_weierstrass(const CheckParams&, Checker& c) {
  QPoly a = QPoly::parse("0,0,0,0,1");
  QPoly b = QPoly::parse("1,1,0,0,0,0,0,0,1");
  auto pat = discriminant_multiplicities(a, b);
  c.require(pat.fiber_string() == "8I2+8I1", "generic pattern is not 8I2+8I1");
  auto [a1, b1] = quotient_weierstrass(a, b);
  auto [a2, b2] = quotient_weierstrass(a1, b1);
  c.require(a2 == a * Rat(4) && b2 == b * Rat(16), "double quotient is not (4a, 16b)");

  // CM family with one double root imposed
  QPoly alpha = QPoly::parse("3,1,1");
  QPoly beta = QPoly::parse("-7/4,-47/4,0,1");
  QPoly acm = alpha.at_t_squared() * Rat(2);
  QPoly t = QPoly::parse("0,1");
  QPoly bcm =
      alpha.at_t_squared() * alpha.at_t_squared() * Rat(1, 2) + t * beta.at_t_squared();
  auto cm = discriminant_multiplicities(acm, bcm);
  c.require(cm.fiber_string() == "I4+7I2+6I1", "CM specialization is not I4+7I2+6I1");

  // fiber exchange: the double root of a^2-4b becomes the quadruple root on
  // the quotient side
  QPoly disc_minus = acm * acm - bcm * Rat(4);
  QPoly dbl;
  for (const auto& [factor, mult] : squarefree_decomposition(disc_minus))
    if (mult == 2) dbl = factor;
  c.require(dbl.degree() == 1, "a^2-4b should have exactly one double root");
  auto [aq, bq] = quotient_weierstrass(acm, bcm);
  QPoly discq = bq * bq * (aq * aq - bq * Rat(4));
  QPoly quad;
  for (const auto& [factor, mult] : squarefree_decomposition(discq))
    if (mult == 4) quad = factor;
  c.require(quad == dbl, "the I2 locus does not become the I4 locus on the quotient");
  c.details["generic"] = pat.fiber_string();
  c.details["cm_special"] = cm.fiber_string();
}

void check_order3_suite(const CheckParams&, Checker& c) {
  const K3Frame3& f = the_frame3();
  c.require(invariants(atlas::order3_M()).det == 81, "det(M) is not 3^4");
  auto ih = invariants(f.h2);
  c.require(ih.det == -1 && ih.s_plus == 3 && ih.s_minus == 19 && ih.even,
            "U+M+T assembly is not even unimodular (3,19)");
  LatticeMap s = sigma3(f);
  c.require(s.is_similarity(), "sigma3 is not an isometry");

  auto it = invariants(atlas::make({atlas::Family::K12tilde}));
  auto ik = invariants(f.k12);
  c.require(ik.det * 9 == it.det, "det(K12) * 9 != det(K12tilde)");
  {
    // every even index-3 overlattice of K12tilde matches K12 at the level of
    // invariants and discriminant forms
    auto overs = k12tilde_overlattices();
    c.require(!overs.empty(), "K12tilde admits no even index-3 overlattice");
    int matching = 0;
    auto k12_disc = discriminant_form(f.k12);
    for (const auto& o : overs) {
      auto io = invariants(o);
      c.require(io.det == ik.det && io.s_minus == 12 && io.even,
                "a K12tilde overlattice has unexpected invariants");
      if (fqf_isomorphic(discriminant_form(o), k12_disc).status == VerdictStatus::Yes) ++matching;
    }
    c.require(matching > 0, "no index-3 overlattice of K12tilde matches K12");
    c.details["k12tilde_overlattices"] = overs.size();
    c.details["k12tilde_overlattices_matching_K12"] = matching;
  }
  {
    // the displayed diagram pair: the diagonal copies are E6(2) on the nose;
    // the printed cross pairings deviate in two entries (and the second
    // branch class is not orthogonal to the invariant part), so the exact
    // K12tilde basis claim is recorded rather than asserted
    QMat diag = e6_diagram_rows(f);
    QMat gr = diag * f.frame.gram * diag.transpose();
    QMat e62 = atlas::scale(atlas::E6(), 2, "E6(2)").gram;
    c.require(gr.submatrix(0, 0, 6, 6) == e62 && gr.submatrix(6, 6, 6, 6) == e62,
              "the diagram copies are not E6(2)");
    QMat expected = atlas::make({atlas::Family::K12tilde}).gram;
    OJson devs = OJson::array();
    for (int i = 0; i < 12; ++i)
      for (int j = i; j < 12; ++j)
        if (gr(i, j) != expected(i, j)) {
          OJson d;
          d["entry"] = OJson::array({i + 1, j + 1});
          d["found"] = rat_str(gr(i, j));
          d["stated"] = rat_str(expected(i, j));
          devs.push_back(d);
        }
    c.details["diagram_deviations_from_K12tilde"] = devs;
  }

  GammaFrame3 g = build_gamma3();
  c.require(g.gamma_col.transpose() * g.frame_gram * g.gamma_col == g.frame_gram * Rat(3),
            "gamma3 does not scale the form by 3");

  SpecializeContext ctx = specialize3_context(f);
  std::vector<SpecializeStep> steps;
  steps.push_back({"step1", g.theta.rows_slice(0, 2)});
  steps.push_back({"step2", g.theta.rows_slice(2, 4)});
  steps.push_back({"step3", g.theta.rows_slice(4, 6)});
  auto reps = specialize(ctx, steps);
  c.require(reps[0].fiber_string == "I6+4I3+I2+4I1", "first order-3 step fibers are wrong");
  c.require(reps[1].fiber_string == "2I6+2I3+2I2+2I1", "second order-3 step fibers are wrong");
  c.require(reps[2].rho == 20, "final order-3 step is not rank 20");
  c.require(abs(reps[2].ns_inv.det) == 48, "final |d(NS)| is not 48");
  IntegerLattice t20 = Sublattice(f.h2, reps[2].t_basis).as_lattice("T20");
  auto iso = definite_isometric(t20, atlas::diag_lattice({12, 4}));
  c.require(iso.status == VerdictStatus::Yes, "order-3 T_20 is not <12>+<4>");
  std::vector<Int> z3{3};
  for (const auto& r : reps)
    c.require(r.mw_torsion == z3, "order-3 chain torsion is not Z/3");

  // lambda_1 is discovered by saturation in the first step
  QMat lam = f.h2_glue3.row(1) - f.h2_glue3.row(2);
  c.require((lam * f.frame.gram * lam.transpose())(0, 0) == -2, "lambda_1 square is not -2");
  bool lam_in = false;
  try {
    lam_in = solve_in_basis(f.frame_to_h2(lam), reps[0].ns_basis).is_integral();
  } catch (...) {
  }
  c.require(lam_in, "lambda_1 is not in NS_16");

  // alternate third step: 3I6+3I2 with torsion Z/6 x Z/2
  std::vector<SpecializeStep> alt = {steps[0], steps[1], {"step3alt", g.theta_alt}};
  auto arep = specialize(ctx, alt);
  c.require(arep[2].fiber_string == "3I6+3I2", "alternate chain fibers are wrong");
  std::vector<Int> z62{2, 6};
  c.require(arep[2].mw_torsion == z62, "alternate chain torsion is not Z/6 x Z/2");

  // rank 16 correspondences across the d,e grid
  std::vector<IntegerLattice> primes;
  for (long d = 1; d <= 9; ++d) primes.push_back(um_prime_6d(d));
  for (long d = 1; d <= 9; ++d)
    for (long e = 1; e <= 9; ++e) {
      IntegerLattice aa = direct_sum(primes[d - 1], atlas::diag_lattice({-2 * e}));
      IntegerLattice bb = direct_sum(primes[e - 1], atlas::diag_lattice({-2 * d}));
      auto ia = invariants(aa);
      auto ib = invariants(bb);
      c.require(ia.even && ia.s_plus == 1 && ia.s_minus == 15 && ia.det == ib.det,
                "order-3 rank 16 invariants mismatch");
      if (d == e) {
        auto v = fqf_isomorphic(discriminant_form(aa), discriminant_form(bb));
        c.require(v.status == VerdictStatus::Yes && uniqueness_criterion(aa),
                  "order-3 d=e case is not settled by uniqueness");
      }
    }
  OJson chain = OJson::array();
  for (const auto& r : reps) {
    OJson e;
    e["rho"] = r.rho;
    e["fibers"] = r.fiber_string;
    e["det"] = r.ns_inv.det.get_str();
    chain.push_back(e);
  }
  c.details["chain"] = chain;
  c.details["alternate_third"] = arep[2].fiber_string;
}

// ---- randomized property suite ----

IntegerLattice random_block_lattice(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> rk(1, 3);
  std::uniform_int_distribution<int> sc(1, 4);
  IntegerLattice l;
  int blocks = 1 + int(rng() % 2);
  for (int b = 0; b < blocks; ++b) {
    IntegerLattice part;
    switch (pick(rng)) {
      case 0: part = atlas::A(rk(rng)); break;
      case 1: part = atlas::D(4); break;
      case 2: part = atlas::U(); break;
      case 3: part = atlas::U_scaled(sc(rng)); break;
      case 4: part = atlas::diag_lattice({2 * sc(rng)}); break;
      default: part = atlas::diag_lattice({-2 * sc(rng)}); break;
    }
    l = (b == 0) ? part : direct_sum(l, part);
  }
  return l;
}

QMat random_unimodular(int n, std::mt19937_64& rng) {
  QMat p = QMat::identity(n);
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int ops = 0; ops < 3 * n; ++ops) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Rat f = Rat(val(rng));
    for (int k = 0; k < n; ++k) p(i, k) += f * p(j, k);
  }
  return p;
}

// Independent root classifier: simple roots against a generic functional,
// then Dynkin graph shape.
std::vector<AdeComponent> dynkin_oracle(const IntegerLattice& l) {
  auto up = short_vectors(l, Int(2));
  std::vector<std::vector<Int>> roots;
  for (const auto& v : up) {
    Rat n(0);
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j) n += Rat(v[i] * v[j]) * l.gram(int(i), int(j));
    if (abs(n) == 2) {
      roots.push_back(v);
      std::vector<Int> neg;
      for (const auto& x : v) neg.push_back(-x);
      roots.push_back(neg);
    }
  }
  if (roots.empty()) return {};
  int n = l.rank();
  // generic functional: weights 1, B, B^2, ... with B larger than any coord
  Int big = 1;
  for (const auto& r : roots)
    for (const auto& x : r) {
      Int cand = abs(x) * 2 * n + 1;
      if (cand > big) big = cand;
    }
  auto phi = [&](const std::vector<Int>& r) {
    Int s = 0, w = 1;
    for (int i = 0; i < n; ++i) {
      s += r[i] * w;
      w *= big;
    }
    return s;
  };
  std::vector<std::vector<Int>> pos;
  for (const auto& r : roots)
    if (phi(r) > 0) pos.push_back(r);
  auto is_pos = [&](const std::vector<Int>& x) {
    for (const auto& p : pos)
      if (p == x) return true;
    return false;
  };
  std::vector<std::vector<Int>> simple;
  for (const auto& r : pos) {
    bool sum = false;
    for (const auto& p : pos) {
      std::vector<Int> q(n);
      for (int i = 0; i < n; ++i) q[i] = r[i] - p[i];
      bool zero = true;
      for (const auto& x : q)
        if (x != 0) zero = false;
      if (!zero && is_pos(q)) {
        sum = true;
        break;
      }
    }
    if (!sum) simple.push_back(r);
  }
  // components of the simple-root graph
  int m = int(simple.size());
  auto pairing = [&](int a, int b) {
    Rat s(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += Rat(simple[a][i] * simple[b][j]) * l.gram(i, j);
    return s;
  };
  std::vector<int> comp(m, -1);
  int nc = 0;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < m; ++b)
        if (comp[b] < 0 && sgn(pairing(a, b)) != 0) {
          comp[b] = nc;
          stack.push_back(b);
        }
    }
    ++nc;
  }
  std::vector<AdeComponent> out;
  for (int cidx = 0; cidx < nc; ++cidx) {
    std::vector<int> nodes;
    for (int i = 0; i < m; ++i)
      if (comp[i] == cidx) nodes.push_back(i);
    int sz = int(nodes.size());
    std::vector<int> deg(sz, 0);
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j)
        if (i != j && sgn(pairing(nodes[i], nodes[j])) != 0) deg[i]++;
    int deg3 = 0;
    for (int d : deg)
      if (d == 3) deg3++;
    if (deg3 == 0) {
      out.push_back({'A', sz});
    } else {
      // branch lengths from the trivalent node
      int center = -1;
      for (int i = 0; i < sz; ++i)
        if (deg[i] == 3) center = i;
      std::vector<int> arms;
      for (int i = 0; i < sz; ++i) {
        if (i == center || sgn(pairing(nodes[i], nodes[center])) == 0) continue;
        int len = 1, prev = center, cur = i;
        for (;;) {
          int next = -1;
          for (int k = 0; k < sz; ++k)
            if (k != prev && k != cur && sgn(pairing(nodes[k], nodes[cur])) != 0) next = k;
          if (next < 0) break;
          prev = cur;
          cur = next;
          ++len;
        }
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      if (arms == std::vector<int>{1, 1, sz - 3})
        out.push_back({'D', sz});
      else
        out.push_back({'E', sz});
    }
  }
  std::sort(out.begin(), out.end(), [](const AdeComponent& a, const AdeComponent& b) {
    return a.letter != b.letter ? a.letter < b.letter : a.rank < b.rank;
  });
  return out;
}

void check_property_suite(const CheckParams& p, Checker& c) {
  long trials = param_long(p, "trials", 200);
  OJson counts = OJson::object();

  {  // overlattice determinant identity on random isotropic glues
    std::mt19937_64 rng(20260801);
    long done = 0, attempts = 0;
    while (done < trials && attempts < trials * 60) {
      ++attempts;
      IntegerLattice l = random_block_lattice(rng);
      if (!l.is_even() || l.is_degenerate()) continue;
      FiniteQuadraticForm disc;
      try {
        disc = discriminant_form(l);
      } catch (...) {
        continue;
      }
      if (disc.ngens() == 0 || disc.order() > 400) continue;
      // random element; keep it if isotropic of order > 1
      std::vector<Int> elt(disc.ngens());
      for (int i = 0; i < disc.ngens(); ++i)
        elt[i] = Int(long(rng() % disc.invariant_factors[i].get_ui()));
      bool nonzero = false;
      for (const auto& x : elt)
        if (x != 0) nonzero = true;
      if (!nonzero || disc.q_of(elt) != 0) continue;
      QMat glue(1, l.rank());
      for (int i = 0; i < disc.ngens(); ++i)
        glue = glue + disc.generator_lifts.row(i) * Rat(elt[i]);
      Overlattice o;
      try {
        o = overlattice(l, glue);
      } catch (const GlueError&) {
        continue;  // odd extension: the glue was 2-torsion with odd square
      }
      if (invariants(o.lattice).det * o.index * o.index != invariants(l).det) {
        c.require(false, "overlattice determinant identity failed");
        return;
      }
      if (!o.lattice.is_even()) {
        c.require(false, "overlattice evenness failed");
        return;
      }
      // saturation of L inside L' has the same index
      auto sat = saturation(Sublattice(o.lattice, solve_in_basis(QMat::identity(l.rank()),
                                                                 o.base_change)));
      if (sat.index != o.index) {
        c.require(false, "overlattice saturation index mismatch");
        return;
      }
      ++done;
    }
    c.require(done == trials, "not enough overlattice trials succeeded");
    counts["overlattice_det"] = done;
  }

  {  // saturation idempotence
    std::mt19937_64 rng(20260802);
    std::uniform_int_distribution<int> dim(2, 6);
    std::uniform_int_distribution<int> val(-4, 4);
    for (long trial = 0; trial < trials; ++trial) {
      int n = dim(rng);
      int k = 1 + int(rng() % n);
      IntegerLattice amb(QMat::identity(n), "Zn");
      QMat rows(k, n);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) rows(i, j) = Rat(val(rng));
      if (rows.rank() != k) {
        --trial;
        continue;
      }
      auto s1 = saturation(Sublattice(amb, rows));
      auto s2 = saturation(s1.sub);
      if (s2.index != 1 || s2.sub.coords != s1.sub.coords) {
        c.require(false, "saturation is not idempotent");
        return;
      }
    }
    counts["saturation_idempotent"] = trials;
  }

  {  // complement double duality in LambdaK3
    std::mt19937_64 rng(20260803);
    const IntegerLattice lambda = atlas::lambda_k3();
    std::uniform_int_distribution<int> val(-2, 2);
    std::uniform_int_distribution<int> rk(1, 6);
    for (long trial = 0; trial < trials; ++trial) {
      int k = rk(rng);
      QMat rows(k, 22);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < 22; ++j) rows(i, j) = Rat(val(rng));
      if (rows.rank() != k) {
        --trial;
        continue;
      }
      auto sat = saturation(Sublattice(lambda, rows));
      Sublattice cc = orthogonal_complement(orthogonal_complement(sat.sub));
      if (!quotient_group(cc.coords, sat.sub.coords).empty() ||
          cc.coords.rows() != sat.sub.coords.rows()) {
        c.require(false, "complement double duality failed on a primitive sublattice");
        return;
      }
    }
    counts["complement_duality"] = trials;
  }

  {  // basis-change invariance of invariants
    std::mt19937_64 rng(20260804);
    for (long trial = 0; trial < trials; ++trial) {
      IntegerLattice l = random_block_lattice(rng);
      QMat p = random_unimodular(l.rank(), rng);
      IntegerLattice m(p * l.gram * p.transpose(), "conj");
      auto a = invariants(l);
      auto b = invariants(m);
      if (a.det != b.det || a.s_plus != b.s_plus || a.s_minus != b.s_minus || a.even != b.even) {
        c.require(false, "invariants are not basis independent");
        return;
      }
    }
    counts["basis_invariance"] = trials;
  }

  {  // root_type against the Dynkin-graph oracle on rank <= 4
    std::mt19937_64 rng(20260805);
    std::uniform_int_distribution<int> val(-1, 1);
    std::uniform_int_distribution<int> dim(1, 4);
    long done = 0, attempts = 0;
    while (done < trials && attempts < trials * 50) {
      ++attempts;
      int n = dim(rng);
      QMat b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = Rat(val(rng));
      QMat g = -(b * b.transpose()) * Rat(2) - QMat::identity(n) * Rat(2);
      bool in_range = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (abs(g(i, j)) > 8) in_range = false;
      if (!in_range) continue;
      IntegerLattice l(g, "rand");
      if (l.is_degenerate()) continue;
      auto lhs = root_type(l);
      auto rhs = dynkin_oracle(l);
      if (lhs != rhs) {
        c.require(false, "root_type disagrees with the Dynkin oracle");
        return;
      }
      ++done;
    }
    c.require(done == trials, "not enough root-type trials succeeded");
    counts["root_type_oracle"] = done;
  }

  c.details["trials"] = counts;
}

struct RegisteredCheck {
  CheckDef def;
  std::function<void(const CheckParams&, Checker&)> fn;
};

const std::vector<RegisteredCheck>& registry() {
  static const std::vector<RegisteredCheck> regs = {
      {{"disc-forms", "discriminant forms: E8(2) carries u(2)^4, the Nikulin lattice u(2)^3",
        "lattice", "discriminant_form / fqf_isomorphic"},
       check_disc_forms},
      {{"five-specializations",
        "chain of five specializations: rho 12..20, roots A3^i+A1^(8-i) up to A7+3A3+2A1, "
        "torsion growing to Z/4 x Z/2, final determinant 32",
        "order2", "specialize"},
       check_five_specializations},
      {{"gamma-blocks",
        "the quotient self map acts on the Theta frame by [[0,1],[2,0]] blocks with a "
        "compatible positive block",
        "order2", "build_gamma_frame / gamma_on_theta"},
       check_gamma_blocks},
      {{"gamma-criterion",
        "Theta-stable transcendental sublattices give quotients with the same Neron-Severi class",
        "order2", "gamma_invariance_check / quotient_ns"},
       check_gamma_criterion},
      {{"glue-lemma",
        "A_{2n-1} is an index-n overlattice of A_{n-1}+A_{n-1}+<-2n>, with explicit inverse "
        "base change",
        "lattice", "glue_chain / overlattice"},
       check_glue_lemma},
      {{"matrix-M",
        "the quotient transcendental lattice is M+U(2)+U(2) with the stated 8x8 matrix M and "
        "discriminant form u(2)^3",
        "order2", "compute_quotient_transcendental"},
       check_matrix_m},
      {{"nu-blocks",
        "complex multiplication by sqrt(-2) acts by [[0,1],[-2,0]] blocks, pinned by the "
        "eigenvector-isotropy derivation",
        "order2", "nu_matrix / solve_cm"},
       check_nu_blocks},
      {{"order3-suite",
        "order-3 analogues: M of determinant 3^4, unimodular assembly, sigma of order 3, the "
        "three-step chain to rho 20 with determinant 48 and T = <12>+<4>",
        "order3", "build_frame3 / sigma3 / specialize"},
       check_order3_suite},
      {{"property-suite",
        "randomized invariants: overlattice determinants, saturation idempotence, complement "
        "duality, basis independence, root-type oracle",
        "lattice", "overlattice / saturation / orthogonal_complement / invariants / root_type"},
       check_property_suite},
      {{"rank10-ns-equal",
        "NS(Y) of the (<4d>+E8(2))'+<-2d> surfaces matches NS(X), settled by the uniqueness "
        "criterion, d = 1..12",
        "order2", "quotient of an explicit rank-10 embedding"},
       check_rank10},
      {{"rank11-fibrations",
        "rank-11 fibrations: root types, torsion Z/2, Mordell-Weil lattices [2d] resp. [d/2], "
        "heights of the explicit sections",
        "order2", "section_class / height / mwl_discriminant"},
       check_rank11_fibrations},
      {{"rank11-table",
        "rank-11 correspondences: Lambda_d <-> Lambda_{2d}^(a/b) and Lambda_d^(a/b) <-> "
        "Lambda_{d/2}, d = 1..12",
        "order2", "quotient_ns"},
       check_rank11_table},
      {{"rank12-equal",
        "rank-12 families with d = 2e have NS(X) and NS(Y) in the same class, e = 1..6",
        "order2", "quotient_ns"},
       check_rank12_equal},
      {{"weierstrass",
        "Weierstrass side: generic 8I2+8I1; double quotient is (4a,16b); the CM double-root "
        "specialization gives I4+7I2+6I1 with the I2/I4 locus exchange",
        "order2", "quotient_weierstrass / discriminant_multiplicities"},
       check_weierstrass},
  };
  return regs;
}

}  // namespace

OJson CheckReport::to_json(bool stable) const {
  OJson j;
  j["check"] = check_id;
  j["anchor"] = anchor;
  j["status"] = status;
  j["details"] = details;
  if (!stable) j["runtime_ms"] = runtime_ms;
  return j;
}

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> d;
    for (const auto& r : registry()) d.push_back(r.def);
    return d;
  }();
  return defs;
}

bool is_known_check(const std::string& id) {
  for (const auto& r : registry())
    if (r.def.id == id) return true;
  return false;
}

CheckReport run_check(const std::string& id, const CheckParams& params) {
  for (const auto& r : registry()) {
    if (r.def.id != id) continue;
    CheckReport rep;
    rep.check_id = id;
    rep.anchor = r.def.anchor;
    auto start = std::chrono::steady_clock::now();
    Checker c;
    try {
      r.fn(params, c);
    } catch (const std::exception& e) {
      c.status = "fail";
      c.reason = std::string("exception: ") + e.what();
    }
    c.finish(rep);
    rep.runtime_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count());
    return rep;
  }
  throw Error("unknown check id: '" + id + "'");
}

std::vector<CheckReport> verify_all(const std::string& suite, const CheckParams& params) {
  std::vector<CheckReport> out;
  for (const auto& r : registry()) {
    if (suite != "all" && r.def.suite != suite) continue;
    out.push_back(run_check(r.def.id, params));
  }
  return out;  // registry is kept sorted by id
}

std::string manifest_text() {
  std::ostringstream os;
  os << "# Check manifest\n\n";
  os << "| id | statement | suite | operation |\n";
  os << "|---|---|---|---|\n";
  for (const auto& d : check_registry())
    os << "| " << d.id << " | " << d.anchor << " | " << d.suite << " | " << d.operation << " |\n";
  return os.str();
}

}  // namespace k3lat
