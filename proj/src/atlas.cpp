#include "k3lat/atlas.hpp"

#include <sstream>

namespace k3lat {
namespace atlas {

namespace {

QMat chain_gram(int n) {
  QMat g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = -2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = 1;
  }
  return g;
}

std::vector<std::string> indexed_labels(const std::string& stem, int n, int from = 1) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back(stem + std::to_string(from + i));
  return l;
}

}  // namespace

IntegerLattice U() {
  return IntegerLattice(QMat{{0, 1}, {1, 0}}, "U");
}

IntegerLattice U_scaled(long n) {
  QMat g(2, 2);
  g(0, 1) = g(1, 0) = Rat(Int(n));
  return IntegerLattice(g, "U(" + std::to_string(n) + ")");
}

IntegerLattice diag_lattice(const std::vector<long>& entries) {
  QMat g(int(entries.size()), int(entries.size()));
  std::ostringstream name;
  for (size_t i = 0; i < entries.size(); ++i) {
    g(int(i), int(i)) = Rat(Int(entries[i]));
    name << (i ? "+" : "") << "<" << entries[i] << ">";
  }
  return IntegerLattice(g, name.str());
}

IntegerLattice A(int n) {
  return IntegerLattice(chain_gram(n), "A" + std::to_string(n), indexed_labels("a", n));
}

IntegerLattice D(int n) {
  if (n < 4) throw Error("D_n needs n >= 4");
  QMat g = chain_gram(n);
  // detach d_n from the chain and glue it to d_{n-2}
  g(n - 1, n - 2) = g(n - 2, n - 1) = 0;
  g(n - 1, n - 3) = g(n - 3, n - 1) = 1;
  return IntegerLattice(g, "D" + std::to_string(n), indexed_labels("d", n));
}

IntegerLattice E8() {
  QMat g = chain_gram(8);
  g(7, 6) = g(6, 7) = 0;
  g(7, 2) = g(2, 7) = 1;  // e_3.e_8 = 1
  return IntegerLattice(g, "E8", indexed_labels("e", 8));
}

IntegerLattice E6() {
  QMat g = chain_gram(6);
  g(5, 4) = g(4, 5) = 0;
  g(5, 2) = g(2, 5) = 1;  // x_3.x_6 = 1
  return IntegerLattice(g, "E6", indexed_labels("x", 6));
}

IntegerLattice scale(const IntegerLattice& l, long s, const std::string& name) {
  return IntegerLattice(l.gram * Rat(Int(s)), name.empty() ? l.name + "(" + std::to_string(s) + ")" : name,
                        l.labels);
}

IntegerLattice E8_scaled2() { return scale(E8(), 2, "E8(2)"); }

IntegerLattice nikulin() {
  // basis N_1..N_7, Nhat with Nhat = (N_1+...+N_8)/2
  QMat g(8, 8);
  for (int i = 0; i < 7; ++i) g(i, i) = -2;
  g(7, 7) = -4;
  for (int i = 0; i < 7; ++i) g(i, 7) = g(7, i) = -1;
  auto labels = indexed_labels("N_", 7);
  labels.push_back("Nhat");
  return IntegerLattice(g, "N", labels);
}

IntegerLattice order3_M() {
  // A_2^6 with the index-3 glue Mhat = sum_j (M_1^(j) + 2 M_2^(j))/3
  QMat a2sum(12, 12);
  for (int j = 0; j < 6; ++j) {
    a2sum(2 * j, 2 * j) = a2sum(2 * j + 1, 2 * j + 1) = -2;
    a2sum(2 * j, 2 * j + 1) = a2sum(2 * j + 1, 2 * j) = 1;
  }
  IntegerLattice base(a2sum, "A2^6");
  QMat glue(1, 12);
  for (int j = 0; j < 6; ++j) {
    glue(0, 2 * j) = Rat(1, 3);
    glue(0, 2 * j + 1) = Rat(2, 3);
  }
  Overlattice o = overlattice(base, glue);
  IntegerLattice m = o.lattice;
  m.name = "M";
  return m;
}

IntegerLattice lambda_k3() {
  IntegerLattice l = direct_sum(direct_sum(direct_sum(U(), U()), U()), direct_sum(E8(), E8()));
  l.name = "LambdaK3";
  std::vector<std::string> labels;
  for (int j = 1; j <= 3; ++j) {
    labels.push_back("u1_" + std::to_string(j));
    labels.push_back("u2_" + std::to_string(j));
  }
  for (int h = 1; h <= 2; ++h)
    for (int k = 1; k <= 8; ++k) labels.push_back("e" + std::to_string(k) + "_" + std::to_string(h));
  l.labels = labels;
  return l;
}

IntegerLattice tx_std() {
  QMat g(12, 12);
  for (int i = 0; i < 7; ++i) g(i, i) = -2;
  g(7, 7) = -4;
  for (int i = 0; i < 7; ++i) g(i, 7) = g(7, i) = -1;
  g(8, 9) = g(9, 8) = 1;
  g(10, 11) = g(11, 10) = 1;
  return IntegerLattice(g, "TX_std", indexed_labels("t", 12));
}

IntegerLattice tx3_std() {
  IntegerLattice l =
      direct_sum(direct_sum(U(), U_scaled(3)), direct_sum(A(2), A(2)));
  l.name = "TX3_std";
  l.labels = {"v1", "v2", "u1", "u2", "a1", "a2", "b1", "b2"};
  return l;
}

namespace {

IntegerLattice un_lattice() {
  // (F, S, N_1..N_7, Nhat): the U-part carries the fiber/section pairing
  // F^2 = 0, F.S = 1, S^2 = -2 so that (F, F+S) is a standard U basis.
  QMat g(10, 10);
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = -2;
  IntegerLattice n = nikulin();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(2 + i, 2 + j) = n.gram(i, j);
  std::vector<std::string> labels{"F", "S"};
  for (const auto& s : n.labels) labels.push_back(s);
  return IntegerLattice(g, "U+N", labels);
}

IntegerLattice um_lattice() {
  QMat g(14, 14);
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = -2;
  IntegerLattice m = order3_M();
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) g(2 + i, 2 + j) = m.gram(i, j);
  return IntegerLattice(g, "U+M");
}

IntegerLattice k12tilde() {
  IntegerLattice e6 = E6();
  QMat g(12, 12);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      g(i, j) = e6.gram(i, j) * 2;
      g(6 + i, 6 + j) = e6.gram(i, j) * 2;
      g(i, 6 + j) = e6.gram(i, j);
      g(6 + i, j) = e6.gram(i, j);
    }
  return IntegerLattice(g, "K12tilde");
}

// K12 = saturated orthogonal complement of <F, S+T1+T2> in U+M, where
// T1 = 2F+S-Mhat', T2 = 2F+S-Mhat.
IntegerLattice k12() {
  IntegerLattice um = um_lattice();
  // S+T1+T2 = 4F+3S - (Mhat+Mhat') = 4F+3S - sum_j (M_1^(j)+M_2^(j)).
  // In the U+M basis the M-block is (M_1^(1), M_2^(1), .., M_1^(6), Mhat),
  // with M_2^(6) = 3*Mhat - sum over the other A_2^6 coordinates weighted.
  // Work in direct-sum coordinates instead and convert via the glue basis.
  IntegerLattice m = order3_M();
  // order3_M basis rows (in A_2^6 coordinates) via its construction:
  QMat a2sum(12, 12);
  for (int j = 0; j < 6; ++j) {
    a2sum(2 * j, 2 * j) = a2sum(2 * j + 1, 2 * j + 1) = -2;
    a2sum(2 * j, 2 * j + 1) = a2sum(2 * j + 1, 2 * j) = 1;
  }
  QMat glue(1, 12);
  for (int j = 0; j < 6; ++j) {
    glue(0, 2 * j) = Rat(1, 3);
    glue(0, 2 * j + 1) = Rat(2, 3);
  }
  Overlattice o = overlattice(IntegerLattice(a2sum, "A2^6"), glue);
  // rows of o.base_change express the M basis in A_2^6 coordinates
  QMat mb_inv = o.base_change.inverse();  // A_2^6 coords -> M coords
  // sum_j (M_1^(j)+M_2^(j)) in A_2^6 coords is all-ones; convert to M coords.
  QMat ones(1, 12);
  for (int j = 0; j < 12; ++j) ones(0, j) = 1;
  QMat ones_m = ones * mb_inv;
  QMat v(1, 14);
  v(0, 0) = 4;
  v(0, 1) = 3;
  for (int j = 0; j < 12; ++j) v(0, 2 + j) = -ones_m(0, j);
  QMat f(1, 14);
  f(0, 0) = 1;
  Sublattice inv_part(um, QMat::vstack(f, v));
  Sublattice comp = orthogonal_complement(inv_part);
  IntegerLattice out = comp.as_lattice("K12");
  return out;
}

}  // namespace

IntegerLattice make(const NamedLatticeId& id) {
  switch (id.family) {
    case Family::U:
      return U();
    case Family::Un:
      if (id.n == 0) throw Error("U(n) needs n != 0");
      return U_scaled(id.n);
    case Family::Diag:
      if (id.n == 0) throw Error("<n> needs n != 0");
      return diag_lattice({id.n});
    case Family::An:
      if (id.n < 1) throw Error("A_n needs n >= 1");
      return A(int(id.n));
    case Family::Dn:
      return D(int(id.n));
    case Family::E6:
      return E6();
    case Family::E6_2:
      return scale(E6(), 2, "E6(2)");
    case Family::E8:
      return E8();
    case Family::E8_2:
      return E8_scaled2();
    case Family::N:
      return nikulin();
    case Family::M:
      return order3_M();
    case Family::K12tilde:
      return k12tilde();
    case Family::K12:
      return k12();
    case Family::LambdaK3:
      return lambda_k3();
    case Family::UN:
      return un_lattice();
    case Family::UM:
      return um_lattice();
    case Family::TX_std:
      return tx_std();
    case Family::TX3_std:
      return tx3_std();
    case Family::Lambda_d: {
      if (id.d < 1) throw Error("Lambda_d needs d >= 1");
      IntegerLattice l = direct_sum(un_lattice(), diag_lattice({-2 * id.d}));
      l.name = "Lambda_" + std::to_string(id.d);
      return l;
    }
    case Family::Lambda_d_a:
    case Family::Lambda_d_b: {
      bool is_a = id.family == Family::Lambda_d_a;
      if (is_a && (id.d % 4 + 4) % 4 != 2)
        throw Error("Lambda_d^(a) needs d = 2 mod 4");
      if (!is_a && (id.d % 4 + 4) % 4 != 0)
        throw Error("Lambda_d^(b) needs d = 0 mod 4");
      IntegerLattice base = direct_sum(un_lattice(), diag_lattice({-2 * id.d}));
      Overlattice o = overlattice(base, glue_description(id).glue);
      IntegerLattice l = o.lattice;
      l.name = "Lambda_" + std::to_string(id.d) + (is_a ? "a" : "b");
      if (o.index != 2) throw Error("Lambda_d overlattice index != 2");
      return l;
    }
    case Family::Prime_2d_E82:
    case Family::Prime_2d_N: {
      if (id.d < 2 || id.d % 2 != 0) throw Error("(...)' families need d even");
      bool e8 = id.family == Family::Prime_2d_E82;
      IntegerLattice base = direct_sum(diag_lattice({2 * id.d}), e8 ? E8_scaled2() : nikulin());
      Overlattice o = overlattice(base, glue_description(id).glue);
      if (o.index != 2) throw Error("(...)' overlattice index != 2");
      IntegerLattice l = o.lattice;
      l.name = std::string("(<") + std::to_string(2 * id.d) + ">+" + (e8 ? "E8(2)" : "N") + ")'";
      return l;
    }
  }
  throw Error("unknown lattice family");
}

bool has_glue(const NamedLatticeId& id) {
  switch (id.family) {
    case Family::M:
    case Family::Lambda_d_a:
    case Family::Lambda_d_b:
    case Family::Prime_2d_E82:
    case Family::Prime_2d_N:
      return true;
    default:
      return false;
  }
}

GlueDescription glue_description(const NamedLatticeId& id) {
  switch (id.family) {
    case Family::M: {
      QMat g(1, 12);
      for (int j = 0; j < 6; ++j) {
        g(0, 2 * j) = Rat(1, 3);
        g(0, 2 * j + 1) = Rat(2, 3);
      }
      return {g, "Mhat = sum_j (M_1^(j) + 2 M_2^(j))/3 over A_2^6"};
    }
    case Family::Lambda_d_a: {
      // delta_1 + delta_2 + d*delta_7 where delta_1+delta_2 is the class of
      // (N_1+N_2)/2 (q-value 1) and delta_7 generates the <-2d> summand's
      // discriminant group; as a vector: (V + N_1 + N_2)/2.
      QMat g(1, 11);
      g(0, 2) = g(0, 3) = Rat(1, 2);
      g(0, 10) = Rat(1, 2);
      return {g, "delta_1 + delta_2 + d*delta_7 = (V + N_1 + N_2)/2"};
    }
    case Family::Lambda_d_b: {
      QMat g(1, 11);
      g(0, 2) = g(0, 3) = g(0, 4) = g(0, 5) = Rat(1, 2);
      g(0, 10) = Rat(1, 2);
      return {g, "delta_1 + d*delta_7 = (V + N_1 + N_2 + N_3 + N_4)/2"};
    }
    case Family::Prime_2d_E82: {
      // (w + xi)/2 with w the <2d> generator; xi = f_1 for d = 2 mod 4 and
      // f_1 + f_3 for d = 0 mod 4 (f_k the E8(2) basis), so that the glue
      // class is isotropic.
      QMat g(1, 9);
      g(0, 0) = Rat(1, 2);
      g(0, 1) = Rat(1, 2);
      if ((id.d % 4 + 4) % 4 == 0) g(0, 3) = Rat(1, 2);
      return {g, (id.d % 4 == 0) ? "(w + f_1 + f_3)/2" : "(w + f_1)/2"};
    }
    case Family::Prime_2d_N: {
      // (w + eta)/2 with eta = N_1+N_2 (q-value 1) for d = 2 mod 4 and
      // N_1+N_2+N_3+N_4 (q-value 0) for d = 0 mod 4.
      QMat g(1, 9);
      g(0, 0) = Rat(1, 2);
      g(0, 1) = g(0, 2) = Rat(1, 2);
      if ((id.d % 4 + 4) % 4 == 0) g(0, 3) = g(0, 4) = Rat(1, 2);
      return {g, (id.d % 4 == 0) ? "(w + N_1 + N_2 + N_3 + N_4)/2" : "(w + N_1 + N_2)/2"};
    }
    default:
      throw Error("family has no glue: " + family_name(id.family));
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::U: return "U";
    case Family::Un: return "U(n)";
    case Family::Diag: return "<n>";
    case Family::An: return "A_n";
    case Family::Dn: return "D_n";
    case Family::E6: return "E6";
    case Family::E6_2: return "E6(2)";
    case Family::E8: return "E8";
    case Family::E8_2: return "E8(2)";
    case Family::N: return "N";
    case Family::M: return "M";
    case Family::K12tilde: return "K12tilde";
    case Family::K12: return "K12";
    case Family::LambdaK3: return "LambdaK3";
    case Family::Lambda_d: return "Lambda_d";
    case Family::Lambda_d_a: return "Lambda_d^(a)";
    case Family::Lambda_d_b: return "Lambda_d^(b)";
    case Family::Prime_2d_E82: return "(<2d>+E8(2))'";
    case Family::Prime_2d_N: return "(<2d>+N)'";
    case Family::UN: return "U+N";
    case Family::UM: return "U+M";
    case Family::TX_std: return "TX_std";
    case Family::TX3_std: return "TX3_std";
  }
  return "?";
}

NamedLatticeId parse_name(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : name) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur.push_back(c);
  }
  parts.push_back(cur);
  const std::string& head = parts[0];
  auto num = [&](size_t i) -> long {
    if (parts.size() <= i) throw Error("lattice name '" + name + "' needs a parameter");
    return std::stol(parts[i]);
  };
  if (head == "U") return parts.size() > 1 ? NamedLatticeId{Family::Un, num(1)} : NamedLatticeId{Family::U};
  if (head == "diag") return {Family::Diag, num(1)};
  if (head == "A") return {Family::An, num(1)};
  if (head == "D") return {Family::Dn, num(1)};
  if (head == "E6") return {Family::E6};
  if (head == "E6_2") return {Family::E6_2};
  if (head == "E8") return {Family::E8};
  if (head == "E8_2") return {Family::E8_2};
  if (head == "N") return {Family::N};
  if (head == "M") return {Family::M};
  if (head == "K12tilde") return {Family::K12tilde};
  if (head == "K12") return {Family::K12};
  if (head == "LambdaK3") return {Family::LambdaK3};
  if (head == "UN") return {Family::UN};
  if (head == "UM") return {Family::UM};
  if (head == "TX") return {Family::TX_std};
  if (head == "TX3") return {Family::TX3_std};
  if (head == "Lambda") {
    long d = num(1);
    if (parts.size() > 2) {
      if (parts[2] == "a") return {Family::Lambda_d_a, 0, d};
      if (parts[2] == "b") return {Family::Lambda_d_b, 0, d};
      throw Error("Lambda variant must be 'a' or 'b'");
    }
    return {Family::Lambda_d, 0, d};
  }
  if (head == "PrimeE8") return {Family::Prime_2d_E82, 0, num(1)};
  if (head == "PrimeN") return {Family::Prime_2d_N, 0, num(1)};
  throw Error("unknown lattice name: '" + name + "'");
}

std::vector<std::string> known_names() {
  return {"U",       "U:<n>",    "diag:<n>", "A:<n>",  "D:<n>",  "E6",      "E6_2",
          "E8",      "E8_2",     "N",        "M",      "K12tilde", "K12",   "LambdaK3",
          "UN",      "UM",       "TX",       "TX3",    "Lambda:<d>", "Lambda:<d>:a",
          "Lambda:<d>:b", "PrimeE8:<d>", "PrimeN:<d>"};
}

}  // namespace atlas
}  // namespace k3lat
