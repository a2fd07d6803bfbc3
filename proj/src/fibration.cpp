#include "k3lat/fibration.hpp"

#include "k3lat/atlas.hpp"

#include <sstream>

namespace k3lat {

int FibrationConfig::root_rank() const {
  int r = 0;
  for (const auto& f : fibers) r += f.root_rank();
  return r;
}

Int FibrationConfig::trivial_det() const {
  Int d = 1;
  for (const auto& f : fibers) d *= f.trivial_det();
  return d;
}

Int FibrationConfig::torsion_order() const {
  Int o = 1;
  for (const auto& t : mw_torsion) o *= t;
  return o;
}

int FibrationConfig::euler_number() const {
  int e = 0;
  for (const auto& f : fibers) e += f.euler();
  return e;
}

void FibrationConfig::validate() const {
  for (const auto& f : fibers)
    if (!f.type_iii && f.n < 1) throw Error("fibration: I_n needs n >= 1");
  int st = 2 + root_rank() + mw_rank;
  if (st > 20) throw Error("fibration: Shioda-Tate rank exceeds 20");
  if (declared_rho > 0 && st != declared_rho)
    throw Error("fibration: Shioda-Tate rank does not match the declared Picard number");
  if (euler_number() > 24) throw Error("fibration: Euler numbers exceed 24");
}

Rat mwl_discriminant(const FibrationConfig& cfg, const Int& ns_det_abs) {
  cfg.validate();
  Int t = cfg.torsion_order();
  Rat r = Rat(ns_det_abs * t * t) / Rat(cfg.trivial_det());
  if (sgn(r) <= 0) throw Error("mwl_discriminant: inconsistent configuration");
  return r;
}

Rat height(const FibrationConfig& cfg, const SectionData& s) {
  cfg.validate();
  Rat h = Rat(4) + Rat(2) * Rat(s.dot_zero);
  for (const auto& [idx, comp] : s.fiber_contacts) {
    if (idx < 0 || idx >= int(cfg.fibers.size())) throw Error("height: bad fiber index");
    const Fiber& f = cfg.fibers[idx];
    if (f.type_iii) {
      if (comp != 1) throw Error("height: III has components 0 and 1");
      if (comp == 1) h -= Rat(1, 2);
    } else {
      if (comp < 0 || comp >= f.n) throw Error("height: bad component index");
      h -= frac(Int(comp) * Int(f.n - comp), Int(f.n));
    }
  }
  return h;
}

SectionClassResult section_class(SectionKind kind, long d) {
  // direct-sum coordinates (F, S, N1..N7, Nhat, V), V^2 = -2d
  QMat gram(11, 11);
  QMat un = atlas::make({atlas::Family::UN}).gram;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) gram(i, j) = un(i, j);
  gram(10, 10) = Rat(Int(-2 * d));

  QMat v(1, 11);
  switch (kind) {
    case SectionKind::Torsion2:
      v(0, 0) = 2;
      v(0, 1) = 1;
      v(0, 9) = -1;
      break;
    case SectionKind::InfiniteLambdaD:
      if (d < 1) throw Error("section_class: d >= 1 required");
      v(0, 0) = Rat(Int(d));
      v(0, 1) = 1;
      v(0, 10) = 1;
      break;
    case SectionKind::InfiniteLambdaDA:
      if ((d % 4 + 4) % 4 != 2) throw Error("section_class: d = 2 mod 4 required");
      v(0, 0) = frac(Int(2 + d), Int(4));
      v(0, 1) = 1;
      v(0, 2) = v(0, 3) = Rat(-1, 2);
      v(0, 10) = Rat(1, 2);
      break;
    case SectionKind::InfiniteLambdaDB:
      if ((d % 4 + 4) % 4 != 0) throw Error("section_class: d = 0 mod 4 required");
      v(0, 0) = frac(Int(4 + d), Int(4));
      v(0, 1) = 1;
      v(0, 2) = v(0, 3) = v(0, 4) = v(0, 5) = Rat(-1, 2);
      v(0, 10) = Rat(1, 2);
      break;
  }

  QMat t(1, 11);
  t(0, 0) = 2;
  t(0, 1) = 1;
  t(0, 9) = -1;
  QMat fvec(1, 11), svec(1, 11);
  fvec(0, 0) = 1;
  svec(0, 1) = 1;

  SectionClassResult r;
  r.vec = v;
  r.norm = (v * gram * v.transpose())(0, 0);
  r.f_deg = (v * gram * fvec.transpose())(0, 0);
  r.dot_s = (v * gram * svec.transpose())(0, 0);
  r.dot_t = (v * gram * t.transpose())(0, 0);
  if (r.norm != -2) throw Error("section_class: norm is not -2");
  if (r.f_deg != 1) throw Error("section_class: fiber degree is not 1");

  // membership in the prescribed overlattice
  if (kind == SectionKind::Torsion2 || kind == SectionKind::InfiniteLambdaD) {
    r.integral_in_ns = v.is_integral();
  } else {
    auto fam = (kind == SectionKind::InfiniteLambdaDA) ? atlas::Family::Lambda_d_a
                                                       : atlas::Family::Lambda_d_b;
    auto base = direct_sum(atlas::make({atlas::Family::UN}), atlas::diag_lattice({-2 * d}));
    Overlattice o = overlattice(base, atlas::glue_description({fam, 0, d}).glue);
    r.integral_in_ns = (v * o.base_change.inverse()).is_integral();
  }
  return r;
}

GlueChainData glue_chain(int n) {
  if (n < 2 || n > 8) throw Error("glue_chain: n must be in 2..8");
  IntegerLattice base =
      direct_sum(direct_sum(atlas::A(n - 1), atlas::A(n - 1)), atlas::diag_lattice({-2 * n}));
  // glue = w^(1) + w^(2) + v/n with w^(j) = sum_i i a_i^(j) / n
  QMat glue(1, 2 * n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    glue(0, i - 1) = frac(i, n);
    glue(0, (n - 1) + i - 1) = frac(i, n);
  }
  glue(0, 2 * n - 2) = Rat(1, n);
  GlueChainData out;
  out.over = overlattice(base, glue);
  out.index = out.over.index;

  // chain basis: b_1 = (v + sum_k (n-k)(a_k^(1) - a_k^(2)))/n, then
  // b_{2i} = a_i^(1) - b_{2i-1}, b_{2i+1} = a_i^(2) - b_{2i}.
  QMat b(2 * n - 1, 2 * n - 1);
  QMat b1(1, 2 * n - 1);
  b1(0, 2 * n - 2) = Rat(1, n);
  for (int k = 1; k <= n - 1; ++k) {
    b1(0, k - 1) = frac(n - k, n);
    b1(0, (n - 1) + k - 1) = frac(-(n - k), n);
  }
  b.set_row(0, b1);
  for (int i = 1; i <= n - 1; ++i) {
    QMat a1(1, 2 * n - 1), a2(1, 2 * n - 1);
    a1(0, i - 1) = 1;
    a2(0, (n - 1) + i - 1) = 1;
    b.set_row(2 * i - 1, a1 - b.row(2 * i - 2));
    b.set_row(2 * i, a2 - b.row(2 * i - 1));
  }
  out.chain_basis = b;
  if (b * base.gram * b.transpose() != atlas::A(2 * n - 1).gram)
    throw Error("glue_chain: chain basis does not carry the A_{2n-1} Gram");

  // backward: a_i^(1), a_i^(2), v in chain coordinates
  out.backward = QMat::identity(2 * n - 1) * b.inverse();
  return out;
}

std::pair<QPoly, QPoly> quotient_weierstrass(const QPoly& a, const QPoly& b) {
  return {a * Rat(-2), a * a - b * Rat(4)};
}

std::string MultPattern::fiber_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    if (!first) os << "+";
    first = false;
    if (it->second != 1) os << it->second;
    os << "I" << it->first;
  }
  return os.str();
}

MultPattern discriminant_multiplicities(const QPoly& a, const QPoly& b) {
  if (a.degree() > 4 || b.degree() > 8)
    throw Error("discriminant_multiplicities: deg a <= 4 and deg b <= 8 required");
  QPoly disc = b * b * (a * a - b * Rat(4));
  if (disc.is_zero()) throw Error("discriminant_multiplicities: discriminant vanishes identically");
  MultPattern p;
  for (const auto& [factor, mult] : squarefree_decomposition(disc))
    p.counts[mult] += factor.degree();
  int inf = 24 - disc.degree();  // homogeneous degree deficit = root at infinity
  if (inf > 0) p.counts[inf] += 1;
  if (!a.is_zero() && !b.is_zero() && QPoly::gcd(a, b).degree() > 0) p.shared_ab_root = true;
  return p;
}

}  // namespace k3lat
