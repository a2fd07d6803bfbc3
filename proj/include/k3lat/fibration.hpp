#pragma once

#include <map>

#include "k3lat/lattice.hpp"
#include "k3lat/poly.hpp"

namespace k3lat {

// Combinatorial data of an elliptic K3 fibration, restricted to semistable
// fibers I_n plus the additive type III.
struct Fiber {
  bool type_iii = false;
  int n = 1;  // I_n when !type_iii
  int root_rank() const { return type_iii ? 1 : n - 1; }
  Int trivial_det() const { return type_iii ? 2 : n; }
  int euler() const { return type_iii ? 3 : n; }
};

struct SectionData {
  Int dot_zero;                              // intersection with the zero section
  std::map<int, int> fiber_contacts;         // fiber index -> component index
};

struct FibrationConfig {
  std::vector<Fiber> fibers;
  std::vector<Int> mw_torsion;  // cyclic factors
  int mw_rank = 0;
  int declared_rho = 0;  // 0 = unknown

  int root_rank() const;
  Int trivial_det() const;  // |d(Tr)| = prod over fibers
  Int torsion_order() const;
  int euler_number() const;
  void validate() const;  // Shioda-Tate bound 2 + roots + mw_rank <= 20
};

// |d(MWL)| = |d(NS)| * |MW_tors|^2 / |d(Tr)|, exact.
Rat mwl_discriminant(const FibrationConfig& cfg, const Int& ns_det_abs);

// Height pairing h(s) = 4 + 2 s.S - sum of local contributions.
Rat height(const FibrationConfig& cfg, const SectionData& s);

// Explicit section classes in the direct-sum coordinates (F, S, N1..N7,
// Nhat, V) of U + N + <-2d>.
enum class SectionKind {
  Torsion2,        // T = 2F + S - Nhat
  InfiniteLambdaD,  // G = dF + S + V              (Lambda_d, d > 1)
  InfiniteLambdaDA, // G = (2+d)/4 F + S + (V-N1-N2)/2
  InfiniteLambdaDB, // G = (4+d)/4 F + S + (V-N1-N2-N3-N4)/2
};
struct SectionClassResult {
  QMat vec;  // 1 x 11
  Rat norm, f_deg, dot_s, dot_t;
  bool integral_in_ns;  // lies in the overlattice the family prescribes
};
SectionClassResult section_class(SectionKind kind, long d);

// A_{2n-1} as an index-n overlattice of A_{n-1} + A_{n-1} + <-2n>, with the
// explicit chain basis and the inverse change of basis.
struct GlueChainData {
  Overlattice over;   // base change from the direct sum
  QMat chain_basis;   // (2n-1) rows b_i in direct-sum coords, Gram = A_{2n-1}
  QMat backward;      // rows a^(1)_i, a^(2)_i, v in chain coords; rational
  Int index;
};
GlueChainData glue_chain(int n);

// Weierstrass side: y^2 = x (x^2 + a x + b) and its 2-isogenous quotient.
std::pair<QPoly, QPoly> quotient_weierstrass(const QPoly& a, const QPoly& b);

struct MultPattern {
  std::map<int, int> counts;  // multiplicity -> number of roots (incl. infinity)
  bool shared_ab_root = false;  // a and b share a root: possible type III
  std::string fiber_string() const;  // "8I2+8I1" style, semistable reading
};
// Root multiplicities of the discriminant b^2 (a^2 - 4b), homogenized to
// degree 24 via deg a <= 4, deg b <= 8; throws on identically zero input.
MultPattern discriminant_multiplicities(const QPoly& a, const QPoly& b);

}  // namespace k3lat
