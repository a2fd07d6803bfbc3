#pragma once

#include "k3lat/fibration.hpp"

namespace k3lat {

// Incremental Neron-Severi specialization inside a fixed unimodular H^2.
// Works for both torsion orders: only the ambient assembly differs.
struct SpecializeContext {
  IntegerLattice ambient;  // H^2(X,Z)
  QMat ns0;                // initial NS generators, ambient coords
  QMat fs;                 // the fiber and zero-section rows, ambient coords
  QMat t_basis;            // transcendental basis rows: step classes use these coords
  int euler = 24;
};

struct SpecializeStep {
  std::string name;
  QMat classes;  // rows in t_basis coordinates
};

struct StepReport {
  std::string name;
  int rho = 0;
  LatticeInvariants ns_inv, t_inv;
  std::vector<AdeComponent> roots;  // full root type of <F,S>-perp in NS
  std::map<int, int> fibers;        // n -> count of I_n
  // "roots": fibers read off the root type, certified by the discriminant
  // identity.  "chain": the root type oversaturates (extra torsion glue), so
  // the configuration follows the degeneration bookkeeping instead: a step
  // class of square -2n merges two I_n fibers into one I_{2n}.
  std::string fiber_inference;
  int mw_rank = 0;
  std::vector<Int> mw_torsion;  // cyclic factors
  bool torsion_structure_unique = true;
  Rat mwl_disc;                 // |d(MWL)| from the discriminant identity
  std::vector<Int> step_glue;   // structure of NS_k over (NS_{k-1} + new classes)
  Int step_index = 1;
  QMat ns_basis;  // ambient coords
  QMat t_basis;   // ambient coords
  std::string fiber_string;
};

std::vector<StepReport> specialize(const SpecializeContext& ctx,
                                   const std::vector<SpecializeStep>& steps);

std::string fiber_map_string(const std::map<int, int>& fibers);

// Abelian groups of the given order that inject into the product of the
// cyclic component groups Z/n over the I_n fibers.
std::vector<std::vector<Int>> torsion_structures(const Int& order,
                                                 const std::map<int, int>& fibers);

}  // namespace k3lat
