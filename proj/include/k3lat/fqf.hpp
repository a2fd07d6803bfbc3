#pragma once

#include "k3lat/lattice.hpp"

namespace k3lat {

// A finite quadratic form: generators of orders invariant_factors[i], with
// q valued in Q/2Z (normalized to [0,2)) and pairings b in Q/Z ([0,1)).
struct FiniteQuadraticForm {
  std::vector<Int> invariant_factors;
  std::vector<Rat> q;
  QMat b;
  QMat generator_lifts;  // optional: rows in the source lattice basis

  int ngens() const { return int(invariant_factors.size()); }
  Int order() const;
  void validate() const;
  // canonical divisibility chain of the underlying group
  std::vector<Int> group_invariants() const;

  Rat q_of(const std::vector<Int>& elt) const;  // mod 2
  Rat b_of(const std::vector<Int>& x, const std::vector<Int>& y) const;  // mod 1
};

Rat mod1(const Rat& x);
Rat mod2(const Rat& x);

FiniteQuadraticForm fqf_cyclic(const Int& n, const Rat& qval);  // Z/n, q(g)=qval
FiniteQuadraticForm fqf_u2();                                   // u(2)
FiniteQuadraticForm fqf_direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
FiniteQuadraticForm fqf_power(const FiniteQuadraticForm& f, int k);

// Discriminant form A_L = L^*/L of an even nondegenerate lattice, with
// explicit generator lifts.
FiniteQuadraticForm discriminant_form(const IntegerLattice& l);

struct FqfIsoVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::string reason;
  // witness row i = image of generator i of the first form, as coefficients
  // of the second form's generators
  std::optional<QMat> witness;
};

// Exhaustive order- and value-preserving generator-image search with pruning.
// Never guesses: groups above the bound come back Inconclusive.
FqfIsoVerdict fqf_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                             const Int& order_bound = Int(100000));

Int fqf_order_bound_from_env();  // K3LAT_FQF_BOUND override, default 100000

}  // namespace k3lat
