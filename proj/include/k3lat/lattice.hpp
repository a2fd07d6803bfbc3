#pragma once

#include <optional>

#include "k3lat/normal_form.hpp"

namespace k3lat {

// A finite-rank lattice given by an exact symmetric integer Gram matrix.
struct IntegerLattice {
  QMat gram;
  std::string name;
  std::vector<std::string> labels;

  IntegerLattice() = default;
  explicit IntegerLattice(QMat g, std::string n = "", std::vector<std::string> l = {});

  int rank() const { return gram.rows(); }
  bool is_even() const;
  bool is_degenerate() const;
};

struct LatticeInvariants {
  Int det;
  int s_plus = 0, s_minus = 0;
  bool even = false;
  bool degenerate = false;
  bool definite() const { return s_plus == 0 || s_minus == 0; }
  bool indefinite() const { return s_plus > 0 && s_minus > 0; }
};

// det / signature / evenness.  Degenerate input yields degenerate=true with
// det=0 and the signature of the nondegenerate part.
LatticeInvariants invariants(const IntegerLattice& l);

// A lattice embedded in an ambient lattice; generators are the rows of
// `coords` in ambient basis coordinates (rational entries allowed).
struct Sublattice {
  IntegerLattice ambient;
  QMat coords;

  Sublattice() = default;
  Sublattice(IntegerLattice amb, QMat c);

  int rank() const { return coords.rows(); }
  QMat induced_gram() const;
  IntegerLattice as_lattice(const std::string& name = "") const;
  bool in_ambient() const { return coords.is_integral(); }
  bool pairs_integrally() const;  // generators lie in the dual of the ambient
};

// Primitive closure inside the ambient; index = [sat(S) : S].
struct SaturatedSublattice {
  Sublattice sub;
  Int index;
};
SaturatedSublattice saturation(const Sublattice& s);

// Primitive sublattice of ambient vectors pairing to zero with every
// generator of s.
Sublattice orthogonal_complement(const Sublattice& s);

// Finite-index extension of L by rational glue vectors in L^*.
struct Overlattice {
  IntegerLattice lattice;
  QMat base_change;  // rows: new basis in old coordinates
  Int index;
};
Overlattice overlattice(const IntegerLattice& l, const QMat& glue);

// All vectors with |<v,v>| <= norm_bound in a definite lattice, one per
// +-pair, in a canonical deterministic order.
std::vector<std::vector<Int>> short_vectors(const IntegerLattice& l, const Int& norm_bound);

// ADE decomposition of the sublattice generated by norm -2 vectors.
struct AdeComponent {
  char letter;  // 'A', 'D', 'E'
  int rank;
  bool operator==(const AdeComponent& o) const = default;
};
std::vector<AdeComponent> root_type(const IntegerLattice& l);
std::string ade_str(const std::vector<AdeComponent>& t);
int ade_rank(const std::vector<AdeComponent>& t);

// Basis (rows) of the sublattice spanned by the norm -2 vectors of l.
QMat root_sublattice_basis(const IntegerLattice& l);

enum class VerdictStatus { Yes, No, Inconclusive };
struct IsometryVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::optional<QMat> witness;  // rows: images of L1 basis in L2 coordinates
  std::string reason;
};

// Backtracking basis-image search between definite lattices.
IsometryVerdict definite_isometric(const IntegerLattice& l1, const IntegerLattice& l2,
                                   int rank_bound = 12);

// True iff l is indefinite and rank(l) >= length(A_l) + 2; the criterion used
// to upgrade matching invariants + discriminant form to an isometry verdict.
bool uniqueness_criterion(const IntegerLattice& l);

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b);

// A linear map between lattices, rows-to-rows: image(x) = x * matrix.
struct LatticeMap {
  IntegerLattice source, target;
  QMat matrix;
  Rat form_scale = 1;
  bool is_similarity() const;  // matrix * G_t * matrix^T == scale * G_s
};

}  // namespace k3lat
