#include "k3lat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace k3lat {

IntegerLattice::IntegerLattice(QMat g, std::string n, std::vector<std::string> l)
    : gram(std::move(g)), name(std::move(n)), labels(std::move(l)) {
  if (!gram.is_symmetric()) throw Error("Gram matrix must be symmetric: " + name);
  if (!gram.is_integral()) throw Error("Gram matrix must be integral: " + name);
  if (!labels.empty() && int(labels.size()) != gram.rows())
    throw Error("label count does not match rank: " + name);
}

bool IntegerLattice::is_even() const {
  for (int i = 0; i < rank(); ++i)
    if (gram(i, i).get_num() % 2 != 0) return false;
  return true;
}

bool IntegerLattice::is_degenerate() const { return rank() > 0 && sgn(gram.det()) == 0; }

LatticeInvariants invariants(const IntegerLattice& l) {
  LatticeInvariants inv;
  inv.even = l.is_even();
  inv.det = l.gram.det().get_num();
  inv.degenerate = (l.rank() > 0 && inv.det == 0);
  // Exact congruent diagonalization.  Pivot on a nonzero diagonal entry; if
  // the diagonal is zero but some off-diagonal g_ij is not, the plane
  // <e_i + e_j, e_i - e_j> contributes one positive and one negative square.
  QMat g = l.gram;
  int n = g.rows();
  std::vector<bool> done(n, false);
  int remaining = n;
  while (remaining > 0) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && sgn(g(i, i)) != 0) {
        p = i;
        break;
      }
    if (p >= 0) {
      if (sgn(g(p, p)) > 0)
        ++inv.s_plus;
      else
        ++inv.s_minus;
      for (int i = 0; i < n; ++i) {
        if (done[i] || i == p || sgn(g(i, p)) == 0) continue;
        Rat f = g(i, p) / g(p, p);
        for (int j = 0; j < n; ++j) g(i, j) -= f * g(p, j);
        for (int j = 0; j < n; ++j) g(j, i) -= f * g(j, p);
      }
      done[p] = true;
      --remaining;
      continue;
    }
    int a = -1, b = -1;
    for (int i = 0; i < n && a < 0; ++i) {
      if (done[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (done[j] || j == i) continue;
        if (sgn(g(i, j)) != 0) {
          a = i;
          b = j;
          break;
        }
      }
    }
    if (a < 0) break;  // remaining block is zero: degenerate part
    // substitute e_a -> e_a + e_b to expose a nonzero diagonal
    for (int j = 0; j < n; ++j) g(a, j) += g(b, j);
    for (int j = 0; j < n; ++j) g(j, a) += g(j, b);
  }
  return inv;
}

Sublattice::Sublattice(IntegerLattice amb, QMat c) : ambient(std::move(amb)), coords(std::move(c)) {
  if (coords.rows() > 0 && coords.cols() != ambient.rank())
    throw Error("sublattice coordinate width does not match ambient rank");
}

QMat Sublattice::induced_gram() const { return coords * ambient.gram * coords.transpose(); }

IntegerLattice Sublattice::as_lattice(const std::string& name) const {
  QMat g = induced_gram();
  if (!g.is_integral()) throw Error("sublattice has non-integral induced Gram");
  return IntegerLattice(g, name);
}

bool Sublattice::pairs_integrally() const { return (coords * ambient.gram).is_integral(); }

SaturatedSublattice saturation(const Sublattice& s) {
  if (s.ambient.is_degenerate()) throw DegenerateError("saturation: degenerate ambient");
  if (!s.in_ambient()) throw Error("saturation: generators must be integral in the ambient");
  if (s.coords.rank() != s.coords.rows()) throw Error("saturation: dependent generators");
  SaturationResult r = saturate_rows(s.coords);
  return SaturatedSublattice{Sublattice(s.ambient, r.basis), r.index};
}

Sublattice orthogonal_complement(const Sublattice& s) {
  if (s.ambient.is_degenerate()) throw DegenerateError("orthogonal_complement: degenerate ambient");
  QMat pair = s.coords * s.ambient.gram;  // k x n, row i = pairings of gen i
  Int scale = pair.denominator_lcm();
  QMat a = pair * Rat(scale);
  QMat ker = integer_kernel(a);
  return Sublattice(s.ambient, hnf_row_basis(ker));
}

Overlattice overlattice(const IntegerLattice& l, const QMat& glue) {
  if (l.is_degenerate()) throw DegenerateError("overlattice: degenerate base lattice");
  int n = l.rank();
  for (int i = 0; i < glue.rows(); ++i) {
    QMat pair = glue.row(i) * l.gram;
    if (!pair.is_integral())
      throw GlueError("glue vector " + std::to_string(i + 1) + " is not in the dual lattice");
  }
  QMat stacked = QMat::vstack(QMat::identity(n), glue);
  Int den = stacked.denominator_lcm();
  QMat basis_scaled = hnf_row_basis(stacked * Rat(den));
  if (basis_scaled.rows() != n) throw GlueError("glue vectors leave the rational span of the base");
  QMat basis = basis_scaled * Rat(1, den);
  QMat g = basis * l.gram * basis.transpose();
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      if (g(i, j).get_den() != 1)
        throw GlueError("extension is not integral at basis pair (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")");
  for (int i = 0; i < g.rows(); ++i)
    if (g(i, i).get_num() % 2 != 0)
      throw GlueError("extension is not even at basis vector " + std::to_string(i + 1));
  Rat idx = 1 / abs(basis.det());
  if (idx.get_den() != 1) throw Error("overlattice: non-integral index");
  IntegerLattice out(g, l.name.empty() ? "" : l.name + "'");
  return Overlattice{out, basis, idx.get_num()};
}

namespace {

// Fincke-Pohst over an exact Cholesky-style decomposition q(x) = sum_i
// q_ii (x_i + sum_{j>i} q_ij x_j)^2 of a positive definite form.
struct ShortVectorEnum {
  int n;
  std::vector<std::vector<Rat>> q;
  std::vector<Int> x;
  std::vector<std::vector<Int>>* out;

  void enumerate(int level, const Rat& budget) {
    if (level < 0) {
      // skip the zero vector; normalize sign by first nonzero coordinate
      for (int i = 0; i < n; ++i)
        if (x[i] != 0) {
          std::vector<Int> v = x;
          if ([&] {
                for (int k = 0; k < n; ++k) {
                  if (v[k] != 0) return v[k] < 0;
                }
                return false;
              }())
            for (auto& c : v) c = -c;
          out->push_back(v);
          return;
        }
      return;
    }
    Rat s(0);
    for (int j = level + 1; j < n; ++j) s += q[level][j] * Rat(x[j]);
    // q_ll (t + s)^2 <= budget; seed at ceil(-s - sqrt(budget/q_ll)), then
    // correct exactly since floor_sqrt only bounds the square root below.
    Rat r2 = budget / q[level][level];
    Rat lo_rat = -s - Rat(floor_sqrt(r2));
    Int lo_i;
    mpz_cdiv_q(lo_i.get_mpz_t(), lo_rat.get_num_mpz_t(), lo_rat.get_den_mpz_t());
    while (q[level][level] * (Rat(lo_i - 1) + s) * (Rat(lo_i - 1) + s) <= budget) --lo_i;
    while (q[level][level] * (Rat(lo_i) + s) * (Rat(lo_i) + s) > budget) {
      if (Rat(lo_i) + s > 0) {
        x[level] = 0;
        return;  // parabola already passed: no integer in range
      }
      ++lo_i;
    }
    for (Int t = lo_i;; ++t) {
      Rat term = q[level][level] * (Rat(t) + s) * (Rat(t) + s);
      if (term > budget) break;
      x[level] = t;
      enumerate(level - 1, budget - term);
    }
    x[level] = 0;
  }
};

}  // namespace

std::vector<std::vector<Int>> short_vectors(const IntegerLattice& l, const Int& norm_bound) {
  LatticeInvariants inv = invariants(l);
  if (inv.degenerate || !inv.definite() || l.rank() == 0) {
    if (l.rank() == 0) return {};
    throw Error("short_vectors requires a definite lattice");
  }
  QMat g = (inv.s_minus > 0) ? -l.gram : l.gram;
  int n = g.rows();
  // Cholesky-style decomposition q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = g(i, j);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < n; ++k)
      for (int l2 = k; l2 < n; ++l2) q[k][l2] -= q[k][i] * q[i][l2];
  }
  std::vector<std::vector<Int>> out;
  ShortVectorEnum e{n, q, std::vector<Int>(n, Int(0)), &out};
  e.enumerate(n - 1, Rat(norm_bound));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());  // +-v collapse
  return out;
}

namespace {

Rat norm_of(const std::vector<Int>& v, const QMat& g) {
  int n = g.rows();
  Rat s(0);
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      s += Rat(v[i]) * g(i, j) * Rat(v[j]);
    }
  }
  return s;
}

Rat pair_of(const std::vector<Int>& a, const std::vector<Int>& b, const QMat& g) {
  int n = g.rows();
  Rat s(0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      s += Rat(a[i]) * g(i, j) * Rat(b[j]);
    }
  }
  return s;
}

}  // namespace

QMat root_sublattice_basis(const IntegerLattice& l) {
  auto roots = short_vectors(l, Int(2));
  QMat rows(0, l.rank());
  for (const auto& v : roots) {
    if (norm_of(v, l.gram) == Rat(-2) || norm_of(v, l.gram) == Rat(2)) {
      QMat r(1, l.rank());
      for (int j = 0; j < l.rank(); ++j) r(0, j) = Rat(v[j]);
      rows = rows.empty() ? r : QMat::vstack(rows, r);
    }
  }
  if (rows.rows() == 0) return QMat(0, l.rank());
  return hnf_row_basis(rows);
}

std::vector<AdeComponent> root_type(const IntegerLattice& l) {
  LatticeInvariants inv = invariants(l);
  if (!inv.definite()) throw Error("root_type requires a definite lattice");
  if (l.rank() == 0) return {};
  auto vecs = short_vectors(l, Int(2));
  std::vector<std::vector<Int>> roots;
  for (auto& v : vecs) {
    Rat nv = norm_of(v, l.gram);
    if (nv == Rat(-2) || nv == Rat(2)) roots.push_back(v);
  }
  if (roots.empty()) return {};
  // Connected components of the graph "nonzero pairing".
  int m = int(roots.size());
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < m; ++b) {
        if (comp[b] >= 0) continue;
        if (sgn(pair_of(roots[a], roots[b], l.gram)) != 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
      }
    }
    ++ncomp;
  }
  // Identify each component by (rank, number of roots counting both signs).
  std::vector<AdeComponent> out;
  for (int c = 0; c < ncomp; ++c) {
    QMat rows(0, l.rank());
    int count = 0;
    for (int i = 0; i < m; ++i) {
      if (comp[i] != c) continue;
      ++count;
      QMat r(1, l.rank());
      for (int j = 0; j < l.rank(); ++j) r(0, j) = Rat(roots[i][j]);
      rows = rows.empty() ? r : QMat::vstack(rows, r);
    }
    int rank = rows.rank();
    int nroots = 2 * count;
    AdeComponent comp_id{};
    if (nroots == rank * (rank + 1))
      comp_id = {'A', rank};
    else if (rank >= 4 && nroots == 2 * rank * (rank - 1))
      comp_id = {'D', rank};
    else if (rank == 6 && nroots == 72)
      comp_id = {'E', 6};
    else if (rank == 7 && nroots == 126)
      comp_id = {'E', 7};
    else if (rank == 8 && nroots == 240)
      comp_id = {'E', 8};
    else
      throw Error("root component is not of ADE type (rank " + std::to_string(rank) +
                  ", roots " + std::to_string(nroots) + ")");
    out.push_back(comp_id);
  }
  std::sort(out.begin(), out.end(), [](const AdeComponent& a, const AdeComponent& b) {
    return a.letter != b.letter ? a.letter < b.letter : a.rank < b.rank;
  });
  return out;
}

std::string ade_str(const std::vector<AdeComponent>& t) {
  if (t.empty()) return "0";
  std::map<std::pair<char, int>, int> mult;
  for (const auto& c : t) mult[{c.letter, c.rank}]++;
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, cnt] : mult) {
    if (!first) os << "+";
    first = false;
    if (cnt > 1) os << cnt << "*";
    os << key.first << key.second;
  }
  return os.str();
}

int ade_rank(const std::vector<AdeComponent>& t) {
  int r = 0;
  for (const auto& c : t) r += c.rank;
  return r;
}

IsometryVerdict definite_isometric(const IntegerLattice& l1, const IntegerLattice& l2,
                                   int rank_bound) {
  IsometryVerdict v;
  if (l1.rank() != l2.rank()) {
    v.status = VerdictStatus::No;
    v.reason = "rank mismatch";
    return v;
  }
  if (l1.rank() > rank_bound) {
    v.status = VerdictStatus::Inconclusive;
    v.reason = "rank bound exceeded";
    return v;
  }
  LatticeInvariants i1 = invariants(l1), i2 = invariants(l2);
  if (!i1.definite() || !i2.definite() || i1.degenerate || i2.degenerate)
    throw Error("definite_isometric requires definite lattices");
  if (i1.det != i2.det || i1.s_plus != i2.s_plus || i1.s_minus != i2.s_minus) {
    v.status = VerdictStatus::No;
    v.reason = "invariants differ";
    return v;
  }
  int n = l1.rank();
  if (n == 0) {
    v.status = VerdictStatus::Yes;
    v.witness = QMat(0, 0);
    return v;
  }
  // Candidate images: vectors of l2 with norms matching the l1 basis norms.
  Int max_norm = 0;
  for (int i = 0; i < n; ++i) {
    Int d = abs(l1.gram(i, i).get_num());
    if (d > max_norm) max_norm = d;
  }
  auto cand = short_vectors(l2, max_norm);
  std::vector<std::vector<Int>> pool;
  for (const auto& c : cand) {
    pool.push_back(c);
    std::vector<Int> neg(c.size());
    for (size_t k = 0; k < c.size(); ++k) neg[k] = -c[k];
    pool.push_back(neg);
  }
  std::vector<std::vector<Int>> chosen;
  std::vector<int> chosen_idx;
  QMat witness(n, n);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      QMat w = witness;
      return abs(w.det()) == Rat(1);
    }
    for (size_t p = 0; p < pool.size(); ++p) {
      const auto& c = pool[p];
      if (norm_of(c, l2.gram) != l1.gram(i, i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (pair_of(chosen[j], c, l2.gram) != l1.gram(i, j)) ok = false;
      if (!ok) continue;
      chosen.push_back(c);
      for (int k = 0; k < n; ++k) witness(i, k) = Rat(c[k]);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (rec(0)) {
    v.status = VerdictStatus::Yes;
    v.witness = witness;
  } else {
    v.status = VerdictStatus::No;
    v.reason = "exhaustive basis-image search failed";
  }
  return v;
}

bool uniqueness_criterion(const IntegerLattice& l) {
  LatticeInvariants inv = invariants(l);
  if (inv.degenerate || !inv.indefinite()) return false;
  Snf s = smith_normal_form(l.gram);
  int length = int(s.nontrivial_factors().size());
  return l.rank() >= length + 2;
}

IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  int n = a.rank(), m = b.rank();
  QMat g(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  std::string name;
  if (!a.name.empty() && !b.name.empty()) name = a.name + "+" + b.name;
  return IntegerLattice(g, name);
}

bool LatticeMap::is_similarity() const {
  return matrix * target.gram * matrix.transpose() == source.gram * form_scale;
}

}  // namespace k3lat
