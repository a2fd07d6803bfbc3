#include "k3lat/specialize.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace k3lat {

namespace {

struct FiberInference {
  std::map<int, int> fibers;
  int mw_rank = 0;
  std::vector<Int> torsion;
  Rat mwl;
  bool certified = false;
  bool structure_unique = true;
};

Int trivial_det_of(const std::map<int, int>& fibers) {
  Int d = 1;
  for (const auto& [n, cnt] : fibers)
    for (int i = 0; i < cnt; ++i) d *= n;
  return d;
}

int root_rank_of(const std::map<int, int>& fibers) {
  int r = 0;
  for (const auto& [n, cnt] : fibers) r += (n - 1) * cnt;
  return r;
}

// Partitions of prime exponents into cyclic factors, assembled into all
// abelian groups of the given order.
void partitions(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxp) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, maxp); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
}

}  // namespace

std::vector<std::vector<Int>> torsion_structures(const Int& order, const std::map<int, int>& fibers) {
  // factor the order
  std::vector<std::pair<Int, int>> primes;
  Int m = order;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      primes.push_back({p, e});
    }
  }
  if (m > 1) primes.push_back({m, 1});

  // all abelian groups of the order, as lists of prime-power partitions
  std::vector<std::vector<std::vector<int>>> parts(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) partitions(primes[i].second, parts[i]);

  std::vector<std::vector<Int>> out;
  std::vector<int> pick(primes.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == primes.size()) {
      // embedding test per prime: sorted p-exponents of the group must be
      // dominated by the sorted p-exponents of the component groups Z/n
      for (size_t k = 0; k < primes.size(); ++k) {
        const Int& p = primes[k].first;
        std::vector<int> avail;
        for (const auto& [n, cnt] : fibers) {
          int v = 0;
          Int nn = n;
          while (nn % p == 0) {
            nn /= p;
            ++v;
          }
          if (v > 0)
            for (int c = 0; c < cnt; ++c) avail.push_back(v);
        }
        std::sort(avail.rbegin(), avail.rend());
        const auto& lam = parts[k][pick[k]];  // already non-increasing
        if (lam.size() > avail.size()) return;
        for (size_t j = 0; j < lam.size(); ++j)
          if (lam[j] > avail[j]) return;
      }
      // assemble cyclic factors via CRT: combine the j-th largest factors
      size_t rank = 0;
      for (size_t k = 0; k < primes.size(); ++k) rank = std::max(rank, parts[k][pick[k]].size());
      std::vector<Int> factors(rank, Int(1));
      for (size_t k = 0; k < primes.size(); ++k) {
        const auto& lam = parts[k][pick[k]];
        for (size_t j = 0; j < lam.size(); ++j) {
          Int pe = 1;
          for (int t = 0; t < lam[j]; ++t) pe *= primes[k].first;
          factors[j] *= pe;
        }
      }
      std::sort(factors.begin(), factors.end());
      out.push_back(factors);
      return;
    }
    for (pick[i] = 0; pick[i] < int(parts[i].size()); ++pick[i]) rec(i + 1);
    pick[i] = 0;
  };
  if (order == 1)
    out.push_back({});
  else
    rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string fiber_map_string(const std::map<int, int>& fibers) {
  std::ostringstream os;
  bool first = true;
  for (auto it = fibers.rbegin(); it != fibers.rend(); ++it) {
    if (it->second == 0) continue;
    if (!first) os << "+";
    first = false;
    if (it->second != 1) os << it->second;
    os << "I" << it->first;
  }
  return first ? "none" : os.str();
}

namespace {

struct NsState {
  QMat ns_basis;
  IntegerLattice ns;
  Sublattice froots;   // complement of <F,S> in NS
  std::vector<AdeComponent> roots;
};

NsState analyze_ns(const SpecializeContext& ctx, const QMat& ns_basis) {
  NsState st;
  st.ns_basis = ns_basis;
  st.ns = Sublattice(ctx.ambient, ns_basis).as_lattice("NS");
  QMat fs_in_ns = solve_in_basis(ctx.fs, ns_basis);
  st.froots = orthogonal_complement(Sublattice(st.ns, fs_in_ns));
  st.roots = root_type(st.froots.as_lattice("roots"));
  return st;
}

// Route (a): fibers from the root type, certified against the discriminant
// identity with the torsion computed as sat(Tr)/Tr.
FiberInference infer_from_roots(const SpecializeContext& ctx, const NsState& st,
                                const LatticeInvariants& ns_inv) {
  FiberInference fi;
  for (const auto& c : st.roots)
    if (c.letter != 'A') return fi;  // not semistable: cannot certify
  int e = 0;
  for (const auto& c : st.roots) {
    fi.fibers[c.rank + 1] += 1;
    e += c.rank + 1;
  }
  if (e > ctx.euler) return fi;
  if (ctx.euler - e > 0) fi.fibers[1] += ctx.euler - e;
  fi.mw_rank = st.ns_basis.rows() - 2 - ade_rank(st.roots);
  if (fi.mw_rank < 0) return fi;

  IntegerLattice froots_lat = st.froots.as_lattice();
  QMat root_rows_ns = root_sublattice_basis(froots_lat) * st.froots.coords;
  QMat tr_rows = QMat::vstack(ctx.fs, root_rows_ns * st.ns_basis);
  auto tr_sat = saturation(Sublattice(ctx.ambient, tr_rows));
  fi.torsion = quotient_group(tr_sat.sub.coords, tr_rows);

  Int tors = 1;
  for (const auto& t : fi.torsion) tors *= t;
  Rat mwl = Rat(abs(ns_inv.det) * tors * tors) / Rat(trivial_det_of(fi.fibers));
  fi.mwl = mwl;
  if (mwl.get_den() != 1) return fi;
  if (fi.mw_rank == 0 && mwl != 1) return fi;
  fi.certified = true;
  return fi;
}

// Route (b): degeneration bookkeeping.  Each step class of square -2n
// merges two I_n fibers into one I_{2n}; torsion follows from the
// discriminant identity plus the component-group embedding filter.
FiberInference infer_from_chain(const std::map<int, int>& prev,
                                const QMat& step_gram, const LatticeInvariants& ns_inv, int rho) {
  FiberInference fi;
  fi.fibers = prev;
  std::vector<long> norms;
  for (int i = 0; i < step_gram.rows(); ++i) {
    Int n2 = -step_gram(i, i).get_num();
    if (n2 <= 0 || n2 % 2 != 0) throw Error("specialize: chain step class of invalid square");
    norms.push_back(n2.get_si() / 2);
  }
  std::sort(norms.rbegin(), norms.rend());
  for (long n : norms) {
    if (fi.fibers[int(n)] < 2)
      throw Error("specialize: chain rewriting needs two I_" + std::to_string(n) + " fibers");
    fi.fibers[int(n)] -= 2;
    fi.fibers[int(2 * n)] += 1;
  }
  for (auto it = fi.fibers.begin(); it != fi.fibers.end();)
    it = (it->second == 0) ? fi.fibers.erase(it) : std::next(it);

  fi.mw_rank = rho - 2 - root_rank_of(fi.fibers);
  if (fi.mw_rank != 0)
    throw Error("specialize: chain rewriting expects Mordell-Weil rank 0");
  Rat t2 = Rat(trivial_det_of(fi.fibers)) / Rat(abs(ns_inv.det));
  if (t2.get_den() != 1) throw Error("specialize: non-integral torsion square");
  Int tord = floor_sqrt(t2);
  if (Rat(tord * tord) != t2) throw Error("specialize: torsion order is not a perfect square");
  auto structures = torsion_structures(tord, fi.fibers);
  if (structures.empty()) throw Error("specialize: no torsion group embeds in the fibers");
  fi.torsion = structures.front();
  fi.structure_unique = structures.size() == 1;
  fi.mwl = Rat(1);
  fi.certified = true;
  return fi;
}

}  // namespace

std::vector<StepReport> specialize(const SpecializeContext& ctx,
                                   const std::vector<SpecializeStep>& steps) {
  std::vector<StepReport> out;

  // baseline configuration seeds the chain bookkeeping
  auto base_sat = saturation(Sublattice(ctx.ambient, ctx.ns0));
  NsState base = analyze_ns(ctx, base_sat.sub.coords);
  FiberInference prev_fi = infer_from_roots(ctx, base, invariants(base.ns));
  if (!prev_fi.certified) throw Error("specialize: baseline configuration is not certified");

  QMat ns_rows = base.ns_basis;
  for (const auto& step : steps) {
    StepReport rep;
    rep.name = step.name;
    QMat new_lambda = step.classes * ctx.t_basis;
    QMat step_gram = new_lambda * ctx.ambient.gram * new_lambda.transpose();
    if (step.classes.rows() > 0) {
      LatticeInvariants si = invariants(IntegerLattice(step_gram, "step"));
      if (si.degenerate || si.s_plus > 0)
        throw Error("specialize: step classes must span a negative definite lattice");
    }
    QMat stacked = QMat::vstack(ns_rows, new_lambda);
    auto sat = saturation(Sublattice(ctx.ambient, stacked));
    rep.ns_basis = sat.sub.coords;
    rep.rho = rep.ns_basis.rows();
    if (rep.rho > 20) throw Error("specialize: Picard rank exceeds 20");
    rep.step_glue = quotient_group(rep.ns_basis, stacked);
    rep.step_index = sat.index;

    NsState st = analyze_ns(ctx, rep.ns_basis);
    rep.ns_inv = invariants(st.ns);
    rep.roots = st.roots;

    Sublattice tsub = orthogonal_complement(sat.sub);
    rep.t_basis = tsub.coords;
    rep.t_inv = invariants(tsub.as_lattice("T"));

    FiberInference fi = infer_from_roots(ctx, st, rep.ns_inv);
    if (fi.certified) {
      rep.fiber_inference = "roots";
    } else {
      fi = infer_from_chain(prev_fi.fibers, step_gram, rep.ns_inv, rep.rho);
      rep.fiber_inference = "chain";
    }
    rep.fibers = fi.fibers;
    rep.mw_rank = fi.mw_rank;
    rep.mw_torsion = fi.torsion;
    rep.torsion_structure_unique = fi.structure_unique;
    rep.mwl_disc = fi.mwl;
    rep.fiber_string = fiber_map_string(rep.fibers);

    prev_fi = fi;
    ns_rows = rep.ns_basis;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace k3lat
