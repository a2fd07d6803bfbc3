#include "k3lat/fqf.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_set>

namespace k3lat {

Rat mod1(const Rat& x) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rat(f);
}

Rat mod2(const Rat& x) {
  Rat h = mod1(x / 2);
  return h * 2;
}

Int FiniteQuadraticForm::order() const {
  Int o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

Rat FiniteQuadraticForm::q_of(const std::vector<Int>& elt) const {
  Rat s(0);
  for (int i = 0; i < ngens(); ++i) {
    if (elt[i] == 0) continue;
    s += Rat(elt[i] * elt[i]) * q[i];
    for (int j = i + 1; j < ngens(); ++j) s += Rat(2 * elt[i] * elt[j]) * b(i, j);
  }
  return mod2(s);
}

Rat FiniteQuadraticForm::b_of(const std::vector<Int>& x, const std::vector<Int>& y) const {
  Rat s(0);
  for (int i = 0; i < ngens(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < ngens(); ++j) {
      if (y[j] == 0) continue;
      s += Rat(x[i] * y[j]) * b(i, j);
    }
  }
  return mod1(s);
}

void FiniteQuadraticForm::validate() const {
  if (int(q.size()) != ngens() || b.rows() != ngens() || b.cols() != ngens())
    throw Error("finite quadratic form: shape mismatch");
  for (int i = 0; i < ngens(); ++i) {
    if (invariant_factors[i] < 2) throw Error("finite quadratic form: generator order < 2");
    if (mod1(q[i]) != b(i, i)) throw Error("finite quadratic form: q(g) != b(g,g) mod 1");
    // q must be well defined on Z/d: q((d+1)g) = q(g) mod 2
    Int d = invariant_factors[i];
    if (mod2(Rat((d + 1) * (d + 1)) * q[i]) != mod2(q[i]))
      throw Error("finite quadratic form: q not defined mod order");
    for (int j = 0; j < ngens(); ++j) {
      Int dj = invariant_factors[j];
      if (mod1(Rat(d) * b(i, j)) != 0 || mod1(Rat(dj) * b(i, j)) != 0)
        throw Error("finite quadratic form: b not defined mod orders");
    }
  }
}

std::vector<Int> FiniteQuadraticForm::group_invariants() const {
  if (ngens() == 0) return {};
  QMat d(ngens(), ngens());
  for (int i = 0; i < ngens(); ++i) d(i, i) = Rat(invariant_factors[i]);
  return smith_normal_form(d).nontrivial_factors();
}

FiniteQuadraticForm fqf_cyclic(const Int& n, const Rat& qval) {
  FiniteQuadraticForm f;
  f.invariant_factors = {n};
  f.q = {mod2(qval)};
  f.b = QMat(1, 1);
  f.b(0, 0) = mod1(qval);
  return f;
}

FiniteQuadraticForm fqf_u2() {
  FiniteQuadraticForm f;
  f.invariant_factors = {2, 2};
  f.q = {Rat(0), Rat(0)};
  f.b = QMat(2, 2);
  f.b(0, 1) = f.b(1, 0) = Rat(1, 2);
  return f;
}

FiniteQuadraticForm fqf_direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  FiniteQuadraticForm f;
  f.invariant_factors = a.invariant_factors;
  f.invariant_factors.insert(f.invariant_factors.end(), b.invariant_factors.begin(),
                             b.invariant_factors.end());
  f.q = a.q;
  f.q.insert(f.q.end(), b.q.begin(), b.q.end());
  int n = a.ngens(), m = b.ngens();
  f.b = QMat(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.b(i, j) = a.b(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) f.b(n + i, n + j) = b.b(i, j);
  return f;
}

FiniteQuadraticForm fqf_power(const FiniteQuadraticForm& f, int k) {
  FiniteQuadraticForm out;
  for (int i = 0; i < k; ++i) out = (i == 0) ? f : fqf_direct_sum(out, f);
  return out;
}

FiniteQuadraticForm discriminant_form(const IntegerLattice& l) {
  if (l.is_degenerate()) throw DegenerateError("discriminant_form: degenerate lattice");
  if (!l.is_even()) throw Error("discriminant_form requires an even lattice");
  Snf s = smith_normal_form(l.gram);
  QMat vinv = s.v.inverse();
  QMat ginv = l.gram.inverse();
  FiniteQuadraticForm f;
  std::vector<int> keep;
  for (int i = 0; i < l.rank(); ++i)
    if (s.d(i, i) > 1) keep.push_back(i);
  f.generator_lifts = QMat(int(keep.size()), l.rank());
  for (int k = 0; k < int(keep.size()); ++k) {
    int i = keep[k];
    f.invariant_factors.push_back(s.d(i, i).get_num());
    QMat g = vinv.row(i) * ginv;  // lift of the k-th generator in L* (L-coords)
    f.generator_lifts.set_row(k, g);
  }
  int m = int(keep.size());
  f.b = QMat(m, m);
  for (int i = 0; i < m; ++i) {
    QMat gi = f.generator_lifts.row(i);
    f.q.push_back(mod2((gi * l.gram * gi.transpose())(0, 0)));
    for (int j = 0; j < m; ++j) {
      QMat gj = f.generator_lifts.row(j);
      f.b(i, j) = mod1((gi * l.gram * gj.transpose())(0, 0));
    }
  }
  f.validate();
  return f;
}

namespace {

struct GroupCtx {
  std::vector<long> d;  // generator orders (fit in long under the bound)
  long order = 1;
  long index_of(const std::vector<long>& e) const {
    long idx = 0;
    for (size_t i = 0; i < d.size(); ++i) idx = idx * d[i] + e[i];
    return idx;
  }
  std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b) const {
    std::vector<long> r(d.size());
    for (size_t i = 0; i < d.size(); ++i) r[i] = (a[i] + b[i]) % d[i];
    return r;
  }
  long elt_order(const std::vector<long>& e) const {
    long o = 1;
    for (size_t i = 0; i < d.size(); ++i) {
      long oi = d[i] / std::gcd(d[i], e[i] == 0 ? d[i] : e[i]);
      o = std::lcm(o, oi);
    }
    return o;
  }
  std::vector<std::vector<long>> all_elements() const {
    std::vector<std::vector<long>> out;
    std::vector<long> e(d.size(), 0);
    for (long n = 0; n < order; ++n) {
      out.push_back(e);
      for (int i = int(d.size()) - 1; i >= 0; --i) {
        if (++e[i] < d[i]) break;
        e[i] = 0;
      }
    }
    return out;
  }
};

std::vector<Int> to_int_vec(const std::vector<long>& e) {
  std::vector<Int> r(e.size());
  for (size_t i = 0; i < e.size(); ++i) r[i] = e[i];
  return r;
}

}  // namespace

FqfIsoVerdict fqf_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                             const Int& order_bound) {
  FqfIsoVerdict v;
  if (a.order() != b.order()) {
    v.status = VerdictStatus::No;
    v.reason = "group orders differ";
    return v;
  }
  if (a.order() > order_bound) {
    v.status = VerdictStatus::Inconclusive;
    v.reason = "inconclusive: order too large";
    return v;
  }
  if (a.group_invariants() != b.group_invariants()) {
    v.status = VerdictStatus::No;
    v.reason = "group structures differ";
    return v;
  }
  if (a.ngens() == 0) {
    v.status = VerdictStatus::Yes;
    v.witness = QMat(0, 0);
    return v;
  }
  GroupCtx gb;
  for (const auto& x : b.invariant_factors) {
    gb.d.push_back(long(x.get_si()));
    gb.order *= gb.d.back();
  }
  auto elements = gb.all_elements();
  // Quick refutation: the multiset of (element order, q value) is an invariant.
  {
    std::map<std::pair<long, Rat>, long> ma, mb;
    GroupCtx ga;
    for (const auto& x : a.invariant_factors) {
      ga.d.push_back(long(x.get_si()));
      ga.order *= ga.d.back();
    }
    for (const auto& e : ga.all_elements()) ma[{ga.elt_order(e), a.q_of(to_int_vec(e))}]++;
    for (const auto& e : elements) mb[{gb.elt_order(e), b.q_of(to_int_vec(e))}]++;
    if (ma != mb) {
      v.status = VerdictStatus::No;
      v.reason = "q-value multisets differ";
      return v;
    }
  }
  // Backtracking over generator images; the image of the k-th prefix must
  // span a subgroup of order prod d_i, which forces independence level by
  // level and bijectivity at the end.  Process generators of large order
  // first: they have few candidates and their pairings prune the rest.
  int n = a.ngens();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int x, int y) { return a.invariant_factors[x] > a.invariant_factors[y]; });
  std::vector<std::vector<long>> images;
  std::vector<std::vector<Int>> images_int;
  std::unordered_set<long> span{0};
  std::vector<long> prefix_order(n + 1, 1);
  for (int i = 0; i < n; ++i)
    prefix_order[i + 1] = prefix_order[i] * long(a.invariant_factors[perm[i]].get_si());

  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n) return true;
    long want_order = long(a.invariant_factors[perm[k]].get_si());
    for (const auto& h : elements) {
      if (gb.elt_order(h) != want_order) continue;
      if (span.count(gb.index_of(h))) continue;  // must enlarge the span
      auto hi = to_int_vec(h);
      if (b.q_of(hi) != a.q[perm[k]]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j)
        if (b.b_of(images_int[j], hi) != a.b(perm[j], perm[k])) ok = false;
      if (!ok) continue;
      // grow span by all multiples of h
      std::unordered_set<long> grown = span;
      std::vector<long> mult(h.size(), 0);
      for (long c = 1; c < want_order; ++c) {
        mult = gb.add(mult, h);
        for (long s : span) {
          std::vector<long> e(h.size());
          long idx = s;
          for (int t = int(h.size()) - 1; t >= 0; --t) {
            e[t] = idx % gb.d[t];
            idx /= gb.d[t];
          }
          grown.insert(gb.index_of(gb.add(e, mult)));
        }
      }
      if (long(grown.size()) != prefix_order[k + 1]) continue;
      std::swap(span, grown);
      images.push_back(h);
      images_int.push_back(hi);
      if (rec(k + 1)) return true;
      images.pop_back();
      images_int.pop_back();
      std::swap(span, grown);
    }
    return false;
  };
  if (rec(0)) {
    v.status = VerdictStatus::Yes;
    QMat w(n, b.ngens());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < b.ngens(); ++j) w(perm[i], j) = Rat(images[i][j]);
    v.witness = w;
  } else {
    v.status = VerdictStatus::No;
    v.reason = "no order- and value-preserving generator images exist";
  }
  return v;
}

Int fqf_order_bound_from_env() {
  if (const char* s = std::getenv("K3LAT_FQF_BOUND")) {
    try {
      return Int(s);
    } catch (...) {
      throw Error("K3LAT_FQF_BOUND is not an integer");
    }
  }
  return Int(100000);
}

}  // namespace k3lat
