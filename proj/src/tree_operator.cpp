#include "pscub/tree_operator.hpp"

#include <cmath>
#include <string>

namespace pscub {

namespace {

// Calls fn(leaves, 1/Π mult!) for every ascending multiset of size m over 0..L-1.
template <class Fn>
void for_each_multiset(int L, int m, Fn&& fn) {
  std::vector<int> cur;
  cur.reserve(m);
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == m) {
      double inv = 1.0;
      int run = 1;
      for (int i = 1; i < m; ++i) {
        run = cur[i] == cur[i - 1] ? run + 1 : 1;
        inv /= run;
      }
      fn(cur, inv);
      return;
    }
    for (int x = from; x < L; ++x) {
      cur.push_back(x);
      self(self, x);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// All parent arrays on vertices 0..m rooted at 0 with depth ≤ k, with depths.
void for_each_tree(int m, int k,
                   const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
  std::vector<int> parent(m + 1, 0), depth(m + 1, 0);
  parent[0] = -1;
  auto rec = [&](auto&& self, int v) -> void {
    if (v > m) {
      // depths by walking up; rejects cycles
      for (int u = 1; u <= m; ++u) {
        int d = 0, w = u;
        while (w != 0 && d <= m) w = parent[w], ++d;
        if (w != 0 || d > k) return;
        depth[u] = d;
      }
      fn(parent, depth);
      return;
    }
    for (int p = 0; p <= m; ++p) {
      if (p == v) continue;
      parent[v] = p;
      self(self, v + 1);
    }
  };
  rec(rec, 1);
}

}  // namespace

FugacityVector depth_one_tree_operator(const StarWeight& c, const FugacityVector& rho,
                                       const FugacityVector& mu, int max_leaves) {
  const int L = static_cast<int>(rho.size());
  if (static_cast<int>(mu.size()) != L)
    throw Error(Errc::PreconditionViolated, "rho and mu differ in length");
  FugacityVector out(L, 0.0);
  for (int l = 0; l < L; ++l) {
    double sum = 0.0;
    for (int m = 0; m <= max_leaves; ++m)
      for_each_multiset(L, m, [&](const std::vector<int>& leaves, double inv) {
        double w = c(l, leaves);
        if (w == 0.0) return;
        for (int x : leaves) w *= mu[x];
        sum += w * inv;
      });
    for_each_multiset(L, max_leaves + 1, [&](const std::vector<int>& leaves, double) {
      if (c(l, leaves) > 0.0)
        throw Error(Errc::TruncationExceeded,
                    "star with " + std::to_string(max_leaves + 1) + " leaves has weight");
    });
    out[l] = rho[l] * sum;
  }
  return out;
}

StarWeight dobrushin_star_weight(const PolymerSystem& sys) {
  return [&sys](int root, const std::vector<int>& leaves) {
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (i > 0 && leaves[i] == leaves[i - 1]) return 0.0;
      if (!sys.incompatible(root, leaves[i])) return 0.0;
    }
    return 1.0;
  };
}

StarWeight fp_star_weight(const PolymerSystem& sys) {
  return [&sys](int root, const std::vector<int>& leaves) {
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (!sys.incompatible(root, leaves[i])) return 0.0;
      for (std::size_t j = 0; j < i; ++j)
        if (sys.incompatible(leaves[i], leaves[j])) return 0.0;
    }
    return 1.0;
  };
}

FugacityVector depth_k_tree_operator(int k, const TreeWeight& c, const FugacityVector& rho,
                                     const FugacityVector& mu, int max_vertices) {
  if (k < 1) throw Error(Errc::PreconditionViolated, "depth must be at least 1");
  const int L = static_cast<int>(rho.size());
  if (static_cast<int>(mu.size()) != L)
    throw Error(Errc::PreconditionViolated, "rho and mu differ in length");
  FugacityVector out(L, 0.0);
  std::vector<int> labels;

  auto visit = [&](int l, int m, const std::vector<int>& parent, const std::vector<int>& depth,
                   bool probe, double& sum) {
    labels.assign(m + 1, 0);
    labels[0] = l;
    std::vector<int> digit(m, 0);
    for (;;) {
      for (int v = 1; v <= m; ++v) labels[v] = digit[v - 1];
      double w = c(parent, labels);
      if (w != 0.0) {
        if (probe)
          throw Error(Errc::TruncationExceeded,
                      "tree with " + std::to_string(m) + " non-root vertices has weight");
        for (int v = 1; v <= m; ++v) w *= depth[v] < k ? rho[labels[v]] : mu[labels[v]];
        sum += w;
      }
      int i = 0;
      while (i < m && ++digit[i] == L) digit[i++] = 0;
      if (i == m) break;
    }
  };

  for (int l = 0; l < L; ++l) {
    double total = 0.0;
    for (int m = 0; m <= max_vertices + 1; ++m) {
      const bool probe = m == max_vertices + 1;
      double sum = 0.0;
      for_each_tree(m, k, [&](const std::vector<int>& parent, const std::vector<int>& depth) {
        visit(l, m, parent, depth, probe, sum);
      });
      total += sum / factorial(m);
    }
    out[l] = rho[l] * total;
  }
  return out;
}

RefinedBoundReport refined_series_bound_check(const VectorOperator& T, const FugacityVector& rho,
                                              const FugacityVector& mu) {
  RefinedBoundReport rep;
  FugacityVector tm = T(mu);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (tm[i] > mu[i] * (1.0 + 1e-12))
      throw Error(Errc::PreconditionViolated, "mu is not a decreasing point");
    if (tm[i] < rho[i] * (1.0 + mu[i]) * (1.0 - 1e-12))
      throw Error(Errc::PreconditionViolated, "operator is not above rho(1+mu)");
  }
  FixpointReport fix = iterate_fixpoint(T, FugacityVector(mu.size(), 0.0), true);
  rep.converged = fix.converged;
  if (!fix.converged) return rep;
  rep.ok = true;
  rep.Q.assign(mu.size(), 0.0);
  rep.bound.assign(mu.size(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (rho[i] == 0.0) continue;
    rep.Q[i] = fix.limit[i] / rho[i];
    rep.bound[i] = (tm[i] / rho[i] - mu[i]) / (1.0 - rho[i]);
    if (rep.Q[i] > rep.bound[i] * (1.0 + 1e-9)) rep.ok = false;
  }
  return rep;
}

}  // namespace pscub
