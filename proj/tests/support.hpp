#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "bpccsp/formulation.hpp"
#include "bpccsp/instance.hpp"
#include "bpccsp/oracle.hpp"

namespace bpc::testing {

/// Randomized small instances spanning the generator grid: budget fraction,
/// radius, capacity, coverage ratio, kind, and dependent prizes.
struct SuiteCase {
  RandomSpec spec;
  std::uint64_t seed = 0;
};

inline std::vector<SuiteCase> smallSuite(int count, int minN, int maxN, std::uint64_t salt = 0) {
  static constexpr double kBudget[] = {0.25, 0.5, 0.75};
  static constexpr double kRadius[] = {0.5, 1.0, 2.0};
  static constexpr int kCapacity[] = {0, 1, 2, 3};
  static constexpr double kRatio[] = {0.5, 0.75};
  std::vector<SuiteCase> out;
  for (int i = 0; i < count; ++i) {
    SuiteCase c;
    c.spec.vertexCount = minN + i % (maxN - minN + 1);
    c.spec.kind = (i / 2) % 2 == 0 ? SubgraphKind::Tour : SubgraphKind::Tree;
    c.spec.budgetFrac = kBudget[i % 3];
    c.spec.radiusFrac = kRadius[(i / 3) % 3];
    c.spec.capacity = kCapacity[(i / 5) % 4];
    c.spec.coverageRatio = kRatio[(i / 7) % 2];
    c.spec.dependentPrizes = i % 4 == 3;
    c.seed = 1000003ULL * (salt + 1) + static_cast<std::uint64_t>(i);
    out.push_back(c);
  }
  return out;
}

/// Complete Euclidean instance over `points` (index 0 the depot). N_v holds
/// the vertices within `radius` of v, with q_vw = ratio * p_v.
inline Instance euclideanInstance(SubgraphKind kind, const std::vector<Point>& points, double budget,
                                  const std::vector<double>& prize, int capacity, double radius, double ratio = 0.5) {
  Instance::Data d;
  d.name = "fixture";
  d.kind = kind;
  d.vertexCount = static_cast<int>(points.size());
  d.budget = budget;
  d.prize = prize;
  d.capacity.assign(points.size(), capacity);
  d.neighbourhood.assign(points.size(), {});
  for (int a = 0; a < d.vertexCount; ++a) {
    for (int b = a + 1; b < d.vertexCount; ++b) d.edges.push_back({a, b, euclidean(points[a], points[b], false)});
  }
  for (int v = 1; v < d.vertexCount; ++v) {
    for (int w = 0; w < d.vertexCount; ++w) {
      if (w != v && euclidean(points[v], points[w], false) <= radius) {
        d.neighbourhood[v].push_back(w);
        d.coverPrize[{v, w}] = ratio * prize[v];
      }
    }
  }
  return Instance(std::move(d));
}

/// Structures (edge sets) of the subset `inS` within budget: every spanning
/// tree (Tree) or every Hamiltonian cycle through the depot (Tour).
inline std::vector<std::vector<int>> enumerateStructures(const Instance& inst, const std::vector<char>& inS) {
  const int n = inst.vertexCount();
  std::vector<int> members;
  for (int v = 0; v < n; ++v) {
    if (inS[v]) members.push_back(v);
  }
  std::vector<std::vector<int>> out;
  const double limit = inst.budget() + kOracleBudgetTol;
  if (inst.kind() == SubgraphKind::Tree) {
    std::vector<int> inner;
    for (int e = 0; e < inst.edgeCount(); ++e) {
      if (inS[inst.edge(e).a] && inS[inst.edge(e).b]) inner.push_back(e);
    }
    const int need = static_cast<int>(members.size()) - 1;
    if (need == 0) return {{}};
    if (static_cast<int>(inner.size()) < need) return out;
    std::vector<char> pick(inner.size(), 0);
    std::fill(pick.begin(), pick.begin() + need, 1);
    do {
      std::vector<int> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
      std::vector<int> edges;
      double cost = 0.0;
      bool acyclic = true;
      for (std::size_t k = 0; k < inner.size() && acyclic; ++k) {
        if (!pick[k]) continue;
        const auto& ed = inst.edge(inner[k]);
        const int ra = find(ed.a), rb = find(ed.b);
        if (ra == rb) acyclic = false;
        parent[ra] = rb;
        edges.push_back(inner[k]);
        cost += ed.cost;
      }
      if (acyclic && cost <= limit) out.push_back(edges);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
  }
  if (members.size() < 3) return out;
  std::vector<int> rest(members.begin() + 1, members.end());
  do {
    if (rest.front() > rest.back()) continue;  // each cycle once
    std::vector<int> edges;
    double cost = 0.0;
    int prev = kDepot;
    bool ok = true;
    for (std::size_t k = 0; k <= rest.size() && ok; ++k) {
      const int next = k == rest.size() ? kDepot : rest[k];
      const int e = inst.edgeIndex(prev, next);
      if (e < 0) ok = false;
      else {
        edges.push_back(e);
        cost += inst.edge(e).cost;
      }
      prev = next;
    }
    if (ok && cost <= limit) {
      std::sort(edges.begin(), edges.end());
      out.push_back(edges);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Every capacity-respecting coverage of the unvisited vertices by visited
/// neighbours (including leaving a vertex uncovered).
inline void enumerateCoverages(const Instance& inst, const std::vector<char>& visited,
                               const std::function<void(const std::map<VertexId, VertexId>&)>& visit) {
  const int n = inst.vertexCount();
  std::vector<int> load(n, 0);
  std::map<VertexId, VertexId> cov;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      visit(cov);
      return;
    }
    rec(v + 1);
    if (v == kDepot || visited[v]) return;
    for (VertexId w : inst.neighbourhood(v)) {
      if (!visited[w] || load[w] >= inst.capacity(w)) continue;
      ++load[w];
      cov[v] = w;
      rec(v + 1);
      cov.erase(v);
      --load[w];
    }
  };
  rec(0);
}

}  // namespace bpc::testing
