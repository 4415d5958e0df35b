#include "bpccsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace bpc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Held-Karp table over the non-depot vertices: best[mask][j] is the cheapest
/// depot-to-j path visiting exactly the vertices of mask (bit k-1 = vertex k).
class HeldKarp {
 public:
  explicit HeldKarp(const Instance& inst) : inst_(inst), n_(inst.vertexCount()) {
    const int m = n_ - 1;
    const std::size_t masks = std::size_t{1} << m;
    best_.assign(masks * std::max(m, 1), kInf);
    parent_.assign(masks * std::max(m, 1), -1);
    for (int j = 1; j < n_; ++j) best_[index(bit(j), j)] = cost(0, j);
    for (std::size_t mask = 1; mask < masks; ++mask) {
      for (int j = 1; j < n_; ++j) {
        if (!(mask & bit(j))) continue;
        const double here = best_[index(mask, j)];
        if (here == kInf) continue;
        for (int k = 1; k < n_; ++k) {
          if (mask & bit(k)) continue;
          const double c = cost(j, k);
          if (c == kInf) continue;
          const std::size_t next = mask | bit(k);
          if (here + c < best_[index(next, k)]) {
            best_[index(next, k)] = here + c;
            parent_[index(next, k)] = j;
          }
        }
      }
    }
  }

  /// Cheapest cycle through the depot and the vertices of mask.
  std::optional<std::pair<double, std::vector<int>>> tour(std::size_t mask) const {
    if (__builtin_popcountll(mask) < 2) return std::nullopt;
    double bestCost = kInf;
    int last = -1;
    for (int j = 1; j < n_; ++j) {
      if (!(mask & bit(j))) continue;
      const double c = cost(j, 0);
      if (c == kInf || best_[index(mask, j)] == kInf) continue;
      if (best_[index(mask, j)] + c < bestCost) {
        bestCost = best_[index(mask, j)] + c;
        last = j;
      }
    }
    if (last < 0) return std::nullopt;
    std::vector<int> edges{inst_.edgeIndex(last, 0)};
    std::size_t cur = mask;
    int j = last;
    while (true) {
      const int p = parent_[index(cur, j)];
      if (p < 0) {
        edges.push_back(inst_.edgeIndex(0, j));
        break;
      }
      edges.push_back(inst_.edgeIndex(p, j));
      cur &= ~bit(j);
      j = p;
    }
    std::sort(edges.begin(), edges.end());
    return std::make_pair(bestCost, edges);
  }

  static std::size_t bit(int v) { return std::size_t{1} << (v - 1); }

 private:
  std::size_t index(std::size_t mask, int j) const { return mask * (n_ - 1) + (j - 1); }
  double cost(int a, int b) const {
    const int e = inst_.edgeIndex(a, b);
    return e < 0 ? kInf : inst_.edge(e).cost;
  }

  const Instance& inst_;
  int n_;
  std::vector<double> best_;
  std::vector<int> parent_;
};

void checkSize(const Instance& inst) {
  if (inst.vertexCount() > kOracleMaxVertices) {
    throw std::invalid_argument("oracle refuses instances with more than " + std::to_string(kOracleMaxVertices) +
                                " vertices");
  }
}

}  // namespace

std::optional<std::vector<int>> inducedMst(const Instance& inst, const std::vector<char>& inS) {
  const int n = inst.vertexCount();
  std::vector<char> inTree(n, 0);
  int members = 0, start = -1;
  for (int v = 0; v < n; ++v) {
    if (inS[v]) {
      ++members;
      if (start < 0) start = v;
    }
  }
  std::vector<int> edges;
  if (members == 0) return edges;
  inTree[start] = 1;
  auto less = [&](int e, int f) {
    const auto& a = inst.edge(e);
    const auto& b = inst.edge(f);
    return std::tie(a.cost, a.a, a.b) < std::tie(b.cost, b.a, b.b);
  };
  for (int step = 1; step < members; ++step) {
    int pick = -1;
    for (int e = 0; e < inst.edgeCount(); ++e) {
      const auto& ed = inst.edge(e);
      if (!inS[ed.a] || !inS[ed.b] || inTree[ed.a] == inTree[ed.b]) continue;
      if (pick < 0 || less(e, pick)) pick = e;
    }
    if (pick < 0) return std::nullopt;
    inTree[inst.edge(pick).a] = inTree[inst.edge(pick).b] = 1;
    edges.push_back(pick);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::optional<std::vector<int>> inducedMinTour(const Instance& inst, const std::vector<char>& inS) {
  checkSize(inst);
  if (!inS[kDepot]) return std::nullopt;
  std::size_t mask = 0;
  for (int v = 1; v < inst.vertexCount(); ++v) {
    if (inS[v]) mask |= HeldKarp::bit(v);
  }
  const HeldKarp hk(inst);
  auto t = hk.tour(mask);
  if (!t) return std::nullopt;
  return t->second;
}

double maxCoverage(const Instance& inst, const std::vector<char>& visited, std::map<VertexId, VertexId>* assignment) {
  const int n = inst.vertexCount();
  std::vector<VertexId> rows;
  for (int v = 1; v < n; ++v) {
    if (visited[v]) continue;
    for (VertexId w : inst.neighbourhood(v)) {
      if (visited[w] && inst.capacity(w) > 0) {
        rows.push_back(v);
        break;
      }
    }
  }
  if (assignment) assignment->clear();
  if (rows.empty()) return 0.0;
  const int r = static_cast<int>(rows.size());
  std::vector<VertexId> slots;
  for (int w = 0; w < n; ++w) {
    if (!visited[w]) continue;
    for (int k = 0; k < std::min(inst.capacity(w), r); ++k) slots.push_back(w);
  }
  const int c = static_cast<int>(slots.size()) + r;  // trailing r columns: leave uncovered
  constexpr double kForbidden = 1e12;
  // e-maxx Hungarian, 1-indexed, rows <= columns, minimizing cost
  auto cost = [&](int i, int j) {
    if (j > static_cast<int>(slots.size())) return 0.0;
    const auto q = inst.coverPrize(rows[i - 1], slots[j - 1]);
    return q ? -*q : kForbidden;
  };
  std::vector<double> u(r + 1, 0.0), v(c + 1, 0.0);
  std::vector<int> p(c + 1, 0), way(c + 1, 0);
  for (int i = 1; i <= r; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(c + 1, kInf);
    std::vector<char> used(c + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= c; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= c; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= static_cast<int>(slots.size()); ++j) {
    if (p[j] == 0) continue;
    const auto q = inst.coverPrize(rows[p[j] - 1], slots[j - 1]);
    if (!q || *q <= 0.0) continue;
    total += *q;
    if (assignment) (*assignment)[rows[p[j] - 1]] = slots[j - 1];
  }
  return total;
}

OracleResult solveExhaustive(const Instance& inst, const OracleOptions& options) {
  checkSize(inst);
  const int n = inst.vertexCount();
  const bool tour = inst.kind() == SubgraphKind::Tour;
  std::optional<HeldKarp> hk;
  if (tour) hk.emplace(inst);

  OracleResult result;
  const std::size_t masks = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    ++result.enumeratedSubsets;
    std::vector<char> inS(n, 0);
    inS[kDepot] = 1;
    for (int v = 1; v < n; ++v) inS[v] = (mask & HeldKarp::bit(v)) != 0;

    std::vector<int> edges;
    if (tour) {
      auto t = hk->tour(mask);
      if (!t || t->first > inst.budget() + kOracleBudgetTol) continue;
      edges = std::move(t->second);
    } else {
      auto t = inducedMst(inst, inS);
      if (!t || edgeCost(inst, *t) > inst.budget() + kOracleBudgetTol) continue;
      edges = std::move(*t);
    }

    std::vector<VertexId> visited;
    for (int v = 0; v < n; ++v) {
      if (inS[v]) visited.push_back(v);
    }
    std::map<VertexId, VertexId> coverage;
    if (options.coverage) maxCoverage(inst, inS, &coverage);
    const double value = solutionValue(inst, visited, coverage);
    if (!result.feasible || value > result.objective) {
      result.feasible = true;
      result.objective = value;
      result.witness.status = SolutionStatus::Optimal;
      result.witness.visited = std::move(visited);
      result.witness.edges = std::move(edges);
      result.witness.coverage = std::move(coverage);
      result.witness.objective = value;
      result.witness.bound = value;
    }
  }
  if (!result.feasible) result.witness.status = SolutionStatus::Infeasible;
  return result;
}

}  // namespace bpc
