#include "bpccsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace bpc {

namespace {

constexpr double kBudgetTol = 1e-9;
constexpr double kValueTol = 1e-6;

}  // namespace

std::string toString(SubgraphKind kind) { return kind == SubgraphKind::Tour ? "tour" : "tree"; }

SubgraphKind parseSubgraphKind(const std::string& text) {
  if (text == "tour") return SubgraphKind::Tour;
  if (text == "tree") return SubgraphKind::Tree;
  throw std::invalid_argument("unknown subgraph kind '" + text + "'");
}

std::string toString(SolutionStatus status) {
  switch (status) {
    case SolutionStatus::Optimal: return "optimal";
    case SolutionStatus::Feasible: return "feasible";
    case SolutionStatus::Infeasible: return "infeasible";
    case SolutionStatus::TimeLimit: return "time_limit";
  }
  return "?";
}

SolutionStatus parseSolutionStatus(const std::string& text) {
  if (text == "optimal") return SolutionStatus::Optimal;
  if (text == "feasible") return SolutionStatus::Feasible;
  if (text == "infeasible") return SolutionStatus::Infeasible;
  if (text == "time_limit") return SolutionStatus::TimeLimit;
  throw std::invalid_argument("unknown status '" + text + "'");
}

Instance::Instance(Data data) : data_(std::move(data)) {
  const int n = data_.vertexCount;
  if (n < 1) throw StructuralError("instance needs at least the depot");
  data_.prize.resize(n, 0.0);
  data_.capacity.resize(n, 0);
  data_.neighbourhood.resize(n);
  for (auto& e : data_.edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  aligned_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    auto& nb = data_.neighbourhood[v];
    std::sort(nb.begin(), nb.end());
    for (VertexId w : nb) {
      const auto it = data_.coverPrize.find({v, w});
      aligned_[v].push_back(it == data_.coverPrize.end() ? 0.0 : it->second);
    }
  }
  adjacency_.assign(static_cast<std::size_t>(n) * n, -1);
  incident_.assign(n, {});
  for (int e = 0; e < edgeCount(); ++e) {
    const auto& ed = data_.edges[e];
    if (ed.a < 0 || ed.b >= n) continue;  // reported by validate
    adjacency_[static_cast<std::size_t>(ed.a) * n + ed.b] = e;
    adjacency_[static_cast<std::size_t>(ed.b) * n + ed.a] = e;
    incident_[ed.a].push_back(e);
    if (ed.b != ed.a) incident_[ed.b].push_back(e);
  }
}

int Instance::edgeIndex(VertexId a, VertexId b) const {
  const int n = vertexCount();
  if (a < 0 || b < 0 || a >= n || b >= n) return -1;
  return adjacency_[static_cast<std::size_t>(a) * n + b];
}

bool Instance::inNeighbourhood(VertexId v, VertexId w) const {
  const auto& nb = data_.neighbourhood[v];
  return std::binary_search(nb.begin(), nb.end(), w);
}

std::optional<double> Instance::coverPrize(VertexId v, VertexId w) const {
  const auto& nb = data_.neighbourhood[v];
  auto it = std::lower_bound(nb.begin(), nb.end(), w);
  if (it == nb.end() || *it != w) return std::nullopt;
  return aligned_[v][static_cast<std::size_t>(it - nb.begin())];
}

bool Instance::hasIndependentPrizes() const {
  for (int v = 1; v < vertexCount(); ++v) {
    const auto& qs = aligned_[v];
    for (double q : qs) {
      if (q != qs.front()) return false;
    }
  }
  return true;
}

double Instance::independentPrize(VertexId v) const {
  const auto& qs = aligned_[v];
  return qs.empty() ? 0.0 : qs.front();
}

Instance Instance::withKind(SubgraphKind kind) const {
  Data d = data_;
  d.kind = kind;
  return Instance(std::move(d));
}

Instance Instance::withBudget(double budget) const {
  Data d = data_;
  d.budget = budget;
  return Instance(std::move(d));
}

Instance Instance::withUniformCapacity(int capacity) const {
  Data d = data_;
  std::fill(d.capacity.begin(), d.capacity.end(), capacity);
  return Instance(std::move(d));
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> out;
  const auto& d = instance.data();
  const int n = d.vertexCount;
  if (!(d.budget > 0.0)) out.push_back("budget must be positive");
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto& ed = d.edges[e];
    std::ostringstream tag;
    tag << "edge " << e;
    if (ed.a < 0 || ed.b < 0 || ed.a >= n || ed.b >= n) {
      out.push_back(tag.str() + ": endpoint out of range");
      continue;
    }
    if (ed.a == ed.b) out.push_back(tag.str() + ": self-loop");
    if (!(ed.cost >= 0.0)) out.push_back(tag.str() + ": negative cost");
    if (!seen.insert({ed.a, ed.b}).second) out.push_back(tag.str() + ": parallel edge");
  }
  for (int v = 0; v < n; ++v) {
    std::ostringstream tag;
    tag << "vertex " << v;
    if (v != kDepot && !(d.prize[v] >= 0.0)) out.push_back(tag.str() + ": negative prize");
    if (d.capacity[v] < 0) out.push_back(tag.str() + ": negative capacity");
    const auto& nb = d.neighbourhood[v];
    if (v == kDepot && !nb.empty()) out.push_back("depot cannot be covered (non-empty neighbourhood)");
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] < 0 || nb[k] >= n) {
        out.push_back(tag.str() + ": neighbour out of range");
        continue;
      }
      if (nb[k] == v) out.push_back(tag.str() + ": vertex in its own neighbourhood");
      if (k > 0 && nb[k] == nb[k - 1]) out.push_back(tag.str() + ": duplicate neighbour");
      const auto q = d.coverPrize.find({v, nb[k]});
      if (q == d.coverPrize.end()) out.push_back(tag.str() + ": coveragePrize missing for neighbour " + std::to_string(nb[k]));
      else if (!(q->second >= 0.0)) out.push_back(tag.str() + ": negative coverage prize");
    }
  }
  for (const auto& [key, q] : d.coverPrize) {
    const auto [v, w] = key;
    const std::string pair = "(" + std::to_string(v) + "," + std::to_string(w) + ")";
    if (v < 0 || v >= n || w < 0 || w >= n) {
      out.push_back("coveragePrize " + pair + " out of range");
      continue;
    }
    const auto& nb = d.neighbourhood[v];
    if (!std::binary_search(nb.begin(), nb.end(), w)) out.push_back("coveragePrize on non-neighbour " + pair);
  }
  return out;
}

std::vector<std::string> checkSolution(const Instance& instance, const Solution& solution) {
  const int n = instance.vertexCount();
  std::vector<std::string> out;
  for (VertexId v : solution.visited) {
    if (v < 0 || v >= n) throw StructuralError("unknown vertex " + std::to_string(v));
  }
  for (int e : solution.edges) {
    if (e < 0 || e >= instance.edgeCount()) throw StructuralError("unknown edge " + std::to_string(e));
  }
  for (auto [v, w] : solution.coverage) {
    if (v < 0 || v >= n || w < 0 || w >= n) throw StructuralError("unknown vertex in coverage map");
  }

  std::vector<char> visited(n, 0);
  for (VertexId v : solution.visited) {
    if (visited[v]) out.push_back("vertex " + std::to_string(v) + " listed twice");
    visited[v] = 1;
  }
  if (!visited[kDepot]) out.push_back("depot not visited");

  std::vector<char> usedEdge(instance.edgeCount(), 0);
  std::vector<int> degree(n, 0);
  for (int e : solution.edges) {
    if (usedEdge[e]) out.push_back("edge " + std::to_string(e) + " listed twice");
    usedEdge[e] = 1;
    const auto& ed = instance.edge(e);
    if (!visited[ed.a] || !visited[ed.b]) out.push_back("edge endpoint not visited");
    ++degree[ed.a];
    ++degree[ed.b];
  }
  if (edgeCost(instance, solution.edges) > instance.budget() + kBudgetTol) out.push_back("budget exceeded");

  // Connectivity of the edge set over the visited vertices.
  std::vector<int> comp(n, -1);
  std::vector<std::vector<VertexId>> adj(n);
  for (int e : solution.edges) {
    adj[instance.edge(e).a].push_back(instance.edge(e).b);
    adj[instance.edge(e).b].push_back(instance.edge(e).a);
  }
  std::vector<VertexId> stack{kDepot};
  comp[kDepot] = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj[v]) {
      if (comp[w] < 0) {
        comp[w] = 0;
        stack.push_back(w);
      }
    }
  }
  for (VertexId v : solution.visited) {
    if (comp[v] < 0) {
      out.push_back("not connected: vertex " + std::to_string(v) + " unreachable from depot");
      break;
    }
  }

  const auto visitedCount = static_cast<int>(solution.visited.size());
  if (instance.kind() == SubgraphKind::Tree) {
    if (static_cast<int>(solution.edges.size()) != visitedCount - 1) out.push_back("not a tree: edge count");
  } else {
    for (VertexId v : solution.visited) {
      if (degree[v] != 2) {
        out.push_back("degree-2 broken at vertex " + std::to_string(v));
        break;
      }
    }
    if (visitedCount < 3) out.push_back("tour needs at least three vertices");
  }

  std::vector<int> load(n, 0);
  for (auto [v, w] : solution.coverage) {
    if (v == kDepot) out.push_back("depot cannot be covered");
    if (visited[v]) out.push_back("covered vertex " + std::to_string(v) + " is visited");
    if (!visited[w]) out.push_back("covering vertex " + std::to_string(w) + " not visited");
    if (v != kDepot && !instance.inNeighbourhood(v, w)) out.push_back("coverage by non-neighbour");
    ++load[w];
  }
  for (int w = 0; w < n; ++w) {
    if (load[w] > instance.capacity(w)) {
      out.push_back("capacity exceeded at vertex " + std::to_string(w));
    }
  }

  if (out.empty()) {
    const double value = solutionValue(instance, solution.visited, solution.coverage);
    if (std::abs(value - solution.objective) > kValueTol) out.push_back("objective mismatch");
  }
  return out;
}

double solutionValue(const Instance& instance, const std::vector<VertexId>& visited,
                     const std::map<VertexId, VertexId>& coverage) {
  double value = 0.0;
  for (VertexId v : visited) value += instance.prize(v);
  for (auto [v, w] : coverage) value += instance.coverPrize(v, w).value_or(0.0);
  return value;
}

double edgeCost(const Instance& instance, const std::vector<int>& edges) {
  double total = 0.0;
  for (int e : edges) total += instance.edge(e).cost;
  return total;
}

long long roundHalfAway(double value) { return static_cast<long long>(std::round(value)); }

// ---------------------------------------------------------------------------

std::optional<ReferenceValues> knownReference(const std::string& baseName) {
  struct Row {
    const char* name;
    double tsp, avg, mst;
  };
  static constexpr Row kRows[] = {
      {"p4", 707.86, 33.47, 635.28},
      {"p5", 776.44, 32.91, 691.97},
      {"X-n162-k11", 9174.95, 491.56, 7903.35},
      {"X-n195-k51", 10221.68, 496.46, 8882.14},
      {"ch150", 6530.90, 359.31, 5880.96},
      {"kroA200", 29369.41, 1701.17, 25932.60},
  };
  std::string key = baseName;
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  for (const auto& row : kRows) {
    std::string rowKey = row.name;
    std::transform(rowKey.begin(), rowKey.end(), rowKey.begin(), [](unsigned char c) { return std::tolower(c); });
    if (rowKey == key) return ReferenceValues{row.tsp, row.mst, row.avg};
  }
  return std::nullopt;
}

double pseudoRandomPrize(VertexId v) {
  return 1.0 + static_cast<double>((7141LL * v + 73) % 100);
}

double euclidean(const Point& p, const Point& q, bool tsplibRounding) {
  const double d = std::hypot(p.x - q.x, p.y - q.y);
  return tsplibRounding ? std::floor(d + 0.5) : d;
}

double completeMstCost(const std::vector<Point>& points, bool tsplibRounding) {
  const auto n = points.size();
  if (n <= 1) return 0.0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> inTree(n, 0);
  best[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!inTree[v] && (pick == n || best[v] < best[pick])) pick = v;
    }
    inTree[pick] = 1;
    total += best[pick];
    for (std::size_t v = 0; v < n; ++v) {
      if (!inTree[v]) best[v] = std::min(best[v], euclidean(points[pick], points[v], tsplibRounding));
    }
  }
  return total;
}

double averagePairCost(const std::vector<Point>& points, bool tsplibRounding) {
  const auto n = points.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += euclidean(points[i], points[j], tsplibRounding);
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double heldKarpTourCost(const std::vector<Point>& points, bool tsplibRounding) {
  const int n = static_cast<int>(points.size());
  if (n > 20) throw std::invalid_argument("Held-Karp limited to 20 vertices");
  if (n <= 1) return 0.0;
  if (n == 2) return 2.0 * euclidean(points[0], points[1], tsplibRounding);
  const int m = n - 1;  // vertices 1..n-1 mapped to bits 0..m-1
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist[static_cast<std::size_t>(i) * n + j] = euclidean(points[i], points[j], tsplibRounding);
  std::vector<double> dp((std::size_t{1} << m) * m, inf);
  for (int j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = dist[j + 1];
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    for (int j = 0; j < m; ++j) {
      const double cur = dp[mask * m + j];
      if (!(mask >> j & 1) || cur == inf) continue;
      for (int k = 0; k < m; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double cand = cur + dist[static_cast<std::size_t>(j + 1) * n + (k + 1)];
        if (cand < dp[next * m + k]) dp[next * m + k] = cand;
      }
    }
  }
  const std::size_t full = (std::size_t{1} << m) - 1;
  double best = inf;
  for (int j = 0; j < m; ++j) best = std::min(best, dp[full * m + j] + dist[j + 1]);
  return best;
}

ReferenceValues resolveReference(const BaseInstance& base, const GeneratorParams& params) {
  ReferenceValues out = params.reference;
  const auto known = params.tsplibRounding ? std::nullopt : knownReference(base.name);
  if (!out.tsp) {
    if (known) {
      out.tsp = known->tsp;
    } else if (base.coordinates.size() <= 20) {
      out.tsp = heldKarpTourCost(base.coordinates, params.tsplibRounding);
    } else if (params.kind == SubgraphKind::Tour) {
      throw std::invalid_argument("TSP reference value required for base '" + base.name + "' with more than 20 vertices");
    }
  }
  if (!out.mst) out.mst = known ? known->mst : completeMstCost(base.coordinates, params.tsplibRounding);
  if (!out.avg) out.avg = known ? known->avg : averagePairCost(base.coordinates, params.tsplibRounding);
  return out;
}

DerivedParameters deriveParameters(int vertexCount, const ReferenceValues& resolved,
                                   const GeneratorParams& params) {
  DerivedParameters out;
  const double reference = params.kind == SubgraphKind::Tour ? resolved.tsp.value() : resolved.mst.value();
  out.budget = params.budgetFrac * reference;
  out.radius = params.radiusFrac * resolved.avg.value();
  out.capacity = static_cast<int>(roundHalfAway(params.capacityFrac * vertexCount));
  return out;
}

Instance generate(const BaseInstance& base, const GeneratorParams& params) {
  const int n = static_cast<int>(base.coordinates.size());
  if (n == 0) throw std::invalid_argument("unsupported format: base instance '" + base.name + "' has no coordinates");
  if (base.type != BaseType::TSP && !base.demands) {
    throw std::invalid_argument("unsupported format: VRP base '" + base.name + "' lacks demands");
  }
  const auto reference = resolveReference(base, params);
  const auto derived = deriveParameters(n, reference, params);

  Instance::Data d;
  d.name = base.name;
  d.kind = params.kind;
  d.vertexCount = n;
  d.budget = derived.budget;
  d.prize.assign(n, 0.0);
  for (int v = 1; v < n; ++v) {
    d.prize[v] = base.type == BaseType::TSP ? pseudoRandomPrize(v) : (*base.demands)[v];
  }
  d.capacity.assign(n, derived.capacity);
  d.neighbourhood.assign(n, {});
  d.coverPrize.clear();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      d.edges.push_back({a, b, euclidean(base.coordinates[a], base.coordinates[b], params.tsplibRounding)});
    }
  }
  for (int v = 1; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (w == v) continue;
      if (euclidean(base.coordinates[v], base.coordinates[w], params.tsplibRounding) <= derived.radius) {
        d.neighbourhood[v].push_back(w);
        d.coverPrize[{v, w}] = params.coverageRatio * d.prize[v];
      }
    }
  }
  return Instance(std::move(d));
}

namespace {

// Nearest-neighbour tour improved by 2-opt; a budget reference for random
// tours too large for the exact DP.
double twoOptTourCost(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  auto dist = [&](int a, int b) { return euclidean(pts[a], pts[b], false); };
  std::vector<int> tour{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  for (int k = 1; k < n; ++k) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!used[v] && (best < 0 || dist(tour.back(), v) < dist(tour.back(), best))) best = v;
    }
    used[best] = 1;
    tour.push_back(best);
  }
  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i + 2 < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        const int a = tour[i], b = tour[i + 1], c = tour[j], d = tour[(j + 1) % n];
        if (dist(a, c) + dist(b, d) < dist(a, b) + dist(c, d) - 1e-12) {
          std::reverse(tour.begin() + i + 1, tour.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
  double total = 0.0;
  for (int k = 0; k < n; ++k) total += dist(tour[k], tour[(k + 1) % n]);
  return total;
}

}  // namespace

Instance randomInstance(const RandomSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  BaseInstance base;
  base.name = "random-" + std::to_string(spec.vertexCount) + "-" + std::to_string(seed);
  base.type = BaseType::VRP;
  base.coordinates.resize(spec.vertexCount);
  std::vector<double> demands(spec.vertexCount, 0.0);
  for (int v = 0; v < spec.vertexCount; ++v) {
    base.coordinates[v] = {uniform(0.0, spec.coordinateRange), uniform(0.0, spec.coordinateRange)};
    if (v > 0) demands[v] = 1.0 + static_cast<double>(rng() % 100);
  }
  base.demands = demands;

  GeneratorParams params;
  params.kind = spec.kind;
  params.budgetFrac = spec.budgetFrac;
  params.radiusFrac = spec.radiusFrac;
  params.coverageRatio = spec.coverageRatio;
  params.capacityFrac = 0.0;
  if (spec.kind == SubgraphKind::Tour && spec.vertexCount > 20) params.reference.tsp = twoOptTourCost(base.coordinates);
  Instance generated = generate(base, params);

  Instance::Data d = generated.data();
  std::fill(d.capacity.begin(), d.capacity.end(), spec.capacity);
  if (spec.dependentPrizes) {
    for (int v = 1; v < spec.vertexCount; ++v) {
      for (VertexId w : d.neighbourhood[v]) d.coverPrize[{v, w}] = std::round(uniform(0.0, d.prize[v]) * 4.0) / 4.0;
    }
  }
  return Instance(std::move(d));
}

}  // namespace bpc
