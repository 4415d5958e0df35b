#include "bpccsp/benders.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "bpccsp/graph.hpp"

namespace bpc {

namespace {
constexpr double kFlowMargin = 1e-9;
}

MasterPoint MasterPoint::fromLp(const ModelHandle& h, const std::vector<double>& point) {
  const int n = h.instance->vertexCount();
  MasterPoint mp;
  mp.y.assign(n, 0.0);
  mp.theta.assign(n, 0.0);
  mp.eta.assign(n, 0.0);
  mp.y[kDepot] = 1.0;
  for (int v = 1; v < n; ++v) {
    mp.y[v] = point[h.vars.y[v]];
    if (h.vars.theta[v] >= 0) mp.theta[v] = point[h.vars.theta[v]];
    if (h.vars.eta[v] >= 0) mp.eta[v] = point[h.vars.eta[v]];
  }
  return mp;
}

double SubproblemResult::violation(const MasterPoint& point) const {
  if (feasible) return 0.0;
  double lhs = 0.0;
  for (std::size_t v = 1; v < ray.uTheta.size(); ++v) {
    lhs += ray.uTheta[v] * point.theta[v] + ray.uY[v] * point.y[v];
  }
  return -lhs;
}

SubproblemResult checkSubproblem(const Instance& instance, const MasterPoint& point) {
  if (!instance.hasIndependentPrizes()) throw DependentPrizesError();
  const int n = instance.vertexCount();
  // nodes: source 0, customers 1..n-1, facilities n+1..2n-1, sink 2n
  const int source = 0, sink = 2 * n;
  graph::MaxFlow net(2 * n + 1);
  SubproblemResult res;
  for (int v = 1; v < n; ++v) {
    const double supply = std::max(0.0, point.theta[v]);
    res.demand += supply;
    if (supply > 0.0) net.addArc(source, v, supply);
    for (VertexId w : instance.neighbourhood(v)) {
      if (w != kDepot) net.addArc(v, n + w, lp::kInf);
    }
  }
  for (int w = 1; w < n; ++w) {
    const double cap = instance.capacity(w) * std::max(0.0, point.y[w]);
    if (cap > 0.0) net.addArc(n + w, sink, cap);
  }
  res.flow = net.run(source, sink);
  res.ray.uTheta.assign(n, 0.0);
  res.ray.uY.assign(n, 0.0);
  if (res.demand - res.flow <= kFlowMargin) return res;

  res.feasible = false;
  const auto& side = net.sourceSide();
  std::set<VertexId> facilities;
  for (int v = 1; v < n; ++v) {
    if (!side[v] || point.theta[v] <= 0.0) continue;
    res.customers.push_back(v);
    res.ray.uTheta[v] = -1.0;
    for (VertexId w : instance.neighbourhood(v)) {
      if (w != kDepot) facilities.insert(w);
    }
  }
  for (VertexId w : facilities) {
    res.facilities.push_back(w);
    res.ray.uY[w] = instance.capacity(w);
  }
  return res;
}

Cut bendersCut(const ModelHandle& h, const SubproblemResult& result) {
  Cut cut;
  cut.family = CutFamily::BendersFeasibility;
  cut.row.relation = lp::Relation::GreaterEqual;
  cut.row.rhs = 0.0;
  cut.key = "benders|";
  for (VertexId v : result.customers) {
    cut.row.terms.push_back({h.vars.theta[v], result.ray.uTheta[v]});
    cut.key += std::to_string(v) + ",";
  }
  cut.key += "|";
  for (VertexId w : result.facilities) {
    if (result.ray.uY[w] != 0.0) cut.row.terms.push_back({h.vars.y[w], result.ray.uY[w]});
    cut.key += std::to_string(w) + ",";
  }
  cut.set = result.customers;
  cut.row.name = "benders_" + std::to_string(result.customers.size());
  return cut;
}

std::map<VertexId, VertexId> recoverCoverage(const Instance& instance, const MasterPoint& point) {
  const int n = instance.vertexCount();
  std::map<VertexId, VertexId> coverage;
  int depotLoad = 0;
  for (int v = 1; v < n; ++v) {
    if (point.eta[v] > 0.5) {
      if (!instance.inNeighbourhood(v, kDepot)) throw std::logic_error("eta set for a vertex the depot cannot cover");
      coverage[v] = kDepot;
      ++depotLoad;
    }
  }
  if (depotLoad > instance.capacity(kDepot)) throw std::logic_error("depot capacity exceeded by master point");

  const int source = 0, sink = 2 * n;
  graph::MaxFlow net(2 * n + 1);
  std::vector<std::vector<std::pair<VertexId, int>>> arcs(n);
  int demand = 0;
  for (int v = 1; v < n; ++v) {
    if (point.theta[v] <= 0.5) continue;
    ++demand;
    net.addArc(source, v, 1.0);
    for (VertexId w : instance.neighbourhood(v)) {
      if (w != kDepot && point.y[w] > 0.5) arcs[v].emplace_back(w, net.addArc(v, n + w, 1.0));
    }
  }
  for (int w = 1; w < n; ++w) {
    if (point.y[w] > 0.5 && instance.capacity(w) > 0) net.addArc(n + w, sink, instance.capacity(w));
  }
  const double flow = net.run(source, sink);
  if (flow + 0.5 < demand) throw std::logic_error("master point is not subproblem-feasible");
  for (int v = 1; v < n; ++v) {
    for (auto [w, arc] : arcs[v]) {
      if (net.flow(arc) > 0.5) coverage[v] = w;
    }
  }
  return coverage;
}

std::map<VertexId, VertexId> bestCoverage(const Instance& instance, const std::vector<char>& visited) {
  const int n = instance.vertexCount();
  const int source = 0, sink = 2 * n;
  graph::MinCostFlow net(2 * n + 1);
  std::vector<std::vector<std::pair<VertexId, int>>> arcs(n);
  for (int v = 1; v < n; ++v) {
    if (visited[v]) continue;
    const auto& nb = instance.neighbourhood(v);
    const auto& qs = instance.coverPrizes(v);
    bool any = false;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const VertexId w = nb[k];
      if (!visited[w] || instance.capacity(w) <= 0 || qs[k] <= 0.0) continue;
      arcs[v].emplace_back(w, net.addArc(v, n + w, 1, -qs[k]));
      any = true;
    }
    if (any) net.addArc(source, v, 1, 0.0);
  }
  for (int w = 0; w < n; ++w) {
    if (visited[w] && instance.capacity(w) > 0) net.addArc(n + w, sink, instance.capacity(w), 0.0);
  }
  net.run(source, sink);
  std::map<VertexId, VertexId> coverage;
  for (int v = 1; v < n; ++v) {
    for (auto [w, arc] : arcs[v]) {
      if (net.flow(arc) > 0) coverage[v] = w;
    }
  }
  return coverage;
}

}  // namespace bpc
