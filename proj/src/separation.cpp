#include "bpccsp/separation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "bpccsp/graph.hpp"

namespace bpc {

std::string toString(CutFamily family) {
  switch (family) {
    case CutFamily::Connectivity: return "connectivity";
    case CutFamily::TwoEdgeConnectivity: return "two_edge";
    case CutFamily::TriangleSym: return "triangle_sym";
    case CutFamily::QuadSym: return "quad_sym";
    case CutFamily::BendersFeasibility: return "benders";
  }
  return "?";
}

double rowViolation(const lp::Row& row, const std::vector<double>& point) {
  double activity = 0.0;
  for (const auto& t : row.terms) activity += t.coef * point[t.column];
  switch (row.relation) {
    case lp::Relation::LessEqual: return activity - row.rhs;
    case lp::Relation::GreaterEqual: return row.rhs - activity;
    case lp::Relation::Equal: return std::abs(activity - row.rhs);
  }
  return 0.0;
}

double Cut::violation(const std::vector<double>& point) const { return rowViolation(row, point); }

SupportGraph SupportGraph::build(const ModelHandle& h, const std::vector<double>& point) {
  const Instance& inst = *h.instance;
  SupportGraph g;
  g.hasVertex.assign(inst.vertexCount(), 0);
  g.hasVertex[kDepot] = 1;
  for (int v = 1; v < inst.vertexCount(); ++v) g.hasVertex[v] = point[h.vars.y[v]] > kIntegralityTol;
  for (int e = 0; e < inst.edgeCount(); ++e) {
    const double xe = point[h.vars.x[e]];
    if (xe > kIntegralityTol) {
      g.edges.push_back(e);
      g.weight.push_back(xe);
      // x_e <= y_v keeps endpoints in the support up to tolerance
      g.hasVertex[inst.edge(e).a] = 1;
      g.hasVertex[inst.edge(e).b] = 1;
    }
  }
  return g;
}

std::vector<int> SupportGraph::componentLabels(int vertexCount, const Instance& instance) const {
  std::vector<std::pair<int, int>> pairs;
  for (int e : edges) pairs.emplace_back(instance.edge(e).a, instance.edge(e).b);
  auto labels = graph::components(vertexCount, pairs);
  for (int v = 0; v < vertexCount; ++v) {
    if (!hasVertex[v]) labels[v] = -1;
  }
  return labels;
}

bool SupportGraph::connected(const Instance& instance) const {
  const auto labels = componentLabels(instance.vertexCount(), instance);
  for (int v = 0; v < instance.vertexCount(); ++v) {
    if (labels[v] >= 0 && labels[v] != labels[kDepot]) return false;
  }
  return true;
}

Cut makeConnectivityCut(const ModelHandle& h, const std::vector<char>& inS, VertexId v) {
  Cut cut;
  cut.family = h.kind == SubgraphKind::Tour ? CutFamily::TwoEdgeConnectivity : CutFamily::Connectivity;
  cut.row = connectivityRow(h, inS, v);
  for (int w = 0; w < static_cast<int>(inS.size()); ++w) {
    if (inS[w]) cut.set.push_back(w);
  }
  cut.vertex = v;
  cut.key = toString(cut.family) + "|" + std::to_string(v) + "|";
  for (int w : cut.set) cut.key += std::to_string(w) + ",";
  cut.row.name = "cut_" + std::to_string(v) + "_" + std::to_string(cut.set.size());
  return cut;
}

std::vector<Cut> separateComponents(const ModelHandle& h, const SupportGraph& support,
                                    const std::vector<double>& point) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  const auto labels = support.componentLabels(n, inst);
  const int depotLabel = labels[kDepot];
  std::vector<Cut> cuts;
  std::set<std::string> keys;
  auto emit = [&](const std::vector<char>& inS, VertexId v) {
    Cut cut = makeConnectivityCut(h, inS, v);
    if (cut.violation(point) > kViolationTol && keys.insert(cut.key).second) cuts.push_back(std::move(cut));
  };

  std::set<int> seen;
  for (int v = 1; v < n; ++v) {
    if (labels[v] < 0 || labels[v] == depotLabel || !seen.insert(labels[v]).second) continue;
    std::vector<char> inS(n, 0);
    for (int w = 1; w < n; ++w) inS[w] = labels[w] == labels[v];
    for (int w = 1; w < n; ++w) {
      if (inS[w]) emit(inS, w);
    }
  }
  if (seen.empty()) return cuts;
  std::vector<char> rest(n, 0);
  for (int w = 1; w < n; ++w) rest[w] = labels[w] != depotLabel;
  for (int w = 1; w < n; ++w) {
    if (rest[w]) emit(rest, w);
  }
  return cuts;
}

MinCutSeparation separateMinCut(const ModelHandle& h, const SupportGraph& support, const std::vector<double>& point) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  MinCutSeparation out;
  std::vector<int> local(n, -1), global;
  for (int v = 0; v < n; ++v) {
    if (support.hasVertex[v]) {
      local[v] = static_cast<int>(global.size());
      global.push_back(v);
    }
  }
  if (global.size() < 2) return out;
  std::vector<graph::WeightedEdge> edges;
  for (std::size_t k = 0; k < support.edges.size(); ++k) {
    const auto& ed = inst.edge(support.edges[k]);
    edges.push_back({local[ed.a], local[ed.b], support.weight[k]});
  }
  const auto result = graph::stoerWagner(static_cast<int>(global.size()), edges);
  out.cutValue = result.value;
  std::vector<char> inS(n, 0);
  for (std::size_t i = 0; i < global.size(); ++i) {
    if (result.side[i]) {
      inS[global[i]] = 1;
      out.shore.push_back(global[i]);
    }
  }
  for (VertexId v : out.shore) {
    Cut cut = makeConnectivityCut(h, inS, v);
    if (cut.violation(point) > kViolationTol) out.cuts.push_back(std::move(cut));
    if (static_cast<int>(out.cuts.size()) >= n) break;
  }
  return out;
}

std::vector<Cut> separateQuadSym(const ModelHandle& h, const std::vector<double>& point) {
  const Instance& inst = *h.instance;
  std::vector<int> chosen;
  for (int e = 0; e < inst.edgeCount(); ++e) {
    if (point[h.vars.x[e]] > 0.5) chosen.push_back(e);
  }
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      const auto& e = inst.edge(chosen[i]);
      const auto& f = inst.edge(chosen[j]);
      if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
      std::array<VertexId, 4> q{e.a, e.b, f.a, f.b};
      std::sort(q.begin(), q.end());
      const auto row = quadRow(inst, q[0], q[1], q[2], q[3], h.tieBreak);
      if (!row || row->first != chosen[i] || row->second != chosen[j]) continue;
      Cut cut;
      cut.family = CutFamily::QuadSym;
      cut.row = quadLpRow(h, chosen[i], chosen[j]);
      cut.set.assign(q.begin(), q.end());
      cut.key = "quad|" + std::to_string(chosen[i]) + "|" + std::to_string(chosen[j]);
      if (cut.violation(point) > kViolationTol) cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

std::vector<Cut> separateTriangleSym(const ModelHandle& h, const std::vector<double>& point) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  std::vector<Cut> cuts;
  for (int e = 0; e < inst.edgeCount(); ++e) {
    if (point[h.vars.x[e]] <= 0.5) continue;
    const auto& ed = inst.edge(e);
    for (int k = 0; k < n; ++k) {
      if (k == ed.a || k == ed.b) continue;
      if (k != kDepot && point[h.vars.y[k]] <= 0.5) continue;
      std::array<VertexId, 3> t{ed.a, ed.b, k};
      std::sort(t.begin(), t.end());
      const auto tri = triangleRow(inst, t[0], t[1], t[2], h.tieBreak);
      if (!tri || tri->edge != e) continue;
      Cut cut;
      cut.family = CutFamily::TriangleSym;
      cut.row = triangleLpRow(h, *tri);
      cut.set.assign(t.begin(), t.end());
      cut.vertex = k;
      cut.key = "tri|" + std::to_string(e) + "|" + std::to_string(k);
      if (cut.violation(point) > kViolationTol) cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

}  // namespace bpc
