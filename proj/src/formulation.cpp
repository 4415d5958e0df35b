#include "bpccsp/formulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

namespace bpc {

std::string toString(SymmetryPolicy policy) {
  switch (policy) {
    case SymmetryPolicy::Upfront: return "upfront";
    case SymmetryPolicy::Lazy: return "lazy";
    case SymmetryPolicy::Off: return "off";
  }
  return "?";
}

SymmetryPolicy parseSymmetryPolicy(const std::string& text) {
  if (text == "upfront") return SymmetryPolicy::Upfront;
  if (text == "lazy") return SymmetryPolicy::Lazy;
  if (text == "off") return SymmetryPolicy::Off;
  throw std::invalid_argument("unknown symmetry policy '" + text + "'");
}

std::vector<int> ModelHandle::branchColumns() const {
  std::vector<int> cols = vars.y;
  cols.insert(cols.end(), vars.x.begin(), vars.x.end());
  cols.erase(std::remove(cols.begin(), cols.end(), -1), cols.end());
  return cols;
}

namespace {

std::string edgeName(const Instance& inst, int e) {
  return std::to_string(inst.edge(e).a) + "_" + std::to_string(inst.edge(e).b);
}

void addSharedColumns(ModelHandle& h) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  h.vars.x.resize(inst.edgeCount());
  for (int e = 0; e < inst.edgeCount(); ++e) {
    h.vars.x[e] = h.model.addColumn({0.0, 1.0, 0.0, "x_" + edgeName(inst, e)});
  }
  h.vars.y.assign(n, -1);
  for (int v = 1; v < n; ++v) h.vars.y[v] = h.model.addColumn({0.0, 1.0, inst.prize(v), "y_" + std::to_string(v)});
  h.vars.z.assign(n, {});
  h.vars.theta.assign(n, -1);
  h.vars.eta.assign(n, -1);
  if (h.kind == SubgraphKind::Tree) {
    h.vars.uForward.resize(inst.edgeCount());
    h.vars.uBackward.resize(inst.edgeCount());
    for (int e = 0; e < inst.edgeCount(); ++e) {
      const auto& ed = inst.edge(e);
      h.vars.uForward[e] =
          h.model.addColumn({0.0, 1.0, 0.0, "u_" + std::to_string(ed.a) + "_" + std::to_string(ed.b)});
      h.vars.uBackward[e] =
          h.model.addColumn({0.0, 1.0, 0.0, "u_" + std::to_string(ed.b) + "_" + std::to_string(ed.a)});
    }
  }
}

void addBudgetRow(ModelHandle& h) {
  lp::Row row{{}, lp::Relation::LessEqual, h.instance->budget(), "budget"};
  for (int e = 0; e < h.instance->edgeCount(); ++e) row.terms.push_back({h.vars.x[e], h.instance->edge(e).cost});
  h.model.addRow(std::move(row));
}

/// Edge-endpoint rows; Tree compact models lift them with z where possible.
void addEndpointRows(ModelHandle& h) {
  const Instance& inst = *h.instance;
  const bool lift = h.kind == SubgraphKind::Tree && h.mode == ModelMode::Compact;
  for (int e = 0; e < inst.edgeCount(); ++e) {
    const auto& ed = inst.edge(e);
    for (auto [v, w] : {std::pair{ed.a, ed.b}, std::pair{ed.b, ed.a}}) {
      if (v == kDepot) continue;
      lp::Row row{{{h.vars.x[e], 1.0}, {h.vars.y[v], -1.0}}, lp::Relation::LessEqual, 0.0,
                  "endpoint_" + edgeName(inst, e) + "_" + std::to_string(v)};
      if (lift && w != kDepot) {
        const auto& nb = inst.neighbourhood(w);
        auto it = std::lower_bound(nb.begin(), nb.end(), v);
        if (it != nb.end() && *it == v) {
          row.terms.push_back({h.vars.z[w][static_cast<std::size_t>(it - nb.begin())], 1.0});
          row.name = "lifted_" + edgeName(inst, e) + "_" + std::to_string(v);
        }
      }
      h.model.addRow(std::move(row));
    }
  }
}

void addInitialConnectivity(ModelHandle& h) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  for (int v = 1; v < n; ++v) {
    std::vector<char> inS(n, 0);
    inS[v] = 1;
    for (VertexId w : inst.neighbourhood(v)) {
      if (w != kDepot) inS[w] = 1;
    }
    auto row = connectivityRow(h, inS, v);
    row.name = "conn_init_" + std::to_string(v);
    h.model.addRow(std::move(row));
  }
}

void addKindRows(ModelHandle& h) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  if (h.kind == SubgraphKind::Tour) {
    for (int v = 0; v < n; ++v) {
      lp::Row row{{}, lp::Relation::Equal, v == kDepot ? 2.0 : 0.0, "degree_" + std::to_string(v)};
      for (int e : inst.incident(v)) row.terms.push_back({h.vars.x[e], 1.0});
      if (v != kDepot) row.terms.push_back({h.vars.y[v], -2.0});
      h.model.addRow(std::move(row));
    }
  } else {
    for (int e = 0; e < inst.edgeCount(); ++e) {
      h.model.addRow({{{h.vars.x[e], 1.0}, {h.vars.uForward[e], -1.0}, {h.vars.uBackward[e], -1.0}},
                      lp::Relation::Equal,
                      0.0,
                      "link_" + edgeName(inst, e)});
    }
    lp::Row count{{}, lp::Relation::Equal, 0.0, "edge_count"};
    for (int e = 0; e < inst.edgeCount(); ++e) count.terms.push_back({h.vars.x[e], 1.0});
    for (int v = 1; v < n; ++v) count.terms.push_back({h.vars.y[v], -1.0});
    h.model.addRow(std::move(count));
  }
}

struct EdgeKey {
  double cost;
  VertexId lo, hi;
  auto tuple() const { return std::tie(cost, lo, hi); }
};

EdgeKey keyOf(const Instance& inst, int e) { return {inst.edge(e).cost, inst.edge(e).a, inst.edge(e).b}; }

}  // namespace

lp::Row connectivityRow(const ModelHandle& h, const std::vector<char>& inS, VertexId v) {
  const Instance& inst = *h.instance;
  lp::Row row{{}, lp::Relation::GreaterEqual, 0.0, ""};
  for (int e = 0; e < inst.edgeCount(); ++e) {
    const auto& ed = inst.edge(e);
    const bool aIn = inS[ed.a] != 0, bIn = inS[ed.b] != 0;
    if (aIn == bIn) continue;
    if (h.kind == SubgraphKind::Tree) {
      // arc entering S
      row.terms.push_back({bIn ? h.vars.uForward[e] : h.vars.uBackward[e], 1.0});
    } else {
      row.terms.push_back({h.vars.x[e], 1.0});
    }
  }
  const double k = h.kind == SubgraphKind::Tour ? 2.0 : 1.0;
  row.terms.push_back({h.vars.y[v], -k});
  const auto& nb = inst.neighbourhood(v);
  if (h.mode == ModelMode::Compact) {
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] != kDepot && inS[nb[i]]) row.terms.push_back({h.vars.z[v][i], -k});
    }
  } else if (h.vars.theta[v] >= 0) {
    const bool covered = std::all_of(nb.begin(), nb.end(), [&](VertexId w) { return w == kDepot || inS[w]; });
    if (covered) row.terms.push_back({h.vars.theta[v], -k});
  }
  return row;
}

ModelHandle buildCompact(const Instance& instance, SubgraphKind kind) {
  ModelHandle h;
  h.instance = &instance;
  h.mode = ModelMode::Compact;
  h.kind = kind;
  addSharedColumns(h);
  const int n = instance.vertexCount();
  for (int v = 1; v < n; ++v) {
    const auto& nb = instance.neighbourhood(v);
    const auto& qs = instance.coverPrizes(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      h.vars.z[v].push_back(
          h.model.addColumn({0.0, 1.0, qs[i], "z_" + std::to_string(v) + "_" + std::to_string(nb[i])}));
    }
  }

  addBudgetRow(h);
  for (int v = 1; v < n; ++v) {
    lp::Row row{{{h.vars.y[v], 1.0}}, lp::Relation::LessEqual, 1.0, "visit_or_cover_" + std::to_string(v)};
    for (int col : h.vars.z[v]) row.terms.push_back({col, 1.0});
    h.model.addRow(std::move(row));
  }
  std::vector<std::vector<int>> coveringColumns(n);
  for (int v = 1; v < n; ++v) {
    const auto& nb = instance.neighbourhood(v);
    for (std::size_t i = 0; i < nb.size(); ++i) coveringColumns[nb[i]].push_back(h.vars.z[v][i]);
  }
  for (int w = 0; w < n; ++w) {
    lp::Row row{{}, lp::Relation::LessEqual, 0.0, "capacity_" + std::to_string(w)};
    for (int col : coveringColumns[w]) row.terms.push_back({col, 1.0});
    if (w == kDepot) row.rhs = instance.capacity(w);
    else row.terms.push_back({h.vars.y[w], -static_cast<double>(instance.capacity(w))});
    h.model.addRow(std::move(row));
  }
  addEndpointRows(h);
  addInitialConnectivity(h);
  addKindRows(h);
  return h;
}

ModelHandle buildBendersMaster(const Instance& instance, SubgraphKind kind) {
  if (!instance.hasIndependentPrizes()) throw DependentPrizesError();
  ModelHandle h;
  h.instance = &instance;
  h.mode = ModelMode::BendersMaster;
  h.kind = kind;
  addSharedColumns(h);
  const int n = instance.vertexCount();
  for (int v = 1; v < n; ++v) {
    const auto& nb = instance.neighbourhood(v);
    const double q = instance.independentPrize(v);
    const bool hasFacility = std::any_of(nb.begin(), nb.end(), [](VertexId w) { return w != kDepot; });
    h.vars.theta[v] = h.model.addColumn({0.0, hasFacility ? 1.0 : 0.0, q, "theta_" + std::to_string(v)});
    if (instance.inNeighbourhood(v, kDepot)) {
      h.vars.eta[v] = h.model.addColumn({0.0, 1.0, q, "eta_" + std::to_string(v)});
    }
  }

  addBudgetRow(h);
  lp::Row depotCap{{}, lp::Relation::LessEqual, static_cast<double>(instance.capacity(kDepot)), "depot_capacity"};
  for (int v = 1; v < n; ++v) {
    if (h.vars.eta[v] >= 0) depotCap.terms.push_back({h.vars.eta[v], 1.0});
  }
  if (!depotCap.terms.empty()) h.model.addRow(std::move(depotCap));
  for (int v = 1; v < n; ++v) {
    lp::Row row{{{h.vars.y[v], 1.0}, {h.vars.theta[v], 1.0}}, lp::Relation::LessEqual, 1.0,
                "visit_or_cover_" + std::to_string(v)};
    if (h.vars.eta[v] >= 0) row.terms.push_back({h.vars.eta[v], 1.0});
    h.model.addRow(std::move(row));
  }
  addEndpointRows(h);
  addInitialConnectivity(h);
  addKindRows(h);
  return h;
}

std::optional<TriangleRow> triangleRow(const Instance& inst, VertexId a, VertexId b, VertexId c, TieBreak tieBreak) {
  const int eab = inst.edgeIndex(a, b), eac = inst.edgeIndex(a, c), ebc = inst.edgeIndex(b, c);
  if (eab < 0 || eac < 0 || ebc < 0) return std::nullopt;
  std::array<std::pair<int, VertexId>, 3> cand{{{eab, c}, {eac, b}, {ebc, a}}};
  std::sort(cand.begin(), cand.end(), [&](const auto& l, const auto& r) {
    return keyOf(inst, l.first).tuple() > keyOf(inst, r.first).tuple();
  });
  if (tieBreak == TieBreak::CostOnly && !(inst.edge(cand[0].first).cost > inst.edge(cand[1].first).cost)) {
    return std::nullopt;
  }
  return TriangleRow{cand[0].first, cand[0].second};
}

std::optional<std::pair<int, int>> quadRow(const Instance& inst, VertexId a, VertexId b, VertexId c, VertexId d,
                                           TieBreak tieBreak) {
  const std::array<std::pair<int, int>, 3> pairings{{
      {inst.edgeIndex(a, b), inst.edgeIndex(c, d)},
      {inst.edgeIndex(a, c), inst.edgeIndex(b, d)},
      {inst.edgeIndex(a, d), inst.edgeIndex(b, c)},
  }};
  for (const auto& p : pairings) {
    if (p.first < 0 || p.second < 0) return std::nullopt;
  }
  auto sum = [&](const std::pair<int, int>& p) { return inst.edge(p.first).cost + inst.edge(p.second).cost; };
  // Ties fall back to the pairing that holds the lexicographically largest
  // edge, which acts like an additive perturbation of edge costs.
  auto rank = [&](const std::pair<int, int>& p) {
    auto key = [&](int e) { return std::pair{inst.edge(e).a, inst.edge(e).b}; };
    return std::max(key(p.first), key(p.second));
  };
  auto greater = [&](const std::pair<int, int>& l, const std::pair<int, int>& r) {
    const double sl = sum(l), sr = sum(r);
    const double tol = 1e-9 * std::max(1.0, std::max(std::abs(sl), std::abs(sr)));
    if (sl > sr + tol) return true;
    if (sl < sr - tol || tieBreak == TieBreak::CostOnly) return false;
    return rank(l) > rank(r);
  };
  for (int i = 0; i < 3; ++i) {
    if (greater(pairings[i], pairings[(i + 1) % 3]) && greater(pairings[i], pairings[(i + 2) % 3])) {
      auto [e, f] = pairings[i];
      return std::pair{std::min(e, f), std::max(e, f)};
    }
  }
  return std::nullopt;
}

lp::Row triangleLpRow(const ModelHandle& h, const TriangleRow& tri) {
  const Instance& inst = *h.instance;
  lp::Row row{{{h.vars.x[tri.edge], 1.0}}, lp::Relation::LessEqual, 1.0,
              "tri_" + edgeName(inst, tri.edge) + "_" + std::to_string(tri.apex)};
  if (tri.apex == kDepot) row.rhs = 0.0;
  else row.terms.push_back({h.vars.y[tri.apex], 1.0});
  return row;
}

lp::Row quadLpRow(const ModelHandle& h, int e, int f) {
  const Instance& inst = *h.instance;
  return {{{h.vars.x[e], 1.0}, {h.vars.x[f], 1.0}}, lp::Relation::LessEqual, 1.0,
          "quad_" + edgeName(inst, e) + "_" + edgeName(inst, f)};
}

std::vector<lp::Row> allTriangleRows(const ModelHandle& h) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  std::vector<lp::Row> rows;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (auto tri = triangleRow(inst, a, b, c, h.tieBreak)) rows.push_back(triangleLpRow(h, *tri));
      }
  return rows;
}

std::vector<lp::Row> allQuadRows(const ModelHandle& h) {
  const Instance& inst = *h.instance;
  const int n = inst.vertexCount();
  std::vector<lp::Row> rows;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          if (auto q = quadRow(inst, a, b, c, d, h.tieBreak)) rows.push_back(quadLpRow(h, q->first, q->second));
        }
  return rows;
}

void addSymmetryBreaking(ModelHandle& handle, SymmetryPolicy policy, TieBreak tieBreak) {
  handle.symmetry = policy;
  handle.tieBreak = tieBreak;
  if (policy != SymmetryPolicy::Upfront) return;
  auto rows = handle.kind == SubgraphKind::Tree ? allTriangleRows(handle) : allQuadRows(handle);
  for (auto& r : rows) handle.model.addRow(std::move(r));
}

}  // namespace bpc
