#include "bpccsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bpc::graph {

namespace {
constexpr double kResidualEps = 1e-12;
}

MinCutResult stoerWagner(int vertexCount, const std::vector<WeightedEdge>& edges) {
  if (vertexCount < 2) throw std::invalid_argument("min cut needs two vertices");
  const auto n = static_cast<std::size_t>(vertexCount);
  std::vector<double> w(n * n, 0.0);
  for (const auto& e : edges) {
    if (e.a == e.b) continue;
    w[e.a * n + e.b] += e.weight;
    w[e.b * n + e.a] += e.weight;
  }
  // members[v]: original vertices merged into super-vertex v
  std::vector<std::vector<int>> members(n);
  for (std::size_t v = 0; v < n; ++v) members[v] = {static_cast<int>(v)};
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);

  MinCutResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<int> bestShore;

  while (active.size() > 1) {
    std::vector<double> key(n, 0.0);
    std::vector<char> added(n, 0);
    int prev = -1;
    int last = active.front();
    for (std::size_t step = 0; step < active.size(); ++step) {
      int pick = -1;
      for (int v : active) {
        if (!added[v] && (pick < 0 || key[v] > key[pick])) pick = v;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step + 1 == active.size()) {
        if (key[pick] < best.value) {
          best.value = key[pick];
          bestShore = members[pick];
        }
        break;
      }
      for (int v : active) {
        if (!added[v]) key[v] += w[pick * n + v];
      }
    }
    // merge last into prev
    for (int v : active) {
      w[prev * n + v] += w[last * n + v];
      w[v * n + prev] = w[prev * n + v];
    }
    w[prev * n + prev] = 0.0;
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    active.erase(std::find(active.begin(), active.end(), last));
  }

  best.side.assign(n, 0);
  for (int v : bestShore) best.side[v] = 1;
  if (best.side[0]) {
    for (auto& s : best.side) s = static_cast<char>(!s);
  }
  return best;
}

std::vector<int> components(int vertexCount, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(vertexCount);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> label(vertexCount);
  for (int v = 0; v < vertexCount; ++v) label[v] = find(v);
  return label;
}

MaxFlow::MaxFlow(int nodeCount) : n_(nodeCount), out_(nodeCount) {}

int MaxFlow::addArc(int from, int to, double capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0.0});
  out_[from].push_back(id);
  arcs_.push_back({from, 0.0, 0.0});
  out_[to].push_back(id + 1);
  return id;
}

double MaxFlow::flow(int arc) const { return arcs_[arc].flow; }

double MaxFlow::run(int source, int sink) {
  double total = 0.0;
  std::vector<int> via(n_);
  auto residual = [this](int a) { return arcs_[a].capacity - arcs_[a].flow; };
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    reachable_.assign(n_, 0);
    reachable_[source] = 1;
    std::deque<int> queue{source};
    while (!queue.empty() && !reachable_[sink]) {
      int v = queue.front();
      queue.pop_front();
      for (int a : out_[v]) {
        int to = arcs_[a].to;
        if (!reachable_[to] && residual(a) > kResidualEps) {
          reachable_[to] = 1;
          via[to] = a;
          queue.push_back(to);
        }
      }
    }
    if (!reachable_[sink]) break;
    double push = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) push = std::min(push, residual(via[v]));
    if (std::isinf(push)) throw std::runtime_error("max flow is unbounded");
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
    }
    total += push;
  }
  return total;
}

MinCostFlow::MinCostFlow(int nodeCount) : n_(nodeCount), out_(nodeCount) {}

int MinCostFlow::addArc(int from, int to, int capacity, double cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0, cost});
  out_[from].push_back(id);
  arcs_.push_back({from, 0, 0, -cost});
  out_[to].push_back(id + 1);
  return id;
}

double MinCostFlow::run(int source, int sink) {
  double total = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n_);
  std::vector<int> via(n_);
  std::vector<char> inQueue(n_);
  while (true) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(inQueue.begin(), inQueue.end(), 0);
    dist[source] = 0.0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      inQueue[v] = 0;
      for (int a : out_[v]) {
        const auto& arc = arcs_[a];
        if (arc.capacity - arc.flow <= 0) continue;
        const double cand = dist[v] + arc.cost;
        if (cand < dist[arc.to] - 1e-12) {
          dist[arc.to] = cand;
          via[arc.to] = a;
          if (!inQueue[arc.to]) {
            inQueue[arc.to] = 1;
            queue.push_back(arc.to);
          }
        }
      }
    }
    if (dist[sink] == inf || dist[sink] >= -1e-12) break;
    int push = std::numeric_limits<int>::max();
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      push = std::min(push, arcs_[via[v]].capacity - arcs_[via[v]].flow);
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
    }
    total += push * dist[sink];
  }
  return total;
}

}  // namespace bpc::graph
