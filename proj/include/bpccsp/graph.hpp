#pragma once

#include <vector>

namespace bpc::graph {

struct WeightedEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;
};

struct MinCutResult {
  double value = 0.0;
  std::vector<char> side;  ///< side[v] == 1 for the shore that excludes vertex 0
};

/// Stoer-Wagner global minimum cut of an undirected weighted graph.
/// Requires at least two vertices; parallel edges are merged.
MinCutResult stoerWagner(int vertexCount, const std::vector<WeightedEdge>& edges);

/// Connected components; returns the component label per vertex.
std::vector<int> components(int vertexCount, const std::vector<std::pair<int, int>>& edges);

/// Residual-network max-flow (Edmonds-Karp). Arc capacities may be +inf.
class MaxFlow {
 public:
  explicit MaxFlow(int nodeCount);

  int addArc(int from, int to, double capacity);
  double run(int source, int sink);
  double flow(int arc) const;
  /// After run(): nodes reachable from the source in the residual network.
  const std::vector<char>& sourceSide() const { return reachable_; }

 private:
  struct Arc {
    int to;
    double capacity;
    double flow;
  };
  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<char> reachable_;
};

/// Successive-shortest-path min-cost flow that stops once no negative-cost
/// augmenting path remains, i.e. a maximum-weight flow when costs are
/// negated weights.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodeCount);

  int addArc(int from, int to, int capacity, double cost);
  /// Returns the total cost of the flow sent.
  double run(int source, int sink);
  int flow(int arc) const { return arcs_[arc].flow; }

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
    double cost;
  };
  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

}  // namespace bpc::graph
