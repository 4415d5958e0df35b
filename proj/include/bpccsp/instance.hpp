#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpc {

using VertexId = int;
inline constexpr VertexId kDepot = 0;

enum class SubgraphKind { Tour, Tree };

std::string toString(SubgraphKind kind);
SubgraphKind parseSubgraphKind(const std::string& text);

struct Edge {
  VertexId a = 0;  ///< smaller endpoint
  VertexId b = 0;  ///< larger endpoint
  double cost = 0.0;
};

/// Thrown when an operation receives identifiers or data it cannot interpret.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by Benders-only entry points when some q_vw differs across w.
class DependentPrizesError : public std::runtime_error {
 public:
  DependentPrizesError()
      : std::runtime_error("independent prizes required (q_vw must not depend on w)") {}
};

/// Immutable problem data. Vertex 0 is the depot.
///
/// The neighbourhood of v lists the vertices able to cover v; coverPrize maps
/// (covered v, covering w) to q_vw and should hold exactly the pairs with
/// w in N_v. The depot has an empty neighbourhood since it is always visited.
class Instance {
 public:
  struct Data {
    std::string name;
    SubgraphKind kind = SubgraphKind::Tour;
    int vertexCount = 0;
    double budget = 0.0;
    std::vector<Edge> edges;
    std::vector<double> prize;                     // size n, prize[0] ignored
    std::vector<int> capacity;                     // size n
    std::vector<std::vector<VertexId>> neighbourhood;  // size n
    std::map<std::pair<VertexId, VertexId>, double> coverPrize;
  };

  Instance() = default;
  /// Normalizes edge orientation and sorts neighbourhoods; does not validate.
  explicit Instance(Data data);

  const std::string& name() const { return data_.name; }
  SubgraphKind kind() const { return data_.kind; }
  int vertexCount() const { return data_.vertexCount; }
  double budget() const { return data_.budget; }
  const std::vector<Edge>& edges() const { return data_.edges; }
  int edgeCount() const { return static_cast<int>(data_.edges.size()); }
  const Edge& edge(int e) const { return data_.edges.at(e); }
  double prize(VertexId v) const { return v == kDepot ? 0.0 : data_.prize[v]; }
  int capacity(VertexId v) const { return data_.capacity[v]; }
  const std::vector<VertexId>& neighbourhood(VertexId v) const { return data_.neighbourhood[v]; }
  /// q_vw aligned with neighbourhood(v); 0 where the data omits it.
  const std::vector<double>& coverPrizes(VertexId v) const { return aligned_[v]; }
  const Data& data() const { return data_; }

  /// Edge index joining a and b, or -1.
  int edgeIndex(VertexId a, VertexId b) const;
  /// Edge indices incident to v.
  const std::vector<int>& incident(VertexId v) const { return incident_[v]; }
  bool inNeighbourhood(VertexId v, VertexId w) const;
  /// q_vw, or nullopt when w is not in N_v.
  std::optional<double> coverPrize(VertexId v, VertexId w) const;

  /// True when every q_vw equals a single q_v.
  bool hasIndependentPrizes() const;
  /// q_v for independent-prize instances (0 when N_v is empty).
  double independentPrize(VertexId v) const;

  /// Copy with a different subgraph kind / budget / capacities.
  Instance withKind(SubgraphKind kind) const;
  Instance withBudget(double budget) const;
  Instance withUniformCapacity(int capacity) const;

 private:
  Data data_;
  std::vector<int> adjacency_;  // n*n, edge index or -1
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<double>> aligned_;
};

enum class SolutionStatus { Optimal, Feasible, Infeasible, TimeLimit };

std::string toString(SolutionStatus status);
SolutionStatus parseSolutionStatus(const std::string& text);

struct SolverStats {
  long long nodes = 0;
  long long lpIterations = 0;
  std::map<std::string, long long> cutsByFamily;
  double wallSeconds = 0.0;
  double rootBound = 0.0;

  bool operator==(const SolverStats&) const = default;
};

struct Solution {
  SolutionStatus status = SolutionStatus::Infeasible;
  std::vector<VertexId> visited;          // sorted, contains the depot when non-empty
  std::vector<int> edges;                 // edge indices, sorted
  std::map<VertexId, VertexId> coverage;  // covered -> covering
  double objective = 0.0;
  double bound = 0.0;
  SolverStats stats;

  bool hasStructure() const { return !visited.empty(); }
  bool operator==(const Solution&) const = default;
};

/// Every invariant breach found in the instance; empty when well formed.
std::vector<std::string> validate(const Instance& instance);

/// Feasibility audit of a solution; empty when feasible. Throws
/// StructuralError on out-of-range vertex or edge identifiers.
std::vector<std::string> checkSolution(const Instance& instance, const Solution& solution);

/// Visit plus coverage prize of the given structure.
double solutionValue(const Instance& instance, const std::vector<VertexId>& visited,
                     const std::map<VertexId, VertexId>& coverage);

/// Total edge cost.
double edgeCost(const Instance& instance, const std::vector<int>& edges);

/// Round half away from zero.
long long roundHalfAway(double value);

// ---------------------------------------------------------------------------
// Generator

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class BaseType { TSP, VRP, CVRP };

struct BaseInstance {
  std::string name;
  BaseType type = BaseType::TSP;
  std::vector<Point> coordinates;               // index 0 is the depot
  std::optional<std::vector<double>> demands;   // present for VRP / CVRP
};

/// Reference values of a base instance. Missing entries are computed.
struct ReferenceValues {
  std::optional<double> tsp;
  std::optional<double> mst;
  std::optional<double> avg;
};

/// Reference constants of the six literature base instances, by name.
std::optional<ReferenceValues> knownReference(const std::string& baseName);

struct GeneratorParams {
  double budgetFrac = 0.5;
  double radiusFrac = 1.0;
  double capacityFrac = 0.01;
  double coverageRatio = 0.5;
  SubgraphKind kind = SubgraphKind::Tour;
  bool tsplibRounding = false;
  ReferenceValues reference;
};

/// Derived scalar parameters of a generated instance.
struct DerivedParameters {
  double budget = 0.0;
  double radius = 0.0;
  int capacity = 0;
};

DerivedParameters deriveParameters(int vertexCount, const ReferenceValues& resolved,
                                   const GeneratorParams& params);

/// Prize used for TSPLIB bases: 1 + (7141 v + 73) mod 100.
double pseudoRandomPrize(VertexId v);

double euclidean(const Point& p, const Point& q, bool tsplibRounding);

/// Fills TSP/MST/AVG from known constants or computes them. The TSP optimum
/// is only computed exactly for at most 20 vertices; larger Tour bases need
/// it supplied (Tree bases leave it unset). Throws std::invalid_argument when
/// a Tour reference cannot be resolved.
ReferenceValues resolveReference(const BaseInstance& base, const GeneratorParams& params);

Instance generate(const BaseInstance& base, const GeneratorParams& params);

/// Minimum spanning tree cost of the complete Euclidean graph.
double completeMstCost(const std::vector<Point>& points, bool tsplibRounding);
/// Mean cost over unordered vertex pairs.
double averagePairCost(const std::vector<Point>& points, bool tsplibRounding);
/// Exact TSP optimum by dynamic programming; at most 20 points.
double heldKarpTourCost(const std::vector<Point>& points, bool tsplibRounding);

// ---------------------------------------------------------------------------
// Random instances for tests and desk-scale benchmarks

struct RandomSpec {
  int vertexCount = 8;
  SubgraphKind kind = SubgraphKind::Tour;
  double budgetFrac = 0.5;
  double radiusFrac = 1.0;
  int capacity = 1;
  double coverageRatio = 0.5;
  bool dependentPrizes = false;  ///< draw q_vw independently in [0, p_v]
  double coordinateRange = 100.0;
};

Instance randomInstance(const RandomSpec& spec, std::uint64_t seed);

}  // namespace bpc
