#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bpccsp/instance.hpp"

namespace bpc {

inline constexpr int kOracleMaxVertices = 14;
inline constexpr double kOracleBudgetTol = 1e-9;

struct OracleOptions {
  bool coverage = true;  ///< false: coverage prizes ignored (orienteering limit)
};

struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  Solution witness;
  long long enumeratedSubsets = 0;
};

/// Exhaustive optimum over every vertex subset containing the depot.
/// Throws std::invalid_argument when n exceeds kOracleMaxVertices.
OracleResult solveExhaustive(const Instance& instance, const OracleOptions& options = {});

/// Minimum spanning tree of the subgraph induced by `inS` (edge ids), or
/// nullopt when it is disconnected. Equal costs are ordered by endpoints.
std::optional<std::vector<int>> inducedMst(const Instance& instance, const std::vector<char>& inS);

/// Cheapest Hamiltonian cycle through every vertex of `inS` (depot included,
/// at least three vertices), or nullopt.
std::optional<std::vector<int>> inducedMinTour(const Instance& instance, const std::vector<char>& inS);

/// Maximum coverage prize for a visited set by exact assignment over
/// capacity slots (Hungarian method).
double maxCoverage(const Instance& instance, const std::vector<char>& visited,
                   std::map<VertexId, VertexId>* assignment = nullptr);

}  // namespace bpc
