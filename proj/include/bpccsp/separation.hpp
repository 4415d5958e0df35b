#pragma once

#include <string>
#include <vector>

#include "bpccsp/formulation.hpp"

namespace bpc {

inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kViolationTol = 1e-6;

enum class CutFamily { Connectivity, TwoEdgeConnectivity, TriangleSym, QuadSym, BendersFeasibility };

std::string toString(CutFamily family);

struct Cut {
  CutFamily family = CutFamily::Connectivity;
  lp::Row row;
  std::vector<VertexId> set;  ///< originating S where applicable
  VertexId vertex = -1;       ///< originating v where applicable
  std::string key;            ///< dedup key

  /// Amount by which the point violates the row (positive when violated).
  double violation(const std::vector<double>& point) const;
};

/// Row activity minus right-hand side, signed so that positive means violated.
double rowViolation(const lp::Row& row, const std::vector<double>& point);

/// Vertices with y above the integrality tolerance (plus the depot) and
/// edges with x above it, weighted by x.
struct SupportGraph {
  std::vector<char> hasVertex;  // per instance vertex
  std::vector<int> edges;       // instance edge indices
  std::vector<double> weight;   // aligned with edges

  static SupportGraph build(const ModelHandle& handle, const std::vector<double>& point);
  /// Component label per instance vertex (-1 outside the support).
  std::vector<int> componentLabels(int vertexCount, const Instance& instance) const;
  bool connected(const Instance& instance) const;
};

/// Connected-component separation at any node: every depot-free component S
/// and every v in S, plus the union S' of all depot-free vertices.
std::vector<Cut> separateComponents(const ModelHandle& handle, const SupportGraph& support,
                                    const std::vector<double>& point);

struct MinCutSeparation {
  double cutValue = 0.0;
  std::vector<VertexId> shore;  ///< depot-free side, in instance vertex ids
  std::vector<Cut> cuts;
};

/// Global minimum cut of a connected support graph; emits the violated
/// connectivity rows for the depot-free shore.
MinCutSeparation separateMinCut(const ModelHandle& handle, const SupportGraph& support,
                                const std::vector<double>& point);

/// Opposite-edge symmetry rows violated by an integer tour candidate.
std::vector<Cut> separateQuadSym(const ModelHandle& handle, const std::vector<double>& point);
/// Triangle symmetry rows violated by an integer tree candidate.
std::vector<Cut> separateTriangleSym(const ModelHandle& handle, const std::vector<double>& point);

/// Connectivity cut object for (S, v) in the handle's row form.
Cut makeConnectivityCut(const ModelHandle& handle, const std::vector<char>& inS, VertexId v);

}  // namespace bpc
