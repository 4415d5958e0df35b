#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpccsp/instance.hpp"
#include "bpccsp/lp.hpp"

namespace bpc {

enum class ModelMode { Compact, BendersMaster };

enum class SymmetryPolicy { Upfront, Lazy, Off };

/// How ties between equal edge costs are resolved for symmetry rows.
/// Lexicographic orders edges by (cost, min endpoint, max endpoint);
/// CostOnly emits a row only when the cost comparison alone is strict.
enum class TieBreak { Lexicographic, CostOnly };

std::string toString(SymmetryPolicy policy);
SymmetryPolicy parseSymmetryPolicy(const std::string& text);

/// Column indices of every model symbol; -1 where the symbol does not exist.
struct VarMap {
  std::vector<int> x;                  // per edge
  std::vector<int> y;                  // per vertex, -1 for the depot
  std::vector<std::vector<int>> z;     // per vertex, aligned with neighbourhood
  std::vector<int> uForward;           // per edge, arc a->b (Tree only)
  std::vector<int> uBackward;          // per edge, arc b->a (Tree only)
  std::vector<int> theta;              // per vertex (Benders only)
  std::vector<int> eta;                // per vertex with 0 in N_v (Benders only)
};

struct ModelHandle {
  const Instance* instance = nullptr;
  ModelMode mode = ModelMode::Compact;
  SubgraphKind kind = SubgraphKind::Tour;
  lp::Model model;
  VarMap vars;
  SymmetryPolicy symmetry = SymmetryPolicy::Off;
  TieBreak tieBreak = TieBreak::Lexicographic;

  /// Columns the branch-and-bound may branch on (x and y).
  std::vector<int> branchColumns() const;
};

ModelHandle buildCompact(const Instance& instance, SubgraphKind kind);
/// Throws DependentPrizesError unless the coverage prizes are independent.
ModelHandle buildBendersMaster(const Instance& instance, SubgraphKind kind);

/// Adds triangle rows (Tree) or opposite-edge rows (Tour) now, or records
/// that they are to be checked lazily at integer candidates.
void addSymmetryBreaking(ModelHandle& handle, SymmetryPolicy policy, TieBreak tieBreak = TieBreak::Lexicographic);

/// Connectivity row for vertex set S (given as a membership mask, depot
/// excluded) and v in S. Tree models use arc variables, Tour models double
/// the right-hand side.
lp::Row connectivityRow(const ModelHandle& handle, const std::vector<char>& inS, VertexId v);

/// For a 3-clique, the edge that is strictly most expensive together with
/// the opposite vertex, if any.
struct TriangleRow {
  int edge = -1;
  VertexId apex = -1;
};
std::optional<TriangleRow> triangleRow(const Instance& instance, VertexId a, VertexId b, VertexId c, TieBreak tieBreak);

/// For a 4-clique, the pair of opposite edges whose cost sum strictly
/// dominates the two other pairings, if any.
std::optional<std::pair<int, int>> quadRow(const Instance& instance, VertexId a, VertexId b, VertexId c, VertexId d,
                                           TieBreak tieBreak);

/// Row x_e + y_apex <= 1 (x_e <= 0 when the apex is the depot).
lp::Row triangleLpRow(const ModelHandle& handle, const TriangleRow& tri);
/// Row x_e + x_f <= 1.
lp::Row quadLpRow(const ModelHandle& handle, int e, int f);

std::vector<lp::Row> allTriangleRows(const ModelHandle& handle);
std::vector<lp::Row> allQuadRows(const ModelHandle& handle);

}  // namespace bpc
