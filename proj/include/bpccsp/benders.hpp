#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bpccsp/formulation.hpp"
#include "bpccsp/separation.hpp"

namespace bpc {

/// Values of the master variables that the subproblem depends on, indexed by
/// vertex (entries for the depot are ignored).
struct MasterPoint {
  std::vector<double> y;
  std::vector<double> theta;
  std::vector<double> eta;

  static MasterPoint fromLp(const ModelHandle& handle, const std::vector<double>& point);
};

/// Dual direction of an infeasible transportation subproblem. The cut it
/// induces reads sum_v uTheta_v theta_v + sum_w uY_w y_w >= 0.
struct Ray {
  std::vector<double> uTheta;
  std::vector<double> uY;
};

struct SubproblemResult {
  bool feasible = true;
  double demand = 0.0;   ///< sum of theta
  double flow = 0.0;     ///< max-flow value
  Ray ray;               ///< meaningful when infeasible
  std::vector<VertexId> customers;   ///< S: saturated-side customers
  std::vector<VertexId> facilities;  ///< N(S) without the depot

  /// Violation of the ray's cut at the given point (positive when violated).
  double violation(const MasterPoint& point) const;
};

/// Transportation feasibility of theta against capacities c_w y_w, solved as
/// a max-flow; an infeasible point yields a Hall-type ray from the min cut.
/// Throws DependentPrizesError for instances without independent prizes.
SubproblemResult checkSubproblem(const Instance& instance, const MasterPoint& point);

/// Feasibility cut of the ray on the master model.
Cut bendersCut(const ModelHandle& handle, const SubproblemResult& result);

/// Integral coverage realizing binary theta / eta at binary y. Throws
/// std::logic_error when the master point is not subproblem-feasible.
std::map<VertexId, VertexId> recoverCoverage(const Instance& instance, const MasterPoint& point);

/// Maximum-prize coverage for a fixed visited set (capacitated
/// transportation problem solved as min-cost flow).
std::map<VertexId, VertexId> bestCoverage(const Instance& instance, const std::vector<char>& visited);

}  // namespace bpc
