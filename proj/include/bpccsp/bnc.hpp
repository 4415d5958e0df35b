#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "bpccsp/formulation.hpp"
#include "bpccsp/instance.hpp"
#include "bpccsp/lp.hpp"
#include "bpccsp/separation.hpp"

namespace bpc {

enum class Method { BranchAndCut, Benders };

std::string toString(Method method);
Method parseMethod(const std::string& text);

struct SolverConfig {
  Method method = Method::BranchAndCut;
  double timeLimit = 3600.0;  ///< seconds, wall clock
  /// Unset: upfront triangles for trees, lazy opposite-edge rows for tours.
  std::optional<SymmetryPolicy> symmetry;
  TieBreak tieBreak = TieBreak::Lexicographic;
  bool deterministic = true;
  int workerCount = 1;
  bool minCutAllNodes = false;  ///< min-cut separation beyond the root
  int rootMinCutRounds = 50;
  bool bendersBeforeConnectivity = false;
  bool recordCuts = false;      ///< keep every added cut in the result
  std::ostream* log = nullptr;  ///< progress lines when set
  double logInterval = 1.0;

  SymmetryPolicy effectiveSymmetry(SubgraphKind kind) const;
};

/// Thread-safe global pool of cuts, deduplicated by key.
class CutPool {
 public:
  /// Adds the cuts whose key is new; returns how many were added.
  int add(std::vector<Cut> cuts);
  /// Rows added since index `from`; advances `from`.
  std::vector<lp::Row> rowsSince(std::size_t& from) const;
  std::vector<Cut> snapshot() const;
  std::map<std::string, long long> countsByFamily() const;
  bool contains(const std::string& key) const;

 private:
  mutable std::mutex mutex_;
  std::vector<Cut> cuts_;
  std::set<std::string> keys_;
};

struct Node {
  long long id = 0;
  int depth = 0;
  double bound = lp::kInf;                   ///< parent LP bound
  std::vector<std::pair<int, double>> fixings;  ///< column -> fixed value
};

struct NodeOutcome {
  enum class Kind { Fathomed, Integral, Branch, TimeLimit } kind = Kind::Fathomed;
  double bound = -lp::kInf;      ///< LP bound of the node's final relaxation
  std::optional<Solution> candidate;
  int branchColumn = -1;
  double branchValue = 0.0;
  int separationRounds = 0;
  int cutsAdded = 0;
};

using Clock = std::chrono::steady_clock;

/// Runs the cut loop of one node against a worker-owned LP.
class NodeProcessor {
 public:
  NodeProcessor(const ModelHandle& handle, const SolverConfig& config, CutPool& pool);

  NodeOutcome process(const Node& node, double incumbent, bool isRoot, Clock::time_point deadline);
  long long lpIterations() const { return lpIterations_; }
  lp::Backend& backend() { return *lp_; }

  /// Candidate built from an integral point: structure from x/y and the best
  /// coverage for that structure.
  Solution candidateFromPoint(const std::vector<double>& point) const;

 private:
  void applyFixings(const Node& node);
  void syncPool();
  int chooseBranchColumn(const std::vector<double>& point, double& value) const;

  const ModelHandle& handle_;
  const SolverConfig& config_;
  CutPool& pool_;
  std::unique_ptr<lp::Backend> lp_;
  std::size_t poolSynced_ = 0;
  std::vector<int> fixedColumns_;
  std::vector<int> branchColumns_;
  long long lpIterations_ = 0;
};

struct SolveResult {
  Solution solution;
  std::vector<Cut> cuts;  ///< filled when config.recordCuts
};

/// Exact solve by branch-and-cut (compact model) or Benders decomposition
/// (projected master with feasibility cuts).
SolveResult solveDetailed(const Instance& instance, const SolverConfig& config);
Solution solve(const Instance& instance, const SolverConfig& config);

}  // namespace bpc
