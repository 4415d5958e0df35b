#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bpccsp/bnc.hpp"
#include "bpccsp/instance.hpp"

namespace bpc {

/// One manifest line: whitespace-separated key=value pairs.
///
///   group=small source=random:8:3 kind=tour budget=0.5 radius=1 capacity=0.25 ratio=0.5
///
/// `source` is a TSPLIB base file, an instance JSON file (*.json) or
/// random:<vertices>:<seed>. Relative paths resolve against the manifest.
struct ManifestEntry {
  std::string group;
  std::string source;
  SubgraphKind kind = SubgraphKind::Tour;
  double budgetFrac = 0.5;
  double radiusFrac = 1.0;
  double capacityFrac = 0.01;
  double coverageRatio = 0.5;
  int line = 0;
};

std::vector<ManifestEntry> parseManifest(std::istream& in, const std::string& baseDir = ".");
Instance materialize(const ManifestEntry& entry);

struct RunRecord {
  std::string group;
  std::string instance;  ///< unique per manifest entry
  double budgetFrac = 0.0;
  Method method = Method::BranchAndCut;
  SolutionStatus status = SolutionStatus::Infeasible;
  double objective = 0.0;
  double bound = 0.0;
  double wallSeconds = 0.0;
  double cpuSeconds = 0.0;
  long long nodes = 0;
  std::map<std::string, long long> cuts;

  /// Finished within the limit (proven optimal or proven infeasible).
  bool solved() const { return status == SolutionStatus::Optimal || status == SolutionStatus::Infeasible; }
};

struct Table4Row {
  std::string group;
  double budgetFrac = 0.0;
  Method method = Method::BranchAndCut;
  int instances = 0;
  int solved = 0;
  double meanCpu = 0.0;    ///< over solved instances only
  double meanNodes = 0.0;  ///< over solved instances only
};

struct PhiSummary {
  std::string group;
  int instances = 0;
  int both = 0;  ///< solved by both methods
  int lt1 = 0, ge1 = 0, lt09 = 0, gt11 = 0, zero = 0, infinite = 0;
  double meanPhi = 0.0;  ///< over instances both methods solve
};

/// Benders CPU time over branch-and-cut CPU time; 0 when only Benders
/// solved, +inf when only branch-and-cut solved, nullopt when neither did.
std::optional<double> phiRatio(const RunRecord& bnc, const RunRecord& benders);

std::vector<Table4Row> aggregateTable4(const std::vector<RunRecord>& records);
/// One summary per group plus a trailing "all" row.
std::vector<PhiSummary> aggregatePhi(const std::vector<RunRecord>& records);

struct BenchOptions {
  double timeLimit = 60.0;
  SolverConfig base;
  std::ostream* log = nullptr;
};

std::vector<RunRecord> runBench(const std::vector<ManifestEntry>& entries, const BenchOptions& options);

void writeRunRecords(const std::vector<RunRecord>& records, std::ostream& out);
void writeReport(const std::vector<RunRecord>& records, std::ostream& out);

}  // namespace bpc
