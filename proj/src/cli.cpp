#include "bpccsp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bpccsp/bench.hpp"
#include "bpccsp/bnc.hpp"
#include "bpccsp/io.hpp"
#include "bpccsp/oracle.hpp"

namespace bpc {

namespace {

struct InstanceOptions {
  std::string input;
  std::string subgraph;
  double budgetFrac = 0.5;
  double radiusFrac = 1.0;
  double capacityFrac = 0.01;
  double coverageRatio = 0.5;
  bool tsplibRounding = false;
  std::optional<double> tspRef, mstRef, avgRef;
  std::uint64_t seed = 1;
};

void addInstanceOptions(CLI::App* cmd, InstanceOptions& o) {
  cmd->add_option("--input,-i", o.input, "TSPLIB base file, instance JSON, or random:<vertices>")->required();
  cmd->add_option("--subgraph", o.subgraph, "tour | tree (overrides the instance file)")
      ->check(CLI::IsMember({"tour", "tree"}));
  cmd->add_option("--budget-frac", o.budgetFrac, "budget as a fraction of the TSP / MST reference");
  cmd->add_option("--radius-frac", o.radiusFrac, "covering radius as a multiple of the mean edge cost");
  cmd->add_option("--capacity-frac", o.capacityFrac, "coverage capacity as a fraction of the vertex count");
  cmd->add_option("--coverage-ratio", o.coverageRatio, "coverage prize as a fraction of the visit prize");
  cmd->add_flag("--tsplib-rounding", o.tsplibRounding, "round distances to integers as TSPLIB EUC_2D does");
  cmd->add_option("--tsp-ref", o.tspRef, "TSP optimum of the base");
  cmd->add_option("--mst-ref", o.mstRef, "MST cost of the base");
  cmd->add_option("--avg-ref", o.avgRef, "mean pairwise distance of the base");
  cmd->add_option("--seed", o.seed, "seed for random:<vertices> inputs");
}

Instance loadInstance(const InstanceOptions& o) {
  const SubgraphKind kind = o.subgraph.empty() ? SubgraphKind::Tour : parseSubgraphKind(o.subgraph);
  if (o.input.rfind("random:", 0) == 0) {
    RandomSpec spec;
    spec.vertexCount = std::stoi(o.input.substr(7));
    spec.kind = kind;
    spec.budgetFrac = o.budgetFrac;
    spec.radiusFrac = o.radiusFrac;
    spec.capacity = static_cast<int>(roundHalfAway(o.capacityFrac * spec.vertexCount));
    spec.coverageRatio = o.coverageRatio;
    return randomInstance(spec, o.seed);
  }
  std::ifstream in(o.input);
  if (!in) throw std::runtime_error("cannot open " + o.input);
  if (std::filesystem::path(o.input).extension() == ".json") {
    Instance inst = readInstanceJson(in);
    return o.subgraph.empty() ? inst : inst.withKind(kind);
  }
  const BaseInstance base = parseBase(in);
  GeneratorParams params;
  params.kind = kind;
  params.budgetFrac = o.budgetFrac;
  params.radiusFrac = o.radiusFrac;
  params.capacityFrac = o.capacityFrac;
  params.coverageRatio = o.coverageRatio;
  params.tsplibRounding = o.tsplibRounding;
  params.reference = {o.tspRef, o.mstRef, o.avgRef};
  return generate(base, params);
}

int defaultThreads() {
  if (const char* env = std::getenv("BPCCSP_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

int exitCodeFor(SolutionStatus status) {
  switch (status) {
    case SolutionStatus::Optimal:
    case SolutionStatus::Feasible: return kExitOk;
    case SolutionStatus::Infeasible: return kExitInfeasible;
    case SolutionStatus::TimeLimit: return kExitTimeLimit;
  }
  return kExitError;
}

template <class Fn>
void withOutput(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budgeted prize-collecting covering subgraph solver", "bpccsp"};
  app.require_subcommand(1);

  // solve
  auto* solveCmd = app.add_subcommand("solve", "solve an instance exactly");
  InstanceOptions solveIn;
  addInstanceOptions(solveCmd, solveIn);
  std::string method = "bnc", symmetry, output, format = "text", lpDump;
  double timeLimit = 3600.0;
  int threads = defaultThreads();
  bool deterministic = false, verbose = false, minCutAll = false;
  solveCmd->add_option("--method", method, "bnc | benders")->check(CLI::IsMember({"bnc", "benders"}));
  solveCmd->add_option("--time-limit", timeLimit, "wall-clock seconds")->check(CLI::PositiveNumber);
  solveCmd->add_option("--symmetry", symmetry, "upfront | lazy | off")->check(CLI::IsMember({"upfront", "lazy", "off"}));
  solveCmd->add_option("--threads", threads, "worker threads (default $BPCCSP_THREADS or 1)")->check(CLI::PositiveNumber);
  solveCmd->add_flag("--deterministic", deterministic, "single worker, reproducible search");
  solveCmd->add_flag("--min-cut-all-nodes", minCutAll, "separate min cuts at every node, not only the root");
  solveCmd->add_option("--output,-o", output, "report file (default stdout)");
  solveCmd->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  solveCmd->add_option("--dump-lp", lpDump, "write the initial relaxation in LP format");
  solveCmd->add_flag("--verbose,-v", verbose, "progress lines on stderr");

  // generate
  auto* genCmd = app.add_subcommand("generate", "build an instance from a base file");
  InstanceOptions genIn;
  addInstanceOptions(genCmd, genIn);
  std::string genOutput;
  genCmd->add_option("--output,-o", genOutput, "instance JSON file (default stdout)");

  // verify
  auto* verifyCmd = app.add_subcommand("verify", "check a solution report against an instance");
  std::string verifyInstance, verifySolution;
  bool verifyOracle = false;
  verifyCmd->add_option("--instance", verifyInstance, "instance JSON")->required();
  verifyCmd->add_option("--solution", verifySolution, "solution report (text or JSON)")->required();
  verifyCmd->add_flag("--oracle", verifyOracle, "also compare with exhaustive enumeration (at most 14 vertices)");

  // bench
  auto* benchCmd = app.add_subcommand("bench", "run both methods over a manifest");
  std::string manifest, benchOutput, recordsOutput;
  double benchLimit = 60.0;
  benchCmd->add_option("--manifest", manifest, "manifest file")->required();
  benchCmd->add_option("--time-limit", benchLimit, "per-solve wall-clock seconds")->check(CLI::PositiveNumber);
  benchCmd->add_option("--output,-o", benchOutput, "report file (default stdout)");
  benchCmd->add_option("--records", recordsOutput, "per-run CSV file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solveCmd) {
      const Instance inst = loadInstance(solveIn);
      SolverConfig config;
      config.method = parseMethod(method);
      config.timeLimit = timeLimit;
      if (!symmetry.empty()) config.symmetry = parseSymmetryPolicy(symmetry);
      config.deterministic = deterministic || threads <= 1;
      config.workerCount = config.deterministic ? 1 : threads;
      config.minCutAllNodes = minCutAll;
      if (verbose) config.log = &err;
      if (!lpDump.empty()) {
        ModelHandle h = config.method == Method::Benders ? buildBendersMaster(inst, inst.kind())
                                                         : buildCompact(inst, inst.kind());
        addSymmetryBreaking(h, config.effectiveSymmetry(inst.kind()), config.tieBreak);
        withOutput(lpDump, out, [&](std::ostream& o) { lp::writeLpFormat(h.model, o); });
      }
      const Solution sol = solve(inst, config);
      withOutput(output, out, [&](std::ostream& o) {
        if (format == "json") writeSolutionJson(sol, inst, o);
        else writeSolution(sol, inst, o);
      });
      return exitCodeFor(sol.status);
    }
    if (*genCmd) {
      const Instance inst = loadInstance(genIn);
      withOutput(genOutput, out, [&](std::ostream& o) { writeInstanceJson(inst, o); });
      return kExitOk;
    }
    if (*verifyCmd) {
      std::ifstream ii(verifyInstance);
      if (!ii) throw std::runtime_error("cannot open " + verifyInstance);
      const Instance inst = readInstanceJson(ii);
      std::ifstream si(verifySolution);
      if (!si) throw std::runtime_error("cannot open " + verifySolution);
      const bool json = si.peek() == '{';
      const Solution sol = json ? readSolutionJson(si) : readSolution(si);
      int code = kExitOk;
      if (sol.status == SolutionStatus::Infeasible && !sol.hasStructure()) {
        out << "no structure to check (status infeasible)\n";
      } else {
        const auto issues = checkSolution(inst, sol);
        for (const auto& issue : issues) out << "violation: " << issue << '\n';
        if (!issues.empty()) code = 1;
        else out << "ok\n";
      }
      if (verifyOracle) {
        const auto oracle = solveExhaustive(inst);
        const bool agree = oracle.feasible ? std::abs(oracle.objective - sol.objective) <= 1e-6 &&
                                                 sol.status != SolutionStatus::Infeasible
                                           : sol.status == SolutionStatus::Infeasible;
        out << "oracle " << (oracle.feasible ? std::to_string(oracle.objective) : std::string("infeasible"))
            << (agree ? " agrees\n" : " disagrees\n");
        if (!agree && sol.status == SolutionStatus::Optimal) code = 1;
      }
      return code;
    }
    if (*benchCmd) {
      std::ifstream mi(manifest);
      if (!mi) throw std::runtime_error("cannot open " + manifest);
      const auto entries = parseManifest(mi, std::filesystem::path(manifest).parent_path().string());
      BenchOptions options;
      options.timeLimit = benchLimit;
      options.log = &err;
      const auto records = runBench(entries, options);
      withOutput(benchOutput, out, [&](std::ostream& o) { writeReport(records, o); });
      if (!recordsOutput.empty()) withOutput(recordsOutput, out, [&](std::ostream& o) { writeRunRecords(records, o); });
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace bpc
