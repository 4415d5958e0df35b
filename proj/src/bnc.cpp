#include "bpccsp/bnc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <queue>
#include <sstream>
#include <thread>

#include "bpccsp/benders.hpp"

namespace bpc {

namespace {
constexpr double kFathomTol = 1e-6;
constexpr double kCandidateSlack = 1e-5;
}  // namespace

std::string toString(Method method) { return method == Method::Benders ? "benders" : "bnc"; }

Method parseMethod(const std::string& text) {
  if (text == "bnc" || text == "branch-and-cut") return Method::BranchAndCut;
  if (text == "benders") return Method::Benders;
  throw std::invalid_argument("unknown method '" + text + "'");
}

SymmetryPolicy SolverConfig::effectiveSymmetry(SubgraphKind kind) const {
  if (symmetry) return *symmetry;
  return kind == SubgraphKind::Tree ? SymmetryPolicy::Upfront : SymmetryPolicy::Lazy;
}

// ---------------------------------------------------------------------------

int CutPool::add(std::vector<Cut> cuts) {
  std::lock_guard lock(mutex_);
  int added = 0;
  for (auto& cut : cuts) {
    if (!keys_.insert(cut.key).second) continue;
    cuts_.push_back(std::move(cut));
    ++added;
  }
  return added;
}

std::vector<lp::Row> CutPool::rowsSince(std::size_t& from) const {
  std::lock_guard lock(mutex_);
  std::vector<lp::Row> rows;
  for (; from < cuts_.size(); ++from) rows.push_back(cuts_[from].row);
  return rows;
}

std::vector<Cut> CutPool::snapshot() const {
  std::lock_guard lock(mutex_);
  return cuts_;
}

std::map<std::string, long long> CutPool::countsByFamily() const {
  std::lock_guard lock(mutex_);
  std::map<std::string, long long> counts;
  for (const auto& cut : cuts_) ++counts[toString(cut.family)];
  return counts;
}

bool CutPool::contains(const std::string& key) const {
  std::lock_guard lock(mutex_);
  return keys_.count(key) > 0;
}

// ---------------------------------------------------------------------------

NodeProcessor::NodeProcessor(const ModelHandle& handle, const SolverConfig& config, CutPool& pool)
    : handle_(handle),
      config_(config),
      pool_(pool),
      lp_(std::make_unique<lp::SimplexEngine>(handle.model)),
      branchColumns_(handle.branchColumns()) {}

void NodeProcessor::applyFixings(const Node& node) {
  for (int col : fixedColumns_) {
    const auto& c = handle_.model.columns[col];
    lp_->setBounds(col, c.lower, c.upper);
  }
  fixedColumns_.clear();
  for (auto [col, value] : node.fixings) {
    lp_->setBounds(col, value, value);
    fixedColumns_.push_back(col);
  }
}

void NodeProcessor::syncPool() {
  auto rows = pool_.rowsSince(poolSynced_);
  if (!rows.empty()) lp_->addRows(rows);
}

int NodeProcessor::chooseBranchColumn(const std::vector<double>& point, double& value) const {
  const Instance& inst = *handle_.instance;
  int best = -1;
  double bestScore = kIntegralityTol, bestPrize = -1.0;
  for (int v = 1; v < inst.vertexCount(); ++v) {
    const int col = handle_.vars.y[v];
    const double val = point[col];
    const double score = std::min(val - std::floor(val), std::ceil(val) - val);
    if (score <= kIntegralityTol) continue;
    const double prize = inst.prize(v);
    if (best < 0 || score > bestScore + 1e-9 || (std::abs(score - bestScore) <= 1e-9 && prize > bestPrize)) {
      best = col;
      bestScore = score;
      bestPrize = prize;
    }
  }
  if (best >= 0) {
    value = point[best];
    return best;
  }
  for (int e = 0; e < inst.edgeCount(); ++e) {
    const int col = handle_.vars.x[e];
    const double val = point[col];
    const double score = std::min(val - std::floor(val), std::ceil(val) - val);
    if (score <= kIntegralityTol) continue;
    if (best < 0 || score > bestScore + 1e-9) {
      best = col;
      bestScore = score;
    }
  }
  if (best >= 0) value = point[best];
  return best;
}

Solution NodeProcessor::candidateFromPoint(const std::vector<double>& point) const {
  const Instance& inst = *handle_.instance;
  const int n = inst.vertexCount();
  Solution sol;
  sol.status = SolutionStatus::Feasible;
  std::vector<char> visited(n, 0);
  visited[kDepot] = 1;
  for (int v = 1; v < n; ++v) visited[v] = point[handle_.vars.y[v]] > 0.5;
  for (int v = 0; v < n; ++v) {
    if (visited[v]) sol.visited.push_back(v);
  }
  for (int e = 0; e < inst.edgeCount(); ++e) {
    if (point[handle_.vars.x[e]] > 0.5) sol.edges.push_back(e);
  }
  sol.coverage = bestCoverage(inst, visited);
  sol.objective = solutionValue(inst, sol.visited, sol.coverage);
  sol.bound = sol.objective;
  return sol;
}

NodeOutcome NodeProcessor::process(const Node& node, double incumbent, bool isRoot, Clock::time_point deadline) {
  NodeOutcome out;
  applyFixings(node);
  syncPool();
  int minCutRounds = 0;
  const bool benders = handle_.mode == ModelMode::BendersMaster;
  const bool lazySymmetry = handle_.symmetry == SymmetryPolicy::Lazy;

  while (true) {
    if (Clock::now() >= deadline) {
      out.kind = NodeOutcome::Kind::TimeLimit;
      out.bound = std::min(node.bound, out.bound == -lp::kInf ? node.bound : out.bound);
      return out;
    }
    lp::Solution sol;
    try {
      sol = lp_->solve();
    } catch (const lp::NumericalFailure& err) {
      throw lp::NumericalFailure(std::string(err.what()) + " (node " + std::to_string(node.id) + ", depth " +
                                 std::to_string(node.depth) + ")");
    }
    lpIterations_ += sol.iterations;
    if (sol.status == lp::Status::Infeasible) {
      out.kind = NodeOutcome::Kind::Fathomed;
      out.bound = -lp::kInf;
      return out;
    }
    if (sol.status == lp::Status::Unbounded) {
      throw lp::NumericalFailure("unbounded relaxation at node " + std::to_string(node.id));
    }
    out.bound = sol.objective;
    if (sol.objective <= incumbent + kFathomTol) {
      out.kind = NodeOutcome::Kind::Fathomed;
      return out;
    }
    const auto& point = sol.primal;
    bool integral = true;
    for (int col : branchColumns_) {
      const double v = point[col];
      if (std::min(v - std::floor(v), std::ceil(v) - v) > kIntegralityTol) {
        integral = false;
        break;
      }
    }

    std::vector<Cut> cuts;
    const auto support = SupportGraph::build(handle_, point);
    auto bendersStep = [&] {
      if (!benders) return;
      const auto mp = MasterPoint::fromLp(handle_, point);
      const auto res = checkSubproblem(*handle_.instance, mp);
      if (!res.feasible && res.violation(mp) > kViolationTol) cuts.push_back(bendersCut(handle_, res));
    };
    if (config_.bendersBeforeConnectivity) bendersStep();
    if (cuts.empty()) {
      auto comp = separateComponents(handle_, support, point);
      cuts.insert(cuts.end(), std::make_move_iterator(comp.begin()), std::make_move_iterator(comp.end()));
    }
    if (!config_.bendersBeforeConnectivity && cuts.empty()) bendersStep();
    if (cuts.empty() && !integral && (isRoot || config_.minCutAllNodes) && minCutRounds < config_.rootMinCutRounds &&
        support.connected(*handle_.instance)) {
      ++minCutRounds;
      auto mc = separateMinCut(handle_, support, point);
      cuts = std::move(mc.cuts);
    }
    if (cuts.empty() && integral && lazySymmetry) {
      cuts = handle_.kind == SubgraphKind::Tour ? separateQuadSym(handle_, point) : separateTriangleSym(handle_, point);
    }

    if (!cuts.empty()) {
      const std::size_t before = poolSynced_;
      const int added = pool_.add(std::move(cuts));
      syncPool();
      out.cutsAdded += added;
      ++out.separationRounds;
      // cuts already in this LP cannot be violated beyond tolerance; only loop on new rows
      if (poolSynced_ > before) continue;
    }

    if (integral) {
      Solution cand = candidateFromPoint(point);
      const auto issues = checkSolution(*handle_.instance, cand);
      if (!issues.empty()) {
        throw std::logic_error("integral candidate rejected by checkSolution at node " + std::to_string(node.id) +
                               ": " + issues.front());
      }
      if (cand.objective < sol.objective - kCandidateSlack) {
        std::ostringstream msg;
        msg << "integral relaxation value " << sol.objective << " exceeds candidate value " << cand.objective
            << " at node " << node.id;
        throw std::logic_error(msg.str());
      }
      out.kind = NodeOutcome::Kind::Integral;
      out.candidate = std::move(cand);
      return out;
    }
    double value = 0.0;
    const int col = chooseBranchColumn(point, value);
    if (col < 0) throw std::logic_error("fractional point without a branching candidate");
    out.kind = NodeOutcome::Kind::Branch;
    out.branchColumn = col;
    out.branchValue = value;
    return out;
  }
}

// ---------------------------------------------------------------------------

namespace {

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    // priority_queue keeps the "largest" on top: best bound, then deepest, then oldest
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class Driver {
 public:
  Driver(const Instance& instance, const SolverConfig& config) : instance_(instance), config_(config) {
    handle_ = config.method == Method::Benders ? buildBendersMaster(instance, instance.kind())
                                               : buildCompact(instance, instance.kind());
    addSymmetryBreaking(handle_, config.effectiveSymmetry(instance.kind()), config.tieBreak);
  }

  SolveResult run();

 private:
  void worker(NodeProcessor& proc);
  double globalBoundLocked() const;
  void logProgress(bool force);

  const Instance& instance_;
  const SolverConfig& config_;
  ModelHandle handle_;
  CutPool pool_;

  std::mutex mutex_;
  std::condition_variable cv_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::multiset<double> inProcess_;
  int busy_ = 0;
  bool stop_ = false;
  bool timedOut_ = false;
  long long nextId_ = 0;
  long long nodes_ = 0;
  std::optional<Solution> incumbent_;
  std::atomic<double> incumbentValue_{-lp::kInf};
  double rootBound_ = lp::kInf;
  bool rootDone_ = false;
  std::exception_ptr failure_;
  Clock::time_point start_, deadline_, lastLog_;
};

double Driver::globalBoundLocked() const {
  double bound = incumbent_ ? incumbent_->objective : -lp::kInf;
  if (!open_.empty()) bound = std::max(bound, open_.top().bound);
  if (!inProcess_.empty()) bound = std::max(bound, *inProcess_.rbegin());
  return bound;
}

void Driver::logProgress(bool force) {
  if (!config_.log) return;
  const auto now = Clock::now();
  if (!force && std::chrono::duration<double>(now - lastLog_).count() < config_.logInterval) return;
  lastLog_ = now;
  const double bound = globalBoundLocked();
  const double inc = incumbent_ ? incumbent_->objective : -lp::kInf;
  char buf[256];
  const double gap = incumbent_ && std::isfinite(bound) ? (bound - inc) / std::max(1.0, std::abs(bound)) : lp::kInf;
  std::snprintf(buf, sizeof buf, "t=%.2f nodes=%lld open=%zu incumbent=%.6f bound=%.6f gap=%.6f cuts=",
                std::chrono::duration<double>(now - start_).count(), nodes_, open_.size(), inc, bound, gap);
  std::string line = buf;
  bool first = true;
  for (const auto& [family, count] : pool_.countsByFamily()) {
    line += (first ? "" : ",") + family + ":" + std::to_string(count);
    first = false;
  }
  if (first) line += "-";
  *config_.log << line << '\n';
}

void Driver::worker(NodeProcessor& proc) {
  while (true) {
    Node node;
    bool isRoot = false;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [&] { return stop_ || !open_.empty() || busy_ == 0; });
      if (stop_ || (open_.empty() && busy_ == 0)) {
        cv_.notify_all();
        return;
      }
      if (Clock::now() >= deadline_) {
        stop_ = timedOut_ = true;
        cv_.notify_all();
        return;
      }
      node = open_.top();
      open_.pop();
      if (node.bound <= incumbentValue_.load() + kFathomTol) {
        ++nodes_;
        cv_.notify_all();
        continue;
      }
      isRoot = node.id == 0;
      ++busy_;
      inProcess_.insert(node.bound);
    }

    NodeOutcome out;
    std::exception_ptr err;
    try {
      out = proc.process(node, incumbentValue_.load(), isRoot, deadline_);
    } catch (...) {
      err = std::current_exception();
    }

    std::lock_guard lock(mutex_);
    --busy_;
    inProcess_.erase(inProcess_.find(node.bound));
    if (err) {
      if (!failure_) failure_ = err;
      stop_ = true;
      cv_.notify_all();
      return;
    }
    ++nodes_;
    if (isRoot) {
      rootDone_ = true;
      rootBound_ = out.kind == NodeOutcome::Kind::Fathomed && out.bound == -lp::kInf ? -lp::kInf : out.bound;
    }
    switch (out.kind) {
      case NodeOutcome::Kind::TimeLimit:
        --nodes_;
        node.bound = std::min(node.bound, out.bound);
        open_.push(node);
        stop_ = timedOut_ = true;
        break;
      case NodeOutcome::Kind::Fathomed:
        break;
      case NodeOutcome::Kind::Integral:
        if (!incumbent_ || out.candidate->objective > incumbent_->objective) {
          incumbent_ = std::move(out.candidate);
          incumbentValue_ = incumbent_->objective;
        }
        break;
      case NodeOutcome::Kind::Branch: {
        const double bound = std::min(node.bound, out.bound);
        for (double fix : {1.0, 0.0}) {
          Node child;
          child.id = ++nextId_;
          child.depth = node.depth + 1;
          child.bound = bound;
          child.fixings = node.fixings;
          child.fixings.emplace_back(out.branchColumn, fix);
          open_.push(std::move(child));
        }
        break;
      }
    }
    logProgress(false);
    cv_.notify_all();
  }
}

SolveResult Driver::run() {
  start_ = lastLog_ = Clock::now();
  const auto limit = std::chrono::duration<double>(std::max(0.0, config_.timeLimit));
  deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(limit);

  Node root;
  root.id = 0;
  root.bound = lp::kInf;
  open_.push(root);

  const int workers = config_.deterministic ? 1 : std::max(1, config_.workerCount);
  std::vector<std::unique_ptr<NodeProcessor>> procs;
  for (int i = 0; i < workers; ++i) procs.push_back(std::make_unique<NodeProcessor>(handle_, config_, pool_));
  if (workers == 1) {
    worker(*procs[0]);
  } else {
    std::vector<std::thread> threads;
    for (auto& p : procs) threads.emplace_back([this, &p] { worker(*p); });
    for (auto& t : threads) t.join();
  }
  if (failure_) std::rethrow_exception(failure_);

  SolveResult result;
  Solution& sol = result.solution;
  {
    std::lock_guard lock(mutex_);
    logProgress(true);
    if (incumbent_) sol = *incumbent_;
    if (timedOut_) {
      sol.status = SolutionStatus::TimeLimit;
      const double bound = globalBoundLocked();
      sol.bound = incumbent_ ? std::max(bound, incumbent_->objective) : bound;
    } else if (incumbent_) {
      sol.status = SolutionStatus::Optimal;
      sol.bound = sol.objective;
    } else {
      sol.status = SolutionStatus::Infeasible;
      sol.bound = -lp::kInf;
    }
    if (!incumbent_) {
      sol.visited.clear();
      sol.edges.clear();
      sol.coverage.clear();
      sol.objective = 0.0;
    }
  }
  long long iterations = 0;
  for (const auto& p : procs) iterations += p->lpIterations();
  sol.stats.nodes = nodes_;
  sol.stats.lpIterations = iterations;
  sol.stats.cutsByFamily = pool_.countsByFamily();
  sol.stats.wallSeconds = std::chrono::duration<double>(Clock::now() - start_).count();
  sol.stats.rootBound = rootDone_ ? rootBound_ : sol.bound;
  if (config_.recordCuts) result.cuts = pool_.snapshot();
  return result;
}

}  // namespace

SolveResult solveDetailed(const Instance& instance, const SolverConfig& config) {
  if (!(config.timeLimit > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (config.method == Method::Benders && !instance.hasIndependentPrizes()) throw DependentPrizesError();
  const auto problems = validate(instance);
  if (!problems.empty()) throw StructuralError("invalid instance: " + problems.front());
  Driver driver(instance, config);
  return driver.run();
}

Solution solve(const Instance& instance, const SolverConfig& config) { return solveDetailed(instance, config).solution; }

}  // namespace bpc
