#include "bpccsp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

namespace bpc::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;
constexpr int kRefactorPeriod = 64;

}  // namespace

int Model::addColumn(Column column) {
  columns.push_back(std::move(column));
  return columnCount() - 1;
}

int Model::addRow(Row row) {
  checkRow(row, columnCount());
  rows.push_back(std::move(row));
  return rowCount() - 1;
}

void checkRow(const Row& row, int columnCount) {
  std::set<int> seen;
  for (const auto& t : row.terms) {
    if (t.column < 0 || t.column >= columnCount) {
      throw std::invalid_argument("row '" + row.name + "' references unknown column " + std::to_string(t.column));
    }
    if (!seen.insert(t.column).second) {
      throw std::invalid_argument("row '" + row.name + "' repeats column " + std::to_string(t.column));
    }
  }
}

SimplexEngine::SimplexEngine(Model model) : model_(std::move(model)) {
  const int n = model_.columnCount();
  colEntries_.assign(n, {});
  lower_.resize(n);
  upper_.resize(n);
  cost_.resize(n);
  x_.resize(n);
  state_.resize(n);
  basisPos_.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    const auto& c = model_.columns[j];
    if (c.lower > c.upper) throw std::invalid_argument("column '" + c.name + "' has empty bounds");
    lower_[j] = c.lower;
    upper_[j] = c.upper;
    cost_[j] = -c.objective;
    resetNonbasicValue(j);
  }
  auto rows = std::move(model_.rows);
  model_.rows.clear();
  for (auto& r : rows) {
    checkRow(r, n);
    appendRowStructures(r);
    model_.rows.push_back(std::move(r));
  }
  binv_.clear();
  needInvert_ = true;
}

std::unique_ptr<Backend> SimplexEngine::clone() const { return std::make_unique<SimplexEngine>(*this); }

void SimplexEngine::resetNonbasicValue(int j) {
  if (std::isfinite(lower_[j])) {
    state_[j] = (state_[j] == VarState::AtUpper && std::isfinite(upper_[j])) ? VarState::AtUpper : VarState::AtLower;
  } else if (std::isfinite(upper_[j])) {
    state_[j] = VarState::AtUpper;
  } else {
    state_[j] = VarState::Free;
  }
  if (lower_[j] == upper_[j]) state_[j] = VarState::AtLower;
  x_[j] = state_[j] == VarState::AtLower ? lower_[j] : state_[j] == VarState::AtUpper ? upper_[j] : 0.0;
}

void SimplexEngine::appendRowStructures(const Row& row) {
  const int i = static_cast<int>(rhs_.size());
  for (const auto& t : row.terms) {
    if (t.coef != 0.0) colEntries_[t.column].push_back({i, t.coef});
  }
  rhs_.push_back(row.rhs);
  double lo = 0.0, up = 0.0;
  switch (row.relation) {
    case Relation::LessEqual: lo = 0.0; up = kInf; break;
    case Relation::GreaterEqual: lo = -kInf; up = 0.0; break;
    case Relation::Equal: lo = 0.0; up = 0.0; break;
  }
  lower_.push_back(lo);
  upper_.push_back(up);
  cost_.push_back(0.0);
  // slack starts basic with the value that satisfies the row
  double activity = 0.0;
  for (const auto& t : row.terms) activity += t.coef * x_[t.column];
  x_.push_back(row.rhs - activity);
  state_.push_back(VarState::Basic);
  const int slack = static_cast<int>(x_.size()) - 1;
  basisPos_.push_back(static_cast<int>(basis_.size()));
  basis_.push_back(slack);
}

void SimplexEngine::addRows(const std::vector<Row>& rows) {
  const int n = model_.columnCount();
  for (const auto& r : rows) checkRow(r, n);
  const int oldM = rowCount();
  const bool extend = !needInvert_ && static_cast<int>(binv_.size()) == oldM * oldM;
  for (const auto& r : rows) {
    appendRowStructures(r);
    model_.rows.push_back(r);
  }
  const int m = rowCount();
  if (!extend) {
    needInvert_ = true;
    return;
  }
  // [B 0; R I]^-1 = [B^-1 0; -R B^-1 I]
  std::vector<double> next(static_cast<std::size_t>(m) * m, 0.0);
  for (int p = 0; p < oldM; ++p) {
    std::copy_n(&binv_[static_cast<std::size_t>(p) * oldM], oldM, &next[static_cast<std::size_t>(p) * m]);
  }
  for (int k = oldM; k < m; ++k) {
    double* out = &next[static_cast<std::size_t>(k) * m];
    out[k] = 1.0;
    for (const auto& t : model_.rows[k].terms) {
      const int p = basisPos_[t.column];
      if (p < 0 || p >= oldM || t.coef == 0.0) continue;
      const double* src = &binv_[static_cast<std::size_t>(p) * oldM];
      for (int i = 0; i < oldM; ++i) out[i] -= t.coef * src[i];
    }
  }
  binv_ = std::move(next);
}

void SimplexEngine::setBounds(int column, double lower, double upper) {
  if (column < 0 || column >= columnCount()) throw std::invalid_argument("unknown column");
  if (lower > upper) throw std::invalid_argument("empty bounds");
  lower_[column] = lower;
  upper_[column] = upper;
  if (state_[column] != VarState::Basic) resetNonbasicValue(column);
}

std::pair<double, double> SimplexEngine::bounds(int column) const { return {lower_[column], upper_[column]}; }

void SimplexEngine::invert() {
  const int m = rowCount();
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int p = 0; p < m; ++p) {
      const int j = basis_[p];
      if (j < model_.columnCount()) {
        for (const auto& t : colEntries_[j]) mat[static_cast<std::size_t>(t.column) * m + p] = t.coef;
      } else {
        mat[static_cast<std::size_t>(j - model_.columnCount()) * m + p] = 1.0;
      }
      inv[static_cast<std::size_t>(p) * m + p] = 1.0;
    }
    std::vector<int> pivotRow(m, -1);
    std::vector<char> rowUsed(m, 0);
    std::vector<int> bad;
    for (int p = 0; p < m; ++p) {
      int best = -1;
      double bestAbs = kSingularTol;
      for (int r = 0; r < m; ++r) {
        if (rowUsed[r]) continue;
        const double a = std::abs(mat[static_cast<std::size_t>(r) * m + p]);
        if (a > bestAbs) {
          bestAbs = a;
          best = r;
        }
      }
      if (best < 0) {
        bad.push_back(p);
        continue;
      }
      rowUsed[best] = 1;
      pivotRow[p] = best;
      double* prow = &mat[static_cast<std::size_t>(best) * m];
      double* pinv = &inv[static_cast<std::size_t>(best) * m];
      const double scale = 1.0 / prow[p];
      for (int c = 0; c < m; ++c) {
        prow[c] *= scale;
        pinv[c] *= scale;
      }
      for (int r = 0; r < m; ++r) {
        if (r == best) continue;
        double* row = &mat[static_cast<std::size_t>(r) * m];
        const double f = row[p];
        if (f == 0.0) continue;
        double* irow = &inv[static_cast<std::size_t>(r) * m];
        for (int c = p; c < m; ++c) row[c] -= f * prow[c];
        for (int c = 0; c < m; ++c) irow[c] -= f * pinv[c];
      }
    }
    if (bad.empty()) {
      binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
      for (int p = 0; p < m; ++p) {
        std::copy_n(&inv[static_cast<std::size_t>(pivotRow[p]) * m], m, &binv_[static_cast<std::size_t>(p) * m]);
      }
      updatesSinceInvert_ = 0;
      needInvert_ = false;
      return;
    }
    // swap dependent columns for slacks of the unpivoted rows
    std::vector<int> freeRows;
    for (int r = 0; r < m; ++r) {
      if (!rowUsed[r]) freeRows.push_back(r);
    }
    for (std::size_t k = 0; k < bad.size(); ++k) {
      const int p = bad[k];
      const int out = basis_[p];
      const int slack = model_.columnCount() + freeRows[k];
      if (basisPos_[slack] >= 0) throw NumericalFailure("basis repair failed");
      basisPos_[out] = -1;
      state_[out] = VarState::AtLower;
      resetNonbasicValue(out);
      basis_[p] = slack;
      basisPos_[slack] = p;
      state_[slack] = VarState::Basic;
    }
  }
  throw NumericalFailure("singular basis could not be repaired");
}

void SimplexEngine::recomputeBasicValues() {
  const int m = rowCount();
  const int n = model_.columnCount();
  std::vector<double> r(rhs_);
  for (int j = 0; j < n; ++j) {
    if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
    for (const auto& t : colEntries_[j]) r[t.column] -= t.coef * x_[j];
  }
  for (int i = 0; i < m; ++i) {
    const int j = n + i;
    if (state_[j] != VarState::Basic) r[i] -= x_[j];
  }
  for (int p = 0; p < m; ++p) {
    const double* row = &binv_[static_cast<std::size_t>(p) * m];
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += row[i] * r[i];
    x_[basis_[p]] = v;
  }
}

void SimplexEngine::ftran(int j, std::vector<double>& alpha) const {
  const int m = rowCount();
  alpha.assign(m, 0.0);
  if (j < model_.columnCount()) {
    for (const auto& t : colEntries_[j]) {
      for (int p = 0; p < m; ++p) alpha[p] += binv_[static_cast<std::size_t>(p) * m + t.column] * t.coef;
    }
  } else {
    const int i = j - model_.columnCount();
    for (int p = 0; p < m; ++p) alpha[p] = binv_[static_cast<std::size_t>(p) * m + i];
  }
}

void SimplexEngine::btran(const std::vector<double>& costB, std::vector<double>& pi) const {
  const int m = rowCount();
  pi.assign(m, 0.0);
  for (int p = 0; p < m; ++p) {
    if (costB[p] == 0.0) continue;
    const double* row = &binv_[static_cast<std::size_t>(p) * m];
    for (int i = 0; i < m; ++i) pi[i] += costB[p] * row[i];
  }
}

double SimplexEngine::columnDot(int j, const std::vector<double>& pi) const {
  if (j >= model_.columnCount()) return pi[j - model_.columnCount()];
  double s = 0.0;
  for (const auto& t : colEntries_[j]) s += pi[t.column] * t.coef;
  return s;
}

void SimplexEngine::pivotUpdate(int leaveRow, const std::vector<double>& alpha) {
  const int m = rowCount();
  double* prow = &binv_[static_cast<std::size_t>(leaveRow) * m];
  const double scale = 1.0 / alpha[leaveRow];
  for (int i = 0; i < m; ++i) prow[i] *= scale;
  for (int p = 0; p < m; ++p) {
    if (p == leaveRow || alpha[p] == 0.0) continue;
    double* row = &binv_[static_cast<std::size_t>(p) * m];
    const double f = alpha[p];
    for (int i = 0; i < m; ++i) row[i] -= f * prow[i];
  }
  ++updatesSinceInvert_;
}

double SimplexEngine::infeasibility() const {
  double total = 0.0;
  for (int j : basis_) {
    if (x_[j] < lower_[j] - kFeasibilityTol) total += lower_[j] - x_[j];
    else if (x_[j] > upper_[j] + kFeasibilityTol) total += x_[j] - upper_[j];
  }
  return total;
}

// Returns true when the phase reached optimality, false on unboundedness.
bool SimplexEngine::runPhase(bool phaseOne, long long& iterations) {
  const int m = rowCount();
  const int total = totalColumns();
  std::vector<double> costB(m), pi, alpha;
  int degenerateRun = 0;
  const long long limit = iterationLimit_ > 0 ? iterationLimit_ : 100LL * total + 10000;

  while (true) {
    if (iterations >= limit) throw NumericalFailure("simplex iteration limit reached");
    if (updatesSinceInvert_ >= kRefactorPeriod) {
      invert();
      recomputeBasicValues();
    }
    bool anyInfeasible = false;
    for (int p = 0; p < m; ++p) {
      const int j = basis_[p];
      if (phaseOne) {
        if (x_[j] < lower_[j] - kFeasibilityTol) costB[p] = -1.0, anyInfeasible = true;
        else if (x_[j] > upper_[j] + kFeasibilityTol) costB[p] = 1.0, anyInfeasible = true;
        else costB[p] = 0.0;
      } else {
        costB[p] = cost_[j];
      }
    }
    if (phaseOne && !anyInfeasible) return true;
    btran(costB, pi);

    const bool bland = degenerateRun >= degeneracyThreshold_;
    int enter = -1;
    double enterDir = 0.0;
    double bestScore = 0.0;
    for (int j = 0; j < total; ++j) {
      if (state_[j] == VarState::Basic || lower_[j] == upper_[j]) continue;
      const double d = (phaseOne ? 0.0 : cost_[j]) - columnDot(j, pi);
      double dir = 0.0;
      if (state_[j] == VarState::AtLower && d < -kOptimalityTol) dir = 1.0;
      else if (state_[j] == VarState::AtUpper && d > kOptimalityTol) dir = -1.0;
      else if (state_[j] == VarState::Free && std::abs(d) > kOptimalityTol) dir = d < 0 ? 1.0 : -1.0;
      if (dir == 0.0) continue;
      if (bland) {
        enter = j;
        enterDir = dir;
        break;
      }
      if (std::abs(d) > bestScore) {
        bestScore = std::abs(d);
        enter = j;
        enterDir = dir;
      }
    }
    if (enter < 0) {
      if (phaseOne) farkas_ = pi;
      return true;
    }

    ftran(enter, alpha);
    double bestT = kInf;
    int leave = -1;
    double leaveBound = 0.0;
    double leavePivot = 0.0;
    for (int p = 0; p < m; ++p) {
      if (std::abs(alpha[p]) <= kPivotTol) continue;
      const int j = basis_[p];
      const double rate = -enterDir * alpha[p];
      const double xb = x_[j];
      double t = kInf, bound = 0.0;
      const bool below = phaseOne && xb < lower_[j] - kFeasibilityTol;
      const bool above = phaseOne && xb > upper_[j] + kFeasibilityTol;
      if (below) {
        if (rate > 0) t = (lower_[j] - xb) / rate, bound = lower_[j];
      } else if (above) {
        if (rate < 0) t = (xb - upper_[j]) / -rate, bound = upper_[j];
      } else if (rate < 0) {
        if (std::isfinite(lower_[j])) t = (xb - lower_[j]) / -rate, bound = lower_[j];
      } else {
        if (std::isfinite(upper_[j])) t = (upper_[j] - xb) / rate, bound = upper_[j];
      }
      if (!std::isfinite(t)) continue;
      t = std::max(t, 0.0);
      const double absPivot = std::abs(alpha[p]);
      bool take = false;
      if (leave < 0 || t < bestT - 1e-12) {
        take = true;
      } else if (t <= bestT + 1e-12) {
        take = bland ? basis_[p] < basis_[leave] : absPivot > leavePivot;
      }
      if (take) {
        bestT = t;
        leave = p;
        leaveBound = bound;
        leavePivot = absPivot;
      }
    }
    const double range = upper_[enter] - lower_[enter];
    const bool flip = std::isfinite(range) && range <= bestT;
    if (!flip && leave < 0) {
      if (phaseOne) throw NumericalFailure("phase one lost its blocking variable");
      return false;
    }
    const double step = flip ? range : bestT;
    ++iterations;
    degenerateRun = step <= 1e-12 ? degenerateRun + 1 : 0;

    x_[enter] += enterDir * step;
    for (int p = 0; p < m; ++p) {
      if (alpha[p] != 0.0) x_[basis_[p]] -= enterDir * step * alpha[p];
    }
    if (flip) {
      state_[enter] = enterDir > 0 ? VarState::AtUpper : VarState::AtLower;
      x_[enter] = enterDir > 0 ? upper_[enter] : lower_[enter];
      continue;
    }
    const int out = basis_[leave];
    x_[out] = leaveBound;
    state_[out] = leaveBound == lower_[out] ? VarState::AtLower : VarState::AtUpper;
    if (lower_[out] == upper_[out]) state_[out] = VarState::AtLower;
    basisPos_[out] = -1;
    basis_[leave] = enter;
    basisPos_[enter] = leave;
    state_[enter] = VarState::Basic;
    pivotUpdate(leave, alpha);
  }
}

std::vector<double> SimplexEngine::reducedCosts(std::vector<double>& pi) const {
  const int m = rowCount();
  std::vector<double> costB(m);
  for (int p = 0; p < m; ++p) costB[p] = cost_[basis_[p]];
  btran(costB, pi);
  std::vector<double> d(totalColumns(), 0.0);
  for (int j = 0; j < totalColumns(); ++j) {
    if (state_[j] != VarState::Basic) d[j] = cost_[j] - columnDot(j, pi);
  }
  return d;
}

SimplexEngine::DualResult SimplexEngine::runDual(long long& iterations) {
  const int m = rowCount();
  const int total = totalColumns();
  std::vector<double> pi, alpha, rowAlpha(total);

  // boxed nonbasic columns sit on whichever bound their reduced cost prefers
  auto d = reducedCosts(pi);
  bool moved = false;
  for (int j = 0; j < total; ++j) {
    if (state_[j] == VarState::Basic || lower_[j] == upper_[j]) continue;
    if (std::isfinite(lower_[j]) && std::isfinite(upper_[j])) {
      const VarState want = d[j] < 0.0 ? VarState::AtUpper : VarState::AtLower;
      if (want != state_[j]) {
        state_[j] = want;
        x_[j] = want == VarState::AtUpper ? upper_[j] : lower_[j];
        moved = true;
      }
      continue;
    }
    if (state_[j] == VarState::AtLower && d[j] < -kOptimalityTol) return DualResult::NotApplicable;
    if (state_[j] == VarState::AtUpper && d[j] > kOptimalityTol) return DualResult::NotApplicable;
    if (state_[j] == VarState::Free && std::abs(d[j]) > kOptimalityTol) return DualResult::NotApplicable;
  }
  if (moved) recomputeBasicValues();

  const long long limit = iterations + 20LL * total + 1000;
  while (true) {
    if (iterations >= limit) return DualResult::NotApplicable;
    if (updatesSinceInvert_ >= kRefactorPeriod) {
      invert();
      recomputeBasicValues();
      d = reducedCosts(pi);
    }
    // leaving row: largest violation scaled by the row norm of the inverse
    int leave = -1;
    double worst = 0.0;
    for (int p = 0; p < m; ++p) {
      const int j = basis_[p];
      const double v = std::max(lower_[j] - x_[j], x_[j] - upper_[j]);
      if (v <= kFeasibilityTol) continue;
      const double* row = &binv_[static_cast<std::size_t>(p) * m];
      double norm = 0.0;
      for (int i = 0; i < m; ++i) norm += row[i] * row[i];
      const double score = v * v / std::max(norm, 1e-12);
      if (score > worst) {
        worst = score;
        leave = p;
      }
    }
    if (leave < 0) return DualResult::Feasible;
    const int out = basis_[leave];
    const bool toLower = x_[out] < lower_[out];
    const double* r = &binv_[static_cast<std::size_t>(leave) * m];
    std::vector<double> rv(r, r + m);

    // ratio test over nonbasic columns that move x_out toward its bound
    double maxRatio = kInf;
    for (int j = 0; j < total; ++j) {
      rowAlpha[j] = 0.0;
      if (state_[j] == VarState::Basic || lower_[j] == upper_[j]) continue;
      const double a = columnDot(j, rv);
      rowAlpha[j] = a;
      if (std::abs(a) <= kPivotTol) continue;
      // x_out changes by -a per unit increase of x_j
      const bool up = toLower ? a < 0.0 : a > 0.0;
      const bool ok = state_[j] == VarState::Free || (up ? state_[j] == VarState::AtLower : state_[j] == VarState::AtUpper);
      if (!ok) continue;
      maxRatio = std::min(maxRatio, (std::abs(d[j]) + kOptimalityTol) / std::abs(a));
    }
    if (!std::isfinite(maxRatio)) {
      farkas_ = rv;
      if (toLower) {
        for (double& v : farkas_) v = -v;
      }
      return DualResult::Infeasible;
    }
    int enter = -1;
    double enterAbs = 0.0;
    for (int j = 0; j < total; ++j) {
      const double a = rowAlpha[j];
      if (std::abs(a) <= kPivotTol || state_[j] == VarState::Basic || lower_[j] == upper_[j]) continue;
      const bool up = toLower ? a < 0.0 : a > 0.0;
      const bool ok = state_[j] == VarState::Free || (up ? state_[j] == VarState::AtLower : state_[j] == VarState::AtUpper);
      if (!ok || std::abs(d[j]) / std::abs(a) > maxRatio) continue;
      if (std::abs(a) > enterAbs) {
        enterAbs = std::abs(a);
        enter = j;
      }
    }
    if (enter < 0) return DualResult::NotApplicable;

    ftran(enter, alpha);
    if (std::abs(alpha[leave]) <= kPivotTol) return DualResult::NotApplicable;
    const double target = toLower ? lower_[out] : upper_[out];
    const double delta = (x_[out] - target) / alpha[leave];
    ++iterations;
    x_[enter] += delta;
    for (int p = 0; p < m; ++p) {
      if (alpha[p] != 0.0) x_[basis_[p]] -= delta * alpha[p];
    }
    x_[out] = target;
    state_[out] = toLower ? VarState::AtLower : VarState::AtUpper;
    basisPos_[out] = -1;
    basis_[leave] = enter;
    basisPos_[enter] = leave;
    state_[enter] = VarState::Basic;
    pivotUpdate(leave, alpha);

    // reduced costs: d_j -= (d_enter / a_enter) a_j; the leaving column gets -d_enter / a_enter
    const double ratio = d[enter] / rowAlpha[enter];
    for (int j = 0; j < total; ++j) {
      if (state_[j] != VarState::Basic && j != out) d[j] -= ratio * rowAlpha[j];
    }
    d[enter] = 0.0;
    d[out] = -ratio;
  }
}

Solution SimplexEngine::solve() {
  Solution sol;
  farkas_.clear();
  const int m = rowCount();
  const int n = model_.columnCount();
  if (needInvert_ || static_cast<int>(binv_.size()) != m * m) invert();
  recomputeBasicValues();

  long long iterations = 0;
  if (infeasibility() > 0.0) {
    const auto dual = runDual(iterations);
    if (dual == DualResult::Infeasible) {
      // confirm on a fresh factorization; phase one settles doubtful cases
      invert();
      recomputeBasicValues();
      if (runDual(iterations) == DualResult::Infeasible) {
        sol.status = Status::Infeasible;
        sol.iterations = iterations;
        return sol;
      }
    }
    farkas_.clear();
  }
  for (int round = 0; round < 4; ++round) {
    runPhase(true, iterations);
    if (infeasibility() > 0.0) {
      // confirm on a fresh factorization before declaring infeasibility
      invert();
      recomputeBasicValues();
      runPhase(true, iterations);
      if (infeasibility() > 0.0) {
        sol.status = Status::Infeasible;
        sol.iterations = iterations;
        return sol;
      }
    }
    farkas_.clear();
    if (!runPhase(false, iterations)) {
      sol.status = Status::Unbounded;
      sol.iterations = iterations;
      return sol;
    }
    recomputeBasicValues();
    if (infeasibility() == 0.0) break;
    if (round == 3) throw NumericalFailure("primal drift after refactorization");
    invert();
    recomputeBasicValues();
  }

  std::vector<double> costB(m), pi;
  for (int p = 0; p < m; ++p) costB[p] = cost_[basis_[p]];
  btran(costB, pi);
  sol.status = Status::Optimal;
  sol.iterations = iterations;
  sol.primal.assign(x_.begin(), x_.begin() + n);
  for (int j = 0; j < n; ++j) {
    // snap nonbasic values and clip basic ones into their bounds
    sol.primal[j] = std::clamp(sol.primal[j], lower_[j], upper_[j]);
  }
  sol.dual.resize(m);
  for (int i = 0; i < m; ++i) sol.dual[i] = -pi[i];
  sol.reduced.resize(n);
  for (int j = 0; j < n; ++j) sol.reduced[j] = model_.columns[j].objective + columnDot(j, pi);
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += model_.columns[j].objective * sol.primal[j];
  return sol;
}

void writeLpFormat(const Model& model, std::ostream& out) {
  auto name = [&](int j) {
    const auto& c = model.columns[j].name;
    return c.empty() ? "c" + std::to_string(j) : c;
  };
  auto writeTerms = [&](const std::vector<Term>& terms) {
    bool first = true;
    for (const auto& t : terms) {
      if (t.coef == 0.0) continue;
      out << (t.coef < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      if (std::abs(t.coef) != 1.0) out << std::abs(t.coef) << ' ';
      out << name(t.column);
      first = false;
    }
    if (first) out << "0 " << name(0);
  };
  out.precision(17);
  out << "Maximize\n obj: ";
  std::vector<Term> objective;
  for (int j = 0; j < model.columnCount(); ++j) {
    if (model.columns[j].objective != 0.0) objective.push_back({j, model.columns[j].objective});
  }
  writeTerms(objective);
  out << "\nSubject To\n";
  for (int i = 0; i < model.rowCount(); ++i) {
    const auto& r = model.rows[i];
    out << ' ' << (r.name.empty() ? "r" + std::to_string(i) : r.name) << ": ";
    writeTerms(r.terms);
    out << (r.relation == Relation::LessEqual ? " <= " : r.relation == Relation::Equal ? " = " : " >= ") << r.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.columnCount(); ++j) {
    const auto& c = model.columns[j];
    out << ' ';
    if (std::isfinite(c.lower)) out << c.lower << " <= ";
    else out << "-inf <= ";
    out << name(j);
    if (std::isfinite(c.upper)) out << " <= " << c.upper;
    else out << " <= +inf";
    out << '\n';
  }
  out << "End\n";
}

}  // namespace bpc::lp
