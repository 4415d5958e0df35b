#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bpc::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kOptimalityTol = 1e-7;

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  int column = 0;
  double coef = 0.0;
};

struct Row {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

struct Column {
  double lower = 0.0;
  double upper = 1.0;
  double objective = 0.0;
  std::string name;
};

/// A maximization LP over bounded columns.
struct Model {
  std::vector<Column> columns;
  std::vector<Row> rows;

  int addColumn(Column column);
  int addRow(Row row);
  int columnCount() const { return static_cast<int>(columns.size()); }
  int rowCount() const { return static_cast<int>(rows.size()); }
};

/// Throws StructuralError-like std::invalid_argument when a row references an
/// unknown column or repeats one.
void checkRow(const Row& row, int columnCount);

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;    ///< per column
  std::vector<double> dual;      ///< per row, maximization sign convention
  std::vector<double> reduced;   ///< per column, c_j - dual^T A_j
  long long iterations = 0;
};

/// Raised when the simplex cannot finish reliably (iteration guard exhausted
/// or an unrecoverable singular basis).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Narrow interface the solvers program against.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual int columnCount() const = 0;
  virtual int rowCount() const = 0;
  virtual void addRows(const std::vector<Row>& rows) = 0;
  virtual void setBounds(int column, double lower, double upper) = 0;
  virtual std::pair<double, double> bounds(int column) const = 0;
  virtual Solution solve() = 0;
  /// Row multipliers proving infeasibility of the last solve; empty otherwise.
  virtual std::vector<double> farkas() const = 0;
  virtual const Model& model() const = 0;
  virtual std::unique_ptr<Backend> clone() const = 0;
};

/// Revised primal simplex with bounded variables and a dense basis inverse.
/// Keeps its basis between solves so that added rows and changed bounds are
/// re-optimized from the previous point.
class SimplexEngine final : public Backend {
 public:
  explicit SimplexEngine(Model model);

  int columnCount() const override { return model_.columnCount(); }
  int rowCount() const override { return model_.rowCount(); }
  void addRows(const std::vector<Row>& rows) override;
  void setBounds(int column, double lower, double upper) override;
  std::pair<double, double> bounds(int column) const override;
  Solution solve() override;
  std::vector<double> farkas() const override { return farkas_; }
  const Model& model() const override { return model_; }
  std::unique_ptr<Backend> clone() const override;

  /// Number of consecutive degenerate pivots before Bland's rule engages.
  void setDegeneracyThreshold(int pivots) { degeneracyThreshold_ = pivots; }
  void setIterationLimit(long long limit) { iterationLimit_ = limit; }

 private:
  enum class VarState : unsigned char { Basic, AtLower, AtUpper, Free };

  int totalColumns() const { return model_.columnCount() + model_.rowCount(); }
  double lowerOf(int j) const { return lower_[j]; }
  double upperOf(int j) const { return upper_[j]; }
  void appendRowStructures(const Row& row);
  void resetNonbasicValue(int j);
  void invert();
  void recomputeBasicValues();
  void ftran(int j, std::vector<double>& alpha) const;
  void btran(const std::vector<double>& costB, std::vector<double>& pi) const;
  void pivotUpdate(int leaveRow, const std::vector<double>& alpha);
  double columnDot(int j, const std::vector<double>& pi) const;
  bool runPhase(bool phaseOne, long long& iterations);
  enum class DualResult { NotApplicable, Feasible, Infeasible };
  /// Dual simplex from a dual-feasible basis; used to re-optimize after rows
  /// are added or bounds change.
  DualResult runDual(long long& iterations);
  std::vector<double> reducedCosts(std::vector<double>& pi) const;
  double infeasibility() const;

  Model model_;
  // column-major copy of the structural matrix
  std::vector<std::vector<Term>> colEntries_;  // per structural column: (row, coef)
  std::vector<double> lower_, upper_, cost_;   // over structural + slack columns (minimization costs)
  std::vector<double> rhs_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> basis_;                // per row: column index
  std::vector<int> basisPos_;             // per column: row or -1
  std::vector<double> binv_;              // dense m x m, row-major
  int updatesSinceInvert_ = 0;
  bool needInvert_ = true;
  std::vector<double> farkas_;
  int degeneracyThreshold_ = 50;
  long long iterationLimit_ = -1;
};

/// Writes the model in CPLEX LP text format.
void writeLpFormat(const Model& model, std::ostream& out);

}  // namespace bpc::lp
