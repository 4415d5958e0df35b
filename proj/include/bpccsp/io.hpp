#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bpccsp/instance.hpp"

namespace bpc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::string toString(BaseType type);

/// TSPLIB '95 keyword format, EUC_2D only. File vertex i becomes vertex i-1,
/// so the first listed vertex is the depot.
BaseInstance parseBase(std::istream& in);
BaseInstance parseBaseFile(const std::string& path);

void writeInstanceJson(const Instance& instance, std::ostream& out);
Instance readInstanceJson(std::istream& in);

/// Line-oriented solution report with STATUS / OBJECTIVE / BOUND /
/// BUDGET_USED / VISITED / EDGES / COVERAGE / STATS sections. Reals are
/// printed with 17 significant digits so that readSolution restores them
/// exactly.
void writeSolution(const Solution& solution, const Instance& instance, std::ostream& out);
Solution readSolution(std::istream& in);

/// The same schema as a JSON object.
void writeSolutionJson(const Solution& solution, const Instance& instance, std::ostream& out);
Solution readSolutionJson(std::istream& in);

}  // namespace bpc
