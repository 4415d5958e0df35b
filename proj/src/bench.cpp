#include "bpccsp/bench.hpp"

#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bpccsp/io.hpp"

namespace bpc {

namespace {

double number(const std::string& key, const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "bad value for " + key + ": '" + value + "'");
}

std::string csvReal(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::vector<ManifestEntry> parseManifest(std::istream& in, const std::string& baseDir) {
  std::vector<ManifestEntry> entries;
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    ManifestEntry e;
    e.line = lineNo;
    bool any = false, hasSource = false;
    for (std::string tok; fields >> tok;) {
      any = true;
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError(lineNo, "expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (key == "group") e.group = value;
      else if (key == "source") {
        hasSource = true;
        e.source = value;
        if (value.rfind("random:", 0) != 0 && std::filesystem::path(value).is_relative()) {
          e.source = (std::filesystem::path(baseDir) / value).string();
        }
      } else if (key == "kind") {
        try {
          e.kind = parseSubgraphKind(value);
        } catch (const std::exception&) {
          throw ParseError(lineNo, "bad kind '" + value + "'");
        }
      } else if (key == "budget") e.budgetFrac = number(key, value, lineNo);
      else if (key == "radius") e.radiusFrac = number(key, value, lineNo);
      else if (key == "capacity") e.capacityFrac = number(key, value, lineNo);
      else if (key == "ratio") e.coverageRatio = number(key, value, lineNo);
      else throw ParseError(lineNo, "unknown key '" + key + "'");
    }
    if (!any) continue;
    if (!hasSource) throw ParseError(lineNo, "missing source");
    if (e.group.empty()) e.group = "default";
    entries.push_back(std::move(e));
  }
  return entries;
}

Instance materialize(const ManifestEntry& entry) {
  if (entry.source.rfind("random:", 0) == 0) {
    std::istringstream s(entry.source.substr(7));
    int n = 0;
    unsigned long long seed = 0;
    char colon = 0;
    if (!(s >> n >> colon >> seed) || colon != ':' || n < 2) {
      throw ParseError(entry.line, "random source must read random:<vertices>:<seed>");
    }
    RandomSpec spec;
    spec.vertexCount = n;
    spec.kind = entry.kind;
    spec.budgetFrac = entry.budgetFrac;
    spec.radiusFrac = entry.radiusFrac;
    spec.capacity = static_cast<int>(roundHalfAway(entry.capacityFrac * n));
    spec.coverageRatio = entry.coverageRatio;
    return randomInstance(spec, seed);
  }
  std::ifstream in(entry.source);
  if (!in) throw ParseError(entry.line, "cannot open " + entry.source);
  if (std::filesystem::path(entry.source).extension() == ".json") {
    Instance inst = readInstanceJson(in);
    return inst.kind() == entry.kind ? inst : inst.withKind(entry.kind);
  }
  const BaseInstance base = parseBase(in);
  GeneratorParams params;
  params.kind = entry.kind;
  params.budgetFrac = entry.budgetFrac;
  params.radiusFrac = entry.radiusFrac;
  params.capacityFrac = entry.capacityFrac;
  params.coverageRatio = entry.coverageRatio;
  return generate(base, params);
}

std::optional<double> phiRatio(const RunRecord& bnc, const RunRecord& benders) {
  const bool a = bnc.solved(), b = benders.solved();
  if (a && b) return benders.cpuSeconds / std::max(bnc.cpuSeconds, 1e-9);
  if (b) return 0.0;
  if (a) return std::numeric_limits<double>::infinity();
  return std::nullopt;
}

std::vector<Table4Row> aggregateTable4(const std::vector<RunRecord>& records) {
  std::vector<Table4Row> rows;
  auto find = [&](const RunRecord& r) -> Table4Row& {
    for (auto& row : rows) {
      if (row.group == r.group && row.budgetFrac == r.budgetFrac && row.method == r.method) return row;
    }
    rows.push_back({r.group, r.budgetFrac, r.method});
    return rows.back();
  };
  for (const auto& r : records) {
    Table4Row& row = find(r);
    ++row.instances;
    if (!r.solved()) continue;
    ++row.solved;
    row.meanCpu += r.cpuSeconds;
    row.meanNodes += static_cast<double>(r.nodes);
  }
  for (auto& row : rows) {
    if (row.solved > 0) {
      row.meanCpu /= row.solved;
      row.meanNodes /= row.solved;
    }
  }
  return rows;
}

std::vector<PhiSummary> aggregatePhi(const std::vector<RunRecord>& records) {
  std::vector<PhiSummary> out;
  PhiSummary all;
  all.group = "all";
  auto summary = [&](const std::string& group) -> PhiSummary& {
    for (auto& s : out) {
      if (s.group == group) return s;
    }
    out.push_back({group});
    return out.back();
  };
  std::map<std::string, const RunRecord*> bnc, benders;
  std::vector<std::string> order;
  for (const auto& r : records) {
    auto& slot = r.method == Method::Benders ? benders : bnc;
    if (!bnc.count(r.instance) && !benders.count(r.instance)) order.push_back(r.instance);
    slot[r.instance] = &r;
  }
  double sumAll = 0.0;
  std::map<std::string, double> sums;
  for (const auto& id : order) {
    if (!bnc.count(id) || !benders.count(id)) continue;
    const RunRecord& a = *bnc[id];
    PhiSummary& s = summary(a.group);
    for (PhiSummary* t : {&s, &all}) ++t->instances;
    const auto phi = phiRatio(a, *benders[id]);
    if (!phi) continue;
    for (PhiSummary* t : {&s, &all}) {
      if (*phi == 0.0) ++t->zero;
      else if (std::isinf(*phi)) ++t->infinite;
      if (*phi < 1.0) ++t->lt1;
      else ++t->ge1;
      if (*phi < 0.9) ++t->lt09;
      if (*phi > 1.1) ++t->gt11;
    }
    if (a.solved() && benders[id]->solved()) {
      ++s.both;
      ++all.both;
      sums[a.group] += *phi;
      sumAll += *phi;
    }
  }
  for (auto& s : out) s.meanPhi = s.both > 0 ? sums[s.group] / s.both : 0.0;
  all.meanPhi = all.both > 0 ? sumAll / all.both : 0.0;
  if (!out.empty()) out.push_back(all);
  return out;
}

std::vector<RunRecord> runBench(const std::vector<ManifestEntry>& entries, const BenchOptions& options) {
  std::vector<RunRecord> records;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const Instance inst = materialize(e);
    for (Method method : {Method::BranchAndCut, Method::Benders}) {
      SolverConfig config = options.base;
      config.method = method;
      config.timeLimit = options.timeLimit;
      config.log = nullptr;
      const std::clock_t c0 = std::clock();
      const Solution sol = solve(inst, config);
      const std::clock_t c1 = std::clock();
      RunRecord r;
      r.group = e.group;
      r.instance = std::to_string(k) + ":" + e.source;
      r.budgetFrac = e.budgetFrac;
      r.method = method;
      r.status = sol.status;
      r.objective = sol.objective;
      r.bound = sol.bound;
      r.wallSeconds = sol.stats.wallSeconds;
      r.cpuSeconds = static_cast<double>(c1 - c0) / CLOCKS_PER_SEC;
      r.nodes = sol.stats.nodes;
      r.cuts = sol.stats.cutsByFamily;
      if (options.log) {
        *options.log << "bench " << r.instance << ' ' << toString(method) << ' ' << toString(r.status) << ' '
                     << r.objective << ' ' << r.cpuSeconds << "s\n";
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

void writeRunRecords(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "run,group,instance,L,method,status,objective,bound,cpu,wall,nodes\n";
  for (const auto& r : records) {
    out << "run," << r.group << ',' << r.instance << ',' << csvReal(r.budgetFrac) << ',' << toString(r.method) << ','
        << toString(r.status) << ',' << csvReal(r.objective) << ',' << csvReal(r.bound) << ',' << csvReal(r.cpuSeconds)
        << ',' << csvReal(r.wallSeconds) << ',' << r.nodes << '\n';
  }
}

void writeReport(const std::vector<RunRecord>& records, std::ostream& out) {
  const auto t4 = aggregateTable4(records);
  const auto phi = aggregatePhi(records);
  if (t4.empty()) return;
  out << "table4,group,L,method,instances,solved,mean_cpu,mean_nodes\n";
  for (const auto& r : t4) {
    out << "table4," << r.group << ',' << csvReal(r.budgetFrac) << ',' << toString(r.method) << ',' << r.instances << ','
        << r.solved << ',' << csvReal(r.meanCpu) << ',' << csvReal(r.meanNodes) << '\n';
  }
  out << "phi,group,instances,both,lt1,ge1,lt0.9,gt1.1,zero,inf,mean_phi\n";
  for (const auto& s : phi) {
    out << "phi," << s.group << ',' << s.instances << ',' << s.both << ',' << s.lt1 << ',' << s.ge1 << ',' << s.lt09
        << ',' << s.gt11 << ',' << s.zero << ',' << s.infinite << ',' << csvReal(s.meanPhi) << '\n';
  }
}

}  // namespace bpc
