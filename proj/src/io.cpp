#include "bpccsp/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace bpc {

using nlohmann::json;

std::string toString(BaseType type) {
  switch (type) {
    case BaseType::TSP: return "TSP";
    case BaseType::VRP: return "VRP";
    case BaseType::CVRP: return "CVRP";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string fmt(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parseReal(const std::string& text, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
  if (used != text.size()) throw ParseError(line, "expected a number, got '" + text + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// TSPLIB

BaseInstance parseBase(std::istream& in) {
  BaseInstance base;
  std::optional<int> dimension;
  int dimensionLine = 0;
  bool sawCoords = false, sawDemands = false;
  std::string typeText;
  enum class Section { None, Coords, Demands, Depot, Skip } section = Section::None;
  std::vector<std::optional<Point>> coords;
  std::vector<std::optional<double>> demands;
  int coordCount = 0;

  std::string raw;
  int lineNo = 0;
  auto ensureSize = [&](int idx) {
    if (static_cast<int>(coords.size()) <= idx) coords.resize(idx + 1);
    if (static_cast<int>(demands.size()) <= idx) demands.resize(idx + 1);
  };

  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string head = upper(line.substr(0, line.find_first_of(" \t:")));
    if (head == "EOF") break;

    const auto colon = line.find(':');
    const bool keyword = colon != std::string::npos || head.find("_SECTION") != std::string::npos ||
                         !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' || line[0] == '+');
    if (keyword) {
      const std::string value = trim(colon == std::string::npos ? line.substr(head.size()) : line.substr(colon + 1));
      section = Section::None;
      if (head == "NAME") {
        base.name = value;
      } else if (head == "TYPE") {
        typeText = upper(value);
        if (typeText == "TSP") base.type = BaseType::TSP;
        else if (typeText == "VRP") base.type = BaseType::VRP;
        else if (typeText == "CVRP") base.type = BaseType::CVRP;
        else throw ParseError(lineNo, "unsupported TYPE '" + value + "'");
      } else if (head == "DIMENSION") {
        dimension = static_cast<int>(parseReal(value, lineNo));
        dimensionLine = lineNo;
        if (*dimension <= 0) throw ParseError(lineNo, "DIMENSION must be positive");
      } else if (head == "EDGE_WEIGHT_TYPE") {
        if (upper(value) != "EUC_2D") throw ParseError(lineNo, "unsupported EDGE_WEIGHT_TYPE '" + value + "' (EUC_2D only)");
      } else if (head == "NODE_COORD_SECTION") {
        section = Section::Coords;
        sawCoords = true;
      } else if (head == "DEMAND_SECTION") {
        section = Section::Demands;
        sawDemands = true;
      } else if (head == "DEPOT_SECTION") {
        section = Section::Depot;
      } else if (head.find("_SECTION") != std::string::npos) {
        section = Section::Skip;
      }
      // other keywords (COMMENT, CAPACITY, ...) carry nothing we use
      continue;
    }

    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    switch (section) {
      case Section::Coords: {
        if (tok.size() != 3) throw ParseError(lineNo, "coordinate line needs 'index x y'");
        const int idx = static_cast<int>(parseReal(tok[0], lineNo)) - 1;
        if (idx < 0) throw ParseError(lineNo, "vertex index must be at least 1");
        if (dimension && idx >= *dimension) throw ParseError(lineNo, "dimension mismatch: vertex index beyond DIMENSION");
        ensureSize(idx);
        if (coords[idx]) throw ParseError(lineNo, "duplicate coordinates for vertex " + tok[0]);
        coords[idx] = Point{parseReal(tok[1], lineNo), parseReal(tok[2], lineNo)};
        ++coordCount;
        break;
      }
      case Section::Demands: {
        if (tok.size() != 2) throw ParseError(lineNo, "demand line needs 'index demand'");
        const int idx = static_cast<int>(parseReal(tok[0], lineNo)) - 1;
        if (idx < 0) throw ParseError(lineNo, "vertex index must be at least 1");
        ensureSize(idx);
        const double d = parseReal(tok[1], lineNo);
        if (d < 0) throw ParseError(lineNo, "negative demand");
        demands[idx] = d;
        break;
      }
      case Section::Depot:
      case Section::Skip:
        break;
      case Section::None:
        throw ParseError(lineNo, "unexpected data line '" + line + "'");
    }
  }

  if (!sawCoords) throw ParseError(0, "missing NODE_COORD_SECTION");
  if (!dimension) throw ParseError(0, "missing DIMENSION");
  if (coordCount != *dimension) {
    throw ParseError(dimensionLine, "dimension mismatch: DIMENSION " + std::to_string(*dimension) + " but " +
                                        std::to_string(coordCount) + " coordinate lines");
  }
  base.coordinates.resize(*dimension);
  for (int i = 0; i < *dimension; ++i) base.coordinates[i] = *coords[i];
  if (base.type != BaseType::TSP) {
    if (!sawDemands) throw ParseError(0, "missing DEMAND_SECTION for " + toString(base.type) + " file");
    std::vector<double> d(*dimension, 0.0);
    for (int i = 0; i < *dimension; ++i) {
      if (i >= static_cast<int>(demands.size()) || !demands[i]) {
        throw ParseError(0, "dimension mismatch: no demand for vertex " + std::to_string(i + 1));
      }
      d[i] = *demands[i];
    }
    base.demands = std::move(d);
  }
  return base;
}

BaseInstance parseBaseFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parseBase(in);
}

// ---------------------------------------------------------------------------
// Instance JSON

void writeInstanceJson(const Instance& instance, std::ostream& out) {
  const auto& d = instance.data();
  json j;
  j["name"] = d.name;
  j["kind"] = toString(d.kind);
  j["vertex_count"] = d.vertexCount;
  j["budget"] = d.budget;
  j["edges"] = json::array();
  for (const auto& e : d.edges) j["edges"].push_back({e.a, e.b, e.cost});
  j["prize"] = d.prize;
  j["capacity"] = d.capacity;
  j["neighbourhood"] = d.neighbourhood;
  j["cover_prize"] = json::array();
  for (const auto& [key, q] : d.coverPrize) j["cover_prize"].push_back({key.first, key.second, q});
  out << j.dump(1) << '\n';
}

Instance readInstanceJson(std::istream& in) {
  json j;
  try {
    in >> j;
    Instance::Data d;
    d.name = j.value("name", std::string());
    d.kind = parseSubgraphKind(j.at("kind").get<std::string>());
    d.vertexCount = j.at("vertex_count").get<int>();
    d.budget = j.at("budget").get<double>();
    for (const auto& e : j.at("edges")) d.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    d.prize = j.at("prize").get<std::vector<double>>();
    d.capacity = j.at("capacity").get<std::vector<int>>();
    d.neighbourhood = j.at("neighbourhood").get<std::vector<std::vector<VertexId>>>();
    for (const auto& t : j.at("cover_prize")) {
      d.coverPrize[{t.at(0).get<int>(), t.at(1).get<int>()}] = t.at(2).get<double>();
    }
    const auto n = static_cast<std::size_t>(d.vertexCount);
    if (d.prize.size() != n || d.capacity.size() != n || d.neighbourhood.size() != n) {
      throw ParseError(0, "per-vertex arrays must have vertex_count entries");
    }
    for (std::size_t v = 0; v < n; ++v) {
      for (VertexId w : d.neighbourhood[v]) {
        if (w < 0 || w >= d.vertexCount) throw ParseError(0, "neighbour out of range at vertex " + std::to_string(v));
      }
    }
    for (const auto& e : d.edges) {
      if (e.a < 0 || e.b < 0 || e.a >= d.vertexCount || e.b >= d.vertexCount) throw ParseError(0, "edge endpoint out of range");
    }
    return Instance(std::move(d));
  } catch (const json::exception& err) {
    throw ParseError(0, std::string("instance JSON: ") + err.what());
  }
}

// ---------------------------------------------------------------------------
// Solution documents

void writeSolution(const Solution& s, const Instance& instance, std::ostream& out) {
  out << "BPCCSP_SOLUTION 1\n";
  out << "STATUS " << toString(s.status) << '\n';
  out << "OBJECTIVE " << fmt(s.objective) << '\n';
  out << "BOUND " << fmt(s.bound) << '\n';
  out << "BUDGET_USED " << fmt(edgeCost(instance, s.edges)) << '\n';
  out << "VISITED " << s.visited.size() << '\n';
  for (VertexId v : s.visited) out << v << '\n';
  out << "EDGES " << s.edges.size() << '\n';
  for (int e : s.edges) out << e << ' ' << instance.edge(e).a << ' ' << instance.edge(e).b << '\n';
  out << "COVERAGE " << s.coverage.size() << '\n';
  for (const auto& [v, w] : s.coverage) out << v << ' ' << w << '\n';
  out << "STATS\n";
  out << "nodes " << s.stats.nodes << '\n';
  out << "lp_iterations " << s.stats.lpIterations << '\n';
  out << "root_bound " << fmt(s.stats.rootBound) << '\n';
  out << "wall_seconds " << fmt(s.stats.wallSeconds) << '\n';
  for (const auto& [family, count] : s.stats.cutsByFamily) out << "cuts " << family << ' ' << count << '\n';
  out << "END\n";
}

Solution readSolution(std::istream& in) {
  Solution s;
  std::string raw;
  int lineNo = 0;
  auto next = [&](const char* what) {
    while (std::getline(in, raw)) {
      ++lineNo;
      if (!trim(raw).empty()) return trim(raw);
    }
    throw ParseError(lineNo, std::string("unexpected end of document, expected ") + what);
  };
  auto keyed = [&](const std::string& key) {
    const std::string line = next(key.c_str());
    if (line.rfind(key, 0) != 0) throw ParseError(lineNo, "expected " + key);
    return trim(line.substr(key.size()));
  };
  auto count = [&](const std::string& key) {
    const double c = parseReal(keyed(key), lineNo);
    if (c < 0 || c != std::floor(c)) throw ParseError(lineNo, "bad count for " + key);
    return static_cast<int>(c);
  };

  if (next("header") != "BPCCSP_SOLUTION 1") throw ParseError(lineNo, "not a solution document");
  try {
    s.status = parseSolutionStatus(keyed("STATUS"));
  } catch (const std::invalid_argument& err) {
    throw ParseError(lineNo, err.what());
  }
  s.objective = parseReal(keyed("OBJECTIVE"), lineNo);
  s.bound = parseReal(keyed("BOUND"), lineNo);
  keyed("BUDGET_USED");
  for (int k = count("VISITED"); k > 0; --k) s.visited.push_back(static_cast<int>(parseReal(next("vertex"), lineNo)));
  for (int k = count("EDGES"); k > 0; --k) {
    std::istringstream f(next("edge"));
    int e = -1;
    if (!(f >> e)) throw ParseError(lineNo, "bad edge line");
    s.edges.push_back(e);
  }
  for (int k = count("COVERAGE"); k > 0; --k) {
    std::istringstream f(next("coverage"));
    int v = -1, w = -1;
    if (!(f >> v >> w)) throw ParseError(lineNo, "bad coverage line");
    s.coverage[v] = w;
  }
  if (next("STATS") != "STATS") throw ParseError(lineNo, "expected STATS");
  while (true) {
    const std::string line = next("END");
    if (line == "END") break;
    std::istringstream f(line);
    std::string key;
    f >> key;
    std::string rest;
    std::getline(f, rest);
    rest = trim(rest);
    if (key == "nodes") s.stats.nodes = std::stoll(rest);
    else if (key == "lp_iterations") s.stats.lpIterations = std::stoll(rest);
    else if (key == "root_bound") s.stats.rootBound = parseReal(rest, lineNo);
    else if (key == "wall_seconds") s.stats.wallSeconds = parseReal(rest, lineNo);
    else if (key == "cuts") {
      std::istringstream g(rest);
      std::string family;
      long long c = 0;
      if (!(g >> family >> c)) throw ParseError(lineNo, "bad cuts line");
      s.stats.cutsByFamily[family] = c;
    } else {
      throw ParseError(lineNo, "unknown STATS key '" + key + "'");
    }
  }
  return s;
}

namespace {
json real(double v) { return std::isfinite(v) ? json(v) : json(fmt(v)); }
double real(const json& j) { return j.is_string() ? std::stod(j.get<std::string>()) : j.get<double>(); }
}  // namespace

void writeSolutionJson(const Solution& s, const Instance& instance, std::ostream& out) {
  json j;
  j["status"] = toString(s.status);
  j["objective"] = real(s.objective);
  j["bound"] = real(s.bound);
  j["budget_used"] = edgeCost(instance, s.edges);
  j["visited"] = s.visited;
  j["edges"] = json::array();
  for (int e : s.edges) j["edges"].push_back({e, instance.edge(e).a, instance.edge(e).b});
  j["coverage"] = json::array();
  for (const auto& [v, w] : s.coverage) j["coverage"].push_back({v, w});
  j["stats"] = {{"nodes", s.stats.nodes},
                {"lp_iterations", s.stats.lpIterations},
                {"root_bound", real(s.stats.rootBound)},
                {"wall_seconds", s.stats.wallSeconds},
                {"cuts", s.stats.cutsByFamily}};
  out << j.dump(1) << '\n';
}

Solution readSolutionJson(std::istream& in) {
  try {
    json j;
    in >> j;
    Solution s;
    s.status = parseSolutionStatus(j.at("status").get<std::string>());
    s.objective = real(j.at("objective"));
    s.bound = real(j.at("bound"));
    s.visited = j.at("visited").get<std::vector<VertexId>>();
    for (const auto& e : j.at("edges")) s.edges.push_back(e.at(0).get<int>());
    for (const auto& c : j.at("coverage")) s.coverage[c.at(0).get<int>()] = c.at(1).get<int>();
    const auto& st = j.at("stats");
    s.stats.nodes = st.at("nodes").get<long long>();
    s.stats.lpIterations = st.at("lp_iterations").get<long long>();
    s.stats.rootBound = real(st.at("root_bound"));
    s.stats.wallSeconds = st.at("wall_seconds").get<double>();
    s.stats.cutsByFamily = st.at("cuts").get<std::map<std::string, long long>>();
    return s;
  } catch (const json::exception& err) {
    throw ParseError(0, std::string("solution JSON: ") + err.what());
  }
}

}  // namespace bpc
