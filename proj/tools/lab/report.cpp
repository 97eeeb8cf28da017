#include "report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "leglab/error.hpp"

namespace lab {

namespace {

struct SuiteName {
  Suite suite;
  const char* name;
};

constexpr SuiteName kSuites[] = {
    {Suite::cpm, "cpm"},       {Suite::order, "order"},   {Suite::hodograph, "hodograph"},
    {Suite::causality, "causality"}, {Suite::circle, "circle"}, {Suite::escape, "escape"},
    {Suite::all, "all"},
};

// Shortest round-trip representation keeps CSV output stable and exact.
std::string number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Suite parse_suite(const std::string& name) {
  for (const auto& s : kSuites) {
    if (name == s.name) return s.suite;
  }
  throw leglab::InvalidArgument("unknown suite '" + name + "'");
}

const char* to_string(Suite s) {
  for (const auto& e : kSuites) {
    if (e.suite == s) return e.name;
  }
  return "?";
}

void Tolerances::set(const std::string& key, double value) {
  if (!(value > 0.0)) throw leglab::InvalidArgument("tolerance '" + key + "' must be positive");
  if (key == "graph") graph = value;
  else if (key == "shift") shift = value;
  else if (key == "stabilization") stabilization = value;
  else if (key == "monotone") monotone = value;
  else if (key == "roundtrip") roundtrip = value;
  else if (key == "form") form = value;
  else if (key == "sky") sky = value;
  else if (key == "null_min") null_min = value;
  else throw leglab::InvalidArgument("unknown tolerance '" + key + "'");
}

json Tolerances::to_json() const {
  return json{{"graph", graph},         {"shift", shift},   {"stabilization", stabilization},
              {"monotone", monotone},   {"roundtrip", roundtrip}, {"form", form},
              {"sky", sky},             {"null_min", null_min}};
}

json ExperimentConfig::to_json() const {
  json j{{"suite", lab::to_string(suite)}, {"seed", seed}, {"tolerances", tol.to_json()}};
  j["resolution"] = resolution ? json(*resolution) : json(nullptr);
  return j;
}

bool RunReport::all_passed() const { return first_failure() == nullptr; }

const CheckResult* RunReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

json payload(const RunReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(
        {{"suite", c.suite}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  json tables = json::object();
  for (const auto& [name, t] : r.tables) {
    tables[name] = {{"columns", t.columns}, {"rows", t.rows}};
  }
  return json{{"config", r.config.to_json()},
              {"checks", checks},
              {"tables", tables},
              {"passed", r.all_passed()}};
}

json to_json(const RunReport& r) {
  return json{{"payload", payload(r)}, {"wall_time_ms", r.wall_time_ms}};
}

void write_table_csv(std::ostream& out, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << t.columns[k];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << number(row[k]);
    out << '\n';
  }
}

void write_checks_csv(std::ostream& out, const RunReport& r) {
  out << "suite,check,passed,detail\n";
  for (const auto& c : r.checks) {
    out << c.suite << ',' << c.name << ',' << (c.passed ? "true" : "false") << ','
        << csv_escape(c.detail) << '\n';
  }
}

}  // namespace lab
