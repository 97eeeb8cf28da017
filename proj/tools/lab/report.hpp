#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lab {

using nlohmann::json;

enum class Suite { cpm, order, hodograph, causality, circle, escape, all };

Suite parse_suite(const std::string& name);
const char* to_string(Suite s);

// Tolerances a run may override with --tol key=value.
struct Tolerances {
  double graph = 1e-3;          // c+- of a + b cos against a -+ |b|
  double shift = 1e-12;         // Reeb shift law
  double stabilization = 1e-2;  // f +- xi^2 against the bare graph
  double monotone = 1e-9;       // c+- along non-negative isotopies
  double roundtrip = 1e-10;     // hodograph forward/inverse
  double form = 1e-6;           // contact-form pullback
  double sky = 1e-2;            // sky c+- grid route against closed form
  double null_min = 1e-6;       // min over null directions against dt - |dy|

  void set(const std::string& key, double value);
  json to_json() const;
};

struct ExperimentConfig {
  Suite suite = Suite::all;
  std::uint64_t seed = 0;
  // Base grid resolution for every suite; the module defaults otherwise.
  std::optional<std::size_t> resolution;
  Tolerances tol;

  json to_json() const;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Row-oriented numeric table; every row has one value per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<CheckResult> checks;
  std::map<std::string, Table> tables;
  double wall_time_ms = 0.0;

  bool all_passed() const;
  const CheckResult* first_failure() const;
};

// Everything except the wall time; identical for identical configs.
json payload(const RunReport& r);
json to_json(const RunReport& r);

void write_table_csv(std::ostream& out, const Table& t);
void write_checks_csv(std::ostream& out, const RunReport& r);

}  // namespace lab
