#include "leglab/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "leglab/error.hpp"
#include "leglab/expression.hpp"

namespace leglab::io {

namespace {

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
  return 1 + static_cast<std::size_t>(std::count(text.begin(), end, '\n'));
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of_byte(text, e.byte), "");
  }
}

template <typename T>
T get_field(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ParseError("missing required field", 0, path + key);
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0, path + key);
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  return get_field<T>(obj, key, path);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

// Numeric CSV rows; a leading non-numeric row is a header. Line numbers are
// recorded for error messages.
struct CsvRow {
  std::size_t line;
  std::vector<double> cells;
};

std::vector<CsvRow> read_numeric_csv(std::istream& in, std::size_t min_cols,
                                     const std::vector<std::string>& names) {
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    const auto cells = split_row(line);
    std::vector<double> vals(cells.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!parse_double(cells[k], vals[k])) {
        numeric = false;
        bad = k;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError("not a number: '" + cells[bad] + "'", lineno,
                       bad < names.size() ? names[bad] : "column " + std::to_string(bad + 1));
    }
    first = false;
    if (vals.size() < min_cols) {
      throw ParseError("expected at least " + std::to_string(min_cols) + " columns", lineno,
                       names.empty() ? "" : names.back());
    }
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (!std::isfinite(vals[k])) {
        throw ParseError("non-finite value", lineno,
                         k < names.size() ? names[k] : "column " + std::to_string(k + 1));
      }
    }
    rows.push_back({lineno, std::move(vals)});
  }
  return rows;
}

std::size_t as_index(double v, std::size_t line, const char* field) {
  if (v < 0 || v != std::floor(v)) throw ParseError("not a non-negative integer", line, field);
  return static_cast<std::size_t>(v);
}

// Re-tags expression syntax errors with the document field they came from.
Expression parse_expression(const std::string& text, const std::string& field) {
  try {
    return Expression::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), 0, field);
  }
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

}  // namespace

BaseDomain parse_base(const json& base) {
  if (!base.is_object()) throw ParseError("must be an object", 0, "base");
  const auto kind = get_field<std::string>(base, "kind", "base.");
  try {
    if (kind == "circle") {
      return BaseDomain::circle(
          get_or<std::size_t>(base, "resolution", BaseDomain::kDefaultCircleResolution, "base."));
    }
    if (kind == "sphere") {
      const int dim = get_or<int>(base, "dim", 3, "base.");
      const std::size_t fallback = dim == 2 ? BaseDomain::kDefaultCircleResolution
                                            : BaseDomain::kDefaultSphereResolution;
      return BaseDomain::sphere(dim, get_or<std::size_t>(base, "resolution", fallback, "base."));
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, "base");
  }
  throw ParseError("unknown base kind '" + kind + "'", 0, "base.kind");
}

GeneratingFunction parse_genfun(const std::string& text) { return parse_genfun(parse_document(text)); }

GeneratingFunction parse_genfun(const json& doc) {
  if (!doc.is_object()) throw ParseError("generating function must be a JSON object", 0, "");
  if (!doc.contains("base")) throw ParseError("missing required field", 0, "base");
  GeneratingFunction::Definition def{.base = parse_base(doc.at("base"))};

  try {
    if (doc.contains("qform")) {
      const json& qf = doc.at("qform");
      def.qform = QuadraticForm(get_or<std::vector<double>>(qf, "plus", {}, "qform."),
                                get_or<std::vector<double>>(qf, "minus", {}, "qform."));
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, "qform");
  }

  def.support_radius = get_or<double>(doc, "support_radius", 1.0, "");
  if (doc.contains("box")) {
    const json& box = doc.at("box");
    def.grid = AuxGrid{get_or<double>(box, "halfwidth", kBoxMargin * def.support_radius, "box."),
                       get_or<std::size_t>(box, "points_per_axis", kDefaultAuxPoints, "box.")};
  }
  def.constant = get_or<double>(doc, "constant", 0.0, "");

  if (doc.contains("potential")) {
    const json& pot = doc.at("potential");
    try {
      if (pot.is_string()) {
        def.potential = field_from_expression(pot.get<std::string>(), def.base);
      } else if (pot.is_object()) {
        def.potential = ScalarField(def.base, get_field<std::vector<double>>(pot, "values", "potential."));
      } else {
        throw ParseError("expected an expression string or {values: [...]}", 0, "potential");
      }
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), 0, "potential");
    }
  }

  if (doc.contains("sigma")) {
    const json& sig = doc.at("sigma");
    const auto kind = get_field<std::string>(sig, "kind", "sigma.");
    def.sigma_axes = get_or<std::vector<std::size_t>>(sig, "axes", {}, "sigma.");
    const std::size_t n_axes = def.sigma_axes.empty() ? def.qform.dim() : def.sigma_axes.size();
    if (kind == "expr") {
      const Expression e =
          parse_expression(get_field<std::string>(sig, "payload", "sigma."), "sigma.payload");
      if (static_cast<std::size_t>(e.max_xi_index()) > n_axes) {
        throw ParseError("expression uses xi" + std::to_string(e.max_xi_index()) +
                             " but sigma has " + std::to_string(n_axes) + " axes",
                         0, "sigma.payload");
      }
      if (e.max_q_index() > def.base.ambient_dim()) {
        throw ParseError("expression uses q" + std::to_string(e.max_q_index()) +
                             " beyond the base dimension",
                         0, "sigma.payload");
      }
      def.sigma = [e](const Eigen::VectorXd& q, std::span<const double> xi) {
        return e(ExprContext{std::span<const double>(q.data(), static_cast<std::size_t>(q.size())),
                             xi});
      };
    } else if (kind == "grid") {
      const AuxGrid grid = def.grid.value_or(AuxGrid{kBoxMargin * def.support_radius, kDefaultAuxPoints});
      try {
        def.sigma = sampled_perturbation(
            def.base, grid, n_axes,
            get_field<std::vector<std::vector<double>>>(sig, "payload", "sigma."));
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0, "sigma.payload");
      }
    } else if (kind != "zero") {
      throw ParseError("unknown sigma kind '" + kind + "'", 0, "sigma.kind");
    }
  }

  try {
    return GeneratingFunction(std::move(def));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, "");
  }
}

json to_json(const MinimaxPair& pair) {
  auto witness = [](const MinimaxWitness& w) {
    return json{{"base_index", w.base_index}, {"xi", w.xi}};
  };
  return json{{"c_minus", pair.c_minus},
              {"c_plus", pair.c_plus},
              {"witnesses", {{"minus", witness(pair.minus_witness)},
                             {"plus", witness(pair.plus_witness)}}},
              {"method", to_string(pair.method)}};
}

json to_json(const OrderVerdict& v) {
  json out{{"relation", to_string(v.relation)}, {"holds", v.holds}};
  out["first_violation_sample"] =
      v.first_violation_sample ? json(*v.first_violation_sample) : json(nullptr);
  return out;
}

json to_json(const SeparationWitness& w) {
  auto interval = [](const IntervalSpec& i) {
    return json{{"lower_min", i.lower().potential().min()},
                {"lower_max", i.lower().potential().max()},
                {"upper_min", i.upper().potential().min()},
                {"upper_max", i.upper().potential().max()}};
  };
  return json{{"epsilon", w.epsilon},
              {"intervals", json::array({interval(w.first), interval(w.second)})},
              {"disjoint", w.disjoint}};
}

json to_json(const MonotonicityReport& r) {
  json out{{"classification", to_string(r.sign)},
           {"times", r.times},
           {"c_minus", r.c_minus},
           {"c_plus", r.c_plus},
           {"non_decreasing", r.non_decreasing},
           {"strictly_increasing", r.strictly_increasing},
           {"ok", r.ok()}};
  out["violation"] = r.violation ? json::array({r.violation->first, r.violation->second})
                                 : json(nullptr);
  return out;
}

json to_json(const CircleDemoReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"circle_separated", p.circle_separated},
                     {"circle_common_point", p.circle_common_point},
                     {"line_separated", p.line_separated},
                     {"line_intervals", {{p.line_first.lower, p.line_first.upper},
                                         {p.line_second.lower, p.line_second.upper}}}});
  }
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(p.angle());
  return json{{"points", pts},
              {"circle_intervals_contain_everything", r.circle_intervals_contain_everything},
              {"circle_non_hausdorff", r.circle_non_hausdorff},
              {"line_hausdorff", r.line_hausdorff},
              {"pairs", pairs}};
}

json to_json(const ContactFormReport& r) {
  return json{{"samples", r.samples},
              {"max_deviation", r.max_deviation},
              {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

json to_json(const SkyDescriptor& s) {
  return json{{"t", s.event.t},
              {"y", vector_json(s.event.y)},
              {"c_minus", s.invariants.c_minus},
              {"c_plus", s.invariants.c_plus},
              {"grid", to_json(s.grid_invariants)}};
}

json to_json(const SkyOrderReport& r) {
  return json{{"verdict", to_string(r.verdict)},
              {"chronological", r.chronological},
              {"pointwise_strict", r.pointwise_strict},
              {"invariants_increase", r.invariants_increase},
              {"potential_gap", r.potential_gap},
              {"detail", r.detail}};
}

json to_json(const CurvePositivityReport& r) {
  json chars = json::array();
  for (auto c : r.characters) chars.push_back(to_string(c));
  return json{{"classification", to_string(r.classification)},
              {"min_alpha", r.min_alpha},
              {"grid_min_alpha", r.grid_min_alpha},
              {"characters", chars}};
}

json to_json(const AlexandrovProbeReport& r) {
  return json{{"epsilon", r.epsilon},
              {"delta", r.delta},
              {"samples", r.samples},
              {"max_distance", r.max_distance},
              {"contained", r.contained}};
}

namespace {

std::vector<double> field_values_from_rows(const std::vector<CsvRow>& rows) {
  std::vector<double> values(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& row : rows) {
    const std::size_t idx = as_index(row.cells[0], row.line, "sample_index");
    if (idx >= rows.size()) {
      throw ParseError("sample index " + std::to_string(idx) + " out of range", row.line,
                       "sample_index");
    }
    if (seen[idx]) throw ParseError("duplicate sample index", row.line, "sample_index");
    seen[idx] = true;
    values[idx] = row.cells[1];
  }
  return values;
}

}  // namespace

ScalarField read_field_csv(std::istream& in, int ambient_dim) {
  const auto rows = read_numeric_csv(in, 2, {"sample_index", "value"});
  if (rows.empty()) throw ParseError("no data rows", 0, "");
  try {
    return ScalarField(BaseDomain::sphere(ambient_dim, rows.size()), field_values_from_rows(rows));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, "");
  }
}

ScalarField read_field_csv(std::istream& in, const BaseDomain& domain) {
  const auto rows = read_numeric_csv(in, 2, {"sample_index", "value"});
  if (rows.size() != domain.size()) {
    throw ParseError("expected " + std::to_string(domain.size()) + " rows, found " +
                         std::to_string(rows.size()),
                     0, "");
  }
  return ScalarField(domain, field_values_from_rows(rows));
}

ScalarField field_from_expression(const std::string& expr, const BaseDomain& domain) {
  const Expression e = Expression::parse(expr);
  if (e.uses_xi()) throw ParseError("a base field cannot depend on xi or r", 0, "expr");
  if (e.max_q_index() > domain.ambient_dim()) {
    throw ParseError("expression uses q" + std::to_string(e.max_q_index()) +
                         " beyond the base dimension",
                     0, "expr");
  }
  if (e.uses_theta() && domain.kind() != DomainKind::circle) {
    throw ParseError("theta is only available on S^1", 0, "expr");
  }
  return ScalarField::from_function(domain, [e](const Eigen::VectorXd& q) {
    return e(ExprContext{std::span<const double>(q.data(), static_cast<std::size_t>(q.size())), {}});
  });
}

IsotopyPath read_isotopy_csv(std::istream& in, int ambient_dim) {
  const auto rows = read_numeric_csv(in, 3, {"time", "sample_index", "value"});
  if (rows.empty()) throw ParseError("no data rows", 0, "");
  std::vector<double> times;
  std::vector<std::vector<const CsvRow*>> groups;
  for (const auto& row : rows) {
    if (times.empty() || row.cells[0] != times.back()) {
      if (!times.empty() && row.cells[0] < times.back()) {
        throw ParseError("time samples must be grouped in increasing order", row.line, "time");
      }
      times.push_back(row.cells[0]);
      groups.emplace_back();
    }
    groups.back().push_back(&row);
  }
  const std::size_t n = groups.front().size();
  BaseDomain domain = [&] {
    try {
      return BaseDomain::sphere(ambient_dim, n);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), rows.front().line, "sample_index");
    }
  }();
  std::vector<ScalarField> frames;
  for (const auto& g : groups) {
    if (g.size() != n) {
      throw ParseError("every time sample needs " + std::to_string(n) + " rows", g.front()->line,
                       "sample_index");
    }
    std::vector<CsvRow> local;
    for (const CsvRow* r : g) local.push_back({r->line, {r->cells[1], r->cells[2]}});
    frames.emplace_back(domain, field_values_from_rows(local));
  }
  try {
    return IsotopyPath(std::move(times), std::move(frames));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, "time");
  }
}

std::vector<MinkowskiEvent> read_events_csv(std::istream& in) {
  const auto rows = read_numeric_csv(in, 2, {"t", "y1"});
  std::vector<MinkowskiEvent> out;
  for (const auto& row : rows) {
    if (!out.empty() && row.cells.size() != static_cast<std::size_t>(out.front().y.size()) + 1) {
      throw ParseError("inconsistent spatial dimension", row.line, "y");
    }
    MinkowskiEvent e{row.cells[0], Eigen::VectorXd(static_cast<Eigen::Index>(row.cells.size() - 1))};
    for (std::size_t k = 1; k < row.cells.size(); ++k) e.y[static_cast<Eigen::Index>(k - 1)] = row.cells[k];
    out.push_back(std::move(e));
  }
  return out;
}

SampledCurve read_curve_csv(std::istream& in) {
  const auto rows = read_numeric_csv(in, 3, {"s", "t", "y1"});
  SampledCurve curve;
  for (const auto& row : rows) {
    if (!curve.events.empty() && row.cells.size() != static_cast<std::size_t>(curve.events.front().y.size()) + 2) {
      throw ParseError("inconsistent spatial dimension", row.line, "y");
    }
    curve.time_samples.push_back(row.cells[0]);
    MinkowskiEvent e{row.cells[1], Eigen::VectorXd(static_cast<Eigen::Index>(row.cells.size() - 2))};
    for (std::size_t k = 2; k < row.cells.size(); ++k) e.y[static_cast<Eigen::Index>(k - 2)] = row.cells[k];
    curve.events.push_back(std::move(e));
  }
  try {
    validate(curve);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, "s");
  }
  return curve;
}

std::pair<CoorientedSphere, double> parse_sphere(const std::string& text) {
  const json doc = parse_document(text);
  const auto center = get_field<std::vector<double>>(doc, "center", "");
  const double t = get_field<double>(doc, "t", "");
  if (center.size() < 2) throw ParseError("center needs at least two coordinates", 0, "center");
  Eigen::VectorXd y(static_cast<Eigen::Index>(center.size()));
  for (std::size_t k = 0; k < center.size(); ++k) y[static_cast<Eigen::Index>(k)] = center[k];
  return {sphere_from_signed_radius(y, t), t};
}

void write_contact_elements_csv(std::ostream& out, const std::vector<ContactElement>& elements) {
  if (elements.empty()) return;
  const auto n = elements.front().point.size();
  for (Eigen::Index k = 0; k < n; ++k) out << (k ? "," : "") << "x" << k + 1;
  for (Eigen::Index k = 0; k < n; ++k) out << ",nu" << k + 1;
  out << '\n';
  out.precision(17);
  for (const auto& e : elements) {
    for (Eigen::Index k = 0; k < n; ++k) out << (k ? "," : "") << e.point[k];
    for (Eigen::Index k = 0; k < n; ++k) out << ',' << e.conormal[k];
    out << '\n';
  }
}

void write_escape_csv(std::ostream& out, const EscapeReport& report) {
  out << "k,c_minus,c_plus,abs_sum,in_interval\n";
  out.precision(17);
  for (const auto& r : report.rows) {
    out << r.k << ',' << r.c_minus << ',' << r.c_plus << ',' << r.abs_sum << ','
        << (r.in_interval ? "true" : "false") << '\n';
  }
}

MinkowskiEvent parse_event_literal(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream ss(normalized);
  std::vector<double> vals;
  std::string tok;
  while (ss >> tok) {
    double v = 0.0;
    if (!parse_double(tok, v) || !std::isfinite(v)) {
      throw ParseError("not a number: '" + tok + "'", 0, "event");
    }
    vals.push_back(v);
  }
  if (vals.size() < 2) throw ParseError("an event needs t and at least one y coordinate", 0, "event");
  MinkowskiEvent e{vals[0], Eigen::VectorXd(static_cast<Eigen::Index>(vals.size() - 1))};
  for (std::size_t k = 1; k < vals.size(); ++k) e.y[static_cast<Eigen::Index>(k - 1)] = vals[k];
  return e;
}

}  // namespace leglab::io
