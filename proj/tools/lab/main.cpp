#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "compute.hpp"
#include "leglab/error.hpp"
#include "suites.hpp"

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitError = 2;

void write_report(const lab::RunReport& report, const std::string& out, const std::string& format) {
  if (format == "json") {
    const std::string text = lab::to_json(report).dump(2) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream(out) << text;
    }
    return;
  }
  // CSV: the check table, plus one file per numeric table next to it.
  if (out.empty()) {
    lab::write_checks_csv(std::cout, report);
    return;
  }
  {
    std::ofstream f(out);
    lab::write_checks_csv(f, report);
  }
  const std::filesystem::path p(out);
  for (const auto& [name, table] : report.tables) {
    auto side = p;
    side.replace_filename(p.stem().string() + "." + name + ".csv");
    std::ofstream f(side);
    lab::write_table_csv(f, table);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax invariants, graph orders, hodograph and Minkowski skies"};
  app.require_subcommand(1);

  // lab run
  auto* run = app.add_subcommand("run", "Run an experiment suite");
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::optional<std::size_t> resolution;
  std::string out;
  std::string format = "json";
  std::vector<std::string> tol_overrides;
  run->add_option("--suite", suite, "cpm|order|hodograph|causality|circle|escape|all")
      ->check(CLI::IsMember({"cpm", "order", "hodograph", "causality", "circle", "escape", "all"}));
  run->add_option("--seed", seed, "Seed for randomized checks");
  run->add_option("--resolution", resolution, "Base grid resolution (>= 8)");
  run->add_option("--out", out, "Report path (stdout if omitted)");
  run->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--tol", tol_overrides, "Tolerance override key=value")->take_all();

  // lab compute
  auto* compute = app.add_subcommand("compute", "Single query");
  compute->require_subcommand(1);
  lab::ComputeOptions copt;
  compute->add_option("--resolution", copt.resolution, "Sphere grid resolution");

  std::string genfun_path;
  auto* cpm = compute->add_subcommand("cpm", "c+- of a generating function document");
  cpm->add_option("genfun", genfun_path)->required();

  std::string f_path, g_path;
  auto* order = compute->add_subcommand("order", "Order relations between two fields");
  order->add_option("f", f_path)->required();
  order->add_option("g", g_path)->required();

  double sky_t = 0.0;
  std::vector<double> sky_y;
  auto* sky = compute->add_subcommand("sky", "Sky of the event (t, y)");
  sky->add_option("t", sky_t)->required();
  sky->add_option("y", sky_y)->required();

  std::string curve_path;
  auto* classify = compute->add_subcommand("classify", "Positivity of a sampled curve");
  classify->add_option("curve", curve_path)->required();

  std::string iso_path;
  auto* isotopy = compute->add_subcommand("isotopy", "Classify a graph isotopy and audit c+-");
  isotopy->add_option("path", iso_path)->required();

  std::string sphere_path;
  auto* lift = compute->add_subcommand("lift", "Contact elements of a cooriented sphere (CSV)");
  lift->add_option("sphere", sphere_path)->required();

  std::string events_path, probe_a, probe_b;
  auto* escape = compute->add_subcommand("escape", "Escape audit of an event sequence (CSV)");
  escape->add_option("events", events_path)->required();
  escape->add_option("--a", probe_a, "Lower probe event \"t y1 ... yn\"")->required();
  escape->add_option("--b", probe_b, "Upper probe event")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      lab::ExperimentConfig cfg;
      cfg.suite = lab::parse_suite(suite);
      cfg.seed = seed;
      cfg.resolution = resolution;
      for (const auto& kv : tol_overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw leglab::InvalidArgument("--tol expects key=value");
        cfg.tol.set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
      }
      const auto report = lab::run(cfg);
      write_report(report, out, format);
      if (const auto* fail = report.first_failure()) {
        std::cerr << "FAIL " << fail->suite << "/" << fail->name << ": " << fail->detail << "\n";
        return kExitFailedCheck;
      }
      return 0;
    }

    auto print = [](const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; };
    if (*cpm) print(lab::compute_cpm(genfun_path));
    else if (*order) print(lab::compute_order(f_path, g_path));
    else if (*sky) print(lab::compute_sky(sky_t, sky_y, copt));
    else if (*classify) print(lab::compute_classify(curve_path, copt));
    else if (*isotopy) print(lab::compute_isotopy(iso_path));
    else if (*lift) lab::compute_lift(sphere_path, copt, std::cout);
    else if (*escape) lab::compute_escape(events_path, probe_a, probe_b, copt, std::cout);
    return 0;
  } catch (const leglab::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
