#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "leglab/leglab.hpp"

namespace lab {

namespace {

using namespace leglab;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kCircleDefault = BaseDomain::kDefaultCircleResolution;
constexpr std::size_t kSphereDefault = BaseDomain::kDefaultSphereResolution;

struct Context {
  const ExperimentConfig& config;
  RunReport& report;
  std::mt19937_64 rng;
  const char* suite;

  BaseDomain circle() const { return BaseDomain::circle(config.resolution.value_or(kCircleDefault)); }
  BaseDomain sphere() const { return BaseDomain::sphere(3, config.resolution.value_or(kSphereDefault)); }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng); }

  void check(std::string name, bool passed, std::string detail) {
    report.checks.push_back({suite, std::move(name), passed, std::move(detail)});
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

std::string ratio(std::size_t good, std::size_t total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

Eigen::VectorXd random_vector(Context& cx, int n, double scale) {
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v[k] = cx.uniform(-scale, scale);
  return v;
}

Eigen::VectorXd random_unit(Context& cx, int n) {
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v[k] = cx.normal();
  return v.normalized();
}

// Trigonometric polynomial of degree <= 3 on S^1, kept in closed form.
ScalarField random_trig_field(Context& cx, const BaseDomain& d, double scale = 1.0) {
  std::array<double, 4> a{}, b{};
  for (int k = 0; k < 4; ++k) {
    a[k] = cx.uniform(-scale, scale) / (1.0 + k);
    b[k] = cx.uniform(-scale, scale) / (1.0 + k);
  }
  return ScalarField::from_function(d, [a, b](const Eigen::VectorXd& q) {
    const double th = std::atan2(q[1], q[0]);
    double s = a[0];
    for (int k = 1; k < 4; ++k) s += a[k] * std::cos(k * th) + b[k] * std::sin(k * th);
    return s;
  });
}

// ---------------------------------------------------------------------------
// cpm

void suite_cpm(Context& cx) {
  const BaseDomain d = cx.circle();
  const double tol = cx.config.tol.graph;

  {
    const auto f = ScalarField::from_function(d, [](const Eigen::VectorXd& q) { return q[0]; });
    const auto p = c_invariants(GeneratingFunction::graph(f));
    const bool ok = std::abs(p.c_minus + 1) <= tol && std::abs(p.c_plus - 1) <= tol;
    cx.check("cosine_graph", ok, "c- = " + fmt(p.c_minus) + ", c+ = " + fmt(p.c_plus));
  }

  // 1. f = a + b cos
  {
    Table t{{"a", "b", "c_minus", "c_plus"}, {}};
    std::size_t good = 0;
    bool fast = true;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double a = cx.uniform(-5, 5), b = cx.uniform(-5, 5);
      const auto start = Clock::now();
      const auto f = ScalarField::from_function(
          d, [a, b](const Eigen::VectorXd& q) { return a + b * q[0]; });
      const auto p = c_invariants(GeneratingFunction::graph(f));
      fast = fast && Clock::now() - start < std::chrono::seconds(1);
      const double err = std::max(std::abs(p.c_minus - (a - std::abs(b))),
                                  std::abs(p.c_plus - (a + std::abs(b))));
      worst = std::max(worst, err);
      if (err <= tol) ++good;
      t.rows.push_back({a, b, p.c_minus, p.c_plus});
    }
    cx.report.tables["graph_invariants"] = std::move(t);
    cx.check("c01_graph_invariants", good == 50 && fast,
             ratio(good, 50) + " within " + fmt(tol) + ", max error " + fmt(worst) +
                 (fast ? "" : ", a case exceeded 1 s"));
  }

  // 2. constant graph
  {
    bool ok = true;
    std::string detail;
    for (double c : {3.0, -1.25, 0.0}) {
      for (auto qf : {QuadraticForm{}, QuadraticForm::standard(1, 0), QuadraticForm::standard(0, 1)}) {
        const auto gf = GeneratingFunction::graph(ScalarField::constant(d, c), qf, 33);
        const auto p = c_invariants(gf);
        const auto found = detect_constant_graph(gf, 1e-9);
        if (p.c_minus != c || p.c_plus != c || !found || *found != c) {
          ok = false;
          detail = "failed for c = " + fmt(c) + " with N = " + std::to_string(qf.dim());
        }
      }
    }
    cx.check("c02_constant_graph", ok, ok ? "c+ = c- = c exactly; cloud check passed" : detail);
  }

  // 3. Reeb shift
  {
    const BaseDomain small = BaseDomain::circle(64);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      GeneratingFunction::Definition def{
          .base = small,
          .qform = k % 2 ? QuadraticForm::standard(1, 0) : QuadraticForm::standard(0, 1)};
      const double eps = cx.uniform(-0.5, 0.5);
      const Eigen::VectorXd w = random_vector(cx, 2, 1.0);
      def.sigma = [eps, w](const Eigen::VectorXd& q, std::span<const double> xi) {
        return eps * smooth_bump(std::abs(xi[0])) * (1.0 + w.dot(q));
      };
      def.grid = AuxGrid{1.5, 33};
      def.potential = random_trig_field(cx, small);
      def.constant = cx.uniform(-1, 1);
      const GeneratingFunction gf(def);
      const double r = cx.uniform(-10, 10);
      const auto p0 = c_invariants(gf);
      const auto p1 = c_invariants(reeb_shift(gf, r));
      worst = std::max({worst, std::abs(p1.c_minus - (p0.c_minus + r)),
                        std::abs(p1.c_plus - (p0.c_plus + r))});
    }
    cx.check("c03_reeb_shift", worst <= cx.config.tol.shift,
             "max deviation " + fmt(worst) + " over 100 pairs");
  }

  // 4. stabilization f +- xi^2
  {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto f = random_trig_field(cx, d);
      const auto bare = c_invariants(GeneratingFunction::graph(f));
      for (auto qf : {QuadraticForm::standard(1, 0), QuadraticForm::standard(0, 1)}) {
        const auto p = c_invariants(GeneratingFunction::graph(f, qf));
        worst = std::max({worst, std::abs(p.c_minus - bare.c_minus),
                          std::abs(p.c_plus - bare.c_plus)});
      }
    }
    cx.check("c04_stabilization", worst <= cx.config.tol.stabilization,
             "max deviation " + fmt(worst) + " over 20 fields, both signs");
  }
}

// ---------------------------------------------------------------------------
// order

void suite_order(Context& cx) {
  const BaseDomain d = cx.circle();

  // 5. interval membership against the sup norm
  {
    std::size_t agree = 0, inside = 0;
    for (int k = 0; k < 200; ++k) {
      const GraphLegendrian g(random_trig_field(cx, d));
      const GraphLegendrian f(
          ScalarField::combine(1.0, g.potential(), cx.uniform(0.0, 0.5), random_trig_field(cx, d)));
      const double eps = cx.uniform(0.01, 1.0);
      const bool member = interval_contains(IntervalSpec::around(g, eps), f);
      inside += member;
      if (member == (sup_distance(f, g) < eps)) ++agree;
    }
    cx.check("c05_interval_sup_norm", agree == 200,
             ratio(agree, 200) + " agree (" + std::to_string(inside) + " members)");
  }

  // 6. monotonicity along non-negative isotopies
  {
    std::size_t ok = 0, positive = 0;
    std::string first;
    for (int k = 0; k < 50; ++k) {
      const auto base = random_trig_field(cx, d);
      const auto h = random_trig_field(cx, d);
      const bool strict = k % 2 == 0;
      // Speed max(h, 0) vanishes on an arc; 0.1 + h^2 never does.
      std::vector<double> speed(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) {
        speed[i] = strict ? 0.1 + h.value(i) * h.value(i) : std::max(h.value(i), 0.0);
      }
      std::vector<double> times(20);
      std::vector<ScalarField> frames;
      for (int s = 0; s < 20; ++s) {
        times[s] = s / 19.0;
        const double phi = times[s] + 0.5 * times[s] * times[s];
        std::vector<double> v(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) v[i] = base.value(i) + phi * speed[i];
        frames.emplace_back(d, std::move(v));
      }
      const IsotopyPath path(times, frames);
      const auto r = monotonicity_audit(path, cx.config.tol.monotone);
      positive += r.sign == IsotopySign::positive;
      const bool pass = r.ok() && r.non_decreasing &&
                        (r.sign != IsotopySign::positive || r.strictly_increasing);
      if (pass) {
        ++ok;
      } else if (first.empty()) {
        first = "path " + std::to_string(k) + " violates monotonicity";
        if (r.violation) first += " between t = " + fmt(r.violation->first) + " and " + fmt(r.violation->second);
      }
    }
    cx.check("c06_monotonicity", ok == 50,
             first.empty() ? ratio(ok, 50) + " monotone (" + std::to_string(positive) + " positive)"
                           : first);
  }

  // 7. separation witnesses
  {
    std::size_t ok = 0;
    for (int k = 0; k < 100; ++k) {
      const GraphLegendrian a(random_trig_field(cx, d));
      const GraphLegendrian b(random_trig_field(cx, d));
      const auto w = separation_witness(a, b);
      if (w && w->disjoint && 2.0 * w->epsilon < sup_distance(a, b)) ++ok;
    }
    cx.check("c07_separation", ok == 100, ratio(ok, 100) + " pairs separated");
  }
}

// ---------------------------------------------------------------------------
// hodograph

void suite_hodograph(Context& cx) {
  const BaseDomain d = cx.sphere();
  double worst_trip = 0.0;
  for (int k = 0; k < 1000; ++k) {
    JetPoint j{random_unit(cx, 3), random_vector(cx, 3, 2.0), cx.uniform(-3, 3)};
    j.p -= j.p.dot(j.q) * j.q;
    const auto back = hodograph_inverse(hodograph_forward(j));
    worst_trip = std::max({worst_trip, (back.q - j.q).norm(), (back.p - j.p).norm(),
                           std::abs(back.u - j.u)});
  }
  const auto form = contact_form_check(1000, 3, cx.rng(), cx.config.tol.form);
  bool fiber = true;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto c = hodograph_forward({d.sample(i), Eigen::VectorXd::Zero(3), 0.0});
    fiber = fiber && c.point.isZero(0.0) && c.conormal == d.sample(i);
  }
  const bool ok = worst_trip <= cx.config.tol.roundtrip && form.passed && fiber;
  cx.check("c08_hodograph", ok,
           "round trip " + fmt(worst_trip) + ", form deviation " + fmt(form.max_deviation) +
               (fiber ? ", zero section onto fiber over 0" : ", zero section misses the fiber"));
}

// ---------------------------------------------------------------------------
// causality

MinkowskiEvent random_event(Context& cx, double scale = 2.0) {
  return {cx.uniform(-scale, scale), random_vector(cx, 3, scale)};
}

void suite_causality(Context& cx) {
  const BaseDomain d = cx.sphere();

  // 9. skies
  {
    Table t{{"t", "y1", "y2", "y3", "c_minus", "c_plus", "grid_c_minus", "grid_c_plus"}, {}};
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto x = random_event(cx);
      const auto s = sky(x, d, std::numeric_limits<double>::infinity());
      const double r = x.y.norm();
      worst = std::max({worst, std::abs(s.grid_invariants.c_minus - (x.t - r)),
                        std::abs(s.grid_invariants.c_plus - (x.t + r)),
                        std::abs(s.invariants.c_minus - (x.t - r)),
                        std::abs(s.invariants.c_plus - (x.t + r))});
      t.rows.push_back({x.t, x.y[0], x.y[1], x.y[2], s.invariants.c_minus, s.invariants.c_plus,
                        s.grid_invariants.c_minus, s.grid_invariants.c_plus});
    }
    const auto origin = sky({0.0, Eigen::VectorXd::Zero(3)}, d);
    const bool exact = origin.invariants.c_minus == 0.0 && origin.invariants.c_plus == 0.0 &&
                       origin.grid_invariants.c_minus == 0.0 && origin.grid_invariants.c_plus == 0.0;
    cx.report.tables["skies"] = std::move(t);
    cx.check("c09_skies", worst <= cx.config.tol.sky && exact,
             "max deviation " + fmt(worst) + (exact ? ", sky(0,0) = (0,0)" : ", sky(0,0) not exact"));
  }

  // 10. sky order compatibility and its converse
  {
    std::size_t forward = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto x = random_event(cx);
      const Eigen::VectorXd dy = random_unit(cx, 3) * cx.uniform(0.0, 2.0);
      const MinkowskiEvent z{x.t + dy.norm() + cx.uniform(1e-3, 1.0), x.y + dy};
      if (sky_order_audit(x, z, d).verdict == AuditVerdict::pass) ++forward;
    }
    std::size_t strict = 0, converse = 0, draws = 0, artifacts = 0;
    while (strict < 1000 && draws < 200000) {
      ++draws;
      const auto x = random_event(cx), z = random_event(cx);
      const auto r = sky_order_audit(x, z, d);
      if (r.pointwise_strict && !(r.potential_gap > 0.0)) ++artifacts;
      if (!(r.potential_gap > 0.0)) continue;
      ++strict;
      if (chronology(x, z)) ++converse;
    }
    cx.check("c10_sky_order", forward == 1000 && strict == 1000 && converse == 1000,
             "chronological " + ratio(forward, 1000) + ", converse " + ratio(converse, strict) +
                 " (" + std::to_string(artifacts) + " grid-only strict pairs set aside)");
  }

  // 11. curve classification through null directions
  {
    std::size_t agree = 0;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      VelocityVector v{0.0, random_vector(cx, 3, 1.0)};
      switch (k % 4) {
        case 0: v.dt = v.dy.norm() + cx.uniform(1e-3, 1.0); break;   // timelike
        case 1: v.dt = v.dy.norm(); break;                           // null
        case 2: v.dt = cx.uniform(-1.0, 1.0) * v.dy.norm(); break;   // spacelike
        default: v.dt = -v.dy.norm() - cx.uniform(0.0, 1.0); break;  // past
      }
      const auto m = null_direction_minimum(v, d);
      worst = std::max(worst, std::abs(m.refined_min - m.closed_form));
      const auto c = classify_vector(v);
      const IsotopySign expected = c == CausalCharacter::future_timelike ? IsotopySign::positive
                                   : c == CausalCharacter::future_causal_null || c == CausalCharacter::zero
                                       ? IsotopySign::nonnegative
                                       : IsotopySign::neither;
      if (sign_of_alpha_min(m.refined_min) == expected) ++agree;
    }
    cx.check("c11_curve_classification", agree == 1000 && worst <= cx.config.tol.null_min,
             ratio(agree, 1000) + " agree, max |min - (dt - |dy|)| " + fmt(worst));
  }
}

// ---------------------------------------------------------------------------
// escape

void suite_escape(Context& cx) {
  const BaseDomain d = cx.sphere();
  std::vector<MinkowskiEvent> seq;
  for (int k = 1; k <= 20; ++k) seq.push_back({static_cast<double>(k), Eigen::VectorXd::Zero(3)});
  const MinkowskiEvent a{-1.0, Eigen::VectorXd::Zero(3)}, b{1.0, Eigen::VectorXd::Zero(3)};
  const auto r = escape_audit(seq, a, b, d);
  Table t{{"k", "c_minus", "c_plus", "abs_sum", "in_interval"}, {}};
  bool ok = r.exit_index == std::optional<std::size_t>(1) && r.diverging;
  for (const auto& row : r.rows) {
    ok = ok && !row.in_interval && row.abs_sum == 2.0 * static_cast<double>(row.k);
    t.rows.push_back({static_cast<double>(row.k), row.c_minus, row.c_plus, row.abs_sum,
                      row.in_interval ? 1.0 : 0.0});
  }
  cx.report.tables["escape"] = std::move(t);
  cx.check("c12_escape", ok,
           std::string("exit index ") + (r.exit_index ? std::to_string(*r.exit_index) : "none") +
               (r.diverging ? ", |c+| + |c-| = 2k diverging" : ", not diverging"));
}

// ---------------------------------------------------------------------------
// circle

void suite_circle(Context& cx) {
  std::vector<CyclicPoint> pts;
  for (int k = 0; k < 10; ++k) pts.emplace_back(cx.uniform(0.0, 1.0));
  const auto r = circle_demo(pts);
  std::size_t circle_open = 0, line_sep = 0;
  for (const auto& p : r.pairs) {
    circle_open += !p.circle_separated;
    line_sep += p.line_separated;
  }
  const std::size_t n = r.pairs.size();
  cx.check("c13_circle", r.circle_intervals_contain_everything && circle_open == n && line_sep == n,
           "S^1 non-separated " + ratio(circle_open, n) + ", R separated " + ratio(line_sep, n));
}

using SuiteFn = void (*)(Context&);

struct SuiteEntry {
  Suite suite;
  SuiteFn fn;
};

constexpr SuiteEntry kOrder[] = {
    {Suite::cpm, suite_cpm},       {Suite::order, suite_order},   {Suite::hodograph, suite_hodograph},
    {Suite::causality, suite_causality}, {Suite::escape, suite_escape}, {Suite::circle, suite_circle},
};

}  // namespace

RunReport run(const ExperimentConfig& config) {
  RunReport report;
  report.config = config;
  const auto start = Clock::now();
  for (const auto& e : kOrder) {
    if (config.suite != Suite::all && config.suite != e.suite) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(e.suite)};
    Context cx{config, report, std::mt19937_64(seq), to_string(e.suite)};
    try {
      e.fn(cx);
    } catch (const leglab::Error& err) {
      cx.check("suite_error", false, err.what());
    }
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

}  // namespace lab
