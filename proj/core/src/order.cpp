#include "leglab/order.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

bool fields_equal(const GraphLegendrian& a, const GraphLegendrian& b) {
  return sup_distance(a, b) <= kFieldEqualityTolerance;
}

double sup_distance(const GraphLegendrian& a, const GraphLegendrian& b) {
  require_same_domain(a.domain(), b.domain());
  const auto fa = a.potential().values();
  const auto fb = b.potential().values();
  double d = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) d = std::max(d, std::abs(fa[i] - fb[i]));
  return d;
}

OrderVerdict compare(const GraphLegendrian& a, const GraphLegendrian& b, Relation rel) {
  require_same_domain(a.domain(), b.domain());
  OrderVerdict v{.relation = rel};
  const bool equal = fields_equal(a, b);
  if (equal) {
    v.holds = rel == Relation::leq;
    if (!v.holds) v.first_violation_sample = 0;
    return v;
  }
  const auto fa = a.potential().values();
  const auto fb = b.potential().values();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const bool ok = rel == Relation::leq ? fa[i] <= fb[i] : fa[i] < fb[i];
    if (!ok) {
      v.first_violation_sample = i;
      return v;
    }
  }
  v.holds = true;
  return v;
}

bool leq(const GraphLegendrian& a, const GraphLegendrian& b) {
  return compare(a, b, Relation::leq).holds;
}

bool lt_strict(const GraphLegendrian& a, const GraphLegendrian& b) {
  return compare(a, b, Relation::lt).holds;
}

IntervalSpec::IntervalSpec(GraphLegendrian lower, GraphLegendrian upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!lt_strict(lower_, upper_)) {
    throw InvalidArgument("interval endpoints must satisfy lower << upper");
  }
}

IntervalSpec IntervalSpec::around(const GraphLegendrian& center, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("interval radius must be positive");
  return IntervalSpec(center.reeb(-eps), center.reeb(eps));
}

bool interval_contains(const IntervalSpec& interval, const GraphLegendrian& z) {
  return lt_strict(interval.lower(), z) && lt_strict(z, interval.upper());
}

std::optional<SeparationWitness> separation_witness(const GraphLegendrian& a,
                                                    const GraphLegendrian& b) {
  const double gap = sup_distance(a, b);
  if (gap <= kFieldEqualityTolerance) return std::nullopt;
  const double eps = gap / 3.0;
  SeparationWitness w{
      .epsilon = eps,
      .first = IntervalSpec::around(a, eps),
      .second = IntervalSpec::around(b, eps),
  };
  // z in both would give sup|a - b| <= sup|a - z| + sup|z - b| < 2 eps < gap.
  w.disjoint = 2.0 * eps < gap;
  return w;
}

IsotopyPath::IsotopyPath(std::vector<double> times, std::vector<ScalarField> frames)
    : times_(std::move(times)), frames_(std::move(frames)) {
  if (times_.size() < 2) throw InvalidArgument("an isotopy path needs at least two frames");
  if (frames_.size() != times_.size()) {
    throw InvalidArgument("isotopy path: one frame per time sample required");
  }
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || times_[k] < 0.0 || times_[k] > 1.0) {
      throw InvalidArgument("isotopy time samples must lie in [0, 1]");
    }
    if (k > 0 && !(times_[k] > times_[k - 1])) {
      throw InvalidArgument("isotopy time samples must be strictly increasing");
    }
    require_same_domain(frames_.front().domain(), frames_[k].domain());
  }
}

std::vector<std::vector<double>> IsotopyPath::hamiltonian_samples() const {
  std::vector<std::vector<double>> out;
  out.reserve(times_.size() - 1);
  for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
    const double dt = times_[k + 1] - times_[k];
    const auto f0 = frames_[k].values();
    const auto f1 = frames_[k + 1].values();
    std::vector<double> h(f0.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = (f1[i] - f0[i]) / dt;
    out.push_back(std::move(h));
  }
  return out;
}

IsotopySign is_nonnegative_isotopy(const IsotopyPath& path) {
  bool positive = true;
  for (const auto& step : path.hamiltonian_samples()) {
    for (double h : step) {
      if (h < 0.0) return IsotopySign::neither;
      if (!(h > 0.0)) positive = false;
    }
  }
  return positive ? IsotopySign::positive : IsotopySign::nonnegative;
}

MonotonicityReport monotonicity_audit(const IsotopyPath& path, double tol) {
  MonotonicityReport report;
  report.sign = is_nonnegative_isotopy(path);
  if (report.sign == IsotopySign::neither) {
    throw InvalidArgument("monotonicity audit needs a non-negative isotopy");
  }
  report.times = path.times();
  for (const auto& frame : path.frames()) {
    const MinimaxPair c = c_invariants(GeneratingFunction::graph(frame));
    report.c_minus.push_back(c.c_minus);
    report.c_plus.push_back(c.c_plus);
  }
  for (std::size_t k = 0; k + 1 < report.times.size(); ++k) {
    const double dm = report.c_minus[k + 1] - report.c_minus[k];
    const double dp = report.c_plus[k + 1] - report.c_plus[k];
    if (dm < -tol || dp < -tol) report.non_decreasing = false;
    if (!(dm > 0.0) || !(dp > 0.0)) report.strictly_increasing = false;
    const bool bad = report.sign == IsotopySign::positive ? !(dm > 0.0 && dp > 0.0)
                                                          : (dm < -tol || dp < -tol);
    if (bad && !report.violation) report.violation = {report.times[k], report.times[k + 1]};
  }
  return report;
}

CyclicPoint::CyclicPoint(double angle) {
  if (!std::isfinite(angle)) throw InvalidArgument("non-finite cyclic coordinate");
  angle_ = angle - std::floor(angle);
  if (angle_ >= 1.0) angle_ = 0.0;
}

double cyclic_positive_displacement(CyclicPoint a, CyclicPoint b) {
  const double d = b.angle() - a.angle();
  const double wrapped = d - std::floor(d);
  return wrapped > 0.0 ? wrapped : 1.0;  // a full turn returns to the start
}

bool cyclic_lt(CyclicPoint a, CyclicPoint b) { return cyclic_positive_displacement(a, b) > 0.0; }

bool cyclic_interval_contains(CyclicPoint lower, CyclicPoint upper, CyclicPoint z) {
  return cyclic_lt(lower, z) && cyclic_lt(z, upper);
}

bool line_intervals_separate(double x, double y, LineInterval ix, LineInterval iy) {
  const bool disjoint = ix.upper <= iy.lower || iy.upper <= ix.lower;
  return ix.contains(x) && iy.contains(y) && disjoint;
}

CircleDemoReport circle_demo(const std::vector<CyclicPoint>& points) {
  CircleDemoReport report;
  report.points = points;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j) seen = seen || points[j].angle() == points[i].angle();
    if (!seen) ++distinct;
  }
  if (distinct < 2) throw InvalidArgument("circle demo needs at least two distinct points");

  report.circle_intervals_contain_everything = true;
  for (const auto& a : points) {
    for (const auto& b : points) {
      if (a.angle() == b.angle()) continue;
      for (const auto& z : points) {
        if (!cyclic_interval_contains(a, b, z)) report.circle_intervals_contain_everything = false;
      }
    }
  }

  report.circle_non_hausdorff = true;
  report.line_hausdorff = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double x = points[i].angle();
      const double y = points[j].angle();
      if (x == y) continue;
      CirclePairVerdict v{.i = i, .j = j};
      const double delta = std::abs(x - y) / 3.0;

      // Small arcs around x and y on S^1; x lies in both.
      const CyclicPoint xl(x - delta), xu(x + delta), yl(y - delta), yu(y + delta);
      v.circle_common_point = x;
      v.circle_separated = !(cyclic_interval_contains(xl, xu, points[i]) &&
                             cyclic_interval_contains(yl, yu, points[i]));

      v.line_first = {x - delta, x + delta};
      v.line_second = {y - delta, y + delta};
      v.line_separated = line_intervals_separate(x, y, v.line_first, v.line_second);

      report.circle_non_hausdorff = report.circle_non_hausdorff && !v.circle_separated;
      report.line_hausdorff = report.line_hausdorff && v.line_separated;
      report.pairs.push_back(v);
    }
  }
  return report;
}

const char* to_string(IsotopySign s) {
  switch (s) {
    case IsotopySign::positive: return "positive";
    case IsotopySign::nonnegative: return "nonnegative";
    case IsotopySign::neither: return "neither";
  }
  return "neither";
}

const char* to_string(Relation r) { return r == Relation::leq ? "leq" : "lt"; }

}  // namespace leglab
