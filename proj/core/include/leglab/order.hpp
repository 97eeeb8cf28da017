#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leglab/genfun.hpp"
#include "leglab/scalar_field.hpp"

namespace leglab {

// Graph of j^1 f in J^1(L), identified with its potential f.
class GraphLegendrian {
 public:
  explicit GraphLegendrian(ScalarField f) : field_(std::move(f)) {}

  const ScalarField& potential() const { return field_; }
  const BaseDomain& domain() const { return field_.domain(); }

  // Reeb translate tau_r: f + r.
  GraphLegendrian reeb(double r) const { return GraphLegendrian(field_.shifted(r)); }

 private:
  ScalarField field_;
};

// Sample-wise differences at or below this are treated as equality.
inline constexpr double kFieldEqualityTolerance = 1e-12;

bool fields_equal(const GraphLegendrian& a, const GraphLegendrian& b);
double sup_distance(const GraphLegendrian& a, const GraphLegendrian& b);

enum class Relation { leq, lt };

struct OrderVerdict {
  Relation relation = Relation::leq;
  bool holds = false;
  std::optional<std::size_t> first_violation_sample;
};

// a <= b: non-negative isotopy exists, i.e. f <= g pointwise.
bool leq(const GraphLegendrian& a, const GraphLegendrian& b);
// a << b: positive isotopy exists; realized as f < g at every sample.
bool lt_strict(const GraphLegendrian& a, const GraphLegendrian& b);
OrderVerdict compare(const GraphLegendrian& a, const GraphLegendrian& b, Relation rel);

// Interval (lower, upper) = { z : lower << z << upper }.
class IntervalSpec {
 public:
  // Throws InvalidArgument unless lower << upper.
  IntervalSpec(GraphLegendrian lower, GraphLegendrian upper);

  // (tau_{-eps} center, tau_eps center)
  static IntervalSpec around(const GraphLegendrian& center, double eps);

  const GraphLegendrian& lower() const { return lower_; }
  const GraphLegendrian& upper() const { return upper_; }

 private:
  GraphLegendrian lower_;
  GraphLegendrian upper_;
};

bool interval_contains(const IntervalSpec& interval, const GraphLegendrian& z);

struct SeparationWitness {
  double epsilon = 0.0;
  IntervalSpec first;
  IntervalSpec second;
  bool disjoint = false;
};

// eps = sup|f - g| / 3 with the intervals of radius eps around a and b.
// Empty when a and b agree on the grid.
std::optional<SeparationWitness> separation_witness(const GraphLegendrian& a,
                                                    const GraphLegendrian& b);

// Frames f_t of a graph isotopy on one domain.
class IsotopyPath {
 public:
  IsotopyPath(std::vector<double> times, std::vector<ScalarField> frames);

  const std::vector<double>& times() const { return times_; }
  const std::vector<ScalarField>& frames() const { return frames_; }
  std::size_t size() const { return times_.size(); }

  // Forward difference quotients (f_{k+1} - f_k) / (t_{k+1} - t_k); the
  // contact Hamiltonian of the isotopy evaluated at each sample.
  std::vector<std::vector<double>> hamiltonian_samples() const;

 private:
  std::vector<double> times_;
  std::vector<ScalarField> frames_;
};

enum class IsotopySign { positive, nonnegative, neither };

IsotopySign is_nonnegative_isotopy(const IsotopyPath& path);

struct MonotonicityReport {
  IsotopySign sign = IsotopySign::neither;
  std::vector<double> times;
  std::vector<double> c_minus;
  std::vector<double> c_plus;
  bool non_decreasing = true;
  bool strictly_increasing = true;
  // Times (t_k, t_{k+1}) of the first step violating the expected monotonicity.
  std::optional<std::pair<double, double>> violation;

  bool ok() const { return !violation.has_value(); }
};

inline constexpr double kMonotonicityTolerance = 1e-9;

// c+- of every frame; must be non-decreasing (strictly increasing for
// positive paths). Throws InvalidArgument for paths classified `neither`.
MonotonicityReport monotonicity_audit(const IsotopyPath& path,
                                      double tol = kMonotonicityTolerance);

// Point of R/Z, normalized to [0, 1).
class CyclicPoint {
 public:
  explicit CyclicPoint(double angle);
  double angle() const { return angle_; }

 private:
  double angle_;
};

// Positive paths on S^1 may wrap, so every point reaches every other one.
// Returns the length of the shortest positive path from a to b (in (0, 1]).
double cyclic_positive_displacement(CyclicPoint a, CyclicPoint b);
bool cyclic_lt(CyclicPoint a, CyclicPoint b);
bool cyclic_interval_contains(CyclicPoint lower, CyclicPoint upper, CyclicPoint z);

struct LineInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return lower < x && x < upper; }
};

bool line_intervals_separate(double x, double y, LineInterval ix, LineInterval iy);

struct CirclePairVerdict {
  std::size_t i = 0;
  std::size_t j = 0;
  // S^1: a point lying in every interval around either endpoint.
  bool circle_separated = true;
  double circle_common_point = 0.0;
  // R (lifts in [0, 1)): disjoint intervals of radius |x - y| / 3.
  bool line_separated = false;
  LineInterval line_first;
  LineInterval line_second;
};

struct CircleDemoReport {
  std::vector<CyclicPoint> points;
  std::vector<CirclePairVerdict> pairs;
  // Every nondegenerate interval (a, b) spanned by two input points contains
  // all input points.
  bool circle_intervals_contain_everything = false;
  bool circle_non_hausdorff = false;  // no pair separated
  bool line_hausdorff = false;        // every pair separated
};

// Throws InvalidArgument for fewer than two distinct points.
CircleDemoReport circle_demo(const std::vector<CyclicPoint>& points);

const char* to_string(IsotopySign s);
const char* to_string(Relation r);

}  // namespace leglab
