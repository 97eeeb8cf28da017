#include "leglab/causality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

namespace {

double null_scale(double dt, const Eigen::VectorXd& dy) {
  return kNullTolerance * std::max({1.0, std::abs(dt), dy.norm()});
}

void require_event(const MinkowskiEvent& x) {
  if (!std::isfinite(x.t) || !x.y.allFinite()) throw InvalidArgument("non-finite event");
}

void require_same_dim(const MinkowskiEvent& a, const MinkowskiEvent& b) {
  if (a.y.size() != b.y.size()) throw DomainMismatch("events live in different dimensions");
}

MinimaxPair closed_form_sky_pair(const MinkowskiEvent& x, const ScalarField& f) {
  MinimaxPair p;
  const double r = x.y.norm();
  p.c_minus = x.t - r;
  p.c_plus = x.t + r;
  p.minus_witness.base_index = f.argmin();
  p.plus_witness.base_index = f.argmax();
  p.method = MinimaxMethod::closed_form_graph;
  return p;
}

}  // namespace

double minkowski_square(const VelocityVector& v) { return v.dt * v.dt - v.dy.squaredNorm(); }

CausalCharacter classify_vector(const VelocityVector& v) {
  if (!std::isfinite(v.dt) || !v.dy.allFinite()) throw InvalidArgument("non-finite vector");
  const double space = v.dy.norm();
  if (v.dt == 0.0 && space == 0.0) return CausalCharacter::zero;
  const double diff = std::abs(v.dt) - space;
  const double tol = null_scale(v.dt, v.dy);
  if (v.dt == 0.0 || diff < -tol) return CausalCharacter::spacelike;
  if (diff <= tol) {
    return v.dt > 0.0 ? CausalCharacter::future_causal_null : CausalCharacter::past_causal;
  }
  return v.dt > 0.0 ? CausalCharacter::future_timelike : CausalCharacter::past_timelike;
}

VelocityVector displacement(const MinkowskiEvent& from, const MinkowskiEvent& to) {
  require_same_dim(from, to);
  return VelocityVector{to.t - from.t, to.y - from.y};
}

bool chronology(const MinkowskiEvent& x, const MinkowskiEvent& z) {
  return classify_vector(displacement(x, z)) == CausalCharacter::future_timelike;
}

bool causal(const MinkowskiEvent& x, const MinkowskiEvent& z) {
  const VelocityVector d = displacement(x, z);
  const CausalCharacter c = classify_vector(d);
  return c == CausalCharacter::zero || c == CausalCharacter::future_timelike ||
         c == CausalCharacter::future_causal_null;
}

bool alexandrov_contains(const MinkowskiEvent& a, const MinkowskiEvent& b,
                         const MinkowskiEvent& z) {
  return chronology(a, z) && chronology(z, b);
}

AlexandrovProbeReport alexandrov_basis_probe(const MinkowskiEvent& x, double delta,
                                             std::uint64_t seed, std::size_t samples) {
  require_event(x);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("delta must be positive");
  AlexandrovProbeReport report{.epsilon = delta / 2.0, .delta = delta};
  const double eps = report.epsilon;
  const MinkowskiEvent a{x.t - eps, x.y};
  const MinkowskiEvent b{x.t + eps, x.y};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t max_draws = samples * 10'000;
  MinkowskiEvent z{0.0, Eigen::VectorXd(x.y.size())};
  for (std::size_t draw = 0; draw < max_draws && report.samples < samples; ++draw) {
    z.t = x.t + eps * unit(rng);
    for (Eigen::Index k = 0; k < z.y.size(); ++k) z.y[k] = x.y[k] + eps * unit(rng);
    if (!alexandrov_contains(a, b, z)) continue;
    ++report.samples;
    const double dist = std::sqrt((z.t - x.t) * (z.t - x.t) + (z.y - x.y).squaredNorm());
    report.max_distance = std::max(report.max_distance, dist);
  }
  report.contained = report.samples > 0 && report.max_distance < delta;
  return report;
}

NullDirectionMinimum null_direction_minimum(const VelocityVector& v,
                                            const BaseDomain& directions) {
  if (v.dy.size() != directions.ambient_dim()) {
    throw DomainMismatch("velocity dimension does not match the direction grid");
  }
  NullDirectionMinimum out;
  std::size_t best = 0;
  double best_val = v.dt - directions.sample(0).dot(v.dy);
  for (std::size_t i = 1; i < directions.size(); ++i) {
    const double a = v.dt - directions.sample(i).dot(v.dy);
    if (a < best_val) {
      best_val = a;
      best = i;
    }
  }
  out.grid_min = best_val;
  out.closed_form = v.dt - v.dy.norm();

  // Riemannian Newton on the sphere for the linear functional <v, dy>.
  Eigen::VectorXd dir = directions.sample(best);
  double refined = best_val;
  for (int iter = 0; iter < 8; ++iter) {
    const double c = dir.dot(v.dy);
    if (!(c > 0.0)) break;
    const Eigen::VectorXd g = v.dy - c * dir;
    if (g.norm() <= 1e-15 * v.dy.norm()) break;
    const Eigen::VectorXd next = (dir + g / c).normalized();
    const double val = v.dt - next.dot(v.dy);
    if (!(val < refined)) break;
    refined = val;
    dir = next;
  }
  out.refined_min = refined;
  out.argmin = dir;
  return out;
}

ScalarField sky_potential(const MinkowskiEvent& x, const BaseDomain& domain) {
  require_event(x);
  if (x.y.size() != domain.ambient_dim()) {
    throw DomainMismatch("event space dimension does not match the sky grid");
  }
  const Eigen::VectorXd y = x.y;
  const double t = x.t;
  return ScalarField::from_function(domain,
                                    [y, t](const Eigen::VectorXd& q) { return y.dot(q) + t; });
}

SkyDescriptor sky(const MinkowskiEvent& x, const BaseDomain& domain, double grid_tol) {
  ScalarField f = sky_potential(x, domain);
  MinimaxPair closed = closed_form_sky_pair(x, f);
  // Grid route through the generating-function minimax with a V+ axis.
  MinimaxPair grid =
      c_invariants(GeneratingFunction::graph(f, QuadraticForm::standard(1, 0), 33));
  const double dev = std::max(std::abs(grid.c_minus - closed.c_minus),
                              std::abs(grid.c_plus - closed.c_plus));
  if (dev > grid_tol) {
    throw ConsistencyError("sky invariants: grid minimax deviates from t -+ |y| by " +
                           std::to_string(dev));
  }
  return SkyDescriptor{x, std::move(f), closed, grid};
}

SkyOrderReport sky_order_audit(const MinkowskiEvent& x, const MinkowskiEvent& z,
                               const BaseDomain& domain) {
  require_same_dim(x, z);
  SkyOrderReport r;
  r.chronological = chronology(x, z);
  const GraphLegendrian sx(sky_potential(x, domain));
  const GraphLegendrian sz(sky_potential(z, domain));
  r.pointwise_strict = lt_strict(sx, sz);

  const VelocityVector d = displacement(x, z);
  r.potential_gap = null_direction_minimum(VelocityVector{d.dt, -d.dy}, domain).refined_min;

  const double rx = x.y.norm();
  const double rz = z.y.norm();
  r.invariants_increase = (z.t - rz > x.t - rx) && (z.t + rz > x.t + rx);

  if (r.chronological) {
    const bool ok = r.pointwise_strict && r.invariants_increase;
    r.verdict = ok ? AuditVerdict::pass : AuditVerdict::fail;
    if (!r.pointwise_strict) {
      r.detail = "chronological pair without pointwise-strict sky potentials";
    } else if (!r.invariants_increase) {
      r.detail = "chronological pair without strict increase of c+-";
    }
    return r;
  }
  if (r.pointwise_strict && r.potential_gap > 0.0) {
    r.verdict = AuditVerdict::fail;
    r.detail = "sky potentials strictly ordered but events not chronological";
  } else if (r.pointwise_strict) {
    r.verdict = AuditVerdict::no_claim;
    r.detail = "grid-strict only; continuous minimum of the potential gap is not positive";
  } else {
    r.verdict = AuditVerdict::no_claim;
  }
  return r;
}

void validate(const SampledCurve& c) {
  if (c.time_samples.size() < 2) throw InvalidArgument("a sampled curve needs >= 2 samples");
  if (c.events.size() != c.time_samples.size()) {
    throw InvalidArgument("sampled curve: one event per time sample required");
  }
  for (std::size_t k = 0; k < c.events.size(); ++k) {
    require_event(c.events[k]);
    require_same_dim(c.events.front(), c.events[k]);
    if (!std::isfinite(c.time_samples[k])) throw InvalidArgument("non-finite curve parameter");
    if (k > 0 && !(c.time_samples[k] > c.time_samples[k - 1])) {
      throw InvalidArgument("curve parameters must be strictly increasing");
    }
  }
}

IsotopySign sign_of_alpha_min(double min_alpha) {
  if (min_alpha > kNullTolerance) return IsotopySign::positive;
  if (min_alpha >= -kNullTolerance) return IsotopySign::nonnegative;
  return IsotopySign::neither;
}

CurvePositivityReport curve_positivity(const SampledCurve& curve, const BaseDomain& directions) {
  validate(curve);
  CurvePositivityReport report;
  report.classification = IsotopySign::positive;
  for (std::size_t k = 0; k + 1 < curve.events.size(); ++k) {
    const double ds = curve.time_samples[k + 1] - curve.time_samples[k];
    VelocityVector v = displacement(curve.events[k], curve.events[k + 1]);
    v.dt /= ds;
    v.dy /= ds;
    const NullDirectionMinimum m = null_direction_minimum(v, directions);
    const CausalCharacter ch = classify_vector(v);
    const double scale = std::max({1.0, std::abs(v.dt), v.dy.norm()});
    const IsotopySign sign = sign_of_alpha_min(m.refined_min / scale);

    IsotopySign expected = IsotopySign::neither;
    if (ch == CausalCharacter::future_timelike) expected = IsotopySign::positive;
    if (ch == CausalCharacter::future_causal_null || ch == CausalCharacter::zero) {
      expected = IsotopySign::nonnegative;
    }
    if (sign != expected) {
      throw ConsistencyError(std::string("velocity ") + std::to_string(k) + " is " +
                             to_string(ch) + " but the contact-form sign is " + to_string(sign));
    }
    report.min_alpha.push_back(m.refined_min);
    report.grid_min_alpha.push_back(m.grid_min);
    report.characters.push_back(ch);
    if (sign == IsotopySign::neither) {
      report.classification = IsotopySign::neither;
    } else if (sign == IsotopySign::nonnegative &&
               report.classification == IsotopySign::positive) {
      report.classification = IsotopySign::nonnegative;
    }
  }
  return report;
}

EscapeReport escape_audit(const std::vector<MinkowskiEvent>& sequence, const MinkowskiEvent& a,
                          const MinkowskiEvent& b, const BaseDomain& domain) {
  const IntervalSpec probe(GraphLegendrian(sky_potential(a, domain)),
                           GraphLegendrian(sky_potential(b, domain)));
  EscapeReport report;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const MinkowskiEvent& x = sequence[k];
    const GraphLegendrian s(sky_potential(x, domain));
    const double r = x.y.norm();
    EscapeRow row{.k = k + 1, .c_minus = x.t - r, .c_plus = x.t + r};
    row.abs_sum = std::abs(row.c_minus) + std::abs(row.c_plus);
    row.in_interval = interval_contains(probe, s);
    report.rows.push_back(row);
  }
  std::size_t first_out = report.rows.size();
  while (first_out > 0 && !report.rows[first_out - 1].in_interval) --first_out;
  if (first_out < report.rows.size()) {
    report.exit_index = report.rows[first_out].k;
    bool monotone = true;
    for (std::size_t k = first_out + 1; k < report.rows.size(); ++k) {
      monotone = monotone && report.rows[k].abs_sum >= report.rows[k - 1].abs_sum;
    }
    report.diverging = monotone && report.rows.size() - first_out >= 2 &&
                       report.rows.back().abs_sum > report.rows[first_out].abs_sum;
  }
  return report;
}

const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::future_timelike: return "future_timelike";
    case CausalCharacter::future_causal_null: return "future_causal_null";
    case CausalCharacter::spacelike: return "spacelike";
    case CausalCharacter::past_causal: return "past_causal";
    case CausalCharacter::past_timelike: return "past_timelike";
    case CausalCharacter::zero: return "zero";
  }
  return "zero";
}

const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::pass: return "pass";
    case AuditVerdict::fail: return "fail";
    case AuditVerdict::no_claim: return "no_claim";
  }
  return "no_claim";
}

}  // namespace leglab
