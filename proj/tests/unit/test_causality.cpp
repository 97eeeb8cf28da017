#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "leglab/causality.hpp"
#include "leglab/error.hpp"
#include "test_support.hpp"

using namespace leglab;
using leglab::testing::random_unit;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

MinkowskiEvent ev(double t, std::initializer_list<double> y) { return {t, vec(y)}; }

MinkowskiEvent random_event(std::mt19937_64& rng, int n, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  MinkowskiEvent e{u(rng), Eigen::VectorXd(n)};
  for (int k = 0; k < n; ++k) e.y[k] = u(rng);
  return e;
}

const BaseDomain& s2() {
  static const BaseDomain d = BaseDomain::sphere(3, 4096);
  return d;
}

}  // namespace

TEST(ClassifyVector, Examples) {
  EXPECT_EQ(classify_vector({1.0, vec({0, 0})}), CausalCharacter::future_timelike);
  EXPECT_EQ(classify_vector({1.0, vec({1, 0})}), CausalCharacter::future_causal_null);
  EXPECT_EQ(classify_vector({0.5, vec({1, 0})}), CausalCharacter::spacelike);
  EXPECT_EQ(classify_vector({-1.0, vec({1, 0})}), CausalCharacter::past_causal);
  EXPECT_EQ(classify_vector({-2.0, vec({1, 0})}), CausalCharacter::past_timelike);
  EXPECT_EQ(classify_vector({0.0, vec({0, 0})}), CausalCharacter::zero);
  EXPECT_DOUBLE_EQ(minkowski_square({2.0, vec({1, 1})}), 2.0);
}

TEST(Chronology, Examples) {
  EXPECT_TRUE(chronology(ev(0, {0, 0}), ev(2, {1, 0})));
  EXPECT_FALSE(chronology(ev(0, {0, 0}), ev(1, {1, 0})));
  EXPECT_FALSE(chronology(ev(0, {0, 0}), ev(0, {0, 0})));
}

TEST(Causal, Examples) {
  EXPECT_TRUE(causal(ev(0, {0, 0}), ev(1, {1, 0})));
  EXPECT_TRUE(causal(ev(0, {0, 0}), ev(0, {0, 0})));
  EXPECT_FALSE(causal(ev(0, {0, 0}), ev(-1, {0, 0})));
}

TEST(Causality, RelationProperties) {
  std::mt19937_64 rng(31);
  int chains = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const auto x = random_event(rng, 2), w = random_event(rng, 2), z = random_event(rng, 2);
    if (chronology(x, z)) EXPECT_TRUE(causal(x, z));
    if (chronology(x, w) && chronology(w, z)) {
      ++chains;
      EXPECT_TRUE(chronology(x, z));
    }
    if (causal(x, w) && causal(w, z)) EXPECT_TRUE(causal(x, z));
    if (chronology(x, w) && causal(w, z)) EXPECT_TRUE(chronology(x, z));  // push-up
    if (causal(x, z) && causal(z, x)) EXPECT_EQ(displacement(x, z).dy.norm() + std::abs(z.t - x.t), 0.0);
  }
  EXPECT_GT(chains, 40);
}

TEST(Alexandrov, Examples) {
  EXPECT_TRUE(alexandrov_contains(ev(-1, {0}), ev(1, {0}), ev(0, {0})));
  EXPECT_FALSE(alexandrov_contains(ev(-1, {0}), ev(1, {0}), ev(0, {2})));
}

TEST(Alexandrov, DiamondInequality) {
  // Interval between (c - h, y0) and (c + h, y0) is |t - c| + |y - y0| < h.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 5000; ++trial) {
    const double c = u(rng), h = std::abs(u(rng)) + 0.1;
    const auto y0 = vec({u(rng), u(rng)});
    const MinkowskiEvent z{u(rng), vec({u(rng), u(rng)})};
    const bool oracle = std::abs(z.t - c) + (z.y - y0).norm() < h;
    EXPECT_EQ(alexandrov_contains({c - h, y0}, {c + h, y0}, z), oracle);
  }
}

TEST(Alexandrov, BasisProbe) {
  const auto r = alexandrov_basis_probe(ev(0, {0, 0}), 1.0, 7);
  EXPECT_TRUE(r.contained);
  EXPECT_EQ(r.samples, 10000u);
  EXPECT_DOUBLE_EQ(r.epsilon, 0.5);
  EXPECT_LE(r.max_distance, 1.0);
  const auto small = alexandrov_basis_probe(ev(0, {0, 0}), 1e-6, 7);
  EXPECT_TRUE(small.contained);
  const auto shifted = alexandrov_basis_probe(ev(3, {5, -2}), 1.0, 7);
  EXPECT_TRUE(shifted.contained);
  EXPECT_NEAR(shifted.max_distance, r.max_distance, 1e-9);
}

TEST(Sky, Examples) {
  const auto& d = s2();
  const auto o = sky(ev(0, {0, 0, 0}), d);
  EXPECT_EQ(o.invariants.c_minus, 0.0);
  EXPECT_EQ(o.invariants.c_plus, 0.0);
  EXPECT_EQ(o.grid_invariants.c_minus, 0.0);
  EXPECT_EQ(o.grid_invariants.c_plus, 0.0);

  const auto s = sky(ev(2, {1, 0, 0}), d);
  EXPECT_DOUBLE_EQ(s.invariants.c_minus, 1.0);
  EXPECT_DOUBLE_EQ(s.invariants.c_plus, 3.0);
  EXPECT_NEAR(s.grid_invariants.c_minus, 1.0, 1e-2);
  EXPECT_NEAR(s.grid_invariants.c_plus, 3.0, 1e-2);

  const auto past = sky(ev(-1, {0, 0, 0}), d);
  EXPECT_EQ(past.potential.min(), -1.0);
  EXPECT_EQ(past.potential.max(), -1.0);
  EXPECT_EQ(past.invariants.c_minus, -1.0);
  EXPECT_EQ(past.invariants.c_plus, -1.0);
}

TEST(Sky, RandomEventsAgreeWithClosedForm) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_event(rng, 3);
    const auto s = sky(x, s2());
    EXPECT_NEAR(s.invariants.c_minus, x.t - x.y.norm(), 1e-12);
    EXPECT_NEAR(s.invariants.c_plus, x.t + x.y.norm(), 1e-12);
    EXPECT_NEAR(s.grid_invariants.c_minus, x.t - x.y.norm(), 1e-2);
    EXPECT_NEAR(s.grid_invariants.c_plus, x.t + x.y.norm(), 1e-2);
  }
}

TEST(SkyOrder, Examples) {
  const auto r = sky_order_audit(ev(0, {0, 0, 0}), ev(2, {1, 0, 0}), s2());
  EXPECT_EQ(r.verdict, AuditVerdict::pass);
  EXPECT_TRUE(r.pointwise_strict);
  EXPECT_TRUE(r.invariants_increase);
  EXPECT_NEAR(r.potential_gap, 1.0, 1e-9);  // min of q1 + 2
  const auto same = sky_order_audit(ev(1, {0, 1, 0}), ev(1, {0, 1, 0}), s2());
  EXPECT_EQ(same.verdict, AuditVerdict::no_claim);
}

TEST(SkyOrder, RandomChronologicalPairsPass) {
  std::mt19937_64 rng(15);
  const auto d = BaseDomain::sphere(3, 1024);
  std::uniform_real_distribution<double> extra(1e-3, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_event(rng, 3);
    const Eigen::VectorXd dy = random_unit(rng, 3) * extra(rng);
    const MinkowskiEvent z{x.t + dy.norm() + extra(rng), x.y + dy};
    const auto r = sky_order_audit(x, z, d);
    EXPECT_EQ(r.verdict, AuditVerdict::pass) << r.detail;
  }
}

TEST(SkyOrder, ConverseOnPointwiseStrictPairs) {
  // Pointwise strictness on the continuous sphere: gap = dt - |dy| > 0.
  std::mt19937_64 rng(16);
  const auto d = BaseDomain::sphere(3, 1024);
  int strict = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = random_event(rng, 3), z = random_event(rng, 3);
    const auto r = sky_order_audit(x, z, d);
    EXPECT_NE(r.verdict, AuditVerdict::fail) << r.detail;
    if (r.potential_gap > 1e-9) {
      ++strict;
      EXPECT_TRUE(chronology(x, z));
    }
  }
  EXPECT_GT(strict, 50);
}

TEST(NullDirections, MinimumMatchesClosedForm) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const VelocityVector v{g(rng), vec({g(rng), g(rng), g(rng)})};
    const auto m = null_direction_minimum(v, s2());
    EXPECT_DOUBLE_EQ(m.closed_form, v.dt - v.dy.norm());
    EXPECT_NEAR(m.refined_min, m.closed_form, 1e-6);
    EXPECT_GE(m.grid_min, m.closed_form - 1e-12);
    EXPECT_NEAR(m.grid_min, m.closed_form, 5e-3 * v.dy.norm() + 1e-12);
  }
}

TEST(CurvePositivity, Examples) {
  auto curve = [](double a, double b) {
    SampledCurve c;
    for (int k = 0; k < 5; ++k) {
      const double s = 0.25 * k;
      c.time_samples.push_back(s);
      c.events.push_back({a * s, vec({b * s, 0.0, 0.0})});
    }
    return c;
  };
  EXPECT_EQ(curve_positivity(curve(1, 0), s2()).classification, IsotopySign::positive);
  const auto null = curve_positivity(curve(1, 1), s2());
  EXPECT_EQ(null.classification, IsotopySign::nonnegative);
  for (double m : null.min_alpha) EXPECT_NEAR(m, 0.0, 1e-9);
  const auto space = curve_positivity(curve(0.1, 1), s2());
  EXPECT_EQ(space.classification, IsotopySign::neither);
  // Velocity per unit parameter is (0.1, e1).
  for (double m : space.min_alpha) EXPECT_NEAR(m, 0.1 - 1.0, 1e-9);
}

TEST(CurvePositivity, RandomCurvesMatchMetricClassification) {
  std::mt19937_64 rng(18);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto d = BaseDomain::circle(1024);
  for (int trial = 0; trial < 100; ++trial) {
    SampledCurve c;
    MinkowskiEvent e{0.0, vec({0.0, 0.0})};
    const bool timelike = trial % 2 == 0;
    for (int k = 0; k < 6; ++k) {
      c.time_samples.push_back(k);
      c.events.push_back(e);
      const Eigen::VectorXd dy = vec({g(rng), g(rng)});
      e.y += dy;
      e.t += timelike ? dy.norm() + 0.1 + std::abs(g(rng)) : std::abs(g(rng)) * 0.5;
    }
    const auto r = curve_positivity(c, d);
    bool all_timelike = true;
    for (auto ch : r.characters) all_timelike = all_timelike && ch == CausalCharacter::future_timelike;
    EXPECT_EQ(r.classification == IsotopySign::positive, all_timelike);
  }
}

TEST(CurvePositivity, RejectsMalformedCurves) {
  SampledCurve c;
  c.time_samples = {0.0};
  c.events = {ev(0, {0.0, 0.0})};
  EXPECT_THROW(curve_positivity(c, BaseDomain::circle(64)), InvalidArgument);
  c.time_samples = {0.0, 0.0};
  c.events = {ev(0, {0.0, 0.0}), ev(1, {0.0, 0.0})};
  EXPECT_THROW(curve_positivity(c, BaseDomain::circle(64)), InvalidArgument);
}

TEST(Escape, TemporalSequence) {
  std::vector<MinkowskiEvent> seq;
  for (int k = 1; k <= 20; ++k) seq.push_back(ev(k, {0.0, 0.0}));
  const auto r = escape_audit(seq, ev(-1, {0.0, 0.0}), ev(1, {0.0, 0.0}), BaseDomain::circle(256));
  ASSERT_EQ(r.rows.size(), 20u);
  for (const auto& row : r.rows) {
    EXPECT_FALSE(row.in_interval);
    EXPECT_EQ(row.c_minus, static_cast<double>(row.k));
    EXPECT_EQ(row.c_plus, static_cast<double>(row.k));
    EXPECT_EQ(row.abs_sum, 2.0 * row.k);
  }
  ASSERT_TRUE(r.exit_index.has_value());
  EXPECT_EQ(*r.exit_index, 1u);
  EXPECT_TRUE(r.diverging);
}

TEST(Escape, SpatialSequence) {
  std::vector<MinkowskiEvent> seq;
  for (int k = 1; k <= 10; ++k) seq.push_back(ev(0, {static_cast<double>(k), 0.0}));
  const auto r = escape_audit(seq, ev(-1, {0.0, 0.0}), ev(1, {0.0, 0.0}), BaseDomain::circle(256));
  for (const auto& row : r.rows) {
    EXPECT_FALSE(row.in_interval);
    EXPECT_NEAR(row.c_minus, -static_cast<double>(row.k), 1e-12);
    EXPECT_NEAR(row.c_plus, static_cast<double>(row.k), 1e-12);
  }
  EXPECT_EQ(r.exit_index, std::optional<std::size_t>(1));
  EXPECT_TRUE(r.diverging);
}

TEST(Escape, ConstantSequenceStays) {
  const std::vector<MinkowskiEvent> seq(8, ev(0, {0.0, 0.0}));
  const auto r = escape_audit(seq, ev(-1, {0.0, 0.0}), ev(1, {0.0, 0.0}), BaseDomain::circle(64));
  for (const auto& row : r.rows) EXPECT_TRUE(row.in_interval);
  EXPECT_FALSE(r.exit_index.has_value());
  EXPECT_FALSE(r.diverging);
  EXPECT_THROW(escape_audit(seq, ev(1, {0.0, 0.0}), ev(1, {0.5, 0.0}), BaseDomain::circle(64)),
               InvalidArgument);
}
