#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "leglab/error.hpp"
#include "leglab/expression.hpp"
#include "leglab/genfun.hpp"
#include "test_support.hpp"

using namespace leglab;
using leglab::testing::random_circle_field;

namespace {

ScalarField cosine(const BaseDomain& d) {
  return ScalarField::from_function(d, [](const Eigen::VectorXd& q) { return q[0]; });
}

// S = Q + eps * bump(|xi|/R) * g(q), one aux axis.
GeneratingFunction bump_perturbed(const BaseDomain& d, QuadraticForm qf, double eps,
                                  std::size_t points = 257) {
  GeneratingFunction::Definition def{.base = d, .qform = std::move(qf)};
  def.sigma = [eps](const Eigen::VectorXd& q, std::span<const double> xi) {
    return eps * smooth_bump(std::abs(xi[0])) * (q[0] + 0.5 * q[1]);
  };
  def.support_radius = 1.0;
  def.grid = AuxGrid{1.5, points};
  return GeneratingFunction(std::move(def));
}

// Independent nested min-max over a base x xi grid for N = 1.
struct OraclePair {
  double c_minus;
  double c_plus;
};

OraclePair brute_force_minimax_1d(const GeneratingFunction& gf, std::size_t xi_points) {
  const double w = gf.grid().half_width;
  const bool plus = gf.qform().dim_plus() == 1;
  std::vector<double> xs(xi_points);
  for (std::size_t k = 0; k < xi_points; ++k) {
    xs[k] = -w + 2 * w * static_cast<double>(k) / static_cast<double>(xi_points - 1);
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (plus) {
    // V+ = R, V- = 0: c+ = min_xi max_q S, c- = min_{q,xi} S.
    double c_plus = inf, c_minus = inf;
    for (double x : xs) {
      double mx = -inf;
      for (std::size_t i = 0; i < gf.base().size(); ++i) {
        const double s = gf.evaluate(gf.base().sample(i), std::vector<double>{x});
        mx = std::max(mx, s);
        c_minus = std::min(c_minus, s);
      }
      c_plus = std::min(c_plus, mx);
    }
    return {c_minus, c_plus};
  }
  // V+ = 0, V- = R: c+ = max_{q,xi} S, c- = min_q max_xi S.
  double c_plus = -inf, c_minus = inf;
  for (std::size_t i = 0; i < gf.base().size(); ++i) {
    double mx = -inf;
    for (double x : xs) mx = std::max(mx, gf.evaluate(gf.base().sample(i), std::vector<double>{x}));
    c_plus = std::max(c_plus, mx);
    c_minus = std::min(c_minus, mx);
  }
  return {c_minus, c_plus};
}

}  // namespace

// --- evaluate -------------------------------------------------------------

TEST(Evaluate, PureQuadraticForms) {
  const auto d = BaseDomain::circle(16);
  GeneratingFunction plus(GeneratingFunction::Definition{.base = d, .qform = QuadraticForm::standard(1, 0)});
  GeneratingFunction minus(GeneratingFunction::Definition{.base = d, .qform = QuadraticForm::standard(0, 1)});
  EXPECT_DOUBLE_EQ(plus.evaluate(d.sample(3), std::vector<double>{2.0}), 4.0);
  EXPECT_DOUBLE_EQ(minus.evaluate(d.sample(5), std::vector<double>{3.0}), -9.0);
}

TEST(Evaluate, OutsideSupportIsExactlyQuadratic) {
  const auto d = BaseDomain::circle(32);
  const auto gf = bump_perturbed(d, QuadraticForm::standard(1, 0), 0.3);
  for (double x : {1.0000001, 1.2, 1.5, 7.0, -3.0}) {
    EXPECT_EQ(gf.evaluate(d.sample(4), std::vector<double>{x}), x * x);
  }
  EXPECT_NE(gf.evaluate(d.sample(4), std::vector<double>{0.0}), 0.0);
}

TEST(Evaluate, RejectsNonFinite) {
  const auto d = BaseDomain::circle(16);
  const auto gf = bump_perturbed(d, QuadraticForm::standard(1, 0), 0.1);
  EXPECT_THROW(gf.evaluate(d.sample(0), std::vector<double>{std::nan("")}), InvalidArgument);
  Eigen::VectorXd bad(2);
  bad << std::numeric_limits<double>::infinity(), 0;
  EXPECT_THROW(gf.evaluate(bad, std::vector<double>{0.0}), InvalidArgument);
}

TEST(GeneratingFunction, RejectsNonCompactPerturbation) {
  GeneratingFunction::Definition def{.base = BaseDomain::circle(16),
                                     .qform = QuadraticForm::standard(1, 0)};
  def.sigma = [](const Eigen::VectorXd&, std::span<const double> xi) { return 0.01 * xi[0]; };
  EXPECT_THROW(GeneratingFunction{def}, InvalidArgument);
}

TEST(GeneratingFunction, RejectsSmallBoxAndBadForms) {
  GeneratingFunction::Definition def{.base = BaseDomain::circle(16),
                                     .qform = QuadraticForm::standard(1, 0)};
  def.grid = AuxGrid{1.2, 257};
  EXPECT_THROW(GeneratingFunction{def}, InvalidArgument);
  def.grid = AuxGrid{1.5, 256};
  EXPECT_THROW(GeneratingFunction{def}, InvalidArgument);
  EXPECT_THROW(QuadraticForm({1.0, 0.0}, {}), InvalidArgument);
  EXPECT_THROW(QuadraticForm({}, {1.0}), InvalidArgument);
}

// --- fiber critical points ------------------------------------------------

TEST(FiberCriticalPoints, PureQuadraticHasZeroAtEveryBasePoint) {
  const auto d = BaseDomain::circle(64);
  GeneratingFunction gf(GeneratingFunction::Definition{.base = d, .qform = QuadraticForm::standard(1, 0)});
  const auto crit = fiber_critical_points(gf);
  ASSERT_EQ(crit.regular.size(), d.size());
  EXPECT_TRUE(crit.degenerate.empty());
  for (const auto& c : crit.regular) EXPECT_EQ(c.xi[0], 0.0);
}

TEST(FiberCriticalPoints, TwoDimensionalQuadraticFindsOrigin) {
  const auto d = BaseDomain::circle(8);
  GeneratingFunction::Definition def{.base = d, .qform = QuadraticForm::standard(1, 1)};
  def.grid = AuxGrid{1.5, 21};
  const auto crit = fiber_critical_points(GeneratingFunction(def));
  ASSERT_EQ(crit.regular.size(), d.size());
  for (const auto& c : crit.regular) {
    EXPECT_LT(std::abs(c.xi[0]) + std::abs(c.xi[1]), 1e-10);
  }
}

TEST(FiberCriticalPoints, ToyCubicMatchesDenseSignScan) {
  // d_xi (q xi - xi^3) = q - 3 xi^2 on xi in [-1.5, 1.5].
  std::vector<double> nodes(257);
  std::vector<double> dense(2561);
  for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = -1.5 + 3.0 * k / 256.0;
  for (std::size_t k = 0; k < dense.size(); ++k) dense[k] = -1.5 + 3.0 * k / 2560.0;
  for (double q : {-1.0, -0.3, 0.05, 0.37, 0.9, 1.0}) {
    auto g = [q](double x) { return q - 3 * x * x; };
    const Roots1d roots = scan_roots(g, nodes);
    std::size_t oracle = 0;
    for (std::size_t k = 0; k + 1 < dense.size(); ++k) {
      if ((g(dense[k]) < 0) != (g(dense[k + 1]) < 0)) ++oracle;
    }
    EXPECT_EQ(roots.regular.size(), oracle) << "q = " << q;
    for (double x : roots.regular) EXPECT_NEAR(g(x), 0.0, 1e-9);
    if (q > 0) {
      ASSERT_EQ(roots.regular.size(), 2u);
      EXPECT_NEAR(std::max(roots.regular[0], roots.regular[1]), std::sqrt(q / 3), 1e-10);
    }
  }
}

TEST(FiberCriticalPoints, TangencyIsReportedAsDegenerate) {
  std::vector<double> nodes(101);
  for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = -1.0 + 2.0 * k / 100.0;
  // Double root at a node and between nodes.
  for (double shift : {0.0, 0.0137}) {
    const Roots1d r = scan_roots([shift](double x) { return (x - shift) * (x - shift); }, nodes);
    EXPECT_TRUE(r.regular.empty());
    ASSERT_EQ(r.degenerate.size(), 1u);
    EXPECT_NEAR(r.degenerate[0], shift, 1e-4);
  }
}

TEST(FiberCriticalPoints, CloseRootPairBetweenNodesIsResolved) {
  std::vector<double> nodes(11);
  for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = -1.0 + 0.2 * k;
  // Roots at 0.02 and 0.08, both inside the cell (0, 0.2) around node 0.
  const Roots1d r = scan_roots([](double x) { return (x - 0.02) * (x - 0.08); }, nodes);
  ASSERT_EQ(r.regular.size(), 2u);
  EXPECT_NEAR(r.regular[0], 0.02, 1e-10);
  EXPECT_NEAR(r.regular[1], 0.08, 1e-10);
}

TEST(FiberCriticalPoints, FlatPerturbationIsDegenerate) {
  // sigma = -xi^2 near 0 cancels Q: d_xi S vanishes on an interval.
  GeneratingFunction::Definition def{.base = BaseDomain::circle(8),
                                     .qform = QuadraticForm::standard(1, 0)};
  def.sigma = [](const Eigen::VectorXd&, std::span<const double> xi) {
    const double x = xi[0];
    const double cut = std::abs(x) < 0.5 ? 1.0 : smooth_bump((std::abs(x) - 0.5) / 0.5);
    return -x * x * cut;
  };
  const GeneratingFunction gf(def);
  EXPECT_FALSE(fiber_critical_points(gf).degenerate.empty());
  EXPECT_THROW(legendrian_of_genfun(gf), DegenerateRootError);
}

// --- legendrian_of_genfun --------------------------------------------------

TEST(LegendrianOfGenfun, ConstantGraph) {
  const auto d = BaseDomain::circle(128);
  const auto cloud = legendrian_of_genfun(
      GeneratingFunction::graph(ScalarField::constant(d, 2.5), QuadraticForm::standard(1, 0)));
  ASSERT_EQ(cloud.points.size(), d.size());
  for (const auto& j : cloud.points) {
    EXPECT_EQ(j.p.norm(), 0.0);
    EXPECT_EQ(j.u, 2.5);
  }
}

TEST(LegendrianOfGenfun, CosineGraphMatchesAnalyticJet) {
  const auto d = BaseDomain::circle(1024);
  for (auto qf : {QuadraticForm{}, QuadraticForm::standard(0, 1)}) {
    const auto cloud = legendrian_of_genfun(GeneratingFunction::graph(cosine(d), qf));
    ASSERT_EQ(cloud.points.size(), d.size());
    for (std::size_t k = 0; k < cloud.points.size(); ++k) {
      const auto& j = cloud.points[k];
      const double th = d.angle(cloud.base_indices[k]);
      // p = -sin(theta) along the unit tangent (-sin, cos).
      EXPECT_NEAR(j.p[0], std::sin(th) * std::sin(th), 1e-6);
      EXPECT_NEAR(j.p[1], -std::sin(th) * std::cos(th), 1e-6);
      EXPECT_NEAR(j.u, std::cos(th), 1e-15);
    }
  }
}

TEST(LegendrianOfGenfun, ZeroPerturbationGivesZeroSection) {
  const auto d = BaseDomain::sphere(3, 200);
  GeneratingFunction gf(GeneratingFunction::Definition{.base = d, .qform = QuadraticForm::standard(0, 1)});
  const auto cloud = legendrian_of_genfun(gf);
  ASSERT_EQ(cloud.points.size(), d.size());
  for (const auto& j : cloud.points) {
    EXPECT_EQ(j.u, 0.0);
    EXPECT_EQ(j.p.norm(), 0.0);
  }
}

TEST(LegendrianOfGenfun, BumpPerturbationGeneratesScaledGraph) {
  // Radial bump has zero xi-derivative at 0, so xi = 0 stays critical and
  // the Legendrian there is the graph of eps * (q1 + q2/2).
  const auto d = BaseDomain::circle(64);
  const double eps = 0.05;
  const auto cloud = legendrian_of_genfun(bump_perturbed(d, QuadraticForm::standard(1, 0), eps));
  std::size_t at_origin = 0;
  for (std::size_t k = 0; k < cloud.points.size(); ++k) {
    const auto& j = cloud.points[k];
    const auto& q = d.sample(cloud.base_indices[k]);
    if (std::abs(j.u - eps * (q[0] + 0.5 * q[1])) < 1e-12) {
      ++at_origin;
      Eigen::VectorXd grad(2);
      grad << eps, 0.5 * eps;
      grad -= grad.dot(q) * q;
      EXPECT_LT((j.p - grad).norm(), 1e-6);
    }
  }
  EXPECT_EQ(at_origin, d.size());
}

// --- c_invariants -----------------------------------------------------------

TEST(CInvariants, ConstantGraphGivesEqualInvariants) {
  const auto d = BaseDomain::circle(1024);
  for (auto qf : {QuadraticForm{}, QuadraticForm::standard(1, 0), QuadraticForm::standard(0, 1),
                  QuadraticForm::standard(1, 1)}) {
    const auto pair = c_invariants(GeneratingFunction::graph(ScalarField::constant(d, -0.75), qf, 17));
    EXPECT_EQ(pair.c_minus, -0.75);
    EXPECT_EQ(pair.c_plus, -0.75);
  }
}

TEST(CInvariants, CosineGraph) {
  const auto d = BaseDomain::circle(1024);
  const auto pair = c_invariants(GeneratingFunction::graph(cosine(d)));
  EXPECT_NEAR(pair.c_minus, -1.0, 1e-3);
  EXPECT_NEAR(pair.c_plus, 1.0, 1e-3);
  EXPECT_EQ(pair.method, MinimaxMethod::closed_form_graph);
}

TEST(CInvariants, NegativeDefiniteStabilizationMatchesClosedForm) {
  const auto d = BaseDomain::circle(256);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_circle_field(rng, d);
    const auto pair = c_invariants(GeneratingFunction::graph(f, QuadraticForm::standard(0, 1)));
    EXPECT_EQ(pair.method, MinimaxMethod::grid_minimax);
    EXPECT_NEAR(pair.c_minus, f.min(), 1e-2);
    EXPECT_NEAR(pair.c_plus, f.max(), 1e-2);
  }
}

TEST(CInvariants, PerturbedGeneratingFunctionMatchesBruteForce) {
  const auto d = BaseDomain::circle(128);
  for (auto qf : {QuadraticForm::standard(1, 0), QuadraticForm::standard(0, 1)}) {
    const auto gf = bump_perturbed(d, qf, 0.4);
    const auto pair = c_invariants(gf);
    const auto oracle = brute_force_minimax_1d(gf, 1201);
    EXPECT_NEAR(pair.c_minus, oracle.c_minus, 1e-4);
    EXPECT_NEAR(pair.c_plus, oracle.c_plus, 1e-4);
    EXPECT_LE(pair.c_minus, pair.c_plus);
  }
}

TEST(CInvariants, WitnessesReproduceValues) {
  const auto d = BaseDomain::circle(96);
  std::mt19937_64 rng(5);
  for (auto qf : {QuadraticForm::standard(1, 0), QuadraticForm::standard(0, 1),
                  QuadraticForm::standard(1, 1)}) {
    GeneratingFunction gf = qf.dim() == 1 ? bump_perturbed(d, qf, 0.3, 33).with_constant(1.25)
                                          : GeneratingFunction::graph(ScalarField::constant(d, 0));
    if (qf.dim() == 2) {
      GeneratingFunction::Definition def{.base = d, .qform = qf};
      def.sigma = [](const Eigen::VectorXd& q, std::span<const double> xi) {
        return 0.2 * smooth_bump(std::hypot(xi[0], xi[1])) * q[1];
      };
      def.grid = AuxGrid{1.5, 33};
      def.potential = random_circle_field(rng, d);
      gf = GeneratingFunction(def);
    }
    const auto pair = c_invariants(gf);
    EXPECT_NEAR(gf.evaluate_at(pair.minus_witness.base_index, pair.minus_witness.xi), pair.c_minus,
                1e-12);
    EXPECT_NEAR(gf.evaluate_at(pair.plus_witness.base_index, pair.plus_witness.xi), pair.c_plus,
                1e-12);
  }
}

TEST(CInvariants, StrongPerturbationStaysInsideValidBox) {
  // The inner maximum is pulled toward the support edge but the box margin
  // keeps it off the boundary, so no box diagnostic is raised.
  const auto d = BaseDomain::circle(16);
  GeneratingFunction::Definition def{.base = d, .qform = QuadraticForm::standard(0, 1)};
  def.grid = AuxGrid{1.5, 31};
  def.sigma = [](const Eigen::VectorXd& q, std::span<const double> xi) {
    return 40.0 * (xi[0] + 1.0) * smooth_bump(xi[0]) * (1.0 + 0.1 * q[0]);
  };
  const GeneratingFunction gf(def);
  const auto pair = c_invariants(gf);
  EXPECT_GT(pair.c_plus, 0.0);
  const auto oracle = brute_force_minimax_1d(gf, 31);
  EXPECT_NEAR(pair.c_plus, oracle.c_plus, 1e-12);
  EXPECT_NEAR(pair.c_minus, oracle.c_minus, 1e-12);
}

TEST(CInvariants, RespectsOrderOnRandomPerturbations) {
  const auto d = BaseDomain::circle(64);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng);
    GeneratingFunction::Definition def{.base = d,
                                       .qform = trial % 2 ? QuadraticForm::standard(1, 0)
                                                          : QuadraticForm::standard(0, 1)};
    def.sigma = [a, b, c](const Eigen::VectorXd& q, std::span<const double> xi) {
      return smooth_bump(std::abs(xi[0])) * (a * q[0] + b * q[1] + c * xi[0]);
    };
    def.grid = AuxGrid{1.5, 65};
    def.potential = random_circle_field(rng, d, 0.5);
    const auto pair = c_invariants(GeneratingFunction(def));
    EXPECT_LE(pair.c_minus, pair.c_plus);
  }
}

// --- stabilization ------------------------------------------------------------

TEST(Stabilization, AddingQuadraticAxisKeepsInvariants) {
  const auto d = BaseDomain::circle(64);
  for (double sign : {1.0, -1.0}) {
    const auto gf = bump_perturbed(d, QuadraticForm::standard(1, 0), 0.4, 33);
    const auto base_pair = c_invariants(gf);
    const auto st = gf.stabilized(sign);
    EXPECT_EQ(st.aux_dim(), 2u);
    const auto pair = c_invariants(st);
    EXPECT_NEAR(pair.c_minus, base_pair.c_minus, 1e-2);
    EXPECT_NEAR(pair.c_plus, base_pair.c_plus, 1e-2);
  }
}

TEST(Stabilization, PerturbationIgnoresNewAxis) {
  const auto d = BaseDomain::circle(16);
  const auto gf = bump_perturbed(d, QuadraticForm::standard(0, 1), 0.4);
  const auto st = gf.stabilized(2.0);  // new V+ axis goes first
  for (double x : {-0.5, 0.0, 0.3}) {
    for (double eta : {0.0, 1.0, 5.0}) {
      EXPECT_DOUBLE_EQ(st.evaluate(d.sample(3), std::vector<double>{eta, x}),
                       gf.evaluate(d.sample(3), std::vector<double>{x}) + 2.0 * eta * eta);
    }
  }
}

// --- reeb_shift -----------------------------------------------------------------

TEST(ReebShift, ShiftsInvariantsExactly) {
  const auto d = BaseDomain::circle(1024);
  const auto gf = GeneratingFunction::graph(cosine(d));
  const auto zero = c_invariants(reeb_shift(gf, 0.0));
  const auto base = c_invariants(gf);
  EXPECT_EQ(zero.c_minus, base.c_minus);
  EXPECT_EQ(zero.c_plus, base.c_plus);
  const auto five = c_invariants(reeb_shift(gf, 5.0));
  EXPECT_NEAR(five.c_minus, 4.0, 1e-3);
  EXPECT_NEAR(five.c_plus, 6.0, 1e-3);

  const auto pert = bump_perturbed(BaseDomain::circle(64), QuadraticForm::standard(1, 0), 0.3, 65);
  const auto p0 = c_invariants(pert);
  const auto p1 = c_invariants(reeb_shift(pert, -2.5));
  EXPECT_NEAR(p1.c_minus, p0.c_minus - 2.5, 1e-12);
  EXPECT_NEAR(p1.c_plus, p0.c_plus - 2.5, 1e-12);
}

// --- detect_constant_graph -------------------------------------------------------

TEST(DetectConstantGraph, RecoversConstant) {
  const auto d = BaseDomain::circle(256);
  for (auto qf : {QuadraticForm{}, QuadraticForm::standard(1, 0)}) {
    const auto c = detect_constant_graph(
        GeneratingFunction::graph(ScalarField::constant(d, 3.0), qf, 33), 1e-9);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(*c, 3.0);
  }
}

TEST(DetectConstantGraph, NonConstantGraphGivesNothing) {
  const auto d = BaseDomain::circle(256);
  EXPECT_FALSE(detect_constant_graph(GeneratingFunction::graph(cosine(d)), 1e-6).has_value());
}

TEST(DetectConstantGraph, PerturbedZeroSectionConsistentUnderRefinement) {
  // The bump perturbation generates the graph of eps*(q1 + q2/2): not constant.
  for (std::size_t res : {64u, 640u}) {
    const auto gf = bump_perturbed(BaseDomain::circle(res), QuadraticForm::standard(1, 0), 1e-3,
                                   res == 64 ? 65 : 257);
    EXPECT_FALSE(detect_constant_graph(gf, 1e-6).has_value()) << res;
  }
}

TEST(DetectConstantGraph, LemmaViolationWhenCloudIsNotConstant) {
  // Invariants coincide only within a loose tolerance; the cloud check at the
  // same tolerance is then violated by the gradient of a tiny ripple.
  const auto d = BaseDomain::circle(256);
  const auto f = ScalarField::from_function(
      d, [](const Eigen::VectorXd& q) { return 1e-4 * std::cos(40 * std::atan2(q[1], q[0])); });
  EXPECT_THROW(detect_constant_graph(GeneratingFunction::graph(f), 1e-3), LemmaViolation);
}

// --- sampled perturbation ------------------------------------------------------

TEST(SampledPerturbation, InterpolatesClosedFormOnNodes) {
  const auto d = BaseDomain::circle(32);
  const AuxGrid grid{1.5, 31};
  auto sigma = [](const Eigen::VectorXd& q, double x) {
    return 0.3 * smooth_bump(std::abs(x)) * q[0];
  };
  std::vector<std::vector<double>> rows(d.size(), std::vector<double>(31));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t k = 0; k < 31; ++k) rows[i][k] = sigma(d.sample(i), grid.node(k));
  }
  const auto fn = sampled_perturbation(d, grid, 1, rows);
  for (std::size_t i = 0; i < d.size(); i += 5) {
    for (std::size_t k = 0; k < 31; k += 3) {
      const double x = grid.node(k);
      EXPECT_NEAR(fn(d.sample(i), std::span<const double>(&x, 1)), sigma(d.sample(i), x), 1e-14);
    }
  }
  EXPECT_THROW(sampled_perturbation(d, grid, 1, std::vector<std::vector<double>>(3)), InvalidArgument);
}
