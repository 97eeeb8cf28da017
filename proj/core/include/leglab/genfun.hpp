#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "leglab/jet.hpp"
#include "leglab/scalar_field.hpp"
#include "leglab/sphere_grid.hpp"

namespace leglab {

// Diagonal nondegenerate quadratic form on R^N = V+ x V-. Auxiliary
// coordinates are ordered with the V+ block first.
class QuadraticForm {
 public:
  QuadraticForm() = default;  // N = 0
  QuadraticForm(std::vector<double> plus, std::vector<double> minus);

  // Coefficients +1 on V+ and -1 on V-.
  static QuadraticForm standard(std::size_t dim_plus, std::size_t dim_minus);

  std::size_t dim_plus() const { return plus_.size(); }
  std::size_t dim_minus() const { return minus_.size(); }
  std::size_t dim() const { return plus_.size() + minus_.size(); }
  double coefficient(std::size_t k) const;
  const std::vector<double>& plus() const { return plus_; }
  const std::vector<double>& minus() const { return minus_; }

  double operator()(std::span<const double> xi) const;

  // Adds one axis with coefficient c (sign selects V+ or V-) and returns the
  // position the new axis occupies in the coordinate ordering.
  std::size_t append(double c);

 private:
  std::vector<double> plus_;
  std::vector<double> minus_;
};

// Uniform grid on the box [-half_width, half_width]^N. Odd point counts put
// 0 on the grid.
struct AuxGrid {
  double half_width = 1.5;
  std::size_t points_per_axis = 257;

  double node(std::size_t k) const;
  double step() const { return 2.0 * half_width / static_cast<double>(points_per_axis - 1); }
};

inline constexpr double kBoxMargin = 1.5;
inline constexpr std::size_t kDefaultAuxPoints = 257;

// sigma(q, xi_sub) where xi_sub holds the auxiliary axes sigma depends on.
using PerturbationFn = std::function<double(const Eigen::VectorXd& q, std::span<const double> xi)>;

// S(q, xi) = Q(xi) + f(q) + sigma(q, xi) + c.
//
// The potential f and the additive constant c are stored apart from the
// compactly supported sigma: S = f + Q generates the graph of j^1 f, and
// Reeb translation only touches c. sigma reads a subset of the auxiliary
// axes and vanishes when the norm of that sub-vector exceeds support_radius;
// stabilization appends axes sigma does not read.
class GeneratingFunction {
 public:
  struct Definition {
    BaseDomain base;
    QuadraticForm qform;
    PerturbationFn sigma;                       // empty: sigma == 0
    std::vector<std::size_t> sigma_axes;        // empty with sigma set: all axes
    double support_radius = 1.0;
    std::optional<AuxGrid> grid;                // default: margin * radius, 257 points
    std::optional<ScalarField> potential;
    double constant = 0.0;
  };

  explicit GeneratingFunction(Definition def);

  // S = f(q) + Q(xi), the standard generating function of the graph of j^1 f.
  static GeneratingFunction graph(const ScalarField& f, QuadraticForm qform = {},
                                  std::size_t points_per_axis = kDefaultAuxPoints);

  const BaseDomain& base() const { return base_; }
  const QuadraticForm& qform() const { return qform_; }
  std::size_t aux_dim() const { return qform_.dim(); }
  double support_radius() const { return support_radius_; }
  const AuxGrid& grid() const { return grid_; }
  double constant() const { return constant_; }
  const std::optional<ScalarField>& potential() const { return potential_; }
  bool has_perturbation() const { return static_cast<bool>(sigma_); }
  const std::vector<std::size_t>& sigma_axes() const { return sigma_axes_; }

  // S at an arbitrary base point; Q(xi) exactly (plus potential and
  // constant) once the perturbation coordinates leave the support ball.
  double evaluate(const Eigen::VectorXd& q, std::span<const double> xi) const;

  // S at base sample i, using the sampled potential value.
  double evaluate_at(std::size_t i, std::span<const double> xi) const;

  // sigma alone (0 outside the support ball).
  double perturbation(const Eigen::VectorXd& q, std::span<const double> xi) const;

  // d_xi S at base sample i; Q analytically, sigma by central differences.
  Eigen::VectorXd fiber_gradient(std::size_t i, std::span<const double> xi) const;

  // Tangential derivative d_q S at base sample i.
  Eigen::VectorXd base_gradient(std::size_t i, std::span<const double> xi) const;

  // S'(q, xi, eta) = S(q, xi) + c * eta^2.
  GeneratingFunction stabilized(double c) const;

  GeneratingFunction with_constant(double c) const;

 private:
  double sigma_norm(std::span<const double> xi) const;

  BaseDomain base_;
  QuadraticForm qform_;
  PerturbationFn sigma_;
  std::vector<std::size_t> sigma_axes_;
  double support_radius_;
  AuxGrid grid_;
  std::optional<ScalarField> potential_;
  double constant_;
};

struct FiberCriticalPoint {
  std::size_t base_index = 0;
  std::vector<double> xi;
};

struct FiberCriticalSet {
  std::vector<FiberCriticalPoint> regular;
  std::vector<FiberCriticalPoint> degenerate;  // non-isolated / non-transverse
};

inline constexpr double kCriticalTolerance = 1e-10;
inline constexpr double kGradientTolerance = 1e-6;

// Zeros of d_xi S: grid bracketing per base sample, then safeguarded Newton.
FiberCriticalSet fiber_critical_points(const GeneratingFunction& gf);

struct Roots1d {
  std::vector<double> regular;
  std::vector<double> degenerate;
};

// One-dimensional root scan over an increasing node list; exposed for toy
// families that are not quadratic at infinity.
Roots1d scan_roots(const std::function<double(double)>& g, std::span<const double> nodes,
                   double tol = kCriticalTolerance);

struct LegendrianPointCloud {
  std::vector<JetPoint> points;
  std::vector<std::size_t> base_indices;
  std::string source;
};

// Image of the fiber-critical set under (q, xi) -> (q, d_q S, S).
// Throws DegenerateRootError if any fiber-critical point is degenerate.
LegendrianPointCloud legendrian_of_genfun(const GeneratingFunction& gf);

enum class MinimaxMethod { closed_form_graph, grid_minimax };

struct MinimaxWitness {
  std::size_t base_index = 0;
  std::vector<double> xi;
};

struct MinimaxPair {
  double c_minus = 0.0;
  double c_plus = 0.0;
  MinimaxWitness minus_witness;
  MinimaxWitness plus_witness;
  MinimaxMethod method = MinimaxMethod::grid_minimax;
};

// c+ = min over v+ of max over base x v- of S,
// c- = min over base x v+ of max over v- of S, by exhaustive grid scan.
MinimaxPair c_invariants(const GeneratingFunction& gf);

// S + r; invariants shift by exactly r.
GeneratingFunction reeb_shift(const GeneratingFunction& gf, double r);

// If |c+ - c-| <= tol returns their midpoint after checking that the
// generated Legendrian lies in the tol-tube around {(q, 0, c)}; throws
// LemmaViolation when it does not.
std::optional<double> detect_constant_graph(const GeneratingFunction& gf, double tol);

// sigma from samples on base x aux grid (row per base sample, aux nodes in
// row-major order over `dims` axes): multilinear in xi, linear in angle on
// S^1, nearest sample on higher spheres.
PerturbationFn sampled_perturbation(const BaseDomain& base, const AuxGrid& grid, std::size_t dims,
                                    std::vector<std::vector<double>> values);

const char* to_string(MinimaxMethod m);

}  // namespace leglab
