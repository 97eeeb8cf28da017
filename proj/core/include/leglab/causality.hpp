#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "leglab/genfun.hpp"
#include "leglab/order.hpp"
#include "leglab/scalar_field.hpp"

namespace leglab {

// Event (t, y) of R^{1,n}, metric signature (+, -, ..., -).
struct MinkowskiEvent {
  double t = 0.0;
  Eigen::VectorXd y;

  int space_dim() const { return static_cast<int>(y.size()); }
};

struct VelocityVector {
  double dt = 0.0;
  Eigen::VectorXd dy;
};

enum class CausalCharacter {
  future_timelike,
  future_causal_null,
  spacelike,
  past_causal,  // past-pointing null
  past_timelike,
  zero,
};

inline constexpr double kNullTolerance = 1e-12;

double minkowski_square(const VelocityVector& v);

// Null when ||dt| - |dy|| <= 1e-12.
CausalCharacter classify_vector(const VelocityVector& v);

VelocityVector displacement(const MinkowskiEvent& from, const MinkowskiEvent& to);

// x << z: z - x is future timelike (straight segments suffice in R^{1,n}).
bool chronology(const MinkowskiEvent& x, const MinkowskiEvent& z);
// x <= z: x == z or z - x is future causal.
bool causal(const MinkowskiEvent& x, const MinkowskiEvent& z);

// z in the Alexandrov interval I(a, b) = { z : a << z << b }.
bool alexandrov_contains(const MinkowskiEvent& a, const MinkowskiEvent& b,
                         const MinkowskiEvent& z);

struct AlexandrovProbeReport {
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t samples = 0;
  double max_distance = 0.0;  // Euclidean, over sampled interval members
  bool contained = false;
};

// Interval around x with apexes x -+ (delta/2, 0) and a rejection-sampled
// check that it sits inside the Euclidean delta-ball.
AlexandrovProbeReport alexandrov_basis_probe(const MinkowskiEvent& x, double delta,
                                             std::uint64_t seed, std::size_t samples = 10'000);

// min over unit v of dt - <v, dy>.
struct NullDirectionMinimum {
  double grid_min = 0.0;     // scan over the domain grid
  double refined_min = 0.0;  // after Riemannian Newton polish from the grid argmin
  double closed_form = 0.0;  // dt - |dy|
  Eigen::VectorXd argmin;
};

NullDirectionMinimum null_direction_minimum(const VelocityVector& v, const BaseDomain& directions);

// Sky potential f(q) = <y, q> + t on S^{n-1}.
ScalarField sky_potential(const MinkowskiEvent& x, const BaseDomain& domain);

struct SkyDescriptor {
  MinkowskiEvent event;
  ScalarField potential;
  MinimaxPair invariants;       // closed form (t - |y|, t + |y|)
  MinimaxPair grid_invariants;  // generating-function grid minimax
};

inline constexpr double kSkyGridTolerance = 1e-2;

// Throws ConsistencyError if the two routes differ by more than grid_tol.
SkyDescriptor sky(const MinkowskiEvent& x, const BaseDomain& domain,
                  double grid_tol = kSkyGridTolerance);

enum class AuditVerdict { pass, fail, no_claim };

struct SkyOrderReport {
  AuditVerdict verdict = AuditVerdict::no_claim;
  bool chronological = false;
  bool pointwise_strict = false;    // lt_strict of the sky potentials on the grid
  bool invariants_increase = false; // both c+- strictly increase
  // min over the sphere of f_z - f_x (grid scan + polish); the continuous
  // oracle behind the pointwise comparison.
  double potential_gap = 0.0;
  std::string detail;
};

SkyOrderReport sky_order_audit(const MinkowskiEvent& x, const MinkowskiEvent& z,
                               const BaseDomain& domain);

struct SampledCurve {
  std::vector<double> time_samples;
  std::vector<MinkowskiEvent> events;
};

void validate(const SampledCurve& c);

struct CurvePositivityReport {
  IsotopySign classification = IsotopySign::neither;
  std::vector<double> min_alpha;  // per velocity sample, refined
  std::vector<double> grid_min_alpha;
  std::vector<CausalCharacter> characters;
};

// Sign of the contact form on the sky isotopy along the curve, evaluated as
// dt - <v, dy> over null directions v. Throws ConsistencyError when the
// verdict disagrees with the metric classification of some velocity.
CurvePositivityReport curve_positivity(const SampledCurve& curve, const BaseDomain& directions);

// Classification from a single velocity's minimum over null directions.
IsotopySign sign_of_alpha_min(double min_alpha);

struct EscapeRow {
  std::size_t k = 0;
  double c_minus = 0.0;
  double c_plus = 0.0;
  double abs_sum = 0.0;
  bool in_interval = false;
};

struct EscapeReport {
  std::vector<EscapeRow> rows;
  // First index from which membership fails for every later element.
  std::optional<std::size_t> exit_index;
  bool diverging = false;
};

// Membership of sky(x_k) in (sky(a), sky(b)) and |c+| + |c-| along the
// sequence. Indices k are 1-based. Throws InvalidArgument unless
// sky(a) << sky(b).
EscapeReport escape_audit(const std::vector<MinkowskiEvent>& sequence, const MinkowskiEvent& a,
                          const MinkowskiEvent& b, const BaseDomain& domain);

const char* to_string(CausalCharacter c);
const char* to_string(AuditVerdict v);

}  // namespace leglab
