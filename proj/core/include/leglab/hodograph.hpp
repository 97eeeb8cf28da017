#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "leglab/jet.hpp"
#include "leglab/scalar_field.hpp"

namespace leglab {

// Cooriented contact element of R^n: a point with a unit conormal. ST*R^n
// is realized as R^n x S^{n-1} through the Euclidean metric.
struct ContactElement {
  Eigen::VectorXd point;
  Eigen::VectorXd conormal;
};

void validate(const ContactElement& c);

enum class Coorientation { inward, outward };

// Sphere S(y, |t|) with a coorientation; radius 0 stands for the whole
// fiber of ST*R^n over the center.
struct CoorientedSphere {
  Eigen::VectorXd center;
  double radius = 0.0;
  Coorientation coorientation = Coorientation::outward;
};

// J^1(S^{n-1}) -> ST*R^n, (q, p, u) -> (u q + p, q). Pulls the canonical
// form <conormal, d point> back to du - <p, dq>, and sends the zero section
// to the fiber over the origin.
ContactElement hodograph_forward(const JetPoint& j);

// (x, nu) -> (nu, x - <x, nu> nu, <x, nu>).
JetPoint hodograph_inverse(const ContactElement& c);

struct ContactFormReport {
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kContactFormTolerance = 1e-6;

// At random jet points and random tangent vectors, compares the pulled-back
// canonical form of ST*R^n with du - <p, dq>, both by central differences
// along a curve through the point.
ContactFormReport contact_form_check(std::size_t sample_count, int ambient_dim,
                                     std::uint64_t seed, double tol = kContactFormTolerance);

// Same comparison for one jet point and one jet-space direction (dq, dp, du);
// the direction is projected onto the tangent space of J^1 at j.
double contact_form_deviation(const JetPoint& j, const Eigen::VectorXd& dq,
                              const Eigen::VectorXd& dp, double du);

// Potential f(q) = <y, q> + t of the graph Legendrian that the hodograph
// sends to the lift of s. Requires |t| = radius, t < 0 iff inward, t = 0
// iff radius 0.
ScalarField sphere_to_graph(const CoorientedSphere& s, double t, const BaseDomain& domain);

// Lift {(y + t q, q)} sampled on the domain grid.
std::vector<ContactElement> lift_sphere(const CoorientedSphere& s, double t,
                                        const BaseDomain& domain);

// Hodograph image of the graph of j^1 f, one element per sample.
std::vector<ContactElement> graph_lift(const ScalarField& f);

// CoorientedSphere for signed radius t.
CoorientedSphere sphere_from_signed_radius(const Eigen::VectorXd& center, double t);

}  // namespace leglab
