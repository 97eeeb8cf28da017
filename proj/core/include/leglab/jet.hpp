#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace leglab {

// Point (q, p, u) of the 1-jet space J^1(S^{n-1}), with q a unit vector of
// R^n and the covector p identified with a tangent vector via the round
// metric, so <p, q> = 0.
struct JetPoint {
  Eigen::VectorXd q;
  Eigen::VectorXd p;
  double u = 0.0;
};

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kOrthogonalityTolerance = 1e-9;

// Throws InvalidArgument if |q| != 1 or <p, q> != 0 beyond tolerance.
void validate(const JetPoint& j);

}  // namespace leglab
