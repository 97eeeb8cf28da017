#include "leglab/jet.hpp"

#include <cmath>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

void validate(const JetPoint& j) {
  if (j.q.size() != j.p.size()) throw InvalidArgument("jet point: q and p differ in dimension");
  if (!j.q.allFinite() || !j.p.allFinite() || !std::isfinite(j.u)) {
    throw InvalidArgument("jet point has non-finite coordinates");
  }
  if (std::abs(j.q.norm() - 1.0) > kUnitTolerance) {
    throw InvalidArgument("jet point: |q| = " + std::to_string(j.q.norm()) + " is not 1");
  }
  if (std::abs(j.p.dot(j.q)) > kOrthogonalityTolerance) {
    throw InvalidArgument("jet point: p is not tangent at q (<p,q> = " +
                          std::to_string(j.p.dot(j.q)) + ")");
  }
}

}  // namespace leglab
