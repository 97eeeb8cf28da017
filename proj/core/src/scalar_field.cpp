#include "leglab/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

void require_same_domain(const BaseDomain& a, const BaseDomain& b) {
  if (!a.same_as(b)) {
    throw DomainMismatch("fields live on different base domains (" +
                         std::to_string(a.ambient_dim()) + "d/" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.ambient_dim()) + "d/" +
                         std::to_string(b.size()) + ")");
  }
}

ScalarField::ScalarField(BaseDomain domain, std::vector<double> values)
    : ScalarField(std::move(domain), std::move(values), PointFunction{}) {}

ScalarField::ScalarField(BaseDomain domain, std::vector<double> values, PointFunction evaluator)
    : domain_(std::move(domain)), values_(std::move(values)), evaluator_(std::move(evaluator)) {
  if (values_.size() != domain_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) +
                          " values for a domain of " + std::to_string(domain_.size()) +
                          " samples");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument("field value at sample " + std::to_string(i) + " is not finite");
    }
  }
}

ScalarField ScalarField::from_function(BaseDomain domain, PointFunction f) {
  std::vector<double> values;
  values.reserve(domain.size());
  for (const auto& q : domain.samples()) values.push_back(f(q));
  return ScalarField(std::move(domain), std::move(values), std::move(f));
}

ScalarField ScalarField::constant(BaseDomain domain, double c) {
  return from_function(std::move(domain), [c](const Eigen::VectorXd&) { return c; });
}

double ScalarField::evaluate(const Eigen::VectorXd& q) const {
  if (q.size() != domain_.ambient_dim()) throw DomainMismatch("point dimension mismatch");
  if (!q.allFinite()) throw InvalidArgument("non-finite base point");
  if (evaluator_) return evaluator_(q);
  if (domain_.kind() == DomainKind::circle) {
    double theta = std::atan2(q[1], q[0]);
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    const double pos = theta / (2.0 * std::numbers::pi) * static_cast<double>(size());
    const auto lo = static_cast<std::size_t>(std::floor(pos)) % size();
    const std::size_t hi = (lo + 1) % size();
    const double w = pos - std::floor(pos);
    return (1.0 - w) * values_[lo] + w * values_[hi];
  }
  const std::size_t i = domain_.nearest(q);
  const double dist = std::acos(std::clamp(domain_.sample(i).dot(q), -1.0, 1.0));
  if (dist > domain_.spacing() * 1.5) {
    throw InvalidArgument("point is outside the interpolation reach of the sample grid");
  }
  return values_[i];
}

Eigen::VectorXd tangential_gradient(const PointFunction& f, const Eigen::VectorXd& q,
                                    double step) {
  const Eigen::MatrixXd basis = tangent_basis(q);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(q.size());
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const Eigen::VectorXd e = basis.col(k);
    const double d = (f(geodesic_step(q, e, step)) - f(geodesic_step(q, e, -step))) / (2.0 * step);
    grad += d * e;
  }
  return grad;
}

Eigen::VectorXd ScalarField::gradient(std::size_t i) const {
  const Eigen::VectorXd& q = domain_.sample(i);
  if (evaluator_) return tangential_gradient(evaluator_, q);
  if (domain_.kind() != DomainKind::circle) {
    throw InvalidArgument(
        "gradients of purely sampled fields are only available on S^1; "
        "build the field from an evaluator");
  }
  // Fourth-order periodic stencil in theta.
  const std::size_t n = size();
  auto at = [&](std::ptrdiff_t k) {
    const auto idx = static_cast<std::size_t>((static_cast<std::ptrdiff_t>(i) + k +
                                               static_cast<std::ptrdiff_t>(n)) %
                                              static_cast<std::ptrdiff_t>(n));
    return values_[idx];
  };
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double df = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
  Eigen::VectorXd tangent(2);
  tangent << -q[1], q[0];
  return df * tangent;
}

double ScalarField::min() const { return values_[argmin()]; }
double ScalarField::max() const { return values_[argmax()]; }

std::size_t ScalarField::argmin() const {
  return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

std::size_t ScalarField::argmax() const {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

ScalarField ScalarField::shifted(double r) const {
  std::vector<double> v(values_);
  for (double& x : v) x += r;
  PointFunction eval;
  if (evaluator_) {
    eval = [f = evaluator_, r](const Eigen::VectorXd& q) { return f(q) + r; };
  }
  return ScalarField(domain_, std::move(v), std::move(eval));
}

ScalarField ScalarField::combine(double a, const ScalarField& f, double b, const ScalarField& g) {
  require_same_domain(f.domain(), g.domain());
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f.values_[i] + b * g.values_[i];
  PointFunction eval;
  if (f.evaluator_ && g.evaluator_) {
    eval = [fe = f.evaluator_, ge = g.evaluator_, a, b](const Eigen::VectorXd& q) {
      return a * fe(q) + b * ge(q);
    };
  }
  return ScalarField(f.domain_, std::move(v), std::move(eval));
}

}  // namespace leglab
