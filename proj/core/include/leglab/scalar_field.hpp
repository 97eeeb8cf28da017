#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "leglab/sphere_grid.hpp"

namespace leglab {

using PointFunction = std::function<double(const Eigen::VectorXd&)>;

// Real function sampled on a BaseDomain. Fields built from a closed-form
// evaluator keep it, which gives exact off-grid evaluation and accurate
// tangential gradients.
class ScalarField {
 public:
  ScalarField(BaseDomain domain, std::vector<double> values);

  static ScalarField from_function(BaseDomain domain, PointFunction f);
  static ScalarField constant(BaseDomain domain, double c);

  const BaseDomain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  bool has_evaluator() const { return static_cast<bool>(evaluator_); }

  // Off-grid value: the evaluator when present, otherwise linear
  // interpolation in angle (S^1) or the nearest sample within reach.
  double evaluate(const Eigen::VectorXd& q) const;

  // Tangential (round-metric) gradient at sample i.
  Eigen::VectorXd gradient(std::size_t i) const;

  double min() const;
  double max() const;
  std::size_t argmin() const;
  std::size_t argmax() const;

  // f + r, i.e. the Reeb translate of the graph Legendrian.
  ScalarField shifted(double r) const;

  // Sample-wise a*f + b*g; requires matching domains.
  static ScalarField combine(double a, const ScalarField& f, double b, const ScalarField& g);

 private:
  ScalarField(BaseDomain domain, std::vector<double> values, PointFunction evaluator);

  BaseDomain domain_;
  std::vector<double> values_;
  PointFunction evaluator_;
};

// Step used for central differences of closed-form evaluators.
inline constexpr double kEvaluatorFdStep = 1e-5;

// Tangential gradient of f at unit q by central differences along geodesics.
Eigen::VectorXd tangential_gradient(const PointFunction& f, const Eigen::VectorXd& q,
                                    double step = kEvaluatorFdStep);

void require_same_domain(const BaseDomain& a, const BaseDomain& b);

}  // namespace leglab
