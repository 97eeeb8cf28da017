#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "leglab/scalar_field.hpp"

namespace leglab::testing {

// Random trigonometric polynomial on S^1 of degree <= 4 (closed form).
inline ScalarField random_circle_field(std::mt19937_64& rng, const BaseDomain& domain,
                                       double scale = 1.0) {
  std::uniform_real_distribution<double> coef(-scale, scale);
  std::vector<double> a(5), b(5);
  for (int k = 0; k < 5; ++k) {
    a[k] = coef(rng) / (1.0 + k);
    b[k] = coef(rng) / (1.0 + k);
  }
  return ScalarField::from_function(domain, [a, b](const Eigen::VectorXd& q) {
    const double th = std::atan2(q[1], q[0]);
    double s = a[0];
    for (int k = 1; k < 5; ++k) s += a[k] * std::cos(k * th) + b[k] * std::sin(k * th);
    return s;
  });
}

// Random smooth field on any sphere: constant + linear + quadratic form in q.
inline ScalarField random_sphere_field(std::mt19937_64& rng, const BaseDomain& domain) {
  const int n = domain.ambient_dim();
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double c = coef(rng);
  Eigen::VectorXd lin(n);
  Eigen::MatrixXd quad(n, n);
  for (int i = 0; i < n; ++i) {
    lin[i] = coef(rng);
    for (int j = 0; j < n; ++j) quad(i, j) = coef(rng);
  }
  return ScalarField::from_function(domain, [c, lin, quad](const Eigen::VectorXd& q) {
    return c + lin.dot(q) + q.dot(quad * q);
  });
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v[k] = g(rng);
  return v.normalized();
}

}  // namespace leglab::testing
