#include "leglab/sphere_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Eigen::VectorXd> circle_samples(std::size_t n) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    Eigen::VectorXd q(2);
    q << std::cos(theta), std::sin(theta);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Eigen::VectorXd> fibonacci_samples(std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    Eigen::VectorXd q(3);
    q << rho * std::cos(phi), rho * std::sin(phi), z;
    out.push_back(q.normalized());
  }
  return out;
}

// Hyperspherical coordinates: dim-2 polar angles on a midpoint grid in
// (0, pi) and one azimuth in [0, 2pi). Midpoints keep the poles off the
// grid, so no two samples coincide.
std::vector<Eigen::VectorXd> product_samples(int dim, std::size_t n) {
  const int polar = dim - 2;
  std::size_t m = 2;
  auto count = [&](std::size_t k) {
    std::size_t c = 2 * k;
    for (int j = 0; j < polar; ++j) c *= k;
    return c;
  };
  while (count(m) < n) ++m;

  std::vector<Eigen::VectorXd> out;
  out.reserve(count(m));
  std::vector<std::size_t> idx(static_cast<std::size_t>(polar), 0);
  for (;;) {
    for (std::size_t a = 0; a < 2 * m; ++a) {
      Eigen::VectorXd q(dim);
      double sin_prod = 1.0;
      for (int j = 0; j < polar; ++j) {
        const double ang = std::numbers::pi * (static_cast<double>(idx[j]) + 0.5) /
                           static_cast<double>(m);
        q[j] = sin_prod * std::cos(ang);
        sin_prod *= std::sin(ang);
      }
      const double az = std::numbers::pi * static_cast<double>(a) / static_cast<double>(m);
      q[dim - 2] = sin_prod * std::cos(az);
      q[dim - 1] = sin_prod * std::sin(az);
      out.push_back(q.normalized());
    }
    int j = polar - 1;
    while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

double max_nearest_neighbour_angle(const std::vector<Eigen::VectorXd>& s) {
  // Only used for reach checks; a strided estimate suffices on big grids.
  const std::size_t stride = std::max<std::size_t>(1, s.size() / 256);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); i += stride) {
    double best = -1.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j != i) best = std::max(best, s[i].dot(s[j]));
    }
    worst = std::max(worst, std::acos(std::clamp(best, -1.0, 1.0)));
  }
  return worst;
}

}  // namespace

BaseDomain BaseDomain::circle(std::size_t resolution) { return sphere(2, resolution); }

BaseDomain BaseDomain::sphere(int ambient_dim, std::size_t resolution) {
  if (ambient_dim < 2) {
    throw InvalidArgument("sphere grid needs ambient dimension >= 2, got " +
                          std::to_string(ambient_dim));
  }
  if (resolution < kMinResolution) {
    throw InvalidArgument("grid resolution must be >= 8, got " + std::to_string(resolution));
  }
  Impl impl;
  impl.dim = ambient_dim;
  if (ambient_dim == 2) {
    impl.kind = DomainKind::circle;
    impl.samples = circle_samples(resolution);
    impl.spacing = kTwoPi / static_cast<double>(resolution);
  } else {
    impl.kind = DomainKind::sphere;
    impl.samples = ambient_dim == 3 ? fibonacci_samples(resolution)
                                    : product_samples(ambient_dim, resolution);
    impl.spacing = max_nearest_neighbour_angle(impl.samples);
  }
  return BaseDomain(std::make_shared<const Impl>(std::move(impl)));
}

BaseDomain BaseDomain::for_dimension(int ambient_dim) {
  return ambient_dim == 2 ? circle(kDefaultCircleResolution)
                          : sphere(ambient_dim, kDefaultSphereResolution);
}

double BaseDomain::angle(std::size_t i) const {
  if (kind() != DomainKind::circle) throw InvalidArgument("angle() is defined on S^1 only");
  return kTwoPi * static_cast<double>(i) / static_cast<double>(size());
}

std::size_t BaseDomain::nearest(const Eigen::VectorXd& q) const {
  if (q.size() != ambient_dim()) throw DomainMismatch("point dimension does not match domain");
  if (kind() == DomainKind::circle) {
    double theta = std::atan2(q[1], q[0]);
    if (theta < 0) theta += kTwoPi;
    const auto n = static_cast<double>(size());
    return static_cast<std::size_t>(std::llround(theta * n / kTwoPi)) % size();
  }
  std::size_t best = 0;
  double best_dot = -2.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = samples()[i].dot(q);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

bool BaseDomain::same_as(const BaseDomain& other) const {
  if (impl_ == other.impl_) return true;
  return kind() == other.kind() && ambient_dim() == other.ambient_dim() &&
         size() == other.size();
}

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& q) {
  const auto n = q.size();
  Eigen::MatrixXd basis(n, n - 1);
  // Gram-Schmidt against q, seeded by the coordinate axes least aligned with q.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return std::abs(q[a]) < std::abs(q[b]); });
  Eigen::Index filled = 0;
  for (auto axis : order) {
    if (filled == n - 1) break;
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, axis);
    for (int pass = 0; pass < 2; ++pass) {
      v -= v.dot(q) * q;
      for (Eigen::Index k = 0; k < filled; ++k) v -= v.dot(basis.col(k)) * basis.col(k);
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    basis.col(filled++) = v / norm;
  }
  return basis;
}

}  // namespace leglab
