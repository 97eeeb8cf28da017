#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Core>

namespace leglab {

enum class DomainKind { circle, sphere };

// Sampled base manifold S^{n-1} in R^n. S^1 uses a uniform angular grid,
// S^2 a Fibonacci lattice, higher spheres a product grid in hyperspherical
// angles. Copies share the sample storage.
class BaseDomain {
 public:
  static constexpr std::size_t kMinResolution = 8;
  static constexpr std::size_t kDefaultCircleResolution = 1024;
  static constexpr std::size_t kDefaultSphereResolution = 4096;

  static BaseDomain circle(std::size_t resolution = kDefaultCircleResolution);

  // Unit sphere in R^ambient_dim; ambient_dim == 2 gives the circle grid.
  // For ambient_dim >= 4 the product grid has at least `resolution` points.
  static BaseDomain sphere(int ambient_dim, std::size_t resolution);

  // Default grid for S^{n-1}.
  static BaseDomain for_dimension(int ambient_dim);

  DomainKind kind() const { return impl_->kind; }
  int ambient_dim() const { return impl_->dim; }
  std::size_t resolution() const { return impl_->samples.size(); }
  std::size_t size() const { return impl_->samples.size(); }

  const Eigen::VectorXd& sample(std::size_t i) const { return impl_->samples[i]; }
  const std::vector<Eigen::VectorXd>& samples() const { return impl_->samples; }

  // Angle of sample i on the circle grid (2*pi*i/n).
  double angle(std::size_t i) const;

  // Largest angular distance from any grid sample to its nearest neighbour,
  // used as the interpolation reach.
  double spacing() const { return impl_->spacing; }

  std::size_t nearest(const Eigen::VectorXd& q) const;

  bool same_as(const BaseDomain& other) const;

 private:
  struct Impl {
    DomainKind kind;
    int dim;
    std::vector<Eigen::VectorXd> samples;
    double spacing;
  };

  explicit BaseDomain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

// Orthonormal basis of the tangent space q^perp (n-1 columns).
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& q);

// Point reached from unit q along unit tangent e after arc length s.
inline Eigen::VectorXd geodesic_step(const Eigen::VectorXd& q, const Eigen::VectorXd& e,
                                     double s) {
  return std::cos(s) * q + std::sin(s) * e;
}

}  // namespace leglab
