#include "leglab/hodograph.hpp"

#include <cmath>
#include <random>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

namespace {

constexpr double kFormFdStep = 1e-6;
constexpr double kRadiusTolerance = 1e-12;

void check_sphere(const CoorientedSphere& s, double t) {
  if (!s.center.allFinite() || !std::isfinite(s.radius) || !std::isfinite(t)) {
    throw InvalidArgument("non-finite sphere data");
  }
  if (s.radius < 0.0) throw InvalidArgument("sphere radius must be non-negative");
  if (std::abs(std::abs(t) - s.radius) > kRadiusTolerance) {
    throw InvalidArgument("|t| = " + std::to_string(std::abs(t)) +
                          " does not match the sphere radius " + std::to_string(s.radius));
  }
  if (s.radius == 0.0) {
    if (t != 0.0) throw InvalidArgument("t must vanish for a radius-0 sphere");
    return;
  }
  const bool inward = s.coorientation == Coorientation::inward;
  if ((t < 0.0) != inward) {
    throw InvalidArgument("coorientation does not match the sign of t (t < 0 means inward)");
  }
}

}  // namespace

void validate(const ContactElement& c) {
  if (c.point.size() != c.conormal.size()) {
    throw InvalidArgument("contact element: point and conormal differ in dimension");
  }
  if (!c.point.allFinite() || !c.conormal.allFinite()) {
    throw InvalidArgument("contact element has non-finite coordinates");
  }
  if (std::abs(c.conormal.norm() - 1.0) > kUnitTolerance) {
    throw InvalidArgument("contact element conormal is not a unit vector");
  }
}

ContactElement hodograph_forward(const JetPoint& j) {
  validate(j);
  return ContactElement{j.u * j.q + j.p, j.q};
}

JetPoint hodograph_inverse(const ContactElement& c) {
  validate(c);
  JetPoint j;
  j.q = c.conormal;
  j.u = c.point.dot(c.conormal);
  j.p = c.point - j.u * c.conormal;
  return j;
}

double contact_form_deviation(const JetPoint& j, const Eigen::VectorXd& dq,
                              const Eigen::VectorXd& dp, double du) {
  validate(j);
  // Curve through j: q(s) on the sphere, p(s) projected to T_{q(s)}, u linear.
  auto at = [&](double s) {
    JetPoint k;
    const Eigen::VectorXd qs = j.q + s * (dq - dq.dot(j.q) * j.q);
    k.q = qs.normalized();
    const Eigen::VectorXd ps = j.p + s * dp;
    k.p = ps - ps.dot(k.q) * k.q;
    k.u = j.u + s * du;
    return k;
  };
  const double h = kFormFdStep;
  const JetPoint fwd = at(h);
  const JetPoint bwd = at(-h);
  const ContactElement cf = hodograph_forward(fwd);
  const ContactElement cb = hodograph_forward(bwd);
  const ContactElement c0 = hodograph_forward(j);

  const Eigen::VectorXd dpoint = (cf.point - cb.point) / (2.0 * h);
  const Eigen::VectorXd dq_s = (fwd.q - bwd.q) / (2.0 * h);
  const double du_s = (fwd.u - bwd.u) / (2.0 * h);

  const double pulled_back = c0.conormal.dot(dpoint);
  const double jet_form = du_s - j.p.dot(dq_s);
  return std::abs(pulled_back - jet_form);
}

ContactFormReport contact_form_check(std::size_t sample_count, int ambient_dim,
                                     std::uint64_t seed, double tol) {
  if (sample_count < 1) throw InvalidArgument("contact form check needs at least one sample");
  if (ambient_dim < 2) throw InvalidArgument("ambient dimension must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  auto gaussian = [&]() {
    Eigen::VectorXd v(ambient_dim);
    for (int k = 0; k < ambient_dim; ++k) v[k] = normal(rng);
    return v;
  };

  ContactFormReport report{.samples = sample_count, .tolerance = tol};
  for (std::size_t s = 0; s < sample_count; ++s) {
    JetPoint j;
    j.q = gaussian().normalized();
    j.p = gaussian();
    j.p -= j.p.dot(j.q) * j.q;
    j.u = uni(rng);
    const double dev = contact_form_deviation(j, gaussian(), gaussian(), uni(rng));
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.passed = report.max_deviation < tol;
  return report;
}

ScalarField sphere_to_graph(const CoorientedSphere& s, double t, const BaseDomain& domain) {
  check_sphere(s, t);
  if (s.center.size() != domain.ambient_dim()) {
    throw DomainMismatch("sphere center dimension does not match the base domain");
  }
  const Eigen::VectorXd y = s.center;
  return ScalarField::from_function(domain,
                                    [y, t](const Eigen::VectorXd& q) { return y.dot(q) + t; });
}

std::vector<ContactElement> lift_sphere(const CoorientedSphere& s, double t,
                                        const BaseDomain& domain) {
  check_sphere(s, t);
  if (s.center.size() != domain.ambient_dim()) {
    throw DomainMismatch("sphere center dimension does not match the base domain");
  }
  std::vector<ContactElement> out;
  out.reserve(domain.size());
  for (const auto& q : domain.samples()) out.push_back({s.center + t * q, q});
  return out;
}

std::vector<ContactElement> graph_lift(const ScalarField& f) {
  std::vector<ContactElement> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    JetPoint j{f.domain().sample(i), f.gradient(i), f.value(i)};
    j.p -= j.p.dot(j.q) * j.q;
    out.push_back(hodograph_forward(j));
  }
  return out;
}

CoorientedSphere sphere_from_signed_radius(const Eigen::VectorXd& center, double t) {
  return CoorientedSphere{center, std::abs(t), t < 0.0 ? Coorientation::inward
                                                       : Coorientation::outward};
}

}  // namespace leglab
