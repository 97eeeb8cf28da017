#include "leglab/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "leglab/error.hpp"

namespace leglab {

namespace {

constexpr double kSigmaFdStep = 1e-6;
constexpr double kJacobianFdStep = 1e-5;
constexpr double kDegenerateSlope = 1e-8;
constexpr double kTouchTolerance = 1e-9;
constexpr std::size_t kMaxGridNodes = 50'000'000;

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string("non-finite ") + what);
  }
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (r > kMaxGridNodes / base) {
      throw InvalidArgument("auxiliary grid too large for exhaustive scan");
    }
    r *= base;
  }
  return r;
}

// Row-major multi-index decode: last axis fastest.
void decode(std::size_t flat, std::size_t m, std::span<std::size_t> digits) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    digits[k] = flat % m;
    flat /= m;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(std::vector<double> plus, std::vector<double> minus)
    : plus_(std::move(plus)), minus_(std::move(minus)) {
  for (double c : plus_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw InvalidArgument("V+ coefficients must be finite and strictly positive");
    }
  }
  for (double c : minus_) {
    if (!(c < 0.0) || !std::isfinite(c)) {
      throw InvalidArgument("V- coefficients must be finite and strictly negative");
    }
  }
}

QuadraticForm QuadraticForm::standard(std::size_t dim_plus, std::size_t dim_minus) {
  return QuadraticForm(std::vector<double>(dim_plus, 1.0), std::vector<double>(dim_minus, -1.0));
}

double QuadraticForm::coefficient(std::size_t k) const {
  return k < plus_.size() ? plus_[k] : minus_.at(k - plus_.size());
}

double QuadraticForm::operator()(std::span<const double> xi) const {
  if (xi.size() != dim()) throw InvalidArgument("quadratic form: wrong auxiliary dimension");
  double qp = 0.0;
  for (std::size_t k = 0; k < plus_.size(); ++k) qp += plus_[k] * xi[k] * xi[k];
  double qm = 0.0;
  for (std::size_t k = 0; k < minus_.size(); ++k) {
    const double x = xi[plus_.size() + k];
    qm += minus_[k] * x * x;
  }
  return qp + qm;
}

std::size_t QuadraticForm::append(double c) {
  if (c > 0.0) {
    plus_.push_back(c);
    return plus_.size() - 1;
  }
  if (c < 0.0) {
    minus_.push_back(c);
    return dim() - 1;
  }
  throw InvalidArgument("stabilizing coefficient must be nonzero");
}

double AuxGrid::node(std::size_t k) const {
  return half_width * (2.0 * static_cast<double>(k) / static_cast<double>(points_per_axis - 1) -
                       1.0);
}

// ---------------------------------------------------------------------------
// GeneratingFunction

GeneratingFunction::GeneratingFunction(Definition def)
    : base_(std::move(def.base)),
      qform_(std::move(def.qform)),
      sigma_(std::move(def.sigma)),
      sigma_axes_(std::move(def.sigma_axes)),
      support_radius_(def.support_radius),
      potential_(std::move(def.potential)),
      constant_(def.constant) {
  if (!(support_radius_ > 0.0) || !std::isfinite(support_radius_)) {
    throw InvalidArgument("support radius must be positive and finite");
  }
  if (!std::isfinite(constant_)) throw InvalidArgument("non-finite additive constant");
  if (potential_) require_same_domain(base_, potential_->domain());
  grid_ = def.grid.value_or(AuxGrid{kBoxMargin * support_radius_, kDefaultAuxPoints});
  if (grid_.points_per_axis < 3 || grid_.points_per_axis % 2 == 0) {
    throw InvalidArgument("points per auxiliary axis must be odd and >= 3");
  }
  if (grid_.half_width < kBoxMargin * support_radius_ * (1.0 - 1e-12)) {
    throw InvalidArgument("auxiliary box half-width " + std::to_string(grid_.half_width) +
                          " is below " + std::to_string(kBoxMargin) + " x support radius");
  }

  if (!sigma_) {
    sigma_axes_.clear();
    return;
  }
  if (qform_.dim() == 0) throw InvalidArgument("a perturbation needs auxiliary variables");
  if (sigma_axes_.empty()) {
    for (std::size_t k = 0; k < qform_.dim(); ++k) sigma_axes_.push_back(k);
  }
  for (std::size_t a : sigma_axes_) {
    if (a >= qform_.dim()) throw InvalidArgument("perturbation axis out of range");
  }

  // Compact support check: probe sigma just beyond the support radius and
  // out to the box, along every sigma axis and the main diagonal.
  const std::size_t k = sigma_axes_.size();
  const std::size_t stride = std::max<std::size_t>(1, base_.size() / 16);
  const double radii[] = {support_radius_ * 1.001, support_radius_ * 1.25, grid_.half_width};
  std::vector<double> sub(k);
  auto probe = [&](std::size_t i) {
    const double v = sigma_(base_.sample(i), sub);
    if (!std::isfinite(v) || std::abs(v) > 1e-12) {
      throw InvalidArgument("perturbation does not vanish outside the support radius");
    }
  };
  for (std::size_t i = 0; i < base_.size(); i += stride) {
    for (double rad : radii) {
      for (double sign : {-1.0, 1.0}) {
        for (std::size_t axis = 0; axis < k; ++axis) {
          std::fill(sub.begin(), sub.end(), 0.0);
          sub[axis] = sign * rad;
          probe(i);
        }
        std::fill(sub.begin(), sub.end(), sign * rad / std::sqrt(static_cast<double>(k)));
        probe(i);
      }
    }
  }
}

GeneratingFunction GeneratingFunction::graph(const ScalarField& f, QuadraticForm qform,
                                             std::size_t points_per_axis) {
  Definition def{.base = f.domain(), .qform = std::move(qform)};
  def.potential = f;
  def.grid = AuxGrid{kBoxMargin * def.support_radius, points_per_axis};
  return GeneratingFunction(std::move(def));
}

double GeneratingFunction::sigma_norm(std::span<const double> xi) const {
  double s = 0.0;
  for (std::size_t a : sigma_axes_) s += xi[a] * xi[a];
  return std::sqrt(s);
}

double GeneratingFunction::perturbation(const Eigen::VectorXd& q,
                                        std::span<const double> xi) const {
  if (!sigma_) return 0.0;
  if (sigma_norm(xi) > support_radius_) return 0.0;
  double buf[16];
  std::vector<double> heap;
  std::span<double> sub;
  if (sigma_axes_.size() <= 16) {
    sub = std::span<double>(buf, sigma_axes_.size());
  } else {
    heap.resize(sigma_axes_.size());
    sub = heap;
  }
  for (std::size_t k = 0; k < sigma_axes_.size(); ++k) sub[k] = xi[sigma_axes_[k]];
  return sigma_(q, sub);
}

namespace {

struct QuadraticParts {
  double plus = 0.0;
  double minus = 0.0;
};

QuadraticParts split_quadratic(const QuadraticForm& qf, std::span<const double> xi) {
  QuadraticParts parts;
  for (std::size_t k = 0; k < qf.dim_plus(); ++k) parts.plus += qf.plus()[k] * xi[k] * xi[k];
  for (std::size_t k = 0; k < qf.dim_minus(); ++k) {
    const double x = xi[qf.dim_plus() + k];
    parts.minus += qf.minus()[k] * x * x;
  }
  return parts;
}

}  // namespace

double GeneratingFunction::evaluate(const Eigen::VectorXd& q, std::span<const double> xi) const {
  if (q.size() != base_.ambient_dim()) throw DomainMismatch("base point dimension mismatch");
  if (!q.allFinite()) throw InvalidArgument("non-finite base point");
  if (xi.size() != aux_dim()) throw InvalidArgument("wrong auxiliary dimension");
  require_finite(xi, "auxiliary coordinate");
  const auto parts = split_quadratic(qform_, xi);
  double s = potential_ ? potential_->evaluate(q) : 0.0;
  s += parts.plus;
  s += parts.minus;
  s += perturbation(q, xi);
  return s + constant_;
}

double GeneratingFunction::evaluate_at(std::size_t i, std::span<const double> xi) const {
  if (i >= base_.size()) throw InvalidArgument("base sample index out of range");
  if (xi.size() != aux_dim()) throw InvalidArgument("wrong auxiliary dimension");
  require_finite(xi, "auxiliary coordinate");
  const auto parts = split_quadratic(qform_, xi);
  double s = potential_ ? potential_->value(i) : 0.0;
  s += parts.plus;
  s += parts.minus;
  s += perturbation(base_.sample(i), xi);
  return s + constant_;
}

Eigen::VectorXd GeneratingFunction::fiber_gradient(std::size_t i,
                                                   std::span<const double> xi) const {
  const Eigen::VectorXd& q = base_.sample(i);
  const std::size_t n = aux_dim();
  Eigen::VectorXd g(static_cast<Eigen::Index>(n));
  std::vector<double> probe(xi.begin(), xi.end());
  for (std::size_t k = 0; k < n; ++k) {
    double d = 2.0 * qform_.coefficient(k) * xi[k];
    if (sigma_) {
      probe[k] = xi[k] + kSigmaFdStep;
      const double up = perturbation(q, probe);
      probe[k] = xi[k] - kSigmaFdStep;
      const double down = perturbation(q, probe);
      probe[k] = xi[k];
      d += (up - down) / (2.0 * kSigmaFdStep);
    }
    g[static_cast<Eigen::Index>(k)] = d;
  }
  return g;
}

Eigen::VectorXd GeneratingFunction::base_gradient(std::size_t i,
                                                  std::span<const double> xi) const {
  Eigen::VectorXd grad = potential_ ? potential_->gradient(i)
                                    : Eigen::VectorXd::Zero(base_.ambient_dim()).eval();
  if (sigma_) {
    const std::vector<double> fixed(xi.begin(), xi.end());
    grad += tangential_gradient(
        [this, &fixed](const Eigen::VectorXd& q) { return perturbation(q, fixed); },
        base_.sample(i));
  }
  return grad;
}

GeneratingFunction GeneratingFunction::stabilized(double c) const {
  Definition def{.base = base_, .qform = qform_};
  const std::size_t pos = def.qform.append(c);
  def.sigma = sigma_;
  for (std::size_t a : sigma_axes_) def.sigma_axes.push_back(a < pos ? a : a + 1);
  def.support_radius = support_radius_;
  def.grid = grid_;
  def.potential = potential_;
  def.constant = constant_;
  return GeneratingFunction(std::move(def));
}

GeneratingFunction GeneratingFunction::with_constant(double c) const {
  GeneratingFunction out = *this;
  if (!std::isfinite(c)) throw InvalidArgument("non-finite additive constant");
  out.constant_ = c;
  return out;
}

// ---------------------------------------------------------------------------
// Fiber-critical points

namespace {

double polish_bracketed(const std::function<double(double)>& g, double lo, double hi, double glo,
                        double tol) {
  // Safeguarded Newton: Newton steps with a finite-difference slope, falling
  // back to bisection whenever the step leaves the bracket.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    if ((gx < 0.0) == (glo < 0.0)) {
      lo = x;
      glo = gx;
    } else {
      hi = x;
    }
    if (hi - lo < tol) break;
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    const double slope = (g(x + h) - g(x - h)) / (2.0 * h);
    double next = slope != 0.0 ? x - gx / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 0.25 * tol) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

bool is_degenerate_1d(const std::function<double(double)>& g, double x) {
  const double h = kJacobianFdStep * std::max(1.0, std::abs(x));
  const double slope = (g(x + h) - g(x - h)) / (2.0 * h);
  return std::abs(slope) < kDegenerateSlope;
}

// Minimizes s*g on [a, b] by golden section; returns the abscissa.
double golden_min(const std::function<double(double)>& f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 120 && b - a > 1e-13; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Roots1d scan_roots(const std::function<double(double)>& g, std::span<const double> nodes,
                   double tol) {
  Roots1d out;
  const std::size_t n = nodes.size();
  if (n < 2) throw InvalidArgument("root scan needs at least two nodes");
  std::vector<double> vals(n);
  for (std::size_t j = 0; j < n; ++j) {
    vals[j] = g(nodes[j]);
    if (!std::isfinite(vals[j])) throw InvalidArgument("non-finite fiber derivative");
  }

  auto classify = [&](double x) {
    (is_degenerate_1d(g, x) ? out.degenerate : out.regular).push_back(x);
  };

  for (std::size_t j = 0; j < n; ++j) {
    if (vals[j] == 0.0) {
      const bool flat = (j > 0 && vals[j - 1] == 0.0) || (j + 1 < n && vals[j + 1] == 0.0);
      if (flat) {
        out.degenerate.push_back(nodes[j]);
      } else {
        classify(nodes[j]);
      }
    }
    if (j + 1 < n && vals[j] != 0.0 && vals[j + 1] != 0.0 &&
        (vals[j] < 0.0) != (vals[j + 1] < 0.0)) {
      classify(polish_bracketed(g, nodes[j], nodes[j + 1], vals[j], tol));
    }
    // A same-sign dip between neighbours may hide a tangency or a pair of
    // roots closer than the grid step.
    if (j > 0 && j + 1 < n && vals[j] != 0.0 && vals[j - 1] != 0.0 && vals[j + 1] != 0.0) {
      const double s = vals[j] > 0.0 ? 1.0 : -1.0;
      if (s * vals[j - 1] > 0.0 && s * vals[j + 1] > 0.0 && s * vals[j] <= s * vals[j - 1] &&
          s * vals[j] <= s * vals[j + 1]) {
        const double xm = golden_min([&](double x) { return s * g(x); }, nodes[j - 1], nodes[j + 1]);
        const double vm = s * g(xm);
        if (vm < -kTouchTolerance) {
          classify(polish_bracketed(g, nodes[j - 1], xm, vals[j - 1], tol));
          classify(polish_bracketed(g, xm, nodes[j + 1], g(xm), tol));
        } else if (vm <= kTouchTolerance) {
          out.degenerate.push_back(xm);
        }
      }
    }
  }
  return out;
}

namespace {

struct NewtonResult {
  bool converged = false;
  bool degenerate = false;
  std::vector<double> xi;
};

NewtonResult newton_fiber(const GeneratingFunction& gf, std::size_t i, std::vector<double> xi,
                          double reach) {
  const std::size_t n = gf.aux_dim();
  const std::vector<double> start = xi;
  NewtonResult res;
  auto jacobian = [&](const std::vector<double>& at) {
    Eigen::MatrixXd jac(n, n);
    std::vector<double> probe = at;
    for (std::size_t k = 0; k < n; ++k) {
      probe[k] = at[k] + kJacobianFdStep;
      const Eigen::VectorXd up = gf.fiber_gradient(i, probe);
      probe[k] = at[k] - kJacobianFdStep;
      const Eigen::VectorXd down = gf.fiber_gradient(i, probe);
      probe[k] = at[k];
      jac.col(static_cast<Eigen::Index>(k)) = (up - down) / (2.0 * kJacobianFdStep);
    }
    return jac;
  };
  for (int iter = 0; iter < 60; ++iter) {
    const Eigen::VectorXd g = gf.fiber_gradient(i, xi);
    const Eigen::MatrixXd jac = jacobian(xi);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] < kDegenerateSlope) {
      res.degenerate = g.norm() < kTouchTolerance;
      res.converged = res.degenerate;
      res.xi = xi;
      return res;
    }
    const Eigen::VectorXd step = svd.solve(g);
    for (std::size_t k = 0; k < n; ++k) xi[k] -= step[static_cast<Eigen::Index>(k)];
    double drift = 0.0;
    for (std::size_t k = 0; k < n; ++k) drift = std::max(drift, std::abs(xi[k] - start[k]));
    if (drift > reach) return res;
    if (step.norm() < kCriticalTolerance) {
      res.converged = true;
      res.xi = xi;
      return res;
    }
  }
  return res;
}

}  // namespace

FiberCriticalSet fiber_critical_points(const GeneratingFunction& gf) {
  FiberCriticalSet out;
  const std::size_t n = gf.aux_dim();
  const BaseDomain& base = gf.base();
  if (n == 0) {
    for (std::size_t i = 0; i < base.size(); ++i) out.regular.push_back({i, {}});
    return out;
  }
  const AuxGrid& grid = gf.grid();
  const std::size_t m = grid.points_per_axis;
  std::vector<double> nodes(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = grid.node(k);

  if (n == 1) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<double> buf(1);
      auto g = [&](double x) {
        buf[0] = x;
        return gf.fiber_gradient(i, buf)[0];
      };
      const Roots1d roots = scan_roots(g, nodes);
      for (double x : roots.regular) out.regular.push_back({i, {x}});
      for (double x : roots.degenerate) out.degenerate.push_back({i, {x}});
    }
    return out;
  }

  const std::size_t total = ipow(m, n);
  std::vector<std::size_t> digits(n);
  std::vector<double> xi(n);
  std::vector<double> norm2(total);
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t flat = 0; flat < total; ++flat) {
      decode(flat, m, digits);
      for (std::size_t k = 0; k < n; ++k) xi[k] = nodes[digits[k]];
      norm2[flat] = gf.fiber_gradient(i, xi).squaredNorm();
    }
    std::vector<std::vector<double>> found;
    std::vector<std::vector<double>> found_degenerate;
    auto known = [](const std::vector<std::vector<double>>& list, const std::vector<double>& x) {
      for (const auto& y : list) {
        double d = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
        if (d < 1e-7) return true;
      }
      return false;
    };
    for (std::size_t flat = 0; flat < total; ++flat) {
      decode(flat, m, digits);
      bool local_min = true;
      std::size_t stride = 1;
      for (std::size_t k = n; k-- > 0 && local_min;) {
        if (digits[k] > 0 && norm2[flat - stride] < norm2[flat]) local_min = false;
        if (digits[k] + 1 < m && norm2[flat + stride] < norm2[flat]) local_min = false;
        stride *= m;
      }
      if (!local_min) continue;
      for (std::size_t k = 0; k < n; ++k) xi[k] = nodes[digits[k]];
      NewtonResult r = newton_fiber(gf, i, xi, 2.0 * grid.step());
      if (!r.converged) continue;
      bool inside = true;
      for (double x : r.xi) inside = inside && std::abs(x) <= grid.half_width;
      if (!inside) continue;
      auto& list = r.degenerate ? found_degenerate : found;
      if (!known(list, r.xi)) list.push_back(r.xi);
    }
    for (auto& x : found) out.regular.push_back({i, std::move(x)});
    for (auto& x : found_degenerate) out.degenerate.push_back({i, std::move(x)});
  }
  return out;
}

LegendrianPointCloud legendrian_of_genfun(const GeneratingFunction& gf) {
  const FiberCriticalSet crit = fiber_critical_points(gf);
  if (!crit.degenerate.empty()) {
    const auto& d = crit.degenerate.front();
    throw DegenerateRootError("d_xi S has " + std::to_string(crit.degenerate.size()) +
                              " degenerate zero(s); first at base sample " +
                              std::to_string(d.base_index));
  }
  LegendrianPointCloud cloud;
  cloud.source = "fiber-critical set of a generating function (N = " +
                 std::to_string(gf.aux_dim()) + ")";
  cloud.points.reserve(crit.regular.size());
  for (const auto& c : crit.regular) {
    JetPoint j;
    j.q = gf.base().sample(c.base_index);
    j.p = gf.base_gradient(c.base_index, c.xi);
    j.p -= j.p.dot(j.q) * j.q;  // strip round-off normal component
    j.u = gf.evaluate_at(c.base_index, c.xi);
    validate(j);
    cloud.points.push_back(std::move(j));
    cloud.base_indices.push_back(c.base_index);
  }
  if (cloud.points.empty()) throw InvalidArgument("generating function has no fiber-critical points");
  return cloud;
}

// ---------------------------------------------------------------------------
// Minimax

MinimaxPair c_invariants(const GeneratingFunction& gf) {
  MinimaxPair out;
  const BaseDomain& base = gf.base();
  const std::size_t n = gf.aux_dim();

  if (n == 0) {
    const auto& f = gf.potential();
    std::size_t imin = 0;
    std::size_t imax = 0;
    double vmin = 0.0;
    double vmax = 0.0;
    if (f) {
      imin = f->argmin();
      imax = f->argmax();
      vmin = f->value(imin);
      vmax = f->value(imax);
    }
    out.c_minus = vmin + gf.constant();
    out.c_plus = vmax + gf.constant();
    out.minus_witness = {imin, {}};
    out.plus_witness = {imax, {}};
    out.method = MinimaxMethod::closed_form_graph;
    return out;
  }

  const QuadraticForm& qf = gf.qform();
  const std::size_t kp = qf.dim_plus();
  const std::size_t km = qf.dim_minus();
  const AuxGrid& grid = gf.grid();
  const std::size_t m = grid.points_per_axis;
  const std::size_t n_plus = ipow(m, kp);
  const std::size_t n_minus = ipow(m, km);
  if (n_plus > kMaxGridNodes / n_minus) throw InvalidArgument("auxiliary grid too large");

  std::vector<double> nodes(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = grid.node(k);

  // Quadratic parts per V+ / V- node, summed in the same order evaluate_at uses.
  std::vector<double> q_plus(n_plus);
  std::vector<double> q_minus(n_minus);
  std::vector<std::size_t> dp(kp);
  std::vector<std::size_t> dm(km);
  std::vector<bool> minus_on_boundary(n_minus, false);
  for (std::size_t a = 0; a < n_plus; ++a) {
    decode(a, m, dp);
    double s = 0.0;
    for (std::size_t k = 0; k < kp; ++k) s += qf.plus()[k] * nodes[dp[k]] * nodes[dp[k]];
    q_plus[a] = s;
  }
  for (std::size_t b = 0; b < n_minus; ++b) {
    decode(b, m, dm);
    double s = 0.0;
    bool edge = false;
    for (std::size_t k = 0; k < km; ++k) {
      s += qf.minus()[k] * nodes[dm[k]] * nodes[dm[k]];
      edge = edge || dm[k] == 0 || dm[k] + 1 == m;
    }
    q_minus[b] = s;
    minus_on_boundary[b] = edge;
  }

  auto fill_xi = [&](std::size_t a, std::size_t b, std::vector<double>& xi) {
    decode(a, m, dp);
    decode(b, m, dm);
    for (std::size_t k = 0; k < kp; ++k) xi[k] = nodes[dp[k]];
    for (std::size_t k = 0; k < km; ++k) xi[kp + k] = nodes[dm[k]];
  };

  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double pos_inf = std::numeric_limits<double>::infinity();
  std::vector<double> outer(n_plus, neg_inf);
  std::vector<std::size_t> outer_base(n_plus, 0);
  std::vector<std::size_t> outer_minus(n_plus, 0);
  double best_minus = pos_inf;
  std::size_t bm_i = 0;
  std::size_t bm_a = 0;
  std::size_t bm_b = 0;

  const auto& f = gf.potential();
  const bool perturbed = gf.has_perturbation();
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Eigen::VectorXd& q = base.sample(i);
    const double pot = f ? f->value(i) : 0.0;
    for (std::size_t a = 0; a < n_plus; ++a) {
      double inner = neg_inf;
      std::size_t arg = 0;
      for (std::size_t b = 0; b < n_minus; ++b) {
        double s = pot;
        s += q_plus[a];
        s += q_minus[b];
        if (perturbed) {
          fill_xi(a, b, xi);
          s += gf.perturbation(q, xi);
        }
        if (s > inner) {
          inner = s;
          arg = b;
        }
      }
      if (km > 0 && perturbed && minus_on_boundary[arg]) {
        fill_xi(a, arg, xi);
        if (gf.perturbation(q, xi) != 0.0) {
          throw BoxTooSmall("inner maximum over V- reached the box boundary at base sample " +
                            std::to_string(i) + " with nonzero perturbation");
        }
      }
      if (inner > outer[a]) {
        outer[a] = inner;
        outer_base[a] = i;
        outer_minus[a] = arg;
      }
      if (inner < best_minus) {
        best_minus = inner;
        bm_i = i;
        bm_a = a;
        bm_b = arg;
      }
    }
  }

  std::size_t best_a = 0;
  for (std::size_t a = 1; a < n_plus; ++a) {
    if (outer[a] < outer[best_a]) best_a = a;
  }

  out.c_plus = outer[best_a] + gf.constant();
  out.c_minus = best_minus + gf.constant();
  out.plus_witness.base_index = outer_base[best_a];
  out.plus_witness.xi.resize(n);
  fill_xi(best_a, outer_minus[best_a], out.plus_witness.xi);
  out.minus_witness.base_index = bm_i;
  out.minus_witness.xi.resize(n);
  fill_xi(bm_a, bm_b, out.minus_witness.xi);
  out.method = MinimaxMethod::grid_minimax;

  if (out.c_minus > out.c_plus) {
    throw ConsistencyError("minimax scan produced c- > c+");
  }
  return out;
}

GeneratingFunction reeb_shift(const GeneratingFunction& gf, double r) {
  return gf.with_constant(gf.constant() + r);
}

std::optional<double> detect_constant_graph(const GeneratingFunction& gf, double tol) {
  const MinimaxPair pair = c_invariants(gf);
  if (std::abs(pair.c_plus - pair.c_minus) > tol) return std::nullopt;
  const double c = 0.5 * (pair.c_plus + pair.c_minus);

  const LegendrianPointCloud cloud = legendrian_of_genfun(gf);
  std::vector<bool> covered(gf.base().size(), false);
  for (std::size_t k = 0; k < cloud.points.size(); ++k) {
    const JetPoint& j = cloud.points[k];
    if (j.p.norm() > tol || std::abs(j.u - c) > tol) {
      throw LemmaViolation("c+ = c- = " + std::to_string(c) +
                           " but the Legendrian leaves the constant-graph tube at base sample " +
                           std::to_string(cloud.base_indices[k]));
    }
    covered[cloud.base_indices[k]] = true;
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      throw LemmaViolation("c+ = c- but base sample " + std::to_string(i) +
                           " carries no point of the Legendrian");
    }
  }
  return c;
}

PerturbationFn sampled_perturbation(const BaseDomain& base, const AuxGrid& grid, std::size_t dims,
                                    std::vector<std::vector<double>> values) {
  if (dims == 0) throw InvalidArgument("sampled perturbation needs at least one axis");
  const std::size_t m = grid.points_per_axis;
  const std::size_t per_row = ipow(m, dims);
  if (values.size() != base.size()) {
    throw InvalidArgument("sampled perturbation needs one row per base sample");
  }
  for (const auto& row : values) {
    if (row.size() != per_row) {
      throw InvalidArgument("sampled perturbation row has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(per_row));
    }
    require_finite(row, "perturbation sample");
  }
  auto data = std::make_shared<const std::vector<std::vector<double>>>(std::move(values));

  auto along_xi = [data, grid, dims, m](std::size_t row, std::span<const double> xi) {
    std::vector<std::size_t> cell(dims);
    std::vector<double> w(dims);
    for (std::size_t k = 0; k < dims; ++k) {
      const double pos = (xi[k] + grid.half_width) / grid.step();
      if (pos < 0.0 || pos > static_cast<double>(m - 1)) return 0.0;
      const auto c = std::min(static_cast<std::size_t>(pos), m - 2);
      cell[k] = c;
      w[k] = pos - static_cast<double>(c);
    }
    const auto& r = (*data)[row];
    double acc = 0.0;
    for (std::size_t corner = 0; corner < (std::size_t{1} << dims); ++corner) {
      double weight = 1.0;
      std::size_t flat = 0;
      for (std::size_t k = 0; k < dims; ++k) {
        const bool hi = (corner >> k) & 1U;
        weight *= hi ? w[k] : 1.0 - w[k];
        flat = flat * m + cell[k] + (hi ? 1 : 0);
      }
      if (weight != 0.0) acc += weight * r[flat];
    }
    return acc;
  };

  return [base, along_xi](const Eigen::VectorXd& q, std::span<const double> xi) {
    if (base.kind() == DomainKind::circle) {
      double theta = std::atan2(q[1], q[0]);
      if (theta < 0) theta += 2.0 * std::numbers::pi;
      const double pos = theta / (2.0 * std::numbers::pi) * static_cast<double>(base.size());
      const auto lo = static_cast<std::size_t>(std::floor(pos)) % base.size();
      const double w = pos - std::floor(pos);
      const double a = along_xi(lo, xi);
      return w == 0.0 ? a : (1.0 - w) * a + w * along_xi((lo + 1) % base.size(), xi);
    }
    return along_xi(base.nearest(q), xi);
  };
}

const char* to_string(MinimaxMethod m) {
  return m == MinimaxMethod::closed_form_graph ? "closed_form_graph" : "grid_minimax";
}

}  // namespace leglab
