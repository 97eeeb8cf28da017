#include "compute.hpp"

#include <fstream>
#include <sstream>

#include "leglab/leglab.hpp"

namespace lab {

namespace {

using namespace leglab;

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  return in;
}

std::string slurp(const std::string& path) {
  auto in = open(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Sphere of directions for events with n spatial coordinates.
BaseDomain directions(int n, const ComputeOptions& opt) {
  if (n < 2) throw InvalidArgument("events need at least two spatial coordinates");
  if (opt.resolution) {
    return n == 2 ? BaseDomain::circle(*opt.resolution) : BaseDomain::sphere(n, *opt.resolution);
  }
  return BaseDomain::for_dimension(n);
}

}  // namespace

json compute_cpm(const std::string& genfun_path) {
  return io::to_json(c_invariants(io::parse_genfun(slurp(genfun_path))));
}

json compute_order(const std::string& f_path, const std::string& g_path) {
  auto fin = open(f_path);
  auto gin = open(g_path);
  const GraphLegendrian f(io::read_field_csv(fin));
  const GraphLegendrian g(io::read_field_csv(gin));
  if (!f.domain().same_as(g.domain())) {
    throw DomainMismatch("fields have " + std::to_string(f.domain().size()) + " and " +
                         std::to_string(g.domain().size()) + " samples");
  }
  const auto le = compare(f, g, Relation::leq);
  const auto lt = compare(f, g, Relation::lt);
  json out{{"leq", le.holds}, {"lt", lt.holds},
           {"verdicts", json::array({io::to_json(le), io::to_json(lt)})}};
  const auto w = separation_witness(f, g);
  out["separation"] = w ? io::to_json(*w) : json(nullptr);
  return out;
}

json compute_sky(double t, const std::vector<double>& y, const ComputeOptions& opt) {
  MinkowskiEvent x{t, Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()))};
  return io::to_json(sky(x, directions(x.space_dim(), opt)));
}

json compute_classify(const std::string& curve_path, const ComputeOptions& opt) {
  auto in = open(curve_path);
  const SampledCurve c = io::read_curve_csv(in);
  return io::to_json(curve_positivity(c, directions(c.events.front().space_dim(), opt)));
}

json compute_isotopy(const std::string& path) {
  auto in = open(path);
  const IsotopyPath p = io::read_isotopy_csv(in);
  const IsotopySign s = is_nonnegative_isotopy(p);
  json out{{"classification", to_string(s)}};
  out["monotonicity"] = s == IsotopySign::neither ? json(nullptr) : io::to_json(monotonicity_audit(p));
  return out;
}

void compute_lift(const std::string& sphere_path, const ComputeOptions& opt, std::ostream& out) {
  const auto [s, t] = io::parse_sphere(slurp(sphere_path));
  io::write_contact_elements_csv(out, lift_sphere(s, t, directions(static_cast<int>(s.center.size()), opt)));
}

void compute_escape(const std::string& events_path, const std::string& a, const std::string& b,
                    const ComputeOptions& opt, std::ostream& out) {
  auto in = open(events_path);
  const auto seq = io::read_events_csv(in);
  if (seq.empty()) throw InvalidArgument("no events");
  const auto ea = io::parse_event_literal(a);
  const auto eb = io::parse_event_literal(b);
  io::write_escape_csv(out, escape_audit(seq, ea, eb, directions(seq.front().space_dim(), opt)));
}

}  // namespace lab
