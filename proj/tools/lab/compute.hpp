#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lab {

using nlohmann::json;

struct ComputeOptions {
  std::optional<std::size_t> resolution;
};

// Each returns the JSON printed by `lab compute <name>`.
json compute_cpm(const std::string& genfun_path);
json compute_order(const std::string& f_path, const std::string& g_path);
json compute_sky(double t, const std::vector<double>& y, const ComputeOptions& opt);
json compute_classify(const std::string& curve_path, const ComputeOptions& opt);
json compute_isotopy(const std::string& path);

// CSV producers.
void compute_lift(const std::string& sphere_path, const ComputeOptions& opt, std::ostream& out);
void compute_escape(const std::string& events_path, const std::string& a, const std::string& b,
                    const ComputeOptions& opt, std::ostream& out);

}  // namespace lab
