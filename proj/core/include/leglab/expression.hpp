#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace leglab {

// Values bound to the free variables of an Expression.
struct ExprContext {
  std::span<const double> q;   // point on the base sphere
  std::span<const double> xi;  // auxiliary coordinates
};

// Small arithmetic expression language for field and perturbation ingest.
//
//   variables  q1..qn, xi1..xiN, theta (atan2(q2,q1), S^1 only),
//              r (Euclidean norm of xi), pi
//   operators  + - * / ^ and unary minus
//   functions  sin cos tan exp log sqrt abs min max atan2
//              bump(s)        smooth bump, 1 at s=0, zero for |s|>=1
//              dot(c1,..,cn)  <c, q> for a constant vector c
class Expression {
 public:
  static Expression parse(std::string_view text);

  double operator()(const ExprContext& ctx) const;

  const std::string& source() const { return source_; }
  // Largest q / xi index referenced (1-based, 0 if none).
  int max_q_index() const { return max_q_; }
  int max_xi_index() const { return max_xi_; }
  bool uses_xi() const { return max_xi_ > 0 || uses_r_; }
  bool uses_theta() const { return uses_theta_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
  int max_q_ = 0;
  int max_xi_ = 0;
  bool uses_r_ = false;
  bool uses_theta_ = false;
};

double smooth_bump(double s);

}  // namespace leglab
