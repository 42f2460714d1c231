#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vml {

enum class ExponentKind { Constant, TwoPiece, LogInterpolant, Tabulated };

// A variable exponent t -> p(t) on (0, inf). Four closed families:
//   constant          p(t) = c
//   two-piece         p(t) = v0 on (0,1), vinf on [1,inf)
//   log-interpolant   p(t) = p(inf) + (p(0) - p(inf)) / (1 + ln(1+t))
//   tabulated         linear interpolation in ln t between knots, clamped
//                     to the end values outside the knot range
// Values are immutable after construction. The stored decay constants a0,
// ainf bound |p(t)-p(0)|*|ln t| on (0,1/2] and |p(t)-p(inf)|*ln t on [2,inf).
class VariableExponent {
 public:
  VariableExponent() = default;  // the constant exponent 2

  static VariableExponent constant(double value);
  static VariableExponent two_piece(double value0, double value_inf);
  static VariableExponent log_interpolant(double p0, double p_inf);
  static VariableExponent tabulated(std::vector<double> knots,
                                    std::vector<double> values);
  // Tabulated exponent with caller-declared limits and decay constants;
  // check_decay verifies the table against the declaration, so a table that
  // fails to approach its declared limit is expressible (and detectable).
  static VariableExponent tabulated_declared(std::vector<double> knots,
                                             std::vector<double> values,
                                             double declared_p0,
                                             double declared_p_inf,
                                             double declared_a0,
                                             double declared_a_inf);

  double operator()(double t) const;  // evaluate; throws for t <= 0

  ExponentKind kind() const { return kind_; }
  double p0() const { return p0_; }
  double p_inf() const { return p_inf_; }
  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  double a0() const { return a0_; }
  double a_inf() const { return a_inf_; }
  bool is_constant() const { return kind_ == ExponentKind::Constant; }

  // True when p is constant a.e. on (lo, hi); value_on returns that value.
  bool constant_on(double lo, double hi) const;
  double value_on(double lo, double hi) const;
  // Interior points where the evaluation rule changes (piece edge, knots).
  std::vector<double> split_points(double lo, double hi) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& knot_values() const { return knot_values_; }

  bool operator==(const VariableExponent& o) const = default;

 private:
  ExponentKind kind_ = ExponentKind::Constant;
  double p0_ = 2.0, p_inf_ = 2.0, p_minus_ = 2.0, p_plus_ = 2.0;
  double a0_ = 0, a_inf_ = 0;
  std::vector<double> knots_, knot_values_;  // tabulated only
};

// p'(t) = p(t)/(p(t)-1); throws when p(t) <= 1.
double conjugate_exponent(double pt);
double conjugate(const VariableExponent& p, double t);

// q_*(r): q(0) for 0<r<1, q(inf) for r>=1.
double limit_exponent(const VariableExponent& q, double r);

// Triple (p(.), q(.), lambda) naming a local variable Morrey-Lorentz space.
struct ExponentPair {
  VariableExponent p;
  VariableExponent q;
  double lambda = 0.0;
};

struct DecayReport {
  double a0_hat = 0;    // sup over grid t<=1/2 of |p(t)-p(0)|*|ln t|
  double ainf_hat = 0;  // sup over grid t>=2  of |p(t)-p(inf)|*ln t
  bool pass0 = true;    // a0_hat <= stored a0 (+ margin)
  bool pass_inf = true;
};

DecayReport check_decay(const VariableExponent& p,
                        const std::vector<double>& grid);

struct SupConditionResult {
  double sup_value = 0;
  bool finite = true;
  int refinements = 0;
};

// Numerical sup over r>0 of [r]_1^{1/q(0)} * r^{-lambda/q_*(r)} plus the
// endpoint-exponent finiteness verdict.
SupConditionResult check_sup_condition(const VariableExponent& q,
                                       double lambda);

struct AlmostMonotoneSearch {
  bool found = false;
  double parameter = 0;  // the a (or b) that worked
  double factor = 0;     // best achieved almost-monotonicity factor
};

struct HardyConditionReport {
  // beta(t) < lambda/q_*(t) + 1/q'(t) at every grid point (head operator).
  bool h_holds = false;
  double h_margin = 0;  // min over grid of rhs - beta(t)
  // beta(t) > lambda/q_*(t) - 1/q(t) at every grid point (tail operator).
  bool calh_holds = false;
  double calh_margin = 0;
  // Endpoint variant with q'(0) and q(inf) in place of q'(t), q(t).
  bool h_endpoint_holds = false;
  double h_endpoint_margin = 0;
  bool calh_endpoint_holds = false;
  double calh_endpoint_margin = 0;
  // Existence of a (resp. b) making the four power-weighted functions
  // almost decreasing / almost increasing with factor <= 1.05 on the grid.
  AlmostMonotoneSearch decreasing_a;
  AlmostMonotoneSearch increasing_b;
};

HardyConditionReport check_hardy_conditions(const VariableExponent& beta,
                                            const VariableExponent& q,
                                            double lambda,
                                            const std::vector<double>& grid);

// Log-spaced grid over [lo, hi], n points, endpoints included.
std::vector<double> log_grid(double lo, double hi, int n);

// Default condition-checking grid: log-spaced over [1e-6, 1e6], 4096 points.
std::vector<double> default_condition_grid();

// Almost-monotonicity tolerance used by the Lemma-style searches. The source
// inequality has no constant attached; 1.05 is this tool's surrogate and is
// reported alongside every verdict that uses it.
inline constexpr double kAlmostMonotoneFactor = 1.05;
// Margin applied to strict inequalities so float ties have one reading.
inline constexpr double kStrictMargin = 1e-9;

// Key-value serialization (kind tag + numeric fields, round-trip exact).
std::string to_config(const VariableExponent& p);
VariableExponent exponent_from_config(const std::string& block);

}  // namespace vml
