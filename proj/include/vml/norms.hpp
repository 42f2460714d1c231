#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "vml/exponent.hpp"
#include "vml/signal.hpp"

namespace vml {

struct NormResult {
  double value = 0.0;
  double rel_error = 0.0;
  int refinements = 0;
};

inline constexpr double kInfiniteInterval =
    std::numeric_limits<double>::infinity();

// Integrand carrier for the norm ladder. On each piece (lo, hi] the
// integrand is coeff * t^{w(t)} with w(t) = 1/p(t) - 1/q(t) (the Lorentz
// weight) or w = 0 for plain Lebesgue modulars; the modular at scale lam over
// (0, rcut] is
//   J(lam; rcut) = sum_i  int_piece (coeff_i t^{w(t)} / lam)^{q(t)} dt.
// Pieces where q (and p, when weighted) are constant integrate in closed
// form; their masses are grouped by exponent with prefix sums so a truncated
// modular evaluation costs O(groups + variable pieces). Everything else goes
// through adaptive quadrature.
class WeightedModular {
 public:
  WeightedModular(const StepFunction& phi, const VariableExponent& q);
  WeightedModular(const StepFunction& fstar, const VariableExponent& p,
                  const VariableExponent& q);

  double modular(double lam, double rcut = kInfiniteInterval) const;
  // Root of modular(lam, rcut) == 1 (0 when no mass below rcut). Single
  // exponent group solves in closed form, otherwise bracket + bisection to
  // relative width 1e-12; the returned value satisfies J(v) <= 1 and
  // J(v (1 - 1e-6)) > 1.
  double luxemburg(double rcut = kInfiniteInterval) const;

  bool is_zero() const { return cheap_.empty() && variable_.empty(); }
  double support_start() const { return support_start_; }
  double support_end() const { return support_end_; }
  double first_piece_end() const { return first_hi_; }
  // t-exponent wq+1 = q/p of the piece touching the origin (+inf when the
  // support starts away from 0). The truncated norm scales like
  // r^{(wq+1)/q} there, so the Morrey sup diverges once wq+1 <= lambda.
  double origin_exponent() const { return origin_exp_; }

 private:
  struct CheapPiece {
    double lo, hi;
    double mass;       // coeff^q * int_lo^hi t^{wq} dt
    double amp;        // coeff^q
    double exp_t;      // wq + 1 (> 0)
    double q;
  };
  struct VariablePiece {
    double lo, hi;
    double coeff;
  };
  struct Group {
    double q;
    std::vector<double> hi;      // piece upper ends, increasing
    std::vector<double> lo;
    std::vector<double> prefix;  // prefix[k] = mass of first k pieces
    std::vector<std::size_t> piece;  // index into cheap_
  };

  void build(const StepFunction& f, const VariableExponent* p,
             const VariableExponent& q);
  double variable_term(const VariablePiece& vp, double lam, double rcut) const;

  std::vector<CheapPiece> cheap_;
  std::vector<VariablePiece> variable_;
  std::vector<Group> groups_;
  std::optional<VariableExponent> p_;  // engaged iff weighted
  VariableExponent q_;
  bool weighted_ = false;
  double support_start_ = 0.0, support_end_ = 0.0, first_hi_ = 0.0;
  double origin_exp_ = std::numeric_limits<double>::infinity();
};

// J_{p(.)}(phi) over (0, rcut]: the variable-exponent modular of a step
// function. Exact per piece for piecewise-constant exponents.
double modular(const StepFunction& phi, const VariableExponent& p,
               double rcut = kInfiniteInterval);

// Luxemburg norm inf{ lam > 0 : J(phi/lam) <= 1 } over (0, rcut].
NormResult luxemburg_norm(const StepFunction& phi, const VariableExponent& p,
                          double rcut = kInfiniteInterval);

// sup_{r>0} r^{-lambda/q_*(r)} ||phi||_{L_q(.)}(0,r). Requires q_- > 1 and
// 0 <= lambda < 1.
NormResult local_morrey_norm(const StepFunction& phi,
                             const VariableExponent& q, double lambda);

// || t^{1/p(t)-1/q(t)} f*(t) ||_{L_q(.)}(0,inf).
NormResult variable_lorentz_norm(const StepFunction& f,
                                 const VariableExponent& p,
                                 const VariableExponent& q);

// sup_{r>0} r^{-lambda/q_*(r)} || t^{1/p(t)-1/q(t)} f*(t) ||_{L_q(.)}(0,r);
// equals the variable Lorentz norm when lambda = 0.
NormResult morrey_lorentz_quasinorm(const StepFunction& f,
                                    const ExponentPair& pair);

}  // namespace vml
