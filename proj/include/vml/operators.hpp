#pragma once

#include <stdexcept>

#include "vml/exponent.hpp"
#include "vml/signal.hpp"

namespace vml {

// Raised when a weighted Hardy integral diverges at the origin.
class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// H_beta phi(t) = t^{beta(t)-1} * int_0^t phi(s) s^{-beta(s)} ds. Closed form
// per piece where beta is constant; diverges when phi carries mass at the
// origin and beta(0) >= 1.
double hardy_head(const StepFunction& phi, const VariableExponent& beta,
                  double t);

// calH_beta phi(t) = t^{beta(t)} * int_t^inf phi(s) s^{-beta(s)-1} ds.
// Always finite for step functions.
double hardy_tail(const StepFunction& phi, const VariableExponent& beta,
                  double t);

// int_0^t f*(s) ds + int_t^inf f*(s)/s ds, both pieces exact.
double calderon(const StepFunction& fstar, double t);

// Centered Hardy-Littlewood maximal function of a line step function,
// computed exactly: the ball average is monotone in the radius between
// critical radii |x - edge|, so the sup is a max over those radii plus the
// r -> 0 limit.
double maximal_line(const LineStep& f, double x);

// Hilbert transform (1/pi) p.v. int f(y)/(x-y) dy, closed logarithmic form.
// x must not coincide with a piece edge.
double hilbert_line(const LineStep& f, double x);

// c0 * int |f(y)| / |x-y| dy for x outside the support of f (or f vanishing
// on the declared exclusion neighborhood of x), exact piecewise.
double dominated_convolution_line(const LineStep& f, double x, double c0 = 1.0,
                                  double exclusion = 0.0);

enum class ApproxFamily { Poisson, Gaussian };

// Unit-mass mollifier family on the line; both members have a radial
// decreasing integrable majorant by construction.
struct ApproxKernel {
  ApproxFamily family = ApproxFamily::Poisson;
};

// A_eps f(x) = (1/eps) int a((x-y)/eps) f(y) dy; arctan closed form for the
// Poisson kernel, error-function form for the Gaussian.
double identity_approx(const LineStep& f, const ApproxKernel& kernel,
                       double eps, double x);

// Size majorant (r/(r+|x|))^{delta-(n-1)/2} (r+|x|)^{-n} of the Bochner-Riesz
// kernel; requires delta > (n-1)/2 and is bounded by |x|^{-n}.
double bochner_riesz_majorant(double r, double xnorm, double delta, int n);

// ---------------------------------------------------------------------------

// Angular kernel on the unit circle (n = 2). Homogeneity of degree zero is
// structural: only the angle dependence is stored.
class OmegaKernel {
 public:
  enum class Family { ConstantOne, CosTheta, SinTheta, Harmonic, SignCos };

  static OmegaKernel constant_one();  // violates the mean-zero condition
  static OmegaKernel cos_theta();
  static OmegaKernel sin_theta();
  static OmegaKernel harmonic(int k);  // cos(k theta)
  static OmegaKernel sign_cos();       // jump: fails every Lip_gamma

  double angle(double theta) const;
  double at(double dx, double dy) const;  // Omega((dx,dy)/|(dx,dy)|)

  Family family() const { return family_; }
  double lip_gamma() const { return lip_gamma_; }
  double lip_constant() const { return lip_constant_; }
  const char* name() const;

 private:
  Family family_ = Family::CosTheta;
  int k_ = 1;
  double lip_gamma_ = 1.0;
  double lip_constant_ = 1.0;
};

struct OmegaCheckReport {
  double mean = 0.0;  // against normalized measure on the circle
  bool mean_zero = false;
  double lip_estimate = 0.0;  // over sampled chord pairs
  bool lip_bounded = false;   // estimate <= declared constant and stable
  bool pass = false;
};

// Verifies mean zero by composite quadrature (tolerance 1e-8) and estimates
// the Lip_gamma constant over sampled pairs, with one refinement pass to
// catch jumps.
OmegaCheckReport omega_check(const OmegaKernel& omega, int samples);

}  // namespace vml
