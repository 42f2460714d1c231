#include "vml/operators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vml/quadrature.hpp"

namespace vml {

namespace {

// int_a^b s^{-beta(s)} ds over a sub-piece where phi is constant.
double head_weight_integral(const VariableExponent& beta, double a, double b) {
  if (beta.constant_on(a, b)) {
    const double c = beta.value_on(a, b);
    if (c == 1.0) {
      if (a == 0.0) throw divergence_error("int s^{-1} diverges at 0");
      return std::log(b / a);
    }
    const double e = 1.0 - c;
    if (a == 0.0 && e <= 0.0)
      throw divergence_error("int s^{-beta} diverges at 0");
    return (std::pow(b, e) - std::pow(a, e)) / e;
  }
  const auto integrand = [&](double s) { return std::pow(s, -beta(s)); };
  if (a == 0.0) return integrate_to_zero(integrand, b);
  return integrate_adaptive(integrand, a, b);
}

// int_a^b s^{-beta(s)-1} ds, a > 0.
double tail_weight_integral(const VariableExponent& beta, double a, double b) {
  if (beta.constant_on(a, b)) {
    const double c = beta.value_on(a, b);
    if (c == 0.0) return std::log(b / a);
    return (std::pow(a, -c) - std::pow(b, -c)) / c;
  }
  const auto integrand = [&](double s) { return std::pow(s, -beta(s) - 1.0); };
  return integrate_adaptive(integrand, a, b);
}

std::vector<double> piece_cuts(const VariableExponent& beta, double lo,
                               double hi) {
  std::vector<double> cuts{lo};
  for (double c : beta.split_points(lo, hi)) cuts.push_back(c);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

double hardy_head(const StepFunction& phi, const VariableExponent& beta,
                  double t) {
  if (!(t > 0)) throw std::domain_error("hardy_head needs t > 0");
  if (phi.is_zero()) return 0.0;
  if (phi.values()[0] > 0.0 && beta.p0() >= 1.0 - 1e-12)
    throw divergence_error(
        "hardy_head diverges: beta(0) >= 1 with mass at the origin");
  if (beta.is_constant() && beta.p0() == 0.0)
    return (1.0 / t) * phi.integral_to(t);  // shares double_star arithmetic
  double acc = 0.0;
  for (std::size_t i = 0; i < phi.piece_count(); ++i) {
    const double v = phi.values()[i];
    const double lo = phi.piece_lo(i);
    if (lo >= t) break;
    const double hi = std::min(phi.piece_hi(i), t);
    if (v == 0.0) continue;
    const auto cuts = piece_cuts(beta, lo, hi);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      acc += v * head_weight_integral(beta, cuts[k], cuts[k + 1]);
  }
  return std::pow(t, beta(t) - 1.0) * acc;
}

double hardy_tail(const StepFunction& phi, const VariableExponent& beta,
                  double t) {
  if (!(t > 0)) throw std::domain_error("hardy_tail needs t > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < phi.piece_count(); ++i) {
    const double hi = phi.piece_hi(i);
    if (hi <= t) continue;
    const double v = phi.values()[i];
    if (v == 0.0) continue;
    const double lo = std::max(phi.piece_lo(i), t);
    const auto cuts = piece_cuts(beta, lo, hi);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      acc += v * tail_weight_integral(beta, cuts[k], cuts[k + 1]);
  }
  if (acc == 0.0) return 0.0;
  return std::pow(t, beta(t)) * acc;
}

double calderon(const StepFunction& fstar, double t) {
  if (!(t > 0)) throw std::domain_error("calderon needs t > 0");
  double tail = 0.0;
  for (std::size_t i = 0; i < fstar.piece_count(); ++i) {
    const double hi = fstar.piece_hi(i);
    if (hi <= t) continue;
    const double v = fstar.values()[i];
    if (v == 0.0) continue;
    const double lo = std::max(fstar.piece_lo(i), t);
    tail += v * std::log(hi / lo);
  }
  return fstar.integral_to(t) + tail;
}

double maximal_line(const LineStep& f, double x) {
  // limit of the centered average as r -> 0
  double best = 0.5 * (f.left_value(x) + f.right_value(x));
  for (double e : f.edges()) {
    const double r = std::fabs(x - e);
    if (r <= 0.0) continue;
    const double avg = f.integral_over(x - r, x + r) / (2.0 * r);
    best = std::max(best, avg);
  }
  return best;
}

double hilbert_line(const LineStep& f, double x) {
  for (double e : f.edges())
    if (x == e)
      throw std::domain_error(
          "hilbert transform has a logarithmic singularity at piece edges");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const double v = f.values()[i];
    if (v == 0.0) continue;
    acc += v * (std::log(std::fabs(x - f.edges()[i])) -
                std::log(std::fabs(x - f.edges()[i + 1])));
  }
  return acc / 3.14159265358979323846;
}

double dominated_convolution_line(const LineStep& f, double x, double c0,
                                  double exclusion) {
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    if (f.values()[i] == 0.0) continue;
    const double lo = f.edges()[i], hi = f.edges()[i + 1];
    const bool hit = exclusion > 0.0
                         ? (lo < x + exclusion && hi > x - exclusion)
                         : (lo <= x && x <= hi);
    if (hit)
      throw std::domain_error(
          "dominated convolution needs x outside supp f or a declared "
          "exclusion neighborhood where f vanishes");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const double v = f.values()[i];
    if (v == 0.0) continue;
    const double lo = f.edges()[i], hi = f.edges()[i + 1];
    if (x >= hi)
      acc += v * std::log((x - lo) / (x - hi));
    else
      acc += v * std::log((hi - x) / (lo - x));
  }
  return c0 * acc;
}

double identity_approx(const LineStep& f, const ApproxKernel& kernel,
                       double eps, double x) {
  if (!(eps > 0)) throw std::domain_error("identity_approx needs eps > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const double v = f.values()[i];
    if (v == 0.0) continue;
    const double ua = (x - f.edges()[i]) / eps;
    const double ub = (x - f.edges()[i + 1]) / eps;
    if (kernel.family == ApproxFamily::Poisson) {
      acc += v * (std::atan(ua) - std::atan(ub)) / 3.14159265358979323846;
    } else {
      const double s = 1.0 / std::sqrt(2.0);
      acc += v * 0.5 * (std::erf(ua * s) - std::erf(ub * s));
    }
  }
  return acc;
}

double bochner_riesz_majorant(double r, double xnorm, double delta, int n) {
  if (!(r > 0) || !(xnorm > 0))
    throw std::domain_error("bochner_riesz_majorant needs r, |x| > 0");
  if (!(delta > 0.5 * (n - 1)))
    throw std::invalid_argument(
        "bochner_riesz_majorant needs delta > (n-1)/2");
  return std::pow(r / (r + xnorm), delta - 0.5 * (n - 1)) *
         std::pow(r + xnorm, -static_cast<double>(n));
}

// ---------------------------------------------------------------------------

OmegaKernel OmegaKernel::constant_one() {
  OmegaKernel k;
  k.family_ = Family::ConstantOne;
  k.lip_constant_ = 0.0;
  return k;
}

OmegaKernel OmegaKernel::cos_theta() {
  OmegaKernel k;
  k.family_ = Family::CosTheta;
  return k;
}

OmegaKernel OmegaKernel::sin_theta() {
  OmegaKernel k;
  k.family_ = Family::SinTheta;
  return k;
}

OmegaKernel OmegaKernel::harmonic(int kk) {
  if (kk < 1) throw std::invalid_argument("harmonic order must be >= 1");
  OmegaKernel k;
  k.family_ = Family::Harmonic;
  k.k_ = kk;
  k.lip_constant_ = static_cast<double>(kk);
  return k;
}

OmegaKernel OmegaKernel::sign_cos() {
  OmegaKernel k;
  k.family_ = Family::SignCos;
  k.lip_constant_ = 1.0;  // claimed; omega_check refutes it
  return k;
}

double OmegaKernel::angle(double theta) const {
  switch (family_) {
    case Family::ConstantOne:
      return 1.0;
    case Family::CosTheta:
      return std::cos(theta);
    case Family::SinTheta:
      return std::sin(theta);
    case Family::Harmonic:
      return std::cos(k_ * theta);
    case Family::SignCos: {
      const double c = std::cos(theta);
      return c >= 0.0 ? 1.0 : -1.0;
    }
  }
  return 0.0;
}

double OmegaKernel::at(double dx, double dy) const {
  return angle(std::atan2(dy, dx));
}

const char* OmegaKernel::name() const {
  switch (family_) {
    case Family::ConstantOne:
      return "one";
    case Family::CosTheta:
      return "cos";
    case Family::SinTheta:
      return "sin";
    case Family::Harmonic:
      return "harmonic";
    case Family::SignCos:
      return "sign-cos";
  }
  return "?";
}

OmegaCheckReport omega_check(const OmegaKernel& omega, int samples) {
  if (samples < 16) throw std::invalid_argument("omega_check needs >= 16 samples");
  OmegaCheckReport rep;
  const double twopi = 2.0 * 3.14159265358979323846;

  const auto mean_at = [&](int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += omega.angle(twopi * (i + 0.5) / n);
    return s / n;  // normalized measure
  };
  int n = samples;
  double mean = mean_at(n);
  for (int pass = 0; pass < 6; ++pass) {
    const double next = mean_at(2 * n);
    const bool settled = std::fabs(next - mean) <= 1e-12;
    mean = next;
    n *= 2;
    if (settled) break;
  }
  rep.mean = mean;
  rep.mean_zero = std::fabs(mean) <= 1e-8;

  const auto lip_at = [&](int m) {
    double c = 0.0;
    const int strides[] = {1, 3, 7, m / 5 + 1};
    for (int st : strides) {
      for (int i = 0; i < m; ++i) {
        const double a = twopi * i / m;
        const double b = twopi * ((i + st) % m) / m;
        const double chord = 2.0 * std::fabs(std::sin(0.5 * (a - b)));
        if (chord <= 0.0) continue;
        c = std::max(c, std::fabs(omega.angle(a) - omega.angle(b)) /
                            std::pow(chord, omega.lip_gamma()));
      }
    }
    return c;
  };
  const double c1 = lip_at(samples);
  const double c2 = lip_at(2 * samples);
  rep.lip_estimate = c2;
  const bool stable = c2 <= 1.5 * c1 + 1e-12;
  rep.lip_bounded =
      stable && c2 <= omega.lip_constant() * (1.0 + 0.05) + 1e-12;
  rep.pass = rep.mean_zero && rep.lip_bounded;
  return rep;
}

}  // namespace vml
