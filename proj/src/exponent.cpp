#include "vml/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vml/numfmt.hpp"

namespace vml {

namespace {

double interp_logt(const std::vector<double>& knots,
                   const std::vector<double>& vals, double t) {
  if (t <= knots.front()) return vals.front();
  if (t >= knots.back()) return vals.back();
  const auto it = std::upper_bound(knots.begin(), knots.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - knots.begin());
  const double u0 = std::log(knots[j - 1]), u1 = std::log(knots[j]);
  const double w = (std::log(t) - u0) / (u1 - u0);
  return vals[j - 1] + w * (vals[j] - vals[j - 1]);
}

}  // namespace

VariableExponent VariableExponent::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("exponent must be finite");
  VariableExponent p;
  p.kind_ = ExponentKind::Constant;
  p.p0_ = p.p_inf_ = p.p_minus_ = p.p_plus_ = value;
  p.a0_ = p.a_inf_ = 0.0;
  return p;
}

VariableExponent VariableExponent::two_piece(double value0, double value_inf) {
  if (!std::isfinite(value0) || !std::isfinite(value_inf))
    throw std::invalid_argument("exponent must be finite");
  VariableExponent p;
  p.kind_ = ExponentKind::TwoPiece;
  p.p0_ = value0;
  p.p_inf_ = value_inf;
  p.p_minus_ = std::min(value0, value_inf);
  p.p_plus_ = std::max(value0, value_inf);
  p.a0_ = p.a_inf_ = 0.0;  // constant near both endpoints
  return p;
}

VariableExponent VariableExponent::log_interpolant(double p0, double p_inf) {
  if (!std::isfinite(p0) || !std::isfinite(p_inf))
    throw std::invalid_argument("exponent must be finite");
  VariableExponent p;
  p.kind_ = ExponentKind::LogInterpolant;
  p.p0_ = p0;
  p.p_inf_ = p_inf;
  p.p_minus_ = std::min(p0, p_inf);
  p.p_plus_ = std::max(p0, p_inf);
  // near 0 the decay product peaks around t ~ 1/4; measure it on a fine
  // grid. Toward infinity it increases to |p0 - pinf| without reaching it.
  const double d = std::fabs(p0 - p_inf);
  double sup0 = 0.0;
  for (double t : log_grid(1e-12, 0.5, 65536)) {
    const double prod = std::log1p(t) / (1.0 + std::log1p(t)) * d *
                        std::fabs(std::log(t));
    sup0 = std::max(sup0, prod);
  }
  p.a0_ = sup0 * (1.0 + 1e-6) + 1e-12;
  p.a_inf_ = d + 1e-12;
  return p;
}

VariableExponent VariableExponent::tabulated(std::vector<double> knots,
                                             std::vector<double> values) {
  if (knots.size() != values.size() || knots.size() < 2)
    throw std::invalid_argument("tabulated exponent needs >= 2 knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] > 0)) throw std::invalid_argument("knots must be positive");
    if (i && !(knots[i] > knots[i - 1]))
      throw std::invalid_argument("knots must be strictly increasing");
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("exponent must be finite");
  }
  VariableExponent p;
  p.kind_ = ExponentKind::Tabulated;
  p.knots_ = std::move(knots);
  p.knot_values_ = std::move(values);
  p.p0_ = p.knot_values_.front();
  p.p_inf_ = p.knot_values_.back();
  p.p_minus_ = *std::min_element(p.knot_values_.begin(), p.knot_values_.end());
  p.p_plus_ = *std::max_element(p.knot_values_.begin(), p.knot_values_.end());
  // The table clamps to its end values outside the knot range, so the decay
  // products are largest on a grid spanning the knots; measure and store.
  const double lo = std::min(1e-9, 0.1 * p.knots_.front());
  const double hi = std::max(1e9, 10.0 * p.knots_.back());
  DecayReport r = check_decay(p, log_grid(lo, hi, 65536));
  p.a0_ = r.a0_hat * (1.0 + 1e-6) + 1e-12;
  p.a_inf_ = r.ainf_hat * (1.0 + 1e-6) + 1e-12;
  return p;
}

VariableExponent VariableExponent::tabulated_declared(
    std::vector<double> knots, std::vector<double> values, double declared_p0,
    double declared_p_inf, double declared_a0, double declared_a_inf) {
  VariableExponent p = tabulated(std::move(knots), std::move(values));
  p.p0_ = declared_p0;
  p.p_inf_ = declared_p_inf;
  p.a0_ = declared_a0;
  p.a_inf_ = declared_a_inf;
  p.p_minus_ = std::min({p.p_minus_, declared_p0, declared_p_inf});
  p.p_plus_ = std::max({p.p_plus_, declared_p0, declared_p_inf});
  return p;
}

double VariableExponent::operator()(double t) const {
  if (!(t > 0)) throw std::domain_error("exponent evaluated at t <= 0");
  switch (kind_) {
    case ExponentKind::Constant:
      return p0_;
    case ExponentKind::TwoPiece:
      return t < 1.0 ? p0_ : p_inf_;
    case ExponentKind::LogInterpolant:
      return p_inf_ + (p0_ - p_inf_) / (1.0 + std::log1p(t));
    case ExponentKind::Tabulated:
      return interp_logt(knots_, knot_values_, t);
  }
  return p0_;
}

bool VariableExponent::constant_on(double lo, double hi) const {
  switch (kind_) {
    case ExponentKind::Constant:
      return true;
    case ExponentKind::TwoPiece:
      // the single point t=1 has measure zero inside (lo, 1]
      return hi <= 1.0 || lo >= 1.0;
    case ExponentKind::LogInterpolant:
      return p0_ == p_inf_;
    case ExponentKind::Tabulated:
      if (hi <= knots_.front() || lo >= knots_.back()) return true;
      for (std::size_t j = 1; j < knots_.size(); ++j) {
        if (lo >= knots_[j - 1] && hi <= knots_[j])
          return knot_values_[j - 1] == knot_values_[j];
      }
      return false;
  }
  return false;
}

double VariableExponent::value_on(double lo, double hi) const {
  const double mid = lo > 0 ? std::sqrt(lo * hi) : 0.5 * hi;
  return (*this)(mid);
}

std::vector<double> VariableExponent::split_points(double lo,
                                                   double hi) const {
  std::vector<double> pts;
  if (kind_ == ExponentKind::TwoPiece) {
    if (lo < 1.0 && 1.0 < hi) pts.push_back(1.0);
  } else if (kind_ == ExponentKind::Tabulated) {
    for (double k : knots_)
      if (lo < k && k < hi) pts.push_back(k);
  }
  return pts;
}


double conjugate_exponent(double pt) {
  if (!(pt > 1.0))
    throw std::domain_error("conjugate exponent undefined for p <= 1");
  return pt / (pt - 1.0);
}

double conjugate(const VariableExponent& p, double t) {
  return conjugate_exponent(p(t));
}

double limit_exponent(const VariableExponent& q, double r) {
  if (!(r > 0)) throw std::domain_error("limit exponent needs r > 0");
  return r < 1.0 ? q.p0() : q.p_inf();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n));
  const double u0 = std::log(lo), u1 = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double w = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    g.push_back(std::exp(u0 + w * (u1 - u0)));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_condition_grid() {
  return log_grid(1e-6, 1e6, 4096);
}

DecayReport check_decay(const VariableExponent& p,
                        const std::vector<double>& grid) {
  DecayReport r;
  for (double t : grid) {
    if (t <= 0.5) {
      const double prod = std::fabs(p(t) - p.p0()) * std::fabs(std::log(t));
      r.a0_hat = std::max(r.a0_hat, prod);
    }
    if (t >= 2.0) {
      const double prod = std::fabs(p(t) - p.p_inf()) * std::log(t);
      r.ainf_hat = std::max(r.ainf_hat, prod);
    }
  }
  r.pass0 = r.a0_hat <= p.a0() + kStrictMargin;
  r.pass_inf = r.ainf_hat <= p.a_inf() + kStrictMargin;
  return r;
}

SupConditionResult check_sup_condition(const VariableExponent& q,
                                       double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must lie in [0,1)");
  SupConditionResult res;
  const auto term = [&](double r) {
    const double r1 = std::min(1.0, r);
    return std::pow(r1, 1.0 / q.p0()) *
           std::pow(r, -lambda / limit_exponent(q, r));
  };
  int n = 4097;  // odd so that r=1 is a grid point
  double prev = -1.0;
  for (int pass = 0; pass < 8; ++pass) {
    double sup = 0.0;
    for (double r : log_grid(1e-6, 1e6, n)) sup = std::max(sup, term(r));
    res.sup_value = sup;
    res.refinements = pass;
    if (prev >= 0 && std::fabs(sup - prev) <= 1e-3 * sup) break;
    prev = sup;
    n = 2 * n - 1;
  }
  // r->0: exponent (1-lambda)/q(0); r->inf: exponent -lambda/q(inf).
  res.finite =
      (1.0 - lambda) / q.p0() >= 0.0 && lambda / q.p_inf() >= 0.0;
  return res;
}

namespace {

// g(t) = t^{e(t)} is almost decreasing with factor F on the grid iff
// h(t2) <= h(t1) + ln F for all t1 < t2, h(t) = e(t) ln t. Running-min scan.
bool almost_monotone(const std::vector<double>& grid,
                     const std::vector<double>& h, bool decreasing,
                     double* worst_factor) {
  const double tol = std::log(kAlmostMonotoneFactor);
  double run = h[0];
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (decreasing) {
      worst = std::max(worst, h[i] - run);
      if (h[i] > run + tol) ok = false;
      run = std::min(run, h[i]);
    } else {
      worst = std::max(worst, run - h[i]);
      if (h[i] < run - tol) ok = false;
      run = std::max(run, h[i]);
    }
  }
  if (worst_factor) *worst_factor = std::exp(worst);
  return ok;
}

}  // namespace

HardyConditionReport check_hardy_conditions(const VariableExponent& beta,
                                            const VariableExponent& q,
                                            double lambda,
                                            const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  HardyConditionReport rep;
  double h_m = 1e300, calh_m = 1e300, he_m = 1e300, ce_m = 1e300;
  for (double t : grid) {
    const double b = beta(t);
    const double qs = limit_exponent(q, t);
    const double qt = q(t);
    h_m = std::min(h_m, lambda / qs + 1.0 / conjugate_exponent(qt) - b);
    calh_m = std::min(calh_m, b - (lambda / qs - 1.0 / qt));
    he_m = std::min(he_m,
                    lambda / qs + 1.0 / conjugate_exponent(q.p0()) - b);
    ce_m = std::min(ce_m, b - (lambda / qs - 1.0 / q.p_inf()));
  }
  rep.h_margin = h_m;
  rep.calh_margin = calh_m;
  rep.h_endpoint_margin = he_m;
  rep.calh_endpoint_margin = ce_m;
  rep.h_holds = h_m > kStrictMargin;
  rep.calh_holds = calh_m > kStrictMargin;
  rep.h_endpoint_holds = he_m > kStrictMargin;
  rep.calh_endpoint_holds = ce_m > kStrictMargin;

  // Candidate search for the almost-monotonicity parameters a and b.
  std::vector<double> hb(grid.size()), hw(grid.size());
  double emin = 1e300, emax = -1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    hb[i] = beta(t);
    hw[i] = lambda / limit_exponent(q, t) - beta(t);
    emin = std::min({emin, hb[i], hw[i]});
    emax = std::max({emax, hb[i], hw[i]});
  }
  const auto search = [&](bool decreasing) {
    AlmostMonotoneSearch s;
    s.factor = 1e300;
    for (int k = 0; k <= 200; ++k) {
      const double cand =
          (emin - 0.5) + (emax - emin + 1.0) * (k / 200.0);
      std::vector<double> h1(grid.size()), h2(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lt = std::log(grid[i]);
        if (decreasing) {
          h1[i] = (hb[i] - cand) * lt;
          h2[i] = (hw[i] - cand) * lt;
        } else {
          h1[i] = (-hb[i] + cand) * lt;
          h2[i] = (hw[i] + cand) * lt;  // t^{lambda/q_* - beta + b}
        }
      }
      double f1, f2;
      const bool ok1 = almost_monotone(grid, h1, decreasing, &f1);
      const bool ok2 = almost_monotone(grid, h2, decreasing, &f2);
      const double f = std::max(f1, f2);
      if (f < s.factor) {
        s.factor = f;
        s.parameter = cand;
        s.found = ok1 && ok2;
      }
      if (s.found) break;
    }
    return s;
  };
  rep.decreasing_a = search(true);
  rep.increasing_b = search(false);
  return rep;
}

std::string to_config(const VariableExponent& p) {
  std::ostringstream os;
  switch (p.kind()) {
    case ExponentKind::Constant:
      os << "kind = constant\n";
      os << "value = " << format_double(p.p0()) << "\n";
      break;
    case ExponentKind::TwoPiece:
      os << "kind = two-piece\n";
      os << "value0 = " << format_double(p.p0()) << "\n";
      os << "valueinf = " << format_double(p.p_inf()) << "\n";
      break;
    case ExponentKind::LogInterpolant:
      os << "kind = log-interpolant\n";
      os << "p0 = " << format_double(p.p0()) << "\n";
      os << "pinf = " << format_double(p.p_inf()) << "\n";
      break;
    case ExponentKind::Tabulated: {
      os << "kind = tabulated\n";
      os << "knots = " << format_list(p.knots()) << "\n";
      os << "values = " << format_list(p.knot_values()) << "\n";
      break;
    }
  }
  return os.str();
}

VariableExponent exponent_from_config(const std::string& block) {
  std::map<std::string, std::string> kv;
  std::istringstream is(block);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const std::string kind = kv["kind"];
  if (kind == "constant") return VariableExponent::constant(parse_double(kv["value"]));
  if (kind == "two-piece")
    return VariableExponent::two_piece(parse_double(kv["value0"]),
                                       parse_double(kv["valueinf"]));
  if (kind == "log-interpolant")
    return VariableExponent::log_interpolant(parse_double(kv["p0"]),
                                             parse_double(kv["pinf"]));
  if (kind == "tabulated")
    return VariableExponent::tabulated(parse_list(kv["knots"]),
                                       parse_list(kv["values"]));
  throw std::invalid_argument("unknown exponent kind: " + kind);
}

}  // namespace vml
