#pragma once

#include <cmath>
#include <cstddef>

namespace vml {

// Gauss 7 / Kronrod 15 panel on [a, b]. Returns the K15 value, writes an
// error estimate from the G7/K15 difference.
template <class Func>
double quad_g7k15(const Func& f, double a, double b, double& err) {
  static const double nw[8][3] = {
      {0.000000000000000, 0.417959183673469, 0.209482141084728},
      {0.405845151377397, 0.381830050505119, 0.190350578064785},
      {0.741531185599394, 0.279705391489277, 0.140653259715525},
      {0.949107912342759, 0.129484966168870, 0.063092092629979},
      {0.207784955007898, 0.0, 0.204432940075298},
      {0.586087235467691, 0.0, 0.169004726639267},
      {0.864864423359769, 0.0, 0.104790010322250},
      {0.991455371120813, 0.0, 0.022935322010529}};

  const double x0 = 0.5 * (a + b);
  const double m = b - x0;

  const double y0 = f(x0);
  double g7 = nw[0][1] * y0;
  double k15 = nw[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double mx = m * nw[i][0];
    const double yi = f(x0 + mx) + f(x0 - mx);
    g7 += nw[i][1] * yi;
    k15 += nw[i][2] * yi;
  }
  g7 *= m;
  k15 *= m;
  err = std::fabs(g7 - k15);
  return k15;
}

// Adaptive bisection around G7K15. Tolerances are relative to the running
// total plus an absolute floor; depth is bounded to keep integrable endpoint
// singularities from recursing forever.
template <class Func>
double integrate_adaptive(const Func& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 1e-300,
                          int max_depth = 48) {
  struct Frame {
    double a, b;
    int depth;
  };
  Frame stack[256];
  int top = 0;
  stack[top++] = {a, b, 0};
  double sum = 0.0;
  while (top > 0) {
    const Frame fr = stack[--top];
    double err;
    const double s = quad_g7k15(f, fr.a, fr.b, err);
    if (err <= rel_tol * (std::fabs(sum) + std::fabs(s)) || err <= abs_tol ||
        fr.depth >= max_depth || top >= 254) {
      sum += s;
      continue;
    }
    const double mid = 0.5 * (fr.a + fr.b);
    stack[top++] = {fr.a, mid, fr.depth + 1};
    stack[top++] = {mid, fr.b, fr.depth + 1};
  }
  return sum;
}

// Integral over (0, b] of an integrand with an integrable singularity at 0:
// dyadic panels shrinking toward the origin, stopped once a panel is
// negligible against the accumulated value.
template <class Func>
double integrate_to_zero(const Func& f, double b, double rel_tol = 1e-12) {
  double sum = 0.0;
  double hi = b;
  for (int k = 0; k < 1400; ++k) {
    const double lo = 0.5 * hi;
    const double part = integrate_adaptive(f, lo, hi, rel_tol);
    sum += part;
    if (std::fabs(part) <= 0.25 * rel_tol * std::fabs(sum) && k > 8) break;
    hi = lo;
  }
  return sum;
}

}  // namespace vml
