#include "vml/operators2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vml/parallel.hpp"

namespace vml {

namespace {

struct Offset {
  double dist;
  int dx, dy;
};

// Offsets sorted by center distance; shared by every cell of one field pass.
std::vector<Offset> sorted_offsets(int m) {
  std::vector<Offset> offs;
  offs.reserve(static_cast<std::size_t>(2 * m + 1) * (2 * m + 1));
  for (int dy = -m; dy <= m; ++dy)
    for (int dx = -m; dx <= m; ++dx)
      offs.push_back({std::hypot(static_cast<double>(dx),
                                 static_cast<double>(dy)),
                      dx, dy});
  std::sort(offs.begin(), offs.end(), [](const Offset& a, const Offset& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.dy != b.dy) return a.dy < b.dy;
    return a.dx < b.dx;
  });
  return offs;
}

double maximal_cell(const GridFunction2D& g, const std::vector<Offset>& offs,
                    int ix, int iy, int radii_per_octave) {
  const int m = g.m();
  const double diam_cells = std::sqrt(2.0) * m;
  double best = 0.0;
  double sum = 0.0;
  long count = 0;
  std::size_t next = 0;
  // radius ladder in units of the cell width: 2^{j/rpo}
  for (int j = 0;; ++j) {
    const double r = std::pow(2.0, static_cast<double>(j) / radii_per_octave);
    while (next < offs.size() && offs[next].dist < r) {
      const int cx = ix + offs[next].dx;
      const int cy = iy + offs[next].dy;
      if (cx >= 0 && cy >= 0 && cx < m && cy < m) {
        sum += g.cell(cx, cy);
        ++count;
      }
      ++next;
    }
    if (count > 0) best = std::max(best, sum / static_cast<double>(count));
    if (r > diam_cells) break;
  }
  return best;
}

void check_exclusion(const GridFunction2D& g, double x, double y,
                     double exclusion) {
  const double h = g.cell_width();
  for (int iy = 0; iy < g.m(); ++iy) {
    for (int ix = 0; ix < g.m(); ++ix) {
      if (g.cell(ix, iy) == 0.0) continue;
      const double lx = g.x0() + ix * h, hx = lx + h;
      const double ly = g.y0() + iy * h, hy = ly + h;
      const double ddx = std::max({lx - x, 0.0, x - hx});
      const double ddy = std::max({ly - y, 0.0, y - hy});
      const double dist = std::hypot(ddx, ddy);
      const bool hit = exclusion > 0.0 ? dist < exclusion : dist <= 0.0;
      if (hit)
        throw std::domain_error(
            "x must lie outside supp f, or f must vanish on the declared "
            "exclusion neighborhood");
    }
  }
}

}  // namespace

double maximal_grid(const GridFunction2D& g, int ix, int iy,
                    int radii_per_octave) {
  if (ix < 0 || iy < 0 || ix >= g.m() || iy >= g.m())
    throw std::invalid_argument("cell index out of range");
  return maximal_cell(g, sorted_offsets(g.m()), ix, iy, radii_per_octave);
}

GridFunction2D maximal_grid_field(const GridFunction2D& g,
                                  int radii_per_octave) {
  const auto offs = sorted_offsets(g.m());
  std::vector<double> out(g.cells().size());
  const int m = g.m();
  parallel_for(out.size(), [&](std::size_t i) {
    out[i] = maximal_cell(g, offs, static_cast<int>(i % m),
                          static_cast<int>(i / m), radii_per_octave);
  });
  return GridFunction2D(g.x0(), g.y0(), g.side(), m, std::move(out));
}

GridFunction2D maximal_grid_field_serial(const GridFunction2D& g,
                                         int radii_per_octave) {
  const auto offs = sorted_offsets(g.m());
  std::vector<double> out(g.cells().size());
  const int m = g.m();
  serial_for(out.size(), [&](std::size_t i) {
    out[i] = maximal_cell(g, offs, static_cast<int>(i % m),
                          static_cast<int>(i / m), radii_per_octave);
  });
  return GridFunction2D(g.x0(), g.y0(), g.side(), m, std::move(out));
}

double dominated_convolution_grid(const GridFunction2D& g,
                                  const OmegaKernel* omega, double x, double y,
                                  double c0, double exclusion) {
  check_exclusion(g, x, y, exclusion);
  const double h = g.cell_width();
  const auto pass = [&](int sub) {
    const double sh = h / sub;
    const double sub_area = sh * sh;
    double acc = 0.0;
    for (int iy = 0; iy < g.m(); ++iy) {
      for (int ix = 0; ix < g.m(); ++ix) {
        const double v = g.cell(ix, iy);
        if (v == 0.0) continue;
        const double lx = g.x0() + ix * h, ly = g.y0() + iy * h;
        for (int sy = 0; sy < sub; ++sy) {
          for (int sx = 0; sx < sub; ++sx) {
            const double px = lx + (sx + 0.5) * sh;
            const double py = ly + (sy + 0.5) * sh;
            const double dx = x - px, dy = y - py;
            const double r2 = dx * dx + dy * dy;
            const double w = omega ? std::fabs(omega->at(dx, dy)) : 1.0;
            acc += v * w * sub_area / r2;
          }
        }
      }
    }
    return acc;
  };
  double val = pass(1);
  for (int sub = 2; sub <= 32; sub *= 2) {
    const double next = pass(sub);
    const bool done =
        std::fabs(next - val) <= 5e-3 * std::max(std::fabs(next), 1e-300);
    val = next;
    if (done) break;
  }
  return c0 * val;
}

namespace {

// Cumulative polar sweep: F(t_k) for every node of the ladder in one pass.
std::vector<double> truncated_ladder(const GridFunction2D& g,
                                     const OmegaKernel& omega, double x,
                                     double y,
                                     const std::vector<double>& t_nodes,
                                     int n_theta, int rho_per_cell) {
  const double twopi = 2.0 * 3.14159265358979323846;
  std::vector<double> cos_t(n_theta), sin_t(n_theta), w_t(n_theta);
  for (int a = 0; a < n_theta; ++a) {
    const double theta = twopi * (a + 0.5) / n_theta;
    cos_t[a] = std::cos(theta);
    sin_t[a] = std::sin(theta);
    w_t[a] = omega.angle(theta + 3.14159265358979323846);
  }
  const double dtheta = twopi / n_theta;
  const double h = g.cell_width();
  std::vector<double> F(t_nodes.size(), 0.0);
  double acc = 0.0;
  double lo = 0.0;
  for (std::size_t k = 0; k < t_nodes.size(); ++k) {
    const double hi = t_nodes[k];
    const int n_rho = std::max(
        4, static_cast<int>(std::ceil((hi - lo) / h * rho_per_cell)));
    const double drho = (hi - lo) / n_rho;
    for (int j = 0; j < n_rho; ++j) {
      const double rho = lo + (j + 0.5) * drho;
      double ang = 0.0;
      for (int a = 0; a < n_theta; ++a)
        ang += w_t[a] * g.at(x + rho * cos_t[a], y + rho * sin_t[a]);
      acc += ang * dtheta * drho;
    }
    F[k] = acc;
    lo = hi;
  }
  return F;
}

}  // namespace

double marcinkiewicz_truncated(const GridFunction2D& g,
                               const OmegaKernel& omega, double t, double x,
                               double y, int refine) {
  if (!(t > 0)) throw std::domain_error("needs t > 0");
  const int n_theta = 128 << refine;
  const int rho_per_cell = 4 << refine;
  return truncated_ladder(g, omega, x, y, {t}, n_theta, rho_per_cell)[0];
}

namespace {

struct SupportWindow {
  double dmin = 1e300, dmax = 0.0;
};

SupportWindow support_window(const GridFunction2D& g, double x, double y) {
  SupportWindow w;
  const double h = g.cell_width();
  for (int iy = 0; iy < g.m(); ++iy) {
    for (int ix = 0; ix < g.m(); ++ix) {
      if (g.cell(ix, iy) == 0.0) continue;
      const double lx = g.x0() + ix * h, hx = lx + h;
      const double ly = g.y0() + iy * h, hy = ly + h;
      const double ddx = std::max({lx - x, 0.0, x - hx});
      const double ddy = std::max({ly - y, 0.0, y - hy});
      w.dmin = std::min(w.dmin, std::hypot(ddx, ddy));
      const double fx = std::max(std::fabs(x - lx), std::fabs(x - hx));
      const double fy = std::max(std::fabs(y - ly), std::fabs(y - hy));
      w.dmax = std::max(w.dmax, std::hypot(fx, fy));
    }
  }
  return w;
}

double mu_quadrature(const GridFunction2D& g, const OmegaKernel& omega,
                     double x, double y, const SupportWindow& w, int n_t,
                     int n_theta, int rho_per_cell) {
  std::vector<double> nodes(static_cast<std::size_t>(n_t) + 1);
  for (int k = 0; k <= n_t; ++k)
    nodes[static_cast<std::size_t>(k)] =
        w.dmin * std::pow(w.dmax / w.dmin, static_cast<double>(k) / n_t);
  const std::vector<double> F =
      truncated_ladder(g, omega, x, y, nodes, n_theta, rho_per_cell);
  // trapezoid in u = ln t of F(e^u)^2 e^{-2u}
  double mu2 = 0.0;
  for (int k = 0; k < n_t; ++k) {
    const double u0 = std::log(nodes[k]), u1 = std::log(nodes[k + 1]);
    const double g0 = F[k] * F[k] * std::exp(-2.0 * u0);
    const double g1 = F[k + 1] * F[k + 1] * std::exp(-2.0 * u1);
    mu2 += 0.5 * (g0 + g1) * (u1 - u0);
  }
  const double f_inf = F.back();  // constant once the disk covers supp g
  mu2 += f_inf * f_inf / (2.0 * w.dmax * w.dmax);
  return std::sqrt(mu2);
}

}  // namespace

double marcinkiewicz(const GridFunction2D& g, const OmegaKernel& omega,
                     double x, double y, double exclusion) {
  check_exclusion(g, x, y, exclusion);
  SupportWindow w = support_window(g, x, y);
  if (w.dmax == 0.0) return 0.0;  // zero function
  w.dmin = std::max(w.dmin, 1e-6 * w.dmax);
  double val = mu_quadrature(g, omega, x, y, w, 32, 128, 2);
  for (int r = 1; r <= 3; ++r) {
    const double next =
        mu_quadrature(g, omega, x, y, w, 32 << r, 128 << r, 2 << r);
    const bool done =
        std::fabs(next - val) <= 1e-2 * std::max(std::fabs(next), 1e-300);
    val = next;
    if (done) break;
  }
  return val;
}

double marcinkiewicz_fixed(const GridFunction2D& g, const OmegaKernel& omega,
                           double x, double y, int t_nodes, int n_theta,
                           int rho_per_cell) {
  SupportWindow w = support_window(g, x, y);
  if (w.dmax == 0.0) return 0.0;
  w.dmin = std::max(w.dmin, 1e-6 * w.dmax);
  return mu_quadrature(g, omega, x, y, w, t_nodes, n_theta, rho_per_cell);
}

}  // namespace vml
