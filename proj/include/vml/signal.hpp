#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace vml {

// Nonnegative piecewise-constant function on (0, inf) with finite support.
// Piece i is (t_{i-1}, t_i] with value v_i (t_0 = 0 implicit); the function
// vanishes beyond the last breakpoint. The stored form is canonical:
// adjacent equal values merged, trailing zero pieces dropped. Canonical
// forms make rearrangement identities exact, not tolerance-based.
class StepFunction {
 public:
  StepFunction() = default;  // the zero function
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  // Characteristic function of (a, b] (a >= 0), scaled by `height`.
  static StepFunction characteristic(double a, double b, double height = 1.0);

  bool is_zero() const { return bk_.empty(); }
  std::size_t piece_count() const { return bk_.size(); }
  const std::vector<double>& breakpoints() const { return bk_; }
  const std::vector<double>& values() const { return val_; }
  double piece_lo(std::size_t i) const { return i == 0 ? 0.0 : bk_[i - 1]; }
  double piece_hi(std::size_t i) const { return bk_[i]; }
  double support_end() const { return bk_.empty() ? 0.0 : bk_.back(); }

  double at(double t) const;  // 0 outside the support; t <= 0 -> 0
  double max_value() const;
  double integral() const;
  // Partial integral over (0, t], exact piecewise, left-to-right.
  double integral_to(double t) const;

  // Measure of { f > level }, exact. Non-increasing canonical inputs take
  // the breakpoint-lookup path so rearranged functions agree with their
  // source bit-for-bit.
  double distribution(double level) const;

  bool non_increasing() const;

  bool operator==(const StepFunction& o) const = default;

 private:
  std::vector<double> bk_, val_;
};

// Right-continuous non-increasing rearrangement, canonical form. Level
// measures are summed with lengths sorted ascending so every equimeasurable
// reshuffle of the pieces yields the identical result.
StepFunction rearrange(const StepFunction& f);

// f**(t) = (1/t) * integral of fstar over (0, t]. fstar must be
// non-increasing; t > 0.
double double_star(const StepFunction& fstar, double t);

// ---------------------------------------------------------------------------

// Nonnegative step function on the real line: explicit first edge, piece i
// is (e_{i-1}, e_i] with value v_i, zero outside (e_0, e_k].
class LineStep {
 public:
  LineStep() = default;
  LineStep(std::vector<double> edges, std::vector<double> values);

  static LineStep from_step(const StepFunction& f);  // place on (0, s]
  static LineStep characteristic(double a, double b, double height = 1.0);
  // Uniform cells over [lo, hi], values sampled at cell midpoints.
  static LineStep sampled(double lo, double hi, std::size_t cells,
                          const std::function<double(double)>& fn);

  bool is_zero() const;
  std::size_t piece_count() const { return val_.size(); }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& values() const { return val_; }

  double at(double x) const;
  double left_value(double x) const;   // value on (x - eps, x)
  double right_value(double x) const;  // value on (x, x + eps)
  double integral() const;
  double integral_over(double a, double b) const;  // exact, clamped

  double support_lo() const;  // of the positive part
  double support_hi() const;
  double max_value() const;

 private:
  std::vector<double> edges_, val_, prefix_;
};

// Rearrangement of a line step function onto (0, inf).
StepFunction rearrange_line(const LineStep& f);

// ---------------------------------------------------------------------------

// Volume of the unit ball in R^n via half-integer Gamma closed forms.
// Supported for 1 <= n <= 10.
double unit_ball_volume(int n);

// Radial function on R^n: |x| -> profile(|x|). The profile is either a
// non-increasing step function of the radius or a truncated power law
// c * rho^{-alpha} on [0, radius).
class RadialFunction {
 public:
  static RadialFunction from_profile(int dimension, StepFunction profile);
  static RadialFunction power(int dimension, double c, double alpha,
                              double radius);

  int dimension() const { return dim_; }
  bool is_power() const { return is_power_; }
  const StepFunction& profile() const { return profile_; }
  double power_c() const { return c_; }
  double power_alpha() const { return alpha_; }
  double power_radius() const { return radius_; }

 private:
  RadialFunction() = default;
  int dim_ = 1;
  bool is_power_ = false;
  StepFunction profile_;
  double c_ = 0, alpha_ = 0, radius_ = 0;
};

// Decreasing rearrangement via |B(0,rho)| = omega_n rho^n. Exact for step
// profiles; power profiles are discretized onto a log grid of `pieces`.
StepFunction radial_rearrange(const RadialFunction& f,
                              std::size_t pieces = 1024);
// Pointwise closed form f*(t) = g((t/omega_n)^{1/n}), exact for both kinds.
double radial_rearrange_value(const RadialFunction& f, double t);

// ---------------------------------------------------------------------------

// Function sampled on a uniform m x m grid over the square
// [x0, x0+side) x [y0, y0+side). Cell (ix, iy) holds one value.
class GridFunction2D {
 public:
  GridFunction2D(double x0, double y0, double side, int m,
                 std::vector<double> cells);
  static GridFunction2D constant(double x0, double y0, double side, int m,
                                 double value);

  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double side() const { return side_; }
  int m() const { return m_; }
  double cell_width() const { return side_ / m_; }
  double cell_area() const { return cell_width() * cell_width(); }

  double cell(int ix, int iy) const { return cells_[idx(ix, iy)]; }
  double& cell(int ix, int iy) { return cells_[idx(ix, iy)]; }
  const std::vector<double>& cells() const { return cells_; }

  double at(double x, double y) const;  // 0 outside the square
  double cell_center_x(int ix) const { return x0_ + (ix + 0.5) * cell_width(); }
  double cell_center_y(int iy) const { return y0_ + (iy + 0.5) * cell_width(); }

  // Dense CSV with a one-line header: "# x0,y0,side,m".
  std::string to_csv() const;
  static GridFunction2D from_csv(const std::string& text);

 private:
  std::size_t idx(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * m_ + ix;
  }
  double x0_, y0_, side_;
  int m_;
  std::vector<double> cells_;
};

// Rearrangement of the grid function: cell values sorted descending, each
// carrying one cell area of measure. Exact: level measures are
// count * cell_area products.
StepFunction rasterize(const GridFunction2D& g);

// CSV rows "breakpoint,value" for a step function.
std::string step_to_csv(const StepFunction& f);
StepFunction step_from_csv(const std::string& text);

}  // namespace vml
