#include "vml/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vml/numfmt.hpp"

namespace vml {

namespace {

// Sum with addends sorted ascending: a summation order independent of the
// caller's piece order, so level measures of equimeasurable reshuffles are
// bit-identical.
double canonical_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

void validate_pieces(const std::vector<double>& bk,
                     const std::vector<double>& val) {
  if (bk.size() != val.size())
    throw std::invalid_argument("breakpoint/value size mismatch");
  double prev = 0.0;
  for (std::size_t i = 0; i < bk.size(); ++i) {
    if (!(bk[i] > prev) || !std::isfinite(bk[i]))
      throw std::invalid_argument("breakpoints must be strictly increasing and positive");
    if (!(val[i] >= 0.0) || !std::isfinite(val[i]))
      throw std::invalid_argument("values must be finite and nonnegative");
    prev = bk[i];
  }
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values) {
  validate_pieces(breakpoints, values);
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!val_.empty() && val_.back() == values[i]) {
      bk_.back() = breakpoints[i];  // merge adjacent equal values
    } else {
      bk_.push_back(breakpoints[i]);
      val_.push_back(values[i]);
    }
  }
  while (!val_.empty() && val_.back() == 0.0) {
    bk_.pop_back();
    val_.pop_back();
  }
}

StepFunction StepFunction::characteristic(double a, double b, double height) {
  if (!(a >= 0.0) || !(b > a)) throw std::invalid_argument("need 0 <= a < b");
  if (a == 0.0) return StepFunction({b}, {height});
  return StepFunction({a, b}, {0.0, height});
}

double StepFunction::at(double t) const {
  if (t <= 0.0 || bk_.empty() || t > bk_.back()) return 0.0;
  const auto it = std::lower_bound(bk_.begin(), bk_.end(), t);
  return val_[static_cast<std::size_t>(it - bk_.begin())];
}

double StepFunction::max_value() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, v);
  return m;
}

double StepFunction::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < bk_.size(); ++i)
    s += val_[i] * (bk_[i] - piece_lo(i));
  return s;
}

double StepFunction::integral_to(double t) const {
  if (t <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < bk_.size(); ++i) {
    const double lo = piece_lo(i);
    if (t <= lo) break;
    s += val_[i] * (std::min(t, bk_[i]) - lo);
  }
  return s;
}

bool StepFunction::non_increasing() const {
  for (std::size_t i = 1; i < val_.size(); ++i)
    if (val_[i] > val_[i - 1]) return false;
  return true;
}

double StepFunction::distribution(double level) const {
  if (level < 0.0) throw std::domain_error("distribution needs level >= 0");
  if (bk_.empty()) return 0.0;
  if (non_increasing()) {
    // canonical non-increasing: measure is the breakpoint closing the last
    // piece above the level
    double m = 0.0;
    for (std::size_t i = 0; i < val_.size(); ++i)
      if (val_[i] > level) m = bk_[i];
    return m;
  }
  std::vector<double> lens;
  for (std::size_t i = 0; i < val_.size(); ++i)
    if (val_[i] > level) lens.push_back(bk_[i] - piece_lo(i));
  return canonical_sum(std::move(lens));
}

namespace {

// Value-length pairs sorted by value descending with cumulative breakpoints.
// O(k log k); summation order depends on the piece order, so this tier is
// for large sampled inputs where the canonical tier would cost O(k^2).
StepFunction rearrange_pairs_fast(std::vector<std::pair<double, double>> vl) {
  if (vl.empty()) return StepFunction();
  std::stable_sort(vl.begin(), vl.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  std::vector<double> bk, val;
  double acc = 0.0;
  for (const auto& [v, len] : vl) {
    acc += len;
    if (!val.empty() && val.back() == v)
      bk.back() = acc;
    else {
      bk.push_back(acc);
      val.push_back(v);
    }
  }
  return StepFunction(std::move(bk), std::move(val));
}

// Exact canonical tier: per level class, lengths summed sorted ascending, so
// equimeasurable reshuffles rearrange to bit-identical forms.
StepFunction rearrange_pairs_canonical(
    const std::vector<std::pair<double, double>>& vl) {
  if (vl.empty()) return StepFunction();
  std::vector<double> values;
  for (const auto& p : vl) values.push_back(p.first);
  std::sort(values.begin(), values.end(), std::greater<>());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> bk, val;
  for (double w : values) {
    std::vector<double> lens;
    for (const auto& p : vl)
      if (p.first >= w) lens.push_back(p.second);
    bk.push_back(canonical_sum(std::move(lens)));
    val.push_back(w);
  }
  return StepFunction(std::move(bk), std::move(val));
}

constexpr std::size_t kCanonicalRearrangeLimit = 256;

StepFunction rearrange_pairs(std::vector<std::pair<double, double>> vl) {
  if (vl.size() <= kCanonicalRearrangeLimit)
    return rearrange_pairs_canonical(vl);
  return rearrange_pairs_fast(std::move(vl));
}

}  // namespace

StepFunction rearrange(const StepFunction& f) {
  if (f.non_increasing()) return f;  // canonical form is its own rearrangement
  std::vector<std::pair<double, double>> vl;
  for (std::size_t i = 0; i < f.piece_count(); ++i)
    if (f.values()[i] > 0.0)
      vl.emplace_back(f.values()[i], f.piece_hi(i) - f.piece_lo(i));
  return rearrange_pairs(std::move(vl));
}

double double_star(const StepFunction& fstar, double t) {
  if (!(t > 0.0)) throw std::domain_error("double_star needs t > 0");
  if (!fstar.non_increasing())
    throw std::invalid_argument("double_star needs a non-increasing input");
  return (1.0 / t) * fstar.integral_to(t);
}

// --------------------------------------------------------------------------

LineStep::LineStep(std::vector<double> edges, std::vector<double> values) {
  if (edges.size() != values.size() + 1 || values.empty())
    throw std::invalid_argument("need k+1 edges for k values");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw std::invalid_argument("edges must be strictly increasing");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("values must be finite and nonnegative");
  edges_ = std::move(edges);
  val_ = std::move(values);
  prefix_.assign(edges_.size(), 0.0);
  for (std::size_t i = 0; i < val_.size(); ++i)
    prefix_[i + 1] = prefix_[i] + val_[i] * (edges_[i + 1] - edges_[i]);
}

LineStep LineStep::from_step(const StepFunction& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot place the zero function");
  std::vector<double> edges{0.0};
  for (double b : f.breakpoints()) edges.push_back(b);
  return LineStep(std::move(edges), f.values());
}

LineStep LineStep::characteristic(double a, double b, double height) {
  return LineStep({a, b}, {height});
}

LineStep LineStep::sampled(double lo, double hi, std::size_t cells,
                           const std::function<double(double)>& fn) {
  if (!(hi > lo) || cells == 0) throw std::invalid_argument("bad sample window");
  std::vector<double> edges(cells + 1), vals(cells);
  const double h = (hi - lo) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i)
    edges[i] = lo + h * static_cast<double>(i);
  edges.back() = hi;
  for (std::size_t i = 0; i < cells; ++i)
    vals[i] = fn(lo + h * (static_cast<double>(i) + 0.5));
  return LineStep(std::move(edges), std::move(vals));
}

bool LineStep::is_zero() const {
  for (double v : val_)
    if (v > 0.0) return false;
  return true;
}

double LineStep::at(double x) const {
  if (x <= edges_.front() || x > edges_.back()) return 0.0;
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - edges_.begin());
  return val_[j - 1];
}

double LineStep::left_value(double x) const {
  if (x <= edges_.front() || x > edges_.back()) return 0.0;
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), x);
  return val_[static_cast<std::size_t>(it - edges_.begin()) - 1];
}

double LineStep::right_value(double x) const {
  if (x < edges_.front() || x >= edges_.back()) return 0.0;
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  return val_[static_cast<std::size_t>(it - edges_.begin()) - 1];
}

double LineStep::integral() const { return prefix_.back(); }

double LineStep::integral_over(double a, double b) const {
  const auto eval = [&](double x) {
    if (x <= edges_.front()) return 0.0;
    if (x >= edges_.back()) return prefix_.back();
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), x);
    std::size_t j = static_cast<std::size_t>(it - edges_.begin());
    if (edges_[j] == x) return prefix_[j];
    return prefix_[j - 1] + val_[j - 1] * (x - edges_[j - 1]);
  };
  if (b <= a) return 0.0;
  return eval(b) - eval(a);
}

double LineStep::support_lo() const {
  for (std::size_t i = 0; i < val_.size(); ++i)
    if (val_[i] > 0.0) return edges_[i];
  return 0.0;
}

double LineStep::support_hi() const {
  for (std::size_t i = val_.size(); i-- > 0;)
    if (val_[i] > 0.0) return edges_[i + 1];
  return 0.0;
}

double LineStep::max_value() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, v);
  return m;
}

StepFunction rearrange_line(const LineStep& f) {
  std::vector<std::pair<double, double>> vl;  // (value, length)
  for (std::size_t i = 0; i < f.piece_count(); ++i)
    if (f.values()[i] > 0.0)
      vl.emplace_back(f.values()[i], f.edges()[i + 1] - f.edges()[i]);
  return rearrange_pairs(std::move(vl));
}

// --------------------------------------------------------------------------

double unit_ball_volume(int n) {
  if (n < 1 || n > 10)
    throw std::invalid_argument("unit ball volume supported for 1 <= n <= 10");
  const double pi = 3.14159265358979323846;
  if (n % 2 == 0) {
    const int m = n / 2;
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    return std::pow(pi, m) / fact;
  }
  const int m = (n - 1) / 2;
  double num = std::pow(pi, m) * std::pow(4.0, m + 1);
  double mfact = 1.0;
  for (int k = 2; k <= m + 1; ++k) mfact *= k;
  double nfact = 1.0;
  for (int k = 2; k <= 2 * m + 2; ++k) nfact *= k;
  return num * mfact / nfact;
}

RadialFunction RadialFunction::from_profile(int dimension,
                                            StepFunction profile) {
  if (dimension < 1 || dimension > 10)
    throw std::invalid_argument("dimension must be in [1,10]");
  if (!profile.non_increasing())
    throw std::invalid_argument(
        "radial profile must be non-increasing (pre-rearranged in 1D)");
  RadialFunction f;
  f.dim_ = dimension;
  f.profile_ = std::move(profile);
  return f;
}

RadialFunction RadialFunction::power(int dimension, double c, double alpha,
                                     double radius) {
  if (dimension < 1 || dimension > 10)
    throw std::invalid_argument("dimension must be in [1,10]");
  if (!(c > 0) || !(alpha >= 0) || !(radius > 0))
    throw std::invalid_argument("power profile needs c>0, alpha>=0, radius>0");
  RadialFunction f;
  f.dim_ = dimension;
  f.is_power_ = true;
  f.c_ = c;
  f.alpha_ = alpha;
  f.radius_ = radius;
  return f;
}

StepFunction radial_rearrange(const RadialFunction& f, std::size_t pieces) {
  const double wn = unit_ball_volume(f.dimension());
  const double n = f.dimension();
  if (!f.is_power()) {
    const StepFunction& g = f.profile();
    std::vector<double> bk, val;
    for (std::size_t i = 0; i < g.piece_count(); ++i) {
      bk.push_back(wn * std::pow(g.piece_hi(i), n));
      val.push_back(g.values()[i]);
    }
    return StepFunction(std::move(bk), std::move(val));
  }
  // Power profile: log-spaced discretization of the closed form.
  const double t_end = wn * std::pow(f.power_radius(), n);
  const double t_lo = t_end * 1e-9;
  std::vector<double> bk, val;
  double prev = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    const double hi =
        i + 1 == pieces
            ? t_end
            : t_lo * std::pow(t_end / t_lo,
                              static_cast<double>(i + 1) / pieces);
    const double mid = prev > 0 ? std::sqrt(prev * hi) : 0.5 * hi;
    bk.push_back(hi);
    val.push_back(radial_rearrange_value(f, mid));
    prev = hi;
  }
  return StepFunction(std::move(bk), std::move(val));
}

double radial_rearrange_value(const RadialFunction& f, double t) {
  if (!(t > 0)) throw std::domain_error("needs t > 0");
  const double wn = unit_ball_volume(f.dimension());
  const double rho = std::pow(t / wn, 1.0 / f.dimension());
  if (f.is_power()) {
    if (rho >= f.power_radius()) return 0.0;
    return f.power_c() * std::pow(rho, -f.power_alpha());
  }
  return f.profile().at(rho);
}

// --------------------------------------------------------------------------

GridFunction2D::GridFunction2D(double x0, double y0, double side, int m,
                               std::vector<double> cells)
    : x0_(x0), y0_(y0), side_(side), m_(m), cells_(std::move(cells)) {
  if (m_ < 2) throw std::invalid_argument("grid resolution must be >= 2");
  if (!(side_ > 0)) throw std::invalid_argument("side must be positive");
  if (cells_.size() != static_cast<std::size_t>(m_) * m_)
    throw std::invalid_argument("cell count != m*m");
  for (double v : cells_)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("cells must be finite and nonnegative");
}

GridFunction2D GridFunction2D::constant(double x0, double y0, double side,
                                        int m, double value) {
  return GridFunction2D(x0, y0, side, m,
                        std::vector<double>(static_cast<std::size_t>(m) * m,
                                            value));
}

double GridFunction2D::at(double x, double y) const {
  const double h = cell_width();
  const int ix = static_cast<int>(std::floor((x - x0_) / h));
  const int iy = static_cast<int>(std::floor((y - y0_) / h));
  if (ix < 0 || iy < 0 || ix >= m_ || iy >= m_) return 0.0;
  return cell(ix, iy);
}

std::string GridFunction2D::to_csv() const {
  std::ostringstream os;
  os << "# " << format_double(x0_) << "," << format_double(y0_) << ","
     << format_double(side_) << "," << m_ << "\n";
  for (int iy = 0; iy < m_; ++iy) {
    for (int ix = 0; ix < m_; ++ix) {
      if (ix) os << ",";
      os << format_double(cell(ix, iy));
    }
    os << "\n";
  }
  return os.str();
}

GridFunction2D GridFunction2D::from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
    throw std::invalid_argument("grid csv needs a '# x0,y0,side,m' header");
  const auto header = parse_list(line.substr(1));
  if (header.size() != 4) throw std::invalid_argument("bad grid csv header");
  const int m = static_cast<int>(header[3]);
  std::vector<double> cells;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    for (double v : parse_list(line)) cells.push_back(v);
  }
  return GridFunction2D(header[0], header[1], header[2], m, std::move(cells));
}

StepFunction rasterize(const GridFunction2D& g) {
  std::vector<double> sorted(g.cells());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double area = g.cell_area();
  std::vector<double> bk, val;
  std::size_t i = 0;
  while (i < sorted.size() && sorted[i] > 0.0) {
    const double w = sorted[i];
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == w) ++j;
    bk.push_back(static_cast<double>(j) * area);  // count * area: exact level measure
    val.push_back(w);
    i = j;
  }
  return StepFunction(std::move(bk), std::move(val));
}

std::string step_to_csv(const StepFunction& f) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.piece_count(); ++i)
    os << format_double(f.breakpoints()[i]) << ","
       << format_double(f.values()[i]) << "\n";
  return os.str();
}

StepFunction step_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<double> bk, val;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto row = parse_list(line);
    if (row.size() != 2) throw std::invalid_argument("step csv rows are 'breakpoint,value'");
    bk.push_back(row[0]);
    val.push_back(row[1]);
  }
  return StepFunction(std::move(bk), std::move(val));
}

}  // namespace vml
