#include "vml/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vml/parallel.hpp"

namespace vml {

namespace {

template <class Loop>
LineStep sample_uniform(double lo, double hi, std::size_t cells,
                        const std::function<double(double)>& fn, Loop&& loop) {
  if (!(hi > lo) || cells == 0) throw std::invalid_argument("bad sample window");
  std::vector<double> edges(cells + 1), vals(cells);
  const double h = (hi - lo) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i)
    edges[i] = lo + h * static_cast<double>(i);
  edges.back() = hi;
  loop(cells, [&](std::size_t i) {
    vals[i] = fn(lo + h * (static_cast<double>(i) + 0.5));
  });
  return LineStep(std::move(edges), std::move(vals));
}

template <class Loop>
StepFunction sample_log(double lo, double hi, std::size_t cells,
                        const std::function<double(double)>& fn, Loop&& loop) {
  if (!(lo > 0) || !(hi > lo) || cells == 0)
    throw std::invalid_argument("bad log sample window");
  std::vector<double> bk(cells), vals(cells);
  const double u0 = std::log(lo), u1 = std::log(hi);
  for (std::size_t i = 0; i < cells; ++i) {
    const double w = static_cast<double>(i + 1) / static_cast<double>(cells);
    bk[i] = std::exp(u0 + w * (u1 - u0));
  }
  bk.back() = hi;
  loop(cells, [&](std::size_t i) {
    const double a = i == 0 ? lo : bk[i - 1];
    vals[i] = fn(std::sqrt(a * bk[i]));
  });
  return StepFunction(std::move(bk), std::move(vals));
}

}  // namespace

LineStep sample_field(double lo, double hi, std::size_t cells,
                      const std::function<double(double)>& fn) {
  return sample_uniform(lo, hi, cells, fn,
                        [](std::size_t n, auto&& f) { parallel_for(n, f); });
}

LineStep sample_field_serial(double lo, double hi, std::size_t cells,
                             const std::function<double(double)>& fn) {
  return sample_uniform(lo, hi, cells, fn,
                        [](std::size_t n, auto&& f) { serial_for(n, f); });
}

StepFunction sample_log_step(double lo, double hi, std::size_t cells,
                             const std::function<double(double)>& fn) {
  return sample_log(lo, hi, cells, fn,
                    [](std::size_t n, auto&& f) { parallel_for(n, f); });
}

StepFunction sample_log_step_serial(double lo, double hi, std::size_t cells,
                                    const std::function<double(double)>& fn) {
  return sample_log(lo, hi, cells, fn,
                    [](std::size_t n, auto&& f) { serial_for(n, f); });
}

}  // namespace vml
