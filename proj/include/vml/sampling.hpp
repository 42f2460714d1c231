#pragma once

#include <functional>

#include "vml/signal.hpp"

namespace vml {

// Uniform midpoint sampling of a pointwise operator into a line step
// function. The OpenMP variant fills one cell per iteration; the serial
// variant is the reference implementation kept for testing.
LineStep sample_field(double lo, double hi, std::size_t cells,
                      const std::function<double(double)>& fn);
LineStep sample_field_serial(double lo, double hi, std::size_t cells,
                             const std::function<double(double)>& fn);

// Log-spaced midpoint sampling into a step function on (0, inf): breakpoints
// on a geometric grid over [lo, hi], piece values at geometric midpoints.
StepFunction sample_log_step(double lo, double hi, std::size_t cells,
                             const std::function<double(double)>& fn);
StepFunction sample_log_step_serial(double lo, double hi, std::size_t cells,
                                    const std::function<double(double)>& fn);

}  // namespace vml
