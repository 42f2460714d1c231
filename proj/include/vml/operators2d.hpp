#pragma once

#include "vml/operators.hpp"
#include "vml/signal.hpp"

namespace vml {

// Discrete centered maximal function at one cell: sup over a geometric
// radius ladder (2^{1/radii_per_octave} steps from one cell width to the
// domain diameter) of the mean of cell values whose centers lie strictly
// inside the disk. Refining the ladder can only increase the value.
double maximal_grid(const GridFunction2D& g, int ix, int iy,
                    int radii_per_octave = 4);

// Whole-field evaluation; the OpenMP kernel writes one cell per iteration,
// the serial variant is the reference the tests pin it against.
GridFunction2D maximal_grid_field(const GridFunction2D& g,
                                  int radii_per_octave = 4);
GridFunction2D maximal_grid_field_serial(const GridFunction2D& g,
                                         int radii_per_octave = 4);

// c0 * int |Omega((x-y)')| / |x-y|^2 g(y) dy over the plane, composite
// midpoint with global subcell refinement until the relative change drops
// below 0.5%. Pass omega = nullptr for the constant-1 kernel. x must lie
// outside supp g, or g must vanish on the declared exclusion ball.
double dominated_convolution_grid(const GridFunction2D& g,
                                  const OmegaKernel* omega, double x, double y,
                                  double c0 = 1.0, double exclusion = 0.0);

// Truncated singular integral F_{Omega,t}(x): in polar coordinates around x
// the 1/|x-y|^{n-1} kernel cancels the Jacobian, leaving
// int_0^t int_0^{2pi} Omega(theta+pi) g(x + rho e_theta) dtheta drho.
double marcinkiewicz_truncated(const GridFunction2D& g,
                               const OmegaKernel& omega, double t, double x,
                               double y, int refine = 0);

// Square function (int_0^inf |F_{Omega,t}|^2 dt/t^3)^{1/2}. F vanishes below
// the distance to supp g and is constant once the disk covers the support,
// so the t-integral runs over that window on a log grid plus the closed-form
// tail F_inf^2 / (2 t_max^2). Same support precondition as the dominated
// convolution.
double marcinkiewicz(const GridFunction2D& g, const OmegaKernel& omega,
                     double x, double y, double exclusion = 0.0);

// Same square function at pinned quadrature resolution (no internal
// refinement loop); the experiment harness drives the resolution so that
// grid refinement has one meaning across a whole field of sample points.
double marcinkiewicz_fixed(const GridFunction2D& g, const OmegaKernel& omega,
                           double x, double y, int t_nodes, int n_theta,
                           int rho_per_cell);

}  // namespace vml
