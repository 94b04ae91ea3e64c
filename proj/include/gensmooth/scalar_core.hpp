#pragma once

#include "gensmooth/oracle.hpp"
#include "gensmooth/types.hpp"

namespace gensmooth {

/// Root of t * exp(t) = 1 on (0, 1), found by bisection on [0.5, 0.6].
double solve_nu();

/// Cached solve_nu().
double nu();

/// Central-difference gradient with step h on every coordinate.
Vector fd_gradient(const ObjectiveOracle& oracle, const Vector& x, double h);

/// Spectral norm of the Hessian at x by power iteration on finite-difference
/// Hessian-vector products. The difference step scales with max(1, |x|).
double hessian_norm_estimate(const ObjectiveOracle& oracle, const Vector& x,
                             double tol = 1e-10, int max_iter = 500);

}  // namespace gensmooth
