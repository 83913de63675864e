#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace isospec {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  std::size_t max_evaluations = 1'000'000;
  /// Integrand has an integrable singularity or fractional-power behaviour at
  /// the lower / upper limit. The interval is then mapped through
  /// y = lo + (hi-lo) t² (resp. y = hi - (hi-lo) t²), which removes
  /// square-root type behaviour. For `cumulative`, `rough_lo` refers to x0.
  bool rough_lo = false;
  bool rough_hi = false;
};

using Integrand = std::function<double(double)>;

/// Value of ISOSPEC_TOLERANCE_SCALE, or 1 when unset or not a positive number.
double tolerance_scale();

/// Default options scaled by the ISOSPEC_TOLERANCE_SCALE environment variable.
QuadOptions default_quad_options();

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// The Gauss-Kronrod nodes never touch the interval ends, so integrable
/// endpoint singularities are allowed. Throws ConvergenceError when the
/// tolerance max(abs_tol, rel_tol·|value|) is not met within the evaluation
/// budget and NonFiniteError when f returns inf/NaN at an interior node.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadOptions& options = default_quad_options());

/// ∫_{x0}^{xs[i]} f for every i, accumulated panel by panel.
///
/// `xs` must be sorted; points may lie on either side of x0.
std::vector<double> cumulative(const Integrand& f, double x0, std::span<const double> xs,
                               const QuadOptions& options = default_quad_options());

}  // namespace isospec
