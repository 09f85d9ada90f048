#pragma once

#include <functional>
#include <vector>

namespace winter {

/// Adaptive Gauss-Kronrod 7/15 integration to an absolute tolerance.
/// Panels are split recursively until the local Kronrod-Gauss discrepancy,
/// scaled by panel share, meets abs_tol; depth overruns raise
/// convergence_error.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Same, with mandatory initial panel breaks at the given interior points
/// (used for the derivative kink of eigenfunctions at the barrier).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breaks, double abs_tol = 1e-10);

} // namespace winter
