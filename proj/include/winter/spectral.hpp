#pragma once

#include <utility>
#include <vector>

#include "winter/model.hpp"

namespace winter {

/// Options for the bracketed root solver.
struct SolverOptions {
    double tol = 1e-13;              ///< stop when |F| <= tol or bracket width <= tol*(1/N)
    int max_iter = 80;               ///< bisection budget before convergence_error
    double endpoint_guard = 1e-12;   ///< initial offset from bracket endpoints, units of 1/N
    double pole_guard = 1e-12;       ///< spectral_fn exclusion radius around poles, units of 1/N
};

namespace detail {

/// F(k) = cot(pi k) + cot(pi N k) + 1/(pi g k), no pole guard.
template <class T>
T spectral_fn_raw(T k, T g, int N) {
    return cot_pi(k) + cot_pi(T(N) * k) + T(1) / (pi_v<T> * g * k);
}

/// Root of F in ((s-1)/N, s/N) by guarded bisection. The endpoints are poles
/// with analytically known one-sided signs (+inf just above the lower one,
/// -inf just below the upper one), so the initial bracket is shrunk by the
/// endpoint guard and never evaluated. Converges on bracket width <= wtol or
/// |F| <= ftol. Throws bracket_error if the guards swallow the bracket.
template <class T>
T solve_bisect(int N, T g, int s, T ftol, T wtol, T guard, int max_iter,
               int* iters_out = nullptr, T* resid_out = nullptr) {
    const T guard_abs = guard / T(N);
    T lo = T(s - 1) / T(N) + guard_abs;
    T hi = T(s) / T(N) - guard_abs;
    if (!(lo < hi))
        throw bracket_error("solve_bisect: endpoint guards swallow the bracket for s="
                            + std::to_string(s));
    int it = 0;
    for (; it < max_iter && hi - lo > wtol; ++it) {
        T mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;   // bracket at floating-point resolution
        T f_mid = spectral_fn_raw(mid, g, N);
        if (std::fabs(f_mid) <= ftol) { lo = hi = mid; break; }
        (f_mid > T(0) ? lo : hi) = mid;
    }
    T root = (lo + hi) / 2;
    if (iters_out) *iters_out = it;
    if (resid_out) *resid_out = std::fabs(spectral_fn_raw(root, g, N));
    return root;
}

} // namespace detail

/// Spectral function F(k) = cot(pi k) + cot(pi N k) + 1/(pi g k).
/// Throws pole_error when k is within opts.pole_guard*(1/N) of a multiple
/// of 1/N (the caller must shrink its bracket instead of trusting the value).
double spectral_fn(double k, const ModelConfig& cfg, const SolverOptions& opts = {});

/// dF/dk, same pole guard as spectral_fn. Strictly negative everywhere.
double spectral_fn_dk(double k, const ModelConfig& cfg, const SolverOptions& opts = {});

/// dF/dg at fixed k.
double spectral_fn_dg(double k, const ModelConfig& cfg);

/// Euclidean labeling s = n N + l with remainder in (-N/2, N/2].
LevelLabel label_from_s(int s, int N);

/// Inverse of label_from_s for normal levels.
int s_from_label(int n, int l, int N);

/// Label for the exceptional (flat) level k = n.
LevelLabel exceptional_label(int n);

/// Root bracket ((s-1)/N, s/N) for the s-th normal level.
std::pair<double, double> bracket_for(int s, int N);

/// g->infinity limit u/(N+1): u = s+n for l > 0, u = s+n-1 for l <= 0.
double strong_coupling_limit(int s, int N);

/// Indices n of the exceptional levels with momentum n <= k_max.
std::vector<int> exceptional_levels(double k_max);

/// Solve the s-th normal level of cfg. Postcondition: k inside the bracket,
/// and |F(k)| <= tol or final bracket width <= tol*(1/N).
MomentumLevel solve_level(const ModelConfig& cfg, int s, const SolverOptions& opts = {});

} // namespace winter
