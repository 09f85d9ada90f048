#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "winter/model.hpp"

namespace winter {

enum class Scheme { ordinary, resummed };

/// Result of a truncated perturbative evaluation of one momentum level.
struct PerturbativeResult {
    double k = 0.0;
    int order = 0;
    Scheme scheme = Scheme::ordinary;
    double xi = 0.0;                              ///< effective coupling g*N
    std::optional<double> distance_to_singularity; ///< resummed only: min_j |g - g_j|
    bool near_singularity = false;                ///< within the exclusion radius
};

/// Exclusion radius around each singular coupling g_j = j/(nN); results
/// inside it are returned but flagged.
inline constexpr double singularity_radius_scale = 1e-3;

namespace detail {

/// Ordinary expansion coefficients of the resonant level k_n = n(1 + sum c_i g^i).
template <class T>
std::array<T, 3> ordinary_resonant_coeffs_t(int n, int N) {
    const T q = 1 + T(1) / T(N);
    const T nu2 = pi_v<T> * pi_v<T> * T(n) * T(n);
    return {-q, q * q, q * q * q * (nu2 / 3 * T(N) - 1)};
}

/// Ordinary coefficients of the non-resonant level k = (n + l/N)(1 + sum c_i g^i).
template <class T>
std::array<T, 3> ordinary_nonresonant_coeffs_t(int n, int l, int N) {
    const T invN = T(1) / T(N);
    const T k0 = T(n) + T(l) * invN;
    const T ct = cot_pi(T(l) * invN);
    const T cs2 = 1 + ct * ct;                    // csc^2(pi l / N)
    const T c1 = -invN;
    const T c2 = pi_v<T> * invN * k0 * ct + invN * invN;
    const T c3 = -pi_v<T> * pi_v<T> * invN * (1 - invN) * k0 * k0 * cs2
                 - 3 * pi_v<T> * invN * invN * k0 * ct
                 + 4 * pi_v<T> * pi_v<T> / 3 * invN * k0 * k0
                 - invN * invN * invN;
    return {c1, c2, c3};
}

/// Resummed resonant functions h_i(xi), nu = pi n.
template <class T>
std::array<T, 3> resummed_resonant_h_t(int n, T xi) {
    const T nu = pi_v<T> * T(n);
    const T c = cot_pi(T(n) * xi);
    const T h1 = T(-1);
    const T h2 = -nu * c + 1;
    const T h3 = nu * nu * nu * xi * c * c * c - nu * nu * (1 + xi) * c * c
                 + nu * (nu * nu * xi + 3) * c + nu * nu * (T(1) / 3 - xi) - 1;
    return {h1, h2, h3};
}

/// Resummed non-resonant functions; the series starts at order 2.
template <class T>
std::array<T, 2> resummed_nonresonant_h_t(int n, int l, T xi) {
    const T d = T(l) + T(n) * xi;
    const T h2 = T(n) / d - 1 / xi;
    const T h3 = T(l) * T(n) * T(n) / (d * d * d) - T(l) * T(n) / (d * d)
                 - T(n) / d + 1 / xi;
    return {h2, h3};
}

template <class T>
T ordinary_momentum_t(int n, int l, int N, T g, int order) {
    T k;
    if (l == 0) {
        auto c = ordinary_resonant_coeffs_t<T>(n, N);
        k = 1;
        T gp = 1;
        for (int i = 0; i < order; ++i) { gp *= g; k += c[i] * gp; }
        k *= T(n);
    } else {
        auto c = ordinary_nonresonant_coeffs_t<T>(n, l, N);
        k = 1;
        T gp = 1;
        for (int i = 0; i < order; ++i) { gp *= g; k += c[i] * gp; }
        k *= T(n) + T(l) / T(N);
    }
    return k;
}

template <class T>
T resummed_resonant_momentum_t(int n, int N, T g, int order) {
    auto h = resummed_resonant_h_t<T>(n, g * T(N));
    T k = 1, gp = 1;
    for (int i = 0; i < order; ++i) { gp *= g; k += h[i] * gp; }
    return T(n) * k;
}

template <class T>
T resummed_nonresonant_momentum_t(int n, int l, int N, T g, int order) {
    auto h = resummed_nonresonant_h_t<T>(n, l, g * T(N));
    T k = 1, gp = g;
    for (int i = 2; i <= order; ++i) { gp *= g; k += h[i - 2] * gp; }
    return (T(n) + T(l) / T(N)) * k;
}

} // namespace detail

/// Ordinary resonant coefficients c^(1..3) for level n.
std::array<double, 3> ordinary_resonant_coeffs(int n, int N);

/// Ordinary non-resonant coefficients c^(1..3), exact in N (l != 0).
std::array<double, 3> ordinary_nonresonant_coeffs(int n, int l, int N);

/// Truncated large-N form of the non-resonant coefficients, including the
/// O(1/N) terms: c1 = -1/N, c2 = n/l + 1/N,
/// c3 = -(n/l)^2 N + n(n-2l)/l^2 + (pi^2 n^2 - n/l - 1)/N.
std::array<double, 3> ordinary_nonresonant_largeN_coeffs(int n, int l, int N);

/// Ordinary perturbative momentum for level (n, l) at order 1..3.
/// With large_n = true the truncated large-N coefficients are used (l != 0).
PerturbativeResult ordinary_momentum(int n, int l, int N, double g, int order,
                                     bool large_n = false);

/// Resummed momentum at order 1..3 (resonant) or 2..3 (l != 0; the
/// non-resonant series starts at order 2, below that is a domain_error).
/// Throws singularity_error when the evaluation sits on top of a series
/// pole (n N g within 1e-6/pi of an integer for l = 0, or n xi + l at
/// machine scale for l != 0); results within the exclusion radius are
/// flagged near_singularity.
PerturbativeResult resummed_momentum(int n, int l, int N, double g, int order);

/// Singular couplings g_j = j/(nN) with g_j <= g_max.
std::vector<double> singular_couplings(int n, int N, double g_max);

/// Complex resonance pole of the infinite-volume model,
/// chi_n = n(1 + g b1 + g^2 b2), b1 = -1, b2 = 1 - i pi n; order 1 or 2.
std::complex<double> infinite_volume_pole(int n, double g, int order = 2);

enum class WidthVariant {
    resummed_leading,   ///< (n/pi) log(1 + (2 pi n g)^2)
    lowest_order,       ///< 4 pi n^3 g^2
    asymptotic          ///< (2/pi) n log(n g), for n g >> 1
};

/// Resonance width of the infinite-volume model in the chosen approximation.
double decay_width(int n, double g, WidthVariant variant);

} // namespace winter
