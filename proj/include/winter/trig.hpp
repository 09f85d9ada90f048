#pragma once

#include <cmath>

namespace winter {

/// Trigonometric helpers for arguments given in units of pi.
/// sin(pi*u) etc. computed after exact-range reduction of u, so that large
/// arguments (u ~ N*k with N in the hundreds) keep full relative accuracy
/// near the zeros and poles, where the spectral function lives.

template <class T>
constexpr T pi_v = T(3.141592653589793238462643383279502884L);

/// -1 raised to the integer m.
inline int parity(long long m) { return (m % 2 == 0) ? 1 : -1; }

/// sin(pi*u), reduced via u = m + w with m = nearest integer, |w| <= 1/2.
template <class T>
T sin_pi(T u) {
    T w = std::remainder(u, T(2));      // in (-1, 1], period 2 handled exactly
    if (w > T(0.5)) w = T(1) - w;
    else if (w < T(-0.5)) w = T(-1) - w;
    return std::sin(pi_v<T> * w);
}

/// cos(pi*u) with the same reduction scheme.
template <class T>
T cos_pi(T u) {
    T w = std::remainder(u, T(2));
    int sign = 1;
    if (w > T(0.5)) { w = T(1) - w; sign = -1; }
    else if (w < T(-0.5)) { w = T(-1) - w; sign = -1; }
    return sign * std::cos(pi_v<T> * w);
}

/// cot(pi*u); diverges at integer u, caller guards the poles.
template <class T>
T cot_pi(T u) {
    T w = std::remainder(u, T(1));      // cot has period 1
    return std::cos(pi_v<T> * w) / std::sin(pi_v<T> * w);
}

/// Distance from u to the nearest integer.
template <class T>
T dist_to_integer(T u) {
    return std::fabs(std::remainder(u, T(1)));
}

} // namespace winter
