#pragma once

#include <cmath>
#include <utility>

#include "winter/model.hpp"

namespace winter {

struct Optimum {
    double x = 0.0;
    double value = 0.0;
};

/// Maximum of a unimodal f on [a, b] by golden-section search; stops when the
/// bracket width drops below xtol.
template <class F>
Optimum golden_section_max(F&& f, double a, double b, double xtol,
                           int max_iter = 200) {
    if (!(a < b)) throw domain_error("golden_section_max: empty interval");
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && b - a > xtol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    const double x = (a + b) / 2;
    return {x, f(x)};
}

template <class F>
Optimum golden_section_min(F&& f, double a, double b, double xtol,
                           int max_iter = 200) {
    auto neg = [&f](double x) { return -f(x); };
    Optimum m = golden_section_max(neg, a, b, xtol, max_iter);
    return {m.x, -m.value};
}

/// Root of f on [a, b] by bisection; requires a sign change across the
/// interval (endpoints included). Throws bracket_error otherwise.
template <class F>
double bisect_root(F&& f, double a, double b, double xtol, int max_iter = 200) {
    if (!(a < b)) throw domain_error("bisect_root: empty interval");
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw bracket_error("bisect_root: no sign change over the interval");
    for (int it = 0; it < max_iter && b - a > xtol; ++it) {
        double mid = (a + b) / 2;
        if (mid <= a || mid >= b) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(fa)) {
            a = mid; fa = fm;
        } else {
            b = mid;
        }
    }
    return (a + b) / 2;
}

} // namespace winter
