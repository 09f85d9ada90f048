#include "winter/perturbation.hpp"

#include <cmath>
#include <string>

namespace winter {

namespace {

void check_order(int order, int max_order = 3) {
    if (order < 1 || order > max_order)
        throw domain_error("perturbation: order must be in [1, "
                           + std::to_string(max_order) + "]");
}

void check_level(int n, int l, int N) {
    if (N < 1) throw domain_error("perturbation: N must be >= 1");
    if (2 * l > N || 2 * l <= -N)
        throw domain_error("perturbation: l outside (-N/2, N/2]");
    if (l == 0 && n < 1)
        throw domain_error("perturbation: resonant level needs n >= 1");
    if (n * N + l < 1)
        throw domain_error("perturbation: level below the spectrum");
}

} // namespace

std::array<double, 3> ordinary_resonant_coeffs(int n, int N) {
    check_level(n, 0, N);
    return detail::ordinary_resonant_coeffs_t<double>(n, N);
}

std::array<double, 3> ordinary_nonresonant_coeffs(int n, int l, int N) {
    if (l == 0) throw domain_error("ordinary_nonresonant_coeffs: l must be nonzero");
    check_level(n, l, N);
    return detail::ordinary_nonresonant_coeffs_t<double>(n, l, N);
}

std::array<double, 3> ordinary_nonresonant_largeN_coeffs(int n, int l, int N) {
    if (l == 0) throw domain_error("ordinary_nonresonant_largeN_coeffs: l must be nonzero");
    check_level(n, l, N);
    const double nl = double(n) / l;
    const double c1 = -1.0 / N;
    const double c2 = nl + 1.0 / N;
    const double c3 = -nl * nl * N + double(n) * (n - 2 * l) / (double(l) * l)
                      + (pi * pi * n * n - nl - 1.0) / N;
    return {c1, c2, c3};
}

PerturbativeResult ordinary_momentum(int n, int l, int N, double g, int order,
                                     bool large_n) {
    check_order(order);
    check_level(n, l, N);
    if (!(g > 0.0)) throw domain_error("ordinary_momentum: g must be positive");
    PerturbativeResult res;
    res.order = order;
    res.scheme = Scheme::ordinary;
    res.xi = g * N;
    if (large_n) {
        if (l == 0) throw domain_error("ordinary_momentum: large_n form needs l != 0");
        auto c = ordinary_nonresonant_largeN_coeffs(n, l, N);
        double k = 1.0, gp = 1.0;
        for (int i = 0; i < order; ++i) { gp *= g; k += c[i] * gp; }
        res.k = (n + double(l) / N) * k;
    } else {
        res.k = detail::ordinary_momentum_t<double>(n, l, N, g, order);
    }
    return res;
}

PerturbativeResult resummed_momentum(int n, int l, int N, double g, int order) {
    check_order(order);
    check_level(n, l, N);
    if (!(g > 0.0)) throw domain_error("resummed_momentum: g must be positive");
    PerturbativeResult res;
    res.order = order;
    res.scheme = Scheme::resummed;
    res.xi = g * N;
    const double radius = singularity_radius_scale / (double(n) * N);
    if (l == 0) {
        // poles of the h_i at n*N*g = j, j = 1, 2, ...
        if (dist_to_integer(double(n) * res.xi) < 1e-6 / pi && g * n * N > 0.5)
            throw singularity_error("resummed_momentum: g on a singular coupling g_j");
        const double j = std::max(1.0, std::round(g * n * N));
        res.distance_to_singularity = std::fabs(g - j / (double(n) * N));
        res.near_singularity = *res.distance_to_singularity < radius;
        res.k = detail::resummed_resonant_momentum_t<double>(n, N, g, order);
    } else {
        if (order < 2)
            throw domain_error("resummed_momentum: the non-resonant series "
                               "begins at order 2");
        // single pole at n*xi = -l, on the physical axis only for l < 0
        if (std::fabs(double(n) * res.xi + l) < 1e-6 / pi)
            throw singularity_error("resummed_momentum: g on the l-branch pole");
        if (l < 0) {
            res.distance_to_singularity = std::fabs(g + double(l) / (double(n) * N));
            res.near_singularity = *res.distance_to_singularity < radius;
        }
        res.k = detail::resummed_nonresonant_momentum_t<double>(n, l, N, g, order);
    }
    return res;
}

std::vector<double> singular_couplings(int n, int N, double g_max) {
    if (n < 1 || N < 1) throw domain_error("singular_couplings: need n, N >= 1");
    std::vector<double> out;
    for (int j = 1; double(j) / (double(n) * N) <= g_max; ++j)
        out.push_back(double(j) / (double(n) * N));
    return out;
}

std::complex<double> infinite_volume_pole(int n, double g, int order) {
    if (n < 1) throw domain_error("infinite_volume_pole: n must be >= 1");
    check_order(order, 2);
    std::complex<double> k(1.0, 0.0);
    k += -g;                                                   // b1 = -1
    if (order >= 2) k += g * g * std::complex<double>(1.0, -pi * n);
    return double(n) * k;
}

double decay_width(int n, double g, WidthVariant variant) {
    if (n < 1) throw domain_error("decay_width: n must be >= 1");
    if (!(g > 0.0)) throw domain_error("decay_width: g must be positive");
    switch (variant) {
    case WidthVariant::resummed_leading: {
        const double x = 2.0 * pi * n * g;
        return n / pi * std::log1p(x * x);
    }
    case WidthVariant::lowest_order:
        return 4.0 * pi * double(n) * n * n * g * g;
    case WidthVariant::asymptotic:
        if (!(double(n) * g > 1.0))
            throw domain_error("decay_width: asymptotic form needs n*g > 1");
        return 2.0 / pi * n * std::log(double(n) * g);
    }
    throw domain_error("decay_width: unknown variant");
}

} // namespace winter
