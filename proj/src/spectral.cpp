#include "winter/spectral.hpp"

#include <cmath>

namespace winter {

namespace {

void check_pole_distance(double k, int N, double guard) {
    // poles of F sit at the multiples of 1/N (integers included)
    double d = dist_to_integer(k * N) / N;
    if (d < guard / N)
        throw pole_error("spectral_fn: k=" + std::to_string(k)
                         + " within guard distance of a multiple of 1/"
                         + std::to_string(N));
}

} // namespace

double spectral_fn(double k, const ModelConfig& cfg, const SolverOptions& opts) {
    cfg.validate();
    if (!(k > 0.0)) throw domain_error("spectral_fn: k must be positive");
    check_pole_distance(k, cfg.N, opts.pole_guard);
    return detail::spectral_fn_raw(k, cfg.g, cfg.N);
}

double spectral_fn_dk(double k, const ModelConfig& cfg, const SolverOptions& opts) {
    cfg.validate();
    if (!(k > 0.0)) throw domain_error("spectral_fn_dk: k must be positive");
    check_pole_distance(k, cfg.N, opts.pole_guard);
    const double s1 = sin_pi(k);
    const double sN = sin_pi(double(cfg.N) * k);
    return -pi / (s1 * s1) - pi * cfg.N / (sN * sN) - 1.0 / (pi * cfg.g * k * k);
}

double spectral_fn_dg(double k, const ModelConfig& cfg) {
    cfg.validate();
    if (!(k > 0.0)) throw domain_error("spectral_fn_dg: k must be positive");
    return -1.0 / (pi * cfg.g * cfg.g * k);
}

LevelLabel label_from_s(int s, int N) {
    if (s < 1) throw domain_error("label_from_s: s must be >= 1");
    if (N < 1) throw domain_error("label_from_s: N must be >= 1");
    int n = s / N;
    int l = s - n * N;
    if (2 * l > N) { ++n; l -= N; }   // force remainder into (-N/2, N/2]
    LevelLabel lab;
    lab.s = s;
    lab.n = n;
    lab.l = l;
    lab.kind = (l == 0) ? LevelKind::resonant : LevelKind::nonresonant;
    return lab;
}

int s_from_label(int n, int l, int N) {
    if (2 * l > N || 2 * l <= -N)
        throw domain_error("s_from_label: l outside (-N/2, N/2]");
    int s = n * N + l;
    if (s < 1) throw domain_error("s_from_label: label maps to s < 1");
    return s;
}

LevelLabel exceptional_label(int n) {
    if (n < 1) throw domain_error("exceptional_label: n must be >= 1");
    LevelLabel lab;
    lab.n = n;
    lab.l = 0;
    lab.kind = LevelKind::exceptional;
    return lab;
}

std::pair<double, double> bracket_for(int s, int N) {
    if (s < 1) throw domain_error("bracket_for: s must be >= 1");
    if (N < 1) throw domain_error("bracket_for: N must be >= 1");
    return {double(s - 1) / N, double(s) / N};
}

double strong_coupling_limit(int s, int N) {
    LevelLabel lab = label_from_s(s, N);
    int u = (lab.l > 0) ? s + lab.n : s + lab.n - 1;
    return double(u) / (N + 1);
}

std::vector<int> exceptional_levels(double k_max) {
    std::vector<int> out;
    for (int n = 1; n <= int(k_max + 1e-12); ++n) out.push_back(n);
    return out;
}

MomentumLevel solve_level(const ModelConfig& cfg, int s, const SolverOptions& opts) {
    cfg.validate();
    MomentumLevel lev;
    lev.label = label_from_s(s, cfg.N);
    lev.g = cfg.g;
    int iters = 0;
    double resid = 0.0;
    lev.k = detail::solve_bisect<double>(cfg.N, cfg.g, s, opts.tol,
                                         opts.tol / cfg.N, opts.endpoint_guard,
                                         opts.max_iter, &iters, &resid);
    lev.iterations = iters;
    lev.residual = resid;
    const auto [lo, hi] = bracket_for(s, cfg.N);
    if (!(lev.k > lo && lev.k < hi) || iters >= opts.max_iter)
        throw convergence_error("solve_level: no convergence for s=" + std::to_string(s)
                                + ", N=" + std::to_string(cfg.N)
                                + ", g=" + std::to_string(cfg.g));
    return lev;
}

} // namespace winter
