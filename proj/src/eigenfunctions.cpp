#include "winter/eigenfunctions.hpp"

#include <cmath>

namespace winter {

namespace {

bool near_integer(double k, long long& m) {
    m = llround(k);
    return std::fabs(k - double(m)) < integer_window;
}

/// sin(pi k)/sin(pi N k) with its finite integer-k limit; the building block
/// shared by the phase shift.
double inverse_kernel_ratio(double k, int N) {
    long long m;
    if (near_integer(k, m)) return double(parity(m * (N + 1))) / N;
    return sin_pi(k) / sin_pi(double(N) * k);
}

} // namespace

double dirichlet_kernel(double k, int N) {
    if (!(k > 0.0) || N < 1) throw domain_error("dirichlet_kernel: need k > 0, N >= 1");
    long long m;
    if (near_integer(k, m)) return double(N) * parity(m * (N + 1));
    return sin_pi(double(N) * k) / sin_pi(k);
}

double inside_amplitude(double k, int N) {
    return std::fabs(dirichlet_kernel(k, N));
}

double phase_shift(double k, int N) {
    if (!(k > 0.0) || N < 1) throw domain_error("phase_shift: need k > 0, N >= 1");
    const int M = N + 1;
    double r = inverse_kernel_ratio(k, N);
    if (r == 0.0 || std::isinf(r)) {
        // exactly on a kernel zero: take the upper one-sided limit
        double sgn = (sin_pi(k) >= 0.0) ? 1.0 : -1.0;
        return std::atan2(sgn * sin_pi(double(M) * k), -sgn * cos_pi(double(M) * k));
    }
    return std::atan2(r * sin_pi(double(M) * k), -r * cos_pi(double(M) * k));
}

double reduced_phase(double k, int N) {
    if (!(k > 0.0) || N < 1) throw domain_error("reduced_phase: need k > 0, N >= 1");
    return pi * std::remainder(-double(N + 1) * k, 1.0);
}

double normalization_old(double k, int N) {
    const double sk = sin_pi(k);
    const double sNk = sin_pi(double(N) * k);
    const double inner = pi / 2 - sin_pi(2.0 * k) / (4.0 * k);
    const double outer = pi * N / 2 - sin_pi(2.0 * double(N) * k) / (4.0 * k);
    return 1.0 / std::sqrt(sNk * sNk * inner + sk * sk * outer);
}

double normalization_new(double k, int N) {
    const double D = dirichlet_kernel(k, N);
    const double inner = pi / 2 - sin_pi(2.0 * k) / (4.0 * k);
    const double outer = pi * N / 2 - sin_pi(2.0 * double(N) * k) / (4.0 * k);
    return 1.0 / std::sqrt(D * D * inner + outer);
}

EigenfunctionRecord make_eigenfunction(const ModelConfig& cfg, int s, EigenForm form,
                                       const SolverOptions& opts) {
    MomentumLevel lev = solve_level(cfg, s, opts);
    EigenfunctionRecord rec;
    rec.cfg = cfg;
    rec.label = lev.label;
    rec.k = lev.k;
    rec.form = form;
    rec.normalization = (form == EigenForm::old_form)
                            ? normalization_old(lev.k, cfg.N)
                            : normalization_new(lev.k, cfg.N);
    return rec;
}

EigenfunctionRecord make_eigenfunction_at(const ModelConfig& cfg, double k,
                                          EigenForm form) {
    cfg.validate();
    if (!(k > 0.0)) throw domain_error("make_eigenfunction_at: k must be positive");
    EigenfunctionRecord rec;
    rec.cfg = cfg;
    rec.label.n = int(llround(k));
    rec.label.kind = LevelKind::nonresonant;
    rec.k = k;
    rec.form = form;
    rec.normalization = (form == EigenForm::old_form) ? normalization_old(k, cfg.N)
                                                      : normalization_new(k, cfg.N);
    return rec;
}

EigenfunctionRecord make_exceptional_eigenfunction(const ModelConfig& cfg, int n) {
    cfg.validate();
    EigenfunctionRecord rec;
    rec.cfg = cfg;
    rec.label = exceptional_label(n);
    rec.k = double(n);
    rec.form = EigenForm::new_form;
    rec.normalization = std::sqrt(2.0 / cfg.length());
    return rec;
}

double eval(const EigenfunctionRecord& rec, double x) {
    const double L = rec.cfg.length();
    if (x < 0.0 || x > L) throw domain_error("eval: x outside [0, L]");
    const double k = rec.k;
    if (rec.label.kind == LevelKind::exceptional)
        return rec.normalization * std::sin(k * x);
    if (rec.form == EigenForm::old_form) {
        if (x <= pi)
            return rec.normalization * sin_pi(double(rec.cfg.N) * k) * std::sin(k * x);
        return rec.normalization * sin_pi(k) * std::sin(k * (L - x));
    }
    if (x <= pi)
        return rec.normalization * inside_amplitude(k, rec.cfg.N) * std::sin(k * x);
    return rec.normalization * std::sin(k * x + phase_shift(k, rec.cfg.N));
}

double eval_derivative(const EigenfunctionRecord& rec, double x) {
    const double L = rec.cfg.length();
    if (x < 0.0 || x > L) throw domain_error("eval_derivative: x outside [0, L]");
    const double k = rec.k;
    if (rec.label.kind == LevelKind::exceptional)
        return rec.normalization * k * std::cos(k * x);
    if (rec.form == EigenForm::old_form) {
        if (x <= pi)
            return rec.normalization * sin_pi(double(rec.cfg.N) * k) * k * std::cos(k * x);
        return -rec.normalization * sin_pi(k) * k * std::cos(k * (L - x));
    }
    if (x <= pi)
        return rec.normalization * inside_amplitude(k, rec.cfg.N) * k * std::cos(k * x);
    return rec.normalization * k * std::cos(k * x + phase_shift(k, rec.cfg.N));
}

double derivative_jump(const EigenfunctionRecord& rec) {
    const double k = rec.k;
    const int N = rec.cfg.N;
    if (rec.label.kind == LevelKind::exceptional) return 0.0;
    if (rec.form == EigenForm::old_form)
        return -rec.normalization * k
               * (sin_pi(k) * cos_pi(double(N) * k) + sin_pi(double(N) * k) * cos_pi(k));
    const double right = k * std::cos(k * pi + phase_shift(k, N));
    const double left = inside_amplitude(k, N) * k * cos_pi(k);
    return rec.normalization * (right - left);
}

double barrier_value(const EigenfunctionRecord& rec) {
    return eval(rec, pi);
}

double amplitude_at_coupling(const ModelConfig& cfg, int s, const SolverOptions& opts) {
    return inside_amplitude(solve_level(cfg, s, opts).k, cfg.N);
}

double phase_at_coupling(const ModelConfig& cfg, int s, const SolverOptions& opts) {
    return phase_shift(solve_level(cfg, s, opts).k, cfg.N);
}

} // namespace winter
