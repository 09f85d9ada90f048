#include "winter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "winter/eigenfunctions.hpp"
#include "winter/optimize.hpp"
#include "winter/parallel.hpp"

namespace winter {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < count; ++i)
        g[i] = std::exp(la + (lb - la) * i / (count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

void check_range(double g_lo, double g_hi) {
    if (!(g_lo > 0.0) || !(g_hi > g_lo))
        throw domain_error("locator: coupling range must satisfy 0 < g_lo < g_hi");
}

} // namespace

double level_derivative_at(double k, double g, int N) {
    ModelConfig cfg{N, g};
    SolverOptions opts;
    const double fk = spectral_fn_dk(k, cfg, opts);
    const double fg = spectral_fn_dg(k, cfg);
    return -fg / fk;
}

double level_derivative(const ModelConfig& cfg, int s,
                        const SolverOptions& opts) {
    const MomentumLevel lvl = solve_level(cfg, s, opts);
    return level_derivative_at(lvl.k, cfg.g, cfg.N);
}

double level_second_derivative(const ModelConfig& cfg, int s,
                               const SolverOptions& opts) {
    const double g = cfg.g;
    const double h = std::max(1e-6, 1e-4 * g);
    if (!(g - h > 0.0))
        throw step_error("level_second_derivative: step h = "
                         + std::to_string(h) + " underflows the coupling g = "
                         + std::to_string(g));
    ModelConfig lo_cfg = cfg, hi_cfg = cfg;
    lo_cfg.g = g - h;
    hi_cfg.g = g + h;
    const double d_lo = level_derivative(lo_cfg, s, opts);
    const double d_hi = level_derivative(hi_cfg, s, opts);
    return (d_hi - d_lo) / (2.0 * h);
}

bool ScanTable::all_ok() const {
    for (const auto& row : status)
        for (const auto& cell : row)
            if (!cell.empty()) return false;
    return true;
}

std::vector<LevelLabel> interleaved_levels(int N, int s_min, int s_max) {
    if (N < 1) throw domain_error("interleaved_levels: N must be >= 1");
    if (s_min < 1 || s_max < s_min)
        throw domain_error("interleaved_levels: need 1 <= s_min <= s_max");
    std::vector<LevelLabel> out;
    for (int s = s_min; s <= s_max; ++s) {
        out.push_back(label_from_s(s, N));
        // the flat level k = n sits right above the normal level s = n N
        if (s % N == 0) out.push_back(exceptional_label(s / N));
    }
    return out;
}

ScanTable spacing_scan(const std::vector<double>& g_grid, int N, int s_min,
                       int s_max, bool with_second, const SolverOptions& opts) {
    if (g_grid.empty()) throw domain_error("spacing_scan: empty grid");
    for (std::size_t i = 0; i < g_grid.size(); ++i) {
        if (!(g_grid[i] > 0.0))
            throw domain_error("spacing_scan: couplings must be positive");
        if (i > 0 && !(g_grid[i] > g_grid[i - 1]))
            throw domain_error("spacing_scan: grid must be strictly increasing");
    }

    ScanTable t;
    t.g_grid = g_grid;
    t.levels = interleaved_levels(N, s_min, s_max);
    t.with_second = with_second;
    const std::size_t rows = t.levels.size();
    const std::size_t cols = g_grid.size();
    t.k.assign(rows, std::vector<double>(cols, quiet_nan));
    t.dk_dg.assign(rows, std::vector<double>(cols, quiet_nan));
    t.d2k_dg2.assign(rows, std::vector<double>(cols, quiet_nan));
    t.status.assign(rows, std::vector<std::string>(cols));

    parallel_for(rows * cols, [&](std::size_t idx) {
        const std::size_t i = idx / cols;
        const std::size_t j = idx % cols;
        const LevelLabel& lab = t.levels[i];
        const double g = g_grid[j];
        if (lab.kind == LevelKind::exceptional) {
            t.k[i][j] = double(lab.n);
            t.dk_dg[i][j] = 0.0;
            t.d2k_dg2[i][j] = with_second ? 0.0 : quiet_nan;
            return;
        }
        ModelConfig cfg{N, g};
        try {
            const MomentumLevel lvl = solve_level(cfg, *lab.s, opts);
            t.k[i][j] = lvl.k;
            t.dk_dg[i][j] = level_derivative_at(lvl.k, g, N);
            if (with_second)
                t.d2k_dg2[i][j] = level_second_derivative(cfg, *lab.s, opts);
        } catch (const numerics_error& e) {
            t.status[i][j] = e.what();
        }
    });

    if (rows > 1) {
        t.spacing.assign(rows - 1, std::vector<double>(cols, quiet_nan));
        for (std::size_t i = 0; i + 1 < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                t.spacing[i][j] = t.k[i + 1][j] - t.k[i][j];
    }
    return t;
}

std::vector<DoubletReport> find_quasi_degenerate(
    const std::vector<double>& g_grid, int N, int n, int j_max,
    const SolverOptions& opts) {
    if (n < 1) throw domain_error("find_quasi_degenerate: n must be >= 1");
    if (j_max < 0) throw domain_error("find_quasi_degenerate: j_max must be >= 0");
    if (n * N - j_max < 1)
        throw domain_error("find_quasi_degenerate: j_max reaches below the spectrum");
    if (g_grid.size() < 3 && j_max > 0)
        throw domain_error("find_quasi_degenerate: grid too small");

    std::vector<DoubletReport> out;
    // j = 0: the resonant level is exactly degenerate with the flat one at g=0.
    out.push_back(DoubletReport{0, 0.0, 0.0, 0.0, 0.0, true});

    for (int j = 1; j <= j_max; ++j) {
        const int s_lo = n * N - j;
        auto gap = [&](double g) {
            ModelConfig cfg{N, g};
            return solve_level(cfg, s_lo + 1, opts).k
                 - solve_level(cfg, s_lo, opts).k;
        };
        std::vector<double> vals(g_grid.size());
        for (std::size_t m = 0; m < g_grid.size(); ++m) vals[m] = gap(g_grid[m]);
        const std::size_t m =
            std::min_element(vals.begin(), vals.end()) - vals.begin();

        DoubletReport rep;
        rep.j = j;
        rep.predicted_g = double(j) / (double(n) * N);
        if (m == 0 || m + 1 == g_grid.size()) {
            rep.resolved = false;
            rep.g_min = g_grid[m];
            rep.spacing_min = vals[m];
        } else {
            const Optimum opt = golden_section_min(gap, g_grid[m - 1],
                                                   g_grid[m + 1], 1e-8);
            rep.g_min = opt.x;
            rep.spacing_min = opt.value;
        }
        rep.relative_offset =
            std::fabs(rep.g_min - rep.predicted_g) / rep.predicted_g;
        out.push_back(rep);
    }
    return out;
}

double resonance_locator_phase(int N, int s, double g_lo, double g_hi,
                               const SolverOptions& opts) {
    check_range(g_lo, g_hi);
    auto f = [&](double g) {
        return std::cos(phase_at_coupling(ModelConfig{N, g}, s, opts));
    };
    const std::vector<double> grid = log_grid(g_lo, g_hi, 257);
    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        if (prev == 0.0) return grid[i - 1];
        if (std::signbit(prev) != std::signbit(cur))
            return bisect_root(f, grid[i - 1], grid[i], 1e-10);
        prev = cur;
    }
    throw no_crossing_error("resonance_locator_phase: phase of level s="
                            + std::to_string(s)
                            + " never crosses -pi/2 (mod pi) in range");
}

PeakResult amplitude_peak_locator(int N, int s, double g_lo, double g_hi,
                                  const SolverOptions& opts) {
    check_range(g_lo, g_hi);
    auto f = [&](double g) {
        return amplitude_at_coupling(ModelConfig{N, g}, s, opts);
    };
    const std::vector<double> grid = log_grid(g_lo, g_hi, 257);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    const std::size_t m =
        std::max_element(vals.begin(), vals.end()) - vals.begin();
    if (m == 0 || m + 1 == grid.size())
        return PeakResult{grid[m], vals[m], true};
    const Optimum opt = golden_section_max(f, grid[m - 1], grid[m + 1], 1e-5);
    return PeakResult{opt.x, opt.value, false};
}

CrossingResult amplitude_crossing_locator(int N, int s_a, int s_b, double g_lo,
                                          double g_hi,
                                          const SolverOptions& opts) {
    check_range(g_lo, g_hi);
    if (s_a == s_b)
        throw domain_error("amplitude_crossing_locator: need two distinct levels");
    auto amp = [&](int s, double g) {
        return amplitude_at_coupling(ModelConfig{N, g}, s, opts);
    };
    auto diff = [&](double g) { return amp(s_a, g) - amp(s_b, g); };
    const std::vector<double> grid = log_grid(g_lo, g_hi, 257);
    double prev = diff(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = diff(grid[i]);
        if (std::signbit(prev) != std::signbit(cur) || cur == 0.0) {
            const double root = bisect_root(diff, grid[i - 1], grid[i], 1e-8);
            return CrossingResult{root, amp(s_a, root)};
        }
        prev = cur;
    }
    throw no_crossing_error(
        "amplitude_crossing_locator: amplitude curves do not cross in range");
}

} // namespace winter
