#include "winter/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <utility>

#include "json.hpp"

#include "winter/analysis.hpp"
#include "winter/eigenfunctions.hpp"
#include "winter/parallel.hpp"
#include "winter/perturbation.hpp"
#include "winter/spectral.hpp"

namespace winter {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> levels_columns = {
    "s", "n", "l", "kind", "g", "k", "dk_dg", "d2k_dg2",
    "A", "delta", "scheme", "status"};
const std::vector<std::string> momentum_columns = {
    "k", "dirichlet", "amplitude", "amp_numerator", "amp_denominator_inv",
    "phase", "status"};
const std::vector<std::string> eigenfunction_columns = {
    "s", "n", "l", "kind", "g", "k", "x", "psi", "status"};
const std::vector<std::string> pairs_columns = {
    "s_lo", "s_hi", "g", "k_lo", "k_hi", "spacing", "status"};
const std::vector<std::string> doublets_columns = {
    "j", "s_lo", "s_hi", "predicted_g", "g_min", "spacing_min",
    "relative_offset", "status"};

const std::map<std::string, Command> command_names = {
    {"spectrum", Command::spectrum},
    {"scan", Command::scan},
    {"eigenfunction", Command::eigenfunction},
    {"observables", Command::observables},
    {"perturbation", Command::perturbation},
    {"doublets", Command::doublets},
    {"figure", Command::figure},
};
const std::map<std::string, GridSpacing> spacing_names = {
    {"linear", GridSpacing::linear},
    {"log", GridSpacing::log},
};
const std::map<std::string, OutputFormat> format_names = {
    {"csv", OutputFormat::csv},
    {"json", OutputFormat::json},
};
const std::map<std::string, RunScheme> scheme_names = {
    {"exact", RunScheme::exact},
    {"ordinary", RunScheme::ordinary},
    {"ordinary_large_n", RunScheme::ordinary_large_n},
    {"resummed", RunScheme::resummed},
    {"free_limit", RunScheme::free_limit},
    {"strong_limit", RunScheme::strong_limit},
};

template <class T>
T parse_enum(const std::map<std::string, T>& names, const std::string& text,
             const char* what) {
    auto it = names.find(text);
    if (it == names.end())
        throw config_error(std::string(what) + ": unknown value '" + text + "'");
    return it->second;
}

std::string kind_name(LevelKind k) {
    switch (k) {
    case LevelKind::exceptional: return "exceptional";
    case LevelKind::resonant: return "resonant";
    case LevelKind::nonresonant: return "nonresonant";
    }
    return {};
}

Cell num(double v) {
    if (!std::isfinite(v)) return std::monostate{};
    return v;
}

Cell integer(long long v) { return v; }

/// Momentum-sorted key: normal level s maps to 2s, flat level n to 2nN+1,
/// which slots each flat right above the normal level s = nN.
long long order_key(const LevelLabel& lab, int N) {
    return lab.s ? 2LL * *lab.s : 2LL * lab.n * N + 1;
}

std::vector<LevelLabel> resolved_levels(const RunConfig& cfg) {
    const int N = cfg.model.N;
    std::vector<LevelLabel> out;
    if (cfg.levels.k_max) {
        const int s_max = int(std::floor(*cfg.levels.k_max * N + 1e-9));
        for (int s = 1; s <= s_max; ++s) {
            out.push_back(label_from_s(s, N));
            if (s % N == 0) out.push_back(exceptional_label(s / N));
        }
        return out;
    }
    for (int s : cfg.levels.s) out.push_back(label_from_s(s, N));
    for (auto [n, l] : cfg.levels.nl)
        out.push_back(label_from_s(s_from_label(n, l, N), N));
    for (int n : cfg.levels.flats) {
        if (n < 1) throw config_error("levels: flat index must be >= 1");
        out.push_back(exceptional_label(n));
    }
    std::sort(out.begin(), out.end(),
              [N](const LevelLabel& a, const LevelLabel& b) {
                  return order_key(a, N) < order_key(b, N);
              });
    out.erase(std::unique(out.begin(), out.end(),
                          [N](const LevelLabel& a, const LevelLabel& b) {
                              return order_key(a, N) == order_key(b, N);
                          }),
              out.end());
    return out;
}

/// Normal-level selection of a scan must form a contiguous run of s values.
std::pair<int, int> scan_range(const RunConfig& cfg) {
    const int N = cfg.model.N;
    std::vector<int> ss;
    if (cfg.levels.k_max) {
        const int s_max = int(std::floor(*cfg.levels.k_max * N + 1e-9));
        for (int s = 1; s <= s_max; ++s) ss.push_back(s);
    } else {
        ss = cfg.levels.s;
        for (auto [n, l] : cfg.levels.nl) ss.push_back(s_from_label(n, l, N));
    }
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    if (ss.empty()) throw config_error("scan: no levels selected");
    if (ss.front() < 1) throw config_error("scan: level indices must be >= 1");
    if (ss.back() - ss.front() + 1 != int(ss.size()))
        throw config_error("scan: level selection must be contiguous in s");
    return {ss.front(), ss.back()};
}

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions opts;
    opts.tol = cfg.tol;
    return opts;
}

void check_grid(const std::optional<GridSpec>& grid, const char* name,
                bool positive_min) {
    if (!grid) throw config_error(std::string(name) + " grid required");
    if (grid->count < 2)
        throw config_error(std::string(name) + " grid: count must be >= 2");
    if (positive_min && !(grid->min > 0.0))
        throw config_error(std::string(name) + " grid: min must be > 0");
    if (!positive_min && !(grid->min >= 0.0))
        throw config_error(std::string(name) + " grid: min must be >= 0");
    if (!(grid->max > grid->min))
        throw config_error(std::string(name) + " grid: max must exceed min");
    if (grid->spacing == GridSpacing::log && !(grid->min > 0.0))
        throw config_error(std::string(name) + " grid: log spacing needs min > 0");
}

std::vector<RunScheme> normalized_schemes(const RunConfig& cfg) {
    std::vector<RunScheme> s = cfg.schemes;
    if (s.empty()) s.push_back(RunScheme::exact);
    if (cfg.large_n)
        for (auto& x : s)
            if (x == RunScheme::ordinary) x = RunScheme::ordinary_large_n;
    std::sort(s.begin(), s.end(),
              [](RunScheme a, RunScheme b) { return int(a) < int(b); });
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<Cell> blank_level_row() {
    return std::vector<Cell>(levels_columns.size(), std::monostate{});
}

// column slots of the levels schema
enum {
    col_s, col_n, col_l, col_kind, col_g, col_k, col_dk, col_d2k,
    col_A, col_delta, col_scheme, col_status
};

void fill_label(std::vector<Cell>& row, const LevelLabel& lab) {
    if (lab.s) row[col_s] = integer(*lab.s);
    row[col_n] = integer(lab.n);
    if (lab.kind != LevelKind::exceptional) row[col_l] = integer(lab.l);
    row[col_kind] = kind_name(lab.kind);
}

void append_asymptote_rows(Document& doc, const LevelLabel& lab, int N,
                           const std::vector<double>& grid) {
    const double ends[2] = {grid.front(), grid.back()};
    for (double g : ends) {
        auto row = blank_level_row();
        fill_label(row, lab);
        row[col_g] = num(g);
        row[col_k] = num(lab.free_momentum(N));
        row[col_scheme] = to_string(RunScheme::free_limit);
        doc.rows.push_back(std::move(row));
    }
    const double strong =
        lab.s ? strong_coupling_limit(*lab.s, N) : double(lab.n);
    for (double g : ends) {
        auto row = blank_level_row();
        fill_label(row, lab);
        row[col_g] = num(g);
        row[col_k] = num(strong);
        row[col_scheme] = to_string(RunScheme::strong_limit);
        doc.rows.push_back(std::move(row));
    }
}

void append_marker_rows(Document& doc, const RunConfig& cfg,
                        const std::vector<double>& grid) {
    if (!cfg.markers) return;
    const int n = cfg.markers->n;
    const int N = cfg.model.N;
    const long long j_max =
        (long long)std::floor(grid.back() * double(n) * N + 1e-9);
    for (long long j = 1; j <= j_max; ++j) {
        const double gj = double(j) / (double(n) * N);
        if (gj < grid.front()) continue;
        auto row = blank_level_row();
        row[col_n] = integer(n);
        row[col_kind] = std::string("marker");
        row[col_g] = num(gj);
        row[col_scheme] = std::string("singularity");
        doc.rows.push_back(std::move(row));
    }
}

Document run_spectrum(const RunConfig& cfg) {
    Document doc{"winter.levels.v1", levels_columns, {}, false};
    const int N = cfg.model.N;
    const SolverOptions opts = solver_options(cfg);
    for (const LevelLabel& lab : resolved_levels(cfg)) {
        auto row = blank_level_row();
        fill_label(row, lab);
        row[col_g] = num(cfg.model.g);
        row[col_scheme] = to_string(RunScheme::exact);
        if (lab.kind == LevelKind::exceptional) {
            row[col_k] = num(double(lab.n));
            row[col_dk] = num(0.0);
        } else {
            try {
                const MomentumLevel lvl = solve_level(cfg.model, *lab.s, opts);
                row[col_k] = num(lvl.k);
                row[col_dk] = num(level_derivative_at(lvl.k, cfg.model.g, N));
                row[col_A] = num(inside_amplitude(lvl.k, N));
                row[col_delta] = num(phase_shift(lvl.k, N));
            } catch (const numerics_error& e) {
                row[col_status] = std::string(e.what());
                doc.any_hard_failure = true;
            }
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

Document run_scan(const RunConfig& cfg) {
    Document doc{"winter.levels.v1", levels_columns, {}, false};
    const int N = cfg.model.N;
    const auto [s_min, s_max] = scan_range(cfg);
    const std::vector<double> grid = cfg.g_grid->points();
    const ScanTable t = spacing_scan(grid, N, s_min, s_max, cfg.with_second,
                                     solver_options(cfg));
    for (std::size_t i = 0; i < t.levels.size(); ++i) {
        const LevelLabel& lab = t.levels[i];
        for (std::size_t j = 0; j < grid.size(); ++j) {
            auto row = blank_level_row();
            fill_label(row, lab);
            row[col_g] = num(grid[j]);
            row[col_scheme] = to_string(RunScheme::exact);
            row[col_k] = num(t.k[i][j]);
            row[col_dk] = num(t.dk_dg[i][j]);
            if (cfg.with_second) row[col_d2k] = num(t.d2k_dg2[i][j]);
            if (lab.kind != LevelKind::exceptional &&
                std::isfinite(t.k[i][j])) {
                row[col_A] = num(inside_amplitude(t.k[i][j], N));
                row[col_delta] = num(phase_shift(t.k[i][j], N));
            }
            if (!t.status[i][j].empty()) {
                row[col_status] = t.status[i][j];
                doc.any_hard_failure = true;
            }
            doc.rows.push_back(std::move(row));
        }
        if (cfg.with_asymptotes) append_asymptote_rows(doc, lab, N, grid);
    }
    append_marker_rows(doc, cfg, grid);
    return doc;
}

Document run_observables(const RunConfig& cfg) {
    Document doc{"winter.levels.v1", levels_columns, {}, false};
    const int N = cfg.model.N;
    const SolverOptions opts = solver_options(cfg);
    const std::vector<double> grid = cfg.g_grid->points();
    const std::vector<LevelLabel> labels = resolved_levels(cfg);

    struct ObsCell {
        double k = quiet_nan, dk = quiet_nan, A = quiet_nan,
               delta = quiet_nan;
        std::string status;
    };
    std::vector<ObsCell> cells(labels.size() * grid.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        const LevelLabel& lab = labels[idx / grid.size()];
        const double g = grid[idx % grid.size()];
        ObsCell& c = cells[idx];
        if (lab.kind == LevelKind::exceptional) {
            c.k = double(lab.n);
            c.dk = 0.0;
            return;
        }
        try {
            const MomentumLevel lvl = solve_level(ModelConfig{N, g}, *lab.s, opts);
            c.k = lvl.k;
            c.dk = level_derivative_at(lvl.k, g, N);
            c.A = inside_amplitude(lvl.k, N);
            c.delta = phase_shift(lvl.k, N);
        } catch (const numerics_error& e) {
            c.status = e.what();
        }
    });

    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const ObsCell& c = cells[i * grid.size() + j];
            auto row = blank_level_row();
            fill_label(row, labels[i]);
            row[col_g] = num(grid[j]);
            row[col_scheme] = to_string(RunScheme::exact);
            row[col_k] = num(c.k);
            row[col_dk] = num(c.dk);
            row[col_A] = num(c.A);
            row[col_delta] = num(c.delta);
            if (!c.status.empty()) {
                row[col_status] = c.status;
                doc.any_hard_failure = true;
            }
            doc.rows.push_back(std::move(row));
        }
    }
    append_marker_rows(doc, cfg, grid);
    return doc;
}

Document run_perturbation(const RunConfig& cfg) {
    Document doc{"winter.levels.v1", levels_columns, {}, false};
    const int N = cfg.model.N;
    const SolverOptions opts = solver_options(cfg);
    const std::vector<double> grid = cfg.g_grid->points();
    const std::vector<LevelLabel> labels = resolved_levels(cfg);
    const std::vector<RunScheme> schemes = normalized_schemes(cfg);

    struct PtCell {
        double k = quiet_nan;
        std::string status;
        bool hard = false;
    };
    // flat levels get exact rows only; normal levels one block per scheme
    const std::size_t stride = schemes.size() * grid.size();
    std::vector<PtCell> cells(labels.size() * stride);
    parallel_for(cells.size(), [&](std::size_t idx) {
        const LevelLabel& lab = labels[idx / stride];
        const std::size_t rem = idx % stride;
        const RunScheme scheme = schemes[rem / grid.size()];
        const double g = grid[rem % grid.size()];
        PtCell& c = cells[idx];
        if (lab.kind == LevelKind::exceptional) {
            if (scheme == RunScheme::exact) c.k = double(lab.n);
            return;
        }
        try {
            switch (scheme) {
            case RunScheme::exact:
                c.k = solve_level(ModelConfig{N, g}, *lab.s, opts).k;
                break;
            case RunScheme::ordinary:
                c.k = ordinary_momentum(lab.n, lab.l, N, g, cfg.order, false).k;
                break;
            case RunScheme::ordinary_large_n:
                c.k = ordinary_momentum(lab.n, lab.l, N, g, cfg.order, true).k;
                break;
            case RunScheme::resummed: {
                const PerturbativeResult r =
                    resummed_momentum(lab.n, lab.l, N, g, cfg.order);
                c.k = r.k;
                if (r.near_singularity) c.status = "near_singularity";
                break;
            }
            default:
                c.status = "scheme not computable";
                c.hard = true;
            }
        } catch (const numerics_error& e) {
            c.status = e.what();
            c.hard = true;
        }
    });

    for (std::size_t i = 0; i < labels.size(); ++i) {
        const LevelLabel& lab = labels[i];
        for (std::size_t si = 0; si < schemes.size(); ++si) {
            if (lab.kind == LevelKind::exceptional &&
                schemes[si] != RunScheme::exact)
                continue;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const PtCell& c = cells[i * stride + si * grid.size() + j];
                auto row = blank_level_row();
                fill_label(row, lab);
                row[col_g] = num(grid[j]);
                row[col_scheme] = to_string(schemes[si]);
                row[col_k] = num(c.k);
                if (!c.status.empty()) row[col_status] = c.status;
                if (c.hard) doc.any_hard_failure = true;
                doc.rows.push_back(std::move(row));
            }
        }
    }
    append_marker_rows(doc, cfg, grid);
    return doc;
}

Document run_eigenfunction(const RunConfig& cfg) {
    Document doc{"winter.eigenfunction.v1", eigenfunction_columns, {}, false};
    const SolverOptions opts = solver_options(cfg);
    const std::vector<double> xs = cfg.x_grid->points();
    for (const LevelLabel& lab : resolved_levels(cfg)) {
        std::optional<EigenfunctionRecord> rec;
        std::string status;
        try {
            if (lab.kind == LevelKind::exceptional)
                rec = make_exceptional_eigenfunction(cfg.model, lab.n);
            else
                rec = make_eigenfunction(cfg.model, *lab.s, EigenForm::new_form,
                                         opts);
        } catch (const numerics_error& e) {
            status = e.what();
            doc.any_hard_failure = true;
        }
        for (double x : xs) {
            std::vector<Cell> row(eigenfunction_columns.size(),
                                  std::monostate{});
            if (lab.s) row[0] = integer(*lab.s);
            row[1] = integer(lab.n);
            if (lab.kind != LevelKind::exceptional) row[2] = integer(lab.l);
            row[3] = kind_name(lab.kind);
            row[4] = num(cfg.model.g);
            row[6] = num(x);
            if (rec) {
                row[5] = num(rec->k);
                row[7] = num(eval(*rec, x));
            } else {
                row[8] = status;
            }
            doc.rows.push_back(std::move(row));
        }
    }
    return doc;
}

Document run_doublets(const RunConfig& cfg) {
    Document doc{"winter.doublets.v1", doublets_columns, {}, false};
    const DoubletSpec spec = cfg.doublets.value_or(DoubletSpec{});
    const std::vector<double> grid = cfg.g_grid->points();
    const std::vector<DoubletReport> reports = find_quasi_degenerate(
        grid, cfg.model.N, spec.n, spec.j_max, solver_options(cfg));
    for (const DoubletReport& r : reports) {
        std::vector<Cell> row(doublets_columns.size(), std::monostate{});
        row[0] = integer(r.j);
        const int s_lo = spec.n * cfg.model.N - r.j;
        row[1] = integer(s_lo);
        if (r.j > 0) row[2] = integer(s_lo + 1);
        row[3] = num(r.predicted_g);
        row[4] = num(r.g_min);
        row[5] = num(r.spacing_min);
        row[6] = num(r.relative_offset);
        if (!r.resolved) row[7] = std::string("unresolved");
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

Document run_momentum_profile(const RunConfig& cfg) {
    Document doc{"winter.momentum.v1", momentum_columns, {}, false};
    const int N = cfg.model.N;
    for (double k : cfg.k_grid->points()) {
        std::vector<Cell> row(momentum_columns.size(), std::monostate{});
        row[0] = num(k);
        row[1] = num(dirichlet_kernel(k, N));
        row[2] = num(inside_amplitude(k, N));
        row[3] = num(std::fabs(sin_pi(double(N) * k)));
        const double den = std::fabs(sin_pi(k));
        if (den > 0.0) {
            row[4] = num(1.0 / den);
        } else {
            // a true pole of the envelope, not a numerical failure
            row[6] = std::string("envelope_pole");
        }
        row[5] = num(phase_shift(k, N));
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

Document run_pairs(const RunConfig& cfg) {
    Document doc{"winter.pairs.v1", pairs_columns, {}, false};
    const int N = cfg.model.N;
    const SolverOptions opts = solver_options(cfg);
    const std::vector<double> grid = cfg.g_grid->points();

    struct PairCell {
        double k_lo = quiet_nan, k_hi = quiet_nan;
        std::string status;
    };
    std::vector<PairCell> cells(cfg.pairs.size() * grid.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        const PairSpec& p = cfg.pairs[idx / grid.size()];
        const double g = grid[idx % grid.size()];
        PairCell& c = cells[idx];
        const ModelConfig m{N, g};
        try {
            c.k_lo = solve_level(m, p.s_lo, opts).k;
            c.k_hi = p.s_hi ? solve_level(m, *p.s_hi, opts).k
                            : double(p.s_lo / N);
        } catch (const numerics_error& e) {
            c.status = e.what();
        }
    });

    for (std::size_t i = 0; i < cfg.pairs.size(); ++i) {
        const PairSpec& p = cfg.pairs[i];
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const PairCell& c = cells[i * grid.size() + j];
            std::vector<Cell> row(pairs_columns.size(), std::monostate{});
            row[0] = integer(p.s_lo);
            if (p.s_hi) row[1] = integer(*p.s_hi);
            row[2] = num(grid[j]);
            row[3] = num(c.k_lo);
            row[4] = num(c.k_hi);
            row[5] = num(c.k_hi - c.k_lo);
            if (!c.status.empty()) {
                row[6] = c.status;
                doc.any_hard_failure = true;
            }
            doc.rows.push_back(std::move(row));
        }
    }
    return doc;
}

} // namespace

std::string to_string(Command c) {
    for (const auto& [name, value] : command_names)
        if (value == c) return name;
    return {};
}

std::string to_string(GridSpacing s) {
    return s == GridSpacing::linear ? "linear" : "log";
}

std::string to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

std::string to_string(RunScheme s) {
    for (const auto& [name, value] : scheme_names)
        if (value == s) return name;
    return {};
}

std::vector<double> GridSpec::points() const {
    std::vector<double> out(count);
    if (spacing == GridSpacing::linear) {
        for (int i = 0; i < count; ++i)
            out[i] = min + (max - min) * i / (count - 1);
    } else {
        const double la = std::log(min), lb = std::log(max);
        for (int i = 0; i < count; ++i)
            out[i] = std::exp(la + (lb - la) * i / (count - 1));
    }
    out.front() = min;
    out.back() = max;
    return out;
}

void RunConfig::validate() const {
    if (model.N < 1)
        throw config_error("model: N must be >= 1, got " + std::to_string(model.N));
    if (output.precision < 6 || output.precision > 17)
        throw config_error("output: precision must be in [6, 17]");
    if (order < 1 || order > 3)
        throw config_error("order must be in [1, 3]");
    if (!(tol > 0.0)) throw config_error("tol must be positive");
    if (levels.k_max && !(*levels.k_max > 0.0))
        throw config_error("levels: k_max must be positive");
    for (int s : levels.s)
        if (s < 1) throw config_error("levels: s indices must be >= 1");

    auto needs_g = [&] {
        if (!(model.g > 0.0))
            throw config_error(to_string(command) + ": model g must be positive");
    };
    auto needs_levels = [&] {
        if (levels.empty())
            throw config_error(to_string(command) + ": no levels selected");
    };

    switch (command) {
    case Command::spectrum:
        needs_g();
        needs_levels();
        break;
    case Command::scan:
        check_grid(g_grid, "g", true);
        scan_range(*this);
        break;
    case Command::eigenfunction:
        needs_g();
        needs_levels();
        check_grid(x_grid, "x", false);
        if (x_grid->max > model.length() * (1.0 + 1e-12))
            throw config_error("x grid: max exceeds the box length");
        break;
    case Command::observables:
        check_grid(g_grid, "g", true);
        needs_levels();
        break;
    case Command::perturbation: {
        check_grid(g_grid, "g", true);
        if (levels.s.empty() && levels.nl.empty() && levels.flats.empty())
            throw config_error("perturbation: no levels selected");
        for (RunScheme s : schemes)
            if (s == RunScheme::free_limit || s == RunScheme::strong_limit)
                throw config_error("perturbation: scheme '" + winter::to_string(s)
                                   + "' is not a computable series");
        break;
    }
    case Command::doublets: {
        check_grid(g_grid, "g", true);
        const DoubletSpec spec = doublets.value_or(DoubletSpec{});
        if (spec.n < 1) throw config_error("doublets: n must be >= 1");
        if (spec.j_max < 0) throw config_error("doublets: j_max must be >= 0");
        if (spec.n * model.N - spec.j_max < 1)
            throw config_error("doublets: j_max reaches below the spectrum");
        break;
    }
    case Command::figure:
        if (k_grid) {
            check_grid(k_grid, "k", true);
        } else if (!pairs.empty()) {
            check_grid(g_grid, "g", true);
            for (const PairSpec& p : pairs) {
                if (p.s_lo < 1)
                    throw config_error("pairs: s_lo must be >= 1");
                if (!p.s_hi && p.s_lo % model.N != 0)
                    throw config_error(
                        "pairs: flat partner requires s_lo divisible by N");
            }
        } else {
            throw config_error(
                "figure: config must carry a momentum grid or spacing pairs");
        }
        break;
    }
    if (markers && markers->n < 1)
        throw config_error("markers: n must be >= 1");
}

std::string format_double(double v, int precision) {
    if (!std::isfinite(v)) return {};
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (precision < 17) {
        int sig = 0;
        bool leading = true;
        for (char ch : s) {
            if (ch == 'e' || ch == 'E') break;
            if (ch < '0' || ch > '9') continue;
            if (leading && ch == '0') continue;
            leading = false;
            ++sig;
        }
        if (sig > precision) {
            auto res2 = std::to_chars(buf, buf + sizeof buf, v,
                                      std::chars_format::general, precision);
            s.assign(buf, res2.ptr);
        }
    }
    return s;
}

Document execute(const RunConfig& cfg) {
    switch (cfg.command) {
    case Command::spectrum: return run_spectrum(cfg);
    case Command::scan: return run_scan(cfg);
    case Command::eigenfunction: return run_eigenfunction(cfg);
    case Command::observables: return run_observables(cfg);
    case Command::perturbation: return run_perturbation(cfg);
    case Command::doublets: return run_doublets(cfg);
    case Command::figure:
        if (cfg.k_grid) return run_momentum_profile(cfg);
        return run_pairs(cfg);
    }
    throw config_error("unknown command");
}

namespace {

std::string csv_cell(const Cell& cell, int precision) {
    if (std::holds_alternative<std::monostate>(cell)) return {};
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell))
        return format_double(*d, precision);
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string json_escape(const std::string& s) {
    return ordered_json(s).dump();
}

} // namespace

std::string render_csv(const Document& doc, int precision) {
    std::string out = "# schema=" + doc.schema + "\n";
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
        if (c) out += ',';
        out += doc.columns[c];
    }
    out += '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += csv_cell(row[c], precision);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Document& doc, const RunConfig& cfg,
                        int precision) {
    std::string out = "{\n";
    out += "\"schema_version\": \"1\",\n";
    out += "\"schema\": " + json_escape(doc.schema) + ",\n";
    out += "\"config\": " + config_to_json(cfg) + ",\n";
    out += "\"rows\": [";
    bool first_row = true;
    for (const auto& row : doc.rows) {
        out += first_row ? "\n" : ",\n";
        first_row = false;
        out += '{';
        bool first_cell = true;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<std::monostate>(row[c])) continue;
            if (const auto* d = std::get_if<double>(&row[c]))
                if (!std::isfinite(*d)) continue;
            if (!first_cell) out += ',';
            first_cell = false;
            out += json_escape(doc.columns[c]) + ":";
            if (const auto* i = std::get_if<long long>(&row[c]))
                out += std::to_string(*i);
            else if (const auto* d = std::get_if<double>(&row[c]))
                out += format_double(*d, precision);
            else
                out += json_escape(std::get<std::string>(row[c]));
        }
        out += '}';
    }
    out += "\n]\n}\n";
    return out;
}

int run(const RunConfig& cfg) {
    cfg.validate();
    const Document doc = execute(cfg);
    const std::string text =
        cfg.output.format == OutputFormat::csv
            ? render_csv(doc, cfg.output.precision)
            : render_json(doc, cfg, cfg.output.precision);
    if (cfg.output.path.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(cfg.output.path, std::ios::binary);
        if (!file)
            throw config_error("cannot open output path: " + cfg.output.path);
        file << text;
        if (!file)
            throw config_error("failed writing output: " + cfg.output.path);
    }
    return doc.any_hard_failure ? 2 : 0;
}

namespace {

ordered_json grid_to_json(const GridSpec& grid) {
    return ordered_json{{"min", grid.min},
                        {"max", grid.max},
                        {"count", grid.count},
                        {"spacing", to_string(grid.spacing)}};
}

GridSpec grid_from_json(const ordered_json& j) {
    GridSpec grid;
    grid.min = j.at("min").get<double>();
    grid.max = j.at("max").get<double>();
    grid.count = j.at("count").get<int>();
    if (j.contains("spacing"))
        grid.spacing = parse_enum(spacing_names,
                                  j.at("spacing").get<std::string>(), "spacing");
    return grid;
}

} // namespace

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = to_string(cfg.command);
    j["model"]["N"] = cfg.model.N;
    if (cfg.model.g > 0.0) j["model"]["g"] = cfg.model.g;
    if (!cfg.levels.empty()) {
        ordered_json lv;
        if (!cfg.levels.s.empty()) lv["s"] = cfg.levels.s;
        if (!cfg.levels.nl.empty()) {
            ordered_json nl = ordered_json::array();
            for (auto [n, l] : cfg.levels.nl) nl.push_back({n, l});
            lv["nl"] = nl;
        }
        if (cfg.levels.k_max) lv["k_max"] = *cfg.levels.k_max;
        if (!cfg.levels.flats.empty()) lv["flats"] = cfg.levels.flats;
        j["levels"] = lv;
    }
    if (cfg.g_grid) j["g_grid"] = grid_to_json(*cfg.g_grid);
    if (cfg.k_grid) j["k_grid"] = grid_to_json(*cfg.k_grid);
    if (cfg.x_grid) j["x_grid"] = grid_to_json(*cfg.x_grid);
    if (cfg.command == Command::perturbation) {
        j["order"] = cfg.order;
        ordered_json schemes = ordered_json::array();
        for (RunScheme s : cfg.schemes) schemes.push_back(to_string(s));
        j["schemes"] = schemes;
        if (cfg.large_n) j["large_n"] = true;
    }
    if (cfg.with_second) j["with_second"] = true;
    if (cfg.with_asymptotes) j["with_asymptotes"] = true;
    if (cfg.markers) j["markers"] = ordered_json{{"n", cfg.markers->n}};
    if (!cfg.pairs.empty()) {
        ordered_json pairs = ordered_json::array();
        for (const PairSpec& p : cfg.pairs) {
            ordered_json pair = ordered_json::array();
            pair.push_back(p.s_lo);
            if (p.s_hi)
                pair.push_back(*p.s_hi);
            else
                pair.push_back(nullptr);
            pairs.push_back(pair);
        }
        j["pairs"] = pairs;
    }
    if (cfg.doublets)
        j["doublets"] =
            ordered_json{{"n", cfg.doublets->n}, {"j_max", cfg.doublets->j_max}};
    if (cfg.preset) j["preset"] = *cfg.preset;
    if (cfg.tol != 1e-13) j["tol"] = cfg.tol;
    j["output"] = ordered_json{{"format", to_string(cfg.output.format)},
                               {"precision", cfg.output.precision}};
    return j.dump();
}

RunConfig config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config parse: ") + e.what());
    }
    try {
        if (j.contains("schema_version") && j.contains("config"))
            j = j.at("config");
        RunConfig cfg;
        cfg.command = parse_enum(command_names,
                                 j.at("command").get<std::string>(), "command");
        if (j.contains("model")) {
            const auto& m = j.at("model");
            if (m.contains("N")) cfg.model.N = m.at("N").get<int>();
            if (m.contains("g")) cfg.model.g = m.at("g").get<double>();
        }
        if (j.contains("levels")) {
            const auto& lv = j.at("levels");
            if (lv.contains("s")) cfg.levels.s = lv.at("s").get<std::vector<int>>();
            if (lv.contains("nl"))
                for (const auto& pair : lv.at("nl"))
                    cfg.levels.nl.emplace_back(pair.at(0).get<int>(),
                                               pair.at(1).get<int>());
            if (lv.contains("k_max"))
                cfg.levels.k_max = lv.at("k_max").get<double>();
            if (lv.contains("flats"))
                cfg.levels.flats = lv.at("flats").get<std::vector<int>>();
        }
        if (j.contains("g_grid")) cfg.g_grid = grid_from_json(j.at("g_grid"));
        if (j.contains("k_grid")) cfg.k_grid = grid_from_json(j.at("k_grid"));
        if (j.contains("x_grid")) cfg.x_grid = grid_from_json(j.at("x_grid"));
        if (j.contains("order")) cfg.order = j.at("order").get<int>();
        if (j.contains("schemes"))
            for (const auto& s : j.at("schemes"))
                cfg.schemes.push_back(parse_enum(
                    scheme_names, s.get<std::string>(), "scheme"));
        if (j.contains("large_n")) cfg.large_n = j.at("large_n").get<bool>();
        if (j.contains("with_second"))
            cfg.with_second = j.at("with_second").get<bool>();
        if (j.contains("with_asymptotes"))
            cfg.with_asymptotes = j.at("with_asymptotes").get<bool>();
        if (j.contains("markers"))
            cfg.markers = MarkerSpec{j.at("markers").at("n").get<int>()};
        if (j.contains("pairs"))
            for (const auto& pair : j.at("pairs")) {
                PairSpec p;
                p.s_lo = pair.at(0).get<int>();
                if (pair.size() > 1 && !pair.at(1).is_null())
                    p.s_hi = pair.at(1).get<int>();
                cfg.pairs.push_back(p);
            }
        if (j.contains("doublets"))
            cfg.doublets = DoubletSpec{j.at("doublets").at("n").get<int>(),
                                       j.at("doublets").at("j_max").get<int>()};
        if (j.contains("preset"))
            cfg.preset = j.at("preset").get<std::string>();
        if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
        if (j.contains("output")) {
            const auto& o = j.at("output");
            if (o.contains("format"))
                cfg.output.format = parse_enum(
                    format_names, o.at("format").get<std::string>(), "format");
            if (o.contains("precision"))
                cfg.output.precision = o.at("precision").get<int>();
            if (o.contains("path"))
                cfg.output.path = o.at("path").get<std::string>();
        }
        return cfg;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

} // namespace winter
