#include "winter/io.hpp"

#include <functional>
#include <map>

namespace winter {

namespace {

GridSpec log_g(double lo, double hi, int count = 400) {
    return GridSpec{lo, hi, count, GridSpacing::log};
}

GridSpec lin(double lo, double hi, int count) {
    return GridSpec{lo, hi, count, GridSpacing::linear};
}

std::vector<int> s_run(int lo, int hi) {
    std::vector<int> out;
    for (int s = lo; s <= hi; ++s) out.push_back(s);
    return out;
}

RunConfig base(Command cmd, int N) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.model.N = N;
    return cfg;
}

// Level-band scans over the full coupling range with both asymptote grids.
RunConfig small_volume_scan(int N, int s_max) {
    RunConfig cfg = base(Command::scan, N);
    cfg.levels.s = s_run(1, s_max);
    cfg.g_grid = log_g(1e-3, 1e2);
    cfg.with_asymptotes = true;
    return cfg;
}

// Levels near the first resonance of a large-volume model; the transition
// happens around g = O(1/N), so the grid covers the first few g_j.
RunConfig large_volume_scan(int s_lo, int s_hi) {
    RunConfig cfg = base(Command::scan, 199);
    cfg.levels.s = s_run(s_lo, s_hi);
    cfg.g_grid = log_g(1e-4, 5e-2);
    cfg.markers = MarkerSpec{1};
    return cfg;
}

RunConfig eigenfunction_profiles(double g) {
    RunConfig cfg = base(Command::eigenfunction, 9);
    cfg.model.g = g;
    cfg.levels.nl = {{1, 0}, {1, -1}, {1, -2}};
    cfg.x_grid = lin(0.0, cfg.model.length(), 2001);
    return cfg;
}

RunConfig resonance_observables(GridSpec grid) {
    RunConfig cfg = base(Command::observables, 9);
    cfg.levels.s = s_run(6, 12);
    cfg.g_grid = grid;
    return cfg;
}

RunConfig perturbative_comparison(int n, std::vector<RunScheme> schemes,
                                  bool wings) {
    RunConfig cfg = base(Command::perturbation, 99);
    if (wings) cfg.levels.nl.push_back({n, 1});
    for (int l = 0; l >= -3; --l) cfg.levels.nl.push_back({n, l});
    cfg.schemes = std::move(schemes);
    cfg.order = 3;
    cfg.g_grid = log_g(1e-4, 5e-2);
    return cfg;
}

RunConfig momentum_profile() {
    RunConfig cfg = base(Command::figure, 9);
    cfg.k_grid = lin(0.5, 1.5, 2001);
    return cfg;
}

std::map<std::string, std::function<RunConfig()>> make_table() {
    std::map<std::string, std::function<RunConfig()>> t;
    // first nine levels at M=4 (7 normal + 2 flats interleave automatically)
    t["pNsmall"] = [] { return small_volume_scan(3, 7); };
    // lowest seven levels at M=6
    t["pNsmall2"] = [] { return small_volume_scan(5, 6); };
    // levels around the first resonance at M=200
    t["pNlarge"] = [] {
        RunConfig cfg = large_volume_scan(196, 200);
        cfg.with_asymptotes = true;
        return cfg;
    };
    // first derivatives below and including the first resonance
    t["pfirstder"] = [] { return large_volume_scan(196, 199); };
    // second derivatives of the same band
    t["psecder"] = [] {
        RunConfig cfg = large_volume_scan(196, 199);
        cfg.with_second = true;
        return cfg;
    };
    // adjacent-level spacings whose minima sit near g_j = j/199
    t["pdifferenza"] = [] {
        RunConfig cfg = base(Command::figure, 199);
        cfg.g_grid = log_g(1e-4, 5e-2);
        cfg.pairs = {PairSpec{196, 197}, PairSpec{197, 198},
                     PairSpec{198, 199}, PairSpec{199, std::nullopt}};
        return cfg;
    };
    // inside amplitude and phase over one momentum period at M=10
    t["pinsamp"] = [] { return momentum_profile(); };
    t["pfase"] = [] { return momentum_profile(); };
    // first-resonance eigenfunctions at three couplings
    t["peigenfun1"] = [] { return eigenfunction_profiles(0.05); };
    t["peigenfun2"] = [] { return eigenfunction_profiles(0.1); };
    t["peigenfun3"] = [] { return eigenfunction_profiles(0.2); };
    // amplitude vs coupling in the weak-coupling resonance region
    t["pinsideamp"] = [] { return resonance_observables(lin(0.02, 0.5, 400)); };
    // phase vs coupling, wide logarithmic range
    t["prelphase"] = [] { return resonance_observables(log_g(1e-3, 10.0)); };
    // phase vs coupling, small couplings on linear axes
    t["prelphase2"] = [] {
        return resonance_observables(lin(1e-3, 0.3, 400));
    };
    // exact vs third-order ordinary series around the first resonance, M=100
    t["pordpert"] = [] {
        return perturbative_comparison(
            1, {RunScheme::exact, RunScheme::ordinary}, true);
    };
    // exact vs resummed series below the first resonance, singular at j/99
    t["presum"] = [] {
        RunConfig cfg = perturbative_comparison(
            1, {RunScheme::exact, RunScheme::resummed}, false);
        cfg.markers = MarkerSpec{1};
        return cfg;
    };
    // same comparison below the second resonance, singular at j/198
    t["presum2"] = [] {
        RunConfig cfg = perturbative_comparison(
            2, {RunScheme::exact, RunScheme::resummed}, false);
        cfg.markers = MarkerSpec{2};
        return cfg;
    };
    // ordinary vs resummed series side by side, with the flat level
    t["pordresum"] = [] {
        RunConfig cfg = perturbative_comparison(
            1, {RunScheme::ordinary, RunScheme::resummed}, true);
        cfg.levels.flats = {1};
        return cfg;
    };
    return t;
}

const std::map<std::string, std::function<RunConfig()>>& table() {
    static const auto t = make_table();
    return t;
}

} // namespace

RunConfig figure_preset(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end())
        throw config_error("unknown figure preset '" + name + "'");
    RunConfig cfg = it->second();
    cfg.preset = name;
    return cfg;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, make] : table()) names.push_back(name);
    return names;
}

} // namespace winter
