#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "winter/io.hpp"

namespace {

using winter::RunConfig;

struct Flags {
    int N = 0;
    int M = 0;
    double g = 0.0;
    double gmin = 0.0, gmax = 0.0;
    int gpoints = 400;
    std::string gspacing = "log";
    std::vector<int> s;
    std::vector<std::string> levels;
    std::vector<int> flats;
    double kmax = 0.0;
    int xpoints = 2001;
    int order = 3;
    std::vector<std::string> schemes;
    bool large_n = false;
    bool second = false;
    bool asymptotes = false;
    int markers = 0;
    int doublet_n = 1;
    int doublet_jmax = 3;
    std::string out;
    std::string format = "csv";
    int precision = 17;
    double tol = 1e-13;
};

void add_model_flags(CLI::App* sub, Flags& f) {
    auto* n_opt = sub->add_option("--N", f.N, "large-to-small cavity ratio");
    auto* m_opt = sub->add_option("--M", f.M, "total volume in units of the small cavity (N+1)");
    n_opt->excludes(m_opt);
    m_opt->excludes(n_opt);
}

void add_grid_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--gmin", f.gmin, "lower end of the coupling grid");
    sub->add_option("--gmax", f.gmax, "upper end of the coupling grid");
    sub->add_option("--gpoints", f.gpoints, "number of grid points")
        ->capture_default_str();
    sub->add_option("--gspacing", f.gspacing, "grid spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
}

void add_level_flags(CLI::App* sub, Flags& f, bool with_kmax) {
    sub->add_option("--s", f.s, "level index s (repeatable)");
    sub->add_option("--level", f.levels, "level as n,l (repeatable)");
    sub->add_option("--flat", f.flats, "flat level index n (repeatable)");
    if (with_kmax)
        sub->add_option("--kmax", f.kmax,
                        "select every level with free momentum <= kmax");
}

void add_output_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--out", f.out, "output path (default: stdout)");
    sub->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--precision", f.precision,
                    "significant digits, 6 to 17")
        ->capture_default_str();
    sub->add_option("--tol", f.tol, "solver tolerance")
        ->capture_default_str();
}

int resolved_N(const Flags& f) {
    if (f.N > 0) return f.N;
    if (f.M > 0) return f.M - 1;
    throw winter::config_error("model size missing: pass --N or --M");
}

std::pair<int, int> parse_level(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw winter::config_error("--level expects n,l, got '" + text + "'");
    try {
        std::size_t used_n = 0, used_l = 0;
        const int n = std::stoi(text.substr(0, comma), &used_n);
        const std::string rest = text.substr(comma + 1);
        const int l = std::stoi(rest, &used_l);
        if (used_n != comma || used_l != rest.size())
            throw std::invalid_argument(text);
        return {n, l};
    } catch (const std::exception&) {
        throw winter::config_error("--level expects n,l, got '" + text + "'");
    }
}

void apply_selection(const Flags& f, RunConfig& cfg) {
    if (f.kmax > 0.0 && (!f.s.empty() || !f.levels.empty()))
        throw winter::config_error(
            "choose either --kmax or explicit --s/--level selections");
    if (f.kmax > 0.0) cfg.levels.k_max = f.kmax;
    cfg.levels.s = f.s;
    for (const std::string& text : f.levels)
        cfg.levels.nl.push_back(parse_level(text));
    cfg.levels.flats = f.flats;
}

void apply_grid(const Flags& f, RunConfig& cfg) {
    if (f.gmin == 0.0 && f.gmax == 0.0)
        throw winter::config_error("coupling grid missing: pass --gmin and --gmax");
    winter::GridSpec grid;
    grid.min = f.gmin;
    grid.max = f.gmax;
    grid.count = f.gpoints;
    grid.spacing = f.gspacing == "linear" ? winter::GridSpacing::linear
                                          : winter::GridSpacing::log;
    cfg.g_grid = grid;
}

void apply_output(const Flags& f, RunConfig& cfg) {
    cfg.output.path = f.out;
    cfg.output.format = f.format == "json" ? winter::OutputFormat::json
                                           : winter::OutputFormat::csv;
    cfg.output.precision = f.precision;
    cfg.tol = f.tol;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, eigenfunctions and resonance observables of a "
                 "two-cavity delta-barrier box"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "run from a JSON config (bare object or output envelope)");
    std::string config_out, config_format;
    auto* config_out_opt =
        app.add_option("--out", config_out, "output path for --config runs");
    auto* config_format_opt =
        app.add_option("--format", config_format, "format for --config runs")
            ->check(CLI::IsMember({"csv", "json"}));

    Flags f;

    auto* spectrum = app.add_subcommand(
        "spectrum", "all levels and observables at one coupling");
    add_model_flags(spectrum, f);
    spectrum->add_option("--g", f.g, "barrier coupling")->required();
    add_level_flags(spectrum, f, true);
    add_output_flags(spectrum, f);

    auto* scan = app.add_subcommand(
        "scan", "momenta and derivatives of a level band over a coupling grid");
    add_model_flags(scan, f);
    add_grid_flags(scan, f);
    add_level_flags(scan, f, true);
    scan->add_flag("--second", f.second, "include second derivatives");
    scan->add_flag("--asymptotes", f.asymptotes,
                   "include free/strong-limit reference rows");
    scan->add_option("--markers", f.markers,
                     "mark singular couplings j/(n N) of resonance n");
    add_output_flags(scan, f);

    auto* eigenfunction = app.add_subcommand(
        "eigenfunction", "normalized eigenfunction profiles psi(x)");
    add_model_flags(eigenfunction, f);
    eigenfunction->add_option("--g", f.g, "barrier coupling")->required();
    add_level_flags(eigenfunction, f, false);
    eigenfunction->add_option("--xpoints", f.xpoints, "x samples across the box")
        ->capture_default_str();
    add_output_flags(eigenfunction, f);

    auto* observables = app.add_subcommand(
        "observables", "amplitude and phase curves over a coupling grid");
    add_model_flags(observables, f);
    add_grid_flags(observables, f);
    add_level_flags(observables, f, true);
    add_output_flags(observables, f);

    auto* perturbation = app.add_subcommand(
        "perturbation", "exact vs perturbative momenta over a coupling grid");
    add_model_flags(perturbation, f);
    add_grid_flags(perturbation, f);
    add_level_flags(perturbation, f, false);
    perturbation->add_option("--order", f.order, "series truncation order, 1 to 3")
        ->capture_default_str();
    perturbation->add_option("--scheme", f.schemes,
                             "scheme (repeatable): exact, ordinary, resummed")
        ->check(CLI::IsMember({"exact", "ordinary", "resummed"}));
    perturbation->add_flag("--large-n", f.large_n,
                           "use the large-N ordinary coefficients");
    perturbation->add_option("--markers", f.markers,
                             "mark singular couplings j/(n N) of resonance n");
    add_output_flags(perturbation, f);

    auto* doublets = app.add_subcommand(
        "doublets", "quasi-degenerate doublet minima near g_j = j/(n N)");
    add_model_flags(doublets, f);
    add_grid_flags(doublets, f);
    doublets->add_option("--n", f.doublet_n, "resonance order")
        ->capture_default_str();
    doublets->add_option("--jmax", f.doublet_jmax, "largest doublet index")
        ->capture_default_str();
    add_output_flags(doublets, f);

    bool list_presets = false;
    std::string preset_name;
    auto* figure = app.add_subcommand(
        "figure", "run a named dataset preset");
    figure->add_option("name", preset_name, "preset name");
    figure->add_flag("--list", list_presets, "list preset names and exit");
    add_output_flags(figure, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            if (app.get_subcommands().size() > 0)
                throw winter::config_error(
                    "--config cannot be combined with a subcommand");
            std::ifstream in(config_path);
            if (!in)
                throw winter::config_error("cannot read config file: "
                                           + config_path);
            std::ostringstream text;
            text << in.rdbuf();
            RunConfig cfg = winter::config_from_json(text.str());
            if (config_out_opt->count() > 0) cfg.output.path = config_out;
            if (config_format_opt->count() > 0)
                cfg.output.format = config_format == "json"
                                        ? winter::OutputFormat::json
                                        : winter::OutputFormat::csv;
            return winter::run(cfg);
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help() << std::flush;
            return 1;
        }

        RunConfig cfg;
        if (spectrum->parsed()) {
            cfg.command = winter::Command::spectrum;
            cfg.model.N = resolved_N(f);
            cfg.model.g = f.g;
            apply_selection(f, cfg);
        } else if (scan->parsed()) {
            cfg.command = winter::Command::scan;
            cfg.model.N = resolved_N(f);
            apply_grid(f, cfg);
            apply_selection(f, cfg);
            cfg.with_second = f.second;
            cfg.with_asymptotes = f.asymptotes;
            if (f.markers > 0) cfg.markers = winter::MarkerSpec{f.markers};
        } else if (eigenfunction->parsed()) {
            cfg.command = winter::Command::eigenfunction;
            cfg.model.N = resolved_N(f);
            cfg.model.g = f.g;
            apply_selection(f, cfg);
            cfg.x_grid = winter::GridSpec{0.0, cfg.model.length(), f.xpoints,
                                          winter::GridSpacing::linear};
        } else if (observables->parsed()) {
            cfg.command = winter::Command::observables;
            cfg.model.N = resolved_N(f);
            apply_grid(f, cfg);
            apply_selection(f, cfg);
        } else if (perturbation->parsed()) {
            cfg.command = winter::Command::perturbation;
            cfg.model.N = resolved_N(f);
            apply_grid(f, cfg);
            apply_selection(f, cfg);
            cfg.order = f.order;
            cfg.large_n = f.large_n;
            for (const std::string& s : f.schemes)
                cfg.schemes.push_back(s == "exact" ? winter::RunScheme::exact
                                      : s == "ordinary"
                                          ? winter::RunScheme::ordinary
                                          : winter::RunScheme::resummed);
            if (f.markers > 0) cfg.markers = winter::MarkerSpec{f.markers};
        } else if (doublets->parsed()) {
            cfg.command = winter::Command::doublets;
            cfg.model.N = resolved_N(f);
            apply_grid(f, cfg);
            cfg.doublets = winter::DoubletSpec{f.doublet_n, f.doublet_jmax};
        } else if (figure->parsed()) {
            if (list_presets) {
                for (const std::string& name : winter::preset_names())
                    std::cout << name << "\n";
                return 0;
            }
            if (preset_name.empty())
                throw winter::config_error("figure: preset name missing "
                                           "(--list shows the options)");
            cfg = winter::figure_preset(preset_name);
        }
        apply_output(f, cfg);
        return winter::run(cfg);
    } catch (const winter::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const winter::numerics_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
