#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "winter/model.hpp"

namespace winter {

enum class Command {
    spectrum,      ///< all observables at a single coupling
    scan,          ///< contiguous level band over a coupling grid
    eigenfunction, ///< psi(x) profiles at a single coupling
    observables,   ///< amplitude/phase curves over a coupling grid
    perturbation,  ///< exact vs perturbative momenta over a coupling grid
    doublets,      ///< quasi-degenerate doublet minima
    figure,        ///< preset-shaped runs (momentum profiles, pair spacings)
};

enum class GridSpacing { linear, log };
enum class OutputFormat { csv, json };

/// Scheme tag attached to every exported row.
enum class RunScheme {
    exact,
    ordinary,
    ordinary_large_n,
    resummed,
    free_limit,
    strong_limit,
};

std::string to_string(Command c);
std::string to_string(GridSpacing s);
std::string to_string(OutputFormat f);
std::string to_string(RunScheme s);

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    GridSpacing spacing = GridSpacing::log;

    std::vector<double> points() const;
};

/// Which levels a run touches: an explicit s list, (n, l) pairs, or every
/// level with free momentum below k_max. flats adds exceptional levels by
/// their integer momentum (k_max selection interleaves them automatically).
struct LevelSelection {
    std::vector<int> s;
    std::vector<std::pair<int, int>> nl;
    std::optional<double> k_max;
    std::vector<int> flats;

    bool empty() const {
        return s.empty() && nl.empty() && !k_max && flats.empty();
    }
};

/// Emit rows marking the singular couplings g_j = j/(nN) inside the grid.
struct MarkerSpec {
    int n = 1;
};

/// A spacing pair: normal level s_lo against either the normal level s_hi
/// or, when s_hi is unset, the flat level right above it (requires N | s_lo).
struct PairSpec {
    int s_lo = 0;
    std::optional<int> s_hi;
};

struct DoubletSpec {
    int n = 1;
    int j_max = 3;
};

struct OutputSpec {
    std::string path;                      ///< empty = stdout
    OutputFormat format = OutputFormat::csv;
    int precision = 17;                    ///< significant digits, in [6, 17]
};

struct RunConfig {
    Command command = Command::spectrum;
    ModelConfig model;                     ///< g meaningful at single-coupling commands
    LevelSelection levels;
    std::optional<GridSpec> g_grid;
    std::optional<GridSpec> k_grid;        ///< momentum-domain profiles
    std::optional<GridSpec> x_grid;        ///< eigenfunction profiles
    int order = 3;
    std::vector<RunScheme> schemes;        ///< perturbation schemes; empty = exact only
    bool large_n = false;                  ///< use the large-N ordinary coefficients
    bool with_second = false;              ///< second derivatives in scans
    bool with_asymptotes = false;          ///< free/strong reference rows in scans
    std::optional<MarkerSpec> markers;
    std::vector<PairSpec> pairs;
    std::optional<DoubletSpec> doublets;
    std::optional<std::string> preset;     ///< set when resolved from a figure preset
    double tol = 1e-13;                    ///< solver tolerance
    OutputSpec output;

    void validate() const;                 ///< throws config_error
};

/// One output cell: absent, integer, real, or text.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Document {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool any_hard_failure = false;   ///< some cell produced no value
};

/// Shortest decimal text that round-trips v, capped at precision significant
/// digits; empty for non-finite values.
std::string format_double(double v, int precision);

Document execute(const RunConfig& cfg);

std::string render_csv(const Document& doc, int precision);
std::string render_json(const Document& doc, const RunConfig& cfg, int precision);

/// Executes cfg and writes the document to cfg.output.path (stdout when
/// empty). Returns the process exit code: 0 ok, 2 when any cell hard-failed
/// (the file is still written). Config problems throw config_error.
int run(const RunConfig& cfg);

/// Stable JSON serialization of a RunConfig (output path excluded).
std::string config_to_json(const RunConfig& cfg);

/// Parses either a bare config object or a full output envelope (in which
/// case its "config" member is used).
RunConfig config_from_json(const std::string& text);

/// Resolves a named figure preset to a full RunConfig; unknown names throw
/// config_error.
RunConfig figure_preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace winter
