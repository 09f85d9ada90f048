#pragma once

#include <string>
#include <vector>

#include "winter/model.hpp"
#include "winter/spectral.hpp"

namespace winter {

/// dk/dg of a normal level by implicit differentiation of the spectral
/// function at a known root k: k' = -(dF/dg)/(dF/dk). Strictly negative.
double level_derivative_at(double k, double g, int N);

/// Solves level s of cfg, then differentiates implicitly.
double level_derivative(const ModelConfig& cfg, int s,
                        const SolverOptions& opts = {});

/// d2k/dg2 by central differencing of the analytic first derivative with
/// step h = max(1e-6, 1e-4 g). Throws step_error when g - h <= 0.
double level_second_derivative(const ModelConfig& cfg, int s,
                               const SolverOptions& opts = {});

/// Rectangular sweep of levels over a coupling grid. Rows follow the
/// momentum ordering of the interleaved level list (normal levels by s, with
/// each flat level n inserted right after the normal level s = n N). Cells
/// that fail to evaluate carry a status note and NaN values; a scan never
/// aborts as a whole.
struct ScanTable {
    std::vector<double> g_grid;
    std::vector<LevelLabel> levels;
    std::vector<std::vector<double>> k;          ///< levels x grid
    std::vector<std::vector<double>> dk_dg;      ///< levels x grid
    std::vector<std::vector<double>> d2k_dg2;    ///< levels x grid (optional)
    std::vector<std::vector<double>> spacing;    ///< (levels-1) x grid
    std::vector<std::vector<std::string>> status;///< levels x grid, "" = ok
    bool with_second = false;

    bool all_ok() const;
};

/// Level list of a scan: normal levels s_min..s_max with exceptional flats
/// interleaved at their momentum positions.
std::vector<LevelLabel> interleaved_levels(int N, int s_min, int s_max);

ScanTable spacing_scan(const std::vector<double>& g_grid, int N, int s_min,
                       int s_max, bool with_second = false,
                       const SolverOptions& opts = {});

/// Quasi-degenerate doublet j: the pair of adjacent levels (nN - j, nN - j + 1)
/// whose spacing dips near the coupling g_j = j/(nN). j = 0 denotes the exact
/// g->0 doublet of the resonant level with the flat one above it.
struct DoubletReport {
    int j = 0;
    double predicted_g = 0.0;    ///< j/(nN)
    double g_min = 0.0;          ///< coupling at the spacing minimum
    double spacing_min = 0.0;
    double relative_offset = 0.0;///< |g_min - predicted_g| / predicted_g
    bool resolved = true;        ///< false when the grid could not bracket it
};

std::vector<DoubletReport> find_quasi_degenerate(
    const std::vector<double>& g_grid, int N, int n, int j_max,
    const SolverOptions& opts = {});

struct PeakResult {
    double g = 0.0;
    double value = 0.0;
    bool at_boundary = false;
};

struct CrossingResult {
    double g = 0.0;
    double value = 0.0;
};

/// Coupling where the phase of level s crosses -pi/2 (mod pi), i.e. the first
/// root of cos(delta(g)) in [g_lo, g_hi]. Throws no_crossing_error when the
/// phase never gets there (levels with l > 0 do not resonate for g > 0).
double resonance_locator_phase(int N, int s, double g_lo, double g_hi,
                               const SolverOptions& opts = {});

/// Interior maximum of the inside amplitude A(g) of level s over [g_lo, g_hi]
/// by golden-section refinement of a coarse-grid argmax; reports a boundary
/// maximum instead of refining when the argmax sits on an endpoint.
PeakResult amplitude_peak_locator(int N, int s, double g_lo, double g_hi,
                                  const SolverOptions& opts = {});

/// Coupling where the amplitude curves of levels s_a and s_b cross, with the
/// common amplitude value. Symmetric in (s_a, s_b).
CrossingResult amplitude_crossing_locator(int N, int s_a, int s_b, double g_lo,
                                          double g_hi,
                                          const SolverOptions& opts = {});

} // namespace winter
