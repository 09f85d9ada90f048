#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "winter/trig.hpp"

namespace winter {

inline constexpr double pi = pi_v<double>;

/// Two-cavity delta-barrier model on [0, L]: a wall at x=0, a barrier of
/// strength 1/(pi g) at x=pi, a wall at x=L=(N+1)pi. N is the large-cavity
/// to small-cavity length ratio.
struct ModelConfig {
    int N = 1;        ///< large cavity size in units of the small one, N >= 1
    double g = 0.0;   ///< barrier coupling, g > 0

    int M() const { return N + 1; }
    double length() const { return (N + 1) * pi; }

    void validate() const;
};

enum class LevelKind { exceptional, resonant, nonresonant };

/// Adiabatic label of a momentum level by its g->0 limit.
/// Normal levels: k(0) = s/N with s >= 1; the euclidean split s = n N + l,
/// remainder forced into (-N/2, N/2], classifies them (l = 0: resonant).
/// Exceptional levels k = n are g-independent and carry no s.
struct LevelLabel {
    std::optional<int> s;   ///< unset for exceptional levels
    int n = 0;
    int l = 0;
    LevelKind kind = LevelKind::nonresonant;

    /// g->0 momentum: s/N for normal levels, n for exceptional ones.
    double free_momentum(int N) const {
        return s ? double(*s) / N : double(n);
    }
};

/// One solved root of the spectral equation (or a flat exceptional level).
struct MomentumLevel {
    LevelLabel label;
    double g = 0.0;
    double k = 0.0;
    double residual = 0.0;   ///< |F(k)| at the returned point
    int iterations = 0;
};

/// Base class for all numerical failures raised by the library.
struct numerics_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation requested too close to a pole of the spectral function.
struct pole_error : numerics_error { using numerics_error::numerics_error; };

/// Bracket invalid or swallowed by the endpoint guards.
struct bracket_error : numerics_error { using numerics_error::numerics_error; };

/// Iteration budget exhausted before meeting the tolerance.
struct convergence_error : numerics_error { using numerics_error::numerics_error; };

/// Argument outside the function's domain (e.g. x beyond [0, L]).
struct domain_error : numerics_error { using numerics_error::numerics_error; };

/// Perturbative evaluation on top of a pole of the resummed series.
struct singularity_error : numerics_error { using numerics_error::numerics_error; };

/// A bracketing search found no sign change in the given range.
struct no_crossing_error : numerics_error { using numerics_error::numerics_error; };

/// Finite-difference step does not fit the parameter range.
struct step_error : numerics_error { using numerics_error::numerics_error; };

/// Invalid run configuration (CLI or JSON input).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void ModelConfig::validate() const {
    if (N < 1) throw config_error("ModelConfig: N must be >= 1, got " + std::to_string(N));
    if (!(g > 0.0)) throw config_error("ModelConfig: g must be positive, got " + std::to_string(g));
}

} // namespace winter
