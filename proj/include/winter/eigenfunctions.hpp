#pragma once

#include "winter/model.hpp"
#include "winter/spectral.hpp"

namespace winter {

/// Width of the window around integer k inside which the kernel, amplitude
/// and phase are replaced by their analytic limits.
inline constexpr double integer_window = 1e-8;

/// Dirichlet kernel D_N(k) = sin(pi N k)/sin(pi k); analytic limit
/// N*(-1)^(n(N+1)) within the integer window.
double dirichlet_kernel(double k, int N);

/// Inside amplitude A_N(k) = |D_N(k)|: small-cavity vs large-cavity
/// amplitude ratio. Limit N at integer k, exact zero at k = s/N (s not a
/// multiple of N), exactly 1 at the strong-coupling grid u/(N+1).
double inside_amplitude(double k, int N);

/// Phase shift delta_N(k) of the outside wave relative to the inside one,
/// via the two-argument arctangent, range (-pi, pi]. Jump points (2*pi at
/// integer k, pi at k = s/N) are reported as deterministic one-sided limits.
double phase_shift(double k, int N);

/// Reduced form -pi*(N+1)*k (mod pi), representative in [-pi/2, pi/2].
/// Agrees with phase_shift modulo pi away from the jump points.
double reduced_phase(double k, int N);

enum class EigenForm { old_form, new_form };

/// A normalized eigenfunction of the two-cavity problem, evaluable on [0, L].
struct EigenfunctionRecord {
    ModelConfig cfg;
    LevelLabel label;
    double k = 0.0;
    EigenForm form = EigenForm::new_form;
    double normalization = 0.0;   ///< overall constant making the L2 norm 1
};

/// Normalization constant of the matched-sine (old) form, positive,
/// valid for every k > 0 (not only spectral roots).
double normalization_old(double k, int N);

/// Normalization constant of the amplitude/phase (new) form.
double normalization_new(double k, int N);

/// Solve level s of cfg and build its eigenfunction in the requested form.
EigenfunctionRecord make_eigenfunction(const ModelConfig& cfg, int s,
                                       EigenForm form = EigenForm::new_form,
                                       const SolverOptions& opts = {});

/// Eigenfunction for a prescribed momentum k (no root solving); used for
/// probing the forms off the spectrum.
EigenfunctionRecord make_eigenfunction_at(const ModelConfig& cfg, double k,
                                          EigenForm form);

/// The flat level k = n: sqrt(2/L) sin(n x), vanishing at the barrier.
EigenfunctionRecord make_exceptional_eigenfunction(const ModelConfig& cfg, int n);

/// psi(x); throws domain_error outside [0, L].
double eval(const EigenfunctionRecord& rec, double x);

/// One-sided psi'(x): the branch left of the barrier for x <= pi, right of
/// it otherwise.
double eval_derivative(const EigenfunctionRecord& rec, double x);

/// psi'(pi+) - psi'(pi-) in closed form; equals psi(pi)/(pi g) exactly when
/// k is a spectral root.
double derivative_jump(const EigenfunctionRecord& rec);

/// psi at the barrier.
double barrier_value(const EigenfunctionRecord& rec);

/// A_N and delta_N evaluated on the solved level s at coupling cfg.g.
double amplitude_at_coupling(const ModelConfig& cfg, int s,
                             const SolverOptions& opts = {});
double phase_at_coupling(const ModelConfig& cfg, int s,
                         const SolverOptions& opts = {});

} // namespace winter
