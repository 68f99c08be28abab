#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schromax/covering.hpp"
#include "schromax/grid.hpp"
#include "schromax/harness/config.hpp"
#include "schromax/harness/report.hpp"
#include "schromax/maximal.hpp"
#include "schromax/settools.hpp"

namespace schromax::harness {

/// a-cube (y0 + [0, r]^n) x (t0 + [0, r^a]).
struct Cube {
    std::vector<double> corner;
    double corner_time = 0.0;
    double side = 0.0;
};

/// Lattice of points^{n+1} samples spanning the closed cube.
SpaceTimeSamples cube_samples(const Cube& cube, double a, int points);

/// Cubes of side r (time side r^b) for lattice cells from occupied_cells.
std::vector<Cube> cubes_from_cells(std::span<const CellIndex> cells, int dim, double b, double r);

/// Largest |xi| carrying a nonzero coefficient (0 for the zero spectrum).
double spectral_radius(const SpectralFunction& spectrum);

/// ||sup over the sampled cube of |S_t f(x + y)| ||_2 against
/// (1 + rA)^n (1 + r^a A^a) ||f||_2, zero slack. Rejects A < 1, rA > 1 and
/// spectra with support outside B(0, A).
VerificationReport verify_cube(const SpectralFunction& spectrum, double a, const Cube& cube, double band,
                               int points = 9, unsigned threads = 0);

/// int sup over the samples |S_t f(x + y)|^2 dx against 2^{2n+2} N ||f||_2^2
/// for N cubes of a common side r with rA <= 1. Every sample must lie in
/// some cube.
VerificationReport verify_cover_bound(const SpectralFunction& spectrum, double a, const SpaceTimeSamples& samples,
                                      std::span<const Cube> cubes, double band, unsigned threads = 0);

/// Random band-limited draws (A in [1, 16], r in (0, 1/A], random corner).
std::vector<VerificationReport> random_cube_trials(const GridSpec& grid, double a, int trials, std::uint64_t seed,
                                                   unsigned threads = 0);

/// Random graphs of c t^beta covered by their occupied a-cubes at r = 2^{-m}
/// with rA <= 1, against random band-limited f.
std::vector<VerificationReport> random_cover_trials(const GridSpec& grid, double a, int trials, std::uint64_t seed,
                                                    unsigned threads = 0);

/// Cover of a set by its occupied a-cubes at r = 2^{-m}, with the sampling
/// used for both the cubes and the maximal function.
struct SetCover {
    SpaceTimeSamples samples;
    std::vector<Cube> cubes;
    double r = 0.0;
};

SetCover cover_set(const SetSpec& set, double a, int m, double resolution, double max_spatial_move);

/// Ratio reports across a modulation family f_lambda.
struct FamilyReport {
    std::vector<double> lambdas;
    std::vector<RatioReport> reports;
    /// max ratio / min ratio.
    double spread = 0.0;
    bool all_conclusive = false;
};

FamilyReport ratio_family(const ExperimentConfig& config, std::span<const double> lambdas, SumMode mode);

/// Time-only sets only; interval covering numbers with weights 2^{-2ms/a}.
RatioReport verify_thmA(const SpectralFunction& spectrum, const SetSpec& set, double a, double s,
                        RatioOptions options = {});
/// Space-time report with a-cube covering numbers and weights 2^{-2ms}.
RatioReport verify_thm1(const SpectralFunction& spectrum, const SetSpec& set, double a, double s,
                        RatioOptions options = {});

struct ScanRow {
    double s = 0.0;
    bool summable = false;
    bool converged = false;
    double exponent = 0.0;
    double total = 0.0;
    std::optional<double> ratio;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    double step = 0.0;
    /// Midpoint between the last non-summable and the first summable s;
    /// empty when the classification does not change inside the grid.
    std::optional<double> boundary;
    /// Threshold predicted from the set geometry, when known.
    std::optional<double> predicted;
    /// Summable flag nondecreasing in s.
    bool monotone = false;
    /// Observed boundary within one grid step of the prediction (or the
    /// whole grid on the predicted side).
    bool matches = false;
};

/// Evenly spaced s values from s_min to s_max inclusive.
std::vector<double> s_grid(double s_min, double s_max, double step);

/// Predicted summability threshold for thm1 weights (thmA weights for
/// time-only sets give the same value).
std::optional<double> predicted_threshold(const SetSpec& set, double a);

/// Classifies the covering series across s. When a spectrum is supplied the
/// maximal-function ratio is reported for each summable s.
ScanReport scan_s(const SetSpec& set, double a, std::span<const double> s_values, int m_min, int m_max,
                  SumMode mode = SumMode::thm1, const SpectralFunction* spectrum = nullptr,
                  const RatioOptions& options = {});

struct ConvergenceRow {
    std::size_t k = 0;
    double t = 0.0;
    double shift = 0.0;     // |Gamma(t_k)|
    double d = 0.0;         // max_x |S_{t_k} f(x + Gamma(t_k)) - f(x)|
    double envelope = 0.0;  // t_k M_a + |Gamma(t_k)| M_1
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  // row 0 is t = 0
    /// (2 pi)^{-n} int |xi|^a |fhat| and (2 pi)^{-n} int |xi| |fhat|.
    double time_lipschitz = 0.0;
    double space_lipschitz = 0.0;
    /// C = d_1 / envelope_1 and whether d_k <= C envelope_k for every k.
    double fitted_constant = 0.0;
    bool fitted_bound_holds = false;
    std::optional<std::size_t> first_fitted_violation;
    /// d_k <= envelope_k for every k (multiplier Lipschitz bound, C = 1).
    bool envelope_holds = false;
    /// d_k strictly decreasing from k = 3 on.
    bool tail_decreasing = false;
    bool pass() const noexcept { return envelope_holds && tail_decreasing; }
};

/// The set must be a time sequence (no spatial shift) or a curve sequence.
ConvergenceReport convergence_experiment(const SpectralFunction& spectrum, double a, const SetSpec& set, int k_max);

/// Experiment names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Runs the experiment named in config.experiment. Throws ConfigError or
/// std::invalid_argument for unusable configurations.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace schromax::harness
