#pragma once

// Space-time sets E in R^{n+1}: graphs of Holder curves, time sequences,
// boxes, and their finite samplings.

#include <cstddef>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace schromax {

enum class CurveKind { power, weierstrass, constant, tabulated };

/// Gamma : [0, 1] -> R^n acting along a unit direction e:
///   power        c t^beta e            (0 < beta <= 1)
///   weierstrass  c sum_{j=1}^J 2^{-beta j} cos(2^j t) e   (0 < beta <= 1)
///   constant     c e                   (any beta > 0)
///   tabulated    piecewise-linear through equispaced samples on [0, 1]
/// Every curve carries a Holder constant C with
/// |Gamma(t1) - Gamma(t2)| <= C |t1 - t2|^beta on [0, 1].
class CurveSpec {
public:
    static CurveSpec power(double beta, double amplitude = 1.0, std::vector<double> direction = {1.0});
    static CurveSpec weierstrass(double beta, int terms = 20, double amplitude = 1.0,
                                 std::vector<double> direction = {1.0});
    static CurveSpec constant(double value, double beta = 1.0, std::vector<double> direction = {1.0});
    static CurveSpec tabulated(std::vector<double> samples, double beta,
                               std::vector<double> direction = {1.0});

    CurveKind kind() const noexcept { return kind_; }
    double beta() const noexcept { return beta_; }
    double amplitude() const noexcept { return amplitude_; }
    int terms() const noexcept { return terms_; }
    double holder_constant() const noexcept { return holder_; }
    int dim() const noexcept { return static_cast<int>(direction_.size()); }
    std::span<const double> direction() const noexcept { return direction_; }

    /// Scalar profile g(t) with Gamma(t) = g(t) e.
    double profile(double t) const;
    /// Writes Gamma(t) into out (size dim()).
    void position(double t, std::span<double> out) const;

private:
    CurveSpec() = default;
    void set_direction(std::vector<double> direction);

    CurveKind kind_ = CurveKind::constant;
    double beta_ = 1.0;
    double amplitude_ = 0.0;
    int terms_ = 0;
    double holder_ = 0.0;
    std::vector<double> direction_{1.0};
    std::vector<double> table_;  // tabulated samples, or weierstrass coefficients 2^{-beta j}
};

enum class SequenceKind { geometric, power, explicit_list };

/// Strictly decreasing sequence 1 >= t_1 > t_2 > ... > 0.
///   geometric  t_k = rho^k
///   power      t_k = k^{-delta}
///   explicit   a finite list
/// Generator kinds are infinite; max_terms caps enumeration.
class SequenceSpec {
public:
    static SequenceSpec geometric(double ratio, std::size_t max_terms = 100'000'000);
    static SequenceSpec power(double decay, std::size_t max_terms = 100'000'000);
    static SequenceSpec explicit_list(std::vector<double> values);
    static SequenceSpec load(const std::filesystem::path& path);

    SequenceKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }
    bool infinite() const noexcept { return kind_ != SequenceKind::explicit_list; }
    std::size_t max_terms() const noexcept { return max_terms_; }
    /// Optional summability tag: sum t_k^gamma < infinity is known to hold.
    std::optional<double> gamma;

    /// t_k for k >= 1.
    double term(std::size_t k) const;
    /// Leading terms t_1..t_K where K is the larger of min_head and the number
    /// of terms >= cutoff (capped by the sequence length / max_terms).
    std::vector<double> leading_terms(double cutoff, std::size_t min_head = 0) const;
    /// True when leading_terms(cutoff) reached every term >= cutoff.
    bool reaches(double cutoff) const;

private:
    SequenceSpec() = default;

    SequenceKind kind_ = SequenceKind::explicit_list;
    double parameter_ = 0.0;
    std::size_t max_terms_ = 0;
    std::vector<double> values_;
};

struct TimeInterval {
    double length = 1.0;  // [0, length]; length 0 is the single point {0}
};
struct TimeSequence {
    SequenceSpec sequence;
};
struct CurveGraph {
    CurveSpec curve;  // {(Gamma(t), t) : 0 <= t <= 1}
};
struct CurveSequence {
    CurveSpec curve;  // {(Gamma(t_k), t_k) : k >= 1}
    SequenceSpec sequence;
};
struct Box {
    std::vector<double> corner;  // y_0
    double corner_time = 0.0;    // t_0
    double side = 1.0;           // r (0 gives the single point (y_0, t_0))
    double exponent = 2.0;       // time side r^exponent
};

class SetSpec {
public:
    using Shape = std::variant<TimeInterval, TimeSequence, CurveGraph, CurveSequence, Box>;

    static SetSpec time_interval(double length, int dim = 1);
    static SetSpec time_sequence(SequenceSpec sequence, int dim = 1);
    static SetSpec curve_graph(CurveSpec curve);
    static SetSpec curve_sequence(CurveSpec curve, SequenceSpec sequence);
    static SetSpec box(std::vector<double> corner, double corner_time, double side, double exponent);
    /// {(0, 0)}, the degenerate interval [0, 0].
    static SetSpec origin(int dim = 1) { return time_interval(0.0, dim); }

    int dim() const noexcept { return dim_; }
    const Shape& shape() const noexcept { return shape_; }
    /// E lies in {0} x R (interval or sequence sets).
    bool time_only() const noexcept;
    /// Connected sets sampled along a continuous parameter.
    bool continuum() const noexcept;
    /// Curve component, if any.
    const CurveSpec* curve() const noexcept;

private:
    SetSpec(int dim, Shape shape);

    int dim_;
    Shape shape_;
};

/// Optional caps on consecutive sample moves, enforced by bisecting the
/// parameter step.
struct SamplingLimits {
    double max_spatial_move = std::numeric_limits<double>::infinity();
    double max_time_move = std::numeric_limits<double>::infinity();
};

/// Finite sampling of E. Positions are stored as dim() consecutive values per
/// point.
struct SpaceTimeSamples {
    int dim = 1;
    std::vector<double> times;
    std::vector<double> positions;
    /// Parameter step bound used (the resolution argument).
    double density = 0.0;
    /// Largest consecutive moves along the parametrization (continuum sets
    /// only; zero for discrete sets).
    double max_spatial_step = 0.0;
    double max_time_step = 0.0;
    bool continuum = false;

    std::size_t size() const noexcept { return times.size(); }
    std::span<const double> position(std::size_t i) const noexcept {
        return {positions.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

/// Sorted, deduplicated time values.
using TimeSamples = std::vector<double>;

/// Number of sequence terms always included by sample_set.
inline constexpr std::size_t kSequenceHead = 10;

SpaceTimeSamples sample_set(const SetSpec& spec, double resolution, const SamplingLimits& limits = {});

TimeSamples project_time(const SpaceTimeSamples& samples);

/// #A_j = #{k : 2^{-j-1} < t_k <= 2^{-j}} for j = 0..j_max, by enumeration.
std::vector<std::size_t> dyadic_block_counts(const SequenceSpec& sequence, int j_max);

struct EffectiveExponents {
    double a1;  // 1 / beta
    double a2;  // max(a, a1)
};

EffectiveExponents effective_exponents(const SetSpec& spec, double a);

/// Partial sums of sum_k t_k^gamma at K = 10, 100, ..., k_max (decades) and a
/// growth classification: convergent when the last decade increment is below
/// 95% of the previous one (or vanishes).
struct SummabilityProbe {
    std::vector<std::size_t> checkpoints;
    std::vector<double> partial_sums;
    bool convergent = false;
};

SummabilityProbe probe_power_sum(const SequenceSpec& sequence, double gamma, std::size_t k_max);

}  // namespace schromax
