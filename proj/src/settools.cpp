#include "schromax/settools.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "schromax/numerics.hpp"

namespace schromax {
namespace {

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

// Holder constant of the truncated lacunary cosine series with unit
// amplitude. For beta < 1 split the sum at 2^j d = 2 and bound the two
// geometric pieces; for beta = 1 the truncated series is J-Lipschitz.
double weierstrass_holder(double beta, int terms) {
    if (beta >= 1.0) return static_cast<double>(terms);
    const double q = std::pow(2.0, 1.0 - beta);
    return std::pow(2.0, 1.0 - beta) * (q / (q - 1.0) + 1.0 / (1.0 - std::pow(2.0, -beta)));
}

double tabulated_value(std::span<const double> table, double t) {
    const auto intervals = static_cast<double>(table.size() - 1);
    const double u = std::clamp(t, 0.0, 1.0) * intervals;
    const auto i = std::min(static_cast<std::size_t>(u), table.size() - 2);
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * table[i] + w * table[i + 1];
}

}  // namespace

void CurveSpec::set_direction(std::vector<double> direction) {
    require(!direction.empty() && static_cast<int>(direction.size()) <= 3,
            "CurveSpec: direction must have 1 to 3 components");
    double norm = 0.0;
    for (double v : direction) norm += v * v;
    norm = std::sqrt(norm);
    require(norm > 0.0 && std::isfinite(norm), "CurveSpec: direction must be a nonzero finite vector");
    for (double& v : direction) v /= norm;
    direction_ = std::move(direction);
}

CurveSpec CurveSpec::power(double beta, double amplitude, std::vector<double> direction) {
    require(beta > 0.0 && beta <= 1.0, "CurveSpec: power curves need 0 < beta <= 1");
    require(std::isfinite(amplitude), "CurveSpec: amplitude must be finite");
    CurveSpec c;
    c.kind_ = CurveKind::power;
    c.beta_ = beta;
    c.amplitude_ = amplitude;
    c.holder_ = std::abs(amplitude);  // t^beta is subadditive for beta <= 1
    c.set_direction(std::move(direction));
    return c;
}

CurveSpec CurveSpec::weierstrass(double beta, int terms, double amplitude, std::vector<double> direction) {
    require(beta > 0.0 && beta <= 1.0, "CurveSpec: weierstrass curves need 0 < beta <= 1");
    require(terms >= 1 && terms <= 50, "CurveSpec: weierstrass term count must be in [1, 50]");
    require(std::isfinite(amplitude), "CurveSpec: amplitude must be finite");
    CurveSpec c;
    c.kind_ = CurveKind::weierstrass;
    c.beta_ = beta;
    c.amplitude_ = amplitude;
    c.terms_ = terms;
    c.holder_ = std::abs(amplitude) * weierstrass_holder(beta, terms);
    for (int j = 1; j <= terms; ++j) c.table_.push_back(std::pow(2.0, -beta * j));
    c.set_direction(std::move(direction));
    return c;
}

CurveSpec CurveSpec::constant(double value, double beta, std::vector<double> direction) {
    require(beta > 0.0 && std::isfinite(beta), "CurveSpec: beta must be positive");
    require(std::isfinite(value), "CurveSpec: constant value must be finite");
    CurveSpec c;
    c.kind_ = CurveKind::constant;
    c.beta_ = beta;
    c.amplitude_ = value;
    c.holder_ = 0.0;
    c.set_direction(std::move(direction));
    return c;
}

CurveSpec CurveSpec::tabulated(std::vector<double> samples, double beta, std::vector<double> direction) {
    require(samples.size() >= 2 && samples.size() <= 4097,
            "CurveSpec: tabulated curves need 2 to 4097 samples");
    require(beta > 0.0 && beta <= 1.0, "CurveSpec: tabulated curves need 0 < beta <= 1");
    for (double v : samples) require(std::isfinite(v), "CurveSpec: tabulated samples must be finite");
    CurveSpec c;
    c.kind_ = CurveKind::tabulated;
    c.beta_ = beta;
    c.amplitude_ = 1.0;
    c.table_ = std::move(samples);
    c.set_direction(std::move(direction));
    // Largest Holder quotient over nodes and segment midpoints.
    const std::size_t count = 2 * c.table_.size() - 1;
    std::vector<double> t(count), g(count);
    for (std::size_t i = 0; i < count; ++i) {
        t[i] = static_cast<double>(i) / static_cast<double>(count - 1);
        g[i] = tabulated_value(c.table_, t[i]);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            best = std::max(best, std::abs(g[j] - g[i]) / std::pow(t[j] - t[i], beta));
        }
    }
    c.holder_ = best;
    return c;
}

double CurveSpec::profile(double t) const {
    switch (kind_) {
        case CurveKind::power: return t <= 0.0 ? 0.0 : amplitude_ * std::pow(t, beta_);
        case CurveKind::constant: return amplitude_;
        case CurveKind::tabulated: return tabulated_value(table_, t);
        case CurveKind::weierstrass: {
            double sum = 0.0;
            for (int j = 1; j <= terms_; ++j) {
                sum += table_[static_cast<std::size_t>(j - 1)] * std::cos(std::ldexp(t, j));
            }
            return amplitude_ * sum;
        }
    }
    return 0.0;
}

void CurveSpec::position(double t, std::span<double> out) const {
    const double g = profile(t);
    for (std::size_t d = 0; d < direction_.size(); ++d) out[d] = g * direction_[d];
}

SequenceSpec SequenceSpec::geometric(double ratio, std::size_t max_terms) {
    require(ratio > 0.0 && ratio < 1.0, "SequenceSpec: geometric ratio must lie in (0, 1)");
    require(max_terms >= 1, "SequenceSpec: max_terms must be positive");
    SequenceSpec s;
    s.kind_ = SequenceKind::geometric;
    s.parameter_ = ratio;
    // Keep every term a positive normal double so the sequence stays strictly decreasing.
    const double normal_limit =
        std::floor(std::log(std::numeric_limits<double>::min()) / std::log(ratio));
    s.max_terms_ = static_cast<std::size_t>(std::min(static_cast<double>(max_terms), normal_limit));
    return s;
}

SequenceSpec SequenceSpec::power(double decay, std::size_t max_terms) {
    require(decay > 0.0 && std::isfinite(decay), "SequenceSpec: power decay must be positive");
    require(max_terms >= 1, "SequenceSpec: max_terms must be positive");
    SequenceSpec s;
    s.kind_ = SequenceKind::power;
    s.parameter_ = decay;
    const double normal_limit = std::floor(std::pow(std::numeric_limits<double>::min(), -1.0 / decay));
    s.max_terms_ = static_cast<std::size_t>(std::min(static_cast<double>(max_terms), normal_limit));
    return s;
}

SequenceSpec SequenceSpec::explicit_list(std::vector<double> values) {
    require(!values.empty(), "SequenceSpec: explicit list is empty");
    require(values.front() <= 1.0 && values.back() > 0.0,
            "SequenceSpec: terms must lie in (0, 1]");
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(std::isfinite(values[i]), "SequenceSpec: terms must be finite");
        if (i > 0) require(values[i] < values[i - 1], "SequenceSpec: terms must strictly decrease");
    }
    SequenceSpec s;
    s.kind_ = SequenceKind::explicit_list;
    s.max_terms_ = values.size();
    s.values_ = std::move(values);
    return s;
}

SequenceSpec SequenceSpec::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("SequenceSpec: cannot open " + path.string());
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        double v = 0.0;
        if (line.empty() || line[0] == '#') continue;
        if (!(fields >> v)) throw std::invalid_argument("SequenceSpec: bad value '" + line + "'");
        values.push_back(v);
    }
    return explicit_list(std::move(values));
}

double SequenceSpec::term(std::size_t k) const {
    require(k >= 1 && k <= max_terms_, "SequenceSpec: term index out of range");
    switch (kind_) {
        case SequenceKind::geometric: return std::pow(parameter_, static_cast<double>(k));
        case SequenceKind::power: return std::pow(static_cast<double>(k), -parameter_);
        case SequenceKind::explicit_list: return values_[k - 1];
    }
    return 0.0;
}

std::vector<double> SequenceSpec::leading_terms(double cutoff, std::size_t min_head) const {
    std::vector<double> out;
    for (std::size_t k = 1; k <= max_terms_; ++k) {
        const double t = term(k);
        if (k > min_head && t < cutoff) break;
        out.push_back(t);
    }
    return out;
}

bool SequenceSpec::reaches(double cutoff) const {
    return !infinite() || term(max_terms_) < cutoff;
}

SetSpec::SetSpec(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {
    require(dim >= 1 && dim <= 3, "SetSpec: spatial dimension must be 1, 2 or 3");
}

SetSpec SetSpec::time_interval(double length, int dim) {
    require(length >= 0.0 && std::isfinite(length), "SetSpec: interval length must be >= 0");
    return SetSpec(dim, TimeInterval{length});
}

SetSpec SetSpec::time_sequence(SequenceSpec sequence, int dim) {
    return SetSpec(dim, TimeSequence{std::move(sequence)});
}

SetSpec SetSpec::curve_graph(CurveSpec curve) {
    const int dim = curve.dim();
    return SetSpec(dim, CurveGraph{std::move(curve)});
}

SetSpec SetSpec::curve_sequence(CurveSpec curve, SequenceSpec sequence) {
    const int dim = curve.dim();
    return SetSpec(dim, CurveSequence{std::move(curve), std::move(sequence)});
}

SetSpec SetSpec::box(std::vector<double> corner, double corner_time, double side, double exponent) {
    require(!corner.empty() && corner.size() <= 3, "SetSpec: box corner must have 1 to 3 components");
    require(side >= 0.0 && std::isfinite(side), "SetSpec: box side must be >= 0");
    require(exponent > 0.0 && std::isfinite(exponent), "SetSpec: box exponent must be positive");
    require(std::isfinite(corner_time), "SetSpec: box corner time must be finite");
    for (double v : corner) require(std::isfinite(v), "SetSpec: box corner must be finite");
    const int dim = static_cast<int>(corner.size());
    return SetSpec(dim, Box{std::move(corner), corner_time, side, exponent});
}

bool SetSpec::time_only() const noexcept {
    return std::holds_alternative<TimeInterval>(shape_) || std::holds_alternative<TimeSequence>(shape_);
}

bool SetSpec::continuum() const noexcept {
    return std::holds_alternative<TimeInterval>(shape_) || std::holds_alternative<CurveGraph>(shape_) ||
           std::holds_alternative<Box>(shape_);
}

const CurveSpec* SetSpec::curve() const noexcept {
    if (const auto* g = std::get_if<CurveGraph>(&shape_)) return &g->curve;
    if (const auto* s = std::get_if<CurveSequence>(&shape_)) return &s->curve;
    return nullptr;
}

namespace {

struct SampleBuilder {
    SpaceTimeSamples out;

    void push(double t, std::span<const double> y) {
        out.times.push_back(t);
        out.positions.insert(out.positions.end(), y.begin(), y.end());
    }
};

double max_coordinate_move(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) m = std::max(m, std::abs(a[d] - b[d]));
    return m;
}

// Appends samples on (t0, t1], bisecting until each spatial move is within
// the limit. The point at t0 is already present.
void refine_curve(const CurveSpec& curve, double t0, const std::array<double, 3>& y0, double t1,
                  double max_move, int depth, SampleBuilder& builder) {
    const auto dim = static_cast<std::size_t>(curve.dim());
    std::array<double, 3> y1{};
    curve.position(t1, std::span(y1.data(), dim));
    if (depth < 60 && max_coordinate_move(std::span(y0.data(), dim), std::span(y1.data(), dim)) > max_move) {
        const double mid = 0.5 * (t0 + t1);
        std::array<double, 3> ym{};
        curve.position(mid, std::span(ym.data(), dim));
        refine_curve(curve, t0, y0, mid, max_move, depth + 1, builder);
        refine_curve(curve, mid, ym, t1, max_move, depth + 1, builder);
        return;
    }
    builder.push(t1, std::span<const double>(y1.data(), dim));
}

void sample_graph(const CurveSpec& curve, double step, const SamplingLimits& limits, SampleBuilder& b) {
    const auto intervals = static_cast<std::size_t>(std::ceil(1.0 / step));
    const auto dim = static_cast<std::size_t>(curve.dim());
    std::array<double, 3> y{};
    curve.position(0.0, std::span(y.data(), dim));
    b.push(0.0, std::span<const double>(y.data(), dim));
    for (std::size_t i = 1; i <= intervals; ++i) {
        const double t0 = static_cast<double>(i - 1) / static_cast<double>(intervals);
        const double t1 = static_cast<double>(i) / static_cast<double>(intervals);
        curve.position(t0, std::span(y.data(), dim));
        refine_curve(curve, t0, y, t1, limits.max_spatial_move, 0, b);
    }
}

void sample_box(const Box& box, double resolution, const SamplingLimits& limits, SampleBuilder& b,
                double& spatial_step, double& time_step) {
    const std::size_t dim = box.corner.size();
    if (box.side == 0.0) {
        b.push(box.corner_time, box.corner);
        return;
    }
    const double time_side = std::pow(box.side, box.exponent);
    const auto nx = static_cast<std::size_t>(
        std::ceil(box.side / std::min(resolution, limits.max_spatial_move)));
    const auto nt = static_cast<std::size_t>(
        std::ceil(time_side / std::min(resolution, limits.max_time_move)));
    spatial_step = box.side / static_cast<double>(nx);
    time_step = time_side / static_cast<double>(nt);
    std::size_t lattice = 1;
    for (std::size_t d = 0; d < dim; ++d) lattice *= nx + 1;
    std::vector<double> y(dim);
    for (std::size_t it = 0; it <= nt; ++it) {
        const double t = box.corner_time + time_side * static_cast<double>(it) / static_cast<double>(nt);
        for (std::size_t p = 0; p < lattice; ++p) {
            std::size_t rest = p;
            for (std::size_t d = dim; d-- > 0;) {
                y[d] = box.corner[d] + box.side * static_cast<double>(rest % (nx + 1)) / static_cast<double>(nx);
                rest /= nx + 1;
            }
            b.push(t, y);
        }
    }
}

}  // namespace

SpaceTimeSamples sample_set(const SetSpec& spec, double resolution, const SamplingLimits& limits) {
    require(resolution > 0.0 && std::isfinite(resolution), "sample_set: resolution must be positive");
    require(limits.max_spatial_move > 0.0 && limits.max_time_move > 0.0,
            "sample_set: sampling limits must be positive");
    SampleBuilder b;
    b.out.dim = spec.dim();
    b.out.density = resolution;
    b.out.continuum = spec.continuum();
    const std::vector<double> zero(static_cast<std::size_t>(spec.dim()), 0.0);
    const double time_step = std::min(resolution, limits.max_time_move);

    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, TimeInterval>) {
                if (shape.length == 0.0) {
                    b.push(0.0, zero);
                    return;
                }
                const auto n = static_cast<std::size_t>(std::ceil(shape.length / time_step));
                for (std::size_t i = 0; i <= n; ++i) {
                    b.push(shape.length * static_cast<double>(i) / static_cast<double>(n), zero);
                }
            } else if constexpr (std::is_same_v<T, TimeSequence>) {
                for (double t : shape.sequence.leading_terms(resolution, kSequenceHead)) b.push(t, zero);
            } else if constexpr (std::is_same_v<T, CurveGraph>) {
                sample_graph(shape.curve, time_step, limits, b);
            } else if constexpr (std::is_same_v<T, CurveSequence>) {
                std::vector<double> y(zero.size());
                for (double t : shape.sequence.leading_terms(resolution, kSequenceHead)) {
                    shape.curve.position(t, y);
                    b.push(t, y);
                }
            } else {
                sample_box(shape, resolution, limits, b, b.out.max_spatial_step, b.out.max_time_step);
            }
        },
        spec.shape());

    SpaceTimeSamples& out = b.out;
    if (out.continuum && !std::holds_alternative<Box>(spec.shape())) {
        for (std::size_t i = 1; i < out.size(); ++i) {
            out.max_time_step = std::max(out.max_time_step, std::abs(out.times[i] - out.times[i - 1]));
            out.max_spatial_step =
                std::max(out.max_spatial_step, max_coordinate_move(out.position(i), out.position(i - 1)));
        }
    }
    return std::move(b.out);
}

TimeSamples project_time(const SpaceTimeSamples& samples) {
    TimeSamples t = samples.times;
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

std::vector<std::size_t> dyadic_block_counts(const SequenceSpec& sequence, int j_max) {
    require(j_max >= 0, "dyadic_block_counts: j_max must be >= 0");
    const double floor_value = std::ldexp(1.0, -j_max - 1);
    if (!sequence.reaches(std::nextafter(floor_value, 1.0))) {
        throw std::invalid_argument("dyadic_block_counts: max_terms too small for exact counts");
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(j_max) + 1, 0);
    for (std::size_t k = 1; k <= sequence.max_terms(); ++k) {
        const double t = sequence.term(k);
        if (t <= floor_value) break;
        // Block j with 2^{-j-1} < t <= 2^{-j}.
        int j = static_cast<int>(std::floor(-std::log2(t)));
        while (j > 0 && std::ldexp(1.0, -j) < t) --j;
        while (std::ldexp(1.0, -j - 1) >= t) ++j;
        if (j <= j_max) ++counts[static_cast<std::size_t>(j)];
    }
    return counts;
}

EffectiveExponents effective_exponents(const SetSpec& spec, double a) {
    require(a > 0.0, "effective_exponents: a must be positive");
    const CurveSpec* curve = spec.curve();
    require(curve != nullptr, "effective_exponents: set has no curve component");
    const double a1 = 1.0 / curve->beta();
    return {a1, std::max(a, a1)};
}

SummabilityProbe probe_power_sum(const SequenceSpec& sequence, double gamma, std::size_t k_max) {
    require(gamma > 0.0, "probe_power_sum: gamma must be positive");
    SummabilityProbe probe;
    const std::size_t limit = std::min(k_max, sequence.max_terms());
    CompensatedSum acc;
    std::size_t next = 10;
    for (std::size_t k = 1; k <= limit; ++k) {
        acc.add(std::pow(sequence.term(k), gamma));
        if (k == next || k == limit) {
            probe.checkpoints.push_back(k);
            probe.partial_sums.push_back(acc.value());
            if (k == next) next *= 10;
        }
    }
    const auto& s = probe.partial_sums;
    if (s.size() < 3) {
        probe.convergent = !sequence.infinite();
        return probe;
    }
    const double last = s[s.size() - 1] - s[s.size() - 2];
    const double prev = s[s.size() - 2] - s[s.size() - 3];
    probe.convergent = last == 0.0 || last < 0.95 * prev;
    return probe;
}

}  // namespace schromax
