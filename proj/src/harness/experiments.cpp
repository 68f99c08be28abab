#include "schromax/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <variant>

#include "schromax/families.hpp"
#include "schromax/numerics.hpp"
#include "schromax/propagator.hpp"

namespace schromax::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

// Rounding allowance for products like r * A that are exactly 1 in exact arithmetic.
constexpr double kUnitTolerance = 1e-12;

Json grid_json(const GridSpec& g) {
    return Json{{"n", g.dim()}, {"L", g.length()}, {"N", g.samples()}};
}

std::vector<double> unit_vector(int dim) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[0] = 1.0;
    return e;
}

// Lambda-free replacement for gamma when the sequence carries no tag:
// geometric and finite sequences are summable for every gamma > 0, and
// k^{-delta} for every gamma > 1/delta.
double infimum_gamma(const SequenceSpec& seq) {
    if (seq.gamma) return *seq.gamma;
    switch (seq.kind()) {
        case SequenceKind::power: return 1.0 / seq.parameter();
        case SequenceKind::geometric:
        case SequenceKind::explicit_list: return 0.0;
    }
    return 0.0;
}

std::string method_text(CountMethod m) { return std::string(to_string(m)); }

Table profile_table(const CoveringProfile& profile) {
    Table t{"profile", {"m", "r", "count", "method"}, {}};
    for (const auto& e : profile.entries)
        t.add_row({std::to_string(e.m), format_double(e.r), std::to_string(e.count), method_text(e.method)});
    return t;
}

Table sum_table(const CoveringProfile& profile, const SumReport& sum) {
    Table t{"sum", {"m", "r", "count", "term", "partial_sum"}, {}};
    for (std::size_t i = 0; i < sum.m.size(); ++i)
        t.add_row({std::to_string(sum.m[i]), format_double(profile.entries[i].r),
                   std::to_string(profile.entries[i].count), format_double(sum.terms[i]),
                   format_double(sum.partial_sums[i])});
    return t;
}

Json sum_json(const SumReport& sum) {
    return Json{{"s", sum.s},
                {"mode", sum.mode == SumMode::thm1 ? "thm1" : "thmA"},
                {"a", sum.a},
                {"m_max", sum.m_max},
                {"total", sum.total()},
                {"converged", sum.converged},
                {"growth_exponent", sum.growth_exponent},
                {"summable", sum.summable}};
}

Json ratio_json(const RatioReport& r) {
    return Json{{"lhs", r.lhs},
                {"rhs", r.rhs},
                {"ratio", r.ratio},
                {"sobolev", r.sobolev},
                {"a", r.a},
                {"s", r.s},
                {"sample_count", r.sample_count},
                {"sample_density", r.sample_density},
                {"conclusive", r.conclusive},
                {"sum", sum_json(r.sum)}};
}

PlotSeries profile_series(const CoveringProfile& profile) {
    PlotSeries p{"profile", {}, {}};
    for (const auto& e : profile.entries) {
        p.x.push_back(e.m);
        p.y.push_back(static_cast<double>(e.count));
    }
    return p;
}

RatioOptions ratio_options(const ExperimentConfig& c, SumMode mode) {
    RatioOptions o;
    o.m_min = c.m_min;
    o.m_max = c.m_max;
    o.resolution = c.resolution;
    o.mode = mode;
    o.threads = c.threads;
    return o;
}

bool inside(const Cube& cube, double b, std::span<const double> y, double t) {
    const double time_side = std::pow(cube.side, b);
    auto within = [](double v, double lo, double len) {
        const double tol = kUnitTolerance * std::max({1.0, std::abs(lo), len});
        return v >= lo - tol && v <= lo + len + tol;
    };
    if (!within(t, cube.corner_time, time_side)) return false;
    for (std::size_t d = 0; d < y.size(); ++d)
        if (!within(y[d], cube.corner[d], cube.side)) return false;
    return true;
}

}  // namespace

SpaceTimeSamples cube_samples(const Cube& cube, double a, int points) {
    require(points >= 1, "cube_samples: points must be >= 1");
    require(cube.side >= 0.0, "cube_samples: negative side");
    const int dim = static_cast<int>(cube.corner.size());
    require(dim >= 1 && dim <= kMaxDim, "cube_samples: bad corner dimension");
    const std::size_t per_axis = cube.side > 0.0 ? static_cast<std::size_t>(points) : 1;
    const double time_side = cube.side > 0.0 ? std::pow(cube.side, a) : 0.0;
    auto node = [&](std::size_t i, double len) {
        return per_axis == 1 ? 0.0 : len * static_cast<double>(i) / static_cast<double>(per_axis - 1);
    };

    SpaceTimeSamples out;
    out.dim = dim;
    out.density = per_axis == 1 ? 0.0 : cube.side / static_cast<double>(per_axis - 1);
    std::size_t total = per_axis;
    for (int d = 0; d < dim; ++d) total *= per_axis;
    out.times.reserve(total);
    out.positions.reserve(total * static_cast<std::size_t>(dim));
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        std::array<std::size_t, kMaxDim + 1> idx{};
        for (int d = dim; d >= 0; --d) {
            idx[static_cast<std::size_t>(d)] = rest % per_axis;
            rest /= per_axis;
        }
        out.times.push_back(cube.corner_time + node(idx[0], time_side));
        for (int d = 0; d < dim; ++d)
            out.positions.push_back(cube.corner[static_cast<std::size_t>(d)] +
                                    node(idx[static_cast<std::size_t>(d) + 1], cube.side));
    }
    return out;
}

std::vector<Cube> cubes_from_cells(std::span<const CellIndex> cells, int dim, double b, double r) {
    require(r > 0.0 && b > 0.0, "cubes_from_cells: need r > 0 and b > 0");
    const double time_side = std::pow(r, b);
    std::vector<Cube> cubes;
    cubes.reserve(cells.size());
    for (const auto& c : cells) {
        Cube cube;
        cube.side = r;
        cube.corner_time = c[0] * time_side;
        for (int d = 0; d < dim; ++d) cube.corner.push_back(c[static_cast<std::size_t>(d) + 1] * r);
        cubes.push_back(std::move(cube));
    }
    return cubes;
}

double spectral_radius(const SpectralFunction& spectrum) {
    const auto coeffs = spectrum.coefficients();
    double radius_sq = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != Complex{}) radius_sq = std::max(radius_sq, spectrum.spec().frequency_norm_sq(i));
    return std::sqrt(radius_sq);
}

VerificationReport verify_cube(const SpectralFunction& spectrum, double a, const Cube& cube, double band, int points,
                               unsigned threads) {
    const auto start = Clock::now();
    const GridSpec& g = spectrum.spec();
    require(a > 0.0, "verify_cube: a must be positive");
    require(band >= 1.0, "verify_cube: band limit A must be >= 1");
    require(static_cast<int>(cube.corner.size()) == g.dim(), "verify_cube: corner dimension mismatch");
    require(cube.side >= 0.0, "verify_cube: negative side");
    require(cube.side * band <= 1.0 + kUnitTolerance, "verify_cube: need r A <= 1");
    require(spectral_radius(spectrum) <= band * (1.0 + kUnitTolerance), "verify_cube: f is not band-limited to A");

    const double norm = l2_norm(from_spectrum(spectrum));
    const auto samples = cube_samples(cube, a, points);
    const auto field = maximal_field(spectrum, samples, a, threads);

    VerificationReport rep;
    rep.name = "verify-cube";
    const double rA = cube.side * band;
    rep.measured = l2_norm(field);
    rep.bound = std::pow(1.0 + rA, g.dim()) * (1.0 + std::pow(cube.side, a) * std::pow(band, a)) * norm;
    rep.pass = rep.measured <= rep.bound + rep.slack;
    rep.inputs = Json{{"grid", grid_json(g)},
                      {"a", a},
                      {"A", band},
                      {"r", cube.side},
                      {"corner", cube.corner},
                      {"corner_t", cube.corner_time},
                      {"points", points},
                      {"samples", samples.size()},
                      {"f_norm", norm}};
    rep.runtime_seconds = seconds_since(start);
    return rep;
}

VerificationReport verify_cover_bound(const SpectralFunction& spectrum, double a, const SpaceTimeSamples& samples,
                                      std::span<const Cube> cubes, double band, unsigned threads) {
    const auto start = Clock::now();
    const GridSpec& g = spectrum.spec();
    require(a > 0.0, "verify_cover_bound: a must be positive");
    require(band >= 1.0, "verify_cover_bound: band limit A must be >= 1");
    require(!cubes.empty(), "verify_cover_bound: no cubes");
    require(samples.size() > 0, "verify_cover_bound: no samples");
    require(samples.dim == g.dim(), "verify_cover_bound: sample dimension mismatch");
    const double r = cubes.front().side;
    for (const auto& c : cubes) {
        require(c.side == r, "verify_cover_bound: cubes must share one side length");
        require(static_cast<int>(c.corner.size()) == g.dim(), "verify_cover_bound: cube dimension mismatch");
    }
    require(r > 0.0 && r * band <= 1.0 + kUnitTolerance, "verify_cover_bound: need 0 < r and r A <= 1");
    require(spectral_radius(spectrum) <= band * (1.0 + kUnitTolerance),
            "verify_cover_bound: f is not band-limited to A");

    // Sort cube corners by time so the containment search scans a window.
    std::vector<std::size_t> order(cubes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return cubes[x].corner_time < cubes[y].corner_time; });
    const double time_side = std::pow(r, a);
    std::size_t uncovered = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = samples.times[i];
        auto first = std::lower_bound(order.begin(), order.end(), t - time_side * (1.0 + 1e-9) - kUnitTolerance,
                                      [&](std::size_t c, double v) { return cubes[c].corner_time < v; });
        bool found = false;
        for (auto it = first; it != order.end() && !found; ++it) {
            if (cubes[*it].corner_time > t + kUnitTolerance * std::max(1.0, std::abs(t))) break;
            found = inside(cubes[*it], a, samples.position(i), t);
        }
        if (!found) ++uncovered;
    }
    require(uncovered == 0, "verify_cover_bound: some samples lie outside every cube");

    const double norm = l2_norm(from_spectrum(spectrum));
    const auto field = maximal_field(spectrum, samples, a, threads);
    const double lhs = l2_norm(field);

    VerificationReport rep;
    rep.name = "verify-cover";
    rep.measured = lhs * lhs;
    rep.bound = std::ldexp(1.0, 2 * g.dim() + 2) * static_cast<double>(cubes.size()) * norm * norm;
    rep.pass = rep.measured <= rep.bound + rep.slack;
    rep.inputs = Json{{"grid", grid_json(g)}, {"a", a},          {"A", band},
                      {"r", r},               {"cubes", cubes.size()}, {"samples", samples.size()},
                      {"f_norm", norm}};
    rep.runtime_seconds = seconds_since(start);
    return rep;
}

std::vector<VerificationReport> random_cube_trials(const GridSpec& grid, double a, int trials, std::uint64_t seed,
                                                   unsigned threads) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a_max = std::min(16.0, 0.99 * grid.nyquist());
    const int points = grid.dim() == 1 ? 9 : 5;
    std::vector<VerificationReport> out;
    for (int trial = 0; trial < trials; ++trial) {
        const double band = 1.0 + (a_max - 1.0) * unit(rng);
        Cube cube;
        cube.side = (1.0 - unit(rng)) / band;
        for (int d = 0; d < grid.dim(); ++d) cube.corner.push_back(-2.0 + 4.0 * unit(rng));
        cube.corner_time = 2.0 * unit(rng);
        const auto spectrum = random_band_limited(grid, band, rng());
        out.push_back(verify_cube(spectrum, a, cube, band, points, threads));
        out.back().inputs["trial"] = trial;
    }
    return out;
}

SetCover cover_set(const SetSpec& set, double a, int m, double resolution, double max_spatial_move) {
    require(m >= 0, "cover_set: m must be >= 0");
    require(resolution > 0.0 && max_spatial_move > 0.0, "cover_set: resolution and move limit must be positive");
    SetCover cover;
    cover.r = std::ldexp(1.0, -m);
    const double time_side = std::pow(cover.r, a);
    SamplingLimits limits;
    limits.max_spatial_move = std::min(max_spatial_move, cover.r / 2.0);
    limits.max_time_move = time_side / 2.0;
    cover.samples = sample_set(set, std::min(resolution, time_side / 2.0), limits);
    const auto cells = occupied_cells(cover.samples, a, cover.r);
    cover.cubes = cubes_from_cells(cells, set.dim(), a, cover.r);
    return cover;
}

std::vector<VerificationReport> random_cover_trials(const GridSpec& grid, double a, int trials, std::uint64_t seed,
                                                    unsigned threads) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a_max = std::min(8.0, 0.99 * grid.nyquist());
    std::vector<VerificationReport> out;
    for (int trial = 0; trial < trials; ++trial) {
        const double band = 1.0 + (a_max - 1.0) * unit(rng);
        const double beta = 0.3 + 0.7 * unit(rng);
        const double amplitude = 0.5 + 1.5 * unit(rng);
        const int m = static_cast<int>(std::ceil(std::log2(band))) + static_cast<int>(rng() % 2);
        const auto set = SetSpec::curve_graph(CurveSpec::power(beta, amplitude, unit_vector(grid.dim())));
        const auto cover = cover_set(set, a, m, 1.0 / 256.0, grid.spacing());
        const auto spectrum = random_band_limited(grid, band, rng());
        out.push_back(verify_cover_bound(spectrum, a, cover.samples, cover.cubes, band, threads));
        out.back().inputs["trial"] = trial;
        out.back().inputs["beta"] = beta;
        out.back().inputs["amplitude"] = amplitude;
        out.back().inputs["m"] = m;
    }
    return out;
}

RatioReport verify_thmA(const SpectralFunction& spectrum, const SetSpec& set, double a, double s,
                        RatioOptions options) {
    require(set.time_only(), "verify_thmA: the set must lie in {0} x R");
    options.mode = SumMode::thmA;
    return maximal_ratio(spectrum, set, a, s, options);
}

RatioReport verify_thm1(const SpectralFunction& spectrum, const SetSpec& set, double a, double s,
                        RatioOptions options) {
    options.mode = SumMode::thm1;
    return maximal_ratio(spectrum, set, a, s, options);
}

FamilyReport ratio_family(const ExperimentConfig& config, std::span<const double> lambdas, SumMode mode) {
    require(!lambdas.empty(), "ratio_family: empty family");
    FamilyReport fam;
    fam.lambdas.assign(lambdas.begin(), lambdas.end());
    fam.all_conclusive = true;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double lambda : lambdas) {
        const auto spectrum = build_function(config, lambda);
        const auto options = ratio_options(config, mode);
        auto rep = mode == SumMode::thmA ? verify_thmA(spectrum, config.set, config.a, config.s, options)
                                         : verify_thm1(spectrum, config.set, config.a, config.s, options);
        lo = std::min(lo, rep.ratio);
        hi = std::max(hi, rep.ratio);
        fam.all_conclusive = fam.all_conclusive && rep.conclusive;
        fam.reports.push_back(std::move(rep));
    }
    fam.spread = hi / lo;
    return fam;
}

std::vector<double> s_grid(double s_min, double s_max, double step) {
    require(s_min > 0.0 && s_max >= s_min && step > 0.0, "s_grid: need 0 < s_min <= s_max and step > 0");
    // Integer stepping avoids accumulated drift; values are rounded to 12
    // decimals so 0.1 + 1 * 0.05 prints as 0.15.
    const auto count = static_cast<std::size_t>(std::floor((s_max - s_min) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(std::round((s_min + static_cast<double>(i) * step) * 1e12) / 1e12);
    return out;
}

std::optional<double> predicted_threshold(const SetSpec& set, double a) {
    const CurveSpec* curve = set.curve();
    const double a2 = curve ? effective_exponents(set, a).a2 : a;
    auto sequence_threshold = [&](const SequenceSpec& seq) {
        const double gamma = infimum_gamma(seq);
        return a2 * gamma / (2.0 * (gamma + 1.0));
    };
    return std::visit(
        [&](const auto& shape) -> std::optional<double> {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, TimeInterval>) {
                return shape.length > 0.0 ? a / 2.0 : 0.0;
            } else if constexpr (std::is_same_v<T, TimeSequence>) {
                return sequence_threshold(shape.sequence);
            } else if constexpr (std::is_same_v<T, CurveSequence>) {
                return sequence_threshold(shape.sequence);
            } else if constexpr (std::is_same_v<T, CurveGraph>) {
                return a2 / 2.0;
            } else {
                return shape.side > 0.0 ? (set.dim() + a) / 2.0 : 0.0;
            }
        },
        set.shape());
}

ScanReport scan_s(const SetSpec& set, double a, std::span<const double> s_values, int m_min, int m_max, SumMode mode,
                  const SpectralFunction* spectrum, const RatioOptions& options) {
    require(!s_values.empty(), "scan_s: empty s grid");
    require(std::is_sorted(s_values.begin(), s_values.end()), "scan_s: s grid must be increasing");
    require(s_values.front() > 0.0 && s_values.back() <= 4.0, "scan_s: s grid must lie in (0, 4]");
    require(mode == SumMode::thm1 || set.time_only(), "scan_s: interval-covering mode needs a time-only set");

    ScanReport rep;
    rep.step = s_values.size() > 1 ? s_values[1] - s_values[0] : 0.0;
    const double b = mode == SumMode::thm1 ? a : 1.0;
    const auto profile = covering_profile(set, b, m_min, m_max);

    std::optional<double> lhs;
    if (spectrum) {
        SamplingLimits limits;
        limits.max_spatial_move = options.max_spatial_move > 0.0 ? options.max_spatial_move : spectrum->spec().spacing();
        const auto samples = sample_set(set, options.resolution, limits);
        lhs = l2_norm(maximal_field(*spectrum, samples, a, options.threads));
    }

    for (double s : s_values) {
        const auto sum = rhs_sum(profile, s, mode, a);
        ScanRow row{s, sum.summable, sum.converged, sum.growth_exponent, sum.total(), std::nullopt};
        if (lhs && sum.summable) row.ratio = *lhs / (std::sqrt(sum.total()) * sobolev_norm(*spectrum, s));
        rep.rows.push_back(row);
    }

    rep.monotone = true;
    std::optional<std::size_t> last_divergent;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (!rep.rows[i].summable) last_divergent = i;
        if (i > 0 && rep.rows[i - 1].summable && !rep.rows[i].summable) rep.monotone = false;
    }
    if (last_divergent && *last_divergent + 1 < rep.rows.size())
        rep.boundary = 0.5 * (rep.rows[*last_divergent].s + rep.rows[*last_divergent + 1].s);

    rep.predicted = predicted_threshold(set, a);
    if (rep.predicted) {
        const double p = *rep.predicted;
        if (rep.boundary)
            rep.matches = std::abs(*rep.boundary - p) <= rep.step + 1e-12;
        else if (!last_divergent)
            rep.matches = p <= rep.rows.front().s;
        else
            rep.matches = p >= rep.rows.back().s;
    }
    return rep;
}

ConvergenceReport convergence_experiment(const SpectralFunction& spectrum, double a, const SetSpec& set, int k_max) {
    require(k_max >= 1, "convergence_experiment: k_max must be >= 1");
    require(set.dim() == spectrum.spec().dim(), "convergence_experiment: set dimension does not match the grid");
    const SequenceSpec* seq = nullptr;
    if (const auto* ts = std::get_if<TimeSequence>(&set.shape())) seq = &ts->sequence;
    if (const auto* cs = std::get_if<CurveSequence>(&set.shape())) seq = &cs->sequence;
    require(seq != nullptr, "convergence_experiment: needs a time sequence or a curve sequence");
    const CurveSpec* curve = set.curve();

    const GridSpec& g = spectrum.spec();
    ConvergenceReport rep;
    {
        const auto coeffs = spectrum.coefficients();
        const auto norms = g.frequency_norms_sq();
        CompensatedSum time_acc, space_acc;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            const double mag = std::abs(coeffs[i]);
            if (mag == 0.0) continue;
            time_acc.add(std::pow(norms[i], a / 2.0) * mag);
            space_acc.add(std::sqrt(norms[i]) * mag);
        }
        const double weight = g.dual_cell_volume() / std::pow(2.0 * std::numbers::pi, g.dim());
        rep.time_lipschitz = time_acc.value() * weight;
        rep.space_lipschitz = space_acc.value() * weight;
    }

    const Propagator propagator(spectrum, a);
    const GridFunction base = from_spectrum(spectrum);
    std::vector<Complex> buffer(g.size());
    std::vector<double> shift(static_cast<std::size_t>(g.dim()), 0.0);
    double peak = 0.0;
    for (Complex v : base.values()) peak = std::max(peak, std::abs(v));
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, peak);

    auto measure = [&](std::size_t k, double t) {
        ConvergenceRow row;
        row.k = k;
        row.t = t;
        if (curve && t > 0.0) curve->position(t, shift);
        else std::fill(shift.begin(), shift.end(), 0.0);
        double len_sq = 0.0;
        for (double v : shift) len_sq += v * v;
        row.shift = std::sqrt(len_sq);
        propagator.evaluate(t, shift, buffer);
        double d = 0.0;
        for (std::size_t i = 0; i < buffer.size(); ++i) d = std::max(d, std::abs(buffer[i] - base[i]));
        row.d = d;
        row.envelope = t * rep.time_lipschitz + row.shift * rep.space_lipschitz;
        return row;
    };

    rep.rows.push_back(measure(0, 0.0));
    const std::size_t limit = std::min(static_cast<std::size_t>(k_max), seq->max_terms());
    for (std::size_t k = 1; k <= limit; ++k) rep.rows.push_back(measure(k, seq->term(k)));

    // The multiplier bound is exact on the grid; the allowance only covers
    // floating-point rounding in the transforms.
    rep.envelope_holds = true;
    for (const auto& row : rep.rows)
        if (!(row.d <= row.envelope * (1.0 + 1e-9) + roundoff)) rep.envelope_holds = false;

    rep.fitted_bound_holds = false;
    if (rep.rows.size() > 1 && rep.rows[1].envelope > 0.0) {
        rep.fitted_constant = rep.rows[1].d / rep.rows[1].envelope;
        rep.fitted_bound_holds = true;
        for (std::size_t i = 1; i < rep.rows.size(); ++i) {
            if (!(rep.rows[i].d <= rep.fitted_constant * rep.rows[i].envelope)) {
                rep.fitted_bound_holds = false;
                if (!rep.first_fitted_violation) rep.first_fitted_violation = rep.rows[i].k;
            }
        }
    }

    rep.tail_decreasing = true;
    for (std::size_t i = 4; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].d < rep.rows[i - 1].d)) rep.tail_decreasing = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Config-driven runs.

namespace {

ExperimentResult run_cover(const ExperimentConfig& c, bool with_sum) {
    const double b = c.mode == SumMode::thm1 ? c.a : 1.0;
    if (c.mode == SumMode::thmA) require(c.set.time_only(), "thmA mode needs a time-only set");
    ExperimentResult res;
    res.name = with_sum ? "rhs-sum" : "cover";
    const auto profile = covering_profile(c.set, b, c.m_min, c.m_max);
    res.tables.push_back(profile_table(profile));
    res.plots.push_back(profile_series(profile));
    res.report["b"] = b;
    res.report["slope"] = profile.entries.size() >= 2 ? profile_slope(profile, c.m_min, c.m_max) : 0.0;
    if (with_sum) {
        const auto sum = rhs_sum(profile, c.s, c.mode, c.a);
        res.tables.push_back(sum_table(profile, sum));
        res.report["sum"] = sum_json(sum);
        PlotSeries partial{"partial_sum", {}, {}};
        for (std::size_t i = 0; i < sum.m.size(); ++i) {
            partial.x.push_back(sum.m[i]);
            partial.y.push_back(sum.partial_sums[i]);
        }
        res.plots.push_back(std::move(partial));
    }
    res.pass = true;
    return res;
}

std::vector<std::string> coordinate_cells(const GridSpec& g, std::size_t i) {
    const auto x = g.coordinates(i);
    std::vector<std::string> cells;
    for (int d = 0; d < g.dim(); ++d) cells.push_back(format_double(x[static_cast<std::size_t>(d)]));
    return cells;
}

std::vector<std::string> axis_columns(const char* stem, int dim) {
    std::vector<std::string> cols;
    for (int d = 1; d <= dim; ++d) cols.push_back(std::string(stem) + std::to_string(d));
    return cols;
}

ExperimentResult run_propagate(const ExperimentConfig& c) {
    const auto spectrum = build_function(c);
    const GridSpec& g = c.grid;
    ExperimentResult res;
    res.name = "propagate";
    const auto field = propagate(spectrum, {c.a, c.t, c.shift});

    Table spec_table{"spectrum", axis_columns("xi", g.dim()), {}};
    for (const char* col : {"re", "im"}) spec_table.columns.emplace_back(col);
    Table field_table{"field", axis_columns("x", g.dim()), {}};
    for (const char* col : {"re", "im", "abs"}) field_table.columns.emplace_back(col);
    PlotSeries plot{"field_abs", {}, {}};
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<std::string> row;
        const auto idx = g.axis_indices(i);
        for (int d = 0; d < g.dim(); ++d) row.push_back(format_double(g.frequency(idx[static_cast<std::size_t>(d)])));
        row.push_back(format_double(spectrum[i].real()));
        row.push_back(format_double(spectrum[i].imag()));
        spec_table.add_row(std::move(row));

        auto frow = coordinate_cells(g, i);
        frow.push_back(format_double(field[i].real()));
        frow.push_back(format_double(field[i].imag()));
        frow.push_back(format_double(std::abs(field[i])));
        field_table.add_row(std::move(frow));
        if (g.dim() == 1) {
            plot.x.push_back(g.coordinates(i)[0]);
            plot.y.push_back(std::abs(field[i]));
        }
    }
    res.tables.push_back(std::move(spec_table));
    res.tables.push_back(std::move(field_table));
    if (g.dim() == 1) res.plots.push_back(std::move(plot));
    res.report["t"] = c.t;
    res.report["a"] = c.a;
    res.report["shift"] = c.shift;
    res.report["f_norm"] = l2_norm(from_spectrum(spectrum));
    res.report["field_norm"] = l2_norm(field);
    res.pass = true;
    return res;
}

ExperimentResult run_maximal(const ExperimentConfig& c) {
    const auto spectrum = build_function(c);
    const GridSpec& g = c.grid;
    SamplingLimits limits;
    limits.max_spatial_move = g.spacing();
    const auto samples = sample_set(c.set, c.resolution, limits);
    const auto field = maximal_field(spectrum, samples, c.a, c.threads);

    ExperimentResult res;
    res.name = "maximal";
    Table table{"field", axis_columns("x", g.dim()), {}};
    table.columns.emplace_back("value");
    PlotSeries plot{"field", {}, {}};
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto row = coordinate_cells(g, i);
        row.push_back(format_double(field.values[i]));
        table.add_row(std::move(row));
        if (g.dim() == 1) {
            plot.x.push_back(g.coordinates(i)[0]);
            plot.y.push_back(field.values[i]);
        }
    }
    res.tables.push_back(std::move(table));
    if (g.dim() == 1) res.plots.push_back(std::move(plot));
    res.report["lhs"] = l2_norm(field);
    res.report["f_norm"] = l2_norm(from_spectrum(spectrum));
    res.report["sample_count"] = samples.size();
    res.report["sample_density"] = samples.density;
    res.pass = true;
    return res;
}

Table verification_table(const std::vector<VerificationReport>& reports) {
    Table t{"checks", {"trial", "A", "r", "measured", "bound", "pass"}, {}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        t.add_row({std::to_string(i), format_double(r.inputs.at("A").get<double>()),
                   format_double(r.inputs.at("r").get<double>()), format_double(r.measured), format_double(r.bound),
                   r.pass ? "1" : "0"});
    }
    return t;
}

ExperimentResult finish_verifications(std::string name, const std::vector<VerificationReport>& reports) {
    ExperimentResult res;
    res.name = std::move(name);
    res.pass = true;
    Json checks = Json::array();
    std::size_t violations = 0;
    for (const auto& r : reports) {
        checks.push_back(r.to_json());
        if (!r.pass) ++violations;
    }
    res.pass = violations == 0;
    res.report["checks"] = checks;
    res.report["violations"] = violations;
    res.tables.push_back(verification_table(reports));
    PlotSeries plot{"measured_over_bound", {}, {}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        plot.x.push_back(static_cast<double>(i));
        plot.y.push_back(reports[i].measured / reports[i].bound);
    }
    res.plots.push_back(std::move(plot));
    return res;
}

Cube configured_cube(const ExperimentConfig& c) {
    Cube cube;
    cube.corner = c.cube.corner.empty() ? std::vector<double>(static_cast<std::size_t>(c.grid.dim()), 0.0) : c.cube.corner;
    cube.corner_time = c.cube.corner_time;
    cube.side = c.cube.side;
    return cube;
}

ExperimentResult run_verify_cube(const ExperimentConfig& c) {
    std::vector<VerificationReport> reports;
    reports.push_back(verify_cube(build_function(c), c.a, configured_cube(c), c.cube.band, c.cube.points, c.threads));
    for (auto& r : random_cube_trials(c.grid, c.a, c.cube.trials, c.cube.seed, c.threads)) reports.push_back(std::move(r));
    return finish_verifications("verify-cube", reports);
}

ExperimentResult run_verify_cover(const ExperimentConfig& c) {
    std::vector<VerificationReport> reports;
    const auto cover = cover_set(c.set, c.a, c.cube.cover_m, c.resolution, c.grid.spacing());
    reports.push_back(verify_cover_bound(build_function(c), c.a, cover.samples, cover.cubes, c.cube.band, c.threads));
    for (auto& r : random_cover_trials(c.grid, c.a, c.cube.trials, c.cube.seed, c.threads))
        reports.push_back(std::move(r));
    return finish_verifications("verify-cover", reports);
}

ExperimentResult run_ratio(const ExperimentConfig& c, SumMode mode) {
    ExperimentResult res;
    res.name = mode == SumMode::thmA ? "verify-thmA" : "verify-thm1";
    std::vector<double> lambdas = c.lambdas.empty() ? std::vector<double>{c.lambda} : c.lambdas;
    const auto fam = ratio_family(c, lambdas, mode);

    Table table{"ratios", {"lambda", "lhs", "rhs", "ratio", "sobolev", "sum", "conclusive"}, {}};
    PlotSeries plot{"ratio", {}, {}};
    Json reports = Json::array();
    for (std::size_t i = 0; i < fam.reports.size(); ++i) {
        const auto& r = fam.reports[i];
        table.add_row({format_double(fam.lambdas[i]), format_double(r.lhs), format_double(r.rhs),
                       format_double(r.ratio), format_double(r.sobolev), format_double(r.sum.total()),
                       r.conclusive ? "1" : "0"});
        plot.x.push_back(fam.lambdas[i]);
        plot.y.push_back(r.ratio);
        Json j = ratio_json(r);
        j["lambda"] = fam.lambdas[i];
        reports.push_back(std::move(j));
    }
    res.tables.push_back(std::move(table));
    res.tables.push_back(sum_table(fam.reports.front().profile, fam.reports.front().sum));
    res.plots.push_back(std::move(plot));
    res.plots.push_back(profile_series(fam.reports.front().profile));
    res.report["reports"] = reports;
    res.report["all_conclusive"] = fam.all_conclusive;
    if (fam.reports.size() > 1) {
        res.report["spread"] = fam.spread;
        res.report["max_spread"] = c.max_spread;
        res.pass = fam.all_conclusive && fam.spread < c.max_spread;
    } else {
        res.pass = fam.all_conclusive;
    }
    return res;
}

ExperimentResult run_scan(const ExperimentConfig& c) {
    ExperimentResult res;
    res.name = "scan-s";
    const auto spectrum = build_function(c);
    const auto grid = s_grid(c.scan.s_min, c.scan.s_max, c.scan.s_step);
    const auto rep = scan_s(c.set, c.a, grid, c.m_min, c.m_max, c.mode, &spectrum, ratio_options(c, c.mode));

    Table table{"scan", {"s", "summable", "converged", "exponent", "sum", "ratio"}, {}};
    PlotSeries plot{"exponent", {}, {}};
    for (const auto& row : rep.rows) {
        table.add_row({format_double(row.s), row.summable ? "1" : "0", row.converged ? "1" : "0",
                       format_double(row.exponent), format_double(row.total),
                       row.ratio ? format_double(*row.ratio) : std::string("")});
        plot.x.push_back(row.s);
        plot.y.push_back(row.exponent);
    }
    res.tables.push_back(std::move(table));
    res.plots.push_back(std::move(plot));
    res.report["step"] = rep.step;
    res.report["boundary"] = rep.boundary ? Json(*rep.boundary) : Json(nullptr);
    res.report["predicted"] = rep.predicted ? Json(*rep.predicted) : Json(nullptr);
    res.report["monotone"] = rep.monotone;
    res.report["matches"] = rep.matches;
    res.pass = rep.monotone && rep.matches;
    return res;
}

ExperimentResult run_converge(const ExperimentConfig& c) {
    ExperimentResult res;
    res.name = "converge";
    const auto rep = convergence_experiment(build_function(c), c.a, c.set, c.k_max);
    Table table{"decay", {"k", "t", "shift", "d", "envelope", "fitted_bound"}, {}};
    PlotSeries plot{"d", {}, {}};
    for (const auto& row : rep.rows) {
        table.add_row({std::to_string(row.k), format_double(row.t), format_double(row.shift), format_double(row.d),
                       format_double(row.envelope), format_double(rep.fitted_constant * row.envelope)});
        if (row.k > 0) {
            plot.x.push_back(row.t);
            plot.y.push_back(row.d);
        }
    }
    res.tables.push_back(std::move(table));
    res.plots.push_back(std::move(plot));
    res.report["time_lipschitz"] = rep.time_lipschitz;
    res.report["space_lipschitz"] = rep.space_lipschitz;
    res.report["fitted_constant"] = rep.fitted_constant;
    res.report["fitted_bound_holds"] = rep.fitted_bound_holds;
    res.report["first_fitted_violation"] =
        rep.first_fitted_violation ? Json(*rep.first_fitted_violation) : Json(nullptr);
    res.report["envelope_holds"] = rep.envelope_holds;
    res.report["tail_decreasing"] = rep.tail_decreasing;
    res.pass = rep.pass();
    return res;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"cover",       "rhs-sum",     "propagate", "maximal",
                                                   "verify-cube", "verify-cover", "verify-thmA", "verify-thm1",
                                                   "scan-s",      "converge"};
    return names;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto start = Clock::now();
    const std::string& name = config.experiment;
    ExperimentResult res;
    if (name == "cover") res = run_cover(config, false);
    else if (name == "rhs-sum") res = run_cover(config, true);
    else if (name == "propagate") res = run_propagate(config);
    else if (name == "maximal") res = run_maximal(config);
    else if (name == "verify-cube") res = run_verify_cube(config);
    else if (name == "verify-cover") res = run_verify_cover(config);
    else if (name == "verify-thmA") res = run_ratio(config, SumMode::thmA);
    else if (name == "verify-thm1") res = run_ratio(config, SumMode::thm1);
    else if (name == "scan-s") res = run_scan(config);
    else if (name == "converge") res = run_converge(config);
    else throw ConfigError("experiment.name: unknown experiment '" + name + "'");
    res.runtime_seconds = seconds_since(start);
    return res;
}

}  // namespace schromax::harness
