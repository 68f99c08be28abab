#include "schromax/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "schromax/numerics.hpp"

namespace schromax {
namespace {

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

void require_radius(double r) {
    require(r > 0.0 && std::isfinite(r), "covering: r must be positive");
}

void require_cube(double b, double r) {
    require(b > 0.0 && std::isfinite(b), "covering: cube exponent b must be positive");
    require(r > 0.0 && r <= 1.0, "covering: r must lie in (0, 1]");
}

std::vector<double> sorted_unique(std::span<const double> points) {
    std::vector<double> p(points.begin(), points.end());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

std::size_t greedy_sorted(std::span<const double> p, double r) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < p.size()) {
        const double end = p[i] + r;
        ++count;
        while (i < p.size() && p[i] <= end) ++i;
    }
    return count;
}

std::vector<Segment> projection_segments(const SetSpec& spec, double cutoff, bool& tail_at_zero) {
    tail_at_zero = false;
    std::vector<Segment> segments;
    auto add_sequence = [&](const SequenceSpec& seq) {
        if (!seq.infinite()) {
            for (double t : seq.leading_terms(0.0)) segments.push_back({t, t});
            return;
        }
        require(seq.reaches(cutoff), "covering: sequence max_terms too small for this radius");
        tail_at_zero = true;
        for (double t : seq.leading_terms(cutoff)) segments.push_back({t, t});
    };
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, TimeInterval>) {
                segments.push_back({0.0, shape.length});
            } else if constexpr (std::is_same_v<T, TimeSequence>) {
                add_sequence(shape.sequence);
            } else if constexpr (std::is_same_v<T, CurveGraph>) {
                segments.push_back({0.0, 1.0});
            } else if constexpr (std::is_same_v<T, CurveSequence>) {
                add_sequence(shape.sequence);
            } else {
                segments.push_back({shape.corner_time,
                                    shape.corner_time + std::pow(shape.side, shape.exponent)});
            }
        },
        spec.shape());
    return segments;
}

}  // namespace

std::string_view to_string(CountMethod method) noexcept {
    switch (method) {
        case CountMethod::greedy: return "greedy";
        case CountMethod::grid: return "grid";
        case CountMethod::brute: return "brute";
    }
    return "unknown";
}

std::size_t cover_1d(std::span<const double> points, double r) {
    require(!points.empty(), "cover_1d: empty point set");
    require_radius(r);
    if (std::is_sorted(points.begin(), points.end())) return greedy_sorted(points, r);
    return greedy_sorted(sorted_unique(points), r);
}

std::size_t cover_1d_segments(std::span<const Segment> segments, double r) {
    require(!segments.empty(), "cover_1d_segments: empty segment list");
    require_radius(r);
    std::vector<Segment> sorted(segments.begin(), segments.end());
    std::sort(sorted.begin(), sorted.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
    std::size_t count = 0;
    double covered = -std::numeric_limits<double>::infinity();  // [.., covered] is covered
    for (const Segment& seg : sorted) {
        require(seg.lo <= seg.hi, "cover_1d_segments: segment with lo > hi");
        if (seg.hi <= covered) continue;
        if (seg.lo > covered) {
            ++count;
            covered = seg.lo + r;
        }
        if (covered < seg.hi) {
            // The uncovered part (covered, hi] has closure [covered, hi].
            const double more = std::ceil((seg.hi - covered) / r);
            count += static_cast<std::size_t>(more);
            covered += more * r;
        }
    }
    return count;
}

std::size_t cover_1d_bruteforce(std::span<const double> points, double r) {
    require(!points.empty(), "cover_1d_bruteforce: empty point set");
    require(points.size() <= kBruteForce1dLimit, "cover_1d_bruteforce: more than 12 points");
    require_radius(r);
    const auto p = sorted_unique(points);
    const std::size_t n = p.size();
    // covers[a] = bitmask of points inside [p_a, p_a + r].
    std::vector<unsigned> covers(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            if (p[i] >= p[a] && p[i] <= p[a] + r) covers[a] |= 1U << i;
        }
    }
    const unsigned all = (1U << n) - 1U;
    std::size_t best = n;
    for (unsigned anchors = 1; anchors <= all; ++anchors) {
        const auto k = static_cast<std::size_t>(std::popcount(anchors));
        if (k >= best) continue;
        unsigned hit = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (anchors & (1U << a)) hit |= covers[a];
        }
        if (hit == all) best = k;
    }
    return best;
}

std::vector<CellIndex> occupied_cells(const SpaceTimeSamples& samples, double b, double r) {
    require_cube(b, r);
    require(samples.size() > 0, "cover_aniso: empty sample set");
    const double time_side = std::pow(r, b);
    if (samples.continuum) {
        require(samples.max_spatial_step <= r && samples.max_time_step <= time_side,
                "cover_aniso: samples are too sparse for this cube size");
    }
    const auto dim = static_cast<std::size_t>(samples.dim);
    std::vector<CellIndex> cells(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CellIndex c{};
        c[0] = std::floor(samples.times[i] / time_side);
        const auto y = samples.position(i);
        for (std::size_t d = 0; d < dim; ++d) c[d + 1] = std::floor(y[d] / r);
        cells[i] = c;
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

std::size_t cover_aniso(const SpaceTimeSamples& samples, double b, double r) {
    return occupied_cells(samples, b, r).size();
}

std::size_t cover_aniso_bruteforce(const SpaceTimeSamples& samples, double b, double r) {
    require_cube(b, r);
    const std::size_t n = samples.size();
    require(n > 0, "cover_aniso_bruteforce: empty sample set");
    require(n <= kBruteForceAnisoLimit, "cover_aniso_bruteforce: more than 6 points");
    const double time_side = std::pow(r, b);
    const auto dim = static_cast<std::size_t>(samples.dim);
    const unsigned all = (1U << n) - 1U;

    // A subset fits in one closed b-cube iff every coordinate range does.
    std::vector<bool> fits(all + 1U, false);
    for (unsigned mask = 1; mask <= all; ++mask) {
        double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
        std::array<double, 3> y_lo{}, y_hi{};
        y_lo.fill(t_lo);
        y_hi.fill(t_hi);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (1U << i))) continue;
            t_lo = std::min(t_lo, samples.times[i]);
            t_hi = std::max(t_hi, samples.times[i]);
            const auto y = samples.position(i);
            for (std::size_t d = 0; d < dim; ++d) {
                y_lo[d] = std::min(y_lo[d], y[d]);
                y_hi[d] = std::max(y_hi[d], y[d]);
            }
        }
        bool ok = t_hi - t_lo <= time_side;
        for (std::size_t d = 0; d < dim && ok; ++d) ok = y_hi[d] - y_lo[d] <= r;
        fits[mask] = ok;
    }
    // Minimal partition into fitting subsets.
    std::vector<std::size_t> best(all + 1U, n);
    best[0] = 0;
    for (unsigned mask = 1; mask <= all; ++mask) {
        const unsigned low = mask & (~mask + 1U);
        for (unsigned sub = mask; sub != 0; sub = (sub - 1U) & mask) {
            if ((sub & low) && fits[sub]) best[mask] = std::min(best[mask], best[mask ^ sub] + 1);
        }
    }
    return best[all];
}

std::size_t count_time_projection(const SetSpec& spec, double radius) {
    require_radius(radius);
    bool tail = false;
    const auto segments = projection_segments(spec, std::nextafter(radius, std::numeric_limits<double>::infinity()), tail);
    if (!tail) return cover_1d_segments(segments, radius);
    // An infinite sequence accumulates at 0. Closed intervals cover a set iff
    // they cover its closure, and the greedy sweep on the closure starts with
    // [0, radius], which takes every term <= radius.
    std::vector<Segment> rest;
    for (const Segment& s : segments) {
        if (s.lo > radius) rest.push_back(s);
    }
    return 1 + (rest.empty() ? 0 : cover_1d_segments(rest, radius));
}

CoverCount count_covering(const SetSpec& spec, double b, double r) {
    require_cube(b, r);
    const double time_side = std::pow(r, b);
    if (spec.time_only()) return {count_time_projection(spec, time_side), CountMethod::greedy};

    if (const auto* seq = std::get_if<CurveSequence>(&spec.shape())) {
        // Enumerate terms down to a cutoff below which the curve stays within
        // half a cell of Gamma(0) in space and inside the first time cell.
        const CurveSpec& curve = seq->curve;
        double cutoff = time_side;
        if (curve.holder_constant() > 0.0) {
            cutoff = std::min(cutoff, std::pow(r / curve.holder_constant(), 1.0 / curve.beta()));
        }
        cutoff *= 0.5;
        const SequenceSpec& sequence = seq->sequence;
        if (!sequence.infinite()) cutoff = std::min(cutoff, sequence.term(sequence.max_terms()));
        require(sequence.reaches(cutoff), "covering: sequence max_terms too small for this radius");
        const auto samples = sample_set(spec, cutoff);
        return {cover_aniso(samples, b, r), CountMethod::grid};
    }
    const SamplingLimits limits{0.5 * r, 0.5 * time_side};
    const auto samples = sample_set(spec, 0.5 * time_side, limits);
    return {cover_aniso(samples, b, r), CountMethod::grid};
}

CoveringProfile covering_profile(const SetSpec& spec, double b, int m_lo, int m_hi) {
    require(m_lo >= 0 && m_lo <= m_hi, "covering_profile: need 0 <= m_lo <= m_hi");
    CoveringProfile profile;
    profile.b = b;
    for (int m = m_lo; m <= m_hi; ++m) {
        const double r = std::ldexp(1.0, -m);
        const CoverCount c = count_covering(spec, b, r);
        profile.entries.push_back({m, r, c.count, c.method});
    }
    return profile;
}

double profile_slope(const CoveringProfile& profile, int m_lo, int m_hi) {
    std::vector<double> x, y;
    for (const auto& e : profile.entries) {
        if (e.m < m_lo || e.m > m_hi) continue;
        x.push_back(e.m);
        y.push_back(std::log2(static_cast<double>(e.count)));
    }
    return least_squares_slope(x, y);
}

SumReport rhs_sum(const CoveringProfile& profile, double s, SumMode mode, double a) {
    require(s > 0.0 && std::isfinite(s), "rhs_sum: s must be positive");
    require(a > 0.0, "rhs_sum: a must be positive");
    require(!profile.entries.empty(), "rhs_sum: empty profile");
    SumReport report;
    report.s = s;
    report.mode = mode;
    report.a = a;
    const double rate = mode == SumMode::thm1 ? 2.0 * s : 2.0 * s / a;
    CompensatedSum acc;
    for (const auto& e : profile.entries) {
        const double g = static_cast<double>(e.count) * std::exp2(-rate * e.m);
        acc.add(g);
        report.m.push_back(e.m);
        report.terms.push_back(g);
        report.partial_sums.push_back(acc.value());
    }
    report.m_max = report.m.back();

    const std::size_t n = report.terms.size();
    if (n >= 5) {
        report.converged = true;
        for (std::size_t i = n - 5; i < n; ++i) {
            if (!(report.terms[i] < 1e-6 * report.partial_sums[i])) report.converged = false;
        }
    }
    if (n >= 2) {
        const std::size_t first = n >= 6 ? n / 2 : 0;
        std::vector<double> x, y;
        for (std::size_t i = first; i < n; ++i) {
            x.push_back(report.m[i]);
            y.push_back(std::log2(report.terms[i]));
        }
        report.growth_exponent = least_squares_slope(x, y);
    } else {
        report.growth_exponent = std::numeric_limits<double>::quiet_NaN();
    }
    report.summable = report.converged || report.growth_exponent < -kSummableMargin;
    return report;
}

Lemma1Report lemma1_check(const SpaceTimeSamples& samples, double r, double b, double b1, CountMethod method) {
    require_cube(b, r);
    require(b < b1, "lemma1_check: need b < b1");
    require(method != CountMethod::greedy, "lemma1_check: point samplings use brute or grid counts");
    Lemma1Report rep{};
    rep.r = r;
    rep.b = b;
    rep.b1 = b1;
    rep.method = method;
    if (method == CountMethod::brute) {
        rep.count_b = cover_aniso_bruteforce(samples, b, r);
        rep.count_b1 = cover_aniso_bruteforce(samples, b1, r);
        rep.slack = 1.0;
    } else {
        rep.count_b = cover_aniso(samples, b, r);
        rep.count_b1 = cover_aniso(samples, b1, r);
        rep.slack = std::ldexp(1.0, samples.dim + 1);
    }
    rep.factor = std::pow(r, b - b1);
    rep.monotone_holds = static_cast<double>(rep.count_b) <= rep.slack * static_cast<double>(rep.count_b1);
    rep.refinement_holds =
        static_cast<double>(rep.count_b1) <= rep.slack * rep.factor * static_cast<double>(rep.count_b);
    return rep;
}

Lemma1Report lemma1_check(const SetSpec& spec, double r, double b, double b1) {
    require_cube(b, r);
    require(b < b1, "lemma1_check: need b < b1");
    const CoverCount nb = count_covering(spec, b, r);
    const CoverCount nb1 = count_covering(spec, b1, r);
    Lemma1Report rep{};
    rep.r = r;
    rep.b = b;
    rep.b1 = b1;
    rep.method = nb.method;
    rep.count_b = nb.count;
    rep.count_b1 = nb1.count;
    rep.slack = nb.method == CountMethod::greedy ? 1.0 : std::ldexp(1.0, spec.dim() + 1);
    rep.factor = std::pow(r, b - b1);
    rep.monotone_holds = static_cast<double>(rep.count_b) <= rep.slack * static_cast<double>(rep.count_b1);
    rep.refinement_holds =
        static_cast<double>(rep.count_b1) <= rep.slack * rep.factor * static_cast<double>(rep.count_b);
    return rep;
}

Lemma2Entry lemma2_check(const SetSpec& spec, double r, double b) {
    const CurveSpec* curve = spec.curve();
    require(curve != nullptr, "lemma2_check: set has no curve component");
    require(b * curve->beta() >= 1.0 - 1e-12, "lemma2_check: need b >= 1/beta");
    require_cube(b, r);
    Lemma2Entry e{};
    e.r = r;
    e.m = static_cast<int>(std::lround(-std::log2(r)));
    e.count_set = count_covering(spec, b, r).count;
    e.count_projection = count_time_projection(spec, std::pow(r, b));
    e.ratio = static_cast<double>(e.count_set) / static_cast<double>(e.count_projection);
    return e;
}

Lemma2Report lemma2_check(const SetSpec& spec, double b, int m_lo, int m_hi) {
    require(m_lo >= 0 && m_lo < m_hi, "lemma2_check: need 0 <= m_lo < m_hi");
    Lemma2Report rep;
    rep.b = b;
    std::vector<double> x, y;
    for (int m = m_lo; m <= m_hi; ++m) {
        Lemma2Entry e = lemma2_check(spec, std::ldexp(1.0, -m), b);
        e.m = m;
        rep.max_ratio = std::max(rep.max_ratio, e.ratio);
        x.push_back(m);
        y.push_back(std::log2(e.ratio));
        rep.entries.push_back(e);
    }
    rep.ratio_slope = least_squares_slope(x, y);
    rep.grows = true;
    for (std::size_t i = 1; i < rep.entries.size(); ++i) {
        if (!(rep.entries[i].ratio > rep.entries[i - 1].ratio)) rep.grows = false;
    }
    return rep;
}

}  // namespace schromax
