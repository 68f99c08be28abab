#pragma once

// Covering numbers N_E(r) (intervals of length r) and N_{E,b}(r) (b-cubes:
// side r in space, r^b in time), covering profiles m -> N(2^{-m}), and the
// series sum_m N(2^{-m}) 2^{-2ms}.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "schromax/settools.hpp"

namespace schromax {

enum class CountMethod { greedy, grid, brute };

std::string_view to_string(CountMethod method) noexcept;

/// Closed time segment [lo, hi]; points are segments with lo == hi.
struct Segment {
    double lo;
    double hi;
};

/// Minimal number of closed intervals of length r covering the points, by
/// the left-to-right greedy sweep (optimal in 1-D). Throws on empty input or
/// r <= 0.
std::size_t cover_1d(std::span<const double> points, double r);

/// Greedy sweep over a union of closed segments.
std::size_t cover_1d_segments(std::span<const Segment> segments, double r);

/// Exhaustive minimum over interval anchors at point positions; at most 12
/// points.
std::size_t cover_1d_bruteforce(std::span<const double> points, double r);

inline constexpr std::size_t kBruteForce1dLimit = 12;
inline constexpr std::size_t kBruteForceAnisoLimit = 6;

/// Lattice cell index (time, y_1, ..., y_n); unused slots are zero.
using CellIndex = std::array<double, 4>;

/// Distinct cells [j r, (j+1) r) x ... x [i r^b, (i+1) r^b) occupied by the
/// samples, lattice anchored at the origin, sorted. For continuum samplings
/// the consecutive moves must be <= r in space and <= r^b in time.
std::vector<CellIndex> occupied_cells(const SpaceTimeSamples& samples, double b, double r);

/// Number of occupied cells. Never below the minimal b-cube cover of the
/// samples and at most 2^{n+1} times it.
std::size_t cover_aniso(const SpaceTimeSamples& samples, double b, double r);

/// Exact minimal b-cube cover of at most 6 points (set-partition search).
std::size_t cover_aniso_bruteforce(const SpaceTimeSamples& samples, double b, double r);

struct CoverCount {
    std::size_t count = 0;
    CountMethod method = CountMethod::greedy;
};

/// N_{E,b}(r) for a set. Time-only sets E = {0} x E_0 give the exact greedy
/// count N_{E_0}(r^b); space-time sets are resampled densely enough for
/// cover_aniso.
CoverCount count_covering(const SetSpec& spec, double b, double r);

/// N_{E_0}(radius) for the time projection E_0 of the set (greedy, exact).
std::size_t count_time_projection(const SetSpec& spec, double radius);

struct ProfileEntry {
    int m;
    double r;
    std::size_t count;
    CountMethod method;
};

struct CoveringProfile {
    double b = 1.0;
    std::vector<ProfileEntry> entries;
};

/// Entries for m = m_lo..m_hi with r = 2^{-m}.
CoveringProfile covering_profile(const SetSpec& spec, double b, int m_lo, int m_hi);

/// Least-squares slope of log2 N against m over the entries with m in [m_lo, m_hi].
double profile_slope(const CoveringProfile& profile, int m_lo, int m_hi);

enum class SumMode { thm1, thmA };

/// Fitted exponents above -kSummableMargin are treated as non-decaying.
inline constexpr double kSummableMargin = 0.02;

/// Truncated series sum_m g_m with g_m = N(2^{-m}) 2^{-2ms} (thm1) or
/// N(2^{-m}) 2^{-2ms/a} (thmA).
struct SumReport {
    double s = 0.0;
    SumMode mode = SumMode::thm1;
    double a = 0.0;
    std::vector<int> m;
    std::vector<double> terms;
    std::vector<double> partial_sums;
    /// Last 5 increments each below 1e-6 of the partial sum they produce.
    bool converged = false;
    /// Least-squares slope of log2 g_m over the upper half of the range.
    double growth_exponent = 0.0;
    /// converged, or growth_exponent < -kSummableMargin.
    bool summable = false;
    int m_max = 0;

    double total() const noexcept { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

SumReport rhs_sum(const CoveringProfile& profile, double s, SumMode mode = SumMode::thm1, double a = 2.0);

struct Lemma1Report {
    double r, b, b1;
    std::size_t count_b;    // N_{E,b}(r)
    std::size_t count_b1;   // N_{E,b1}(r)
    double factor;          // r^{b - b1}
    double slack;           // 1 for exact counts, 2^{n+1} for grid counts
    CountMethod method;
    bool monotone_holds;    // count_b <= slack * count_b1
    bool refinement_holds;  // count_b1 <= slack * factor * count_b
    bool holds() const noexcept { return monotone_holds && refinement_holds; }
};

/// Checks N_{E,b}(r) <= N_{E,b1}(r) and N_{E,b1}(r) <= r^{b-b1} N_{E,b}(r) on
/// a point sampling, with brute-force (exact, slack 1) or grid counts.
Lemma1Report lemma1_check(const SpaceTimeSamples& samples, double r, double b, double b1, CountMethod method);
/// Same on a set description, with the counts of count_covering.
Lemma1Report lemma1_check(const SetSpec& spec, double r, double b, double b1);

struct Lemma2Entry {
    int m;
    double r;
    std::size_t count_set;         // N_{E,b}(r)
    std::size_t count_projection;  // N_{E_0}(r^b)
    double ratio;
};

struct Lemma2Report {
    double b;
    std::vector<Lemma2Entry> entries;
    double max_ratio = 0.0;
    double ratio_slope = 0.0;  // least-squares slope of log2 ratio against m
    /// Ratio strictly increasing across the whole range.
    bool grows = false;
};

/// Requires a curve component and b >= 1/beta.
Lemma2Entry lemma2_check(const SetSpec& spec, double r, double b);
Lemma2Report lemma2_check(const SetSpec& spec, double b, int m_lo, int m_hi);

}  // namespace schromax
