// Acceptance battery: one PASS/FAIL line per criterion. Exit status is 0
// only if every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "schromax/covering.hpp"
#include "schromax/families.hpp"
#include "schromax/harness/config.hpp"
#include "schromax/harness/experiments.hpp"
#include "schromax/maximal.hpp"
#include "schromax/propagator.hpp"

using namespace schromax;
using namespace schromax::harness;

namespace {

constexpr double pi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

int failures = 0;

void line(const std::string& id, bool pass, const std::string& detail) {
    std::printf("[%s] %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void unitarity() {
    const auto t0 = Clock::now();
    const GridSpec g = GridSpec::standard(1);
    double worst = 0.0;
    int cases = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = random_band_limited(g, 1.0 + 0.9 * trial, 1000 + trial);
        const double norm = l2_norm(from_spectrum(F));
        for (double a : {0.5, 1.0, 2.0, 3.0}) {
            const Propagator p(F, a);
            for (double t : {0.1, 1.0, 10.0}) {
                worst = std::max(worst, std::abs(l2_norm(p.evaluate(t)) - norm) / norm);
                ++cases;
            }
        }
    }
    const double secs = since(t0);
    line("1", worst <= 1e-12 && secs < 10.0,
         fmt("unitarity: max relative deviation %.2e over %d cases (limit 1e-12), %.2f s (limit 10 s)", worst, cases, secs));
}

void gaussian_oracle() {
    const GridSpec g(1, 40.0, 4096);
    const auto F = to_spectrum(gaussian(g));
    double worst = 0.0;
    for (double t : {0.1, 0.5, 1.0}) {
        const auto u = propagate(F, {2.0, t, {}});
        const Complex w = 1.0 - Complex(0.0, 2.0 * t);
        for (std::size_t j = 0; j < g.samples(); ++j) {
            const double x = g.position(j);
            worst = std::max(worst, std::abs(u[j] - std::pow(w, -0.5) * std::exp(-x * x / (2.0 * w))));
        }
    }
    const double at_origin = std::abs(propagate(F, {2.0, 0.5, {}})[g.samples() / 2]);
    const double dev = std::abs(at_origin - std::pow(2.0, -0.25));
    line("2", worst < 1e-6 && dev <= 1e-6,
         fmt("Gaussian oracle: max error %.2e (limit 1e-6); |S_0.5 f(0)| = %.10f, deviation %.2e from 2^-1/4", worst,
             at_origin, dev));
}

void sobolev_convention() {
    double worst = 0.0;
    for (int dim = 1; dim <= 3; ++dim) {
        const GridSpec g = GridSpec::standard(dim);
        for (int trial = 0; trial < 5; ++trial) {
            const auto F = random_band_limited(g, 2.0 + trial, 70 + 10 * dim + trial);
            const double expected = std::pow(2 * pi, dim / 2.0) * l2_norm(from_spectrum(F));
            worst = std::max(worst, std::abs(sobolev_norm(F, 0.0) - expected) / expected);
        }
    }
    const GridSpec fine(1, 2 * pi * std::ldexp(1.0, 20), std::size_t{1} << 22);
    const double h1 = sobolev_norm(indicator_spectrum(fine, 1.0), 1.0);
    const double dev = std::abs(h1 - std::sqrt(8.0 / 3.0));
    line("3", worst <= 1e-10 && dev <= 1e-6,
         fmt("Sobolev convention: H_0 vs (2pi)^(n/2) L2 max relative deviation %.2e (limit 1e-10); H_1 of the ball "
             "indicator %.9f, deviation %.2e from sqrt(8/3)",
             worst, h1, dev));
}

void littlewood_paley() {
    int violations = 0, exact = 0, checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const GridSpec g = trial % 2 ? GridSpec(2, 20.0, 128) : GridSpec::standard(1);
        const auto F = random_band_limited(g, 0.5 + 1.2 * trial, 2000 + trial);
        const auto parts = dyadic_split(F);
        std::vector<Complex> total(g.size());
        bool disjoint = true;
        for (const auto& piece : parts.pieces) {
            const auto c = piece.coefficients();
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (c[i] == Complex{}) continue;
                if (total[i] != Complex{}) disjoint = false;
                total[i] = c[i];
            }
        }
        if (disjoint && std::equal(total.begin(), total.end(), F.coefficients().begin())) ++exact;
        std::vector<double> piece_sq;
        for (const auto& p : parts.pieces) piece_sq.push_back(std::pow(l2_norm(from_spectrum(p)), 2));
        for (double s : {0.25, 0.5, 1.0, 2.0}) {
            double shells = 0.0;
            for (std::size_t k = 0; k < piece_sq.size(); ++k) shells += std::pow(4.0, static_cast<double>(k) * s) * piece_sq[k];
            const double middle = std::pow(sobolev_norm(F, s), 2) / std::pow(2 * pi, g.dim());
            // 1e-12 relative allowance for the two summation paths.
            if (!(std::pow(4.0, -s) * shells <= middle * (1 + 1e-12))) ++violations;
            if (!(middle <= std::pow(2.0, s) * shells * (1 + 1e-12))) ++violations;
            ++checks;
        }
    }
    line("4", violations == 0 && exact == 100,
         fmt("Littlewood-Paley sandwich: %d violations in %d (spectrum, s) pairs; exact reconstruction %d/100", violations,
             checks, exact));
}

SpaceTimeSamples random_points(std::mt19937_64& rng, std::size_t count) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SpaceTimeSamples s;
    s.dim = 1;
    for (std::size_t i = 0; i < count; ++i) {
        s.positions.push_back(unit(rng));
        s.times.push_back(unit(rng));
    }
    return s;
}

void covering_oracles() {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int mismatch = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> pts(1 + rng() % 10);
        for (auto& p : pts) p = unit(rng);
        const double r = 0.005 + 0.5 * unit(rng);
        if (cover_1d(pts, r) != cover_1d_bruteforce(pts, r)) ++mismatch;
    }
    int outside = 0;
    double worst_factor = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = random_points(rng, 1 + rng() % 6);
        const double r = std::ldexp(1.0, -static_cast<int>(rng() % 4));
        const double b = 0.5 + 0.5 * static_cast<double>(rng() % 5);
        const double grid = static_cast<double>(cover_aniso(s, b, r));
        const double brute = static_cast<double>(cover_aniso_bruteforce(s, b, r));
        worst_factor = std::max(worst_factor, grid / brute);
        if (grid < brute || grid > 4.0 * brute) ++outside;
    }
    line("5", mismatch == 0 && outside == 0,
         fmt("covering oracles: greedy vs brute force %d mismatches / 500; grid count outside [1, 4] x minimum %d / 500 "
             "(largest factor %.2f)",
             mismatch, outside, worst_factor));
}

void lemmas() {
    std::mt19937_64 rng(2718);
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = random_points(rng, 1 + rng() % 6);
        const double r = std::ldexp(1.0, -static_cast<int>(rng() % 4));
        const double b = 0.5 * static_cast<double>(1 + rng() % 4);
        const double b1 = b + static_cast<double>(1 + rng() % 2);
        if (!lemma1_check(s, r, b, b1, CountMethod::brute).holds()) ++violations;
    }
    const auto rep = lemma2_check(SetSpec::curve_graph(CurveSpec::power(0.5)), 2.0, 2, 8);
    line("6", violations == 0 && !rep.grows,
         fmt("lemma1_check: %d violations / 500 brute-force instances; lemma2_check ratio over m = 2..8: max %.4f, "
             "log-slope %.4f, monotone growth %s",
             violations, rep.max_ratio, rep.ratio_slope, rep.grows ? "yes" : "no"));
}

void sequence_profiles() {
    const auto t0 = Clock::now();
    const auto harmonic = covering_profile(SetSpec::time_sequence(SequenceSpec::power(1.0)), 1.0, 4, 14);
    const double slope = profile_slope(harmonic, 4, 14);
    const auto n10 = count_covering(SetSpec::time_sequence(SequenceSpec::geometric(0.5)), 1.0, std::ldexp(1.0, -10)).count;
    const double secs = since(t0);
    line("7", slope >= 0.4 && slope <= 0.6 && n10 >= 9 && n10 <= 12 && secs < 5.0,
         fmt("sequence profiles: 1/k slope %.4f (range [0.4, 0.6]); 2^-k count at m = 10 is %zu (range [9, 12]); "
             "%.2f s (limit 5 s)",
             slope, n10, secs));
}

void explicit_bounds() {
    const GridSpec g = GridSpec::standard(1);
    const auto cubes = random_cube_trials(g, 2.0, 20, 808);
    const auto covers = random_cover_trials(g, 2.0, 20, 909);
    auto failed = [](const std::vector<VerificationReport>& v) {
        return static_cast<int>(std::count_if(v.begin(), v.end(), [](const auto& r) { return !r.pass; }));
    };
    auto worst = [](const std::vector<VerificationReport>& v) {
        double w = 0.0;
        for (const auto& r : v) w = std::max(w, r.measured / r.bound);
        return w;
    };
    line("8", failed(cubes) == 0 && failed(covers) == 0,
         fmt("explicit bounds: single cube %d / 20 violations (max measured/bound %.3f); cube cover %d / 20 "
             "violations (max measured/bound %.3f)",
             failed(cubes), worst(cubes), failed(covers), worst(covers)));
}

void threshold_battery() {
    const auto t0 = Clock::now();

    auto family_cfg = parse_config("[function]\nfamily = modulated\n[set]\nkind = graph\nbeta = 0.5\n[params]\na = 2\ns = 1.1\n");
    const std::vector<double> lambdas{0.0, 4.0, 16.0, 64.0};
    const auto fam = ratio_family(family_cfg, lambdas, SumMode::thm1);
    std::string ratios;
    for (const auto& r : fam.reports) ratios += fmt("%.4g ", r.ratio);
    line("9a", fam.spread < 10.0 && fam.all_conclusive,
         fmt("modulated-Gaussian family (lambda 0, 4, 16, 64), graph of t^1/2, a = 2, s = 1.1: ratios %smax/min %.2f "
             "(limit 10)",
             ratios.c_str(), fam.spread));

    const auto graph = SetSpec::curve_graph(CurveSpec::power(0.5));
    const auto scan_graph = scan_s(graph, 2.0, s_grid(0.5, 1.5, 0.05), 0, 10);
    const double gb = scan_graph.boundary.value_or(NAN);
    line("9b", scan_graph.boundary && std::abs(gb - 1.0) <= 0.05 && scan_graph.monotone,
         fmt("scan over s in [0.5, 1.5] step 0.05, graph of t^1/2: boundary %.3f (target 1.00 +- 0.05), monotone %s", gb,
             scan_graph.monotone ? "yes" : "no"));

    const auto seq = SetSpec::curve_sequence(CurveSpec::power(0.5), SequenceSpec::power(1.0));
    const auto scan_seq = scan_s(seq, 2.0, s_grid(0.1, 1.0, 0.05), 0, 10);
    const double sb = scan_seq.boundary.value_or(NAN);
    line("9c", scan_seq.boundary && std::abs(sb - 0.5) <= 0.05 && scan_seq.monotone,
         fmt("scan over s in [0.1, 1.0] step 0.05, curve sequence t_k = 1/k: boundary %.3f (target 0.50 +- 0.05), "
             "monotone %s",
             sb, scan_seq.monotone ? "yes" : "no"));

    // The shipped configuration battery, run in process.
    int ran = 0;
    std::vector<std::filesystem::path> configs;
    for (const auto& entry : std::filesystem::directory_iterator(SCHROMAX_SOURCE_DIR "/configs"))
        if (entry.path().extension() == ".cfg") configs.push_back(entry.path());
    std::sort(configs.begin(), configs.end());
    for (const auto& path : configs) {
        (void)run_experiment(load_config(path));
        ++ran;
    }
    const double secs = since(t0);
    line("9d", secs < 300.0 && ran == static_cast<int>(configs.size()) && ran > 0,
         fmt("threshold battery plus %d shipped configs: %.1f s (limit 300 s)", ran, secs));
}

void convergence() {
    const GridSpec g = GridSpec::standard(1);
    const auto rep = convergence_experiment(to_spectrum(gaussian(g)), 2.0,
                                            SetSpec::time_sequence(SequenceSpec::geometric(0.5)), 20);
    std::string ratios;
    for (std::size_t k = 1; k <= 4; ++k) ratios += fmt("%.4f ", rep.rows[k].d / rep.rows[k].t);
    line("10a", rep.fitted_bound_holds,
         fmt("d_k <= C t_k for k <= 20 with C = d_1/t_1 = %.4f: %s; d_k/t_k for k = 1..4: %s(tends to max|f''| = 1); "
             "the Lipschitz bound d_k <= t_k (2pi)^-1 int xi^2 |fhat| holds for all k: %s",
             rep.fitted_constant,
             rep.fitted_bound_holds ? "holds" : fmt("first violated at k = %zu", rep.first_fitted_violation.value_or(0)).c_str(),
             ratios.c_str(), rep.envelope_holds ? "yes" : "no"));
    line("10b", rep.tail_decreasing, fmt("d_k strictly decreasing for k >= 3: %s; d_20 = %.3e", rep.tail_decreasing ? "yes" : "no",
                                        rep.rows.back().d));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    unitarity();
    gaussian_oracle();
    sobolev_convention();
    littlewood_paley();
    covering_oracles();
    lemmas();
    sequence_profiles();
    explicit_bounds();
    threshold_battery();
    convergence();
    std::printf("acceptance: %d line(s) failed, total %.1f s\n", failures, since(t0));
    return failures == 0 ? 0 : 1;
}
