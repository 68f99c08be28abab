#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "schromax/families.hpp"
#include "schromax/harness/config.hpp"
#include "schromax/harness/experiments.hpp"
#include "schromax/harness/report.hpp"
#include "schromax/propagator.hpp"

using namespace schromax;
using namespace schromax::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("schromax_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config defaults") {
    const auto c = parse_config("");
    CHECK(c.experiment == "verify-thm1");
    CHECK(c.grid == GridSpec::standard(1));
    CHECK(c.family == "gaussian");
    CHECK(c.set.time_only());
    CHECK(c.a == 2.0);
    CHECK(c.s == 1.1);
    CHECK(c.m_max == 10);
    CHECK(c.echo.at("grid.N") == "4096");
    CHECK(c.echo.at("grid.L") == "40");
}

TEST_CASE("config parsing of sections, comments and overrides") {
    const std::string text = R"(
# leading comment
[grid]
n = 2          # trailing comment
[set]
kind = graph
beta = 0.25
direction = 0, 1
[params]
a = 3
mode = thm1
)";
    const auto c = parse_config(text, {"params.s=2.5", "grid.N=64"});
    CHECK(c.grid == GridSpec(2, 20.0, 64));
    CHECK(c.a == 3.0);
    CHECK(c.s == 2.5);
    REQUIRE(c.set.curve() != nullptr);
    CHECK(c.set.curve()->beta() == 0.25);
    CHECK(c.set.curve()->direction()[1] == 1.0);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("[grid]\nsize = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[nowhere]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("a = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\na 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\na = two\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\na = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\ns = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\nm_max = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\nmode = other\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nN = 100\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nn = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[function]\nfamily = square\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[function]\nfamily = indicator\nradius = 1000\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[set]\nkind = torus\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[set]\nkind = graph\nbeta = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[set]\nkind = sequence\nsequence = file\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[output]\nemit_plot_data = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"params.unknown=1"}), ConfigError);
    CHECK_THROWS_AS(parse_config("", {"novalue"}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("relative data files resolve against the config directory") {
    const auto dir = scratch("files");
    {
        std::ofstream seq(dir / "times.txt");
        seq << "1\n0.5\n0.1\n";
        std::ofstream cfg(dir / "run.cfg");
        cfg << "[set]\nkind = sequence\nsequence = file\nsequence_file = times.txt\n";
    }
    const auto c = load_config(dir / "run.cfg");
    const auto* ts = std::get_if<TimeSequence>(&c.set.shape());
    REQUIRE(ts != nullptr);
    CHECK(ts->sequence.max_terms() == 3);
}

TEST_CASE("function families") {
    auto c = parse_config("[grid]\nN = 1024\n[function]\nfamily = modulated\nlambda = 3\n");
    const auto F = build_function(c);
    const auto expected = modulated_gaussian_spectrum(c.grid, 3.0);
    double err = 0.0;
    for (std::size_t i = 0; i < c.grid.size(); ++i) err = std::max(err, std::abs(F[i] - expected[i]));
    CHECK(err < 1e-8);

    c = parse_config("[function]\nfamily = random_band\nradius = 5\nseed = 4\n");
    CHECK(spectral_radius(build_function(c)) <= 5.0);
    c = parse_config("[function]\nfamily = indicator\nradius = 2\n");
    CHECK(spectral_radius(build_function(c)) <= 2.0);
}

TEST_CASE("single-cube bound") {
    const GridSpec g = GridSpec::standard(1);
    const auto F = random_band_limited(g, 8.0, 1);
    const double norm = l2_norm(from_spectrum(F));

    Cube cube{{0.5}, 0.25, 0.125};
    const auto rep = verify_cube(F, 2.0, cube, 8.0);
    CHECK(rep.bound == doctest::Approx(4.0 * norm).epsilon(1e-14));
    CHECK(rep.pass);
    CHECK(rep.measured >= norm * (1 - 1e-12));

    // Recompute the bound from the echoed inputs.
    const auto& in = rep.inputs;
    const double rA = in["r"].get<double>() * in["A"].get<double>();
    const double again = std::pow(1 + rA, 1) * (1 + std::pow(rA, in["a"].get<double>())) * in["f_norm"].get<double>();
    CHECK(again == doctest::Approx(rep.bound).epsilon(1e-15));

    const auto point = verify_cube(F, 2.0, Cube{{0.7}, 1.3, 0.0}, 8.0);
    CHECK(point.measured == doctest::Approx(norm).epsilon(1e-12));
    CHECK(point.bound == doctest::Approx(norm).epsilon(1e-15));
    CHECK(point.pass);

    CHECK_THROWS_AS(verify_cube(F, 2.0, Cube{{0.0}, 0.0, 0.2}, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(verify_cube(F, 2.0, Cube{{0.0}, 0.0, 0.1}, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(verify_cube(F, 2.0, Cube{{0.0}, 0.0, 0.1}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(verify_cube(to_spectrum(gaussian(g)), 2.0, Cube{{0.0}, 0.0, 0.1}, 8.0), std::invalid_argument);
}

TEST_CASE("randomized cube bounds") {
    for (const auto& g : {GridSpec::standard(1), GridSpec(2, 20.0, 64)}) {
        const auto reports = random_cube_trials(g, 2.0, 20, 42);
        REQUIRE(reports.size() == 20);
        for (const auto& r : reports) {
            CHECK(r.pass);
            CHECK(r.inputs["r"].get<double>() * r.inputs["A"].get<double>() <= 1.0);
        }
    }
}

TEST_CASE("cube-cover bound") {
    const GridSpec g = GridSpec::standard(1);
    const auto F = random_band_limited(g, 8.0, 2);
    const double norm = l2_norm(from_spectrum(F));

    SUBCASE("one cube") {
        const Cube cube{{0.0}, 0.0, 0.125};
        const auto samples = cube_samples(cube, 2.0, 9);
        const std::vector<Cube> cubes{cube};
        const auto rep = verify_cover_bound(F, 2.0, samples, cubes, 8.0);
        CHECK(rep.bound == doctest::Approx(16.0 * norm * norm).epsilon(1e-14));
        CHECK(rep.pass);
        const auto single = verify_cube(F, 2.0, cube, 8.0, 9);
        CHECK(rep.measured == doctest::Approx(single.measured * single.measured).epsilon(1e-14));
    }
    SUBCASE("graph of t^(1/2) at m = 3") {
        const auto graph = SetSpec::curve_graph(CurveSpec::power(0.5));
        const auto cover = cover_set(graph, 2.0, 3, 1.0 / 1024, g.spacing());
        CHECK(cover.cubes.size() == count_covering(graph, 2.0, 0.125).count);
        const auto rep = verify_cover_bound(F, 2.0, cover.samples, cover.cubes, 8.0);
        CHECK(rep.pass);

        auto doubled = cover.cubes;
        doubled.insert(doubled.end(), cover.cubes.begin(), cover.cubes.end());
        const auto rep2 = verify_cover_bound(F, 2.0, cover.samples, doubled, 8.0);
        CHECK(rep2.pass);
        CHECK(rep2.measured == rep.measured);
        CHECK(rep2.bound == doctest::Approx(2 * rep.bound));

        std::vector<Cube> missing(cover.cubes.begin() + 1, cover.cubes.end());
        CHECK_THROWS_AS(verify_cover_bound(F, 2.0, cover.samples, missing, 8.0), std::invalid_argument);
    }
    SUBCASE("rejections") {
        const auto samples = cube_samples(Cube{{0.0}, 0.0, 0.1}, 2.0, 3);
        const std::vector<Cube> mixed{{{0.0}, 0.0, 0.1}, {{0.0}, 0.0, 0.05}};
        CHECK_THROWS_AS(verify_cover_bound(F, 2.0, samples, mixed, 8.0), std::invalid_argument);
        const std::vector<Cube> wide{{{0.0}, 0.0, 0.2}};
        CHECK_THROWS_AS(verify_cover_bound(F, 2.0, samples, wide, 8.0), std::invalid_argument);
    }
}

TEST_CASE("randomized cover bounds") {
    const auto reports = random_cover_trials(GridSpec::standard(1), 2.0, 20, 7);
    REQUIRE(reports.size() == 20);
    for (const auto& r : reports) CHECK(r.pass);
}

TEST_CASE("time-only ratio reports") {
    const GridSpec g = GridSpec::standard(1);
    const auto F = indicator_spectrum(g, 1.0);
    const auto origin = verify_thmA(F, SetSpec::origin(), 2.0, 0.5, {.m_max = 30});
    CHECK(origin.lhs == doctest::Approx(l2_norm(from_spectrum(F))).epsilon(1e-14));
    CHECK(origin.sum.total() >= 1.0);
    CHECK(origin.ratio <= 1.0);

    const auto geometric = SetSpec::time_sequence(SequenceSpec::geometric(0.5));
    const auto rep = verify_thmA(to_spectrum(gaussian(g)), geometric, 2.0, 0.3, {.m_max = 100});
    CHECK(rep.sum.converged);
    CHECK(rep.conclusive);

    CHECK_THROWS_AS(verify_thmA(F, SetSpec::curve_graph(CurveSpec::power(0.5)), 2.0, 1.1), std::invalid_argument);
}

TEST_CASE("interval family ratios under time-only weights") {
    auto c = parse_config("[function]\nfamily = modulated\n[set]\nkind = interval\n[params]\nm_max = 20\n");
    const std::vector<double> lambdas{0.0, 4.0, 16.0, 64.0};
    const auto fam = ratio_family(c, lambdas, SumMode::thmA);
    CHECK(fam.all_conclusive);
    for (const auto& r : fam.reports) CHECK(r.ratio <= fam.reports.front().ratio);
    MESSAGE("interval family max/min: " << fam.spread);
}

TEST_CASE("predicted thresholds") {
    CHECK(*predicted_threshold(SetSpec::curve_graph(CurveSpec::power(0.5)), 2.0) == 1.0);
    CHECK(*predicted_threshold(SetSpec::curve_graph(CurveSpec::power(0.25)), 2.0) == 2.0);
    CHECK(*predicted_threshold(SetSpec::time_interval(1.0), 2.0) == 1.0);
    CHECK(*predicted_threshold(SetSpec::origin(), 2.0) == 0.0);
    CHECK(*predicted_threshold(SetSpec::curve_sequence(CurveSpec::power(0.5), SequenceSpec::power(1.0)), 2.0) == 0.5);
    CHECK(*predicted_threshold(SetSpec::time_sequence(SequenceSpec::geometric(0.5)), 2.0) == 0.0);
}

TEST_CASE("s grids") {
    const auto grid = s_grid(0.5, 1.5, 0.05);
    CHECK(grid.size() == 21);
    CHECK(grid[2] == 0.6);
    CHECK(grid.back() == 1.5);
    CHECK_THROWS_AS(s_grid(0.0, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("summability scans") {
    SUBCASE("graph of t^(1/2)") {
        const auto graph = SetSpec::curve_graph(CurveSpec::power(0.5));
        const auto rep = scan_s(graph, 2.0, s_grid(0.5, 1.5, 0.05), 0, 10);
        REQUIRE(rep.boundary.has_value());
        CHECK(std::abs(*rep.boundary - 1.0) <= 0.05);
        CHECK(rep.monotone);
        CHECK(rep.matches);
    }
    SUBCASE("curve sequence along 1/k") {
        const auto set = SetSpec::curve_sequence(CurveSpec::power(0.5), SequenceSpec::power(1.0));
        const auto rep = scan_s(set, 2.0, s_grid(0.1, 1.0, 0.05), 0, 10);
        REQUIRE(rep.boundary.has_value());
        CHECK(std::abs(*rep.boundary - 0.5) <= 0.05);
        CHECK(rep.monotone);
    }
    SUBCASE("curve sequence along 2^-k") {
        const auto set = SetSpec::curve_sequence(CurveSpec::power(0.5), SequenceSpec::geometric(0.5));
        const auto rep = scan_s(set, 2.0, s_grid(0.1, 1.5, 0.1), 0, 40);
        CHECK_FALSE(rep.boundary.has_value());
        for (const auto& row : rep.rows) CHECK(row.summable);
        CHECK(rep.matches);
    }
    SUBCASE("ratios are attached to summable rows only") {
        const GridSpec g(1, 40.0, 1024);
        const auto F = to_spectrum(gaussian(g));
        const auto rep = scan_s(SetSpec::time_interval(1.0), 2.0, s_grid(0.5, 1.5, 0.25), 0, 16, SumMode::thmA, &F,
                                {.resolution = 1.0 / 256});
        for (const auto& row : rep.rows) CHECK(row.ratio.has_value() == row.summable);
    }
}

TEST_CASE("convergence table for a Gaussian along 2^-k") {
    const GridSpec g = GridSpec::standard(1);
    const auto F = to_spectrum(gaussian(g));
    const auto rep = convergence_experiment(F, 2.0, SetSpec::time_sequence(SequenceSpec::geometric(0.5)), 20);
    REQUIRE(rep.rows.size() == 21);
    CHECK(rep.rows[0].d == 0.0);
    CHECK(rep.tail_decreasing);
    CHECK(rep.envelope_holds);
    CHECK(rep.pass());
    // (2 pi)^{-1} int xi^2 |fhat| = 1 for the unit Gaussian.
    CHECK(rep.time_lipschitz == doctest::Approx(1.0).epsilon(1e-9));
    // As t -> 0, d_k / t_k -> max |f''| = 1.
    const auto& last = rep.rows.back();
    CHECK(std::abs(last.d / last.t - 1.0) < 1e-6);
    MESSAGE("fitted constant " << rep.fitted_constant << ", fitted bound holds: " << rep.fitted_bound_holds);
}

TEST_CASE("convergence with the curve shift t^(1/2)") {
    const GridSpec g = GridSpec::standard(1);
    const auto F = to_spectrum(gaussian(g));
    const auto set = SetSpec::curve_sequence(CurveSpec::power(0.5), SequenceSpec::geometric(0.5));
    const auto rep = convergence_experiment(F, 2.0, set, 20);
    CHECK(rep.rows[0].d == 0.0);
    CHECK(rep.envelope_holds);
    CHECK(rep.tail_decreasing);
    CHECK(rep.rows.back().d < 1e-3);
    CHECK_THROWS_AS(convergence_experiment(F, 2.0, SetSpec::time_interval(1.0), 5), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs") {
    auto c = parse_config("[experiment]\nname = rhs-sum\n[set]\nkind = sequence\nsequence = power\n[params]\nmode = thmA\ns = 0.7\nm_max = 12\n");
    Json echo = Json::object();
    for (const auto& [k, v] : c.echo) echo[k] = v;
    const auto d1 = scratch("det1"), d2 = scratch("det2");
    const auto f1 = write_result(run_experiment(c), echo, d1, "x", true);
    const auto f2 = write_result(run_experiment(c), echo, d2, "x", true);
    REQUIRE(f1.size() == f2.size());
    for (std::size_t i = 0; i < f1.size(); ++i) {
        CHECK(f1[i].filename() == f2[i].filename());
        CHECK(slurp(f1[i]) == slurp(f2[i]));
    }
    const auto csv = slurp(d1 / "x_sum.csv");
    CHECK(csv.rfind("m,r,count,term,partial_sum\n", 0) == 0);
    const auto json = Json::parse(slurp(d1 / "x.json"));
    CHECK(json["schema"] == kReportSchema);
    CHECK(json["config"]["params.s"] == "0.7");
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("every experiment name runs on a small config") {
    for (const auto& name : experiment_names()) {
        std::string text = "[experiment]\nname = " + name + "\n[grid]\nN = 256\n[params]\nm_max = 6\n";
        if (name == "verify-cube" || name == "verify-cover")
            text += "[function]\nfamily = random_band\nradius = 4\n[cube]\nband = 4\nside = 0.25\ncover_m = 2\ntrials = 2\n";
        if (name == "verify-cover" || name == "verify-thm1" || name == "maximal")
            text += "[set]\nkind = graph\n";
        if (name == "converge") text += "[set]\nkind = sequence\n";
        if (name == "verify-thmA") text += "[set]\nkind = interval\n";
        const auto res = run_experiment(parse_config(text));
        CHECK(res.name == name);
        CHECK_FALSE(res.tables.empty());
    }
    CHECK_THROWS_AS(run_experiment(parse_config("[experiment]\nname = nothing\n")), ConfigError);
}
