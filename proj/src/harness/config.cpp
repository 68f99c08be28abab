#include "schromax/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "schromax/families.hpp"

namespace schromax::harness {
namespace {

// Every accepted key with its default text.
const std::map<std::string, std::string>& defaults() {
    static const std::map<std::string, std::string> table = {
        {"experiment.name", "verify-thm1"},
        {"grid.n", "1"},
        {"grid.L", "auto"},
        {"grid.N", "auto"},
        {"function.family", "gaussian"},
        {"function.lambda", "0"},
        {"function.radius", "1"},
        {"function.seed", "1"},
        {"function.file", ""},
        {"set.kind", "point"},
        {"set.length", "1"},
        {"set.sequence", "geometric"},
        {"set.ratio", "0.5"},
        {"set.decay", "1"},
        {"set.gamma", ""},
        {"set.sequence_file", ""},
        {"set.max_terms", "100000000"},
        {"set.curve", "power"},
        {"set.beta", "0.5"},
        {"set.amplitude", "1"},
        {"set.terms", "20"},
        {"set.curve_file", ""},
        {"set.direction", ""},
        {"set.corner", ""},
        {"set.corner_t", "0"},
        {"set.side", "1"},
        {"set.box_exponent", "2"},
        {"params.a", "2"},
        {"params.s", "1.1"},
        {"params.m_min", "0"},
        {"params.m_max", "10"},
        {"params.resolution", "0.0009765625"},
        {"params.mode", "thm1"},
        {"params.t", "0"},
        {"params.shift", ""},
        {"params.threads", "0"},
        {"cube.corner", ""},
        {"cube.corner_t", "0"},
        {"cube.side", "0.125"},
        {"cube.band", "8"},
        {"cube.points", "9"},
        {"cube.cover_m", "3"},
        {"cube.trials", "20"},
        {"cube.seed", "1"},
        {"scan.s_min", "0.5"},
        {"scan.s_max", "1.5"},
        {"scan.s_step", "0.05"},
        {"family.lambdas", ""},
        {"family.max_spread", "10"},
        {"converge.k_max", "20"},
        {"output.dir", "."},
        {"output.prefix", ""},
        {"output.emit_plot_data", "false"},
    };
    return table;
}

std::string trim(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

[[noreturn]] void fail(const std::string& key, const std::string& message) {
    throw ConfigError(key + ": " + message);
}

void assign(std::map<std::string, std::string>& values, const std::string& key, std::string value,
            const std::string& where) {
    if (!defaults().contains(key)) throw ConfigError(where + "unknown key '" + key + "'");
    values[key] = std::move(value);
}

double to_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
        fail(key, "expected a finite number, got '" + text + "'");
    return value;
}

long long to_integer(const std::string& key, const std::string& text) {
    long long value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
        fail(key, "expected an integer, got '" + text + "'");
    return value;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    fail(key, "expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) out.push_back(to_double(key, trim(item)));
    return out;
}

class Reader {
public:
    Reader(const std::map<std::string, std::string>& values, std::filesystem::path base)
        : values_(values), base_(std::move(base)) {}

    const std::string& text(const std::string& key) const { return values_.at(key); }
    double number(const std::string& key) const { return to_double(key, text(key)); }
    double positive(const std::string& key) const {
        double v = number(key);
        if (!(v > 0.0)) fail(key, "must be > 0");
        return v;
    }
    long long integer(const std::string& key, long long lo, long long hi) const {
        long long v = to_integer(key, text(key));
        if (v < lo || v > hi) fail(key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }
    bool flag(const std::string& key) const { return to_bool(key, text(key)); }
    std::vector<double> list(const std::string& key) const { return to_list(key, text(key)); }
    std::filesystem::path path(const std::string& key) const {
        const std::string& t = text(key);
        if (t.empty()) fail(key, "a file path is required");
        std::filesystem::path p(t);
        return p.is_absolute() ? p : base_ / p;
    }
    template <class F>
    auto guarded(const std::string& key, F&& make) const {
        try {
            return make();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(key, e.what());
        }
    }

private:
    const std::map<std::string, std::string>& values_;
    std::filesystem::path base_;
};

std::vector<double> direction_for(const Reader& in, int dim) {
    auto direction = in.list("set.direction");
    if (direction.empty()) {
        direction.assign(static_cast<std::size_t>(dim), 0.0);
        direction[0] = 1.0;
    }
    if (static_cast<int>(direction.size()) != dim) fail("set.direction", "needs grid.n components");
    return direction;
}

SequenceSpec build_sequence(const Reader& in) {
    const std::string& kind = in.text("set.sequence");
    auto max_terms = static_cast<std::size_t>(in.integer("set.max_terms", 1, 1'000'000'000'000LL));
    SequenceSpec seq = in.guarded("set.sequence", [&] {
        if (kind == "geometric") return SequenceSpec::geometric(in.number("set.ratio"), max_terms);
        if (kind == "power") return SequenceSpec::power(in.number("set.decay"), max_terms);
        if (kind == "file") return SequenceSpec::load(in.path("set.sequence_file"));
        fail("set.sequence", "expected geometric, power or file, got '" + kind + "'");
    });
    if (!in.text("set.gamma").empty()) seq.gamma = in.positive("set.gamma");
    return seq;
}

std::vector<double> read_column(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open '" + path.string() + "'");
    std::vector<double> values;
    std::string line;
    while (std::getline(file, line)) {
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        values.push_back(to_double(path.string(), t));
    }
    return values;
}

CurveSpec build_curve(const Reader& in, int dim) {
    const std::string& kind = in.text("set.curve");
    auto direction = direction_for(in, dim);
    return in.guarded("set.curve", [&] {
        if (kind == "power")
            return CurveSpec::power(in.number("set.beta"), in.number("set.amplitude"), direction);
        if (kind == "weierstrass")
            return CurveSpec::weierstrass(in.number("set.beta"), static_cast<int>(in.integer("set.terms", 1, 60)),
                                          in.number("set.amplitude"), direction);
        if (kind == "constant")
            return CurveSpec::constant(in.number("set.amplitude"), in.number("set.beta"), direction);
        if (kind == "file")
            return CurveSpec::tabulated(read_column(in.path("set.curve_file")), in.number("set.beta"), direction);
        fail("set.curve", "expected power, weierstrass, constant or file, got '" + kind + "'");
    });
}

SetSpec build_set(const Reader& in, int dim) {
    const std::string& kind = in.text("set.kind");
    return in.guarded("set.kind", [&] {
        if (kind == "point") return SetSpec::origin(dim);
        if (kind == "interval") return SetSpec::time_interval(in.number("set.length"), dim);
        if (kind == "sequence") return SetSpec::time_sequence(build_sequence(in), dim);
        if (kind == "graph") return SetSpec::curve_graph(build_curve(in, dim));
        if (kind == "curve_sequence") return SetSpec::curve_sequence(build_curve(in, dim), build_sequence(in));
        if (kind == "box") {
            auto corner = in.list("set.corner");
            if (corner.empty()) corner.assign(static_cast<std::size_t>(dim), 0.0);
            if (static_cast<int>(corner.size()) != dim) fail("set.corner", "needs grid.n components");
            return SetSpec::box(corner, in.number("set.corner_t"), in.number("set.side"),
                                in.number("set.box_exponent"));
        }
        fail("set.kind", "expected point, interval, sequence, graph, curve_sequence or box, got '" + kind + "'");
    });
}

std::string format_number(double value) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    (void)ec;
    return std::string(buffer, end);
}

ExperimentConfig build(std::map<std::string, std::string> values, const std::filesystem::path& base) {
    Reader in(values, base);
    ExperimentConfig c;

    c.experiment = in.text("experiment.name");

    int dim = static_cast<int>(in.integer("grid.n", 1, kMaxDim));
    GridSpec standard = GridSpec::standard(dim);
    double length = in.text("grid.L") == "auto" ? standard.length() : in.positive("grid.L");
    std::size_t samples = in.text("grid.N") == "auto"
                              ? standard.samples()
                              : static_cast<std::size_t>(in.integer("grid.N", 16, 1LL << 26));
    c.grid = in.guarded("grid.N", [&] { return GridSpec(dim, length, samples); });
    values["grid.L"] = format_number(length);
    values["grid.N"] = std::to_string(samples);

    c.family = in.text("function.family");
    static const std::vector<std::string> families = {"gaussian", "modulated", "indicator", "random_band", "file"};
    if (std::find(families.begin(), families.end(), c.family) == families.end())
        fail("function.family", "expected gaussian, modulated, indicator, random_band or file, got '" + c.family + "'");
    c.lambda = in.number("function.lambda");
    c.radius = in.positive("function.radius");
    c.seed = static_cast<std::uint64_t>(in.integer("function.seed", 0, std::numeric_limits<long long>::max()));
    if (c.family == "file") c.spectrum_file = in.path("function.file").string();
    if ((c.family == "indicator" || c.family == "random_band") && c.radius > c.grid.nyquist())
        fail("function.radius", "exceeds the grid Nyquist frequency");

    c.set = build_set(in, dim);

    c.a = in.positive("params.a");
    c.s = in.positive("params.s");
    c.m_min = static_cast<int>(in.integer("params.m_min", 0, 200));
    c.m_max = static_cast<int>(in.integer("params.m_max", 0, 200));
    if (c.m_max < c.m_min) fail("params.m_max", "must be >= params.m_min");
    c.resolution = in.positive("params.resolution");
    const std::string& mode = in.text("params.mode");
    if (mode == "thm1")
        c.mode = SumMode::thm1;
    else if (mode == "thmA")
        c.mode = SumMode::thmA;
    else
        fail("params.mode", "expected thm1 or thmA, got '" + mode + "'");
    c.t = in.number("params.t");
    c.shift = in.list("params.shift");
    if (!c.shift.empty() && static_cast<int>(c.shift.size()) != dim) fail("params.shift", "needs grid.n components");
    c.threads = static_cast<unsigned>(in.integer("params.threads", 0, 1024));

    c.cube.corner = in.list("cube.corner");
    if (!c.cube.corner.empty() && static_cast<int>(c.cube.corner.size()) != dim)
        fail("cube.corner", "needs grid.n components");
    c.cube.corner_time = in.number("cube.corner_t");
    c.cube.side = in.number("cube.side");
    if (c.cube.side < 0.0) fail("cube.side", "must be >= 0");
    c.cube.band = in.positive("cube.band");
    if (c.cube.band > c.grid.nyquist()) fail("cube.band", "exceeds the grid Nyquist frequency");
    c.cube.points = static_cast<int>(in.integer("cube.points", 1, 257));
    c.cube.cover_m = static_cast<int>(in.integer("cube.cover_m", 0, 20));
    c.cube.trials = static_cast<int>(in.integer("cube.trials", 1, 10000));
    c.cube.seed = static_cast<std::uint64_t>(in.integer("cube.seed", 0, std::numeric_limits<long long>::max()));

    c.scan.s_min = in.positive("scan.s_min");
    c.scan.s_max = in.positive("scan.s_max");
    c.scan.s_step = in.positive("scan.s_step");
    if (c.scan.s_max < c.scan.s_min) fail("scan.s_max", "must be >= scan.s_min");
    if (c.scan.s_max > 4.0) fail("scan.s_max", "must be <= 4");

    c.lambdas = in.list("family.lambdas");
    c.max_spread = in.positive("family.max_spread");
    c.k_max = static_cast<int>(in.integer("converge.k_max", 1, 1000));

    c.output_dir = in.text("output.dir");
    c.prefix = in.text("output.prefix");
    c.emit_plot_data = in.flag("output.emit_plot_data");

    c.echo = std::move(values);
    return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides,
                              const std::filesystem::path& base_dir) {
    std::map<std::string, std::string> values = defaults();
    std::istringstream stream(text);
    std::string line;
    std::string section;
    int number = 0;
    while (std::getline(stream, line)) {
        ++number;
        const std::string where = "line " + std::to_string(number) + ": ";
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError(where + "malformed section header");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        if (section.empty()) throw ConfigError(where + "key outside of a section");
        assign(values, section + "." + trim(std::string_view(t).substr(0, eq)),
               trim(std::string_view(t).substr(eq + 1)), where);
    }
    for (const auto& item : overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("override '" + item + "': expected section.key=value");
        assign(values, trim(std::string_view(item).substr(0, eq)), trim(std::string_view(item).substr(eq + 1)),
               "override: ");
    }
    return build(std::move(values), base_dir);
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config '" + path.string() + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str(), overrides, path.parent_path().empty() ? "." : path.parent_path());
}

SpectralFunction build_function(const ExperimentConfig& config) { return build_function(config, config.lambda); }

SpectralFunction build_function(const ExperimentConfig& config, double lambda) {
    const GridSpec& g = config.grid;
    if (config.family == "gaussian") return to_spectrum(gaussian(g));
    if (config.family == "modulated") return to_spectrum(modulated_gaussian(g, lambda));
    if (config.family == "indicator") return indicator_spectrum(g, config.radius);
    if (config.family == "random_band") return random_band_limited(g, config.radius, config.seed);
    if (config.family == "file") {
        try {
            return load_spectrum(config.spectrum_file, g);
        } catch (const std::exception& e) {
            throw ConfigError("function.file: " + std::string(e.what()));
        }
    }
    throw ConfigError("function.family: unsupported '" + config.family + "'");
}

}  // namespace schromax::harness
