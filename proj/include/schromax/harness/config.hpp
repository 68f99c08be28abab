#pragma once

// Plain-text experiment configuration:
//
//   # comment
//   [grid]
//   n = 1
//   [set]
//   kind = graph
//   beta = 0.5
//
// Every key has a default; unknown sections or keys are errors.

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "schromax/covering.hpp"
#include "schromax/grid.hpp"
#include "schromax/settools.hpp"

namespace schromax::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CubeConfig {
    std::vector<double> corner;  // empty means the origin
    double corner_time = 0.0;
    double side = 0.125;
    double band = 8.0;
    int points = 9;
    int cover_m = 3;
    int trials = 20;
    std::uint64_t seed = 1;
};

struct ScanConfig {
    double s_min = 0.5;
    double s_max = 1.5;
    double s_step = 0.05;
};

struct ExperimentConfig {
    std::string experiment = "verify-thm1";

    GridSpec grid = GridSpec::standard(1);

    std::string family = "gaussian";  // gaussian | modulated | indicator | random_band | file
    double lambda = 0.0;
    double radius = 1.0;
    std::uint64_t seed = 1;
    std::string spectrum_file;

    SetSpec set = SetSpec::origin(1);

    double a = 2.0;
    double s = 1.1;
    int m_min = 0;
    int m_max = 10;
    double resolution = 1.0 / 1024.0;
    SumMode mode = SumMode::thm1;
    double t = 0.0;
    std::vector<double> shift;
    unsigned threads = 0;

    CubeConfig cube;
    ScanConfig scan;
    std::vector<double> lambdas;  // family scan; empty means the single configured function
    double max_spread = 10.0;
    int k_max = 20;

    std::filesystem::path output_dir = ".";
    std::string prefix;  // empty means the experiment name
    bool emit_plot_data = false;

    /// Effective value of every key, "section.key" -> text, for report echo.
    std::map<std::string, std::string> echo;
};

/// Parses config text. Overrides are "section.key=value" strings applied
/// after the file. Throws ConfigError.
/// Relative file paths inside the text resolve against base_dir.
ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                              const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Spectrum of the configured function family.
SpectralFunction build_function(const ExperimentConfig& config);
SpectralFunction build_function(const ExperimentConfig& config, double lambda);

}  // namespace schromax::harness
