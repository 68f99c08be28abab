#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace schromax::harness {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "schromax-report/1";

/// Shortest text that round-trips to the same double ("%.17g" family).
std::string format_double(double value);

/// Comma-separated table; cells are pre-formatted text.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
};

/// Two-column (abscissa, value) series for --emit-plot-data.
struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Inequality check "measured <= bound + slack".
struct VerificationReport {
    std::string name;
    Json inputs = Json::object();
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool pass = false;
    double runtime_seconds = 0.0;

    Json to_json() const;
};

/// Outcome of one named experiment, ready for writing.
struct ExperimentResult {
    std::string name;
    bool pass = false;
    Json report = Json::object();
    std::vector<Table> tables;
    std::vector<PlotSeries> plots;
    /// Wall-clock time; reported on stderr only so the files stay byte-identical.
    double runtime_seconds = 0.0;
};

/// Writes <prefix>.json, <prefix>_<table>.csv and, when requested,
/// <prefix>_<series>.dat. Files are written to a temporary name and renamed.
/// Returns the written paths.
std::vector<std::filesystem::path> write_result(const ExperimentResult& result, const Json& config_echo,
                                                const std::filesystem::path& dir, const std::string& prefix,
                                                bool emit_plot_data);

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace schromax::harness
