#include "schromax/harness/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace schromax::harness {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buffer, end);
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table::add_row: column count mismatch in " + name);
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(columns);
    for (const auto& row : rows) line(row);
    return out;
}

Json VerificationReport::to_json() const {
    Json j;
    j["name"] = name;
    j["inputs"] = inputs;
    j["measured"] = measured;
    j["bound"] = bound;
    j["slack"] = slack;
    j["pass"] = pass;
    return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto temporary = path;
    temporary += ".tmp";
    {
        std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + temporary.string() + "'");
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed for '" + temporary.string() + "'");
    }
    std::filesystem::rename(temporary, path);
}

std::vector<std::filesystem::path> write_result(const ExperimentResult& result, const Json& config_echo,
                                                const std::filesystem::path& dir, const std::string& prefix,
                                                bool emit_plot_data) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;

    Json doc;
    doc["schema"] = kReportSchema;
    doc["experiment"] = result.name;
    doc["pass"] = result.pass;
    doc["config"] = config_echo;
    doc["report"] = result.report;
    Json files = Json::array();
    for (const auto& table : result.tables) files.push_back(prefix + "_" + table.name + ".csv");
    doc["tables"] = files;

    auto json_path = dir / (prefix + ".json");
    write_file_atomic(json_path, doc.dump(2) + "\n");
    written.push_back(json_path);

    for (const auto& table : result.tables) {
        auto path = dir / (prefix + "_" + table.name + ".csv");
        write_file_atomic(path, table.to_csv());
        written.push_back(path);
    }
    if (emit_plot_data) {
        for (const auto& series : result.plots) {
            std::string text;
            for (std::size_t i = 0; i < series.x.size(); ++i)
                text += format_double(series.x[i]) + " " + format_double(series.y[i]) + "\n";
            auto path = dir / (prefix + "_" + series.name + ".dat");
            write_file_atomic(path, text);
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace schromax::harness
