#pragma once

// Static SVG figures rendered from CSV output.

#include <filesystem>
#include <string>
#include <vector>

namespace dgue::cli {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
};

/// Numeric CSV with one header line; throws ConfigError on malformed input.
CsvTable parse_csv(const std::string& text);

enum class PlotKind { Lines, Histogram, Bars };

struct Series {
    std::string column;
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_column;
    std::vector<Series> series;
    PlotKind kind = PlotKind::Lines;
    bool log_y = false;
};

/// Layout chosen by the CSV header; throws ConfigError for headers no command writes.
PlotSpec plot_spec_for(const std::vector<std::string>& header);

std::string render_svg(const CsvTable& table, const PlotSpec& spec);

/// render_svg(parse_csv(csv text), plot_spec_for(header)).
std::string svg_from_csv(const std::string& csv_text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dgue::cli
