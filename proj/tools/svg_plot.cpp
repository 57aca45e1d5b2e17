#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "dgue/error.hpp"
#include "run_config.hpp"

namespace dgue::cli {

namespace {

constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    void include(double v) {
        if (!std::isfinite(v) || (log && v <= 0)) return;
        const double t = log ? std::log10(v) : v;
        if (!seen) lo = hi = t;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
        seen = true;
    }
    void finish() {
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    double frac(double v) const { return ((log ? std::log10(v) : v) - lo) / (hi - lo); }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0); }
    double tick(int i, int n) const {
        const double t = lo + (hi - lo) * i / n;
        return log ? std::pow(10.0, t) : t;
    }

    bool seen = false;
};

double px(const Axis& a, double v) { return kLeft + a.frac(v) * (kWidth - kLeft - kRight); }
double py(const Axis& a, double v) { return kHeight - kBottom - a.frac(v) * (kHeight - kTop - kBottom); }

std::string frame(const std::string& title, const std::string& xlabel, const Axis& x, const Axis& y) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
      << "</text>\n";
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    s << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
      << num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x.tick(i, 5), yv = y.tick(i, 5);
        s << "<text x=\"" << num(px(x, xv)) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">"
          << tick_label(xv) << "</text>\n";
        s << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py(y, yv) + 4) << "\" text-anchor=\"end\">"
          << tick_label(yv) << "</text>\n";
    }
    s << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 12) << "\" text-anchor=\"middle\">"
      << xlabel << "</text>\n";
    return s.str();
}

void legend(std::ostringstream& s, int index, const std::string& label) {
    const double y = kTop + 14 + 16 * index, x = kWidth - kRight + 10;
    s << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 8) << "\" width=\"10\" height=\"10\" fill=\""
      << kColours[index % 6] << "\"/>\n";
    s << "<text x=\"" << num(x + 14) << "\" y=\"" << num(y + 1) << "\">" << label << "</text>\n";
}

std::string render_lines(const CsvTable& t, const PlotSpec& spec) {
    const std::vector<double> xs = t.values(spec.x_column);
    Axis x, y;
    y.log = spec.log_y;
    x.log = spec.x_column == "T";
    for (double v : xs) x.include(v);
    for (const auto& ser : spec.series)
        for (double v : t.values(ser.column)) y.include(v);
    x.finish();
    y.finish();

    // rows sharing an N value form one curve
    const int n_col = t.column("N");
    std::vector<std::vector<std::size_t>> groups;
    std::map<double, std::size_t> group_of;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double key = n_col >= 0 ? t.rows[r][n_col] : 0.0;
        auto [it, fresh] = group_of.emplace(key, groups.size());
        if (fresh) groups.emplace_back();
        groups[it->second].push_back(r);
    }

    std::ostringstream s;
    s << frame(spec.title, spec.x_column, x, y);
    int colour = 0;
    for (const auto& ser : spec.series) {
        const int c = t.column(ser.column);
        for (std::size_t g = 0; g < groups.size(); ++g, ++colour) {
            const char* col = kColours[colour % 6];
            std::string label = ser.column;
            if (n_col >= 0 && groups.size() > 1) label += " N=" + tick_label(t.rows[groups[g][0]][n_col]);
            legend(s, colour, label);
            if (ser.markers) {
                for (std::size_t r : groups[g]) {
                    const double xv = t.rows[r][t.column(spec.x_column)], yv = t.rows[r][c];
                    if (!x.usable(xv) || !y.usable(yv)) continue;
                    s << "<circle cx=\"" << num(px(x, xv)) << "\" cy=\"" << num(py(y, yv)) << "\" r=\"2.5\" fill=\""
                      << col << "\"/>\n";
                }
            } else {
                s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
                bool first = true;
                for (std::size_t r : groups[g]) {
                    const double xv = t.rows[r][t.column(spec.x_column)], yv = t.rows[r][c];
                    if (!x.usable(xv) || !y.usable(yv)) continue;
                    s << (first ? "" : " ") << num(px(x, xv)) << "," << num(py(y, yv));
                    first = false;
                }
                s << "\"/>\n";
            }
        }
    }
    s << "</svg>\n";
    return s.str();
}

std::string render_histogram(const CsvTable& t, const PlotSpec& spec) {
    std::vector<double> pooled;
    for (const auto& ser : spec.series)
        for (double v : t.values(ser.column))
            if (std::isfinite(v)) pooled.push_back(v);
    constexpr int bins = 40;
    double lo = 0, hi = 1;
    if (!pooled.empty()) {
        lo = *std::min_element(pooled.begin(), pooled.end());
        hi = *std::max_element(pooled.begin(), pooled.end());
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / bins;
    std::vector<double> density(bins, 0.0);
    for (double v : pooled) density[std::min(bins - 1, static_cast<int>((v - lo) / width))] += 1.0;
    for (double& d : density) d /= std::max<double>(1.0, pooled.size()) * width;

    Axis x, y;
    x.include(lo);
    x.include(hi);
    y.include(0.0);
    for (double d : density) y.include(d);
    x.finish();
    y.finish();
    std::ostringstream s;
    s << frame(spec.title, "value", x, y);
    for (int b = 0; b < bins; ++b) {
        const double a = lo + b * width;
        const double top = py(y, density[b]), base = py(y, 0.0);
        s << "<rect x=\"" << num(px(x, a)) << "\" y=\"" << num(top) << "\" width=\""
          << num(px(x, a + width) - px(x, a)) << "\" height=\"" << num(base - top) << "\" fill=\"" << kColours[0]
          << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }
    legend(s, 0, "density");
    s << "</svg>\n";
    return s.str();
}

std::string render_bars(const CsvTable& t, const PlotSpec& spec) {
    const int c = t.column(spec.series.at(0).column);
    Axis x, y;
    y.log = spec.log_y;
    x.include(0.0);
    x.include(static_cast<double>(t.rows.size()));
    if (!spec.log_y) y.include(0.0);
    for (const auto& row : t.rows) y.include(row[c]);
    x.finish();
    y.finish();
    std::ostringstream s;
    s << frame(spec.title, spec.x_column, x, y);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double v = t.rows[r][c];
        if (!y.usable(v)) continue;
        const double base = py(y, spec.log_y ? y.tick(0, 5) : 0.0), top = py(y, v);
        s << "<rect x=\"" << num(px(x, r + 0.15)) << "\" y=\"" << num(std::min(top, base)) << "\" width=\""
          << num(px(x, r + 0.85) - px(x, r + 0.15)) << "\" height=\"" << num(std::abs(base - top)) << "\" fill=\""
          << kColours[0] << "\"/>\n";
    }
    legend(s, 0, spec.series[0].column);
    s << "</svg>\n";
    return s.str();
}

}  // namespace

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::values(const std::string& name) const {
    const int c = column(name);
    if (c < 0) throw ConfigError("csv: no column '" + name + "'");
    std::vector<double> out;
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line.empty()) throw ConfigError("csv: missing header");
    {
        std::stringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    }
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell == "nan" ? NAN : parse_real_list(cell).at(0));
        if (row.size() != t.header.size()) throw ConfigError("csv: row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

PlotSpec plot_spec_for(const std::vector<std::string>& header) {
    if (header.empty()) throw ConfigError("csv: empty header");
    const std::string& first = header[0];
    if (first == "index") return {"eigenvalues", "eigenvalue", {{"eigenvalue"}}, PlotKind::Histogram};
    if (first == "x") return {"eigenvalue density", "x", {{"histogram", true}, {"semicircle"}}};
    if (first == "tau") return {"rescaled kernel", "tau", {{"kernel_value", true}, {"sine_value"}}};
    if (first == "s" && header.size() > 1 && header[1] == "mc_mean")
        return {"spacing distribution", "s", {{"mc_mean", true}, {"gaudin_cdf"}}};
    if (first == "s") return {"gap probability", "s", {{"H"}, {"p"}, {"cdf"}}};
    if (first == "T") return {"conditional density gap", "T", {{"sup_pointwise_gap", true}}, PlotKind::Lines, true};
    if (first == "path") {
        PlotSpec spec{"terminal eigenvalues", "path", {}, PlotKind::Histogram};
        for (std::size_t i = 1; i < header.size(); ++i) spec.series.push_back({header[i]});
        return spec;
    }
    if (first == "eigenvalue_index") return {"KS distance", "eigenvalue_index", {{"ks_distance"}}, PlotKind::Bars};
    if (first == "case") return {"ratio identity gap", "case", {{"gap"}}, PlotKind::Bars, true};
    throw ConfigError("csv: header '" + first + ",...' is not a known output");
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
    switch (spec.kind) {
        case PlotKind::Histogram: return render_histogram(table, spec);
        case PlotKind::Bars: return render_bars(table, spec);
        case PlotKind::Lines: break;
    }
    return render_lines(table, spec);
}

std::string svg_from_csv(const std::string& csv_text) {
    const CsvTable t = parse_csv(csv_text);
    return render_svg(t, plot_spec_for(t.header));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace dgue::cli
