// dgue-cli: finite-N experiments with CSV, JSON summary and SVG output.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgue/error.hpp"
#include "dgue/experiments.hpp"
#include "dgue/fredholm.hpp"
#include "dgue/kernel.hpp"
#include "dgue/matrix_io.hpp"
#include "dgue/spacing.hpp"
#include "dgue/spectral.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dgue::cli {
namespace {

constexpr int kExitSchema = 2;
constexpr int kExitNumerical = 3;

struct Output {
    std::string csv;
    json results = json::object();
    /// Additional files beside the CSV, e.g. an exported matrix.
    std::vector<std::pair<std::string, std::string>> files;
};

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) {
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
        out_ << "\n";
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

RngSeed master_seed(const RunConfig& cfg) { return RngSeed{cfg.seed(), 0}; }

std::vector<double> ascending_points(const RunConfig& cfg, const std::string& key, std::size_t lo, std::size_t hi) {
    const std::vector<double> y = cfg.reals(key);
    if (y.size() < lo || y.size() > hi)
        throw ConfigError("config: " + key + " needs " + std::to_string(lo) + ".." + std::to_string(hi) + " values");
    for (std::size_t i = 1; i < y.size(); ++i)
        if (!(y[i] > y[i - 1])) throw ConfigError("config: " + key + " must be strictly ascending");
    return y;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

Output run_sample(const RunConfig& cfg, unsigned) {
    const int n = cfg.integer("N");
    const bool csv = cfg.text("format") == "csv";
    if (csv && n > 64) throw ConfigError("config: format = csv needs N <= 64");
    const RngSeed seed = master_seed(cfg);
    const HermitianMatrix m = assemble_deformed(sample_wigner(cfg.wigner_spec(), n, seed.substream(0)),
                                                cfg.real("a"), seed.substream(1));
    const Spectrum spec = hermitian_eigenvalues(m);
    Output out;
    std::ostringstream matrix;
    if (csv) {
        write_matrix_csv(matrix, m);
        out.files.emplace_back("sample-matrix.csv", matrix.str());
    } else {
        write_matrix_binary(matrix, m);
        out.files.emplace_back("sample-matrix.bin", matrix.str());
    }
    CsvWriter w({"index", "eigenvalue"});
    for (std::size_t i = 0; i < spec.size(); ++i) w.row({static_cast<double>(i), spec[i]});
    out.csv = w.str();
    out.results = {{"min", spec[0]}, {"max", spec[spec.size() - 1]}};
    return out;
}

Output run_spectrum(const RunConfig& cfg, unsigned threads) {
    const SemicircleResult r = semicircle_experiment(cfg.wigner_spec(), cfg.real("a"), cfg.integer("N"),
                                                     cfg.integer("trials"), cfg.integer("bins"), master_seed(cfg),
                                                     threads);
    CsvWriter w({"x", "histogram", "semicircle"});
    for (std::size_t i = 0; i < r.centers.size(); ++i) w.row({r.centers[i], r.histogram[i], r.expected[i]});
    Output out;
    out.csv = w.str();
    out.results = {{"sup_bin_error", r.sup_error}, {"eigenvalues", r.eigenvalues}};
    return out;
}

Output run_kernel_scan(const RunConfig& cfg, unsigned threads) {
    const double a = cfg.real("a"), u = cfg.real("u"), tau_max = cfg.real("tau_max");
    if (!(semicircle_rho(u, a) > 0.0)) throw ConfigError("config: u must lie inside the bulk of the spectrum");
    const std::vector<double> taus = grid(-tau_max, tau_max, cfg.real("tau_step"));
    CsvWriter w({"tau", "kernel_value", "sine_value", "abs_error", "N", "a", "u", "seed"});
    Output out;
    const RngSeed seed = master_seed(cfg);
    for (int n : cfg.integers("N")) {
        const KernelScanResult r =
            kernel_scan(cfg.wigner_spec(), a, u, n, cfg.integer("trials"), taus, seed.substream(n), threads);
        for (std::size_t i = 0; i < taus.size(); ++i)
            w.row({taus[i], r.kernel_mean[i], r.sine[i], std::abs(r.kernel_mean[i] - r.sine[i]),
                   static_cast<double>(n), a, u, static_cast<double>(cfg.seed())});
        out.results["mean_sup_error"][std::to_string(n)] = r.mean_sup_error;
    }
    out.csv = w.str();
    return out;
}

Output run_spacing_mc(const RunConfig& cfg, unsigned threads) {
    SpacingExperiment e;
    e.spec = cfg.wigner_spec();
    e.a = cfg.real("a");
    e.n = cfg.integer("N");
    e.trials = cfg.integer("trials");
    e.s_grid = cfg.reals("s_grid");
    e.u = cfg.real("u");
    e.t_n = cfg.real("tN");
    e.seed = master_seed(cfg);
    e.gue_control = cfg.flag("gue_control");
    e.threads = threads;
    if (e.s_grid.empty()) throw ConfigError("config: s_grid is empty");
    if (!(semicircle_rho(e.u, e.a) > 0.0)) throw ConfigError("config: u must lie inside the bulk of the spectrum");
    CsvWriter w({"s", "mc_mean", "mc_se", "gaudin_cdf", "gap"});
    double worst = 0.0;
    for (const SpacingEstimate& est : mc_expected_spacing(e)) {
        const double cdf = spacing_cdf(est.s);
        w.row({est.s, est.mean, est.standard_error, cdf, est.mean - cdf});
        worst = std::max(worst, std::abs(est.mean - cdf));
    }
    Output out;
    out.csv = w.str();
    out.results = {{"max_abs_gap", worst}};
    return out;
}

Output run_fredholm(const RunConfig& cfg, unsigned) {
    const int nodes = cfg.integer("nodes");
    if (nodes != 0 && nodes < 4) throw ConfigError("config: nodes must be 0 or at least 4");
    CsvWriter w({"s", "H", "Hprime", "p", "cdf"});
    for (double s : grid(0.0, cfg.real("smax"), cfg.real("step"))) {
        const double h = nodes > 0 ? gap_probability_H(s, nodes) : gap_probability_H(s);
        w.row({s, h, gap_probability_dH(s), gaudin_density(s), spacing_cdf(s)});
    }
    Output out;
    out.csv = w.str();
    return out;
}

Output run_km_check(const RunConfig& cfg, unsigned) {
    const auto n = static_cast<std::size_t>(cfg.integer("N"));
    const std::vector<double> y = ascending_points(cfg, "y", n, n);
    std::vector<double> z;
    if (!cfg.text("z").empty()) z = ascending_points(cfg, "z", n, n);
    const std::vector<double> t_grid = cfg.reals("T_grid");
    if (t_grid.empty()) throw ConfigError("config: T_grid is empty");
    CsvWriter w({"T", "sup_pointwise_gap"});
    for (const KmCheckRow& r : km_check(y, cfg.real("S"), t_grid, z)) w.row({r.T, r.sup_gap});
    Output out;
    out.csv = w.str();
    return out;
}

Output run_dyson(const RunConfig& cfg, unsigned threads) {
    const std::vector<double> y = ascending_points(cfg, "y", 1, 64);
    const DysonCheck r = dyson_check(y, cfg.real("a"), cfg.integer("trials"), master_seed(cfg), threads);
    std::vector<std::string> header{"path"};
    for (std::size_t i = 0; i < y.size(); ++i) header.push_back("lambda_" + std::to_string(i + 1));
    CsvWriter w(header);
    for (std::size_t p = 0; p < r.terminal.size(); ++p) {
        std::vector<double> row{static_cast<double>(p)};
        row.insert(row.end(), r.terminal[p].begin(), r.terminal[p].end());
        w.row(row);
    }
    Output out;
    out.csv = w.str();
    out.results = {{"rejected_steps", r.rejections}};
    if (y.size() == 2) out.results["ks"] = {{"lower", r.ks.lower}, {"upper", r.ks.upper}};
    return out;
}

Output run_eigen_density(const RunConfig& cfg, unsigned) {
    const std::vector<double> y = ascending_points(cfg, "y", 2, 2);
    const MarginalKs r = eigen_density_check(y, cfg.real("a"), cfg.integer("trials"), master_seed(cfg));
    CsvWriter w({"eigenvalue_index", "ks_distance", "samples"});
    w.row({1.0, r.lower, static_cast<double>(r.samples)});
    w.row({2.0, r.upper, static_cast<double>(r.samples)});
    Output out;
    out.csv = w.str();
    return out;
}

Output run_partition_ratio(const RunConfig&, unsigned) {
    CsvWriter w({"case", "N", "g", "lhs", "rhs", "gap"});
    Output out;
    std::map<std::string, int> g_index;
    const std::vector<PartitionRatioRow> rows = partition_ratio_check();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [it, fresh] = g_index.emplace(rows[i].g, static_cast<int>(g_index.size()));
        if (fresh) out.results["weights"].push_back(rows[i].g);
        w.row({static_cast<double>(i), static_cast<double>(rows[i].n), static_cast<double>(it->second), rows[i].lhs,
               rows[i].rhs, rows[i].gap});
    }
    out.csv = w.str();
    return out;
}

Output dispatch(const RunConfig& cfg, unsigned threads) {
    using Runner = Output (*)(const RunConfig&, unsigned);
    static const std::map<std::string, Runner> runners{
        {"sample", run_sample},          {"spectrum", run_spectrum},   {"kernel-scan", run_kernel_scan},
        {"spacing-mc", run_spacing_mc},  {"fredholm", run_fredholm},   {"km-check", run_km_check},
        {"dyson", run_dyson},            {"prop11-check", run_eigen_density}, {"prop22-check", run_partition_ratio}};
    return runners.at(cfg.command())(cfg, threads);
}

fs::path output_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("DGUE_OUTPUT_DIR"); env && *env) return env;
    return "dgue-out";
}

json summary_for(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command();
    j["config"] = cfg.values();
    j["config_hash"] = cfg.hash_hex();
    j["seed"] = cfg.has("seed") ? json(cfg.text("seed")) : json(nullptr);
    j["version"] = DGUE_VERSION;
    return j;
}

int execute(const RunConfig& cfg, const fs::path& dir, unsigned threads) {
    const std::string stem = cfg.command();
    try {
        const Output out = dispatch(cfg, threads);
        fs::create_directories(dir);
        json summary = summary_for(cfg);
        summary["files"] = json::array({stem + ".csv", stem + ".svg"});
        for (const auto& [name, bytes] : out.files) summary["files"].push_back(name);
        summary["results"] = out.results;
        write_text(dir / (stem + ".csv"), out.csv);
        write_text(dir / (stem + ".svg"), svg_from_csv(out.csv));
        for (const auto& [name, bytes] : out.files) write_text(dir / name, bytes);
        write_text(dir / (stem + ".json"), summary.dump(2) + "\n");
        std::cout << (dir / (stem + ".csv")).string() << "\n";
        return 0;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        json diag = summary_for(cfg);
        diag["error"] = e.what();
        if (const auto* acc = dynamic_cast<const AccuracyError*>(&e)) {
            const json parsed = json::parse(acc->diagnostics(), nullptr, false);
            diag["diagnostics"] = parsed.is_discarded() ? json(acc->diagnostics()) : parsed;
        }
        std::cerr << diag.dump(2) << "\n";
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (!ec) write_text(dir / (stem + "-error.json"), diag.dump(2) + "\n");
        return kExitNumerical;
    }
}

RunConfig config_from_summary(const fs::path& path) {
    const json j = json::parse(read_text(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("replay: " + path.string() + " is not a JSON summary");
    if (!j.contains("command") || !j.contains("config") || !j.contains("config_hash"))
        throw ConfigError("replay: summary lacks command, config or config_hash");
    std::map<std::string, std::string> values;
    for (const auto& [k, v] : j["config"].items()) {
        if (!v.is_string()) throw ConfigError("replay: config value for '" + k + "' is not a string");
        values[k] = v.get<std::string>();
    }
    RunConfig cfg(j["command"].get<std::string>(), values);
    if (cfg.hash_hex() != j["config_hash"].get<std::string>())
        throw ConfigError("replay: config hash mismatch, the summary was edited or is corrupt");
    if (j.value("version", "") != DGUE_VERSION)
        std::cerr << "warning: summary written by version " << j.value("version", "?") << ", running " << DGUE_VERSION
                  << "\n";
    return cfg;
}

}  // namespace
}  // namespace dgue::cli

int main(int argc, char** argv) {
    using namespace dgue::cli;
    CLI::App app{"Finite-N experiments for deformed Wigner matrices"};
    app.set_version_flag("--version", DGUE_VERSION);
    app.require_subcommand(1);

    std::string config_path, out_flag;
    unsigned threads = 0;
    app.add_option("--config", config_path, "key = value file with run parameters")->check(CLI::ExistingFile);
    app.add_option("--out", out_flag, "output directory (default: $DGUE_OUTPUT_DIR, then ./dgue-out)");
    app.add_option("--threads", threads, "worker threads, 0 for all cores");

    std::map<std::string, std::map<std::string, std::string>> flags;
    std::map<std::string, CLI::App*> commands;
    for (const CommandSchema& schema : schemas()) {
        CLI::App* sub = app.add_subcommand(schema.name, schema.help);
        sub->fallthrough();
        for (const KeySpec& k : schema.keys) {
            const std::string help = k.help + " [" + k.key + ", default " + (k.fallback.empty() ? "none" : k.fallback) + "]";
            sub->add_option("--" + k.flag, flags[schema.name][k.key], help);
        }
        commands[schema.name] = sub;
    }
    std::string summary_path;
    CLI::App* replay = app.add_subcommand("replay", "rerun from a JSON summary");
    replay->fallthrough();
    replay->add_option("summary", summary_path, "summary written by an earlier run")->required();
    std::string csv_path, svg_path;
    CLI::App* plot = app.add_subcommand("plot", "regenerate the SVG for a CSV output");
    plot->add_option("csv", csv_path, "CSV written by an earlier run")->required();
    plot->add_option("--svg", svg_path, "target file (default: CSV path with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitSchema;
    }

    try {
        if (plot->parsed()) {
            const fs::path target = svg_path.empty() ? fs::path(csv_path).replace_extension(".svg") : fs::path(svg_path);
            write_text(target, svg_from_csv(read_text(csv_path)));
            return 0;
        }
        if (replay->parsed()) return execute(config_from_summary(summary_path), output_dir(out_flag), threads);

        for (const auto& [name, sub] : commands) {
            if (!sub->parsed()) continue;
            const CommandSchema& schema = schema_for(name);
            std::map<std::string, std::string> values;
            if (!config_path.empty())
                for (const auto& [k, v] : read_config_file(config_path)) {
                    if (schema.find(k))
                        values[k] = v;
                    else
                        std::cerr << "note: config key '" << k << "' is not used by " << name << "\n";
                }
            for (const KeySpec& k : schema.keys)
                if (sub->count("--" + k.flag) > 0) values[k.key] = flags[name][k.key];
            return execute(RunConfig(name, values), output_dir(out_flag), threads);
        }
    } catch (const dgue::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitSchema;
}
