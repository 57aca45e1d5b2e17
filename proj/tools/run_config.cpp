#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dgue/error.hpp"
#include "dgue/matrix_io.hpp"

namespace dgue::cli {

namespace {

KeySpec law_kind() {
    return {"law.kind", "law", ValueType::Text, "bernoulli", "entry law", 0, 0,
            {"bernoulli", "uniform", "gaussian", "two-point"}};
}
KeySpec law_params() { return {"law.params", "law-params", ValueType::RealList, "", "extra law parameters (two-point: q)"}; }
KeySpec seed_key() { return {"seed", "seed", ValueType::Seed, "1", "master seed"}; }
KeySpec coupling(const char* fallback = "1") { return {"a", "a", ValueType::Real, fallback, "GUE coupling a", 1e-12, 1e6}; }

std::vector<CommandSchema> build_schemas() {
    std::vector<CommandSchema> s;
    s.push_back({"sample",
                 "sample one M = (W + aV)/sqrt(N) and write it with its eigenvalues",
                 {law_kind(), law_params(), {"a", "a", ValueType::Real, "1", "GUE coupling a (0 allowed)", 0, 1e6},
                  {"N", "N", ValueType::Int, "100", "matrix size", 1, 20000}, seed_key(),
                  {"format", "format", ValueType::Text, "binary", "matrix file format", 0, 0, {"binary", "csv"}}}});
    s.push_back({"spectrum",
                 "pooled eigenvalue histogram against the semicircle",
                 {law_kind(), law_params(), {"a", "a", ValueType::Real, "1", "GUE coupling a", 0, 1e6},
                  {"N", "N", ValueType::Int, "200", "matrix size", 2, 20000},
                  {"trials", "trials", ValueType::Int, "20", "matrices pooled", 1, 1e7},
                  {"bins", "bins", ValueType::Int, "40", "histogram bins", 1, 10000}, seed_key()}});
    s.push_back({"kernel-scan",
                 "rescaled correlation kernel near u against the sine kernel",
                 {law_kind(), law_params(), coupling(), {"u", "u", ValueType::Real, "0", "bulk point"},
                  {"N", "N", ValueType::IntList, "200", "matrix sizes", 2, 20000},
                  {"trials", "trials", ValueType::Int, "1", "spectra averaged per N", 1, 1e6},
                  {"tau_max", "tau-max", ValueType::Real, "4", "largest |tau|", 1e-12, 8},
                  {"tau_step", "tau-step", ValueType::Real, "0.25", "tau spacing", 1e-6, 8}, seed_key()}});
    s.push_back({"spacing-mc",
                 "Monte Carlo spacing statistic against the limiting distribution",
                 {law_kind(), law_params(), coupling(), {"N", "N", ValueType::Int, "500", "matrix size", 2, 20000},
                  {"trials", "trials", ValueType::Int, "2000", "matrices", 100, 1e8},
                  {"s_grid", "s-grid", ValueType::RealList, "0.5,1,2", "spacing thresholds", 0, 6},
                  {"u", "u", ValueType::Real, "0", "bulk point"},
                  {"tN", "tN", ValueType::Real, "0", "window half-width in mean gaps (0: ceil(sqrt N))", 0, 1e9},
                  seed_key(),
                  {"gue_control", "gue-control", ValueType::Flag, "false", "use a pure GUE with the same semicircle"}}});
    s.push_back({"fredholm",
                 "gap probability, its derivatives and the spacing density",
                 {{"nodes", "nodes", ValueType::Int, "0", "quadrature nodes for H (0: adaptive)", 0, 512},
                  {"smax", "smax", ValueType::Real, "4", "largest s", 0, 8},
                  {"step", "step", ValueType::Real, "0.05", "s spacing", 1e-4, 8}}});
    s.push_back({"km-check",
                 "conditional path density against its large-T limit",
                 {{"N", "N", ValueType::Int, "2", "number of paths", 2, 2},
                  {"S", "S", ValueType::Real, "1", "observation time", 1e-12, 1e6},
                  {"T_grid", "T-grid", ValueType::RealList, "10,100,1000,10000", "remaining times", 1e-12, 1e12},
                  {"y", "y", ValueType::RealList, "-1,1", "starting points"},
                  {"z", "z", ValueType::RealList, "", "end points (empty: 0, 1, ...)"}}});
    s.push_back({"dyson",
                 "terminal configurations of Dyson Brownian motion run for time a^2/N",
                 {{"y", "y", ValueType::RealList, "-1,1", "starting points"}, coupling(),
                  {"trials", "trials", ValueType::Int, "1000", "paths", 1, 1e8}, seed_key()}});
    s.push_back({"prop11-check",
                 "eigenvalues of diag(y) + (a/sqrt 2) V against their exact density",
                 {{"y", "y", ValueType::RealList, "-1,1", "diagonal"}, coupling(),
                  {"trials", "trials", ValueType::Int, "20000", "samples", 10, 1e8}, seed_key()}});
    s.push_back({"prop22-check", "brute-force partition-function ratios against Fredholm determinants", {}});
    return s;
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
    throw ConfigError("config: " + key + " = '" + value + "': " + why);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v)) bad(key, text, "not a real number");
    return v;
}

long long parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    long long v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size()) bad(key, text, "not an integer");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

void check_range(const KeySpec& k, const std::string& raw, double v) {
    if (v < k.min || v > k.max)
        bad(k.key, raw, "outside [" + format_double(k.min) + ", " + format_double(k.max) + "]");
}

std::string canonical(const KeySpec& k, const std::string& raw) {
    switch (k.type) {
        case ValueType::Int: {
            const long long v = parse_int(k.key, raw);
            check_range(k, raw, static_cast<double>(v));
            return std::to_string(v);
        }
        case ValueType::IntList: {
            std::string out;
            const auto items = split_list(raw);
            if (items.empty()) bad(k.key, raw, "empty list");
            for (const auto& item : items) {
                const long long v = parse_int(k.key, item);
                check_range(k, raw, static_cast<double>(v));
                out += (out.empty() ? "" : ",") + std::to_string(v);
            }
            return out;
        }
        case ValueType::Real: {
            const double v = parse_real(k.key, raw);
            check_range(k, raw, v);
            return format_double(v);
        }
        case ValueType::RealList: {
            std::string out;
            for (const auto& item : split_list(raw)) {
                const double v = parse_real(k.key, item);
                check_range(k, raw, v);
                out += (out.empty() ? "" : ",") + format_double(v);
            }
            return out;
        }
        case ValueType::Text: {
            std::string v = trim(raw);
            if (k.key == "law.kind" && v == "two_point") v = "two-point";
            if (!k.choices.empty() && std::find(k.choices.begin(), k.choices.end(), v) == k.choices.end())
                bad(k.key, raw, "not one of the allowed values");
            return v;
        }
        case ValueType::Flag: {
            const std::string v = trim(raw);
            if (v == "true" || v == "1" || v == "yes" || v == "on") return "true";
            if (v == "false" || v == "0" || v == "no" || v == "off") return "false";
            bad(k.key, raw, "not a boolean");
        }
        case ValueType::Seed: {
            const std::string t = trim(raw);
            std::uint64_t v = 0;
            const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (t.empty() || ec != std::errc() || p != t.data() + t.size()) bad(k.key, raw, "not an unsigned 64-bit integer");
            return std::to_string(v);
        }
    }
    bad(k.key, raw, "unsupported type");
}

}  // namespace

const KeySpec* CommandSchema::find(const std::string& key) const {
    for (const auto& k : keys)
        if (k.key == key) return &k;
    return nullptr;
}

const std::vector<CommandSchema>& schemas() {
    static const std::vector<CommandSchema> s = build_schemas();
    return s;
}

const CommandSchema& schema_for(const std::string& command) {
    for (const auto& s : schemas())
        if (s.name == command) return s;
    throw ConfigError("unknown command '" + command + "'");
}

RunConfig::RunConfig(std::string command, const std::map<std::string, std::string>& values)
    : command_(std::move(command)) {
    const CommandSchema& schema = schema_for(command_);
    for (const auto& [key, value] : values)
        if (!schema.find(key)) throw ConfigError("config: key '" + key + "' does not apply to " + command_);
    for (const auto& k : schema.keys) {
        const auto it = values.find(k.key);
        values_[k.key] = canonical(k, it == values.end() ? k.fallback : it->second);
    }
}

int RunConfig::integer(const std::string& key) const { return static_cast<int>(parse_int(key, text(key))); }

std::vector<int> RunConfig::integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& item : split_list(text(key))) out.push_back(static_cast<int>(parse_int(key, item)));
    return out;
}

double RunConfig::real(const std::string& key) const { return parse_real(key, text(key)); }

std::vector<double> RunConfig::reals(const std::string& key) const { return parse_real_list(text(key)); }

const std::string& RunConfig::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: no key '" + key + "' for " + command_);
    return it->second;
}

bool RunConfig::flag(const std::string& key) const { return text(key) == "true"; }

std::uint64_t RunConfig::seed() const {
    if (!has("seed")) return 0;
    return std::stoull(text("seed"));
}

std::uint64_t RunConfig::hash() const {
    std::string bytes = command_ + "\n";
    for (const auto& [k, v] : values_) bytes += k + "=" + v + "\n";
    return fnv1a(bytes);
}

std::string RunConfig::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

WignerSpec RunConfig::wigner_spec() const {
    const WignerSpec spec = WignerSpec::standard(parse_law_kind(text("law.kind")), reals("law.params"));
    spec.validate();
    return spec;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::set<std::string> known;
    for (const auto& s : schemas())
        for (const auto& k : s.keys) known.insert(k.key);
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    int number = 0;
    while (std::getline(ss, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (!known.count(key)) throw ConfigError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
        if (out.count(key)) throw ConfigError("config line " + std::to_string(number) + ": duplicate key '" + key + "'");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_real("list", item));
    return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace dgue::cli
