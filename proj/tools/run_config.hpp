#pragma once

// Key/value run configuration for dgue-cli.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dgue/ensembles.hpp"

namespace dgue::cli {

enum class ValueType { Int, IntList, Real, RealList, Text, Flag, Seed };

struct KeySpec {
    std::string key;
    /// Long flag name without the leading dashes.
    std::string flag;
    ValueType type = ValueType::Real;
    std::string fallback;
    std::string help;
    double min = -1e300;
    double max = 1e300;
    std::vector<std::string> choices;
};

struct CommandSchema {
    std::string name;
    std::string help;
    std::vector<KeySpec> keys;

    const KeySpec* find(const std::string& key) const;
};

const std::vector<CommandSchema>& schemas();
const CommandSchema& schema_for(const std::string& command);

/// Validated configuration of one run. Values keep their canonical text form so that
/// hashing and replay see exactly what the run saw.
class RunConfig {
public:
    RunConfig() = default;
    /// Fills defaults for absent keys and checks every value; throws ConfigError.
    RunConfig(std::string command, const std::map<std::string, std::string>& values);

    const std::string& command() const { return command_; }
    const std::map<std::string, std::string>& values() const { return values_; }

    int integer(const std::string& key) const;
    std::vector<int> integers(const std::string& key) const;
    double real(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    bool flag(const std::string& key) const;
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::uint64_t seed() const;
    /// FNV-1a over the command name and the sorted key=value lines.
    std::uint64_t hash() const;
    std::string hash_hex() const;

    WignerSpec wigner_spec() const;

private:
    std::string command_;
    std::map<std::string, std::string> values_;
};

/// Lines `key = value`; `#` starts a comment. Throws ConfigError on malformed lines,
/// duplicate keys and keys unknown to every command.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

std::vector<double> parse_real_list(const std::string& text);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace dgue::cli
