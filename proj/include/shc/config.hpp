#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shc::cli {

// Flat key = value configuration: a config file section plus command-line
// overrides (command line wins). Every resolved run carries its manifest so
// outputs are reproducible from the embedded header alone.
class RunConfig {
public:
    static RunConfig from_file(const std::string& path);

    // args: alternating "--key value" pairs (after the subcommand)
    void apply_overrides(const std::vector<std::string>& args);

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& dflt) const;
    std::string require_str(const std::string& key) const;
    double get_double(const std::string& key, double dflt) const;
    double require_double(const std::string& key) const;
    long long get_int(const std::string& key, long long dflt) const;
    std::uint64_t seed() const; // key "seed", env SHC_SEED, default 12345
    int workers(int dflt = 1) const;

    void set(const std::string& key, const std::string& value);
    // "# key = value" lines, sorted by key, plus artifact/backend info
    std::string manifest(const std::string& command) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

constexpr const char* kArtifactVersion = "0.1.0";
constexpr const char* kEstimatesSchema = "shc-estimates v1";

// exit codes
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

} // namespace shc::cli
