#include "shc/config.hpp"
#include "shc/simd.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == '[') continue; // sections are cosmetic
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[key] = val;
    }
    return cfg;
}

void RunConfig::apply_overrides(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0)
            throw std::invalid_argument("usage: expected --key value, got '" + a + "'");
        if (i + 1 >= args.size())
            throw std::invalid_argument("usage: missing value for '" + a + "'");
        kv_[a.substr(2)] = args[++i];
    }
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::get_str(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

std::string RunConfig::require_str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end())
        throw std::invalid_argument("config: missing required key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key, double dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "': not a number: '" + it->second + "'");
    }
}

double RunConfig::require_double(const std::string& key) const {
    if (!has(key)) throw std::invalid_argument("config: missing required key '" + key + "'");
    return get_double(key, 0.0);
}

long long RunConfig::get_int(const std::string& key, long long dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "': not an integer: '" + it->second + "'");
    }
}

std::uint64_t RunConfig::seed() const {
    if (has("seed")) return static_cast<std::uint64_t>(get_int("seed", 12345));
    if (const char* env = std::getenv("SHC_SEED"))
        return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return 12345;
}

int RunConfig::workers(int dflt) const {
    const long long w = get_int("workers", dflt);
    if (w < 1 || w > 4096) throw std::invalid_argument("config: workers out of range");
    return static_cast<int>(w);
}

void RunConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

std::string RunConfig::manifest(const std::string& command) const {
    std::ostringstream os;
    os << "# manifest-begin\n";
    os << "# command = " << command << "\n";
    for (const auto& [k, v] : kv_) os << "# " << k << " = " << v << "\n";
    if (!has("seed")) os << "# seed = " << seed() << "\n";
    os << "# artifact-version = " << kArtifactVersion << "\n";
    os << "# simd-backend = " << simd::backend_name() << "\n";
    os << "# manifest-end\n";
    return os.str();
}

} // namespace shc::cli
