#pragma once

// Artifact plumbing: round-trip-exact CSV, config parsing/hashing, atomic writes.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rb.hpp"
#include "two_qubit.hpp"

namespace geomgate {

// 17 significant digits: shortest base-10 form that round-trips a double.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_g6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::uint64_t fnv1a_64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// --- flat key = value config -------------------------------------------------

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Flat `key = value` lines; `#` starts a comment; blank lines ignored.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string val = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (!out.emplace(key, val).second)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
    }
    return out;
}

inline std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

// Canonical form: keys sorted (std::map order), one `key=value` per line.
inline std::string canonical_config(const std::map<std::string, std::string>& cfg) {
    std::string s;
    for (const auto& [k, v] : cfg) {
        s += k;
        s += '=';
        s += v;
        s += '\n';
    }
    return s;
}

inline std::string config_hash_hex(const std::map<std::string, std::string>& cfg) {
    return hex64(fnv1a_64(canonical_config(cfg)));
}

// --- atomic file output --------------------------------------------------------

// Write-to-temp then rename, so partial output never lands at the final path.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const auto dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for write: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// --- artifact formats ----------------------------------------------------------

inline std::string rb_curve_csv(const std::vector<RBPoint>& points) {
    std::string s = "n,mean_fidelity,stderr\n";
    for (const auto& p : points) {
        s += std::to_string(p.n);
        s += ',';
        s += format_g17(p.mean_fidelity);
        s += ',';
        s += format_g17(p.standard_error);
        s += '\n';
    }
    return s;
}

inline std::string noise_trace_csv(const std::vector<double>& delta,
                                   const std::vector<double>& epsilon, double dt) {
    if (delta.size() != epsilon.size())
        throw std::invalid_argument("noise_trace_csv: length mismatch");
    std::string s = "t,delta,epsilon\n";
    for (std::size_t i = 0; i < delta.size(); ++i) {
        s += format_g17(static_cast<double>(i) * dt);
        s += ',';
        s += format_g17(delta[i]);
        s += ',';
        s += format_g17(epsilon[i]);
        s += '\n';
    }
    return s;
}

inline std::string kappa_csv_header() { return "alpha,amplitude,d_dyn,d_g1,d_g2\n"; }

inline std::string flavor_token(Flavor f) { return flavor_name(f); }

inline Flavor parse_flavor(const std::string& s) {
    if (s == "dynamical") return Flavor::dynamical;
    if (s == "geometric-path1") return Flavor::geometric_path1;
    if (s == "geometric-path2") return Flavor::geometric_path2;
    throw std::invalid_argument(
        "flavor must be dynamical | geometric-path1 | geometric-path2, got: " + s);
}

inline std::string describe_noise(const NoiseModel& m, OneOverFChannel channel) {
    if (m.is_static()) {
        const auto& s = m.as_static();
        return "static(sigma_delta=" + format_g17(s.sigma_delta) +
               ",sigma_epsilon=" + format_g17(s.sigma_epsilon) + ")";
    }
    const auto& f = m.as_one_over_f();
    const char* ch = channel == OneOverFChannel::delta
                         ? "delta"
                         : channel == OneOverFChannel::epsilon ? "epsilon" : "both";
    return "one_over_f(amplitude_a=" + format_g17(f.amplitude_a) +
           ",alpha=" + format_g17(f.alpha) + ",t0=" + format_g17(f.t0) + ",channel=" + ch + ")";
}

}  // namespace geomgate
