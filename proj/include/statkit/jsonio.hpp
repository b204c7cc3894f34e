#ifndef STATKIT_JSONIO_HPP
#define STATKIT_JSONIO_HPP

// Canonical JSON emission for reports: keys in lexicographic order (the
// default nlohmann object ordering) and every floating-point number printed
// with 17 significant digits, so parse -> dump round-trips byte-identically.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace statkit {

namespace detail {

inline void canonical_append(const nlohmann::json& j, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
    case value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            out += nlohmann::json(it.key()).dump();
            out += ':';
            canonical_append(it.value(), out);
        }
        out += '}';
        break;
    }
    case value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ',';
            first = false;
            canonical_append(v, out);
        }
        out += ']';
        break;
    }
    case value_t::number_float: {
        double v = j.get<double>();
        if (!std::isfinite(v)) { // JSON has no inf/nan literals
            out += "null";
            break;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        break;
    }
    case value_t::number_integer: {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%" PRId64, j.get<std::int64_t>());
        out += buf;
        break;
    }
    case value_t::number_unsigned: {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%" PRIu64, j.get<std::uint64_t>());
        out += buf;
        break;
    }
    case value_t::string:
        out += j.dump(); // library escaping
        break;
    case value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        break;
    case value_t::null:
    default:
        out += "null";
        break;
    }
}

} // namespace detail

inline std::string canonical_dump(const nlohmann::json& j) {
    std::string out;
    detail::canonical_append(j, out);
    out += '\n';
    return out;
}

/// FNV-1a over the canonical form; used as the config hash echoed in reports.
inline std::string config_hash(const nlohmann::json& j) {
    std::string s = canonical_dump(j);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

} // namespace statkit

#endif
