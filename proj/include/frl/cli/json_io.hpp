#pragma once

/**
 * @file json_io.hpp
 * @brief Deterministic JSON text: insertion-ordered keys, floats with 17 significant digits,
 *        non-finite floats as null.
 */

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frl/tensor/tensors.hpp"

namespace frl::cli {

using json = nlohmann::ordered_json;

namespace detail {

inline void write_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
    const std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) out += ".0";
}

inline void write(std::string& out, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close(static_cast<std::size_t>(indent) * depth, ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad;
                out += json(it.key()).dump();
                out += indent > 0 ? ": " : ":";
                write(out, it.value(), indent, depth + 1);
            }
            out += nl;
            out += close;
            out += "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& e : j)
                if (e.is_structured()) flat = false;
            out += "[";
            if (!flat) out += nl;
            bool first = true;
            for (const auto& e : j) {
                if (!first) {
                    out += ",";
                    out += flat ? (indent > 0 ? " " : "") : nl;
                }
                first = false;
                if (!flat) out += pad;
                write(out, e, indent, depth + 1);
            }
            if (!flat) {
                out += nl;
                out += close;
            }
            out += "]";
            return;
        }
        case json::value_t::number_float: write_number(out, j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// Serialize with the given indent (0 for compact).
inline std::string dump(const json& j, int indent = 2) {
    std::string out;
    detail::write(out, j, indent, 0);
    if (indent > 0) out += "\n";
    return out;
}

inline json to_json(const Covector& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

inline json to_json(const SymMatrix& m) {
    json a = json::array();
    for (const auto& r : m.rows()) a.push_back(to_json(r));
    return a;
}

inline json to_json(const Sym3Tensor& t) {
    json a = json::array();
    for (const auto& plane : t.nested()) {
        json p = json::array();
        for (const auto& r : plane) p.push_back(to_json(r));
        a.push_back(p);
    }
    return a;
}

}  // namespace frl::cli
