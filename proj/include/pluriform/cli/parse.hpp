#pragma once

// Parsers for command-line values: multi-time path specs such as
// "t:1.0,t1:0.5,t2:-0.25", axis labels, and comma-separated number lists.

#include "pluriform/errors.hpp"
#include "pluriform/multitime.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace pluriform::cli {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ParameterError("not a number: '" + s + "'");
    return v;
}

inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (const auto& item : split(s, ',')) out.push_back(parse_number(item));
    return out;
}

/// "t" -> 0, "t<k>" -> k; checked against m.
inline int parse_axis(const std::string& label, int m) {
    if (label == "t") return 0;
    if (label.size() < 2 || label[0] != 't')
        throw ParameterError("bad axis label '" + label + "'");
    const std::string digits = label.substr(1);
    for (char ch : digits)
        if (ch < '0' || ch > '9') throw ParameterError("bad axis label '" + label + "'");
    const int k = std::stoi(digits);
    if (k < 1 || k > m) throw ParameterError("axis '" + label + "' out of range for this system");
    return k;
}

inline MultiTimePath parse_path(const std::string& spec, int m) {
    MultiTimePath path;
    if (spec.empty()) return path;
    for (const auto& item : split(spec, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParameterError("path segment '" + item + "' lacks ':'");
        path.segments.push_back({parse_axis(item.substr(0, colon), m), parse_number(item.substr(colon + 1))});
    }
    return path;
}

/// Full-precision decimal rendering for CSV output.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace pluriform::cli
