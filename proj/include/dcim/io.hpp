#pragma once

// File formats: the key-value nameplate document, the name,value parameter
// CSV, the name,lo,hi bounds CSV, and the report/trace/curve CSV emitters.
// Doubles are written with std::to_chars (shortest round-trip form), so
// re-reading a written file reproduces the exact values and re-running with
// identical inputs is byte-identical.

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "estimator.hpp"

namespace dcim::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v))
        throw ParseError("value of '" + what + "' is not a finite decimal: '" + text + "'");
    return v;
}

namespace detail {

inline std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// key/value lines, '#' comments, optional '=' between key and value
inline std::map<std::string, std::string> read_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string text = strip(line);
        if (text.empty())
            continue;
        auto sep = text.find_first_of(" \t=");
        if (sep == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key value'");
        const std::string key = text.substr(0, sep);
        std::string rest = strip(text.substr(sep));
        if (!rest.empty() && rest.front() == '=')
            rest = strip(rest.substr(1));
        if (rest.empty())
            throw ParseError("key '" + key + "' has no value");
        if (kv.contains(key))
            throw ParseError("duplicate key '" + key + "'");
        kv.emplace(key, rest);
    }
    return kv;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(strip(field));
    return fields;
}

}  // namespace detail

// Suggested pole-pair count from rated power, full-load torque and slip.
inline int suggest_pole_pairs(double freq, double p_rated, double t_full_load,
                              double s_full_load) {
    const double mech_speed = p_rated / t_full_load;
    const double sync_speed = mech_speed / (1.0 - s_full_load);
    const double p = 2.0 * std::numbers::pi * freq / sync_speed;
    return std::max(1, static_cast<int>(std::lround(p)));
}

inline Nameplate read_nameplate(std::istream& in) {
    auto kv = detail::read_key_values(in);
    auto take = [&kv](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw ParseError(std::string("missing key '") + key + "'");
        std::string value = it->second;
        kv.erase(it);
        return value;
    };
    Nameplate n;
    n.t_start = parse_double(take("t_start"), "t_start");
    n.t_full_load = parse_double(take("t_full_load"), "t_full_load");
    n.t_max = parse_double(take("t_max"), "t_max");
    n.i_start = parse_double(take("i_start"), "i_start");
    n.i_full_load = parse_double(take("i_full_load"), "i_full_load");
    n.pf_full_load = parse_double(take("pf_full_load"), "pf_full_load");
    n.s_full_load = parse_double(take("s_full_load"), "s_full_load");
    n.v_line = parse_double(take("v_line"), "v_line");
    n.freq = parse_double(take("freq"), "freq");
    n.p_rated = parse_double(take("p_rated"), "p_rated");
    if (!kv.contains("pole_pairs")) {
        std::string msg = "missing key 'pole_pairs'";
        if (n.freq > 0 && n.p_rated > 0 && n.t_full_load > 0 && n.s_full_load > 0 &&
            n.s_full_load < 1) {
            msg += "; from the other entries this motor looks like pole_pairs = " +
                   std::to_string(
                       suggest_pole_pairs(n.freq, n.p_rated, n.t_full_load, n.s_full_load));
        }
        throw ParseError(msg);
    }
    const double pp = parse_double(take("pole_pairs"), "pole_pairs");
    if (pp != std::floor(pp) || pp < 1)
        throw ParseError("value of 'pole_pairs' must be a positive integer");
    n.pole_pairs = static_cast<int>(pp);
    if (!kv.empty())
        throw ParseError("unknown key '" + kv.begin()->first + "'");
    try {
        n.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return n;
}

inline Nameplate read_nameplate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open nameplate file '" + path + "'");
    try {
        return read_nameplate(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_params_csv(std::ostream& out, const CircuitParams& p) {
    out << "name,value\n";
    const auto names = CircuitParams::names();
    const auto vals = p.to_array();
    for (std::size_t i = 0; i < CircuitParams::count; ++i)
        out << names[i] << ',' << format_double(vals[i]) << '\n';
}

inline CircuitParams read_params_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::split_csv_line(line) !=
                                       std::vector<std::string>{"name", "value"})
        throw ParseError("params csv: expected header 'name,value'");
    std::map<std::string, double> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::strip(line).empty())
            continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 2)
            throw ParseError("params csv line " + std::to_string(line_no) +
                             ": expected 'name,value'");
        if (seen.contains(fields[0]))
            throw ParseError("params csv: duplicate parameter '" + fields[0] + "'");
        seen.emplace(fields[0], parse_double(fields[1], fields[0]));
    }
    const auto names = CircuitParams::names();
    std::array<double, CircuitParams::count> vals{};
    for (std::size_t i = 0; i < CircuitParams::count; ++i) {
        const auto it = seen.find(names[i]);
        if (it == seen.end())
            throw ParseError(std::string("params csv: missing parameter '") + names[i] + "'");
        vals[i] = it->second;
        seen.erase(it);
    }
    if (!seen.empty())
        throw ParseError("params csv: unknown parameter '" + seen.begin()->first + "'");
    CircuitParams p = CircuitParams::from_array(vals);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return p;
}

inline CircuitParams read_params_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open params file '" + path + "'");
    try {
        return read_params_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// name,lo,hi rows, one per circuit parameter
inline SearchBounds read_bounds_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || detail::split_csv_line(line) !=
                                       std::vector<std::string>{"name", "lo", "hi"})
        throw ParseError("bounds csv: expected header 'name,lo,hi'");
    std::map<std::string, Interval> seen;
    while (std::getline(in, line)) {
        if (detail::strip(line).empty())
            continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 3)
            throw ParseError("bounds csv: expected 'name,lo,hi' rows");
        if (seen.contains(fields[0]))
            throw ParseError("bounds csv: duplicate parameter '" + fields[0] + "'");
        seen.emplace(fields[0], Interval{parse_double(fields[1], fields[0] + " lo"),
                                         parse_double(fields[2], fields[0] + " hi")});
    }
    SearchBounds b;
    const auto names = CircuitParams::names();
    std::array<Interval*, CircuitParams::count> slots{&b.r_s, &b.x_sd, &b.x_m, &b.r_1,
                                                      &b.x_1d, &b.r_2, &b.x_2d};
    for (std::size_t i = 0; i < CircuitParams::count; ++i) {
        const auto it = seen.find(names[i]);
        if (it == seen.end())
            throw ParseError(std::string("bounds csv: missing parameter '") + names[i] + "'");
        *slots[i] = it->second;
        seen.erase(it);
    }
    if (!seen.empty())
        throw ParseError("bounds csv: unknown parameter '" + seen.begin()->first + "'");
    try {
        b.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return b;
}

inline SearchBounds read_bounds_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open bounds file '" + path + "'");
    try {
        return read_bounds_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_report_csv(std::ostream& out, const QuantityTable& table) {
    out << "quantity,manufacturer,calculated,error_pct\n";
    for (const QuantityRow& row : table)
        out << row.quantity << ',' << format_double(row.manufacturer) << ','
            << format_double(row.calculated) << ',' << format_double(row.error_pct) << '\n';
}

inline void write_trace_csv(std::ostream& out, const RunTrace& trace) {
    out << "iteration,best_cost\n";
    for (std::size_t i = 0; i < trace.best_cost_per_iteration.size(); ++i)
        out << (i + 1) << ',' << format_double(trace.best_cost_per_iteration[i]) << '\n';
}

inline void write_curve_csv(std::ostream& out, const char* value_name,
                            const std::vector<std::pair<double, double>>& curve) {
    out << "slip," << value_name << '\n';
    for (const auto& [slip, value] : curve)
        out << format_double(slip) << ',' << format_double(value) << '\n';
}

inline void write_anchors_csv(std::ostream& out, const std::vector<CurveAnchor>& anchors) {
    out << "curve,slip,value\n";
    for (const CurveAnchor& a : anchors)
        out << a.curve << ',' << format_double(a.slip) << ',' << format_double(a.value) << '\n';
}

}  // namespace dcim::io
