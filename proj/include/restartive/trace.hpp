#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace restartive {

struct TraceRow {
    long iter = 0;
    double f_value = 0.0;
    std::optional<double> opt_gap;
    double grad_norm = 0.0;
    double step_size = 0.0;
    double momentum = 0.0;
    bool restarted = false;
};

struct Trace {
    std::vector<TraceRow> rows;
    bool diverged = false;
    uint64_t config_hash = 0;
};

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Shortest round-trippable decimal form; 17 significant digits always
// round-trip an IEEE double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string trace_to_csv(const Trace& t) {
    std::string out = "iter,f_value,opt_gap,grad_norm,step_size,momentum,restarted\n";
    for (const auto& r : t.rows) {
        out += std::to_string(r.iter);
        out += ',';
        out += format_double(r.f_value);
        out += ',';
        if (r.opt_gap) out += format_double(*r.opt_gap);
        out += ',';
        out += format_double(r.grad_norm);
        out += ',';
        out += format_double(r.step_size);
        out += ',';
        out += format_double(r.momentum);
        out += ',';
        out += r.restarted ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline void write_trace_csv(const Trace& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("trace: cannot open " + path + " for writing");
    f << trace_to_csv(t);
    if (!f) throw std::runtime_error("trace: write to " + path + " failed");
}

inline Trace parse_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("trace: empty csv");
    if (line != "iter,f_value,opt_gap,grad_norm,step_size,momentum,restarted")
        throw std::runtime_error("trace: unexpected header '" + line + "'");
    Trace t;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 7)
            throw std::runtime_error("trace: line " + std::to_string(lineno)
                                     + " has " + std::to_string(fields.size()) + " fields");
        TraceRow r;
        r.iter = std::stol(fields[0]);
        r.f_value = std::stod(fields[1]);
        if (!fields[2].empty()) r.opt_gap = std::stod(fields[2]);
        r.grad_norm = std::stod(fields[3]);
        r.step_size = std::stod(fields[4]);
        r.momentum = std::stod(fields[5]);
        r.restarted = fields[6] == "1";
        t.rows.push_back(r);
    }
    return t;
}

inline Trace read_trace_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("trace: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_trace_csv(ss.str());
}

inline std::vector<std::pair<long, double>> gap_curve(const Trace& t, double f_ref) {
    std::vector<std::pair<long, double>> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) out.emplace_back(r.iter, r.f_value - f_ref);
    return out;
}

// Least-squares slope of log(gap) against log(iter) over the rows past the
// burn-in fraction.  Rows at iter 0 are skipped; a nonpositive gap inside the
// window is an analysis error rather than a silent drop.
inline double slope_loglog(const std::vector<std::pair<long, double>>& curve,
                           double burn_in) {
    if (burn_in < 0.0 || burn_in >= 1.0)
        throw std::invalid_argument("growth_slope: burn_in must be in [0, 1)");
    const std::size_t start =
        static_cast<std::size_t>(std::floor(burn_in * static_cast<double>(curve.size())));
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = start; i < curve.size(); ++i) {
        if (curve[i].first == 0) continue;
        if (!(curve[i].second > 0.0))
            throw std::runtime_error("growth_slope: nonpositive gap at iter "
                                     + std::to_string(curve[i].first));
        pts.emplace_back(std::log(static_cast<double>(curve[i].first)),
                         std::log(curve[i].second));
    }
    if (pts.size() < 10)
        throw std::invalid_argument("growth_slope: need at least 10 rows after burn-in, have "
                                    + std::to_string(pts.size()));
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / static_cast<double>(pts.size());
    const double my = sy / static_cast<double>(pts.size());
    double num = 0.0, den = 0.0;
    for (const auto& [x, y] : pts) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if (den == 0.0) throw std::runtime_error("growth_slope: degenerate iter range");
    return num / den;
}

inline double growth_slope(const Trace& t, double burn_in) {
    std::vector<std::pair<long, double>> curve;
    curve.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        if (!r.opt_gap)
            throw std::runtime_error("growth_slope: opt_gap missing at iter "
                                     + std::to_string(r.iter));
        curve.emplace_back(r.iter, *r.opt_gap);
    }
    return slope_loglog(curve, burn_in);
}

// Running minimum of the squared gradient norm over the recorded rows.
inline std::vector<std::pair<long, double>> min_grad_norm_curve(const Trace& t) {
    std::vector<std::pair<long, double>> out;
    out.reserve(t.rows.size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : t.rows) {
        const double sq = r.grad_norm * r.grad_norm;
        if (sq < best) best = sq;
        out.emplace_back(r.iter, best);
    }
    return out;
}

} // namespace restartive
