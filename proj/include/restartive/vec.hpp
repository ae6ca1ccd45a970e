#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace restartive {

// Parameter/iterate representation used throughout: a flat array of doubles.
using Vec = std::vector<double>;

inline void check_same_len(const Vec& x, const Vec& y, const char* op) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch ("
                                    + std::to_string(x.size()) + " vs "
                                    + std::to_string(y.size()) + ")");
    }
}

inline Vec add(const Vec& x, const Vec& y) {
    check_same_len(x, y, "add");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

inline Vec sub(const Vec& x, const Vec& y) {
    check_same_len(x, y, "sub");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

inline Vec scale(double alpha, const Vec& x) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
    return out;
}

// alpha*x + y, returned as a new vector.
inline Vec axpy(double alpha, const Vec& x, const Vec& y) {
    check_same_len(x, y, "axpy");
    if (!std::isfinite(alpha)) throw std::invalid_argument("axpy: alpha not finite");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + y[i];
    return out;
}

inline double dot(const Vec& x, const Vec& y) {
    check_same_len(x, y, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double l2_norm(const Vec& x) {
    return std::sqrt(dot(x, x));
}

inline bool all_finite(const Vec& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace restartive
