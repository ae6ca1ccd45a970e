#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "restartive/vec.hpp"

namespace restartive {

// Central-difference gradient, the validation oracle for every analytic gradient.
inline Vec finite_diff_gradient(const std::function<double(const Vec&)>& f,
                                const Vec& x, double h) {
    if (h <= 0.0) throw std::invalid_argument("finite_diff_gradient: h must be positive");
    Vec g(x.size());
    Vec probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double fp = f(probe);
        probe[i] = x[i] - h;
        const double fm = f(probe);
        probe[i] = x[i];
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw std::runtime_error("finite_diff_gradient: non-finite f at probe point");
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// Max over coordinates of |a_i - b_i| / max(1, |a_i|, |b_i|).
inline double max_rel_error(const Vec& a, const Vec& b) {
    check_same_len(a, b, "max_rel_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double denom = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
        worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
    }
    return worst;
}

} // namespace restartive
