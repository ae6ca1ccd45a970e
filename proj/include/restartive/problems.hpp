#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "restartive/optimizers.hpp"
#include "restartive/rng.hpp"
#include "restartive/vec.hpp"

namespace restartive {

// f(x) = 1/2 x'Lx - x'b with L the cycle-graph Laplacian, applied as the ring
// stencil (Lx)_i = 2x_i - x_{i-1} - x_{i+1} with indices mod d.  Eigenvalues
// are 2 - 2cos(2*pi*j/d), so the smoothness constant is at most 4.
struct CycleQuadratic {
    long d;
    Vec b;

    explicit CycleQuadratic(long dim, bool project_b = false) : d(dim) {
        if (d < 3) throw std::invalid_argument("CycleQuadratic: d must be >= 3");
        b.assign(static_cast<std::size_t>(d), 0.0);
        b[0] = 1.0;
        if (project_b) {
            // Remove the component along the all-ones null direction of L so
            // the objective is bounded below.
            const double mean = 1.0 / static_cast<double>(d);
            for (auto& v : b) v -= mean;
        }
    }

    Vec apply_laplacian(const Vec& x) const {
        const std::size_t n = x.size();
        Vec lx(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t prev = (i == 0) ? n - 1 : i - 1;
            const std::size_t next = (i + 1 == n) ? 0 : i + 1;
            lx[i] = 2.0 * x[i] - x[prev] - x[next];
        }
        return lx;
    }

    std::pair<double, Vec> value_grad(const Vec& x) const {
        if (static_cast<long>(x.size()) != d)
            throw std::invalid_argument("CycleQuadratic: dimension mismatch");
        Vec lx = apply_laplacian(x);
        const double f = 0.5 * dot(x, lx) - dot(x, b);
        for (std::size_t i = 0; i < lx.size(); ++i) lx[i] -= b[i];
        return {f, std::move(lx)};
    }
};

// Objective value at the minimum-norm least-squares solution of Lx = b for
// b = e_1 (with or without the null component removed; the pseudoinverse
// annihilates it either way): f(L+ b) = -(d^2 - 1) / (24 d).
inline double cycle_lstsq_value(long d) {
    const double dd = static_cast<double>(d);
    return -(dd * dd - 1.0) / (24.0 * dd);
}

// Conjugate gradient for Lx = b restricted to the zero-mean subspace.  The
// right-hand side is projected once and the residual re-centered each sweep to
// keep roundoff from reintroducing a null component.
inline Vec cycle_cg_solve(const CycleQuadratic& q, double tol = 1e-13,
                          long max_iters = -1) {
    const std::size_t n = static_cast<std::size_t>(q.d);
    if (max_iters < 0) max_iters = 2 * q.d;
    auto demean = [n](Vec& v) {
        double m = 0.0;
        for (double e : v) m += e;
        m /= static_cast<double>(n);
        for (double& e : v) e -= m;
    };
    Vec x(n, 0.0);
    Vec r = q.b;
    demean(r);
    const double b_norm = l2_norm(r);
    if (b_norm == 0.0) return x;
    Vec p = r;
    double rs = dot(r, r);
    for (long it = 0; it < max_iters; ++it) {
        Vec lp = q.apply_laplacian(p);
        const double alpha = rs / dot(p, lp);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * lp[i];
        }
        demean(r);
        const double rs_new = dot(r, r);
        if (std::sqrt(rs_new) <= tol * b_norm) break;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + (rs_new / rs) * p[i];
        rs = rs_new;
    }
    return x;
}

// Softmax cross-entropy with optional L2 weight decay.  Features are row-major
// n-by-p; W is a p-by-C matrix flattened so entry (j, c) sits at j*C + c.
struct LogisticRegression {
    Vec X;                // n*p, row-major
    std::vector<int> y;   // labels in 0..C-1
    long n = 0;
    long p = 0;
    long C = 0;
    double lambda = 0.0;

    long dim() const { return p * C; }

    std::pair<double, Vec> value_grad(const Vec& W,
                                      const std::vector<int>* batch = nullptr) const {
        if (static_cast<long>(W.size()) != p * C)
            throw std::invalid_argument("LogisticRegression: W must have length p*C");
        static const std::vector<int> no_batch;
        std::vector<int> full;
        const std::vector<int>* idx = batch;
        if (idx == nullptr) {
            full.resize(static_cast<std::size_t>(n));
            for (long i = 0; i < n; ++i) full[static_cast<std::size_t>(i)] = static_cast<int>(i);
            idx = &full;
        }
        if (idx->empty()) throw std::invalid_argument("LogisticRegression: empty batch");

        const std::size_t cc = static_cast<std::size_t>(C);
        std::vector<double> logits(cc);
        Vec grad(W.size(), 0.0);
        double loss = 0.0;
        for (int ei : *idx) {
            if (ei < 0 || ei >= n)
                throw std::invalid_argument("LogisticRegression: batch index out of range");
            const double* row = X.data() + static_cast<std::size_t>(ei) * static_cast<std::size_t>(p);
            for (std::size_t c = 0; c < cc; ++c) logits[c] = 0.0;
            for (long j = 0; j < p; ++j) {
                const double xj = row[j];
                if (xj == 0.0) continue;
                const double* wrow = W.data() + static_cast<std::size_t>(j) * cc;
                for (std::size_t c = 0; c < cc; ++c) logits[c] += xj * wrow[c];
            }
            double zmax = logits[0];
            for (std::size_t c = 1; c < cc; ++c) zmax = std::max(zmax, logits[c]);
            double zsum = 0.0;
            for (std::size_t c = 0; c < cc; ++c) {
                logits[c] = std::exp(logits[c] - zmax);
                zsum += logits[c];
            }
            const std::size_t yi = static_cast<std::size_t>(y[static_cast<std::size_t>(ei)]);
            loss += -(std::log(logits[yi]) - std::log(zsum));
            const double inv = 1.0 / zsum;
            for (std::size_t c = 0; c < cc; ++c) logits[c] *= inv; // now probabilities
            logits[yi] -= 1.0;
            for (long j = 0; j < p; ++j) {
                const double xj = row[j];
                if (xj == 0.0) continue;
                double* grow = grad.data() + static_cast<std::size_t>(j) * cc;
                for (std::size_t c = 0; c < cc; ++c) grow[c] += xj * logits[c];
            }
        }
        const double inv_b = 1.0 / static_cast<double>(idx->size());
        for (auto& g : grad) g *= inv_b;
        loss *= inv_b;
        loss += 0.5 * lambda * dot(W, W);
        if (lambda != 0.0) grad = weight_decay_apply(grad, W, lambda);
        return {loss, std::move(grad)};
    }

    // Per-example softmax probabilities, exposed for invariant checks.
    std::vector<double> probabilities(const Vec& W, int example) const {
        const std::size_t cc = static_cast<std::size_t>(C);
        std::vector<double> z(cc, 0.0);
        const double* row = X.data() + static_cast<std::size_t>(example) * static_cast<std::size_t>(p);
        for (long j = 0; j < p; ++j)
            for (std::size_t c = 0; c < cc; ++c)
                z[c] += row[j] * W[static_cast<std::size_t>(j) * cc + c];
        double zmax = z[0];
        for (double v : z) zmax = std::max(zmax, v);
        double zsum = 0.0;
        for (auto& v : z) {
            v = std::exp(v - zmax);
            zsum += v;
        }
        for (auto& v : z) v /= zsum;
        return z;
    }

    double accuracy(const Vec& W) const {
        long hits = 0;
        for (long i = 0; i < n; ++i) {
            auto probs = probabilities(W, static_cast<int>(i));
            std::size_t best = 0;
            for (std::size_t c = 1; c < probs.size(); ++c)
                if (probs[c] > probs[best]) best = c;
            if (static_cast<int>(best) == y[static_cast<std::size_t>(i)]) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(n);
    }
};

// C Gaussian clusters with unit-norm, well-separated means: one coordinate
// axis per class when C <= p, otherwise spread on the unit circle in the first
// two coordinates so the classes stay separable through the origin.
// Coordinates >= C (present when C <= p) carry no class signal and use
// nuisance_sigma, which defaults to sigma.
inline LogisticRegression synthetic_blobs(long n, long p, long C, Rng& rng,
                                          double sigma = 0.25,
                                          double nuisance_sigma = -1.0) {
    if (C < 1 || n < C) throw std::invalid_argument("synthetic_blobs: need n >= C >= 1");
    if (p < 1) throw std::invalid_argument("synthetic_blobs: need p >= 1");
    if (nuisance_sigma < 0.0) nuisance_sigma = sigma;

    std::vector<Vec> means(static_cast<std::size_t>(C), Vec(static_cast<std::size_t>(p), 0.0));
    if (C <= p) {
        for (long c = 0; c < C; ++c) means[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)] = 1.0;
    } else {
        for (long c = 0; c < C; ++c) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(C);
            means[static_cast<std::size_t>(c)][0] = std::cos(theta);
            if (p > 1) means[static_cast<std::size_t>(c)][1] = std::sin(theta);
        }
    }
    Vec sig(static_cast<std::size_t>(p), sigma);
    if (C <= p)
        for (long j = C; j < p; ++j) sig[static_cast<std::size_t>(j)] = nuisance_sigma;

    LogisticRegression lr;
    lr.n = n;
    lr.p = p;
    lr.C = C;
    lr.X.resize(static_cast<std::size_t>(n * p));
    lr.y.resize(static_cast<std::size_t>(n));
    std::size_t i = 0;
    for (long c = 0; c < C; ++c) {
        const long count = n / C + (c < n % C ? 1 : 0);
        for (long k = 0; k < count; ++k) {
            double* row = lr.X.data() + i * static_cast<std::size_t>(p);
            for (long j = 0; j < p; ++j)
                row[j] = means[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]
                         + rng.next_gaussian(0.0, sig[static_cast<std::size_t>(j)]);
            lr.y[i] = static_cast<int>(c);
            ++i;
        }
    }
    return lr;
}

// Sum of d/2 independent two-dimensional Rosenbrock terms,
// f(x) = sum_j (1 - x_{2j})^2 + 100 (x_{2j+1} - x_{2j}^2)^2,
// with the global minimum at the all-ones point.
struct Rosenbrock {
    long d;

    explicit Rosenbrock(long dim) : d(dim) {
        if (d < 2 || d % 2 != 0)
            throw std::invalid_argument("Rosenbrock: d must be even and >= 2");
    }

    std::pair<double, Vec> value_grad(const Vec& x) const {
        if (static_cast<long>(x.size()) != d)
            throw std::invalid_argument("Rosenbrock: dimension mismatch");
        double f = 0.0;
        Vec g(x.size());
        for (std::size_t j = 0; j + 1 < x.size(); j += 2) {
            const double a = x[j];
            const double bb = x[j + 1];
            const double q = bb - a * a;
            f += (1.0 - a) * (1.0 - a) + 100.0 * q * q;
            g[j] = -2.0 * (1.0 - a) - 400.0 * a * q;
            g[j + 1] = 200.0 * q;
        }
        return {f, std::move(g)};
    }
};

} // namespace restartive
