#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "restartive/rng.hpp"
#include "restartive/vec.hpp"

namespace restartive {

enum class OracleKind { Exact, GaussianConstant, GaussianDecaying, MiniBatch };

struct OracleSpec {
    OracleKind kind = OracleKind::Exact;
    double sigma = 0.0;   // gaussian_constant
    double sigma0 = 0.0;  // gaussian_decaying
    long period = 1;      // gaussian_decaying
    long batch_size = 1;  // minibatch

    static OracleSpec exact() { return {}; }
    static OracleSpec gaussian_constant(double sigma) {
        OracleSpec s;
        s.kind = OracleKind::GaussianConstant;
        s.sigma = sigma;
        return s;
    }
    static OracleSpec gaussian_decaying(double sigma0, long period) {
        OracleSpec s;
        s.kind = OracleKind::GaussianDecaying;
        s.sigma0 = sigma0;
        s.period = period;
        return s;
    }
    static OracleSpec minibatch(long batch_size) {
        OracleSpec s;
        s.kind = OracleKind::MiniBatch;
        s.batch_size = batch_size;
        return s;
    }
};

struct OracleResult {
    double value = 0.0;
    Vec grad;
    // Norm of the gradient before any injected noise; for mini-batch calls
    // this is just the batch gradient's norm.
    double clean_grad_norm = 0.0;
};

// Wraps a deterministic objective in one of four query models.  All
// randomness flows through the owned Rng, so a (spec, seed) pair fully
// determines the response stream.
class GradientOracle {
  public:
    using FullEval = std::function<std::pair<double, Vec>(const Vec&)>;
    using BatchEval = std::function<std::pair<double, Vec>(const Vec&, const std::vector<int>&)>;

    GradientOracle(OracleSpec spec, FullEval full, uint64_t seed)
        : spec_(spec), full_(std::move(full)), rng_(seed) {
        if (spec_.kind == OracleKind::MiniBatch)
            throw std::invalid_argument("oracle: minibatch kind needs a batch evaluator");
        validate();
    }

    GradientOracle(OracleSpec spec, BatchEval batch, long n, uint64_t seed)
        : spec_(spec), batch_(std::move(batch)), n_(n), rng_(seed) {
        if (spec_.kind != OracleKind::MiniBatch)
            throw std::invalid_argument("oracle: batch evaluator given to a full-gradient kind");
        if (n_ < 1) throw std::invalid_argument("oracle: dataset must be non-empty");
        validate();
        perm_.resize(static_cast<std::size_t>(n_));
        for (long i = 0; i < n_; ++i) perm_[static_cast<std::size_t>(i)] = static_cast<int>(i);
        pos_ = n_; // forces a shuffle on the first call
    }

    OracleResult call(const Vec& x) {
        OracleResult out;
        switch (spec_.kind) {
        case OracleKind::Exact: {
            auto [f, g] = full_(x);
            out.value = f;
            out.clean_grad_norm = l2_norm(g);
            out.grad = std::move(g);
            break;
        }
        case OracleKind::GaussianConstant:
        case OracleKind::GaussianDecaying: {
            auto [f, g] = full_(x);
            out.value = f;
            out.clean_grad_norm = l2_norm(g);
            double sd = spec_.sigma;
            if (spec_.kind == OracleKind::GaussianDecaying)
                sd = spec_.sigma0 / static_cast<double>(calls_ / spec_.period + 1);
            for (auto& gi : g) gi += rng_.next_gaussian(0.0, sd);
            out.grad = std::move(g);
            break;
        }
        case OracleKind::MiniBatch: {
            if (pos_ >= n_) {
                rng_.shuffle(perm_);
                pos_ = 0;
            }
            const long take = std::min(spec_.batch_size, n_ - pos_);
            std::vector<int> idx(perm_.begin() + pos_, perm_.begin() + pos_ + take);
            pos_ += take;
            auto [f, g] = batch_(x, idx);
            out.value = f;
            out.clean_grad_norm = l2_norm(g);
            out.grad = std::move(g);
            break;
        }
        }
        ++calls_;
        return out;
    }

    long calls() const { return calls_; }
    const std::vector<int>& current_permutation() const { return perm_; }

  private:
    void validate() const {
        if (spec_.kind == OracleKind::GaussianConstant && spec_.sigma < 0.0)
            throw std::invalid_argument("oracle: sigma must be >= 0");
        if (spec_.kind == OracleKind::GaussianDecaying) {
            if (spec_.sigma0 < 0.0) throw std::invalid_argument("oracle: sigma0 must be >= 0");
            if (spec_.period < 1) throw std::invalid_argument("oracle: period must be >= 1");
        }
        if (spec_.kind == OracleKind::MiniBatch && spec_.batch_size < 1)
            throw std::invalid_argument("oracle: batch_size must be >= 1");
    }

    OracleSpec spec_;
    FullEval full_;
    BatchEval batch_;
    long n_ = 0;
    Rng rng_;
    long calls_ = 0;
    std::vector<int> perm_;
    long pos_ = 0;
};

} // namespace restartive
