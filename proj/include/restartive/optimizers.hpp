#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "restartive/vec.hpp"

namespace restartive {

// Shared mutable state for every step rule.  w is the primary iterate; v is the
// auxiliary sequence (for HB it holds the previous w).  t backs the NAG
// recursion, m the adaptive-restart counter, iter_count the scheduled-restart
// counter, last_f the previous objective value seen by adaptive restart.
struct OptimizerState {
    Vec w;
    Vec v;
    double t = 1.0;
    long m = 1;
    long iter_count = 1;
    double last_f = std::numeric_limits<double>::infinity();
    long global_iter = 0;
};

inline OptimizerState make_state(Vec w0) {
    OptimizerState st;
    st.v = w0;
    st.w = std::move(w0);
    return st;
}

struct StepOutcome {
    double momentum_used = 0.0;
    bool restarted = false;
};

namespace detail {
inline void check_grad(const OptimizerState& st, const Vec& grad) {
    check_same_len(st.w, grad, "step");
    if (!all_finite(grad)) throw std::runtime_error("step: non-finite gradient");
}
inline void check_step_size(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("step: step size must be positive");
}
inline void check_mu(double mu) {
    if (!(mu >= 0.0 && mu < 1.0)) throw std::invalid_argument("step: mu must be in [0,1)");
}
} // namespace detail

// w' = w - s*grad.
inline StepOutcome gd_step(OptimizerState& st, const Vec& grad, double s) {
    detail::check_grad(st, grad);
    detail::check_step_size(s);
    for (std::size_t i = 0; i < st.w.size(); ++i) st.w[i] -= s * grad[i];
    st.v = st.w;
    ++st.global_iter;
    return {0.0, false};
}

// Heavy ball: w' = w - s*grad + mu*(w - w_prev), with w_prev carried in v.
inline StepOutcome hb_step(OptimizerState& st, const Vec& grad, double s, double mu) {
    detail::check_grad(st, grad);
    detail::check_step_size(s);
    detail::check_mu(mu);
    for (std::size_t i = 0; i < st.w.size(); ++i) {
        const double w_new = st.w[i] - s * grad[i] + mu * (st.w[i] - st.v[i]);
        st.v[i] = st.w[i];
        st.w[i] = w_new;
    }
    ++st.global_iter;
    return {mu, false};
}

// Lookahead (constant) momentum: v' = w - s*grad; w' = v' + mu*(v' - v).
inline StepOutcome cm_step(OptimizerState& st, const Vec& grad, double s, double mu) {
    detail::check_grad(st, grad);
    detail::check_step_size(s);
    detail::check_mu(mu);
    for (std::size_t i = 0; i < st.w.size(); ++i) {
        const double v_new = st.w[i] - s * grad[i];
        st.w[i] = v_new + mu * (v_new - st.v[i]);
        st.v[i] = v_new;
    }
    ++st.global_iter;
    return {mu, false};
}

// Nesterov momentum with the exact t_k recursion, t_{k+1} = (1+sqrt(1+4t_k^2))/2.
inline StepOutcome nag_step(OptimizerState& st, const Vec& grad, double s) {
    detail::check_grad(st, grad);
    detail::check_step_size(s);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * st.t * st.t));
    const double mu = (st.t - 1.0) / t_next;
    for (std::size_t i = 0; i < st.w.size(); ++i) {
        const double v_new = st.w[i] - s * grad[i];
        st.w[i] = v_new + mu * (v_new - st.v[i]);
        st.v[i] = v_new;
    }
    st.t = t_next;
    ++st.global_iter;
    return {mu, false};
}

// Adaptive restart: step with the current counter m, then update m against the
// supplied objective value (m+1 on non-increase, reset to 1 on increase).
inline StepOutcome arnag_step(OptimizerState& st, const Vec& grad, double f_new, double s) {
    detail::check_grad(st, grad);
    detail::check_step_size(s);
    const double mu = static_cast<double>(st.m - 1) / static_cast<double>(st.m + 2);
    for (std::size_t i = 0; i < st.w.size(); ++i) {
        const double v_new = st.w[i] - s * grad[i];
        st.w[i] = v_new + mu * (v_new - st.v[i]);
        st.v[i] = v_new;
    }
    bool restarted = false;
    if (f_new <= st.last_f) {
        ++st.m;
    } else {
        st.m = 1;
        restarted = true;
    }
    st.last_f = f_new;
    ++st.global_iter;
    return {mu, restarted};
}

// Scheduled restart: counter form of the NAG coefficient, reset every F steps.
// With an exact oracle this is SRNAG; with a mini-batch oracle it is SRSGD.
inline StepOutcome sr_step(OptimizerState& st, const Vec& grad, double s, long F) {
    detail::check_grad(st, grad);
    detail::check_step_size(s);
    if (F < 1) throw std::invalid_argument("sr_step: F must be >= 1");
    if (st.iter_count < 1 || st.iter_count > F)
        throw std::invalid_argument("sr_step: iter_count out of [1, F]");
    const double mu =
        static_cast<double>(st.iter_count - 1) / static_cast<double>(st.iter_count + 2);
    for (std::size_t i = 0; i < st.w.size(); ++i) {
        const double v_new = st.w[i] - s * grad[i];
        st.w[i] = v_new + mu * (v_new - st.v[i]);
        st.v[i] = v_new;
    }
    bool restarted = false;
    ++st.iter_count;
    if (st.iter_count > F) {
        st.iter_count = 1;
        restarted = true;
    }
    ++st.global_iter;
    return {mu, restarted};
}

// Buffer formulation of sr_step, mirroring the common deep-learning-framework
// arrangement: buf1 = params - s*grad; params' = buf1 + mu*(buf1 - buffer).
struct BufferSrResult {
    Vec params;
    Vec buffer;
    long iter_count;
};

inline BufferSrResult buffer_sr_step(const Vec& params, const Vec& buffer, const Vec& grad,
                                     double s, long iter_count, long F) {
    check_same_len(params, grad, "buffer_sr_step");
    check_same_len(params, buffer, "buffer_sr_step");
    detail::check_step_size(s);
    if (F < 1) throw std::invalid_argument("buffer_sr_step: F must be >= 1");
    if (iter_count < 1 || iter_count > F)
        throw std::invalid_argument("buffer_sr_step: iter_count out of [1, F]");
    const double mu = static_cast<double>(iter_count - 1) / static_cast<double>(iter_count + 2);
    BufferSrResult out;
    out.params.resize(params.size());
    out.buffer.resize(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double buf1 = params[i] - s * grad[i];
        out.params[i] = buf1 + mu * (buf1 - buffer[i]);
        out.buffer[i] = buf1;
    }
    out.iter_count = iter_count + 1;
    if (out.iter_count > F) out.iter_count = 1;
    return out;
}

// grad + lambda*w.
inline Vec weight_decay_apply(const Vec& grad, const Vec& w, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("weight_decay_apply: negative lambda");
    return axpy(lambda, w, grad);
}

} // namespace restartive
