#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "restartive/mnist.hpp"
#include "restartive/optimizers.hpp"
#include "restartive/oracle.hpp"
#include "restartive/problems.hpp"
#include "restartive/schedules.hpp"
#include "restartive/trace.hpp"
#include "restartive/vec.hpp"

namespace restartive {

constexpr double divergence_threshold = 1e12;

enum class MethodKind { GD, HB, CM, NAG, ARNAG, SR };

struct MethodSpec {
    MethodKind kind = MethodKind::GD;
    std::string label = "GD";
    double mu = 0.9;          // hb and cm only
    FrequencyPlan frequency;  // sr only
    bool has_frequency = false;
};

struct SyntheticSpec {
    long n = 300;
    long p = 2;
    long classes = 3;
    double sigma = 0.25;
    double nuisance_sigma = -1.0; // negative means "same as sigma"
    uint64_t data_seed = 7;
};

struct ProblemSpec {
    enum class Kind { CycleQuadratic, Rosenbrock, LogregSynthetic, LogregMnist };
    Kind kind = Kind::CycleQuadratic;
    long d = 4;                // cycle_quadratic / rosenbrock
    bool project_b = false;    // cycle_quadratic
    double lambda = 0.0;       // logreg
    SyntheticSpec synthetic;   // logreg_synthetic, also the mnist fallback
};

struct ExperimentConfig {
    std::string name = "custom";
    ProblemSpec problem;
    OracleSpec oracle;
    std::vector<MethodSpec> methods;
    StagePlan stages;
    long total_iters = 0; // defaults to the stage plan's total length
    std::vector<uint64_t> seeds = {1};
    long record_every = 10;
    std::string resolved_json; // filled by the config layer, hashed into traces
};

// One concrete objective, shared read-only by every run of a comparison.
struct BuiltProblem {
    std::optional<CycleQuadratic> quad;
    std::optional<LogisticRegression> logreg;
    std::optional<Rosenbrock> rosen;
    bool mnist_fallback_used = false;

    long dim() const {
        if (quad) return quad->d;
        if (rosen) return rosen->d;
        if (logreg) return logreg->dim();
        throw std::logic_error("BuiltProblem: empty");
    }

    std::pair<double, Vec> full(const Vec& x) const {
        if (quad) return quad->value_grad(x);
        if (rosen) return rosen->value_grad(x);
        if (logreg) return logreg->value_grad(x);
        throw std::logic_error("BuiltProblem: empty");
    }

    std::pair<double, Vec> batch(const Vec& x, const std::vector<int>& idx) const {
        if (!logreg) throw std::logic_error("BuiltProblem: batch oracle needs a dataset");
        return logreg->value_grad(x, &idx);
    }

    long n_examples() const {
        if (!logreg) throw std::logic_error("BuiltProblem: no dataset");
        return logreg->n;
    }
};

inline BuiltProblem build_problem(const ProblemSpec& spec,
                                  const std::string& mnist_dir = "",
                                  std::ostream* warn = nullptr) {
    BuiltProblem bp;
    auto build_synth = [&](const SyntheticSpec& s, double lambda) {
        Rng rng(s.data_seed);
        bp.logreg = synthetic_blobs(s.n, s.p, s.classes, rng, s.sigma, s.nuisance_sigma);
        bp.logreg->lambda = lambda;
    };
    switch (spec.kind) {
    case ProblemSpec::Kind::CycleQuadratic:
        bp.quad.emplace(spec.d, spec.project_b);
        break;
    case ProblemSpec::Kind::Rosenbrock:
        bp.rosen.emplace(spec.d);
        break;
    case ProblemSpec::Kind::LogregSynthetic:
        build_synth(spec.synthetic, spec.lambda);
        break;
    case ProblemSpec::Kind::LogregMnist: {
        namespace fs = std::filesystem;
        const fs::path dir = mnist_dir;
        const fs::path images = dir / "train-images-idx3-ubyte";
        const fs::path labels = dir / "train-labels-idx1-ubyte";
        if (!mnist_dir.empty() && fs::exists(images) && fs::exists(labels)) {
            bp.logreg = load_mnist_idx(images.string(), labels.string(), spec.lambda);
        } else {
            if (warn)
                *warn << "warning: MNIST files not found"
                      << (mnist_dir.empty() ? "" : " under " + mnist_dir)
                      << ", falling back to synthetic blobs\n";
            build_synth(spec.synthetic, spec.lambda);
            bp.mnist_fallback_used = true;
        }
        break;
    }
    }
    return bp;
}

// Restart frequency in force at iteration k.  Fixed ignores position, linear
// and exponential ramps follow the step-size stage index, piecewise segments
// are positioned directly by iteration (clamping to the last segment), and
// decay-to-one interpolates across its span of stages.
inline long current_frequency(const FrequencyPlan& plan, const StagePlan& stages,
                              long k) {
    switch (plan.kind) {
    case FrequencyPlan::Kind::Fixed:
        return plan.f1;
    case FrequencyPlan::Kind::Piecewise: {
        int idx = 0;
        long acc = 0;
        for (std::size_t i = 0; i < plan.segments.size(); ++i) {
            idx = static_cast<int>(i);
            acc += plan.segments[i].first;
            if (k < acc) break;
        }
        return frequency_at(plan, idx, 0.0);
    }
    case FrequencyPlan::Kind::Linear:
    case FrequencyPlan::Kind::Exponential: {
        int stage = stage_index_of(stages, k);
        if (stage >= plan.n_stages) stage = plan.n_stages - 1;
        return frequency_at(plan, stage, 0.0);
    }
    case FrequencyPlan::Kind::DecayToOne:
        return frequency_at(plan, stage_index_of(stages, k), stage_progress_of(stages, k));
    }
    throw std::logic_error("current_frequency: unknown plan kind");
}

struct RunConfig {
    MethodSpec method;
    StagePlan stages;
    long total_iters = 0;
    uint64_t seed = 1;
    long record_every = 10;
    uint64_t config_hash = 0;
};

struct RunOutput {
    Trace trace;
    Vec final_w;
};

inline GradientOracle make_oracle(const BuiltProblem& prob, const OracleSpec& spec,
                                  uint64_t seed) {
    if (spec.kind == OracleKind::MiniBatch) {
        return GradientOracle(
            spec,
            [&prob](const Vec& x, const std::vector<int>& idx) { return prob.batch(x, idx); },
            prob.n_examples(), seed);
    }
    return GradientOracle(spec, [&prob](const Vec& x) { return prob.full(x); }, seed);
}

// Runs one optimizer from the all-zeros start.  The trace records every
// record_every-th iteration plus one final row evaluated after the last step;
// a non-finite or blown-up objective value ends the trace early with the
// diverged flag set.
inline RunOutput run(const BuiltProblem& prob, const OracleSpec& ospec,
                     const RunConfig& rc) {
    if (rc.total_iters < 1) throw std::invalid_argument("run: total_iters must be >= 1");
    if (rc.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");
    if (rc.method.kind == MethodKind::SR && !rc.method.has_frequency)
        throw std::invalid_argument("run: sr method needs a restart frequency");

    GradientOracle oracle = make_oracle(prob, ospec, rc.seed);
    OptimizerState st = make_state(Vec(static_cast<std::size_t>(prob.dim()), 0.0));
    RunOutput out;
    out.trace.config_hash = rc.config_hash;
    long prev_stage = -1;

    for (long k = 0; k < rc.total_iters; ++k) {
        OracleResult res = oracle.call(st.w);
        const double s_here = step_size_at(rc.stages, std::min(k, rc.total_iters - 1));
        if (!std::isfinite(res.value) || res.value > divergence_threshold
            || !all_finite(res.grad)) {
            out.trace.rows.push_back({k, res.value, std::nullopt, res.clean_grad_norm,
                                      s_here, 0.0, false});
            out.trace.diverged = true;
            break;
        }
        const long stage = stage_index_of(rc.stages, k);
        if (rc.method.kind == MethodKind::SR && stage != prev_stage) st.iter_count = 1;
        prev_stage = stage;

        StepOutcome oc;
        switch (rc.method.kind) {
        case MethodKind::GD:
            oc = gd_step(st, res.grad, s_here);
            break;
        case MethodKind::HB:
            oc = hb_step(st, res.grad, s_here, rc.method.mu);
            break;
        case MethodKind::CM:
            oc = cm_step(st, res.grad, s_here, rc.method.mu);
            break;
        case MethodKind::NAG:
            oc = nag_step(st, res.grad, s_here);
            break;
        case MethodKind::ARNAG:
            oc = arnag_step(st, res.grad, res.value, s_here);
            break;
        case MethodKind::SR: {
            const long freq = current_frequency(rc.method.frequency, rc.stages, k);
            if (st.iter_count > freq) st.iter_count = 1;
            oc = sr_step(st, res.grad, s_here, freq);
            break;
        }
        }
        if (k % rc.record_every == 0)
            out.trace.rows.push_back({k, res.value, std::nullopt, res.clean_grad_norm,
                                      s_here, oc.momentum_used, oc.restarted});
    }

    if (!out.trace.diverged) {
        OracleResult res = oracle.call(st.w);
        const double s_last = step_size_at(rc.stages, rc.total_iters - 1);
        out.trace.rows.push_back({rc.total_iters, res.value, std::nullopt,
                                  res.clean_grad_norm, s_last, 0.0, false});
        if (!std::isfinite(res.value) || res.value > divergence_threshold)
            out.trace.diverged = true;
    }
    out.final_w = st.w;
    return out;
}

struct RunResult {
    std::string label;
    uint64_t seed = 0;
    Trace trace;
    Vec final_w;
    double final_loss = std::numeric_limits<double>::infinity();
    double final_gap = std::numeric_limits<double>::quiet_NaN();
    bool diverged = false;
};

struct MethodSummary {
    std::string label;
    double mean_final_gap = 0.0;
    double stddev_final_gap = 0.0;
    double mean_final_loss = 0.0;
    double stddev_final_loss = 0.0;
    long n_runs = 0;
    long n_diverged = 0;
};

struct ComparisonReport {
    std::vector<RunResult> runs; // method-major, seed-minor order
    std::vector<MethodSummary> methods;
    double f_ref = 0.0;
    double f_ref_observed = std::numeric_limits<double>::infinity();
    std::optional<double> f_ref_lstsq;
    bool all_diverged = false;
};

namespace detail {

inline std::pair<double, double> mean_stddev(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {m, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

} // namespace detail

// Runs every (method, seed) cell, derives a shared reference value, and fills
// per-row optimality gaps plus per-method summaries.  The reference value is
// the smallest finite objective seen anywhere, folded with the closed-form
// least-squares value when the problem is the cycle quadratic.  Every cell is
// independent, so jobs > 1 just spreads cells over threads; results land in a
// pre-indexed slot and the report is identical regardless of thread count.
inline ComparisonReport compare(const ExperimentConfig& cfg, const BuiltProblem& prob,
                                int jobs = 1) {
    if (cfg.methods.empty()) throw std::invalid_argument("compare: no methods configured");
    if (cfg.seeds.empty()) throw std::invalid_argument("compare: no seeds configured");
    const long total = cfg.total_iters > 0 ? cfg.total_iters : cfg.stages.total_length();
    if (!cfg.stages.repeat_last && total > cfg.stages.total_length())
        throw std::invalid_argument("compare: total_iters exceeds the stage plan length");

    const std::size_t n_cells = cfg.methods.size() * cfg.seeds.size();
    std::vector<RunResult> results(n_cells);
    auto run_cell = [&](std::size_t cell) {
        const std::size_t mi = cell / cfg.seeds.size();
        const std::size_t si = cell % cfg.seeds.size();
        RunConfig rc;
        rc.method = cfg.methods[mi];
        rc.stages = cfg.stages;
        rc.total_iters = total;
        rc.seed = cfg.seeds[si];
        rc.record_every = cfg.record_every;
        rc.config_hash = fnv1a64(cfg.resolved_json + "#" + cfg.methods[mi].label + "#"
                                 + std::to_string(cfg.seeds[si]));
        RunOutput ro = run(prob, cfg.oracle, rc);
        RunResult rr;
        rr.label = cfg.methods[mi].label;
        rr.seed = cfg.seeds[si];
        rr.diverged = ro.trace.diverged;
        rr.trace = std::move(ro.trace);
        rr.final_w = std::move(ro.final_w);
        if (all_finite(rr.final_w)) {
            const double fl = prob.full(rr.final_w).first;
            rr.final_loss = std::isfinite(fl) ? fl : std::numeric_limits<double>::infinity();
        }
        results[cell] = std::move(rr);
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n_cells)));
    if (workers == 1) {
        for (std::size_t c = 0; c < n_cells; ++c) run_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < n_cells; c = next.fetch_add(1))
                    run_cell(c);
            });
        for (auto& th : pool) th.join();
    }

    ComparisonReport rep;
    rep.runs = std::move(results);
    for (const auto& rr : rep.runs) {
        for (const auto& row : rr.trace.rows)
            if (std::isfinite(row.f_value))
                rep.f_ref_observed = std::min(rep.f_ref_observed, row.f_value);
        if (std::isfinite(rr.final_loss))
            rep.f_ref_observed = std::min(rep.f_ref_observed, rr.final_loss);
    }
    rep.f_ref = rep.f_ref_observed;
    if (prob.quad) {
        const Vec xs = cycle_cg_solve(*prob.quad);
        rep.f_ref_lstsq = prob.quad->value_grad(xs).first;
        rep.f_ref = std::min(rep.f_ref, *rep.f_ref_lstsq);
    }

    rep.all_diverged = true;
    for (auto& rr : rep.runs) {
        rr.final_gap = rr.final_loss - rep.f_ref;
        for (auto& row : rr.trace.rows) row.opt_gap = row.f_value - rep.f_ref;
        if (!rr.diverged) rep.all_diverged = false;
    }

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        MethodSummary ms;
        ms.label = cfg.methods[mi].label;
        std::vector<double> gaps, losses;
        for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
            const auto& rr = rep.runs[mi * cfg.seeds.size() + si];
            ++ms.n_runs;
            if (rr.diverged) ++ms.n_diverged;
            gaps.push_back(rr.final_gap);
            losses.push_back(rr.final_loss);
        }
        std::tie(ms.mean_final_gap, ms.stddev_final_gap) = detail::mean_stddev(gaps);
        std::tie(ms.mean_final_loss, ms.stddev_final_loss) = detail::mean_stddev(losses);
        rep.methods.push_back(std::move(ms));
    }
    return rep;
}

inline std::string report_to_csv(const ComparisonReport& rep) {
    std::string out = "method,seed,final_gap,final_loss,diverged\n";
    for (const auto& rr : rep.runs) {
        out += rr.label;
        out += ',';
        out += std::to_string(rr.seed);
        out += ',';
        out += format_double(rr.final_gap);
        out += ',';
        out += format_double(rr.final_loss);
        out += ',';
        out += rr.diverged ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline void write_report_csv(const ComparisonReport& rep, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("report: cannot open " + path + " for writing");
    f << report_to_csv(rep);
    if (!f) throw std::runtime_error("report: write to " + path + " failed");
}

// Seed-averaged gap curve for one method, aligned on recorded iterations.
// Diverged runs are excluded; an empty result means every seed diverged.
inline std::vector<std::pair<long, double>> mean_gap_curve(const ComparisonReport& rep,
                                                           const std::string& label) {
    std::vector<const RunResult*> runs;
    for (const auto& rr : rep.runs)
        if (rr.label == label && !rr.diverged) runs.push_back(&rr);
    if (runs.empty()) return {};
    const std::size_t n_rows = runs.front()->trace.rows.size();
    for (const auto* rr : runs)
        if (rr->trace.rows.size() != n_rows)
            throw std::runtime_error("mean_gap_curve: ragged traces for " + label);
    std::vector<std::pair<long, double>> out;
    out.reserve(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        double acc = 0.0;
        for (const auto* rr : runs) acc += rr->trace.rows[i].f_value;
        const long it = runs.front()->trace.rows[i].iter;
        out.emplace_back(it, acc / static_cast<double>(runs.size()) - rep.f_ref);
    }
    return out;
}

} // namespace restartive
