#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace restartive {

// floor(x + 0.5): reproduces both 40*1.25^2 = 62.5 -> 63 and 40*1.25^3 = 78.125 -> 78.
inline long round_half_up(double x) {
    return static_cast<long>(std::floor(x + 0.5));
}

// Restart-frequency schedule over learning-rate stages.
struct FrequencyPlan {
    enum class Kind { Fixed, Linear, Exponential, Piecewise, DecayToOne };

    Kind kind = Kind::Fixed;
    long f1 = 1;          // Fixed: F; Linear/Exponential: first-stage F; DecayToOne: F_start
    double r = 1.0;       // growth ratio, >= 1
    int n_stages = 1;     // Linear/Exponential only
    int span = 1;         // DecayToOne: number of stages to reach 1
    std::vector<std::pair<long, long>> segments; // Piecewise: (iteration count, F)

    static FrequencyPlan fixed(long f) {
        FrequencyPlan p;
        p.kind = Kind::Fixed;
        p.f1 = f;
        return p;
    }
    static FrequencyPlan linear(long f1, double r, int n_stages) {
        FrequencyPlan p;
        p.kind = Kind::Linear;
        p.f1 = f1;
        p.r = r;
        p.n_stages = n_stages;
        return p;
    }
    static FrequencyPlan exponential(long f1, double r, int n_stages) {
        FrequencyPlan p;
        p.kind = Kind::Exponential;
        p.f1 = f1;
        p.r = r;
        p.n_stages = n_stages;
        return p;
    }
    static FrequencyPlan piecewise(std::vector<std::pair<long, long>> segments) {
        FrequencyPlan p;
        p.kind = Kind::Piecewise;
        p.segments = std::move(segments);
        return p;
    }
    static FrequencyPlan decay_to_one(long f_start, int span) {
        FrequencyPlan p;
        p.kind = Kind::DecayToOne;
        p.f1 = f_start;
        p.span = span;
        return p;
    }
};

// Restart frequency active at (stage_index, fraction of the stage completed).
// For Piecewise plans the stage index addresses the plan's own segment list.
inline long frequency_at(const FrequencyPlan& plan, int stage_index,
                         double within_stage_progress) {
    if (stage_index < 0) throw std::invalid_argument("frequency_at: negative stage index");
    switch (plan.kind) {
    case FrequencyPlan::Kind::Fixed:
        return plan.f1;
    case FrequencyPlan::Kind::Linear: {
        if (stage_index >= plan.n_stages)
            throw std::invalid_argument("frequency_at: stage " + std::to_string(stage_index)
                                        + " out of range for " + std::to_string(plan.n_stages)
                                        + "-stage linear plan");
        const double f = static_cast<double>(plan.f1) * (1.0 + (plan.r - 1.0) * stage_index);
        return std::max(1l, round_half_up(f));
    }
    case FrequencyPlan::Kind::Exponential: {
        if (stage_index >= plan.n_stages)
            throw std::invalid_argument("frequency_at: stage " + std::to_string(stage_index)
                                        + " out of range for " + std::to_string(plan.n_stages)
                                        + "-stage exponential plan");
        const double f = static_cast<double>(plan.f1) * std::pow(plan.r, stage_index);
        return std::max(1l, round_half_up(f));
    }
    case FrequencyPlan::Kind::Piecewise: {
        if (static_cast<std::size_t>(stage_index) >= plan.segments.size())
            throw std::invalid_argument("frequency_at: segment " + std::to_string(stage_index)
                                        + " out of range for piecewise plan of "
                                        + std::to_string(plan.segments.size()) + " segments");
        return plan.segments[static_cast<std::size_t>(stage_index)].second;
    }
    case FrequencyPlan::Kind::DecayToOne: {
        const double overall =
            (static_cast<double>(stage_index) + within_stage_progress) / plan.span;
        const double clamped = overall < 0.0 ? 0.0 : (overall > 1.0 ? 1.0 : overall);
        const double f = plan.f1 + (1.0 - plan.f1) * clamped;
        return std::max(1l, round_half_up(f));
    }
    }
    throw std::logic_error("frequency_at: unreachable");
}

// Piecewise-constant step-size plan over iteration (or epoch) intervals.
struct StagePlan {
    struct Stage {
        long length;      // iterations in the stage
        double step_size;
    };
    std::vector<Stage> stages;
    bool repeat_last = false;

    static StagePlan single(long length, double step_size) {
        return StagePlan{{Stage{length, step_size}}, false};
    }

    long total_length() const {
        long t = 0;
        for (const auto& st : stages) t += st.length;
        return t;
    }
};

// Index of the stage containing global_iter.  Boundaries are half-open
// [start, end): an iteration equal to a boundary belongs to the next stage.
inline int stage_index_of(const StagePlan& plan, long global_iter) {
    if (plan.stages.empty()) throw std::invalid_argument("stage_index_of: empty plan");
    if (global_iter < 0) throw std::invalid_argument("stage_index_of: negative iteration");
    long end = 0;
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
        end += plan.stages[i].length;
        if (global_iter < end) return static_cast<int>(i);
    }
    if (plan.repeat_last) return static_cast<int>(plan.stages.size()) - 1;
    throw std::invalid_argument("stage_index_of: iteration " + std::to_string(global_iter)
                                + " beyond planned length " + std::to_string(end));
}

inline double step_size_at(const StagePlan& plan, long global_iter) {
    return plan.stages[static_cast<std::size_t>(stage_index_of(plan, global_iter))].step_size;
}

// Fraction of its stage that global_iter has completed, in [0, 1).
inline double stage_progress_of(const StagePlan& plan, long global_iter) {
    const int idx = stage_index_of(plan, global_iter);
    long start = 0;
    for (int i = 0; i < idx; ++i) start += plan.stages[static_cast<std::size_t>(i)].length;
    const auto& st = plan.stages[static_cast<std::size_t>(idx)];
    long offset = global_iter - start;
    if (offset >= st.length) offset = st.length - 1; // repeat_last overflow
    return static_cast<double>(offset) / static_cast<double>(st.length);
}

} // namespace restartive
