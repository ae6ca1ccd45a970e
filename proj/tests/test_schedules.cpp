#include <gtest/gtest.h>

#include <stdexcept>

#include "restartive/schedules.hpp"

using namespace restartive;

TEST(RoundingTest, HalfAlwaysGoesUp) {
    EXPECT_EQ(round_half_up(62.5), 63);
    EXPECT_EQ(round_half_up(78.125), 78);
    EXPECT_EQ(round_half_up(40.0), 40);
    EXPECT_EQ(round_half_up(49.999999), 50);
    EXPECT_EQ(round_half_up(-0.5), 0);
    EXPECT_EQ(round_half_up(-0.51), -1);
}

// Table 1 caption ramps: F1=30 doubling linearly and F1=40 growing by 1.25x.
TEST(FrequencyPlanTest, LinearRampTable) {
    const FrequencyPlan p = FrequencyPlan::linear(30, 2.0, 4);
    const long expect[4] = {30, 60, 90, 120};
    for (int s = 0; s < 4; ++s) EXPECT_EQ(frequency_at(p, s, 0.0), expect[s]);
}

TEST(FrequencyPlanTest, ExponentialRampTable) {
    const FrequencyPlan p = FrequencyPlan::exponential(40, 1.25, 4);
    const long expect[4] = {40, 50, 63, 78};
    for (int s = 0; s < 4; ++s) EXPECT_EQ(frequency_at(p, s, 0.0), expect[s]);
}

TEST(FrequencyPlanTest, FixedIgnoresPosition) {
    const FrequencyPlan p = FrequencyPlan::fixed(1000);
    EXPECT_EQ(frequency_at(p, 0, 0.0), 1000);
    EXPECT_EQ(frequency_at(p, 17, 0.93), 1000);
}

TEST(FrequencyPlanTest, PiecewiseSegments) {
    const FrequencyPlan p = FrequencyPlan::piecewise({{10000, 200}, {40000, 400}});
    EXPECT_EQ(frequency_at(p, 0, 0.0), 200);
    EXPECT_EQ(frequency_at(p, 1, 0.5), 400);
    EXPECT_THROW(frequency_at(p, 2, 0.0), std::invalid_argument);
}

TEST(FrequencyPlanTest, RampStageOutOfRangeThrows) {
    EXPECT_THROW(frequency_at(FrequencyPlan::linear(30, 2.0, 4), 4, 0.0),
                 std::invalid_argument);
    EXPECT_THROW(frequency_at(FrequencyPlan::exponential(40, 1.25, 4), 5, 0.0),
                 std::invalid_argument);
    EXPECT_THROW(frequency_at(FrequencyPlan::fixed(10), -1, 0.0), std::invalid_argument);
}

TEST(FrequencyPlanTest, DecayToOneEndpoints) {
    const FrequencyPlan p = FrequencyPlan::decay_to_one(40, 3);
    EXPECT_EQ(frequency_at(p, 0, 0.0), 40);
    // exactly 1 once the span is fully consumed
    EXPECT_EQ(frequency_at(p, 2, 1.0), 1);
    EXPECT_EQ(frequency_at(p, 3, 0.0), 1);
    EXPECT_EQ(frequency_at(p, 10, 0.5), 1); // clamps beyond the span
}

TEST(FrequencyPlanTest, DecayToOneIsNonIncreasing) {
    const FrequencyPlan p = FrequencyPlan::decay_to_one(40, 3);
    long prev = frequency_at(p, 0, 0.0);
    for (int s = 0; s < 3; ++s)
        for (int q = 0; q <= 10; ++q) {
            const long f = frequency_at(p, s, q / 10.0);
            EXPECT_LE(f, prev);
            EXPECT_GE(f, 1);
            prev = f;
        }
}

TEST(StagePlanTest, TotalLength) {
    StagePlan p;
    p.stages = {{3, 0.1}, {2, 0.01}};
    EXPECT_EQ(p.total_length(), 5);
    EXPECT_EQ(StagePlan::single(50000, 0.25).total_length(), 50000);
}

// Stage boundaries are half-open: the iteration equal to a boundary already
// belongs to the next stage.
TEST(StagePlanTest, HalfOpenBoundaries) {
    StagePlan p;
    p.stages = {{3, 0.1}, {2, 0.01}};
    EXPECT_EQ(stage_index_of(p, 0), 0);
    EXPECT_EQ(stage_index_of(p, 2), 0);
    EXPECT_EQ(stage_index_of(p, 3), 1);
    EXPECT_EQ(stage_index_of(p, 4), 1);
    EXPECT_THROW(stage_index_of(p, 5), std::invalid_argument);
    EXPECT_THROW(stage_index_of(p, -1), std::invalid_argument);
}

TEST(StagePlanTest, RepeatLastExtendsFinalStage) {
    StagePlan p;
    p.stages = {{3, 0.1}, {2, 0.01}};
    p.repeat_last = true;
    EXPECT_EQ(stage_index_of(p, 5), 1);
    EXPECT_EQ(stage_index_of(p, 500), 1);
    EXPECT_DOUBLE_EQ(step_size_at(p, 500), 0.01);
}

TEST(StagePlanTest, StepSizeAt) {
    StagePlan p;
    p.stages = {{10, 0.5}, {10, 0.05}};
    EXPECT_DOUBLE_EQ(step_size_at(p, 9), 0.5);
    EXPECT_DOUBLE_EQ(step_size_at(p, 10), 0.05);
}

TEST(StagePlanTest, StageProgressWithinUnitInterval) {
    StagePlan p;
    p.stages = {{4, 0.5}, {8, 0.05}};
    EXPECT_DOUBLE_EQ(stage_progress_of(p, 0), 0.0);
    EXPECT_DOUBLE_EQ(stage_progress_of(p, 3), 0.75);
    EXPECT_DOUBLE_EQ(stage_progress_of(p, 4), 0.0);
    EXPECT_DOUBLE_EQ(stage_progress_of(p, 10), 0.75);
    for (long k = 0; k < 12; ++k) {
        const double q = stage_progress_of(p, k);
        EXPECT_GE(q, 0.0);
        EXPECT_LT(q, 1.0);
    }
}

TEST(StagePlanTest, EmptyPlanThrows) {
    StagePlan p;
    EXPECT_THROW(stage_index_of(p, 0), std::invalid_argument);
}
