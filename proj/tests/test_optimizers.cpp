#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "restartive/optimizers.hpp"
#include "restartive/problems.hpp"
#include "restartive/rng.hpp"

using namespace restartive;

TEST(StateTest, MakeStateInitializesAuxiliarySequence) {
    const OptimizerState st = make_state({1.0, -2.0});
    EXPECT_EQ(st.w, st.v);
    EXPECT_EQ(st.t, 1.0);
    EXPECT_EQ(st.m, 1);
    EXPECT_EQ(st.iter_count, 1);
    EXPECT_EQ(st.last_f, std::numeric_limits<double>::infinity());
    EXPECT_EQ(st.global_iter, 0);
}

TEST(GdStepTest, HandExamples) {
    OptimizerState st = make_state({0.0, 0.0});
    gd_step(st, {-1.0, 0.0}, 0.25);
    EXPECT_EQ(st.w, (Vec{0.25, 0.0}));
    EXPECT_EQ(st.v, st.w);

    st = make_state({2.0});
    gd_step(st, {4.0}, 0.5);
    EXPECT_EQ(st.w, (Vec{0.0}));

    st = make_state({3.0});
    const auto oc = gd_step(st, {0.0}, 1.0);
    EXPECT_EQ(st.w, (Vec{3.0}));
    EXPECT_EQ(oc.momentum_used, 0.0);
    EXPECT_FALSE(oc.restarted);
}

TEST(HbStepTest, HandExample) {
    OptimizerState st = make_state({1.0});
    st.v = {0.0}; // previous iterate
    const auto oc = hb_step(st, {0.0}, 1.0, 0.9);
    EXPECT_DOUBLE_EQ(st.w[0], 1.9);
    EXPECT_DOUBLE_EQ(st.v[0], 1.0);
    EXPECT_DOUBLE_EQ(oc.momentum_used, 0.9);
}

TEST(HbStepTest, FirstStepIsMomentumFree) {
    OptimizerState st = make_state({2.0});
    hb_step(st, {1.0}, 0.5, 0.9);
    EXPECT_DOUBLE_EQ(st.w[0], 1.5);
}

TEST(HbStepTest, MuZeroMatchesGd) {
    OptimizerState a = make_state({1.0, -1.0});
    OptimizerState b = make_state({1.0, -1.0});
    a.v = {5.0, 5.0}; // stale history must be ignored at mu=0
    hb_step(a, {0.5, 0.25}, 0.1, 0.0);
    gd_step(b, {0.5, 0.25}, 0.1);
    EXPECT_EQ(a.w, b.w);
}

TEST(CmStepTest, HandExample) {
    OptimizerState st = make_state({0.0});
    const auto oc = cm_step(st, {-1.0}, 1.0, 0.9);
    EXPECT_DOUBLE_EQ(st.v[0], 1.0);
    EXPECT_DOUBLE_EQ(st.w[0], 1.9);
    EXPECT_DOUBLE_EQ(oc.momentum_used, 0.9);
}

TEST(CmStepTest, MuZeroMatchesGd) {
    OptimizerState a = make_state({3.0});
    OptimizerState b = make_state({3.0});
    for (int i = 0; i < 5; ++i) {
        cm_step(a, {1.0}, 0.2, 0.0);
        gd_step(b, {1.0}, 0.2);
        ASSERT_EQ(a.w, b.w);
        ASSERT_EQ(a.v, b.v);
    }
}

TEST(CmStepTest, StationaryFixedPoint) {
    OptimizerState st = make_state({2.0});
    cm_step(st, {0.0}, 1.0, 0.9);
    EXPECT_DOUBLE_EQ(st.w[0], 2.0);
    EXPECT_DOUBLE_EQ(st.v[0], 2.0);
}

TEST(NagStepTest, MomentumRecursionValues) {
    OptimizerState st = make_state({0.0});
    const auto oc0 = nag_step(st, {0.0}, 1.0);
    EXPECT_EQ(oc0.momentum_used, 0.0);

    // independent recursion: t1 = (1+sqrt(5))/2, t2 = (1+sqrt(1+4 t1^2))/2
    const double t1 = 0.5 * (1.0 + std::sqrt(5.0));
    const double t2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t1 * t1));
    const auto oc1 = nag_step(st, {0.0}, 1.0);
    EXPECT_NEAR(oc1.momentum_used, (t1 - 1.0) / t2, 1e-12);
    EXPECT_NEAR(oc1.momentum_used, 0.2817538, 1e-6);
    EXPECT_NEAR(st.t, 2.193527, 1e-6);
}

TEST(NagStepTest, CounterLowerBound) {
    // t_k >= (k+1)/2 for the exact recursion
    double t = 1.0;
    for (long k = 0; k <= 100000; ++k) {
        ASSERT_GE(t, (k + 1) / 2.0);
        t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    }
}

TEST(NagStepTest, InnerGradientStepDescends) {
    // With s = 1/L on the smooth quadratic, f(v') <= f(w) at every step.
    CycleQuadratic q(16, true);
    OptimizerState st = make_state(Vec(16, 0.0));
    for (int k = 0; k < 200; ++k) {
        const auto [fw, g] = q.value_grad(st.w);
        nag_step(st, g, 0.25);
        const double fv = q.value_grad(st.v).first;
        ASSERT_LE(fv, fw + 1e-12);
    }
}

TEST(ArnagStepTest, CounterGrowsOnMonotoneDecrease) {
    OptimizerState st = make_state({0.0});
    const double expected_mu[5] = {0.0, 1.0 / 4.0, 2.0 / 5.0, 3.0 / 6.0, 4.0 / 7.0};
    double f = 10.0;
    for (int k = 0; k < 5; ++k) {
        const auto oc = arnag_step(st, {0.0}, f, 1.0);
        ASSERT_DOUBLE_EQ(oc.momentum_used, expected_mu[k]);
        ASSERT_FALSE(oc.restarted);
        f -= 1.0;
    }
    EXPECT_EQ(st.m, 6);
}

TEST(ArnagStepTest, IncreaseResetsCounter) {
    OptimizerState st = make_state({0.0});
    arnag_step(st, {0.0}, 5.0, 1.0);
    arnag_step(st, {0.0}, 4.0, 1.0);
    const auto oc3 = arnag_step(st, {0.0}, 6.0, 1.0); // increase seen here
    EXPECT_TRUE(oc3.restarted);
    EXPECT_EQ(st.m, 1);
    const auto oc4 = arnag_step(st, {0.0}, 5.5, 1.0);
    EXPECT_EQ(oc4.momentum_used, 0.0); // momentum after a reset is exactly 0
}

TEST(ArnagStepTest, TieCountsAsNoRestart) {
    OptimizerState st = make_state({0.0});
    arnag_step(st, {0.0}, 5.0, 1.0);
    const auto oc = arnag_step(st, {0.0}, 5.0, 1.0); // equal value, <= branch
    EXPECT_FALSE(oc.restarted);
    EXPECT_EQ(st.m, 3);
}

TEST(SrStepTest, MuFromIterCount) {
    OptimizerState st = make_state({0.0});
    st.iter_count = 8;
    const auto oc = sr_step(st, {0.0}, 1.0, 100);
    EXPECT_DOUBLE_EQ(oc.momentum_used, 0.7);
}

TEST(SrStepTest, FThreeCycleIsExact) {
    OptimizerState st = make_state({0.0});
    const double expected[7] = {0.0, 0.25, 0.4, 0.0, 0.25, 0.4, 0.0};
    for (int k = 0; k < 7; ++k) {
        const auto oc = sr_step(st, {0.0}, 1.0, 3);
        ASSERT_EQ(oc.momentum_used, expected[k]);
        ASSERT_EQ(oc.restarted, k % 3 == 2);
    }
}

TEST(SrStepTest, RestartImpliesZeroMomentumNextStep) {
    Rng rng(21);
    OptimizerState st = make_state({0.0, 0.0});
    bool prev_restarted = false;
    for (int k = 0; k < 300; ++k) {
        const long F = 1 + static_cast<long>(rng.next_u64() % 9);
        if (st.iter_count > F) st.iter_count = 1;
        const auto oc = sr_step(st, {rng.next_gaussian(), rng.next_gaussian()}, 0.01, F);
        if (prev_restarted) ASSERT_EQ(oc.momentum_used, 0.0);
        prev_restarted = oc.restarted;
    }
}

TEST(SrStepTest, FOneMatchesGdTrajectory) {
    OptimizerState a = make_state({1.0, 2.0});
    OptimizerState b = make_state({1.0, 2.0});
    Rng rng(4);
    for (int k = 0; k < 50; ++k) {
        const Vec g = {rng.next_gaussian(), rng.next_gaussian()};
        const auto oc = sr_step(a, g, 0.1, 1);
        gd_step(b, g, 0.1);
        ASSERT_EQ(a.w, b.w);
        ASSERT_EQ(oc.momentum_used, 0.0);
        ASSERT_TRUE(oc.restarted);
    }
}

TEST(SrStepTest, LargeFMatchesNeverResettingCounter) {
    // with F beyond the horizon, momentum follows (c-1)/(c+2) with c = k+1
    OptimizerState st = make_state({0.0});
    for (long k = 0; k < 60; ++k) {
        const auto oc = sr_step(st, {0.0}, 1.0, 1000000);
        ASSERT_DOUBLE_EQ(oc.momentum_used,
                         static_cast<double>(k) / static_cast<double>(k + 3));
    }
}

TEST(SrStepTest, IterCountOutOfRangeThrows) {
    OptimizerState st = make_state({0.0});
    st.iter_count = 5;
    Vec g = {0.0};
    EXPECT_THROW(sr_step(st, g, 1.0, 3), std::invalid_argument);
    st.iter_count = 0;
    EXPECT_THROW(sr_step(st, g, 1.0, 3), std::invalid_argument);
    st.iter_count = 1;
    EXPECT_THROW(sr_step(st, g, 1.0, 0), std::invalid_argument);
}

TEST(BufferSrTest, MuSequenceFThree) {
    Vec params = {0.0};
    Vec buffer = {0.0};
    long ic = 1;
    const double expected[7] = {0.0, 0.25, 0.4, 0.0, 0.25, 0.4, 0.0};
    for (int k = 0; k < 7; ++k) {
        const double mu = static_cast<double>(ic - 1) / static_cast<double>(ic + 2);
        ASSERT_EQ(mu, expected[k]);
        const auto r = buffer_sr_step(params, buffer, {0.5}, 0.1, ic, 3);
        params = r.params;
        buffer = r.buffer;
        ic = r.iter_count;
    }
}

TEST(BufferSrTest, MatchesStatefulSrOnRandomProblem) {
    // 200 steps on a random 16-dim gradient stream, F=7
    Rng rng(77);
    Vec w0(16);
    for (auto& x : w0) x = rng.next_gaussian();
    OptimizerState st = make_state(w0);
    Vec params = w0, buffer = w0;
    long ic = 1;
    for (int k = 0; k < 200; ++k) {
        Vec g(16);
        for (auto& x : g) x = rng.next_gaussian();
        sr_step(st, g, 0.05, 7);
        const auto r = buffer_sr_step(params, buffer, g, 0.05, ic, 7);
        params = r.params;
        buffer = r.buffer;
        ic = r.iter_count;
        for (int i = 0; i < 16; ++i) {
            ASSERT_NEAR(params[static_cast<std::size_t>(i)], st.w[static_cast<std::size_t>(i)], 1e-12);
            ASSERT_NEAR(buffer[static_cast<std::size_t>(i)], st.v[static_cast<std::size_t>(i)], 1e-12);
        }
        ASSERT_EQ(ic, st.iter_count);
    }
}

TEST(BufferSrTest, LeavesInputsUntouched) {
    const Vec params = {1.0, 2.0};
    const Vec buffer = {0.5, 0.5};
    buffer_sr_step(params, buffer, {1.0, 1.0}, 0.1, 2, 5);
    EXPECT_EQ(params, (Vec{1.0, 2.0}));
    EXPECT_EQ(buffer, (Vec{0.5, 0.5}));
}

TEST(WeightDecayTest, HandExamples) {
    EXPECT_EQ(weight_decay_apply({1.0, -2.0}, {5.0, 5.0}, 0.0), (Vec{1.0, -2.0}));
    const Vec g = weight_decay_apply({0.0, 0.0}, {10000.0, 0.0}, 1e-4);
    EXPECT_DOUBLE_EQ(g[0], 1.0);
    EXPECT_DOUBLE_EQ(g[1], 0.0);
    EXPECT_THROW(weight_decay_apply({1.0}, {1.0, 2.0}, 0.1), std::invalid_argument);
    EXPECT_THROW(weight_decay_apply({1.0}, {1.0}, -0.1), std::invalid_argument);
}

TEST(StepGuardTest, NonFiniteGradientThrows) {
    OptimizerState st = make_state({0.0});
    const Vec bad = {std::numeric_limits<double>::quiet_NaN()};
    EXPECT_THROW(gd_step(st, bad, 1.0), std::runtime_error);
    EXPECT_THROW(nag_step(st, bad, 1.0), std::runtime_error);
    EXPECT_THROW(sr_step(st, bad, 1.0, 3), std::runtime_error);
}

TEST(StepGuardTest, BadStepSizeOrMuThrows) {
    OptimizerState st = make_state({0.0});
    Vec g = {1.0};
    EXPECT_THROW(gd_step(st, g, 0.0), std::invalid_argument);
    EXPECT_THROW(gd_step(st, g, -1.0), std::invalid_argument);
    EXPECT_THROW(cm_step(st, g, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(hb_step(st, g, 1.0, -0.1), std::invalid_argument);
}

TEST(StepGuardTest, DimensionMismatchThrows) {
    OptimizerState st = make_state({0.0, 0.0});
    Vec g = {1.0};
    EXPECT_THROW(gd_step(st, g, 1.0), std::invalid_argument);
}

TEST(StepGuardTest, GlobalIterAdvances) {
    OptimizerState st = make_state({0.0});
    gd_step(st, {0.1}, 1.0);
    cm_step(st, {0.1}, 1.0, 0.5);
    nag_step(st, {0.1}, 1.0);
    EXPECT_EQ(st.global_iter, 3);
}

// every rule's inner gradient step descends on the smooth quadratic at s = 1/L
TEST(DescentTest, AllRulesDescendInnerStep) {
    CycleQuadratic q(8, true);
    auto run_check = [&](auto stepper) {
        OptimizerState st = make_state(Vec(8, 1.0));
        for (int k = 0; k < 100; ++k) {
            const auto [fw, g] = q.value_grad(st.w);
            stepper(st, g, fw);
            const double fv = q.value_grad(st.v).first;
            ASSERT_LE(fv, fw + 1e-12);
        }
    };
    run_check([](OptimizerState& st, const Vec& g, double) { cm_step(st, g, 0.25, 0.9); });
    run_check([](OptimizerState& st, const Vec& g, double) { nag_step(st, g, 0.25); });
    run_check([](OptimizerState& st, const Vec& g, double f) { arnag_step(st, g, f, 0.25); });
    run_check([](OptimizerState& st, const Vec& g, double) {
        if (st.iter_count > 5) st.iter_count = 1;
        sr_step(st, g, 0.25, 5);
    });
}
