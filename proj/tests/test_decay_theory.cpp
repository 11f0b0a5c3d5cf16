#include <gtest/gtest.h>

#include "hyperdecay/decay.hpp"
#include "hyperdecay/presets.hpp"

using namespace hyperdecay;

namespace {

DecayQuery query(int m, int n, double q, double k, double s, Structure st, unsigned flags = 0) {
    DecayQuery Q;
    Q.m = m;
    Q.n = n;
    Q.q = q;
    Q.k = k;
    Q.s = s;
    Q.structure = st;
    Q.flags = flags;
    return Q;
}

}  // namespace

TEST(PredictDecay, MgtEnergyLevel) {
    auto rep = classify(make_preset("mgt"));
    auto p = predict_decay(rep, 3, 1.0, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(p.exponent, -0.25);
    EXPECT_EQ(p.regime, "strict_q1");
    EXPECT_TRUE(p.constraint_ok);
    ASSERT_EQ(p.per_datum.size(), 3u);
    EXPECT_DOUBLE_EQ(p.per_datum[0], -0.75);
    EXPECT_DOUBLE_EQ(p.per_datum[1], -0.25);
    EXPECT_DOUBLE_EQ(p.per_datum[2], -0.25);
}

TEST(PredictDecay, ElectromagneticElasticRate) {
    auto rep = classify(make_preset("em_elastic"));
    for (double ks : {2.0, 3.0, 4.0}) {
        auto p = predict_decay(rep, 3, 1.0, ks, 0.0);
        EXPECT_DOUBLE_EQ(p.exponent, -0.75 - (ks - 2.0) / 2.0);
        EXPECT_EQ(p.regime, "strict_q2");
    }
}

TEST(PredictDecay, WorstCaseMinimum) {
    auto p = predict_decay(query(4, 3, 1.0, 1.0, 0.0 + 1.0, Structure::Q2, SLOW_LOW | DECAY_LOSS));
    EXPECT_EQ(p.regime, "weak_low_worst");
    // top group: min{3/8 + 1/4, 3/4 + 0}
    const double strict_branch = 3.0 / 8.0 + (2.0 - 1.0) / 4.0;
    const double strong_branch = 3.0 / 4.0 + (2.0 - 2.0) / 2.0;
    EXPECT_DOUBLE_EQ(strict_branch, 0.625);
    EXPECT_DOUBLE_EQ(strong_branch, 0.75);
    EXPECT_DOUBLE_EQ(p.per_datum[1], -0.625);
    EXPECT_DOUBLE_EQ(p.per_datum[3], -0.625);
    // j = 0 uses quarter powers
    EXPECT_DOUBLE_EQ(p.per_datum[0], -(3.0 / 8.0 + 2.0 / 4.0));
}

TEST(PredictDecay, WorstEqualsMinOfBranches) {
    for (int m : {3, 4, 5})
        for (int n : {1, 2, 3})
            for (double q : {1.0, 1.5, 2.0})
                for (double ks : {1.0, 2.0, 3.0, 5.0}) {
                    auto w = predict_decay(query(m, n, q, ks, 0.0, Structure::Q2, SLOW_LOW | DECAY_LOSS));
                    auto a = predict_decay(query(m, n, q, ks, 0.0, Structure::Q2, SLOW_LOW));
                    auto b = predict_decay(query(m, n, q, ks, 0.0, Structure::Q2, DECAY_LOSS));
                    for (int j = m - 3; j < m; ++j)
                        EXPECT_DOUBLE_EQ(w.per_datum[j], std::max(a.per_datum[j], b.per_datum[j]));
                }
}

TEST(PredictDecay, SecondDampingTermGainsHalfPower) {
    for (int m : {3, 4, 5})
        for (int n : {1, 2, 3})
            for (double q : {1.0, 1.25, 2.0})
                for (double ks : {2.0, 3.0, 4.0}) {
                    auto p1 = predict_decay(query(m, n, q, ks, 0.0, Structure::Q1));
                    auto p2 = predict_decay(query(m, n, q, ks, 0.0, Structure::Q2));
                    EXPECT_DOUBLE_EQ(p2.exponent, p1.exponent - 0.5);
                }
}

TEST(PredictDecay, Monotonicity) {
    for (auto st : {Structure::Q1, Structure::Q2})
        for (unsigned flags : {0u, unsigned(SLOW_LOW), unsigned(DECAY_LOSS), unsigned(SLOW_LOW | DECAY_LOSS)}) {
            if (st == Structure::Q1 && flags) continue;
            double prev = 1e300;
            for (double ks = 0.0; ks <= 6.0; ks += 0.5) {
                double e = predict_decay(query(4, 3, 1.0, ks, 0.0, st, flags)).exponent;
                EXPECT_LE(e, prev);
                prev = e;
            }
            prev = 1e300;
            for (double inv_q = 0.5; inv_q <= 1.0; inv_q += 0.05) {
                double e = predict_decay(query(4, 3, 1.0 / inv_q, 3.0, 0.0, st, flags)).exponent;
                EXPECT_LE(e, prev);
                prev = e;
            }
        }
}

TEST(PredictDecay, SlowLowUsesQuarterPowers) {
    auto p = predict_decay(query(4, 1, 1.0, 2.0, 0.0, Structure::Q2, SLOW_LOW));
    EXPECT_EQ(p.regime, "slow_low");
    EXPECT_DOUBLE_EQ(p.exponent, -(1.0 / 8.0 + (2.0 - 1.0) / 4.0));
}

TEST(PredictDecay, DecayLossLowerData) {
    auto p = predict_decay(query(5, 3, 1.0, 2.0, 0.0, Structure::Q2, DECAY_LOSS));
    EXPECT_EQ(p.regime, "decay_loss");
    EXPECT_DOUBLE_EQ(p.per_datum[4], -(0.75 + (2.0 - 3.0) / 2.0));
    EXPECT_DOUBLE_EQ(p.per_datum[0], -(0.75 + (2.0 - 0.0 - 1.0) / 2.0));
}

TEST(PredictDecay, RegularityLossBranch) {
    auto Q = query(4, 3, 1.0, 4.0, 0.0, Structure::Q2, REG_LOSS_DECAY);
    Q.nu = 2.0;
    auto p = predict_decay(Q);
    EXPECT_DOUBLE_EQ(p.regularity_loss, 2.0);
    EXPECT_DOUBLE_EQ(p.exponent, -1.0);  // low-frequency part decays faster than (1+t)^{-nu/2}
    Q.flags |= DERIVATIVE_LOSS;
    Q.nu = 0.5;
    p = predict_decay(Q);
    EXPECT_DOUBLE_EQ(p.regularity_loss, 1.0);
    EXPECT_DOUBLE_EQ(p.exponent, -0.5);
}

TEST(PredictDecay, DerivativeLossAloneKeepsRate) {
    auto rep = classify(make_preset("fourth_order_weak"));
    ASSERT_TRUE(rep.strictly_stable);
    auto p = predict_decay(rep, 1, 1.0, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(p.regularity_loss, 1.0);
    EXPECT_EQ(p.regime, "slow_low+derivative_loss");
    // n/8 + (k+s-1)/4 with n = 1
    EXPECT_DOUBLE_EQ(p.exponent, -(1.0 / 8.0 + 0.0));
}

TEST(PredictDecay, ZeroMomentImprovement) {
    auto Q = query(3, 3, 1.0, 0.0, 0.0, Structure::Q1);
    Q.moment_zero = true;
    auto p = predict_decay(Q);
    EXPECT_EQ(p.regime, "zero_moment");
    EXPECT_DOUBLE_EQ(p.exponent, -0.75);  // 3/4 + (0 - 0)/2 for both groups
    auto Q2 = query(4, 3, 1.0, 1.0, 0.0, Structure::Q2);
    Q2.moment_zero = true;
    EXPECT_DOUBLE_EQ(predict_decay(Q2).exponent, -(0.75 + (1.0 - 0.0) / 2.0));
}

TEST(PredictDecay, ConstraintViolationReported) {
    auto p = predict_decay(query(4, 1, 2.0, 1.0, 0.0, Structure::Q1));
    EXPECT_FALSE(p.constraint_ok);
    EXPECT_EQ(p.violated, "k+s >= 2");
    auto p2 = predict_decay(query(5, 1, 1.0, 1.0, 0.0, Structure::Q2));
    EXPECT_FALSE(p2.constraint_ok);
    EXPECT_EQ(p2.violated, "n(1/q-1/2)+k+s > 2");
}

TEST(PredictDecay, PresentMaskSelectsSlowest) {
    auto Q = query(3, 3, 1.0, 0.0, 0.0, Structure::Q1);
    Q.present = {true, false, false};
    EXPECT_DOUBLE_EQ(predict_decay(Q).exponent, -0.75);
}

TEST(PredictDecay, RejectsUnstableOperator) {
    auto rep = classify(make_preset("mgt", {{"b", 0.0}}));
    EXPECT_THROW(predict_decay(rep, 3, 1.0, 0.0, 0.0), Error);
}

TEST(CriticalExponent, Examples) {
    auto r = critical_exponent(3, 0, 0, 3);
    EXPECT_DOUBLE_EQ(r.p_bar, 2.5);
    EXPECT_EQ(r.n_min, 2);
    EXPECT_EQ(r.n_max, 4);
    EXPECT_TRUE(r.admissible);
    auto r2 = critical_exponent(3, 1, 0, 1);
    EXPECT_DOUBLE_EQ(r2.p_bar, 3.0);
    EXPECT_EQ(r2.n_min, 1);
    EXPECT_EQ(r2.n_max, 2);
    for (int m : {2, 3, 4, 5})
        for (int n : {1, 2, 3})
            EXPECT_DOUBLE_EQ(critical_exponent(m, 0, m - 2, n).p_bar, 1.0 + 2.0 / n);
}

TEST(CriticalExponent, AtLeastTwoOnAdmissibleRange) {
    for (int m = 2; m <= 6; ++m)
        for (int iota : {0, 1})
            for (int nu = 0; nu <= m - 2; ++nu) {
                if (m - 1 - iota - nu < 1) continue;
                auto base = critical_exponent(m, iota, nu, 1);
                for (int n = base.n_min; n <= base.n_max; ++n) {
                    auto r = critical_exponent(m, iota, nu, n);
                    EXPECT_TRUE(r.admissible);
                    EXPECT_GE(r.p_bar, 2.0 - 1e-15);
                }
            }
}

TEST(CriticalExponent, OutsideRangeFlagged) {
    auto r = critical_exponent(4, 0, 0, 1);
    EXPECT_FALSE(r.admissible);
    EXPECT_TRUE(std::isnan(r.p_bar));
    auto r2 = critical_exponent(3, 0, 0, 5);
    EXPECT_FALSE(r2.admissible);
    EXPECT_LT(r2.p_bar, 2.0);
    EXPECT_THROW(critical_exponent(3, 0, 2, 3), Error);
}
