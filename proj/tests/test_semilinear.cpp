#include <gtest/gtest.h>

#include "hyperdecay/presets.hpp"
#include "hyperdecay/semilinear.hpp"

using namespace hyperdecay;

namespace {

DataSpec bump(int n, double amp, double width = 2.0) {
    DataSpec d;
    d.n = n;
    d.u = {DataProfile::gaussian(amp, width), DataProfile::zero(), DataProfile::zero()};
    return d;
}

SemilinearConfig small_box(double p, double T) {
    SemilinearConfig c;
    c.p = p;
    c.N = 256;
    c.L = 64.0;
    c.T = T;
    c.dt0 = 0.05;
    return c;
}

double max_state_diff(const SemilinearRun& a, const SemilinearRun& b, double sgn = 1.0) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.state.size(); ++j)
        for (std::size_t i = 0; i < a.state[j].size(); ++i) d = std::max(d, std::abs(a.state[j][i] - sgn * b.state[j][i]));
    return d;
}

}  // namespace

TEST(Semilinear, LinearTwinMatchesExactPropagation) {
    auto st = make_preset("mgt", {}, 1);
    auto cfg = small_box(3.0, 10.0);
    cfg.linear = true;
    SemilinearSolver solver(st, cfg);
    DataSpec d;
    d.n = 1;
    d.u = {DataProfile::gaussian(1.0, 2.0), DataProfile::gaussian(0.5, 1.5), DataProfile::gaussian(-0.3, 2.5)};
    auto run = solver.run(d);
    ASSERT_NEAR(run.t, 10.0, 1e-12);
    double worst = 0.0, scale = 0.0;
    for (int idx = 0; idx < solver.modes(); ++idx) {
        const auto& xi = solver.wavevector(idx);
        auto data = d.at(xi);
        for (int j = 0; j < st.m(); ++j) {
            cplx exact = propagate_mode(st, xi, data, 10.0, j) / solver.cell_volume();
            worst = std::max(worst, std::abs(run.state[j][idx] - exact));
            scale = std::max(scale, std::abs(exact));
        }
    }
    EXPECT_LT(worst, 1e-8 * scale);
}

TEST(Semilinear, SingleLinearStepIsExact) {
    auto st = make_preset("mgt", {}, 1);
    auto cfg = small_box(3.0, 1.0);
    cfg.linear = true;
    SemilinearSolver solver(st, cfg);
    auto d = bump(1, 1.0);
    auto run = solver.initialize(d);
    solver.step(run, 0.37);
    double worst = 0.0, scale = 0.0;
    for (int idx = 0; idx < solver.modes(); ++idx) {
        auto data = d.at(solver.wavevector(idx));
        for (int j = 0; j < st.m(); ++j) {
            cplx exact = propagate_mode(st, solver.wavevector(idx), data, 0.37, j) / solver.cell_volume();
            worst = std::max(worst, std::abs(run.state[j][idx] - exact));
            scale = std::max(scale, std::abs(exact));
        }
    }
    EXPECT_LT(worst, 1e-10 * scale);
}

TEST(Semilinear, ZeroDataStaysZero) {
    auto st = make_preset("mgt", {}, 1);
    auto run = run_semilinear(st, small_box(2.0, 5.0), bump(1, 0.0));
    for (double v : run.l2) EXPECT_EQ(v, 0.0);
    for (double v : run.linf) EXPECT_EQ(v, 0.0);
    EXPECT_FALSE(run.blowup_flag);
    EXPECT_EQ(run.verdict(), "decaying");
}

TEST(Semilinear, SignMirrorSymmetry) {
    auto st = make_preset("mgt", {}, 1);
    auto cfg = small_box(2.0, 5.0);
    auto plus = run_semilinear(st, cfg, bump(1, 0.4));
    cfg.sign = -1;
    auto minus = run_semilinear(st, cfg, bump(1, -0.4));
    ASSERT_EQ(plus.times.size(), minus.times.size());
    EXPECT_LT(max_state_diff(plus, minus, -1.0), 1e-14);
    for (std::size_t i = 0; i < plus.l2.size(); ++i) EXPECT_NEAR(plus.l2[i], minus.l2[i], 1e-14 * plus.l2[i]);
}

TEST(Semilinear, FirstOrderInTime) {
    auto st = make_preset("mgt", {}, 1);
    std::vector<SemilinearRun> runs;
    for (double dt : {0.1, 0.05, 0.025}) {
        auto cfg = small_box(2.0, 10.0);
        cfg.dt0 = dt;
        cfg.adaptive = false;
        runs.push_back(run_semilinear(st, cfg, bump(1, 0.1)));
        ASSERT_FALSE(runs.back().blowup_flag);
    }
    SemilinearSolver probe(st, small_box(2.0, 10.0));
    auto diff = [&](const SemilinearRun& a, const SemilinearRun& b) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.state.size(); ++j) {
            std::vector<cplx> d(a.state[j].size());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.state[j][i] - b.state[j][i];
            acc += std::pow(probe.l2_norm(d), 2);
        }
        return std::sqrt(acc);
    };
    const double ratio = diff(runs[0], runs[1]) / diff(runs[1], runs[2]);
    EXPECT_NEAR(ratio, 2.0, 0.3);
}

TEST(Semilinear, SmallDataResidualScalesLikePower) {
    auto st = make_preset("mgt", {}, 1);
    const double p = 3.0;
    std::vector<double> amps{0.05, 0.1, 0.2}, res;
    for (double A : amps) {
        auto cfg = small_box(p, 10.0);
        auto nl = run_semilinear(st, cfg, bump(1, A));
        cfg.linear = true;
        auto lin = run_semilinear(st, cfg, bump(1, A));
        SemilinearSolver probe(st, cfg);
        std::vector<cplx> d(nl.state[0].size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = nl.state[0][i] - lin.state[0][i];
        res.push_back(probe.l2_norm(d));
    }
    auto f = fit_loglog(amps, res);
    EXPECT_GE(f.slope, p - 0.3);
}

TEST(Semilinear, SupercriticalSmallDataTracksLinearTwin) {
    auto st = make_preset("mgt", {}, 1);
    auto cfg = small_box(3.0, 50.0);
    auto nl = run_semilinear(st, cfg, bump(1, 1e-3));
    cfg.linear = true;
    auto lin = run_semilinear(st, cfg, bump(1, 1e-3));
    ASSERT_FALSE(nl.blowup_flag);
    const double ratio = nl.linf.back() / lin.linf.back();
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 2.0);
}

TEST(Semilinear, LargePositiveDataGrows) {
    auto st = make_preset("mgt", {}, 1);
    auto run = run_semilinear(st, small_box(2.0, 100.0), bump(1, 1.0));
    double peak = 0.0;
    for (double v : run.l2) peak = std::max(peak, v);
    EXPECT_GT(peak, 10.0 * run.l2.front());
    EXPECT_NE(run.verdict(), "decaying");
}

TEST(Semilinear, CriticalExponentAttached) {
    auto st = make_preset("mgt", {}, 2);
    auto cfg = small_box(5.0, 1.0);
    cfg.N = 16;
    cfg.L = 8.0;
    auto run = SemilinearSolver(st, cfg).initialize(bump(2, 1e-3));
    EXPECT_DOUBLE_EQ(run.critical.p_bar, 4.0);
    EXPECT_TRUE(run.critical.admissible);
    EXPECT_TRUE(run.supercritical);
}

TEST(Semilinear, RejectsBadConfigs) {
    auto cfg = small_box(2.0, 1.0);
    EXPECT_THROW(SemilinearSolver(make_preset("mgt", {}, 3), cfg), Error);
    auto bad = cfg;
    bad.p = 1.0;
    EXPECT_THROW(SemilinearSolver(make_preset("mgt", {}, 1), bad), Error);
    bad = cfg;
    bad.sign = 0;
    EXPECT_THROW(SemilinearSolver(make_preset("mgt", {}, 1), bad), Error);
    bad = cfg;
    bad.nu = 3;
    EXPECT_THROW(SemilinearSolver(make_preset("mgt", {}, 1), bad), Error);
    bad = cfg;
    bad.N = 7;
    EXPECT_THROW(SemilinearSolver(make_preset("mgt", {}, 1), bad), Error);
}

TEST(Semilinear, DerivativeNonlinearityReadsStateCoordinate) {
    // u_1 = 0 initially, so with nu = 1 the first step adds no forcing
    auto st = make_preset("mgt", {}, 1);
    auto cfg = small_box(2.0, 1.0);
    cfg.nu = 1;
    SemilinearSolver nl(st, cfg);
    cfg.linear = true;
    SemilinearSolver lin(st, cfg);
    auto a = nl.initialize(bump(1, 1.0));
    auto b = lin.initialize(bump(1, 1.0));
    nl.step(a, 0.05);
    lin.step(b, 0.05);
    EXPECT_LT(max_state_diff(a, b), 1e-15);
    nl.step(a, 0.05);
    lin.step(b, 0.05);
    EXPECT_GT(max_state_diff(a, b), 1e-12);
}
