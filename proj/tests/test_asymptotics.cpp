#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hyperdecay/asymptotics.hpp"
#include "hyperdecay/presets.hpp"

using namespace hyperdecay;

namespace {

const cplx I(0.0, 1.0);

const ExpansionRecord& find(const std::vector<ExpansionRecord>& recs, ExpansionCase kind, double root,
                            int nth = 0) {
    for (const auto& r : recs)
        if (r.kind == kind && std::abs(r.root - root) < 1e-9 && nth-- == 0) return r;
    throw std::runtime_error("record not found");
}

std::vector<cplx> constants(const std::vector<ExpansionRecord>& recs) {
    std::vector<cplx> out;
    for (const auto& r : recs)
        if (r.kind == ExpansionCase::CONSTANT) out.push_back(r.terms[0].coeff);
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return out;
}

void expect_terms(const ExpansionRecord& r, const std::vector<Term>& want, double tol = 1e-12) {
    ASSERT_EQ(r.terms.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(r.terms[i].power, want[i].power);
        EXPECT_LT(std::abs(r.terms[i].coeff - want[i].coeff), tol) << "term " << i << " got " << r.terms[i].coeff;
    }
}

}  // namespace

TEST(LowFrequency, Mgt) {
    auto st = make_preset("mgt");
    auto recs = low_freq_expansions(st, Direction::axis(3));
    ASSERT_EQ(recs.size(), 3u);
    auto c = constants(recs);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_LT(std::abs(c[0] + 1.0), 1e-14);
    expect_terms(find(recs, ExpansionCase::SIMPLE, 1.0), {{1, I}, {2, -0.5}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, -1.0), {{1, -I}, {2, -0.5}});
}

TEST(LowFrequency, ElectromagneticElastic) {
    auto recs = low_freq_expansions(make_preset("em_elastic"), Direction::axis(3));
    ASSERT_EQ(recs.size(), 5u);
    auto c = constants(recs);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_LT(std::abs(c[0] + 1.0), 1e-7);
    EXPECT_LT(std::abs(c[1] + 1.0), 1e-7);
    expect_terms(find(recs, ExpansionCase::SIMPLE, 0.0), {{1, 0.0}, {2, -1.0}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, 1.0), {{1, I}, {2, -0.5}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, -1.0), {{1, -I}, {2, -0.5}});
}

TEST(LowFrequency, ConstantRootsFollowDiscriminant) {
    // lambda^2 + c_{m-1,0} lambda + c_{m-2,0}: real when c_{m-1,0}^2 >= 4 c_{m-2,0}
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        auto st = make_preset("em_elastic_dissipative", {{"a", a}});
        auto c = constants(low_freq_expansions(st, Direction::axis(3)));
        ASSERT_EQ(c.size(), 2u);
        const double s = 1.0 + a, p = a;
        // roots -a and -sigma (sigma = 1)
        EXPECT_LT(std::abs(c[0] + std::max(a, 1.0)), 1e-7);
        EXPECT_LT(std::abs(c[1] + std::min(a, 1.0)), 1e-7);
        EXPECT_GE(s * s, 4.0 * p);
    }
    auto c = constants(low_freq_expansions(make_preset("fourth_order_weak"), Direction::axis(1)));
    EXPECT_LT(std::abs(c[0] - cplx(-0.5, -std::sqrt(3.0) / 2)), 1e-12);
    EXPECT_LT(std::abs(c[1] - cplx(-0.5, std::sqrt(3.0) / 2)), 1e-12);
}

TEST(LowFrequency, FourthOrderSharedRoot) {
    auto recs = low_freq_expansions(make_preset("fourth_order_weak"), Direction::axis(1));
    expect_terms(find(recs, ExpansionCase::SHARED_SIMPLE, 1.0), {{1, I}, {3, -1.5 * I}, {4, -1.5}});
    expect_terms(find(recs, ExpansionCase::SHARED_SIMPLE, -1.0), {{1, -I}, {3, 1.5 * I}, {4, -1.5}});
}

TEST(LowFrequency, DissipativeDoubleRoot) {
    auto recs = low_freq_expansions(make_preset("em_elastic_dissipative"), Direction::axis(3));
    auto c = constants(recs);
    EXPECT_LT(std::abs(c[0] + 2.0), 1e-12);
    EXPECT_LT(std::abs(c[1] + 1.0), 1e-12);
    expect_terms(find(recs, ExpansionCase::DOUBLE, 0.0, 0), {{1, 0.0}, {2, -0.5}});
    expect_terms(find(recs, ExpansionCase::DOUBLE, 0.0, 1), {{1, 0.0}, {2, -1.0}});
}

TEST(LowFrequency, ThreeLowerTermsHeatBranch) {
    auto recs = low_freq_expansions(make_preset("example_ell3"), Direction::axis(3));
    // -c2 b^2 / c1 with c1 = c2 = 1, b = 1/2
    expect_terms(find(recs, ExpansionCase::SIMPLE, 0.0), {{1, 0.0}, {2, -0.25}});
    // remaining constants solve lambda^3 + c3 lambda^2 + c2 lambda + c1 = 0
    for (cplx z : constants(recs)) EXPECT_LT(std::abs(z * z * z + 2.0 * z * z + z + 1.0), 1e-12);
}

TEST(HighFrequency, Mgt) {
    auto recs = high_freq_expansions(make_preset("mgt"), Direction::axis(3));
    const double r2 = std::sqrt(2.0);
    expect_terms(find(recs, ExpansionCase::SIMPLE, r2), {{1, I * r2}, {0, -0.25}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, -r2), {{1, -I * r2}, {0, -0.25}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, 0.0), {{1, 0.0}, {0, -0.5}});
    double trace = 0.0;
    for (const auto& r : recs) trace += r.terms[1].coeff.real();
    EXPECT_NEAR(trace, -1.0, 1e-12);
}

TEST(HighFrequency, ClassicalDampingSharedRoots) {
    auto recs = high_freq_expansions(make_preset("mgt_classical_damping"), Direction::axis(3));
    expect_terms(find(recs, ExpansionCase::SHARED_SIMPLE, 1.0), {{1, I}, {-1, 0.5 * I}, {-2, -0.5}});
    expect_terms(find(recs, ExpansionCase::SHARED_SIMPLE, -1.0), {{1, -I}, {-1, -0.5 * I}, {-2, -0.5}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, 0.0), {{1, 0.0}, {0, -1.0}});
}

TEST(HighFrequency, ClassicalDampingLowConstants) {
    auto c = constants(low_freq_expansions(make_preset("mgt_classical_damping"), Direction::axis(3)));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_LT(std::abs(c[0] - cplx(-0.5, -std::sqrt(3.0) / 2)), 1e-12);
    EXPECT_LT(std::abs(c[1] - cplx(-0.5, std::sqrt(3.0) / 2)), 1e-12);
}

TEST(HighFrequency, FourthOrderDoubleRoot) {
    auto recs = high_freq_expansions(make_preset("fourth_order_weak"), Direction::axis(1));
    expect_terms(find(recs, ExpansionCase::SIMPLE, 2.0), {{1, 2.0 * I}, {0, -0.375}});
    expect_terms(find(recs, ExpansionCase::SIMPLE, -2.0), {{1, -2.0 * I}, {0, -0.375}});
    const double s15 = std::sqrt(15.0);
    const auto& k0 = find(recs, ExpansionCase::DOUBLE, 0.0, 0);
    const auto& k1 = find(recs, ExpansionCase::DOUBLE, 0.0, 1);
    const cplx kp = k0.terms[1].coeff.imag() > 0 ? k0.terms[1].coeff : k1.terms[1].coeff;
    const cplx km = k0.terms[1].coeff.imag() > 0 ? k1.terms[1].coeff : k0.terms[1].coeff;
    EXPECT_LT(std::abs(kp - cplx(-1.0, s15) / 8.0), 1e-12);
    EXPECT_LT(std::abs(km - cplx(-1.0, -s15) / 8.0), 1e-12);
    // c^2 k^2 + k + 1 = 0 with c = 2
    EXPECT_LT(std::abs(4.0 * kp * kp + kp + 1.0), 1e-12);
}

TEST(Kappa, AnisotropicElastic) {
    auto st = make_preset("anisotropic_elastic_2d");
    // P_2 = 2 lambda^2 has its double root at index 0
    auto [kp, km] = kappa_solutions(st, Direction::axis(2, 0), 0, Regime::LOW);
    EXPECT_LT(std::abs(kp + 1.0), 1e-7);
    EXPECT_LT(std::abs(km + 1.0), 1e-7);
    Direction diag = Direction::normalized({1.0, 1.0});
    auto [dp, dm] = kappa_solutions(st, diag, 0, Regime::LOW);
    // 2 k^2 + 4.5 k + 2 = 0
    const double s = std::sqrt(4.5 * 4.5 - 16.0);
    EXPECT_NEAR(dp.real(), (-4.5 + s) / 4.0, 1e-12);
    EXPECT_NEAR(dm.real(), (-4.5 - s) / 4.0, 1e-12);
    EXPECT_NEAR(dp.real(), -0.6096, 1e-4);
    EXPECT_NEAR(dm.real(), -1.6404, 1e-4);
    // against the tracked slow branches: Re lambda / rho^2
    auto set = track_branches(st, diag, {1e-4});
    std::vector<double> slow;
    for (auto z : set.at(0))
        if (std::abs(z) < 1e-3) slow.push_back(z.real() / 1e-8);
    std::sort(slow.begin(), slow.end());
    ASSERT_EQ(slow.size(), 2u);
    EXPECT_NEAR(slow[0], dm.real(), 1e-3);
    EXPECT_NEAR(slow[1], dp.real(), 1e-3);
}

TEST(Kappa, ConfigurationMismatchThrows) {
    auto st = make_preset("em_elastic");
    EXPECT_THROW(kappa_solutions(st, Direction::axis(3), 0, Regime::LOW), Error);
    EXPECT_THROW(kappa_solutions(make_preset("mgt"), Direction::axis(3), 0, Regime::LOW), Error);
}

TEST(Classification, UnsupportedConfigurationThrows) {
    // weak interlacing with depth 1 has no displayed expansion
    EXPECT_THROW(high_freq_expansions(make_preset("mgt", {{"b", 0.0}}), Direction::axis(3)), Error);
}

TEST(VerifyExpansion, MgtLowSimpleBranch) {
    auto st = make_preset("mgt");
    auto recs = low_freq_expansions(st, Direction::axis(3));
    auto set = track_branches(st, Direction::axis(3), regime_grid(Regime::LOW));
    label_records(recs, set);
    auto fit = verify_expansion(set, find(recs, ExpansionCase::SIMPLE, 1.0));
    EXPECT_GE(fit.fitted_order, 2.5);
    EXPECT_GE(fit.decades, 2.0);
}

TEST(VerifyExpansion, DampedWaveFourthOrderRemainder) {
    auto st = make_preset("damped_wave");
    auto recs = low_freq_expansions(st, Direction::axis(3));
    auto set = track_branches(st, Direction::axis(3), regime_grid(Regime::LOW));
    label_records(recs, set);
    auto fit = verify_expansion(set, find(recs, ExpansionCase::SIMPLE, 0.0));
    EXPECT_NEAR(fit.fitted_order, 4.0, 0.05);
    EXPECT_NEAR(fit.max_rel_err, 0.01, 2e-3);  // rho^4 / rho^2 at rho = 0.1
}

TEST(VerifyExpansion, ExactRemainderFlagged) {
    // Q(lambda, i xi) = (lambda + 1)(lambda^2 + rho^2): the root -1 is exact for all rho
    auto st = make_preset("mgt", {{"b", 0.0}});
    auto set = track_branches(st, Direction::axis(3), regime_grid(Regime::LOW));
    ExpansionRecord rec;
    rec.kind = ExpansionCase::CONSTANT;
    rec.terms = {{0, -1.0}};
    for (int j = 0; j < set.size(); ++j)
        if (std::abs(set.branches[j][0] + 1.0) < 1e-9) rec.branch = j;
    auto fit = verify_expansion(set, rec);
    EXPECT_TRUE(fit.exact);
    EXPECT_TRUE(std::isinf(fit.fitted_order));
}

TEST(VerifyExpansion, RejectsShortRange) {
    auto st = make_preset("mgt");
    auto recs = low_freq_expansions(st, Direction::axis(3));
    auto set = track_branches(st, Direction::axis(3), log_grid(1e-2, 1e-1, 10));
    label_records(recs, set);
    EXPECT_THROW(verify_expansion(set, recs[0]), Error);
}

TEST(SignInvariants, StrictInterlacingPresets) {
    for (const char* name : {"mgt", "blackstock_crighton", "em_elastic", "damped_wave"}) {
        auto st = make_preset(name);
        ASSERT_EQ(classify(st).top.kind, Interlace::STRICT) << name;
        for (const auto& r : low_freq_expansions(st, Direction::axis(3)))
            if (r.kind == ExpansionCase::SIMPLE) {
                EXPECT_EQ(r.terms[1].coeff.imag(), 0.0);
                EXPECT_LT(r.terms[1].coeff.real(), 0.0) << name;
            }
        for (const auto& r : high_freq_expansions(st, Direction::axis(3))) {
            ASSERT_EQ(r.kind, ExpansionCase::SIMPLE);
            EXPECT_EQ(r.terms[1].coeff.imag(), 0.0);
            EXPECT_LT(r.terms[1].coeff.real(), 0.0) << name;
        }
    }
}

TEST(SignInvariants, DoubleRootKappasInLeftHalfPlane) {
    for (const char* name : {"em_elastic_dissipative", "fourth_order_weak", "anisotropic_elastic_2d", "example_ell3"}) {
        auto st = make_preset(name);
        for (const auto& d : stack_directions(st)) {
            for (auto regime : {Regime::LOW, Regime::HIGH}) {
                auto recs = regime == Regime::LOW ? low_freq_expansions(st, d) : high_freq_expansions(st, d);
                for (const auto& r : recs)
                    if (r.kind == ExpansionCase::DOUBLE) EXPECT_LT(r.terms[1].coeff.real(), 0.0) << name;
            }
            if (st.dim() > 1 && &d != &stack_directions(st).front()) break;
        }
    }
}

TEST(Labelings, MgtSlowRealBranchConnectsToMiddleHighBranch) {
    auto st = make_preset("mgt");
    auto ex = expansions_along(st, Direction::axis(3));
    int ci = -1;
    for (std::size_t i = 0; i < ex.low.size(); ++i)
        if (ex.low[i].kind == ExpansionCase::CONSTANT) ci = static_cast<int>(i);
    ASSERT_GE(ci, 0);
    const auto& h = ex.high[ex.permutation[ci]];
    EXPECT_NEAR(h.root, 0.0, 1e-12);
    EXPECT_NEAR(h.terms[1].coeff.real(), -0.5, 1e-12);
}

TEST(FittedOrders, AllPresetsAlongSampledDirections) {
    for (const auto& info : preset_catalog()) {
        auto st = make_preset(info.name);
        auto dirs = stack_directions(st);
        std::vector<Direction> use = {dirs.front()};
        if (dirs.size() > 1) use.push_back(dirs[dirs.size() / 7]);
        for (const auto& d : use) {
            auto ex = expansions_along(st, d);
            for (const auto* recs : {&ex.low, &ex.high})
                for (const auto& r : *recs) {
                    auto fit = verify_expansion(ex.branches, r);
                    EXPECT_TRUE(expansion_fit_ok(r, fit))
                        << info.name << " " << to_string(r.regime) << " " << to_string(r.kind) << " root " << r.root
                        << " fitted " << fit.fitted_order << " last power " << r.last_power();
                }
        }
    }
}
