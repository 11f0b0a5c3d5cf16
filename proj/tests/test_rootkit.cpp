#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hyperdecay/presets.hpp"
#include "hyperdecay/roots.hpp"

using namespace hyperdecay;

namespace {

// Closed-form oracles, independent of the companion/Aberth route.
std::vector<cplx> quadratic_roots(cplx a, cplx b, cplx c) {
    cplx s = std::sqrt(b * b - 4.0 * a * c);
    cplx q = -0.5 * (b + (std::real(std::conj(b) * s) >= 0.0 ? s : -s));
    if (q == cplx(0.0)) return {0.0, 0.0};
    return {q / a, c / q};
}

std::vector<cplx> cardano_roots(cplx a, cplx b, cplx c, cplx d) {
    b /= a;
    c /= a;
    d /= a;
    cplx p = c - b * b / 3.0, q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + disc;
    if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
    cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    std::vector<cplx> out;
    for (int k = 0; k < 3; ++k) {
        cplx uk = u * std::pow(w, k);
        cplx vk = uk == cplx(0.0) ? cplx(0.0) : -p / (3.0 * uk);
        out.push_back(uk + vk - b / 3.0);
    }
    return out;
}

// Max over want of distance to the nearest unused element of got.
double multiset_distance(std::vector<cplx> got, const std::vector<cplx>& want) {
    double worst = 0.0;
    for (const cplx& w : want) {
        auto it = std::min_element(got.begin(), got.end(),
                                   [&](cplx x, cplx y) { return std::abs(x - w) < std::abs(y - w); });
        worst = std::max(worst, std::abs(*it - w));
        got.erase(it);
    }
    return worst;
}

}  // namespace

TEST(Roots, DampedWaveQuadratic) {
    auto r = roots(Poly({0.09, 1.0, 1.0}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0].real(), -0.9, 1e-14);
    EXPECT_NEAR(r[1].real(), -0.1, 1e-14);
    EXPECT_EQ(r[0].imag(), 0.0);
}

TEST(Roots, FactoredCubic) {
    auto r = roots(Poly({0.0, -2.0, 0.0, 1.0}));
    EXPECT_LT(multiset_distance(r, {-std::sqrt(2.0), 0.0, std::sqrt(2.0)}), 1e-14);
}

TEST(Roots, MgtAtOrigin) {
    auto r = roots(Poly({0.0, 0.0, 1.0, 1.0}));
    EXPECT_LT(multiset_distance(r, {0.0, 0.0, -1.0}), 1e-15);
}

TEST(Roots, RejectsDegenerateInput) {
    EXPECT_THROW(roots(Poly()), Error);
    EXPECT_THROW(roots(Poly({3.0})), Error);
}

TEST(Roots, ResidualBoundOnClusteredRoots) {
    Poly p = Poly::from_roots({1.0, 1.0, 1.0, 1.0, -2.0, cplx(0.0, 3.0)});
    for (const cplx& z : roots(p)) EXPECT_LE(std::abs(p(z)), 1e-10 * p.magnitude_bound(z));
}

TEST(Roots, WideDynamicRange) {
    Poly p = Poly::from_roots({-1e-4, -1.0, -1e4});
    auto r = roots(p);
    EXPECT_NEAR(r[0].real(), -1e4, 1e-8);
    EXPECT_NEAR(r[1].real(), -1.0, 1e-12);
    EXPECT_NEAR(r[2].real(), -1e-4, 1e-16);
}

TEST(Roots, MatchesQuadraticAndCardanoClosedForms) {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    for (int t = 0; t < 1000; ++t) {
        cplx a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
        auto r2 = roots(Poly({c, b, a}));
        EXPECT_LT(multiset_distance(r2, quadratic_roots(a, b, c)), 1e-8) << "trial " << t;
        auto r3 = roots(Poly({d, c, b, a}));
        EXPECT_LT(multiset_distance(r3, cardano_roots(a, b, c, d)), 1e-8) << "trial " << t;
    }
}

TEST(Assignment, HungarianFindsOptimum) {
    std::vector<std::vector<double>> cost = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    auto col = min_cost_assignment(cost);
    double total = 0.0;
    for (int i = 0; i < 3; ++i) total += cost[i][col[i]];
    EXPECT_DOUBLE_EQ(total, 5.0);
}

TEST(Clusters, GroupsNearbyRoots) {
    auto cl = clusters({0.0, 1e-9, 1.0, 2.0, 2.0 + 1e-9}, 1e-6);
    ASSERT_EQ(cl.size(), 2u);
    EXPECT_EQ(cl[0].indices, (std::vector<int>{0, 1}));
    EXPECT_EQ(cl[1].indices, (std::vector<int>{3, 4}));
}

TEST(TrackBranches, MgtLowFrequency) {
    OperatorStack st = make_preset("mgt");
    auto grid = log_grid(1e-3, 1e-1, 20);
    auto set = track_branches(st, Direction::axis(3), grid);
    ASSERT_EQ(set.size(), 3);
    int far = -1;
    for (int j = 0; j < 3; ++j)
        if (std::abs(set.branches[j][0] + 1.0) < 1e-2) far = j;
    ASSERT_GE(far, 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double rho = grid[i];
        auto r = roots(full_symbol_at(st, Direction::axis(3).scaled(rho)));
        EXPECT_LT(multiset_distance(set.at(i), r), 1e-12);
        for (int j = 0; j < 3; ++j) {
            if (j == far) {
                EXPECT_LT(std::abs(set.branches[j][i] + 1.0), 1e-2);
            } else {
                EXPECT_LT(set.branches[j][i].real(), 0.0);
                EXPECT_GE(set.branches[j][i].real(), -rho * rho);
            }
        }
    }
}

TEST(TrackBranches, DampedWaveCollisionLogged) {
    OperatorStack st = make_preset("damped_wave");
    auto set = track_branches(st, Direction::axis(3), log_grid(0.1, 1.0, 10));
    ASSERT_FALSE(set.cluster_events.empty());
    bool near_half = false;
    for (const auto& ev : set.cluster_events)
        if (std::abs(ev.rho - 0.5) < 1e-3) near_half = true;
    EXPECT_TRUE(near_half);
    // real before, conjugate after
    EXPECT_EQ(set.branches[0][0].imag(), 0.0);
    EXPECT_NEAR(set.branches[0].back().imag(), -set.branches[1].back().imag(), 1e-14);
    EXPECT_GT(std::abs(set.branches[0].back().imag()), 0.5);
}

TEST(TrackBranches, SinglePointEqualsRoots) {
    OperatorStack st = make_preset("em_elastic");
    auto set = track_branches(st, Direction::axis(3), {0.7});
    EXPECT_LT(multiset_distance(set.at(0), roots(full_symbol_at(st, Direction::axis(3).scaled(0.7)))), 0.0 + 1e-15);
}

TEST(TrackBranches, RejectsBadGrid) {
    OperatorStack st = make_preset("mgt");
    EXPECT_THROW(track_branches(st, Direction::axis(3), {1.0, 0.5}), Error);
    EXPECT_THROW(track_branches(st, Direction::axis(3), {0.0, 0.5}), Error);
}

TEST(TrackBranches, VietaTraceAndConjugatePairing) {
    OperatorStack st = make_preset("mgt");
    auto set = track_branches(st, Direction::axis(3), log_grid(1e-3, 1e3, 10));
    for (std::size_t i = 0; i < set.rho.size(); ++i) {
        auto r = set.at(i);
        cplx sum = r[0] + r[1] + r[2];
        EXPECT_LT(std::abs(sum + 1.0), 1e-8);
        for (const cplx& z : r) {
            double best = 1e300;
            for (const cplx& w : r) best = std::min(best, std::abs(w - std::conj(z)));
            EXPECT_LT(best, 1e-10 * (1.0 + std::abs(z)));
        }
    }
}

TEST(SpectralAbscissa, Examples) {
    EXPECT_NEAR(spectral_abscissa(make_preset("damped_wave"), {0.3, 0.0, 0.0}), -0.1, 1e-14);
    EXPECT_NEAR(spectral_abscissa(make_preset("mgt"), {0.0, 0.0, 0.0}), 0.0, 1e-15);
}

TEST(SpectralAbscissa, PrincipalPartAloneIsOnImaginaryAxis) {
    OperatorStack st = make_preset("em_elastic");
    Poly p = st.symbol(0).at({0.0, 1.3, 0.0}, true);
    for (const cplx& z : roots(p)) EXPECT_LT(std::abs(z.real()), 1e-12);
}
