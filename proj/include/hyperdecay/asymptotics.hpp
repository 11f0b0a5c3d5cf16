#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hyperdecay/fit.hpp"
#include "hyperdecay/roots.hpp"
#include "hyperdecay/stability.hpp"

namespace hyperdecay {

enum class Regime { LOW, HIGH };
enum class ExpansionCase { SIMPLE, SHARED_SIMPLE, DOUBLE, CONSTANT };

inline const char* to_string(Regime r) { return r == Regime::LOW ? "LOW" : "HIGH"; }

inline const char* to_string(ExpansionCase c) {
    switch (c) {
        case ExpansionCase::SIMPLE: return "SIMPLE";
        case ExpansionCase::SHARED_SIMPLE: return "SHARED_SIMPLE";
        case ExpansionCase::DOUBLE: return "DOUBLE";
        default: return "CONSTANT";
    }
}

/// coeff * |xi|^power
struct Term {
    int power;
    cplx coeff;
};

/// Truncated expansion lambda_j(rho xi') ~ sum of terms, as rho -> 0 (LOW) or rho -> infinity (HIGH).
struct ExpansionRecord {
    int branch = -1;  // tracked branch after labeling; -1 before
    Regime regime = Regime::LOW;
    ExpansionCase kind = ExpansionCase::SIMPLE;
    std::vector<Term> terms;
    double predicted_remainder_order = 0.0;
    double root = 0.0;  // the real root the expansion is built on (unused for CONSTANT)
    double margin = std::numeric_limits<double>::infinity();  // distance of the matched shared root

    cplx eval(double rho) const {
        cplx s = 0.0;
        for (const Term& t : terms) s += t.coeff * std::pow(rho, t.power);
        return s;
    }

    /// Power of the last (smallest-order) included term.
    int last_power() const { return terms.back().power; }
};

namespace detail {

inline std::vector<cplx> as_complex(const std::vector<double>& v) { return std::vector<cplx>(v.begin(), v.end()); }

struct Restricted {
    Poly p;
    RealRoots r;
};

inline Restricted restricted(const OperatorStack& st, int j, const Direction& d) {
    Restricted out{st.restrict(j, d), {}};
    out.r = real_roots(out.p);
    if (!out.r.all_real) throw Error("expansions need real-rooted restrictions");
    return out;
}

/// P-check at values[i] deleting the listed indices.
inline double check_at(const Restricted& R, std::vector<int> deleted) {
    return check_poly(R.p, as_complex(R.r.values), deleted, R.r.values[deleted[0]]).real();
}

/// Index of a root in `other` matching x within the shared-root tolerance, or -1.
inline int shared_index(const RealRoots& other, double x, double scale, double* dist = nullptr) {
    if (other.values.empty()) return -1;
    auto [k, dd] = nearest_root(other.values, x);
    if (dist) *dist = dd;
    return dd <= kRootMatchTol * scale ? k : -1;
}

/// First-order forward error of root j of prod (z - roots_k): eps * sum |q_k||z|^k / |q'(z)|.
inline double root_error_estimate(const std::vector<cplx>& r, int j) {
    Poly q = Poly::from_roots(r);
    cplx dq = 1.0;
    for (std::size_t k = 0; k < r.size(); ++k)
        if (static_cast<int>(k) != j) dq *= r[j] - r[k];
    const double eps = std::numeric_limits<double>::epsilon();
    if (dq == cplx(0.0)) return std::numeric_limits<double>::infinity();
    return eps * q.magnitude_bound(r[j]) / std::abs(dq);
}

inline std::pair<cplx, cplx> solve_kappa(cplx A, cplx B, cplx C) {
    if (A == cplx(0.0)) throw Error("degenerate kappa quadratic");
    cplx disc = B * B - 4.0 * A * C;
    // a discriminant at rounding level is a double kappa; its square root would be ~sqrt(eps)
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (std::norm(B) + 4.0 * std::abs(A * C));
    cplx s = std::abs(disc) <= noise ? cplx(0.0) : std::sqrt(disc);
    cplx kp = (-B + s) / (2.0 * A), km = (-B - s) / (2.0 * A);
    if (!(kp.real() < 0.0 && km.real() < 0.0)) throw Error("kappa solutions must have negative real part");
    return {kp, km};
}

}  // namespace detail

/// Two solutions of the quadratic for a double root; j indexes the first copy of the double root in the
/// sorted roots of P_{m-2} (LOW) or P_m (HIGH).
inline std::pair<cplx, cplx> kappa_solutions(const OperatorStack& st, const Direction& d, int j, Regime regime) {
    if (st.depth() < 2) throw Error("double-root expansions need at least two lower-order symbols");
    using detail::check_at;
    auto top = detail::restricted(st, 0, d), mid = detail::restricted(st, 1, d), low = detail::restricted(st, 2, d);
    const double scale = std::max({top.r.scale, mid.r.scale, low.r.scale});
    const auto& R = regime == Regime::LOW ? low : top;
    if (j < 0 || j + 1 >= static_cast<int>(R.r.values.size()) || R.r.group[j] != R.r.group[j + 1] ||
        R.r.multiplicity(j) != 2)
        throw Error("kappa_solutions: index does not mark a double root");
    const double x = R.r.values[j];
    int k = detail::shared_index(mid.r, x, scale);
    if (k < 0) throw Error("kappa_solutions: double root is not a root of P_{m-1}");
    const double Acoef = check_at(R, {j, j + 1});
    const double Bmid = check_at(mid, {k});
    if (regime == Regime::LOW) return detail::solve_kappa(Acoef, -Bmid, top.p(x));
    return detail::solve_kappa(Acoef, Bmid, low.p(x));
}

/// Low-frequency expansions: l CONSTANT records plus m - l records built on the roots of P_{m-l}.
inline std::vector<ExpansionRecord> low_freq_expansions(const OperatorStack& st, const Direction& d) {
    const int l = st.depth();
    std::vector<ExpansionRecord> out;
    std::vector<cplx> c0(l + 1);
    for (int j = 0; j <= l; ++j) c0[l - j] = st.c0(j);
    for (const cplx& z : roots(Poly(c0))) {
        ExpansionRecord r;
        r.kind = ExpansionCase::CONSTANT;
        r.terms = {{0, z}};
        r.predicted_remainder_order = 1.0;
        out.push_back(r);
    }
    auto base = detail::restricted(st, l, d);       // P_{m-l}
    auto next = detail::restricted(st, l - 1, d);   // P_{m-l+1}
    const double scale = std::max(base.r.scale, next.r.scale);
    const int nb = static_cast<int>(base.r.values.size());
    const cplx I(0.0, 1.0);
    for (int i = 0; i < nb;) {
        const double x = base.r.values[i];
        const int mult = base.r.multiplicity(i);
        double dist = std::numeric_limits<double>::infinity();
        int k = detail::shared_index(next.r, x, scale, &dist);
        ExpansionRecord r;
        r.root = x;
        if (mult == 1 && k < 0) {
            r.kind = ExpansionCase::SIMPLE;
            r.terms = {{1, I * x}, {2, next.p(x) / detail::check_at(base, {i})}};
            r.predicted_remainder_order = 3.0;
            out.push_back(r);
        } else if (mult == 1 && l == 2) {
            auto top = detail::restricted(st, 0, d);
            const double pm = top.p(x).real(), chk = detail::check_at(base, {i});
            const double ptilde = detail::check_at(next, {k});
            r.kind = ExpansionCase::SHARED_SIMPLE;
            r.margin = dist;
            r.terms = {{1, I * x}, {3, I * pm / chk}, {4, pm * ptilde / (chk * chk)}};
            r.predicted_remainder_order = 5.0;
            out.push_back(r);
        } else if (mult == 2 && l == 2 && k >= 0) {
            auto [kp, km] = kappa_solutions(st, d, i, Regime::LOW);
            for (cplx kap : {kp, km}) {
                r.kind = ExpansionCase::DOUBLE;
                r.margin = dist;
                r.terms = {{1, I * x}, {2, kap}};
                r.predicted_remainder_order = 3.0;
                out.push_back(r);
            }
        } else {
            throw Error("low-frequency expansion: unsupported root configuration (multiplicity " +
                        std::to_string(mult) + ", shared=" + (k >= 0 ? "yes" : "no") + ", depth " +
                        std::to_string(l) + ")");
        }
        i += mult;
    }
    return out;
}

/// High-frequency expansions built on the m roots of P_m.
inline std::vector<ExpansionRecord> high_freq_expansions(const OperatorStack& st, const Direction& d) {
    const int l = st.depth();
    auto top = detail::restricted(st, 0, d), mid = detail::restricted(st, 1, d);
    double scale = std::max(top.r.scale, mid.r.scale);
    Poly low_p = l >= 2 ? st.restrict(2, d) : Poly();
    std::vector<ExpansionRecord> out;
    const cplx I(0.0, 1.0);
    const int na = static_cast<int>(top.r.values.size());
    for (int i = 0; i < na;) {
        const double x = top.r.values[i];
        const int mult = top.r.multiplicity(i);
        double dist = std::numeric_limits<double>::infinity();
        int k = detail::shared_index(mid.r, x, scale, &dist);
        ExpansionRecord r;
        r.regime = Regime::HIGH;
        r.root = x;
        if (mult == 1 && k < 0) {
            r.kind = ExpansionCase::SIMPLE;
            r.terms = {{1, I * x}, {0, -mid.p(x) / detail::check_at(top, {i})}};
            r.predicted_remainder_order = -1.0;
            out.push_back(r);
        } else if (mult == 1 && l >= 2) {
            // P_{m-3} enters at the same order as the |xi|^{-2} term when present.
            const double pm2 = low_p(x).real(), chk = detail::check_at(top, {i});
            const double pm3 = l >= 3 ? st.restrict(3, d)(x).real() : 0.0;
            const double ptilde = detail::check_at(mid, {k});
            r.kind = ExpansionCase::SHARED_SIMPLE;
            r.margin = dist;
            r.terms = {{1, I * x}, {-1, I * pm2 / chk}, {-2, (pm3 * chk - pm2 * ptilde) / (chk * chk)}};
            r.predicted_remainder_order = -3.0;
            out.push_back(r);
        } else if (mult == 2 && l >= 2 && k >= 0) {
            auto [kp, km] = kappa_solutions(st, d, i, Regime::HIGH);
            for (cplx kap : {kp, km}) {
                r.kind = ExpansionCase::DOUBLE;
                r.margin = dist;
                r.terms = {{1, I * x}, {0, kap}};
                r.predicted_remainder_order = -1.0;
                out.push_back(r);
            }
        } else {
            throw Error("high-frequency expansion: unsupported root configuration (multiplicity " +
                        std::to_string(mult) + ", shared=" + (k >= 0 ? "yes" : "no") + ", depth " +
                        std::to_string(l) + ")");
        }
        i += mult;
    }
    return out;
}

inline std::vector<double> regime_grid(Regime r) {
    return r == Regime::LOW ? log_grid(1e-4, 1e-1, 40) : log_grid(1e1, 1e4, 40);
}

/// Assigns record.branch by minimum-distance matching at the regime anchor (smallest rho for LOW,
/// largest for HIGH) of the branch set.
inline void label_records(std::vector<ExpansionRecord>& recs, const RootBranchSet& set) {
    if (recs.empty()) return;
    if (static_cast<int>(recs.size()) != set.size()) throw Error("record count does not match branch count");
    const bool low = recs.front().regime == Regime::LOW;
    const std::size_t idx = low ? 0 : set.rho.size() - 1;
    const double rho = set.rho[idx];
    auto at = set.at(idx);
    std::vector<std::vector<double>> cost(recs.size(), std::vector<double>(recs.size()));
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (std::size_t j = 0; j < at.size(); ++j) cost[i][j] = std::abs(recs[i].eval(rho) - at[j]);
    auto col = min_cost_assignment(cost);
    for (std::size_t i = 0; i < recs.size(); ++i) recs[i].branch = col[i];
}

/// perm[i] = index of the HIGH record on the same tracked branch as LOW record i.
inline std::vector<int> connect_labelings(const std::vector<ExpansionRecord>& low,
                                          const std::vector<ExpansionRecord>& high) {
    std::vector<int> perm(low.size(), -1);
    for (std::size_t i = 0; i < low.size(); ++i)
        for (std::size_t j = 0; j < high.size(); ++j)
            if (high[j].branch == low[i].branch) perm[i] = static_cast<int>(j);
    return perm;
}

struct ExpansionFit {
    double fitted_order = 0.0;
    bool exact = false;        // remainder below 1e-12 everywhere
    double max_rel_err = 0.0;  // |remainder| / |lambda| at the regime boundary
    double decades = 0.0;      // span of the points used in the fit
    int points = 0;
};

/// Fits the order of lambda_branch(rho) - expansion(rho) on rho <= 0.1 (LOW) or rho >= 10 (HIGH).
inline ExpansionFit verify_expansion(const RootBranchSet& set, const ExpansionRecord& rec) {
    if (rec.branch < 0 || rec.branch >= set.size()) throw Error("record is not labeled against this branch set");
    const bool low = rec.regime == Regime::LOW;
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < set.rho.size(); ++i)
        if (low ? set.rho[i] <= 0.1 * (1 + 1e-12) : set.rho[i] >= 10.0 * (1 - 1e-12)) in.push_back(i);
    if (in.size() < 2 || std::log10(set.rho[in.back()] / set.rho[in.front()]) < 2.0 - 1e-9)
        throw Error("branch set covers less than two decades inside the regime");
    ExpansionFit fit;
    std::vector<double> x, y;
    double rmax = 0.0;
    for (std::size_t i : in) {
        const double rho = set.rho[i];
        cplx lam = set.branches[rec.branch][i];
        double r = std::abs(lam - rec.eval(rho));
        rmax = std::max(rmax, r);
        if (r > 1e3 * detail::root_error_estimate(set.at(i), rec.branch)) {
            x.push_back(rho);
            y.push_back(r);
        }
    }
    const std::size_t edge = low ? in.back() : in.front();
    {
        cplx lam = set.branches[rec.branch][edge];
        double r = std::abs(lam - rec.eval(set.rho[edge]));
        fit.max_rel_err = std::abs(lam) > 0.0 ? r / std::abs(lam) : r;
    }
    if (rmax < 1e-12 || x.size() < 3) {
        fit.exact = true;
        fit.fitted_order = low ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        return fit;
    }
    LineFit lf = fit_loglog(x, y);
    fit.fitted_order = lf.slope;
    fit.points = lf.points;
    fit.decades = std::log10(x.back() / x.front());
    return fit;
}

/// Fit check: the remainder is of strictly smaller order than the last included term.
inline bool expansion_fit_ok(const ExpansionRecord& rec, const ExpansionFit& f) {
    if (f.exact) return true;
    return rec.regime == Regime::LOW ? f.fitted_order > rec.last_power() + 0.4
                                     : f.fitted_order < rec.last_power() - 0.4;
}

/// Low and high records for one direction, labeled on a single track over [1e-4, 1e4].
struct DirectionalExpansions {
    std::vector<ExpansionRecord> low;
    std::vector<ExpansionRecord> high;
    RootBranchSet branches;
    std::vector<int> permutation;
};

inline DirectionalExpansions expansions_along(const OperatorStack& st, const Direction& d) {
    DirectionalExpansions out;
    out.low = low_freq_expansions(st, d);
    out.high = high_freq_expansions(st, d);
    out.branches = track_branches(st, d, log_grid(1e-4, 1e4, 40));
    label_records(out.low, out.branches);
    label_records(out.high, out.branches);
    out.permutation = connect_labelings(out.low, out.high);
    return out;
}

}  // namespace hyperdecay
