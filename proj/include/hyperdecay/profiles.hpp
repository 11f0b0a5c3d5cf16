#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hyperdecay/asymptotics.hpp"
#include "hyperdecay/presets.hpp"
#include "hyperdecay/solver.hpp"

namespace hyperdecay {

/// V: Q1 profile over roots of P_{m-1}; W: Q2 profile over roots of P_{m-2};
/// V_WEAK: double roots shared by P_{m-2}, P_{m-1}; W_WEAK: simple roots shared by P_{m-2}, P_{m-1}.
enum class ProfileKind { V, W, V_WEAK, W_WEAK, PRESET_CLOSED_FORM };

inline const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::V: return "V";
        case ProfileKind::W: return "W";
        case ProfileKind::V_WEAK: return "V_WEAK";
        case ProfileKind::W_WEAK: return "W_WEAK";
        case ProfileKind::PRESET_CLOSED_FORM: return "PRESET_CLOSED_FORM";
    }
    return "?";
}

/// amplitude * exp(t * sum_p c_p rho^p).
struct ProfileTerm {
    cplx amplitude;
    std::vector<Term> exponent;
    bool confluent = false;  // kappa_+ = kappa_-: the difference quotient becomes rho^2 t e^{rate t}

    cplx rate(double rho) const {
        cplx e = 0.0;
        for (const auto& x : exponent) e += x.coeff * std::pow(rho, x.power);
        return e;
    }
};

/// int (u_{m-1} + c_{m-1,0} u_{m-2} + c_{m-2,0} u_{m-3}) dx; the last term only when P_{m-2} is present.
inline double moment(const DataSpec& data, const OperatorStack& st) {
    const int m = st.m();
    if (static_cast<int>(data.u.size()) != m) throw Error("data must provide m profiles");
    auto at0 = [&](int j) { return j >= 0 ? data.u[j].radial(0.0, data.n) : 0.0; };
    double M = at0(m - 1) + st.c0(1) * at0(m - 2);
    if (st.depth() >= 2) M += st.c0(2) * at0(m - 3);
    return M;
}

struct ProfileSpec {
    ProfileKind kind = ProfileKind::V;
    double M = 0.0;
    int riesz_order = 0;
    int m = 0;
    std::vector<double> roots;  // b_j, d_j or the shared roots along the reference direction
};

namespace detail {

inline int nearest_index(const RealRoots& r, double x) { return nearest_root(r.values, x).first; }

/// Profile kind implied by the low-frequency root structure along d.
inline ProfileKind profile_kind_along(const OperatorStack& st, const std::vector<ExpansionRecord>& recs) {
    if (st.depth() == 1) return ProfileKind::V;
    if (st.depth() != 2) throw Error("asymptotic profiles are defined for one or two lower-order symbols");
    bool shared = false, dbl = false;
    for (const auto& r : recs) {
        shared = shared || r.kind == ExpansionCase::SHARED_SIMPLE;
        dbl = dbl || r.kind == ExpansionCase::DOUBLE;
    }
    if (shared) return ProfileKind::W_WEAK;
    if (dbl) return ProfileKind::V_WEAK;
    return ProfileKind::W;
}

}  // namespace detail

inline int riesz_order_for(ProfileKind k, int m) {
    switch (k) {
        case ProfileKind::V:
        case ProfileKind::V_WEAK: return m - 2;
        case ProfileKind::W:
        case ProfileKind::W_WEAK: return m - 3;
        default: throw Error("closed-form profiles carry their own Riesz order");
    }
}

/// Terms of the profile along d, before the |xi|^{-riesz} factor; amplitudes include M.
inline std::vector<ProfileTerm> profile_terms(const OperatorStack& st, const Direction& d, double M,
                                              ProfileKind* kind_out = nullptr) {
    const int m = st.m(), l = st.depth();
    auto recs = low_freq_expansions(st, d);
    ProfileKind kind = detail::profile_kind_along(st, recs);
    if (kind_out) *kind_out = kind;
    const int R = riesz_order_for(kind, m);
    auto base = detail::restricted(st, l, d);
    const cplx I(0.0, 1.0);
    std::vector<ProfileTerm> out;
    if (M == 0.0) return out;
    if (kind == ProfileKind::V || kind == ProfileKind::W || kind == ProfileKind::W_WEAK) {
        const ExpansionCase want = kind == ProfileKind::W_WEAK ? ExpansionCase::SHARED_SIMPLE : ExpansionCase::SIMPLE;
        for (const auto& r : recs) {
            if (r.kind != want) continue;
            double chk = detail::check_at(base, {detail::nearest_index(base.r, r.root)});
            out.push_back({M / (std::pow(I, R) * chk), r.terms});
        }
    } else {
        // kappa pairs: (e^{kappa_+ rho^2 t} - e^{kappa_- rho^2 t}) / (kappa_+ - kappa_-)
        for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
            if (recs[i].kind != ExpansionCase::DOUBLE) continue;
            const auto& a = recs[i];
            const auto& b = recs[i + 1];
            const cplx kp = a.terms[1].coeff, km = b.terms[1].coeff;
            int idx = detail::nearest_index(base.r, a.root);
            double chk = detail::check_at(base, {idx, idx + 1});
            if (std::abs(kp - km) <= 1e-12 * (std::abs(kp) + std::abs(km))) {
                if (a.terms.size() != b.terms.size()) throw Error("confluent kappa pair with unequal expansions");
                for (std::size_t j = 0; j < a.terms.size(); ++j)
                    if (j != 1 && std::abs(a.terms[j].coeff - b.terms[j].coeff) > 1e-12 * (1.0 + std::abs(a.terms[j].coeff)))
                        throw Error("confluent kappa pair differs beyond kappa");
                out.push_back({M / (std::pow(I, m - 4) * chk), a.terms, true});
                ++i;
                continue;
            }
            cplx amp = M / (std::pow(I, m - 4) * chk * (kp - km));
            out.push_back({amp, a.terms});
            out.push_back({-amp, b.terms});
            ++i;
        }
    }
    return out;
}

/// Profile description from the reference direction of the stack.
inline ProfileSpec make_profile(const OperatorStack& st, double M) {
    ProfileSpec p;
    p.m = st.m();
    p.M = M;
    Direction d = stack_directions(st).front();
    auto recs = low_freq_expansions(st, d);
    p.kind = detail::profile_kind_along(st, recs);
    p.riesz_order = riesz_order_for(p.kind, p.m);
    for (const auto& r : recs)
        if (r.kind != ExpansionCase::CONSTANT &&
            (p.roots.empty() || std::abs(p.roots.back() - r.root) > 0.0))
            p.roots.push_back(r.root);
    return p;
}

/// d_t^k of the profile at (t, rho) from precomputed terms; riesz multiplies by rho^{-riesz_order}.
inline cplx profile_from_terms(const std::vector<ProfileTerm>& terms, int riesz_order, double t, double rho, int k,
                               bool riesz = true) {
    cplx acc = 0.0;
    for (const auto& term : terms) {
        cplx r = term.rate(rho);
        if (term.confluent) {
            // d_t^k (t e^{rt}) = (r^k t + k r^{k-1}) e^{rt}
            cplx poly = std::pow(r, k) * t + (k > 0 ? double(k) * std::pow(r, k - 1) : cplx(0.0));
            acc += term.amplitude * rho * rho * poly * std::exp(r * t);
        } else {
            acc += term.amplitude * std::pow(r, k) * std::exp(r * t);
        }
    }
    if (riesz) acc *= std::pow(rho, -riesz_order);
    return acc;
}

/// Generic profile value at (t, xi).
inline cplx profile_value(const OperatorStack& st, const ProfileSpec& spec, double t, const std::vector<double>& xi,
                          int k = 0, bool riesz = true) {
    if (!(t > 0.0)) throw Error("profiles are evaluated for t > 0");
    double r2 = 0.0;
    for (double x : xi) r2 += x * x;
    if (r2 == 0.0) throw Error("profiles are evaluated for xi != 0");
    if (spec.M == 0.0) return 0.0;
    const double rho = std::sqrt(r2);
    Direction d = st.isotropic() ? Direction::axis(st.dim()) : Direction::normalized(xi);
    return profile_from_terms(profile_terms(st, d, spec.M), spec.riesz_order, t, rho, k, riesz);
}

/// Hand-simplified |xi|^{-a} profile for presets with a worked closed form (k = 0).
inline bool has_closed_form(const std::string& preset) {
    static const char* names[] = {"damped_wave", "mgt", "blackstock_crighton", "em_elastic",
                                  "em_elastic_dissipative", "fourth_order_weak"};
    for (const char* n : names)
        if (preset == n) return true;
    return false;
}

inline double closed_form_profile(const std::string& preset, const Params& overrides, double M, double t, double rho) {
    if (!has_closed_form(preset)) throw Error("no closed-form profile for preset '" + preset + "'");
    if (!(t > 0.0) || !(rho > 0.0)) throw Error("profiles are evaluated for t > 0, xi != 0");
    Params P = preset_info(preset).defaults;
    for (const auto& [k, v] : overrides) P[k] = v;
    const double r2 = rho * rho;
    if (preset == "damped_wave") return M / P["a"] * std::exp(-P["c"] * P["c"] / P["a"] * r2 * t);
    if (preset == "mgt") {
        const double tau = P["tau"], c = P["c"], b = P["b"];
        return M * tau * std::sin(c * rho * t) / (c * rho) * std::exp(-0.5 * b * r2 * t);
    }
    if (preset == "blackstock_crighton") {
        const double tau = P["tau"], a = P["a"], b = P["b"], c = P["c"];
        return M * tau / (c * c * r2) * (std::exp(-a * r2 * t) - std::cos(c * rho * t) * std::exp(-0.5 * b * r2 * t));
    }
    if (preset == "em_elastic") {
        const double mu = P["mu"], c = P["c"], g = P["gamma"], sg = P["sigma"];
        return M / (mu * sg * sg * r2) *
               (std::exp(-c * c / sg * r2 * t) - std::cos(rho * std::sqrt(mu) * t) * std::exp(-g * g / (2 * sg) * r2 * t));
    }
    if (preset == "em_elastic_dissipative") {
        // kappa_+- = -mu/a, -c^2/sigma
        const double a = P["a"], sg = P["sigma"], mu = P["mu"], c = P["c"];
        const double k1 = -mu / a, k2 = -c * c / sg;
        if (k1 == k2) throw Error("weak-interlacing profile needs kappa_+ != kappa_-");
        return M / (a * sg * r2) * (std::exp(k1 * r2 * t) - std::exp(k2 * r2 * t)) / (k1 - k2);
    }
    // fourth_order_weak
    const double c = P["c"], h = 0.5 * (c * c - 1.0);
    return M / rho * std::sin(rho * t - h * rho * r2 * t) * std::exp(-h * r2 * r2 * t);
}

/// Solution and solution-minus-profile norms on a shared grid.
struct ProfileGapResult {
    ProfileSpec spec;
    NormTimeSeries solution, gap;
};

inline ProfileGapResult profile_gap_series(const OperatorStack& st, const DataSpec& data,
                                           const std::vector<double>& times, int k, double s,
                                           const SimulationOptions& opt = {}) {
    for (double t : times)
        if (!(t > 0.0)) throw Error("profile gap series needs t > 0");
    ProfileGapResult res;
    res.spec = make_profile(st, moment(data, st));
    SpectralGrid g = simulation_grid(st, times, opt);
    auto K = build_kernels(st, g, data);
    std::vector<std::vector<ProfileTerm>> terms;
    for (const auto& d : g.dirs) terms.push_back(profile_terms(st, d, res.spec.M));
    for (auto* ts : {&res.solution, &res.gap}) {
        ts->k = k;
        ts->s = s;
    }
    const bool zero = data.is_zero();
    for (double t : times) {
        Snapshot u = zero ? Snapshot{std::vector<std::vector<cplx>>(g.dirs.size(), std::vector<cplx>(g.rho.size()))}
                          : evaluate(K, t, k);
        Snapshot gap = u;
        for (std::size_t d = 0; d < g.dirs.size(); ++d)
            for (std::size_t i = 0; i < g.rho.size(); ++i)
                gap.values[d][i] -= profile_from_terms(terms[d], res.spec.riesz_order, t, g.rho[i], k);
        double vs = sobolev_norm(g, u, s), vg = sobolev_norm(g, gap, s);
        if (!zero && (vs < 1e-300 || vg < 1e-300)) {
            res.solution.underflow = res.gap.underflow = true;
            break;
        }
        res.solution.times.push_back(t);
        res.solution.values.push_back(vs);
        res.gap.times.push_back(t);
        res.gap.values.push_back(vg);
    }
    fit_series(res.solution, opt.fit_tmin, opt.fit_tmax, opt.fit_decades);
    fit_series(res.gap, opt.fit_tmin, opt.fit_tmax, opt.fit_decades);
    return res;
}

/// m = 3 stacks whose lowest symbol is a multiple of lambda: the profile is a heat kernel.
inline bool diffusion_profile_applies(const OperatorStack& st) {
    if (st.m() != 3 || st.depth() != 2) return false;
    const auto& p1 = st.symbol(2);
    for (const auto& term : p1.terms())
        if (term.k != 1) return false;
    return p1.pure_time() > 0.0;
}

}  // namespace hyperdecay
