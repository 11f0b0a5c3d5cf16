#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hyperdecay/roots.hpp"
#include "hyperdecay/sphere.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

inline constexpr double kRootMatchTol = 1e-7;    // relative; "is this root shared / multiple"
inline constexpr double kInterlaceTol = 1e-9;    // relative interlacing margin
inline constexpr double kTripleRootTol = 1e-8;   // normalized residual for common triple roots
inline constexpr double kAbscissaTol = 1e-10;

/// Real roots of a real polynomial, with near-coincident roots merged to their mean.
struct RealRoots {
    bool all_real = true;
    std::vector<double> values;   // sorted, with multiplicity
    std::vector<int> group;       // group id per value; equal ids mark a multiple root
    cplx worst = 0.0;             // most non-real root when !all_real
    double scale = 1.0;           // 1 + max |root|

    int multiplicity(int i) const { return static_cast<int>(std::count(group.begin(), group.end(), group[i])); }
};

inline RealRoots real_roots(const Poly& p) {
    RealRoots out;
    if (p.degree() == 0) return out;
    std::vector<cplx> r = roots(p);
    out.scale = 1.0 + max_modulus(r);
    const double tol = kRootMatchTol * out.scale;
    std::vector<cplx> merged(r);
    for (const auto& cl : clusters(r, tol))
        for (int i : cl.indices) merged[i] = cl.center;
    double worst_im = -1.0;
    for (const cplx& z : merged) {
        if (!is_real_root(z)) {
            out.all_real = false;
            if (std::abs(z.imag()) > worst_im) {
                worst_im = std::abs(z.imag());
                out.worst = z;
            }
        }
        out.values.push_back(z.real());
    }
    std::sort(out.values.begin(), out.values.end());
    int gid = 0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (i > 0 && out.values[i] - out.values[i - 1] > tol) ++gid;
        out.group.push_back(gid);
    }
    return out;
}

/// Index of the root in `vals` closest to x, with the distance.
inline std::pair<int, double> nearest_root(const std::vector<double>& vals, double x) {
    int best = -1;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i] - x) < dist) {
            dist = std::abs(vals[i] - x);
            best = static_cast<int>(i);
        }
    return {best, dist};
}

enum class Hyperbolicity { STRICT, WEAK, NONE };

inline const char* to_string(Hyperbolicity h) {
    switch (h) {
        case Hyperbolicity::STRICT: return "STRICT";
        case Hyperbolicity::WEAK: return "WEAK";
        default: return "NONE";
    }
}

struct HyperbolicityReport {
    Hyperbolicity cls = Hyperbolicity::STRICT;
    double min_gap = std::numeric_limits<double>::infinity();  // relative to scale
    std::vector<double> witness;                              // direction realizing the class
    cplx witness_root = 0.0;
};

inline HyperbolicityReport classify_hyperbolicity(const HomogeneousSymbol& sym, const std::vector<Direction>& samples) {
    if (samples.empty()) throw Error("hyperbolicity classification needs at least one direction");
    if (!(sym.pure_time() > 0.0)) throw Error("hyperbolicity classification needs c_{order,0} > 0");
    HyperbolicityReport rep;
    for (const Direction& d : samples) {
        RealRoots rr = real_roots(restrict_to_direction(sym, d));
        if (!rr.all_real) {
            rep.cls = Hyperbolicity::NONE;
            rep.witness = d.components();
            rep.witness_root = rr.worst;
            return rep;
        }
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < rr.values.size(); ++i) g = std::min(g, rr.values[i] - rr.values[i - 1]);
        g /= rr.scale;
        if (g < rep.min_gap) {
            rep.min_gap = g;
            rep.witness = d.components();
        }
    }
    rep.cls = rep.min_gap > kRootMatchTol ? Hyperbolicity::STRICT : Hyperbolicity::WEAK;
    return rep;
}

enum class Interlace { STRICT, WEAK, FAIL };

inline const char* to_string(Interlace c) {
    switch (c) {
        case Interlace::STRICT: return "STRICT";
        case Interlace::WEAK: return "WEAK";
        default: return "FAIL";
    }
}

struct InterlacingClass {
    Interlace kind = Interlace::STRICT;
    double margin = std::numeric_limits<double>::infinity();  // relative to scale; negative on violation
    std::vector<double> direction;
    int low_index = -1;
    int high_index = -1;
    std::string detail;
};

/// Interlacing of the roots of pLow (degree d) and pHigh (degree d + 1).
inline InterlacingClass classify_interlacing(const Poly& pLow, const Poly& pHigh) {
    if (pHigh.degree() != pLow.degree() + 1) throw Error("interlacing needs deg pHigh = deg pLow + 1");
    InterlacingClass out;
    if (pLow.degree() == 0) return out;
    RealRoots b = real_roots(pLow), a = real_roots(pHigh);
    if (!a.all_real || !b.all_real) throw Error("interlacing needs real-rooted polynomials");
    const double scale = std::max(a.scale, b.scale);
    const int d = pLow.degree();
    int first_weak_lo = -1, first_weak_hi = -1;
    for (int i = 0; i < d; ++i) {
        double g1 = (b.values[i] - a.values[i]) / scale;
        double g2 = (a.values[i + 1] - b.values[i]) / scale;
        for (auto [g, hi] : {std::pair<double, int>{g1, i}, std::pair<double, int>{g2, i + 1}}) {
            if (g < out.margin) out.margin = g;
            if (g < -kInterlaceTol && out.low_index < 0) {
                out.low_index = i;
                out.high_index = hi;
            }
            if (g <= kInterlaceTol && first_weak_lo < 0) {
                first_weak_lo = i;
                first_weak_hi = hi;
            }
        }
    }
    if (out.low_index >= 0) {
        out.kind = Interlace::FAIL;
    } else if (first_weak_lo >= 0) {
        out.kind = Interlace::WEAK;
        out.low_index = first_weak_lo;
        out.high_index = first_weak_hi;
    }
    return out;
}

/// Worst interlacing class of (P_{m-jlow}, P_{m-jlow+1}) over the sampled directions.
inline InterlacingClass interlacing_over(const OperatorStack& stack, int jlow, const std::vector<Direction>& samples) {
    InterlacingClass worst;
    worst.margin = std::numeric_limits<double>::infinity();
    for (const Direction& d : samples) {
        InterlacingClass c;
        try {
            c = classify_interlacing(stack.restrict(jlow, d), stack.restrict(jlow - 1, d));
        } catch (const Error& e) {
            c.kind = Interlace::FAIL;
            c.margin = -std::numeric_limits<double>::infinity();
            c.detail = e.what();
        }
        c.direction = d.components();
        bool worse = static_cast<int>(c.kind) > static_cast<int>(worst.kind) ||
                     (c.kind == worst.kind && c.margin < worst.margin);
        if (worse || worst.direction.empty()) worst = c;
    }
    return worst;
}

enum ScenarioFlag : unsigned {
    SLOW_LOW = 1u,
    DECAY_LOSS = 2u,
    REG_LOSS_DECAY = 4u,
    DERIVATIVE_LOSS = 8u,
};

inline std::vector<std::string> flag_names(unsigned flags) {
    std::vector<std::string> out;
    if (flags & SLOW_LOW) out.push_back("SLOW_LOW");
    if (flags & DECAY_LOSS) out.push_back("DECAY_LOSS");
    if (flags & REG_LOSS_DECAY) out.push_back("REG_LOSS_DECAY");
    if (flags & DERIVATIVE_LOSS) out.push_back("DERIVATIVE_LOSS");
    return out;
}

struct StabilityReport {
    std::string route;  // Q1, Q2 or hermite_biehler
    int m = 0;
    int depth = 0;
    std::vector<HyperbolicityReport> hyperbolicity;  // P_m, P_{m-1}, P_{m-2} as present
    InterlacingClass top;                            // (P_{m-1}, P_m)
    InterlacingClass lower;                          // (P_{m-2}, P_{m-1}); STRICT when absent
    bool no_common_triple_root = true;
    double triple_margin = std::numeric_limits<double>::infinity();
    std::vector<double> triple_witness;
    bool lemma_verdict = false;
    bool abscissa_verdict = false;
    double max_abscissa = -std::numeric_limits<double>::infinity();
    std::vector<double> abscissa_witness;
    bool strictly_stable = false;
    bool conclusive = true;
    unsigned flags = 0;
    std::vector<std::string> notes;
};

/// Direct check: max Re lambda over sampled xi = rho * omega is below -1e-10.
inline void abscissa_check(const OperatorStack& stack, const std::vector<Direction>& samples, StabilityReport& rep,
                           const std::vector<double>& radii = {0.1, 0.3, 1.0, 3.0, 10.0}) {
    const std::size_t stride = std::max<std::size_t>(1, samples.size() / 64);
    for (std::size_t i = 0; i < samples.size(); i += stride)
        for (double rho : radii) {
            auto xi = samples[i].scaled(rho);
            double a = spectral_abscissa(stack, xi);
            if (a > rep.max_abscissa) {
                rep.max_abscissa = a;
                rep.abscissa_witness = xi;
            }
        }
    rep.abscissa_verdict = rep.max_abscissa < -kAbscissaTol;
}

inline void finish_report(StabilityReport& rep) {
    rep.strictly_stable = rep.lemma_verdict && rep.abscissa_verdict;
    rep.conclusive = rep.lemma_verdict == rep.abscissa_verdict;
    for (const InterlacingClass* c : {&rep.top, &rep.lower})
        if (c->kind == Interlace::STRICT && c->margin < 10.0 * kInterlaceTol) rep.conclusive = false;
    if (!rep.conclusive) rep.notes.push_back("lemma route and abscissa check disagree or margin is within 10x tolerance");
}

/// Strict stability for Q = P_m + P_{m-1}.
inline StabilityReport stable_Q1(const OperatorStack& stack, const std::vector<Direction>& samples) {
    if (stack.depth() != 1) throw Error("stable_Q1 needs a stack of depth 1");
    StabilityReport rep;
    rep.route = "Q1";
    rep.m = stack.m();
    rep.depth = 1;
    for (int j = 0; j <= 1; ++j) rep.hyperbolicity.push_back(classify_hyperbolicity(stack.symbol(j), samples));
    bool hyp = rep.hyperbolicity[0].cls != Hyperbolicity::NONE && rep.hyperbolicity[1].cls != Hyperbolicity::NONE;
    if (hyp) {
        rep.top = interlacing_over(stack, 1, samples);
    } else {
        rep.top.kind = Interlace::FAIL;
        rep.top.detail = "non-real roots";
    }
    rep.lemma_verdict = rep.hyperbolicity[0].cls == Hyperbolicity::STRICT &&
                        rep.hyperbolicity[1].cls == Hyperbolicity::STRICT && rep.top.kind == Interlace::STRICT;
    abscissa_check(stack, samples, rep);
    finish_report(rep);
    return rep;
}

namespace detail {

inline double normalized_value(const Poly& p, double z) {
    double bound = 0.0, az = std::max(1.0, std::abs(z));
    for (int i = p.degree(); i >= 0; --i) bound = bound * az + std::abs(p.coeff(i));
    return bound == 0.0 ? 0.0 : std::abs(p(z)) / bound;
}

/// Scenario flags and triple-root measure at one direction (all three restrictions real-rooted).
inline void q2_structure(const OperatorStack& stack, const Direction& d, StabilityReport& rep) {
    Poly pm = stack.restrict(0, d), pm1 = stack.restrict(1, d), pm2 = stack.restrict(2, d);
    RealRoots a = real_roots(pm), b = real_roots(pm1), dd = real_roots(pm2);
    if (!a.all_real || !b.all_real || !dd.all_real) return;
    const double scale = std::max({a.scale, b.scale, dd.scale});
    const double tol = kRootMatchTol * scale;
    for (std::size_t i = 0; i < dd.values.size(); ++i) {
        if (dd.multiplicity(static_cast<int>(i)) > 1) rep.flags |= DECAY_LOSS;
        else if (nearest_root(b.values, dd.values[i]).second <= tol) rep.flags |= SLOW_LOW;
    }
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.multiplicity(static_cast<int>(i)) > 1) rep.flags |= DERIVATIVE_LOSS;
        else if (nearest_root(b.values, a.values[i]).second <= tol) rep.flags |= REG_LOSS_DECAY;
    }
    for (double z : b.values) {
        double v = std::max(normalized_value(pm, z), normalized_value(pm2, z));
        if (v < rep.triple_margin) {
            rep.triple_margin = v;
            rep.triple_witness = d.components();
        }
    }
}

}  // namespace detail

/// Hypothesis check for Q = P_m + P_{m-1} + P_{m-2}.
inline StabilityReport verify_hypothesis_Q2(const OperatorStack& stack, const std::vector<Direction>& samples) {
    if (stack.depth() != 2) throw Error("verify_hypothesis_Q2 needs a stack of depth 2");
    StabilityReport rep;
    rep.route = "Q2";
    rep.m = stack.m();
    rep.depth = 2;
    for (int j = 0; j <= 2; ++j) rep.hyperbolicity.push_back(classify_hyperbolicity(stack.symbol(j), samples));
    const auto& h = rep.hyperbolicity;
    bool real_rooted = h[0].cls != Hyperbolicity::NONE && h[1].cls != Hyperbolicity::NONE && h[2].cls != Hyperbolicity::NONE;
    if (real_rooted) {
        rep.top = interlacing_over(stack, 1, samples);
        rep.lower = interlacing_over(stack, 2, samples);
        for (const Direction& d : samples) detail::q2_structure(stack, d, rep);
    } else {
        rep.top.kind = rep.lower.kind = Interlace::FAIL;
        rep.top.detail = rep.lower.detail = "non-real roots";
    }
    rep.no_common_triple_root = rep.triple_margin > kTripleRootTol;
    rep.lemma_verdict = real_rooted && h[1].cls == Hyperbolicity::STRICT && rep.top.kind != Interlace::FAIL &&
                        rep.lower.kind != Interlace::FAIL && rep.no_common_triple_root;
    abscissa_check(stack, samples, rep);
    finish_report(rep);
    return rep;
}

/// Hermite-Biehler test at a real point xi != 0: O = P_{m-1} - P_{m-3} and E = P_m - P_{m-2} strictly interlace.
inline InterlacingClass hermite_biehler_class(const OperatorStack& stack, const std::vector<double>& xi) {
    Poly E = stack.at_real(0, xi) - stack.at_real(2, xi);
    Poly O = stack.at_real(1, xi) - stack.at_real(3, xi);
    InterlacingClass c;
    c.direction = xi;
    if (E.degree() != stack.m() || O.degree() != stack.m() - 1 || !(O.leading().real() > 0.0)) {
        c.kind = Interlace::FAIL;
        c.detail = "degree or leading-coefficient condition fails";
        return c;
    }
    try {
        c = classify_interlacing(O, E);
        c.direction = xi;
    } catch (const Error& e) {
        c.kind = Interlace::FAIL;
        c.margin = -std::numeric_limits<double>::infinity();
        c.detail = e.what();
    }
    return c;
}

inline bool hermite_biehler_stable(const OperatorStack& stack, const std::vector<double>& xi) {
    double nrm = 0.0;
    for (double x : xi) nrm += x * x;
    if (nrm == 0.0) throw Error("Hermite-Biehler test needs xi != 0");
    return hermite_biehler_class(stack, xi).kind == Interlace::STRICT;
}

/// Cubic z^3 + a2 z^2 + a1 z + a0 with positive coefficients is Hurwitz iff a0 < a1 a2.
inline bool routh_hurwitz_cubic(double a2, double a1, double a0) {
    if (!(a2 > 0.0 && a1 > 0.0 && a0 > 0.0)) throw Error("Routh-Hurwitz cubic test needs positive coefficients");
    return a0 < a1 * a2;
}

/// Sweep of the Hermite-Biehler test over radii x directions (any depth).
inline StabilityReport hermite_biehler_sweep(const OperatorStack& stack, const std::vector<Direction>& samples,
                                             const std::vector<double>& radii = log_grid(1e-3, 1e3, 4)) {
    StabilityReport rep;
    rep.route = "hermite_biehler";
    rep.m = stack.m();
    rep.depth = stack.depth();
    rep.top.margin = std::numeric_limits<double>::infinity();
    for (const Direction& d : samples)
        for (double rho : radii) {
            InterlacingClass c = hermite_biehler_class(stack, d.scaled(rho));
            if (static_cast<int>(c.kind) > static_cast<int>(rep.top.kind) ||
                (c.kind == rep.top.kind && c.margin < rep.top.margin))
                rep.top = c;
        }
    rep.lemma_verdict = rep.top.kind == Interlace::STRICT;
    abscissa_check(stack, samples, rep, radii);
    finish_report(rep);
    return rep;
}

/// Dispatch on depth: interlacing lemmas for depth 1 and 2, Hermite-Biehler sweep for depth 3.
inline StabilityReport classify(const OperatorStack& stack, const std::vector<Direction>& samples) {
    switch (stack.depth()) {
        case 1: return stable_Q1(stack, samples);
        case 2: return verify_hypothesis_Q2(stack, samples);
        default: return hermite_biehler_sweep(stack, samples);
    }
}

inline StabilityReport classify(const OperatorStack& stack) { return classify(stack, stack_directions(stack)); }

}  // namespace hyperdecay
