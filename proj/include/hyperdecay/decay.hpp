#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hyperdecay/stability.hpp"

namespace hyperdecay {

enum class Structure { Q1, Q2 };

inline const char* to_string(Structure s) { return s == Structure::Q1 ? "Q1" : "Q2"; }

struct DecayQuery {
    int m = 0;
    int n = 1;
    double q = 1.0;
    double k = 0.0;
    double s = 0.0;
    Structure structure = Structure::Q1;
    unsigned flags = 0;
    bool moment_zero = false;
    double nu = 2.0;               // regularity traded for decay when the top interlacing is weak
    std::vector<bool> present;     // which data u_j are nonzero; empty = all
};

struct DecayPrediction {
    double exponent = 0.0;               // power of (1 + t); negative means decay
    std::vector<double> per_datum;       // exponent attached to u_j, j = 0..m-1
    bool constraint_ok = true;
    std::string violated;                // the failing inequality, if any
    double regularity_loss = 0.0;        // extra derivatives required on the data
    std::string regime;                  // which estimate was applied
    std::vector<std::string> requirements;
    std::vector<std::string> notes;
};

namespace detail {

inline std::string fmt_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

/// Checks "k+s >= thr if q = 2, n(1/q-1/2)+k+s > thr otherwise".
inline void check_constraint(DecayPrediction& p, const DecayQuery& Q, double thr) {
    const double K = Q.k + Q.s;
    if (Q.q == 2.0) {
        if (!(K >= thr)) {
            p.constraint_ok = false;
            p.violated = "k+s >= " + fmt_num(thr);
        }
    } else if (!(Q.n * (1.0 / Q.q - 0.5) + K > thr)) {
        p.constraint_ok = false;
        p.violated = "n(1/q-1/2)+k+s > " + fmt_num(thr);
    }
}

}  // namespace detail

/// Predicted decay of ||d_t^k u(t)||_{dot H^s} for data in L^q and Sobolev spaces.
inline DecayPrediction predict_decay(const DecayQuery& Q) {
    if (Q.m < 2) throw Error("decay prediction needs m >= 2");
    if (Q.n < 1) throw Error("space dimension must be positive");
    if (!(Q.q >= 1.0 && Q.q <= 2.0)) throw Error("q must lie in [1, 2]");
    if (Q.k < 0 || Q.s < 0) throw Error("k and s must be non-negative");
    if (!Q.present.empty() && static_cast<int>(Q.present.size()) != Q.m) throw Error("present mask must have m entries");
    const int m = Q.m;
    const double K = Q.k + Q.s;
    const double a = Q.n * 0.5 * (1.0 / Q.q - 0.5);
    const bool q2 = Q.structure == Structure::Q2;
    const bool slow = q2 && (Q.flags & SLOW_LOW), dloss = q2 && (Q.flags & DECAY_LOSS);
    const bool rloss = q2 && (Q.flags & REG_LOSS_DECAY), deriv = q2 && (Q.flags & DERIVATIVE_LOSS);
    if (!q2 && Q.flags) throw Error("degenerate interlacing flags only arise for two lower-order symbols");

    DecayPrediction p;
    p.per_datum.assign(m, 0.0);
    const int top_lo = q2 ? m - 3 : m - 2;  // first index of the slowest data group
    std::vector<double> eta(m);
    if (Q.moment_zero && Q.q == 1.0 && !slow && !dloss) {
        p.regime = "zero_moment";
        const double base = Q.n / 4.0;
        for (int j = 0; j < m; ++j) eta[j] = base + (j >= top_lo ? (K - (top_lo - 1)) / 2.0 : (K - j) / 2.0);
        if (!(Q.n / 2.0 + K > top_lo - 1)) {
            p.constraint_ok = false;
            p.violated = "n/2+k+s > " + std::to_string(top_lo - 1);
        }
        p.requirements.push_back("u_j in L^{1,1} for j >= " + std::to_string(top_lo) + ", L^1 otherwise");
    } else {
        if (Q.moment_zero) p.notes.push_back("zero-moment improvement needs q = 1 and strict lower interlacing; ignored");
        if (!q2) {
            p.regime = "strict_q1";
            for (int j = 0; j < m; ++j) eta[j] = a + (j >= top_lo ? (K - (m - 2)) / 2.0 : (K - j) / 2.0);
        } else if (!slow && !dloss) {
            p.regime = "strict_q2";
            for (int j = 0; j < m; ++j) eta[j] = a + (j >= top_lo ? (K - (m - 3)) / 2.0 : (K - j) / 2.0);
        } else if (slow && !dloss) {
            p.regime = "slow_low";
            for (int j = 0; j < m; ++j) eta[j] = a / 2.0 + (j >= top_lo ? (K - (m - 3)) / 4.0 : (K - j) / 4.0);
        } else if (dloss && !slow) {
            p.regime = "decay_loss";
            for (int j = 0; j < m; ++j) eta[j] = a + (j >= top_lo ? (K - (m - 2)) / 2.0 : (K - j - 1) / 2.0);
        } else {
            p.regime = "weak_low_worst";
            for (int j = 0; j < m; ++j)
                eta[j] = j >= top_lo ? std::min(a / 2.0 + (K - (m - 3)) / 4.0, a + (K - (m - 2)) / 2.0)
                                     : a / 2.0 + (K - j) / 4.0;
        }
        detail::check_constraint(p, Q, q2 ? m - 3 : m - 2);
        if (slow || dloss) p.requirements.push_back("Fourier transforms of the data compactly supported");
        p.requirements.push_back("u_j in L^q with q = " + detail::fmt_num(Q.q));
    }

    if (rloss) {
        double nu = Q.nu;
        if (deriv && nu < 1.0) {
            p.notes.push_back("weakly hyperbolic principal part forces nu >= 1");
            nu = 1.0;
        }
        if (nu < 0.0) throw Error("nu must be non-negative");
        p.regularity_loss = nu;
        for (int j = 0; j < m; ++j) eta[j] = std::min(eta[j], nu / 2.0);
        p.regime += "+regularity_loss_decay";
        p.requirements.push_back("u_j in H^{k+s+" + detail::fmt_num(nu) + "-j}");
    } else if (deriv) {
        p.regularity_loss = 1.0;
        p.regime += "+derivative_loss";
        p.requirements.push_back("u_j in H^{k+s+1-j}");
    } else {
        p.requirements.push_back("u_j in H^{k+s-j}");
    }

    p.exponent = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
        p.per_datum[j] = -eta[j];
        if (Q.present.empty() || Q.present[j]) p.exponent = std::max(p.exponent, p.per_datum[j]);
    }
    return p;
}

/// Convenience: structure and flags taken from a stability report.
inline DecayPrediction predict_decay(const StabilityReport& rep, int n, double q, double k, double s,
                                     bool moment_zero = false, double nu = 2.0, std::vector<bool> present = {}) {
    if (!rep.strictly_stable) throw Error("decay prediction needs a strictly stable operator");
    if (rep.depth > 2) throw Error("decay prediction is available for one or two lower-order symbols");
    DecayQuery Q;
    Q.m = rep.m;
    Q.n = n;
    Q.q = q;
    Q.k = k;
    Q.s = s;
    Q.structure = rep.depth == 1 ? Structure::Q1 : Structure::Q2;
    Q.flags = rep.flags;
    Q.moment_zero = moment_zero;
    Q.nu = nu;
    Q.present = std::move(present);
    return predict_decay(Q);
}

struct CriticalExponentReport {
    double p_bar = std::numeric_limits<double>::quiet_NaN();
    int n_min = 0;  // admissible dimensions n_min..n_max
    int n_max = 0;
    bool admissible = false;
    int iota = 0;
    int nu = 0;
};

/// Critical power for global small-data solutions of Q u = f(D^alpha u), |alpha| = nu.
inline CriticalExponentReport critical_exponent(int m, int iota, int nu, int n) {
    if (iota != 0 && iota != 1) throw Error("iota must be 0 or 1");
    if (nu < 0 || nu > m - 2) throw Error("nu must satisfy 0 <= nu <= m-2");
    if (n < 1) throw Error("space dimension must be positive");
    CriticalExponentReport r;
    r.iota = iota;
    r.nu = nu;
    const int lo = m - 2 - iota - nu;
    r.n_min = lo + 1;
    r.n_max = 2 * (m - 1 - iota - nu);
    r.admissible = n >= r.n_min && n <= r.n_max;
    if (n - lo > 0) r.p_bar = 1.0 + static_cast<double>(m - iota - nu) / (n - lo);
    return r;
}

}  // namespace hyperdecay
