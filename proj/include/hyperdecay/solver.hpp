#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdecay/fit.hpp"
#include "hyperdecay/roots.hpp"
#include "hyperdecay/sphere.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

/// Below this relative root gap the propagator switches to the companion exponential.
inline constexpr double kConfluenceGap = 1e-5;

/// Fourier profile of one initial datum; u_hat(xi) = int e^{-i x.xi} u(x) dx.
struct DataProfile {
    enum Kind { ZERO, GAUSSIAN, RING, GRID };
    Kind kind = ZERO;
    double amplitude = 1.0;
    double width = 1.0;  // gaussian: physical width w
    double r0 = 0.0;     // ring centre in |xi|
    double sigma = 1.0;  // ring width in |xi|
    std::vector<double> grid_rho, grid_values;  // ascending rho; constant below, zero above

    static DataProfile zero() { return {}; }
    static DataProfile gaussian(double a, double w) {
        DataProfile p;
        p.kind = GAUSSIAN;
        p.amplitude = a;
        p.width = w;
        return p;
    }
    static DataProfile ring(double a, double r0, double sigma) {
        DataProfile p;
        p.kind = RING;
        p.amplitude = a;
        p.r0 = r0;
        p.sigma = sigma;
        return p;
    }
    static DataProfile grid(std::vector<double> rho, std::vector<double> values) {
        if (rho.size() != values.size() || rho.size() < 2) throw Error("grid profile needs matching rho/value arrays");
        for (std::size_t i = 0; i < rho.size(); ++i)
            if (!(rho[i] > 0.0) || (i && rho[i] <= rho[i - 1])) throw Error("grid profile rho must be positive and increasing");
        DataProfile p;
        p.kind = GRID;
        p.grid_rho = std::move(rho);
        p.grid_values = std::move(values);
        return p;
    }

    bool is_zero() const { return kind == ZERO || amplitude == 0.0; }

    /// Value at radius rho for spatial dimension n.
    double radial(double rho, int n) const {
        switch (kind) {
            case ZERO: return 0.0;
            case GAUSSIAN:
                return amplitude * std::pow(2.0 * M_PI, 0.5 * n) * std::pow(width, n) *
                       std::exp(-0.5 * width * width * rho * rho);
            case RING: return amplitude * std::exp(-(rho - r0) * (rho - r0) / (2.0 * sigma * sigma));
            case GRID: {
                if (rho <= grid_rho.front()) return grid_values.front();
                if (rho >= grid_rho.back()) return rho == grid_rho.back() ? grid_values.back() : 0.0;
                auto it = std::upper_bound(grid_rho.begin(), grid_rho.end(), rho);
                std::size_t i = it - grid_rho.begin();
                double w = std::log(rho / grid_rho[i - 1]) / std::log(grid_rho[i] / grid_rho[i - 1]);
                return (1.0 - w) * grid_values[i - 1] + w * grid_values[i];
            }
        }
        return 0.0;
    }

    double at(const std::vector<double>& xi) const {
        double r2 = 0.0;
        for (double x : xi) r2 += x * x;
        return radial(std::sqrt(r2), static_cast<int>(xi.size()));
    }
};

/// Initial data u_0, ..., u_{m-1} on R^n.
struct DataSpec {
    int n = 1;
    std::vector<DataProfile> u;

    bool is_zero() const {
        for (const auto& p : u)
            if (!p.is_zero()) return false;
        return true;
    }

    std::vector<cplx> at(const std::vector<double>& xi) const {
        std::vector<cplx> v;
        for (const auto& p : u) v.emplace_back(p.at(xi));
        return v;
    }
};

/// Only u_{m-1} nonzero.
inline DataSpec top_datum(int m, int n, DataProfile p) {
    DataSpec d;
    d.n = n;
    d.u.assign(m, DataProfile::zero());
    d.u.back() = std::move(p);
    return d;
}

namespace detail {

inline void check_data(const OperatorStack& stack, const std::vector<cplx>& data) {
    if (static_cast<int>(data.size()) != stack.m()) throw Error("propagation needs exactly m initial values");
}

/// e_r of the roots with index `skip` removed.
inline cplx elementary_symmetric(const std::vector<cplx>& r, int skip, int order) {
    std::vector<cplx> e(order + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < static_cast<int>(r.size()); ++i) {
        if (i == skip) continue;
        for (int q = order; q >= 1; --q) e[q] += e[q - 1] * r[i];
    }
    return e[order];
}

inline Eigen::MatrixXcd companion_matrix(const Poly& q) {
    const int m = q.degree();
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) C(i, i + 1) = 1.0;
    for (int j = 0; j < m; ++j) C(m - 1, j) = -q.coeff(j) / q.leading();
    return C;
}

}  // namespace detail

/// Coefficients c_j with u_hat(t) = sum_j c_j e^{lambda_j t}; inverse Vandermonde via
/// elementary symmetric polynomials of the deleted root sets.
inline std::vector<cplx> lagrange_coefficients(const std::vector<cplx>& lam, const std::vector<cplx>& data) {
    const int m = static_cast<int>(lam.size());
    std::vector<cplx> c(m, 0.0);
    for (int j = 0; j < m; ++j) {
        cplx denom = 1.0;
        for (int k = 0; k < m; ++k)
            if (k != j) denom *= lam[j] - lam[k];
        cplx acc = 0.0;
        for (int l = 0; l < m; ++l) {
            cplx e = detail::elementary_symmetric(lam, j, m - 1 - l);
            acc += ((m - 1 - l) % 2 ? -1.0 : 1.0) * e * data[l];
        }
        c[j] = acc / denom;
    }
    return c;
}

inline cplx lagrange_eval(const std::vector<cplx>& lam, const std::vector<cplx>& c, double t, int k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < lam.size(); ++j) acc += c[j] * std::pow(lam[j], k) * std::exp(lam[j] * t);
    return acc;
}

/// d^k/dt^k of the state's first coordinate after exp(C t).
inline cplx companion_eval(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& y0, double t, int k) {
    Eigen::MatrixXcd Ct = C * cplx(t);
    Eigen::VectorXcd y = Ct.exp() * y0;
    const int m = static_cast<int>(C.rows());
    if (k < m) return y(k);
    for (int i = m - 1; i < k; ++i) y = C * y;
    return y(m - 1);
}

/// Root-representation route; undefined at confluent roots.
inline cplx propagate_lagrange(const OperatorStack& stack, const std::vector<double>& xi, const std::vector<cplx>& data,
                               double t, int k) {
    detail::check_data(stack, data);
    std::vector<cplx> lam = roots(full_symbol_at(stack, xi));
    return lagrange_eval(lam, lagrange_coefficients(lam, data), t, k);
}

/// Fundamental-solution route through the companion system exponential.
inline cplx propagate_companion(const OperatorStack& stack, const std::vector<double>& xi,
                                const std::vector<cplx>& data, double t, int k) {
    detail::check_data(stack, data);
    Eigen::VectorXcd y0(stack.m());
    for (int i = 0; i < stack.m(); ++i) y0(i) = data[i];
    return companion_eval(detail::companion_matrix(full_symbol_at(stack, xi)), y0, t, k);
}

/// d_t^k u_hat(t, xi) for the Cauchy problem with d_t^j u_hat(0) = data[j].
inline cplx propagate_mode(const OperatorStack& stack, const std::vector<double>& xi, const std::vector<cplx>& data,
                           double t, int k) {
    if (t < 0.0) throw Error("propagation needs t >= 0");
    if (k < 0) throw Error("derivative order must be non-negative");
    detail::check_data(stack, data);
    Poly q = full_symbol_at(stack, xi);
    std::vector<cplx> lam = roots(q);
    if (min_pairwise_gap(lam) < kConfluenceGap * (1.0 + max_modulus(lam))) return propagate_companion(stack, xi, data, t, k);
    return lagrange_eval(lam, lagrange_coefficients(lam, data), t, k);
}

/// Precomputed per-mode propagator for fixed data; reused across times.
class ModeKernel {
public:
    ModeKernel(const OperatorStack& stack, const std::vector<double>& xi, const std::vector<cplx>& data) {
        detail::check_data(stack, data);
        zero_ = std::all_of(data.begin(), data.end(), [](cplx z) { return z == cplx(0.0); });
        if (zero_) return;
        Poly q = full_symbol_at(stack, xi);
        lam_ = roots(q);
        companion_ = min_pairwise_gap(lam_) < kConfluenceGap * (1.0 + max_modulus(lam_));
        if (companion_) {
            C_ = detail::companion_matrix(q);
            y0_.resize(stack.m());
            for (int i = 0; i < stack.m(); ++i) y0_(i) = data[i];
        } else {
            c_ = lagrange_coefficients(lam_, data);
        }
    }

    cplx operator()(double t, int k) const {
        if (zero_) return 0.0;
        return companion_ ? companion_eval(C_, y0_, t, k) : lagrange_eval(lam_, c_, t, k);
    }

    bool uses_companion() const { return companion_; }
    const std::vector<cplx>& eigenvalues() const { return lam_; }

private:
    bool zero_ = false;
    bool companion_ = false;
    std::vector<cplx> lam_, c_;
    Eigen::MatrixXcd C_;
    Eigen::VectorXcd y0_;
};

/// Radial log grid times a direction lattice with equal sphere weights.
struct SpectralGrid {
    int n = 1;
    std::vector<double> rho;
    std::vector<Direction> dirs;
    double sphere_weight = 1.0;  // area(S^{n-1}) / #dirs

    std::vector<double> point(std::size_t d, std::size_t i) const { return dirs[d].scaled(rho[i]); }
};

/// Default density: 4096 points over six decades.
inline constexpr double kRadialPerDecade = 4095.0 / 6.0;

inline SpectralGrid make_grid(const OperatorStack& stack, double rho_min, double rho_max,
                              double per_decade = kRadialPerDecade) {
    if (!(rho_min > 0.0 && rho_max > rho_min)) throw Error("radial grid needs 0 < rho_min < rho_max");
    SpectralGrid g;
    g.n = stack.dim();
    int npts = std::max(16, static_cast<int>(std::lround(std::log10(rho_max / rho_min) * per_decade)) + 1);
    g.rho = log_grid_n(rho_min, rho_max, npts);
    g.dirs = stack_directions(stack);
    g.sphere_weight = sphere_area(g.n) / static_cast<double>(g.dirs.size());
    return g;
}

/// Mode values on a grid: values[d][i].
struct Snapshot {
    std::vector<std::vector<cplx>> values;
};

/// Homogeneous Sobolev norm || |xi|^s f_hat ||_{L^2} by log-trapezoid in rho and an equal-weight sphere sum.
/// Throws when either end octave carries more than 1e-6 of the integral.
inline double sobolev_norm(const SpectralGrid& g, const Snapshot& snap, double s) {
    const std::size_t N = g.rho.size();
    if (N < 2) throw Error("sobolev norm needs at least two radial points");
    if (snap.values.size() != g.dirs.size()) throw Error("snapshot does not match the direction lattice");
    std::vector<double> seg(N - 1, 0.0);
    for (std::size_t d = 0; d < g.dirs.size(); ++d) {
        if (snap.values[d].size() != N) throw Error("snapshot does not match the radial grid");
        for (std::size_t i = 0; i + 1 < N; ++i) {
            auto f = [&](std::size_t j) {
                return std::pow(g.rho[j], 2.0 * s + g.n) * std::norm(snap.values[d][j]);
            };
            seg[i] += 0.5 * (f(i) + f(i + 1)) * std::log(g.rho[i + 1] / g.rho[i]) * g.sphere_weight;
        }
    }
    const double total = pairwise_sum(seg);
    if (total == 0.0) return 0.0;
    if (!std::isfinite(total)) throw Error("sobolev norm is not finite");
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (g.rho[i + 1] <= 2.0 * g.rho.front()) lo += seg[i];
        if (g.rho[i] >= 0.5 * g.rho.back()) hi += seg[i];
    }
    if (lo > 1e-6 * total || hi > 1e-6 * total) {
        std::ostringstream os;
        os << "truncation tail too large (low octave " << lo / total << ", high octave " << hi / total
           << " of the integral); extend the radial grid";
        throw Error(os.str());
    }
    return std::sqrt(total);
}

/// Norm values over time plus a log-log slope fit.
struct NormTimeSeries {
    std::vector<double> times, values;
    int k = 0;
    double s = 0.0;
    double fitted_slope = std::numeric_limits<double>::quiet_NaN();
    double slope_stderr = std::numeric_limits<double>::quiet_NaN();
    double fit_tmin = 0.0, fit_tmax = 0.0;
    bool slope_defined = false;
    bool underflow = false;  // series truncated at a value below 1e-300
    int fit_points = 0;
};

/// Fits over [tmin, tmax]; tmin <= 0 selects the last `decades` of the series.
inline void fit_series(NormTimeSeries& ts, double tmin = 0.0, double tmax = 0.0, double decades = 1.5) {
    if (ts.times.empty()) return;
    if (tmax <= 0.0) tmax = ts.times.back();
    if (tmin <= 0.0) tmin = tmax * std::pow(10.0, -decades);
    ts.fit_tmin = tmin;
    ts.fit_tmax = tmax;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ts.times.size(); ++i) {
        if (ts.times[i] < tmin * (1 - 1e-12) || ts.times[i] > tmax * (1 + 1e-12)) continue;
        if (!(ts.values[i] > 0.0)) continue;
        x.push_back(ts.times[i]);
        y.push_back(ts.values[i]);
    }
    ts.fit_points = static_cast<int>(x.size());
    ts.slope_defined = x.size() >= 2;
    if (!ts.slope_defined) return;
    LineFit f = fit_loglog(x, y);
    ts.fitted_slope = f.slope;
    ts.slope_stderr = f.slope_stderr;
}

struct SimulationOptions {
    double rho_min = 0.0;  // 0: min(1e-4, 1e-2 / t_max)
    double rho_max = 1e2;
    double per_decade = kRadialPerDecade;
    double fit_decades = 1.5;
    double fit_tmin = 0.0, fit_tmax = 0.0;
};

inline SpectralGrid simulation_grid(const OperatorStack& stack, const std::vector<double>& times,
                                    const SimulationOptions& opt = {}) {
    double tmax = times.empty() ? 1.0 : *std::max_element(times.begin(), times.end());
    double rmin = opt.rho_min > 0.0 ? opt.rho_min : std::min(1e-4, 1e-2 / std::max(tmax, 1e-300));
    return make_grid(stack, rmin, opt.rho_max, opt.per_decade);
}

/// Per-mode kernels for every grid point.
inline std::vector<std::vector<ModeKernel>> build_kernels(const OperatorStack& stack, const SpectralGrid& g,
                                                          const DataSpec& data) {
    if (data.n != stack.dim()) throw Error("data dimension does not match the operator");
    if (static_cast<int>(data.u.size()) != stack.m()) throw Error("data must provide m profiles");
    std::vector<std::vector<ModeKernel>> K(g.dirs.size());
    for (std::size_t d = 0; d < g.dirs.size(); ++d) {
        K[d].reserve(g.rho.size());
        for (std::size_t i = 0; i < g.rho.size(); ++i) {
            auto xi = g.point(d, i);
            K[d].emplace_back(stack, xi, data.at(xi));
        }
    }
    return K;
}

inline Snapshot evaluate(const std::vector<std::vector<ModeKernel>>& K, double t, int k) {
    Snapshot s;
    s.values.resize(K.size());
    for (std::size_t d = 0; d < K.size(); ++d) {
        s.values[d].reserve(K[d].size());
        for (const auto& mk : K[d]) s.values[d].push_back(mk(t, k));
    }
    return s;
}

/// ||d_t^k u(t)||_{H^s dot} over the given times with a slope fit.
inline NormTimeSeries simulate(const OperatorStack& stack, const DataSpec& data, const std::vector<double>& times,
                               int k, double s, const SimulationOptions& opt = {}) {
    for (double t : times)
        if (t < 0.0) throw Error("simulation times must be non-negative");
    NormTimeSeries ts;
    ts.k = k;
    ts.s = s;
    if (data.is_zero()) {
        ts.times = times;
        ts.values.assign(times.size(), 0.0);
        return ts;
    }
    SpectralGrid g = simulation_grid(stack, times, opt);
    auto K = build_kernels(stack, g, data);
    for (double t : times) {
        double v = sobolev_norm(g, evaluate(K, t, k), s);
        if (v < 1e-300) {
            ts.underflow = true;
            break;
        }
        ts.times.push_back(t);
        ts.values.push_back(v);
    }
    fit_series(ts, opt.fit_tmin, opt.fit_tmax, opt.fit_decades);
    return ts;
}

}  // namespace hyperdecay
