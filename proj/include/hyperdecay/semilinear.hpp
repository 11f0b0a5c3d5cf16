#pragma once

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>
#include <unsupported/Eigen/MatrixFunctions>

#include "hyperdecay/decay.hpp"
#include "hyperdecay/solver.hpp"

namespace hyperdecay {

/// Q(d_t, d_x) u = sign |d_t^nu u|^p on the periodic box [-L, L)^n, Q normalized to a monic time symbol.
struct SemilinearConfig {
    double p = 3.0;
    int sign = 1;
    int nu = 0;
    double L = 64.0;
    int N = 256;          // modes per axis
    double T = 50.0;
    double dt0 = 0.05;
    bool adaptive = true;  // halve dt when a step changes the state norm by more than 10%
    bool linear = false;   // drop the nonlinearity (linear twin)
    double growth_limit = 1e6;
    int max_halvings = 20;
};

struct SemilinearRun {
    SemilinearConfig cfg;
    int n = 1;
    double t = 0.0;
    double dt = 0.0;
    std::vector<std::vector<cplx>> state;  // state[j][mode] = d_t^j u_hat, Fourier-series coefficients
    std::vector<double> times, l2, linf;   // ||u||_{L^2}, ||d_t^nu u||_{L^inf}
    bool blowup_flag = false;
    double blowup_time = std::numeric_limits<double>::quiet_NaN();
    double boundary_ratio = 0.0;  // max over records of |u| on the box boundary / max |u|
    double initial_norm = 0.0;
    int steps = 0, halvings = 0;
    CriticalExponentReport critical;
    bool supercritical = false;

    std::string verdict() const {
        if (blowup_flag) {
            std::ostringstream os;
            os.precision(17);
            os << "blowup(" << blowup_time << ")";
            return os.str();
        }
        if (l2.size() >= 2 && l2.back() > l2.front()) return "growing";
        return "decaying";
    }
};

namespace detail {

struct FftwBuffer {
    fftw_complex* p = nullptr;
    explicit FftwBuffer(std::size_t n) : p(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!p) throw Error("fftw allocation failed");
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

struct FftwPlan {
    fftw_plan p = nullptr;
    ~FftwPlan() {
        if (p) fftw_destroy_plan(p);
    }
};

}  // namespace detail

/// Pseudospectral exponential integrator on a periodic box; n in {1, 2}.
class SemilinearSolver {
public:
    SemilinearSolver(OperatorStack stack, SemilinearConfig cfg) : st_(std::move(stack)), cfg_(cfg) {
        n_ = st_.dim();
        if (n_ != 1 && n_ != 2) throw Error("semilinear runs support n = 1 or n = 2");
        if (!(cfg_.p > 1.0)) throw Error("nonlinearity power p must exceed 1");
        if (cfg_.sign != 1 && cfg_.sign != -1) throw Error("sign must be +1 or -1");
        if (cfg_.nu < 0 || cfg_.nu >= st_.m()) throw Error("nu must index a state coordinate 0..m-1");
        if (cfg_.N < 8 || cfg_.N % 2) throw Error("mode count per axis must be even and at least 8");
        if (!(cfg_.L > 0.0) || !(cfg_.dt0 > 0.0) || !(cfg_.T >= 0.0)) throw Error("box size, dt0 and T must be positive");
        modes_ = n_ == 1 ? cfg_.N : cfg_.N * cfg_.N;
        buf_ = std::make_unique<detail::FftwBuffer>(modes_);
        if (n_ == 1) {
            fwd_.p = fftw_plan_dft_1d(cfg_.N, buf_->p, buf_->p, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd_.p = fftw_plan_dft_1d(cfg_.N, buf_->p, buf_->p, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            fwd_.p = fftw_plan_dft_2d(cfg_.N, cfg_.N, buf_->p, buf_->p, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd_.p = fftw_plan_dft_2d(cfg_.N, cfg_.N, buf_->p, buf_->p, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        xi_.resize(modes_);
        keep_.resize(modes_);
        const double k0 = M_PI / cfg_.L;
        auto wave = [&](int i) { return i < cfg_.N / 2 ? i : i - cfg_.N; };
        for (int idx = 0; idx < modes_; ++idx) {
            std::vector<int> ij = n_ == 1 ? std::vector<int>{idx} : std::vector<int>{idx / cfg_.N, idx % cfg_.N};
            std::vector<double> xi;
            bool keep = true;
            for (int a : ij) {
                int w = wave(a);
                xi.push_back(k0 * w);
                keep = keep && 3 * std::abs(w) <= cfg_.N;  // 2/3 rule
            }
            xi_[idx] = xi;
            keep_[idx] = keep;
        }
    }

    const OperatorStack& stack() const { return st_; }
    const SemilinearConfig& config() const { return cfg_; }
    int modes() const { return modes_; }
    const std::vector<double>& wavevector(int idx) const { return xi_[idx]; }
    double cell_volume() const { return std::pow(2.0 * cfg_.L, n_); }

    /// Fourier-series coefficients of the data: u_hat(xi_k) / (2L)^n.
    SemilinearRun initialize(const DataSpec& data) const {
        if (data.n != n_) throw Error("data dimension does not match the operator");
        if (static_cast<int>(data.u.size()) != st_.m()) throw Error("data must provide m profiles");
        SemilinearRun run;
        run.cfg = cfg_;
        run.n = n_;
        run.dt = cfg_.dt0;
        run.state.assign(st_.m(), std::vector<cplx>(modes_, 0.0));
        const double vol = cell_volume();
        for (int j = 0; j < st_.m(); ++j)
            for (int idx = 0; idx < modes_; ++idx) run.state[j][idx] = data.u[j].at(xi_[idx]) / vol;
        run.initial_norm = state_norm(run.state);
        run.critical = critical_exponent(st_.m(), st_.depth() >= 2 ? 1 : 0, cfg_.nu, n_);
        run.supercritical = run.critical.admissible && cfg_.p > run.critical.p_bar;
        return run;
    }

    /// Physical samples of sum_k c_k e^{i xi_k x} on the grid x_j = j h (periodic, origin at index 0).
    std::vector<double> physical(const std::vector<cplx>& coeffs) const {
        for (int i = 0; i < modes_; ++i) {
            buf_->p[i][0] = coeffs[i].real();
            buf_->p[i][1] = coeffs[i].imag();
        }
        fftw_execute(bwd_.p);
        std::vector<double> out(modes_);
        for (int i = 0; i < modes_; ++i) out[i] = buf_->p[i][0];
        return out;
    }

    std::vector<cplx> coefficients(const std::vector<double>& field) const {
        for (int i = 0; i < modes_; ++i) {
            buf_->p[i][0] = field[i];
            buf_->p[i][1] = 0.0;
        }
        fftw_execute(fwd_.p);
        std::vector<cplx> out(modes_);
        for (int i = 0; i < modes_; ++i) out[i] = cplx(buf_->p[i][0], buf_->p[i][1]) / static_cast<double>(modes_);
        return out;
    }

    double l2_norm(const std::vector<cplx>& c) const {
        std::vector<double> sq(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) sq[i] = std::norm(c[i]);
        return std::sqrt(cell_volume() * pairwise_sum(sq));
    }

    /// One exponential-Euler step: y <- Phi(dt) y + (int_0^dt Phi(s) ds e_{m-1}) f_hat(y).
    void step(SemilinearRun& run, double dt) const {
        if (run.blowup_flag) return;
        const int m = st_.m();
        const auto& prop = propagator(dt);
        std::vector<cplx> fhat(modes_, 0.0);
        if (!cfg_.linear) {
            std::vector<double> w = physical(run.state[cfg_.nu]);
            for (double& x : w) x = cfg_.sign * std::pow(std::abs(x), cfg_.p);
            fhat = coefficients(w);
            for (int i = 0; i < modes_; ++i)
                if (!keep_[i]) fhat[i] = 0.0;
        }
        std::vector<cplx> y(m);
        for (int idx = 0; idx < modes_; ++idx) {
            const cplx* P = &prop.phi[static_cast<std::size_t>(idx) * m * m];
            const cplx* W = &prop.w[static_cast<std::size_t>(idx) * m];
            for (int r = 0; r < m; ++r) {
                cplx acc = W[r] * fhat[idx];
                for (int c = 0; c < m; ++c) acc += P[r * m + c] * run.state[c][idx];
                y[r] = acc;
            }
            for (int r = 0; r < m; ++r) run.state[r][idx] = y[r];
        }
        run.t += dt;
        ++run.steps;
        if (!std::isfinite(state_norm(run.state))) flag_blowup(run);
    }

    /// Integrates to cfg.T, recording norms after every accepted step.
    SemilinearRun run(const DataSpec& data) const {
        SemilinearRun r = initialize(data);
        record(r);
        const double tend = cfg_.T;
        while (r.t < tend * (1 - 1e-14) && !r.blowup_flag) {
            double dt = std::min(r.dt, tend - r.t);
            SemilinearRun trial = r;
            step(trial, dt);
            if (!trial.blowup_flag && cfg_.adaptive) {
                double before = state_norm(r.state), after = state_norm(trial.state);
                if (before > 0.0 && std::abs(after - before) > 0.1 * before) {
                    if (r.halvings >= cfg_.max_halvings) {
                        flag_blowup(r);
                        break;
                    }
                    r.dt *= 0.5;
                    ++r.halvings;
                    continue;
                }
            }
            trial.dt = r.dt;
            trial.halvings = r.halvings;
            r = std::move(trial);
            if (r.blowup_flag) break;
            record(r);
            if (r.initial_norm > 0.0 && state_norm(r.state) > cfg_.growth_limit * r.initial_norm) flag_blowup(r);
        }
        return r;
    }

    double state_norm(const std::vector<std::vector<cplx>>& s) const {
        double acc = 0.0;
        for (const auto& comp : s) acc += std::pow(l2_norm(comp), 2);
        return std::sqrt(acc);
    }

private:
    struct Propagator {
        std::vector<cplx> phi, w;
    };

    const Propagator& propagator(double dt) const {
        auto it = cache_.find(dt);
        if (it != cache_.end()) return it->second;
        const int m = st_.m();
        Propagator P;
        P.phi.resize(static_cast<std::size_t>(modes_) * m * m);
        P.w.resize(static_cast<std::size_t>(modes_) * m);
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m + 1, m + 1);
        for (int idx = 0; idx < modes_; ++idx) {
            A.setZero();
            A.topLeftCorner(m, m) = detail::companion_matrix(full_symbol_at(st_, xi_[idx])) * cplx(dt);
            A(m - 1, m) = dt;
            Eigen::MatrixXcd E = A.exp();
            for (int r = 0; r < m; ++r) {
                for (int c = 0; c < m; ++c) P.phi[static_cast<std::size_t>(idx) * m * m + r * m + c] = E(r, c);
                P.w[static_cast<std::size_t>(idx) * m + r] = E(r, m);
            }
        }
        return cache_.emplace(dt, std::move(P)).first->second;
    }

    void record(SemilinearRun& r) const {
        std::vector<double> w = physical(r.state[cfg_.nu]);
        double mx = 0.0;
        for (double x : w) mx = std::max(mx, std::abs(x));
        std::vector<double> u = cfg_.nu == 0 ? w : physical(r.state[0]);
        double umax = 0.0, edge = 0.0;
        for (int i = 0; i < modes_; ++i) {
            umax = std::max(umax, std::abs(u[i]));
            bool boundary = false;
            if (n_ == 1) boundary = i == cfg_.N / 2;
            else boundary = i / cfg_.N == cfg_.N / 2 || i % cfg_.N == cfg_.N / 2;
            if (boundary) edge = std::max(edge, std::abs(u[i]));
        }
        if (umax > 0.0) r.boundary_ratio = std::max(r.boundary_ratio, edge / umax);
        r.times.push_back(r.t);
        r.l2.push_back(l2_norm(r.state[0]));
        r.linf.push_back(mx);
    }

    static void flag_blowup(SemilinearRun& r) {
        r.blowup_flag = true;
        r.blowup_time = r.t;
    }

    OperatorStack st_;
    SemilinearConfig cfg_;
    int n_ = 1, modes_ = 0;
    std::vector<std::vector<double>> xi_;
    std::vector<bool> keep_;
    std::unique_ptr<detail::FftwBuffer> buf_;
    detail::FftwPlan fwd_, bwd_;
    mutable std::map<double, Propagator> cache_;
};

inline SemilinearRun run_semilinear(const OperatorStack& st, const SemilinearConfig& cfg, const DataSpec& data) {
    return SemilinearSolver(st, cfg).run(data);
}

/// Log-log slope of the L^2 series over [tmin, T].
inline double semilinear_l2_slope(const SemilinearRun& r, double tmin) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < r.times.size(); ++i)
        if (r.times[i] >= tmin && r.l2[i] > 0.0) {
            x.push_back(r.times[i]);
            y.push_back(r.l2[i]);
        }
    if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return fit_loglog(x, y).slope;
}

}  // namespace hyperdecay
