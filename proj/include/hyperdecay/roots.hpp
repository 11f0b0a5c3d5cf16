#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hyperdecay/poly.hpp"
#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

inline constexpr double kRealTol = 1e-8;

inline bool is_real_root(cplx z) { return std::abs(z.imag()) <= kRealTol * (1.0 + std::abs(z)); }

inline double min_pairwise_gap(const std::vector<cplx>& r) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) g = std::min(g, std::abs(r[i] - r[j]));
    return g;
}

inline double max_modulus(const std::vector<cplx>& r) {
    double m = 0.0;
    for (const cplx& z : r) m = std::max(m, std::abs(z));
    return m;
}

namespace detail {

inline void sort_roots(std::vector<cplx>& r) {
    std::sort(r.begin(), r.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

/// Eigenvalues of the companion matrix of a monic polynomial (coefficients ascending, leading dropped).
inline std::vector<cplx> companion_eigenvalues(const std::vector<cplx>& monic, bool real) {
    const int d = static_cast<int>(monic.size());
    std::vector<cplx> out;
    if (real) {
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
        for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) C(i, d - 1) = -monic[i].real();
        Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
        if (es.info() != Eigen::Success) throw Error("companion eigenvalue solver failed");
        for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
    } else {
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) C(i, d - 1) = -monic[i];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
        if (es.info() != Eigen::Success) throw Error("companion eigenvalue solver failed");
        for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
    }
    return out;
}

/// Simultaneous (Gauss-Seidel) Aberth-Ehrlich refinement.
inline void aberth_refine(const Poly& p, std::vector<cplx>& z, int max_sweeps = 100) {
    const Poly dp = p.derivative();
    const int d = static_cast<int>(z.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool moved = false;
        for (int i = 0; i < d; ++i) {
            cplx pv = p(z[i]);
            if (std::abs(pv) <= eps * p.magnitude_bound(z[i])) continue;
            cplx dv = dp(z[i]);
            cplx s = 0.0;
            for (int k = 0; k < d; ++k)
                if (k != i && z[k] != z[i]) s += 1.0 / (z[i] - z[k]);
            cplx ratio = (dv == cplx(0.0)) ? cplx(0.0) : pv / dv;
            cplx denom = 1.0 - ratio * s;
            cplx w = (denom == cplx(0.0) || ratio == cplx(0.0)) ? ratio : ratio / denom;
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || w == cplx(0.0)) continue;
            if (std::abs(w) > 4.0 * eps * std::abs(z[i])) moved = true;
            z[i] -= w;
        }
        if (!moved) break;
    }
}

}  // namespace detail

/// All roots with multiplicity, sorted by (Re, Im).
inline std::vector<cplx> roots(const Poly& p) {
    if (p.is_zero()) throw Error("roots of the zero polynomial are undefined");
    if (p.degree() < 1) throw Error("roots need degree >= 1");
    const auto& c = p.coeffs();
    std::vector<cplx> out;
    int z0 = 0;
    while (c[z0] == cplx(0.0)) ++z0;
    for (int i = 0; i < z0; ++i) out.emplace_back(0.0, 0.0);
    std::vector<cplx> rc(c.begin() + z0, c.end());
    Poly q(rc);
    const int d = q.degree();
    if (d == 1) {
        out.push_back(-rc[0] / rc[1]);
    } else if (d >= 2) {
        // Rescale lambda = s z so that the monic coefficients are O(1).
        const cplx lead = rc[d];
        double s = 0.0;
        for (int k = 0; k < d; ++k)
            if (rc[k] != cplx(0.0)) s = std::max(s, std::pow(std::abs(rc[k] / lead), 1.0 / (d - k)));
        if (s == 0.0) s = 1.0;
        std::vector<cplx> monic(d);
        for (int k = 0; k < d; ++k) monic[k] = rc[k] / lead / std::pow(s, d - k);
        const bool real = q.has_real_coeffs();
        std::vector<cplx> z = detail::companion_eigenvalues(monic, real);
        std::vector<cplx> mc(monic);
        mc.push_back(1.0);
        Poly scaled(mc);
        detail::aberth_refine(scaled, z);
        for (cplx& w : z) w *= s;
        detail::aberth_refine(q, z, 3);
        // Conjugate-symmetric starts cannot split a real pair; retry from a deterministically rotated start.
        bool ok = true;
        for (const cplx& w : z) ok = ok && std::abs(q(w)) <= 1e-10 * q.magnitude_bound(w);
        if (!ok) {
            for (int k = 0; k < d; ++k) z[k] += 1e-3 * (std::abs(z[k]) + 1e-300) * std::polar(1.0, 0.7 + 2.1 * k);
            detail::aberth_refine(q, z);
        }
        for (const cplx& w : z) out.push_back(w);
    }
    for (const cplx& w : out) {
        double res = std::abs(p(w)), bound = p.magnitude_bound(w);
        if (res > 1e-10 * bound) {
            std::ostringstream os;
            os << "root refinement failed: residual " << res << " exceeds 1e-10 * " << bound;
            throw Error(os.str());
        }
    }
    detail::sort_roots(out);
    return out;
}

/// Group of roots within a common radius.
struct RootCluster {
    std::vector<int> indices;
    cplx center;
    double radius;
};

/// Single-linkage clusters of roots closer than tol; singletons omitted.
inline std::vector<RootCluster> clusters(const std::vector<cplx>& r, double tol) {
    const int n = static_cast<int>(r.size());
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    auto find = [&](int i) {
        while (label[i] != i) i = label[i] = label[label[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(r[i] - r[j]) < tol) label[find(i)] = find(j);
    std::vector<RootCluster> out;
    std::vector<bool> done(n, false);
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (done[root]) continue;
        RootCluster cl;
        for (int j = 0; j < n; ++j)
            if (find(j) == root) cl.indices.push_back(j);
        done[root] = true;
        if (cl.indices.size() < 2) continue;
        cl.center = 0.0;
        for (int j : cl.indices) cl.center += r[j];
        cl.center /= static_cast<double>(cl.indices.size());
        cl.radius = 0.0;
        for (int j : cl.indices) cl.radius = std::max(cl.radius, std::abs(r[j] - cl.center));
        out.push_back(cl);
    }
    return out;
}

/// Minimum-cost perfect assignment (Hungarian method). Returns col[row].
inline std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> col(n);
    for (int j = 1; j <= n; ++j) col[p[j] - 1] = j - 1;
    return col;
}

/// Reorders `next` so that next[j] continues prev[j] with minimum total movement.
inline std::vector<cplx> match_roots(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
    const std::size_t n = prev.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(prev[i] - next[j]);
    auto col = min_cost_assignment(cost);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = next[col[i]];
    return out;
}

struct ClusterEvent {
    double rho;
    std::vector<int> indices;
    double gap;
};

/// Root curves lambda_j(rho xi') along a ray.
struct RootBranchSet {
    std::vector<double> direction;
    std::vector<double> rho;
    std::vector<std::vector<cplx>> branches;  // [branch][grid index]
    std::vector<ClusterEvent> cluster_events;

    int size() const { return static_cast<int>(branches.size()); }
    std::vector<cplx> at(std::size_t i) const {
        std::vector<cplx> r;
        for (const auto& b : branches) r.push_back(b[i]);
        return r;
    }
};

inline std::vector<double> log_grid(double a, double b, int per_decade) {
    if (!(a > 0.0 && b > a)) throw Error("log grid needs 0 < a < b");
    int n = std::max(2, static_cast<int>(std::lround(std::log10(b / a) * per_decade)) + 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    g.back() = b;
    return g;
}

inline std::vector<double> log_grid_n(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

namespace detail {

inline double cluster_threshold(const std::vector<cplx>& r) { return 1e-6 * (1.0 + max_modulus(r)); }

struct Tracker {
    const OperatorStack& stack;
    const Direction& d;
    RootBranchSet& out;

    std::vector<cplx> roots_at(double rho) const { return roots(full_symbol_at(stack, d.scaled(rho))); }

    void log_cluster(double rho, const std::vector<cplx>& r) {
        double thr = cluster_threshold(r);
        for (const auto& cl : clusters(r, thr)) {
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < cl.indices.size(); ++a)
                for (std::size_t b = a + 1; b < cl.indices.size(); ++b)
                    gap = std::min(gap, std::abs(r[cl.indices[a]] - r[cl.indices[b]]));
            out.cluster_events.push_back({rho, cl.indices, gap});
        }
    }

    /// Golden-section search for a collision inside [a, b]; returns (rho*, gap).
    std::pair<double, double> find_collision(double a, double b) const {
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = min_pairwise_gap(roots_at(x1)), f2 = min_pairwise_gap(roots_at(x2));
        for (int it = 0; it < 160 && (b - a) > 1e-15 * b; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = min_pairwise_gap(roots_at(x1));
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = min_pairwise_gap(roots_at(x2));
            }
        }
        return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
    }

    /// Smallest gap among pairs not closer than thr.
    static double resolved_gap(const std::vector<cplx>& r, double thr) {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i + 1; j < r.size(); ++j) {
                double d = std::abs(r[i] - r[j]);
                if (d >= thr) g = std::min(g, d);
            }
        return g;
    }

    /// True when every root moving more than `limit` stays far from the roots that do not; the
    /// assignment is then unambiguous up to relabeling inside the fast group (square-root branch points).
    static bool isolated_motion(const std::vector<cplx>& prev, const std::vector<cplx>& next, double limit) {
        std::vector<bool> fast(prev.size());
        double move = 0.0;
        for (std::size_t j = 0; j < prev.size(); ++j) {
            double mv = std::abs(next[j] - prev[j]);
            fast[j] = mv > limit;
            if (fast[j]) move = std::max(move, mv);
        }
        for (std::size_t j = 0; j < prev.size(); ++j)
            for (std::size_t k = 0; k < prev.size(); ++k) {
                if (!fast[j] || fast[k]) continue;
                for (const cplx& a : {prev[j], next[j]})
                    for (const cplx& b : {prev[k], next[k]})
                        if (std::abs(a - b) < 4.0 * move) return false;
            }
        return true;
    }

    /// Advances from (ra, prev) to rb; returns matched roots at rb.
    std::vector<cplx> step(double ra, const std::vector<cplx>& prev, double rb, int depth) {
        std::vector<cplx> next = match_roots(prev, roots_at(rb));
        double move = 0.0;
        for (std::size_t j = 0; j < prev.size(); ++j) move = std::max(move, std::abs(next[j] - prev[j]));
        double gap = min_pairwise_gap(prev);
        if (prev.size() < 2 || move <= 0.25 * gap) return next;
        // Roots inside a cluster cannot be separated by refining; measure against the gaps between clusters.
        const double thr = cluster_threshold(prev);
        if (gap < thr && move <= 0.25 * resolved_gap(prev, thr)) return next;
        if (depth < 20) {
            double mid = std::sqrt(ra * rb);
            std::vector<cplx> half = step(ra, prev, mid, depth + 1);
            return step(mid, half, rb, depth + 1);
        }
        auto [rc, gc] = find_collision(ra, rb);
        std::vector<cplx> at_c = roots_at(rc);
        if (gc < cluster_threshold(at_c)) {
            log_cluster(rc, at_c);
            return next;
        }
        if (gap < cluster_threshold(prev)) {
            log_cluster(ra, prev);
            return next;
        }
        if (isolated_motion(prev, next, 0.25 * gap)) return next;
        std::ostringstream os;
        os.precision(17);
        os << "branch tracking bisection limit exceeded on [" << ra << ", " << rb << "]";
        throw Error(os.str());
    }
};

}  // namespace detail

/// Continuation of the roots of Q(lambda, i rho xi') over an ascending grid of radii.
inline RootBranchSet track_branches(const OperatorStack& stack, const Direction& d, const std::vector<double>& rho_grid) {
    if (rho_grid.empty()) throw Error("empty radial grid");
    for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        if (!(rho_grid[i] > 0.0)) throw Error("radial grid must be positive");
        if (i > 0 && !(rho_grid[i] > rho_grid[i - 1])) throw Error("radial grid must be ascending");
    }
    RootBranchSet out;
    out.direction = d.components();
    out.rho = rho_grid;
    detail::Tracker tr{stack, d, out};
    std::vector<cplx> cur = tr.roots_at(rho_grid[0]);
    out.branches.assign(cur.size(), {});
    auto push = [&](const std::vector<cplx>& r) {
        for (std::size_t j = 0; j < r.size(); ++j) out.branches[j].push_back(r[j]);
    };
    tr.log_cluster(rho_grid[0], cur);
    push(cur);
    for (std::size_t i = 1; i < rho_grid.size(); ++i) {
        cur = tr.step(rho_grid[i - 1], cur, rho_grid[i], 0);
        tr.log_cluster(rho_grid[i], cur);
        push(cur);
    }
    std::stable_sort(out.cluster_events.begin(), out.cluster_events.end(),
                     [](const ClusterEvent& a, const ClusterEvent& b) { return a.rho < b.rho; });
    return out;
}

/// max_j Re lambda_j(xi).
inline double spectral_abscissa(const OperatorStack& stack, const std::vector<double>& xi) {
    double a = -std::numeric_limits<double>::infinity();
    for (const cplx& z : roots(full_symbol_at(stack, xi))) a = std::max(a, z.real());
    return a;
}

}  // namespace hyperdecay
