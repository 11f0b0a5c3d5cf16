#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hyperdecay/poly.hpp"

namespace hyperdecay {

using MultiIndex = std::vector<int>;

/// All multi-indices of length n with |alpha| = deg, lexicographically descending.
inline std::vector<MultiIndex> multi_indices(int n, int deg) {
    std::vector<MultiIndex> out;
    if (n <= 0 || deg < 0) return out;
    MultiIndex cur(n, 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, deg);
    return out;
}

inline int abs_index(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

/// Unit vector on S^{n-1}.
class Direction {
public:
    explicit Direction(std::vector<double> v) : v_(std::move(v)) {
        double nrm = 0.0;
        for (double x : v_) nrm += x * x;
        if (v_.empty() || std::abs(std::sqrt(nrm) - 1.0) > 1e-12)
            throw Error("direction is not a unit vector");
    }

    static Direction normalized(std::vector<double> v) {
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw Error("cannot normalize the zero vector");
        for (double& x : v) x /= nrm;
        return Direction(std::move(v));
    }

    static Direction axis(int n, int i = 0) {
        std::vector<double> v(n, 0.0);
        v.at(i) = 1.0;
        return Direction(std::move(v));
    }

    int dim() const { return static_cast<int>(v_.size()); }
    const std::vector<double>& components() const { return v_; }
    double operator[](int i) const { return v_[i]; }

    std::vector<double> scaled(double rho) const {
        std::vector<double> r(v_);
        for (double& x : r) x *= rho;
        return r;
    }

private:
    std::vector<double> v_;
};

/// P(lambda, xi) = sum_{k + |alpha| = order} c_{k,alpha} lambda^k xi^alpha.
class HomogeneousSymbol {
public:
    struct Term {
        int k;
        MultiIndex alpha;
        double c;
    };

    HomogeneousSymbol(int order, int dim) : order_(order), dim_(dim) {
        if (order < 0) throw Error("symbol order must be non-negative");
        if (dim < 1) throw Error("spatial dimension must be at least 1");
        index_.resize(order + 1);
        coef_.resize(order + 1);
        for (int k = 0; k <= order; ++k) {
            index_[k] = multi_indices(dim, order - k);
            coef_[k].assign(index_[k].size(), 0.0);
        }
    }

    int order() const { return order_; }
    int dim() const { return dim_; }

    void set(int k, const MultiIndex& alpha, double c) { slot(k, alpha) = c; }
    void add(int k, const MultiIndex& alpha, double c) { slot(k, alpha) += c; }

    double get(int k, const MultiIndex& alpha) const {
        return const_cast<HomogeneousSymbol*>(this)->slot(k, alpha);
    }

    /// Adds c * lambda^k * |xi|^{2p}, expanding the power of |xi|^2 into monomials.
    void add_radial(int k, int p, double c) {
        if (k + 2 * p != order_) throw Error("radial term does not match symbol order");
        for (const MultiIndex& beta : multi_indices(dim_, p)) {
            double mult = std::tgamma(p + 1.0);
            MultiIndex alpha(dim_);
            for (int i = 0; i < dim_; ++i) {
                mult /= std::tgamma(beta[i] + 1.0);
                alpha[i] = 2 * beta[i];
            }
            add(k, alpha, c * std::round(mult));
        }
    }

    /// Coefficient of lambda^order.
    double pure_time() const { return coef_[order_][0]; }

    const std::vector<MultiIndex>& indices(int k) const { return index_.at(k); }
    const std::vector<double>& block(int k) const { return coef_.at(k); }

    std::vector<Term> terms() const {
        std::vector<Term> out;
        for (int k = order_; k >= 0; --k)
            for (std::size_t i = 0; i < index_[k].size(); ++i)
                if (coef_[k][i] != 0.0) out.push_back({k, index_[k][i], coef_[k][i]});
        return out;
    }

    bool is_zero() const {
        for (const auto& b : coef_)
            for (double c : b)
                if (c != 0.0) return false;
        return true;
    }

    HomogeneousSymbol scaled(double s) const {
        HomogeneousSymbol r(*this);
        for (auto& b : r.coef_)
            for (double& c : b) c *= s;
        return r;
    }

    /// P(., xi) at a real (not necessarily unit) xi; with imaginary_unit the monomials use (i xi)^alpha.
    Poly at(const std::vector<double>& xi, bool imaginary_unit = false) const {
        if (static_cast<int>(xi.size()) != dim_) throw Error("dimension mismatch between symbol and point");
        static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
        std::vector<cplx> c(order_ + 1, 0.0);
        for (int k = 0; k <= order_; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < index_[k].size(); ++i) {
                if (coef_[k][i] == 0.0) continue;
                double mono = coef_[k][i];
                for (int q = 0; q < dim_; ++q)
                    for (int e = 0; e < index_[k][i][q]; ++e) mono *= xi[q];
                acc += mono;
            }
            c[k] = imaginary_unit ? acc * ipow[(order_ - k) % 4] : cplx(acc);
        }
        return Poly(std::move(c));
    }

private:
    double& slot(int k, const MultiIndex& alpha) {
        if (k < 0 || k > order_) throw Error("time order out of range");
        if (static_cast<int>(alpha.size()) != dim_) throw Error("multi-index length does not match dimension");
        if (k + abs_index(alpha) != order_) throw Error("term violates k + |alpha| = order");
        const auto& idx = index_[k];
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] == alpha) return coef_[k][i];
        throw Error("multi-index not found");
    }

    int order_;
    int dim_;
    std::vector<std::vector<MultiIndex>> index_;
    std::vector<std::vector<double>> coef_;
};

/// Restriction P(lambda, xi') to a unit direction.
inline Poly restrict_to_direction(const HomogeneousSymbol& sym, const Direction& d) {
    if (d.dim() != sym.dim()) throw Error("dimension mismatch between symbol and direction");
    return sym.at(d.components());
}

/// Q = P_m + P_{m-1} + ... + P_{m-l}, normalized so that c_{m,0} = 1.
class OperatorStack {
public:
    OperatorStack(std::vector<HomogeneousSymbol> symbols, std::string name = "")
        : symbols_(std::move(symbols)), name_(std::move(name)) {
        if (symbols_.size() < 2) throw Error("an operator stack needs at least two symbols");
        if (symbols_.size() > 4) throw Error("stacks deeper than three lower-order symbols are not supported");
        std::sort(symbols_.begin(), symbols_.end(),
                  [](const HomogeneousSymbol& a, const HomogeneousSymbol& b) { return a.order() > b.order(); });
        const int m = symbols_[0].order();
        const int n = symbols_[0].dim();
        for (std::size_t j = 0; j < symbols_.size(); ++j) {
            if (symbols_[j].order() != m - static_cast<int>(j))
                throw Error("symbol orders must be consecutive m, m-1, ..., m-l");
            if (symbols_[j].dim() != n) throw Error("all symbols must share the spatial dimension");
        }
        const double lead = symbols_[0].pure_time();
        if (lead == 0.0) throw Error("leading pure-time coefficient c_{m,0} must be nonzero");
        for (auto& s : symbols_) s = s.scaled(1.0 / lead);
        if (!(c0(depth()) > 0.0)) throw Error("lowest-order pure-time coefficient must be positive after normalization");
        isotropic_ = detect_isotropy();
    }

    int m() const { return symbols_[0].order(); }
    int depth() const { return static_cast<int>(symbols_.size()) - 1; }
    int dim() const { return symbols_[0].dim(); }
    const std::string& name() const { return name_; }
    bool isotropic() const { return isotropic_; }
    bool normalized() const { return true; }

    bool has(int j) const { return j >= 0 && j <= depth(); }

    /// P_{m-j}.
    const HomogeneousSymbol& symbol(int j) const {
        if (!has(j)) throw Error("symbol index outside the stack");
        return symbols_[j];
    }

    const std::vector<HomogeneousSymbol>& symbols() const { return symbols_; }

    /// c_{m-j,0}; zero for absent symbols.
    double c0(int j) const { return has(j) ? symbols_[j].pure_time() : 0.0; }

    /// P_{m-j}(., xi') as a real polynomial; zero polynomial when absent.
    Poly restrict(int j, const Direction& d) const {
        return has(j) ? restrict_to_direction(symbols_[j], d) : Poly();
    }

    /// P_{m-j}(., xi) at a real point xi (inhomogeneous use).
    Poly at_real(int j, const std::vector<double>& xi) const { return has(j) ? symbols_[j].at(xi) : Poly(); }

private:
    bool detect_isotropy() const {
        const int n = dim();
        std::mt19937_64 rng(0x5eed1507u);
        std::normal_distribution<double> g;
        Direction e1 = Direction::axis(n);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<double> v(n);
            for (double& x : v) x = g(rng);
            if (n == 1) v[0] = (trial % 2 == 0) ? -1.0 : 1.0;
            Direction d = Direction::normalized(v);
            for (const auto& s : symbols_) {
                Poly a = restrict_to_direction(s, e1), b = restrict_to_direction(s, d);
                int deg = std::max(a.degree(), b.degree());
                double scale = 1.0;
                for (int k = 0; k <= deg; ++k) scale = std::max(scale, std::abs(a.coeff(k)));
                for (int k = 0; k <= deg; ++k)
                    if (std::abs(a.coeff(k) - b.coeff(k)) > 1e-12 * scale) return false;
            }
        }
        return true;
    }

    std::vector<HomogeneousSymbol> symbols_;
    std::string name_;
    bool isotropic_ = false;
};

/// Q(lambda, i xi) with complex coefficients; degree exactly m.
inline Poly full_symbol_at(const OperatorStack& stack, const std::vector<double>& xi) {
    Poly q;
    for (const auto& s : stack.symbols()) q = q + s.at(xi, true);
    return q;
}

/// lead(p) * prod_{k not deleted} (at - root_k).
inline cplx check_poly(const Poly& p, const std::vector<cplx>& roots, const std::vector<int>& deleted, cplx at) {
    if (deleted.empty() || deleted.size() > 2) throw Error("check polynomial deletes one or two roots");
    for (int i : deleted)
        if (i < 0 || i >= static_cast<int>(roots.size())) throw Error("deleted root index out of range");
    if (deleted.size() == 2 && deleted[0] == deleted[1]) throw Error("deleted root indices must differ");
    cplx acc = p.leading();
    for (int k = 0; k < static_cast<int>(roots.size()); ++k) {
        if (std::find(deleted.begin(), deleted.end(), k) != deleted.end()) continue;
        acc *= (at - roots[k]);
    }
    return acc;
}

}  // namespace hyperdecay
