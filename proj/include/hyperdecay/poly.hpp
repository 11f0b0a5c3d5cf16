#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperdecay {

using cplx = std::complex<double>;

/// Raised for invalid input, violated preconditions and failed numerical checks.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Polynomial in one complex variable, coefficients in ascending degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly from_real(const std::vector<double>& coeffs) {
        return Poly(std::vector<cplx>(coeffs.begin(), coeffs.end()));
    }

    static Poly from_roots(const std::vector<cplx>& roots, cplx lead = 1.0) {
        std::vector<cplx> c{lead};
        for (const cplx& r : roots) {
            std::vector<cplx> next(c.size() + 1, 0.0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] -= r * c[i];
            }
            c = std::move(next);
        }
        return Poly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<cplx>& coeffs() const { return c_; }

    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
    }

    cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Sum |c_i| |z|^i, the natural scale for residual checks.
    double magnitude_bound(cplx z) const {
        double az = std::abs(z), acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * az + std::abs(*it);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<cplx> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Poly(std::move(d));
    }

    bool has_real_coeffs() const {
        return std::all_of(c_.begin(), c_.end(), [](const cplx& z) { return z.imag() == 0.0; });
    }

    Poly operator+(const Poly& o) const {
        std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly(std::move(r));
    }

    Poly operator-(const Poly& o) const { return *this + o * cplx(-1.0); }

    Poly operator*(cplx s) const {
        std::vector<cplx> r(c_);
        for (auto& z : r) z *= s;
        return Poly(std::move(r));
    }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
    }

    std::vector<cplx> c_;
};

/// Deterministic pairwise summation.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace hyperdecay
