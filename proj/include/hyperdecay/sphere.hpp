#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

/// Surface measure of S^{n-1}; counting measure for n = 1.
inline double sphere_area(int n) {
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Fixed direction lattice: {-1, 1} for n = 1, 256 equispaced angles for n = 2,
/// 512-point Fibonacci lattice for n = 3, seeded Gaussian samples beyond.
inline std::vector<Direction> sample_directions(int n) {
    std::vector<Direction> out;
    if (n == 1) {
        out.emplace_back(std::vector<double>{-1.0});
        out.emplace_back(std::vector<double>{1.0});
    } else if (n == 2) {
        for (int k = 0; k < 256; ++k) {
            double th = 2.0 * M_PI * k / 256.0;
            out.push_back(Direction::normalized({std::cos(th), std::sin(th)}));
        }
    } else if (n == 3) {
        const int N = 512;
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < N; ++k) {
            double z = 1.0 - (2.0 * k + 1.0) / N;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double ph = golden * k;
            out.push_back(Direction::normalized({r * std::cos(ph), r * std::sin(ph), z}));
        }
    } else {
        std::mt19937_64 rng(0x51e5a3u + n);
        std::normal_distribution<double> g;
        for (int k = 0; k < 512; ++k) {
            std::vector<double> v(n);
            for (double& x : v) x = g(rng);
            out.push_back(Direction::normalized(v));
        }
    }
    return out;
}

/// Sampling set for a stack: one axis direction when the stack is isotropic.
inline std::vector<Direction> stack_directions(const OperatorStack& stack) {
    if (stack.isotropic()) return {Direction::axis(stack.dim())};
    return sample_directions(stack.dim());
}

}  // namespace hyperdecay
