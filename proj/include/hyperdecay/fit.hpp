#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperdecay/poly.hpp"

namespace hyperdecay {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double slope_stderr = 0.0;
    int points = 0;
};

/// Ordinary least squares y = slope * x + intercept.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error("line fit needs at least two paired points");
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n, my = pairwise_sum(y) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw Error("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
    f.points = static_cast<int>(x.size());
    if (x.size() > 2) f.slope_stderr = std::sqrt(std::max(0.0, syy - sxy * sxy / sxx) / (n - 2.0) / sxx);
    return f;
}

/// Slope of log|y| against log x.
inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::abs(y[i])));
    }
    return fit_line(lx, ly);
}

}  // namespace hyperdecay
