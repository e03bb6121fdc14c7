#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace torusnls {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

inline LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw std::invalid_argument("fit_linear: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LinearFit f;
    const double det = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double rss = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = ys[i] - (f.slope * xs[i] + f.intercept);
        rss += r * r;
    }
    f.rms_residual = std::sqrt(rss / n);
    return f;
}

inline LinearFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0 || ys[i] <= 0)
            throw std::invalid_argument("fit_loglog: nonpositive data");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    return fit_linear(lx, ly);
}

// Least-squares proportionality y = c x (no intercept).
inline double fit_through_origin(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    if (sxx == 0) throw std::invalid_argument("fit_through_origin: degenerate data");
    return sxy / sxx;
}

}  // namespace torusnls
