#pragma once

// Decay-order fitting for residual ladders: least squares on
// (log N, log residual), with the leading coefficient read off the
// largest-N point.  Reports are double precision regardless of the
// engine precision that produced the residuals.

#include <cmath>
#include <string>
#include <vector>

#include "hardedge/errors.hpp"

namespace hardedge {

struct ConvergenceReport {
    std::vector<int> n_ladder;
    std::vector<double> residual_sup;
    std::vector<std::vector<double>> per_point;  // per grid point, one row per N
    double fitted_order = 0.0;
    double fitted_coefficient = 0.0;
    std::string label;
};

inline ConvergenceReport fit_decay(const std::vector<int>& ladder,
                                   const std::vector<double>& residual_sup,
                                   double noise_floor = 1e-10, const std::string& label = {}) {
    if (ladder.size() < 3 || ladder.size() != residual_sup.size())
        throw domain_error("fit_decay: need at least 3 ladder points");
    for (double r : residual_sup) {
        if (!(r > 10.0 * noise_floor))
            throw convergence_error("fit_decay: residual at or below the noise floor");
    }
    const std::size_t n = ladder.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(static_cast<double>(ladder[i]));
        const double y = std::log(residual_sup[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    ConvergenceReport rep;
    rep.n_ladder = ladder;
    rep.residual_sup = residual_sup;
    rep.fitted_order = -slope;
    const double nmax = static_cast<double>(ladder.back());
    rep.fitted_coefficient = residual_sup.back() * std::pow(nmax, rep.fitted_order);
    rep.label = label;
    return rep;
}

// Two-term fit r(N) ~ c1/N + c2/N^2; returns (c1, c2).  Used where the
// first-order coefficient itself is the quantity under test.
inline std::pair<double, double> fit_first_order_coefficient(const std::vector<int>& ladder,
                                                             const std::vector<double>& values) {
    if (ladder.size() < 2 || ladder.size() != values.size())
        throw domain_error("fit_first_order_coefficient: need >= 2 points");
    // Normal equations for least squares in the basis {1/N, 1/N^2}.
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const double u = 1.0 / static_cast<double>(ladder[i]);
        const double v = u * u;
        a11 += u * u;
        a12 += u * v;
        a22 += v * v;
        b1 += u * values[i];
        b2 += v * values[i];
    }
    const double det = a11 * a22 - a12 * a12;
    if (det == 0.0) throw domain_error("fit_first_order_coefficient: singular system");
    return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det};
}

}  // namespace hardedge
