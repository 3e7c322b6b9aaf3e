#pragma once

#include <functional>
#include <span>
#include <vector>

#include "torustrace/errors.hpp"

namespace torustrace::quadrature {

enum class Rule { simpson, gauss };

struct QuadratureConfig {
    int n = 1 << 14;        // panel count (even for simpson)
    Rule rule = Rule::simpson;
    double rel_tol = 1e-10;
};

// Composite Simpson over n+1 uniformly spaced samples (n even panels).
double simpson(std::span<const double> samples, double h);

// Integral of f over [lo, hi] with the configured rule.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& cfg = {});

// Cumulative integral on a uniform grid (out[0] = 0): trapezoid sums with the
// Euler-Maclaurin endpoint correction, fourth order with a smooth error curve.
std::vector<double> cumulative_integral(std::span<const double> samples, double h);

} // namespace torustrace::quadrature
