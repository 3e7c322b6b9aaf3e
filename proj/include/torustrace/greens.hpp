#pragma once

#include <span>
#include <vector>

#include "torustrace/lattice.hpp"
#include "torustrace/specfun.hpp"

namespace torustrace::greens {

using lattice::TorusShape;
using lattice::Vec2;

// G(x,y) split into its parametrix pieces: g = (-1/2pi) log d + h.
struct GreensEval {
    double g = 0.0;        // Green's value
    double log_part = 0.0; // (-1/2pi) log d(x,y)
    double h = 0.0;        // regular part H(x,y)
    double dist = 0.0;     // flat geodesic distance
};

// Shortest flat geodesic distance between two points of the unit-area torus
// (points in the shape's basis frame).
double torus_distance(const TorusShape& shape, Vec2 x, Vec2 y);

// Minimal-length representative of the displacement x - y in the lattice.
Vec2 shortest_displacement(const TorusShape& shape, Vec2 x, Vec2 y);

// Zero-mean Green's function of the positive Laplacian via the theta closed
// form G = (-1/2pi) log|theta1(w|tau)/eta(tau)| + (Im w)^2 / (2 Im tau) with
// w the complex displacement mapped to the tau frame.
GreensEval greens_flat(const TorusShape& shape, Vec2 x, Vec2 y,
                       const specfun::SeriesConfig& cfg = {});

// Robin's mass m(x) = lim_{y->x} [G(x,y) + (1/2pi) log d(x,y)], extracted
// analytically from the closed form:
//   m = (-1/2pi) log|theta1'(0|tau)/eta(tau)| - (1/4pi) log(Im tau).
// Constant on a flat torus; x is accepted for interface uniformity.
double robin_mass(const TorusShape& shape, Vec2 x, const specfun::SeriesConfig& cfg = {});

struct RobinMassField {
    std::vector<Vec2> points;
    std::vector<double> mass;
};
RobinMassField robin_mass_field(const TorusShape& shape, std::span<const Vec2> points,
                                const specfun::SeriesConfig& cfg = {});

// Residual of the mass-trace identity under the 4pi-volume convention:
//   [ int m_c dV_c - 2 log 2 + 2 gamma ] - Z~_c(1),
// where the metric is scaled by c = 4pi (eigenvalues scale by 1/c, the mass
// gains log(c)/(4pi), and Z~_c(1) = c Z~(1) + log c from Z_c(s) = c^s Z(s)).
// The mass side comes from the theta series, the trace side from the eta
// formula, so the residual cross-checks the two routes.
double mass_trace_check(const TorusShape& shape);

} // namespace torustrace::greens
