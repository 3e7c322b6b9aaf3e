#pragma once

#include <span>
#include <vector>

#include "torustrace/lattice.hpp"
#include "torustrace/specfun.hpp"

namespace torustrace::flat_trace {

// Closed-form spectral invariants of a unit-area flat torus.
struct SpectralReport {
    double lambda1 = 0.0;
    lattice::ShapeClass shape_class = lattice::ShapeClass::Borderline;
    double ztilde1 = 0.0;
    double logdet = 0.0;
    double modulus_re = 0.0; // reduced modulus fed into the eta formula
    double modulus_im = 0.0;
};

// Regularized trace at area 1:
//   Z~(1) = (1/4pi)(-log((2pi)^2 y |eta(z)|^4)) + 2 log(2pi)/(4pi)
//           - 2 log 2/(2pi) - log(pi)/(2pi) + gamma/(2pi),
// evaluated at the reduced modulus z = x + iy.
double ztilde_flat(const lattice::TorusShape& shape,
                   const specfun::SeriesConfig& cfg = {});

// log det Laplacian, inverted from the trace-determinant relation:
//   log det = -4pi (Z~(1) + 2 log 2/(2pi) + log(pi)/(2pi) - gamma/(2pi)).
double logdet_flat(const lattice::TorusShape& shape,
                   const specfun::SeriesConfig& cfg = {});

// Regularized trace of the unit-area round sphere: (1/4pi)(2 gamma - 1 - log(4pi)).
double sphere_constant();

SpectralReport spectral_report(const lattice::TorusShape& shape,
                               const specfun::SeriesConfig& cfg = {});

struct TwistRow {
    double x = 0.0;
    double ztilde = 0.0;
};

struct TwistTable {
    std::vector<TwistRow> rows;
    double base = 0.0;           // Z~(1) at x = 0
    bool monotone_decrease = false; // every entry <= the x = 0 value
};

// Z~(1) along the twist family tau = x + iy; requires y > 1 and x in [0, 1/2].
TwistTable twist_comparison(double y, std::span<const double> x_values);

} // namespace torustrace::flat_trace
