#include "torustrace/greens.hpp"

#include "torustrace/flat_trace.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace torustrace::greens {

namespace {

constexpr double kPi = std::numbers::pi;

double frac_center(double t) { return t - std::round(t); } // into [-1/2, 1/2]

} // namespace

Vec2 shortest_displacement(const TorusShape& shape, Vec2 x, Vec2 y) {
    const Vec2 u = shape.basis_u();
    const Vec2 v = shape.basis_v();
    const Vec2 d{x.x - y.x, x.y - y.y};
    // lattice coordinates (basis matrix is upper triangular: u.y == 0)
    const double beta = d.y / v.y;
    const double alpha = (d.x - beta * v.x) / u.x;
    const double a0 = frac_center(alpha);
    const double b0 = frac_center(beta);
    double best = 0.0;
    Vec2 best_d{0.0, 0.0};
    bool first = true;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double aa = a0 + i;
            const double bb = b0 + j;
            const Vec2 cand{aa * u.x + bb * v.x, aa * u.y + bb * v.y};
            const double n2 = cand.x * cand.x + cand.y * cand.y;
            if (first || n2 < best) {
                best = n2;
                best_d = cand;
                first = false;
            }
        }
    }
    return best_d;
}

double torus_distance(const TorusShape& shape, Vec2 x, Vec2 y) {
    const Vec2 d = shortest_displacement(shape, x, y);
    return std::hypot(d.x, d.y);
}

GreensEval greens_flat(const TorusShape& shape, Vec2 x, Vec2 y, const specfun::SeriesConfig& cfg) {
    const Vec2 d = shortest_displacement(shape, x, y);
    const double dist = std::hypot(d.x, d.y);
    if (dist < 1e-12)
        throw std::domain_error("greens_flat: coincident points; the regular part is robin_mass");

    const double yr = shape.reduced_im();
    const specfun::ComplexModulus tau{shape.reduced_re(), yr};
    const std::complex<double> w = std::complex<double>(d.x, d.y) * std::sqrt(yr);

    const double log_theta = std::log(std::abs(specfun::jacobi_theta1(w, tau, cfg)));
    const double log_eta = std::real(specfun::log_dedekind_eta(tau, cfg));

    GreensEval out;
    out.dist = dist;
    out.g = -(log_theta - log_eta) / (2.0 * kPi) + (w.imag() * w.imag()) / (2.0 * yr);
    out.log_part = -std::log(dist) / (2.0 * kPi);
    out.h = out.g - out.log_part;
    return out;
}

double robin_mass(const TorusShape& shape, Vec2 /*x*/, const specfun::SeriesConfig& cfg) {
    const double yr = shape.reduced_im();
    const specfun::ComplexModulus tau{shape.reduced_re(), yr};
    const double log_theta_prime = std::log(std::abs(specfun::jacobi_theta1_prime0(tau, cfg)));
    const double log_eta = std::real(specfun::log_dedekind_eta(tau, cfg));
    return -(log_theta_prime - log_eta) / (2.0 * kPi) - std::log(yr) / (4.0 * kPi);
}

RobinMassField robin_mass_field(const TorusShape& shape, std::span<const Vec2> points,
                                const specfun::SeriesConfig& cfg) {
    RobinMassField f;
    f.points.assign(points.begin(), points.end());
    f.mass.reserve(points.size());
    for (const Vec2& p : points) f.mass.push_back(robin_mass(shape, p, cfg));
    return f;
}

double mass_trace_check(const TorusShape& shape) {
    const double c = 4.0 * kPi; // scale factor taking area 1 to volume 4pi
    const double m = robin_mass(shape, {0.0, 0.0});
    // under g -> c g the distance gains log(c)/2, so m_c = m + log(c)/(4pi)
    const double mass_integral = c * (m + std::log(c) / (4.0 * kPi));
    const double lhs = mass_integral - 2.0 * std::log(2.0) + 2.0 * specfun::euler_gamma();
    // Z_c(s) = c^s Z(s) with residue 1/(4pi) at area 1 gives Z~_c(1) = c Z~(1) + log c
    const double rhs = c * flat_trace::ztilde_flat(shape) + std::log(c);
    return lhs - rhs;
}

} // namespace torustrace::greens
