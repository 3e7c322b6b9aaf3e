#include "torustrace/flat_trace.hpp"

#include <cmath>
#include <numbers>

namespace torustrace::flat_trace {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

double ztilde_flat(const lattice::TorusShape& shape, const specfun::SeriesConfig& cfg) {
    const specfun::ComplexModulus z{shape.reduced_re(), shape.reduced_im()};
    const double log_eta_abs = std::real(specfun::log_dedekind_eta(z, cfg));
    const double two_pi = 2.0 * kPi;
    const double bracket = std::log(two_pi * two_pi) + std::log(z.im) + 4.0 * log_eta_abs;
    return (-bracket + 2.0 * std::log(two_pi)) / (4.0 * kPi)
           - 2.0 * std::log(2.0) / two_pi
           - std::log(kPi) / two_pi
           + specfun::euler_gamma() / two_pi;
}

double logdet_flat(const lattice::TorusShape& shape, const specfun::SeriesConfig& cfg) {
    const double zt = ztilde_flat(shape, cfg);
    const double two_pi = 2.0 * kPi;
    return -4.0 * kPi * (zt + 2.0 * std::log(2.0) / two_pi + std::log(kPi) / two_pi -
                         specfun::euler_gamma() / two_pi);
}

double sphere_constant() {
    return (2.0 * specfun::euler_gamma() - 1.0 - std::log(4.0 * kPi)) / (4.0 * kPi);
}

SpectralReport spectral_report(const lattice::TorusShape& shape, const specfun::SeriesConfig& cfg) {
    SpectralReport r;
    r.lambda1 = lattice::lambda1(shape);
    r.shape_class = lattice::classify(shape);
    r.ztilde1 = ztilde_flat(shape, cfg);
    r.logdet = logdet_flat(shape, cfg);
    r.modulus_re = shape.reduced_re();
    r.modulus_im = shape.reduced_im();
    return r;
}

TwistTable twist_comparison(double y, std::span<const double> x_values) {
    if (!(y > 1.0)) throw std::domain_error("twist_comparison: requires y > 1 (skinny regime)");
    TwistTable table;
    table.base = ztilde_flat(lattice::make_torus(0.0, y));
    table.monotone_decrease = true;
    table.rows.reserve(x_values.size());
    for (double x : x_values) {
        if (x < 0.0 || x > 0.5)
            throw std::domain_error("twist_comparison: twist values must lie in [0, 1/2]");
        const double zt = (x == 0.0) ? table.base : ztilde_flat(lattice::make_torus(x, y));
        if (zt > table.base) table.monotone_decrease = false;
        table.rows.push_back({x, zt});
    }
    return table;
}

} // namespace torustrace::flat_trace
