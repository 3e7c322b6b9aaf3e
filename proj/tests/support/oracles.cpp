#include "support/oracles.hpp"

#include "torustrace/specfun.hpp"

#include <cmath>
#include <numbers>

namespace oracles {

namespace {
constexpr double kPi = std::numbers::pi;
}

double greens_spectral_sum(const torustrace::lattice::TorusShape& shape,
                           torustrace::lattice::Vec2 x, torustrace::lattice::Vec2 y,
                           double r_inner, double r_outer) {
    const double xr = shape.reduced_re();
    const double yr = shape.reduced_im();
    const torustrace::lattice::Vec2 d{x.x - y.x, x.y - y.y};
    // dual basis of the unit-area lattice: u* = (sqrt(y), -x/sqrt(y)), v* = (0, 1/sqrt(y))
    const double sy = std::sqrt(yr);
    const double r2_outer = r_outer * r_outer;
    const long m_max = static_cast<long>(std::floor(r_outer / sy)) + 1;
    double sum = 0.0;
    for (long m = -m_max; m <= m_max; ++m) {
        const double rem = r2_outer - static_cast<double>(m) * static_cast<double>(m) * yr;
        if (rem < 0.0) continue;
        const double half = std::sqrt(rem * yr);
        const double center = static_cast<double>(m) * xr;
        const long n_lo = static_cast<long>(std::ceil(center - half)) - 1;
        const long n_hi = static_cast<long>(std::floor(center + half)) + 1;
        for (long n = n_lo; n <= n_hi; ++n) {
            if (m == 0 && n == 0) continue;
            const double t = static_cast<double>(n) - static_cast<double>(m) * xr;
            const double norm2 = static_cast<double>(m) * static_cast<double>(m) * yr + t * t / yr;
            const double rho = std::sqrt(norm2);
            if (rho > r_outer) continue;
            double w = 1.0;
            if (rho > r_inner) w = (r_outer - rho) / (r_outer - r_inner);
            const double xi_dot_d = (static_cast<double>(m) * sy) * d.x + (t / sy) * d.y;
            sum += w * std::cos(2.0 * kPi * xi_dot_d) / (4.0 * kPi * kPi * norm2);
        }
    }
    return sum;
}

std::vector<double> brute_force_eigenvalues(const torustrace::lattice::TorusShape& shape,
                                            double cutoff, long m_max) {
    std::vector<double> out;
    for (long m = -m_max; m <= m_max; ++m)
        for (long n = -m_max; n <= m_max; ++n) {
            if (m == 0 && n == 0) continue;
            const double lam = torustrace::lattice::dual_eigenvalue(shape, m, n);
            if (lam <= cutoff) out.push_back(lam);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::complex<double> eta_product_reference(std::complex<double> z, int terms) {
    const std::complex<double> q = std::exp(std::complex<double>(0.0, 2.0 * kPi) * z);
    std::complex<double> prod = std::exp(std::complex<double>(0.0, kPi / 12.0) * z);
    std::complex<double> qn = 1.0;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        prod *= (1.0 - qn);
    }
    return prod;
}

double footnote_bubble_functional(double a) {
    using torustrace::specfun::dilog;
    const double ch = std::cosh(2.0 * a);
    const double sh = std::sinh(2.0 * a);
    const double coth = 1.0 / std::tanh(a);
    const double e2a = std::exp(2.0 * a);
    const double e4a = std::exp(4.0 * a);
    const double log1pe2a = std::log1p(e2a);
    const double logfrac = std::log(a) + log1pe2a - std::log(e2a - 1.0);
    const double li2_small = dilog(-std::exp(-2.0 * a));
    // Li2(-e^{2a}) = -pi^2/6 - (2a)^2/2 - Li2(-e^{-2a})
    const double li2_big = -kPi * kPi / 6.0 - 2.0 * a * a - li2_small;

    const double bracket =
        48.0 * a - 64.0 * a * a - 48.0 * a * ch + 16.0 * a * a * ch -
        24.0 * a * std::log(4.0) + 24.0 * a * ch * std::log(4.0) +
        48.0 * a * log1pe2a - 48.0 * a * ch * log1pe2a -
        24.0 * a * logfrac + 24.0 * a * ch * logfrac +
        24.0 * a * sh + 12.0 * a * a * sh + kPi * kPi * sh +
        48.0 * a * log1pe2a * sh -
        6.0 * li2_small * sh + 18.0 * li2_big * sh;

    return coth * (ch + sh) * bracket / (48.0 * a * (e4a - 1.0) * kPi);
}

double dilog_series_reference(double x, long terms) {
    double term = 1.0;
    double sum = 0.0;
    for (long n = 1; n <= terms; ++n) {
        term *= x;
        sum += term / (static_cast<double>(n) * static_cast<double>(n));
        if (term == 0.0) break;
    }
    return sum;
}

double euler_gamma_reference(long n) {
    // Kahan-compensated harmonic sum
    double sum = 0.0, comp = 0.0;
    for (long k = 1; k <= n; ++k) {
        const double y = 1.0 / static_cast<double>(k) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum - std::log(static_cast<double>(n)) - 0.5 / static_cast<double>(n);
}

} // namespace oracles
