#include "torustrace/specfun.hpp"

#include <cmath>
#include <numbers>

namespace torustrace::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// log(1 + w) for complex w, accurate for small |w|.
complexd clog1p(const complexd& w) {
    if (std::abs(w) < 0.5) {
        complexd term = w;
        complexd sum = w;
        for (int k = 2; k < 80; ++k) {
            term *= -w;
            const complexd add = term / static_cast<double>(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return sum;
    }
    return std::log(complexd(1.0, 0.0) + w);
}

struct ReducedModulus {
    complexd z;           // in the fundamental domain
    complexd log_factor;  // log eta(z_in) = log_factor + log eta(z)
};

// Reduce into |Re z| <= 1/2, |z| >= 1 while tracking the eta multiplier:
//   eta(z + 1) = exp(i pi / 12) eta(z),   eta(-1/z) = sqrt(-i z) eta(z).
ReducedModulus reduce_modulus(complexd z) {
    complexd corr(0.0, 0.0);
    for (int iter = 0; iter < 256; ++iter) {
        const double k = std::round(z.real());
        if (k != 0.0) {
            z -= k;
            corr += complexd(0.0, -kPi * k / 12.0);
        }
        if (std::norm(z) < 1.0 - 1e-15) {
            corr -= 0.5 * std::log(complexd(0.0, -1.0) * z);
            z = -1.0 / z;
        } else {
            return {z, corr};
        }
    }
    throw convergence_error("dedekind_eta: modular reduction did not terminate");
}

complexd log_eta_reduced(const complexd& z, const SeriesConfig& cfg) {
    const complexd q = std::exp(complexd(0.0, 2.0 * kPi) * z);
    const double qabs = std::abs(q);
    complexd sum = complexd(0.0, kPi / 12.0) * z;
    complexd qn(1.0, 0.0);
    for (std::int64_t n = 1;; ++n) {
        if (n > cfg.max_terms)
            throw convergence_error("dedekind_eta: q-series exceeded max_terms");
        qn *= q;
        sum += clog1p(-qn);
        const double tail = std::pow(qabs, static_cast<double>(n + 1)) / ((1.0 - qabs) * (1.0 - qabs));
        if (tail < cfg.abs_tol) break;
    }
    return sum;
}

} // namespace

double euler_gamma() {
    return 0.57721566490153286060651209008240243;
}

complexd log_dedekind_eta(const ComplexModulus& z, const SeriesConfig& cfg) {
    if (!(z.im > 0.0)) throw std::domain_error("dedekind_eta: Im z must be positive");
    const ReducedModulus red = reduce_modulus(complexd(z.re, z.im));
    return red.log_factor + log_eta_reduced(red.z, cfg);
}

complexd dedekind_eta(const ComplexModulus& z, const SeriesConfig& cfg) {
    return std::exp(log_dedekind_eta(z, cfg));
}

complexd jacobi_theta1(const complexd& w, const ComplexModulus& z, const SeriesConfig& cfg) {
    if (!(z.im > 0.0)) throw std::domain_error("jacobi_theta1: Im z must be positive");
    const complexd ipiz = complexd(0.0, kPi) * complexd(z.re, z.im);
    const double abs_im_w = std::abs(w.imag());
    complexd sum(0.0, 0.0);
    for (std::int64_t n = 0;; ++n) {
        if (n > cfg.max_terms)
            throw convergence_error("jacobi_theta1: series exceeded max_terms");
        const double half = static_cast<double>(n) + 0.5;
        complexd term = std::exp(ipiz * (half * half)) *
                        std::sin(kPi * static_cast<double>(2 * n + 1) * w);
        if (n % 2 == 1) term = -term;
        sum += term;
        // |sin((2m+1) pi w)| <= exp((2m+1) pi |Im w|); once the quadratic
        // exponent dominates, the term bound decreases geometrically.
        const double next_half = half + 1.0;
        const double next_log_bound =
            -kPi * z.im * next_half * next_half + kPi * (2.0 * static_cast<double>(n) + 3.0) * abs_im_w;
        const bool decreasing = z.im * (2.0 * next_half) > 2.0 * abs_im_w;
        if (decreasing && next_log_bound < std::log(0.25 * cfg.abs_tol)) break;
    }
    return 2.0 * sum;
}

complexd jacobi_theta1_prime0(const ComplexModulus& z, const SeriesConfig& cfg) {
    if (!(z.im > 0.0)) throw std::domain_error("jacobi_theta1_prime0: Im z must be positive");
    const complexd ipiz = complexd(0.0, kPi) * complexd(z.re, z.im);
    complexd sum(0.0, 0.0);
    for (std::int64_t n = 0;; ++n) {
        if (n > cfg.max_terms)
            throw convergence_error("jacobi_theta1_prime0: series exceeded max_terms");
        const double half = static_cast<double>(n) + 0.5;
        complexd term = static_cast<double>(2 * n + 1) * std::exp(ipiz * (half * half));
        if (n % 2 == 1) term = -term;
        sum += term;
        const double next_half = half + 1.0;
        const double next_log_bound = -kPi * z.im * next_half * next_half +
                                      std::log(2.0 * static_cast<double>(n) + 3.0);
        if (next_log_bound < std::log(0.25 * cfg.abs_tol)) break;
    }
    return 2.0 * kPi * sum;
}

double dilog(double x) {
    if (x > 1.0) throw std::domain_error("dilog: real branch requires x <= 1");
    constexpr double pi2_6 = kPi * kPi / 6.0;
    if (x == 1.0) return pi2_6;
    if (x < -1.0) {
        const double u = -x;
        return -pi2_6 - 0.5 * std::log(u) * std::log(u) - dilog(-1.0 / u);
    }
    if (x > 0.5) {
        return pi2_6 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
    }
    if (x < -0.5) {
        // Li2(x) + Li2(-x) = Li2(x^2)/2
        return 0.5 * dilog(x * x) - dilog(-x);
    }
    double term = x;
    double sum = x;
    for (int n = 2; n < 256; ++n) {
        term *= x;
        const double add = term / static_cast<double>(n * n);
        sum += add;
        if (std::abs(add) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

} // namespace torustrace::specfun
