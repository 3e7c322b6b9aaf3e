#pragma once

#include <complex>
#include <cstdint>

#include "torustrace/errors.hpp"

namespace torustrace::specfun {

using complexd = std::complex<double>;

// A point z = re + i*im in the upper half plane.
struct ComplexModulus {
    double re = 0.0;
    double im = 1.0;
};

struct SeriesConfig {
    double abs_tol = 1e-14;
    std::int64_t max_terms = 1'000'000;
};

// Euler-Mascheroni constant.
double euler_gamma();

// log eta(z) assembled term by term; the real part (log |eta|) stays accurate
// in absolute terms even when |eta| underflows the double range.
// The modulus is reduced into the fundamental domain (|Re z| <= 1/2, |z| >= 1)
// before summing, so the q-series always sees |q| <= exp(-pi*sqrt(3)).
complexd log_dedekind_eta(const ComplexModulus& z, const SeriesConfig& cfg = {});

// Dedekind eta(z) = q^{1/24} prod_{n>=1} (1 - q^n), q = exp(2 pi i z).
complexd dedekind_eta(const ComplexModulus& z, const SeriesConfig& cfg = {});

// Jacobi theta_1 with quasi-periods 1 and z:
//   theta1(w | z) = 2 sum_{n>=0} (-1)^n p^{(n+1/2)^2} sin((2n+1) pi w),  p = exp(i pi z).
complexd jacobi_theta1(const complexd& w, const ComplexModulus& z, const SeriesConfig& cfg = {});

// d/dw theta1(w | z) at w = 0 (equal to 2 pi eta(z)^3, computed from its own series).
complexd jacobi_theta1_prime0(const ComplexModulus& z, const SeriesConfig& cfg = {});

// Real dilogarithm Li2(x) for x <= 1; arguments below -1 are routed through the
// inversion identity Li2(-u) + Li2(-1/u) = -pi^2/6 - log(u)^2/2.
double dilog(double x);

} // namespace torustrace::specfun
