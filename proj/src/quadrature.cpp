#include "torustrace/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace torustrace::quadrature {

double simpson(std::span<const double> samples, double h) {
    if (samples.size() < 3 || samples.size() % 2 == 0)
        throw std::invalid_argument("simpson: need an even panel count (odd sample count >= 3)");
    const std::size_t n = samples.size() - 1;
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < n; i += 2) odd += samples[i];
    for (std::size_t i = 2; i < n; i += 2) even += samples[i];
    return h / 3.0 * (samples[0] + samples[n] + 4.0 * odd + 2.0 * even);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("integrate: need at least 2 panels");
    if (cfg.rule == Rule::simpson) {
        const int n = (cfg.n % 2 == 0) ? cfg.n : cfg.n + 1;
        const double h = (hi - lo) / n;
        std::vector<double> s(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(i)] = f(lo + i * h);
        return simpson(s, h);
    }
    // composite 4-point Gauss-Legendre
    static constexpr std::array<double, 2> xs{0.3399810435848563, 0.8611363115940526};
    static constexpr std::array<double, 2> ws{0.6521451548625461, 0.3478548451374538};
    const double h = (hi - lo) / cfg.n;
    double total = 0.0;
    for (int p = 0; p < cfg.n; ++p) {
        const double c = lo + (p + 0.5) * h;
        const double r = 0.5 * h;
        for (int k = 0; k < 2; ++k)
            total += r * ws[static_cast<std::size_t>(k)] *
                     (f(c - r * xs[static_cast<std::size_t>(k)]) + f(c + r * xs[static_cast<std::size_t>(k)]));
    }
    return total;
}

std::vector<double> cumulative_integral(std::span<const double> samples, double h) {
    if (samples.size() < 5)
        throw std::invalid_argument("cumulative_integral: need at least 4 panels");
    const std::size_t n = samples.size() - 1;
    // trapezoid sums with the Euler-Maclaurin endpoint correction
    //   int_{x0}^{xi} f = T_i - h^2/12 (f'(x_i) - f'(x_0)) + O(h^4),
    // which keeps the error a smooth function of the node index.
    std::vector<double> deriv(samples.size());
    deriv[0] = (-3.0 * samples[0] + 4.0 * samples[1] - samples[2]) / (2.0 * h);
    deriv[n] = (3.0 * samples[n] - 4.0 * samples[n - 1] + samples[n - 2]) / (2.0 * h);
    for (std::size_t i = 1; i < n; ++i) deriv[i] = (samples[i + 1] - samples[i - 1]) / (2.0 * h);

    std::vector<double> out(samples.size(), 0.0);
    double running = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        running += 0.5 * h * (samples[i - 1] + samples[i]);
        out[i] = running - h * h / 12.0 * (deriv[i] - deriv[0]);
    }
    return out;
}

} // namespace torustrace::quadrature
