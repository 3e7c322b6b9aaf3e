#include "torustrace/conformal.hpp"

#include "torustrace/flat_trace.hpp"

#include <cmath>
#include <numbers>

namespace torustrace::conformal {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_periodic(double x, double a) {
    double r = std::fmod(x + a, 2.0 * a);
    if (r < 0.0) r += 2.0 * a;
    return r - a;
}

// log cosh(x) without overflow
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

double bubble_phi(double a, double x) {
    const double log_amp = 0.5 * std::log(a / std::tanh(a));
    return log_amp - log_cosh(wrap_periodic(x, a));
}

// C-infinity step: 0 at t <= 0, 1 at t >= 1.
double smoothstep_cinf(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double s0 = std::exp(-1.0 / t);
    const double s1 = std::exp(-1.0 / (1.0 - t));
    return s0 / (s0 + s1);
}

double mollifier_raw(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

double mollifier_norm() {
    static const double norm = [] {
        quadrature::QuadratureConfig cfg;
        cfg.n = 64;
        cfg.rule = quadrature::Rule::gauss;
        return quadrature::integrate(mollifier_raw, -1.0, 1.0, cfg);
    }();
    return norm;
}

// (phi * rho_width)(x) with the bump mollifier, periodic extension of phi.
double mollified_bubble_phi(double a, double width, double x) {
    quadrature::QuadratureConfig cfg;
    cfg.n = 24;
    cfg.rule = quadrature::Rule::gauss;
    const double integral = quadrature::integrate(
        [&](double s) { return mollifier_raw(s) * bubble_phi(a, x - width * s); }, -1.0, 1.0, cfg);
    return integral / mollifier_norm();
}

// Mean-zero periodic solution of -4 pi a u'' = g on a uniform grid with
// n panels; g is mean-corrected so the periodic problem is exactly solvable.
std::vector<double> solve_periodic_poisson(std::span<const double> g, double a, double h) {
    const std::size_t n = g.size() - 1;
    const double mean_g = quadrature::simpson(g, h) / (2.0 * a);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = -(g[i] - mean_g) / (4.0 * kPi * a);

    std::vector<double> w = quadrature::cumulative_integral(f, h);
    const double w_drift = w[n];
    for (std::size_t i = 0; i <= n; ++i)
        w[i] -= w_drift * (static_cast<double>(i) / static_cast<double>(n));

    const double c1 = -quadrature::simpson(w, h) / (2.0 * a);
    std::vector<double> u = quadrature::cumulative_integral(w, h);
    for (std::size_t i = 0; i <= n; ++i) u[i] += c1 * (static_cast<double>(i) * h);
    const double u_drift = u[n] - u[0];
    for (std::size_t i = 0; i <= n; ++i)
        u[i] -= u_drift * (static_cast<double>(i) / static_cast<double>(n));

    const double mean_u = quadrature::simpson(u, h) / (2.0 * a);
    for (double& v : u) v -= mean_u;
    u[n] = u[0];
    return u;
}

} // namespace

double LongitudinalFactor::wrap(double x1) const { return wrap_periodic(x1, a_); }

double LongitudinalFactor::phi(double x1) const { return profile_(wrap_periodic(x1, a_)); }

double LongitudinalFactor::e2phi(double x1) const { return std::exp(2.0 * phi(x1)); }

double LongitudinalFactor::area(const quadrature::QuadratureConfig& cfg) const {
    const auto density = [this](double x) { return e2phi(x); };
    if (kind_ == FactorKind::SmoothedBubble) {
        // resolve the blend zones around the seam separately
        quadrature::QuadratureConfig edge = cfg;
        edge.n = std::max(2048, 64 * static_cast<int>(std::ceil(blend_radius_ / width_)));
        quadrature::QuadratureConfig mid = cfg;
        mid.n = std::max(cfg.n / 4, 4096);
        const double r = blend_radius_;
        const double left = quadrature::integrate(density, -a_, -a_ + r, edge);
        const double middle = quadrature::integrate(density, -a_ + r, a_ - r, mid);
        const double right = quadrature::integrate(density, a_ - r, a_, edge);
        return (left + middle + right) / (2.0 * a_);
    }
    return quadrature::integrate(density, -a_, a_, cfg) / (2.0 * a_);
}

LongitudinalFactor bubble_factor(double a) {
    if (!(a > 0.0)) throw std::domain_error("bubble_factor: a must be positive");
    LongitudinalFactor f;
    f.a_ = a;
    f.kind_ = FactorKind::Bubble;
    f.profile_ = [a](double x) { return bubble_phi(a, x); };
    return f;
}

LongitudinalFactor smoothed_bubble(double a, double width) {
    if (!(a > 0.0)) throw std::domain_error("smoothed_bubble: a must be positive");
    if (!(width > 0.0) || !(width < 1.0))
        throw std::domain_error("smoothed_bubble: width must lie in (0, 1)");
    const double r2 = std::min(1.0, 3.0 * width);
    if (!(r2 < 0.5 * a))
        throw std::domain_error("smoothed_bubble: width too large for this rectangle");
    const double r1 = width;

    LongitudinalFactor f;
    f.a_ = a;
    f.kind_ = FactorKind::SmoothedBubble;
    f.width_ = width;
    f.blend_radius_ = r2;

    // raw profile: bubble away from the seam, mollified inside the blend zone
    auto raw = [a, width, r1, r2](double x) {
        const double xw = wrap_periodic(x, a);
        const double dist = a - std::abs(xw);
        if (dist >= r2) return bubble_phi(a, xw);
        const double b = (dist <= r1) ? 1.0 : smoothstep_cinf((r2 - dist) / (r2 - r1));
        const double base = bubble_phi(a, xw);
        return base + b * (mollified_bubble_phi(a, width, xw) - base);
    };

    f.profile_ = raw;
    const double area_raw = f.area();
    if (!(area_raw > 0.0) || !std::isfinite(area_raw))
        throw std::domain_error("smoothed_bubble: width too large to keep positivity");
    const double shift = -0.5 * std::log(area_raw);
    f.renorm_log_ = shift;
    f.profile_ = [raw, shift](double x) { return raw(x) + shift; };
    return f;
}

LongitudinalFactor variation_factor(double a, std::function<double(double)> psi, double lambda,
                                    const quadrature::QuadratureConfig& cfg) {
    if (!(a > 0.0)) throw std::domain_error("variation_factor: a must be positive");
    const double mean =
        quadrature::integrate([&](double x) { return psi(x); }, -a, a, cfg) / (2.0 * a);
    if (std::abs(mean) > 1e-12)
        throw std::invalid_argument("variation_factor: psi must have zero mean against dV");
    const int probes = 8192;
    for (int i = 0; i <= probes; ++i) {
        const double x = -a + 2.0 * a * i / probes;
        if (!(1.0 + lambda * psi(x) > 0.0))
            throw std::domain_error("variation_factor: 1 + lambda psi must stay positive");
    }
    LongitudinalFactor f;
    f.a_ = a;
    f.kind_ = FactorKind::Variation;
    f.lambda_ = lambda;
    f.profile_ = [psi = std::move(psi), lambda](double x) {
        return 0.5 * std::log1p(lambda * psi(x));
    };
    return f;
}

LongitudinalFactor sampled_factor(double a, std::vector<double> phi_samples) {
    if (!(a > 0.0)) throw std::domain_error("sampled_factor: a must be positive");
    if (phi_samples.size() < 4)
        throw std::invalid_argument("sampled_factor: need at least 4 samples");
    LongitudinalFactor f;
    f.a_ = a;
    f.kind_ = FactorKind::Sampled;
    const std::size_t m = phi_samples.size();
    f.profile_ = [a, m, s = std::move(phi_samples)](double x) {
        // periodic Catmull-Rom through the samples at x_i = -a + 2a i/m
        const double hs = 2.0 * a / static_cast<double>(m);
        double t = (wrap_periodic(x, a) + a) / hs;
        const double fl = std::floor(t);
        const double u = t - fl;
        const long i = static_cast<long>(fl);
        const auto at = [&](long k) {
            long idx = (i + k) % static_cast<long>(m);
            if (idx < 0) idx += static_cast<long>(m);
            return s[static_cast<std::size_t>(idx)];
        };
        const double p0 = at(-1), p1 = at(0), p2 = at(1), p3 = at(2);
        return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u +
                      (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u * u);
    };
    return f;
}

std::function<double(double)> longitudinal_mode(double a, int k) {
    if (!(a > 0.0) || k < 1) throw std::domain_error("longitudinal_mode: need a > 0 and k >= 1");
    const double freq = static_cast<double>(k) * kPi / a;
    return [freq](double x) { return std::sqrt(2.0) * std::cos(freq * x); };
}

double longitudinal_mode_eigenvalue(double a, int k) {
    if (!(a > 0.0) || k < 1)
        throw std::domain_error("longitudinal_mode_eigenvalue: need a > 0 and k >= 1");
    return 4.0 * kPi * kPi * kPi * static_cast<double>(k) * static_cast<double>(k) / a;
}

double Potential::value(double x1) const {
    double t = (wrap_periodic(x1, a) + a - grid_offset) / h;
    const double nn = static_cast<double>(n);
    t = std::fmod(t, nn);
    if (t < 0.0) t += nn;
    const long i = static_cast<long>(std::floor(t));
    const double u = t - static_cast<double>(i);
    const auto at = [&](long k) {
        long idx = (i + k) % n;
        if (idx < 0) idx += n;
        return samples[static_cast<std::size_t>(idx)];
    };
    const double fm = at(-1), f0 = at(0), f1 = at(1), f2 = at(2);
    const double wm = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return wm * fm + w0 * f0 + w1 * f1 + w2 * f2;
}

double Potential::derivative(int i) const {
    const auto at = [&](long k) {
        long idx = (static_cast<long>(i) + k) % n;
        if (idx < 0) idx += n;
        return samples[static_cast<std::size_t>(idx)];
    };
    return (at(1) - at(-1)) / (2.0 * h);
}

Potential solve_potential(const LongitudinalFactor& factor, const quadrature::QuadratureConfig& cfg,
                          double grid_offset) {
    if (cfg.n < 16 || cfg.n % 2 != 0)
        throw std::invalid_argument("solve_potential: panel count must be even and >= 16");
    const double a = factor.a();
    const double area = factor.area(cfg);
    if (std::abs(area - 1.0) > 1e-8)
        throw std::invalid_argument("solve_potential: factor must have unit area (to 1e-8)");

    Potential p;
    p.a = a;
    p.n = cfg.n;
    p.h = 2.0 * a / cfg.n;
    p.grid_offset = grid_offset;

    const std::size_t count = static_cast<std::size_t>(cfg.n) + 1;
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = factor.e2phi(p.node(static_cast<int>(i))) - 1.0;

    p.samples = solve_periodic_poisson(g, a, p.h);

    // residual of the metric Laplacian against the original right-hand side
    double res = 0.0;
    double max_d2g = 0.0;
    const double h2 = p.h * p.h;
    for (int i = 0; i < cfg.n; ++i) {
        const int im = (i == 0) ? cfg.n - 1 : i - 1;
        const int ip = i + 1;
        const double d2u = (p.samples[static_cast<std::size_t>(ip)] - 2.0 * p.samples[static_cast<std::size_t>(i)] +
                            p.samples[static_cast<std::size_t>(im)]) / h2;
        res = std::max(res, std::abs(-4.0 * kPi * a * d2u - g[static_cast<std::size_t>(i)]));
        const double d2g = (g[static_cast<std::size_t>(ip)] - 2.0 * g[static_cast<std::size_t>(i)] +
                            g[static_cast<std::size_t>(im)]) / h2;
        max_d2g = std::max(max_d2g, std::abs(d2g));
    }
    p.residual = res;
    // the centered second difference of the exact solution already carries an
    // h^2 g''/12 truncation term (plus h-scaled seam terms for kinked
    // profiles); the gate only flags a broken solve, the tests pin the
    // tight canonical values
    const double gate = 1e-6 + 8.0 * h2 * max_d2g;
    if (res > gate)
        throw convergence_error("solve_potential: discrete residual above tolerance");
    return p;
}

double conformal_change_functional(const LongitudinalFactor& factor,
                                   const quadrature::QuadratureConfig& cfg, double grid_offset) {
    const Potential p = solve_potential(factor, cfg, grid_offset);
    const std::size_t count = static_cast<std::size_t>(p.n) + 1;
    std::vector<double> integrand(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = p.node(static_cast<int>(i));
        const double ph = factor.phi(x);
        integrand[i] = (ph / (2.0 * kPi) - p.samples[i]) * std::exp(2.0 * ph);
    }
    return quadrature::simpson(integrand, p.h) / (2.0 * p.a);
}

double ztilde_conformal(const lattice::TorusShape& shape, const LongitudinalFactor& factor,
                        const quadrature::QuadratureConfig& cfg) {
    const auto rect = shape.rect_param();
    if (!rect || std::abs(*rect - factor.a()) > 1e-9 * std::max(1.0, factor.a()))
        throw std::invalid_argument("ztilde_conformal: shape must be the rectangle matching the factor");
    return conformal_change_functional(factor, cfg) + flat_trace::ztilde_flat(shape);
}

double robin_mass_change(const LongitudinalFactor& factor, double x1, double x2,
                         const quadrature::QuadratureConfig& cfg) {
    (void)x2; // longitudinal symmetry: the change is independent of x2
    const Potential p = solve_potential(factor, cfg);
    const std::size_t count = static_cast<std::size_t>(p.n) + 1;
    std::vector<double> weighted(count);
    for (std::size_t i = 0; i < count; ++i)
        weighted[i] = factor.e2phi(p.node(static_cast<int>(i))) * p.samples[i];
    const double cross = quadrature::simpson(weighted, p.h) / (2.0 * p.a);
    return factor.phi(x1) / (2.0 * kPi) - 2.0 * p.value(x1) + cross;
}

namespace {

struct LongitudinalGrid {
    double a = 0.0;
    double h = 0.0;
    std::vector<double> psi;
    std::vector<double> inv; // Delta^{-1} psi
};

LongitudinalGrid prepare_variation(const lattice::TorusShape& shape,
                                   const std::function<double(double)>& psi,
                                   const quadrature::QuadratureConfig& cfg) {
    const auto rect = shape.rect_param();
    if (!rect)
        throw std::invalid_argument("variation: longitudinal route needs a rectangle torus");
    if (cfg.n < 16 || cfg.n % 2 != 0)
        throw std::invalid_argument("variation: panel count must be even and >= 16");
    LongitudinalGrid g;
    g.a = *rect;
    g.h = 2.0 * g.a / cfg.n;
    const std::size_t count = static_cast<std::size_t>(cfg.n) + 1;
    g.psi.resize(count);
    for (std::size_t i = 0; i < count; ++i) g.psi[i] = psi(-g.a + static_cast<double>(i) * g.h);
    const double mean = quadrature::simpson(g.psi, g.h) / (2.0 * g.a);
    if (std::abs(mean) > 1e-12)
        throw std::invalid_argument("variation: psi must integrate to zero against dV");
    g.inv = solve_periodic_poisson(g.psi, g.a, g.h);
    return g;
}

} // namespace

double first_variation(const lattice::TorusShape& shape, const std::function<double(double)>& psi,
                       const quadrature::QuadratureConfig& cfg) {
    const LongitudinalGrid g = prepare_variation(shape, psi, cfg);
    const double int_psi = quadrature::simpson(g.psi, g.h) / (2.0 * g.a);
    const double int_inv = quadrature::simpson(g.inv, g.h) / (2.0 * g.a);
    return int_psi / (4.0 * kPi) - 2.0 * int_inv;
}

double second_variation(const lattice::TorusShape& shape, const std::function<double(double)>& psi,
                        const quadrature::QuadratureConfig& cfg) {
    const LongitudinalGrid g = prepare_variation(shape, psi, cfg);
    const std::size_t count = g.psi.size();
    std::vector<double> sq(count), cross(count);
    for (std::size_t i = 0; i < count; ++i) {
        sq[i] = g.psi[i] * g.psi[i];
        cross[i] = g.psi[i] * g.inv[i];
    }
    const double int_sq = quadrature::simpson(sq, g.h) / (2.0 * g.a);
    const double int_cross = quadrature::simpson(cross, g.h) / (2.0 * g.a);
    return int_sq / (4.0 * kPi) - 2.0 * int_cross;
}

double second_variation_spectral(const lattice::TorusShape& shape,
                                 std::span<const ModeCoefficient> coeffs) {
    double total = 0.0;
    for (const ModeCoefficient& c : coeffs) {
        if (c.index[0] == 0 && c.index[1] == 0)
            throw std::invalid_argument("second_variation_spectral: the zero mode is not admissible");
        const double lam = lattice::dual_eigenvalue(shape, c.index[0], c.index[1]);
        total += c.amplitude * c.amplitude * (1.0 / (4.0 * kPi) - 2.0 / lam);
    }
    return total;
}

std::vector<SmoothingRow> smoothing_convergence(double a, std::span<const double> widths,
                                                const quadrature::QuadratureConfig& cfg) {
    quadrature::QuadratureConfig fine = cfg;
    fine.n = std::max(cfg.n, 1 << 16);
    const double f_bubble = conformal_change_functional(bubble_factor(a), fine);
    std::vector<SmoothingRow> rows;
    rows.reserve(widths.size());
    for (double w : widths) {
        const double fw = conformal_change_functional(smoothed_bubble(a, w), fine);
        rows.push_back({w, fw, std::abs(fw - f_bubble)});
    }
    return rows;
}

double twist_invariance_check(double a, double twist, const LongitudinalFactor& factor,
                              const quadrature::QuadratureConfig& cfg) {
    if (std::abs(factor.a() - a) > 1e-12 * std::max(1.0, a))
        throw std::invalid_argument("twist_invariance_check: factor does not match the rectangle");
    const double f_rect = conformal_change_functional(factor, cfg, 0.0);
    // the twisted lattice shares the 1-D periodic solve; its evaluation grid
    // is phased by the twist fraction, so the residual is pure quadrature noise
    const double frac = twist - std::floor(twist);
    const double offset = frac * (2.0 * a / cfg.n);
    const double f_twist = conformal_change_functional(factor, cfg, offset);
    return std::abs(f_twist - f_rect);
}

} // namespace torustrace::conformal
