#include "torustrace/hideseek.hpp"

#include "torustrace/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace torustrace::hideseek {

namespace {

constexpr double kPi = std::numbers::pi;

// Measured once against ztilde_flat on the square torus (epsilon = 0.05,
// step_dt = epsilon^2/10, 4e5 trials) and frozen.  Bundles the constant from
// the mass-trace relation with the first-passage discretization bias of the
// Euler walk; it is a diffusion-normalization artifact, not a fit per shape.
constexpr double kCalibrationOffset = -0.067585;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

double calibration_offset() { return kCalibrationOffset; }

HitTimeEstimate simulate_hitting(const TorusShape& shape, const McConfig& cfg) {
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("simulate_hitting: epsilon must be positive");
    if (!(cfg.step_dt > 0.0) || cfg.step_dt > cfg.epsilon * cfg.epsilon / 10.0)
        throw std::invalid_argument("simulate_hitting: step_dt must satisfy step_dt <= epsilon^2/10");
    if (cfg.n_trials < 100) throw std::invalid_argument("simulate_hitting: need n_trials >= 100");

    const lattice::Vec2 u = shape.basis_u();
    const lattice::Vec2 v = shape.basis_v();
    const double shortest = std::min(std::hypot(u.x, u.y), std::hypot(v.x, v.y));
    const double injectivity = 0.5 * shortest;
    const double diameter_bound = std::hypot(u.x + std::abs(v.x), v.y); // covers the fundamental cell
    const bool ball_covers = cfg.epsilon >= diameter_bound;
    if (!ball_covers && !(cfg.epsilon < 0.5 * injectivity))
        throw std::domain_error("simulate_hitting: epsilon must be below half the injectivity radius");

    const double sigma = std::sqrt(2.0 * cfg.step_dt);
    constexpr long long kMaxSteps = 50'000'000;

    double sum = 0.0, sumsq = 0.0;
    for (long long trial = 0; trial < cfg.n_trials; ++trial) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::normal_distribution<double> normal(0.0, 1.0);

        const double ta = unif(rng);
        const double tb = unif(rng);
        const lattice::Vec2 target{ta * u.x + tb * v.x, ta * u.y + tb * v.y};

        const double eps2 = cfg.epsilon * cfg.epsilon;
        const bool rectangular = (v.x == 0.0);
        const auto inside_ball = [&](const lattice::Vec2& p) {
            const double dy = p.y - target.y;
            const double dx = p.x - target.x;
            const double beta = dy / v.y;
            const double alpha = (dx - beta * v.x) / u.x;
            const double a0 = alpha - std::round(alpha);
            const double b0 = beta - std::round(beta);
            if (rectangular) {
                const double cx = a0 * u.x;
                const double cy = b0 * v.y;
                return cx * cx + cy * cy <= eps2;
            }
            double best = 1e300;
            for (int i = -1; i <= 1; ++i)
                for (int j = -1; j <= 1; ++j) {
                    const double cx = (a0 + i) * u.x + (b0 + j) * v.x;
                    const double cy = (b0 + j) * v.y;
                    const double n2 = cx * cx + cy * cy;
                    if (n2 < best) best = n2;
                }
            return best <= eps2;
        };

        lattice::Vec2 pos{0.0, 0.0};
        long long steps = 0;
        while (!inside_ball(pos)) {
            pos.x += sigma * normal(rng);
            pos.y += sigma * normal(rng);
            // wrap back into the fundamental cell
            const double beta = pos.y / v.y;
            const double alpha = (pos.x - beta * v.x) / u.x;
            const double aw = alpha - std::floor(alpha);
            const double bw = beta - std::floor(beta);
            pos = {aw * u.x + bw * v.x, aw * u.y + bw * v.y};
            if (++steps > kMaxSteps)
                throw convergence_error("simulate_hitting: trial exceeded the step budget");
        }
        const double t = static_cast<double>(steps) * cfg.step_dt;
        sum += t;
        sumsq += t * t;
    }

    HitTimeEstimate est;
    est.n = cfg.n_trials;
    est.mean = sum / static_cast<double>(cfg.n_trials);
    const double var =
        (sumsq - static_cast<double>(cfg.n_trials) * est.mean * est.mean) /
        static_cast<double>(cfg.n_trials - 1);
    est.std_err = std::sqrt(std::max(var, 0.0) / static_cast<double>(cfg.n_trials));
    return est;
}

double trace_estimate(const TorusShape& shape, const McConfig& cfg) {
    const HitTimeEstimate est = simulate_hitting(shape, cfg);
    return est.mean + std::log(cfg.epsilon) / (2.0 * kPi) + kCalibrationOffset;
}

} // namespace torustrace::hideseek
