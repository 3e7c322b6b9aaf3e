#pragma once

#include <cstdint>

#include "torustrace/lattice.hpp"

namespace torustrace::hideseek {

using lattice::TorusShape;

struct McConfig {
    double step_dt = 2.5e-4;     // must satisfy step_dt <= epsilon^2 / 10
    long long n_trials = 10'000; // >= 100
    double epsilon = 0.05;       // target-ball radius
    std::uint64_t seed = 1;
};

struct HitTimeEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    long long n = 0;
};

// Mean first time a diffusion with generator Delta (heat semigroup
// exp(-t Delta), Gaussian increments of variance 2 dt per coordinate) started
// at a fixed point reaches the epsilon-ball around a uniformly random target.
// Per-trial RNG streams derive deterministically from (seed, trial index).
HitTimeEstimate simulate_hitting(const TorusShape& shape, const McConfig& cfg);

// Hitting-time estimate converted to a regularized-trace estimate:
//   trace ~= mean + (1/2pi) log(epsilon) + calibration_offset().
double trace_estimate(const TorusShape& shape, const McConfig& cfg);

// Diffusion-normalization constant measured once on the square torus against
// the closed-form flat trace (epsilon = 0.05, step_dt = epsilon^2/10) and
// frozen; never refit per shape.
double calibration_offset();

} // namespace torustrace::hideseek
