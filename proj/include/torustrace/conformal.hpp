#pragma once

#include <functional>
#include <span>
#include <vector>

#include "torustrace/lattice.hpp"
#include "torustrace/quadrature.hpp"

namespace torustrace::conformal {

enum class FactorKind { Bubble, SmoothedBubble, Variation, Sampled };

// A conformal factor e^{2 phi} on the rectangle torus [-a,a] x [0,2pi] with
// metric (1/(4 pi a)) * Euclidean, where phi depends on x1 only.  The profile
// is extended 2a-periodically, so phi() accepts any real argument.
class LongitudinalFactor {
public:
    double a() const { return a_; }
    FactorKind kind() const { return kind_; }

    double phi(double x1) const;
    double e2phi(double x1) const;

    // SmoothedBubble only: mollifier width and the blend cutoff radius around
    // the seam |x1| = a outside of which the profile equals the bubble.
    double width() const { return width_; }
    double blend_radius() const { return blend_radius_; }
    // SmoothedBubble only: constant added to phi by the unit-area renormalization.
    double renorm_log() const { return renorm_log_; }

    double lambda() const { return lambda_; }

    // integral of e^{2 phi} dV (equals 1 for admissible factors); uses a
    // seam-refined composite rule for smoothed factors.
    double area(const quadrature::QuadratureConfig& cfg = {}) const;

    // wraps into [-a, a)
    double wrap(double x1) const;

private:
    friend LongitudinalFactor bubble_factor(double);
    friend LongitudinalFactor smoothed_bubble(double, double);
    friend LongitudinalFactor variation_factor(double, std::function<double(double)>, double,
                                               const quadrature::QuadratureConfig&);
    friend LongitudinalFactor sampled_factor(double, std::vector<double>);
    LongitudinalFactor() = default;

    double a_ = 1.0;
    FactorKind kind_ = FactorKind::Bubble;
    double width_ = 0.0;
    double blend_radius_ = 0.0;
    double renorm_log_ = 0.0;
    double lambda_ = 0.0;
    std::function<double(double)> profile_; // phi as a function of wrapped x1
};

// e^{2 phi}(x1) = a / (tanh(a) cosh(x1)^2); unit area in closed form.
LongitudinalFactor bubble_factor(double a);

// C-infinity smoothing of the bubble seam: the profile is mollified by a
// compactly supported bump of the given width inside a blend zone around
// |x1| = a and renormalized to unit area.  Outside the blend zone (in
// particular on [-a+1, a-1] whenever 3*width <= 1) the shape of the factor
// is exactly the bubble's.
LongitudinalFactor smoothed_bubble(double a, double width);

// e^{2 phi} = 1 + lambda psi with a mean-zero direction psi; validates
// integral psi dV = 0 (to 1e-12) and positivity of 1 + lambda psi.
LongitudinalFactor variation_factor(double a, std::function<double(double)> psi, double lambda,
                                    const quadrature::QuadratureConfig& cfg = {});

// phi given by samples at x_i = -a + 2a*i/m, i = 0..m-1, periodic cubic interpolation.
LongitudinalFactor sampled_factor(double a, std::vector<double> phi_samples);

// Normalized longitudinal Fourier mode psi_k(x1) = sqrt(2) cos(k pi x1 / a)
// (so integral psi^2 dV = 1) and its metric Laplace eigenvalue 4 pi^3 k^2 / a.
std::function<double(double)> longitudinal_mode(double a, int k);
double longitudinal_mode_eigenvalue(double a, int k);

// Mean-zero periodic solution of Delta_g u = e^{2 phi} - 1 on the rectangle,
// Delta_g = 4 pi a * (-d^2/dx1^2), sampled on a uniform grid.
struct Potential {
    double a = 0.0;
    int n = 0;                   // panel count
    double h = 0.0;
    double grid_offset = 0.0;    // node x_i = -a + grid_offset + i h
    std::vector<double> samples; // u at the n+1 nodes, samples[0] == samples[n]
    double residual = 0.0;       // max | -4 pi a D2 u - (e^{2 phi} - 1) |

    double node(int i) const { return -a + grid_offset + i * h; }
    // periodic 4-point Lagrange interpolation
    double value(double x1) const;
    // centered derivative at a node index (periodic)
    double derivative(int i) const;
};

Potential solve_potential(const LongitudinalFactor& factor,
                          const quadrature::QuadratureConfig& cfg = {},
                          double grid_offset = 0.0);

// F[phi] = (1/2pi) int phi e^{2phi} dV - int (Delta^{-1} e^{2phi}) e^{2phi} dV.
double conformal_change_functional(const LongitudinalFactor& factor,
                                   const quadrature::QuadratureConfig& cfg = {},
                                   double grid_offset = 0.0);

// Z~0_phi(1) = F[phi] + Z~(1) of the matching rectangle torus.
double ztilde_conformal(const lattice::TorusShape& shape, const LongitudinalFactor& factor,
                        const quadrature::QuadratureConfig& cfg = {});

// m_phi(x) - m(x) = (1/2pi) phi(x1) - 2 (Delta^{-1} e^{2phi})(x1) + int e^{2phi} Delta^{-1} e^{2phi} dV.
double robin_mass_change(const LongitudinalFactor& factor, double x1, double x2,
                         const quadrature::QuadratureConfig& cfg = {});

// Variations of Z~ along e^{2 phi} = 1 + lambda psi at lambda = 0 for a
// longitudinal mean-zero direction psi on a rectangle torus.
double first_variation(const lattice::TorusShape& shape, const std::function<double(double)>& psi,
                       const quadrature::QuadratureConfig& cfg = {});
double second_variation(const lattice::TorusShape& shape, const std::function<double(double)>& psi,
                        const quadrature::QuadratureConfig& cfg = {});

// Spectral route for general directions: psi = sum c_k phi_k over orthonormal
// dual-lattice eigenfunctions with indices (m, n); returns
// sum c_k^2 (1/4pi - 2/lambda_k).
struct ModeCoefficient {
    std::array<long, 2> index{0, 0};
    double amplitude = 0.0;
};
double second_variation_spectral(const lattice::TorusShape& shape,
                                 std::span<const ModeCoefficient> coeffs);

struct SmoothingRow {
    double width = 0.0;
    double f_value = 0.0;
    double deviation = 0.0; // |F[phi_width] - F[phi_bubble]|
};
std::vector<SmoothingRow> smoothing_convergence(double a, std::span<const double> widths,
                                                const quadrature::QuadratureConfig& cfg = {});

// |F[phi] evaluated on the twisted lattice - F[phi] on the rectangle|.
// A longitudinal profile reduces to the same 1-D periodic solve for every
// twist, so the residual reflects only the quadrature-grid difference; the
// twisted evaluation phases its grid by the twist fraction.
double twist_invariance_check(double a, double twist, const LongitudinalFactor& factor,
                              const quadrature::QuadratureConfig& cfg = {});

} // namespace torustrace::conformal
