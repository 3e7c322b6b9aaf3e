// temporary development probe (deleted before finalization)
#include <cstdio>
#include <cmath>
#include <numbers>
#include "torustrace/conformal.hpp"
#include "torustrace/flat_trace.hpp"
#include "torustrace/greens.hpp"
#include "torustrace/lattice.hpp"
#include "support/oracles.hpp"

using namespace torustrace;
using std::numbers::pi;

int main() {
    setvbuf(stdout, nullptr, _IONBF, 0);
    // potential residual ratios with the EM-corrected cumulative integral
    for (double a : {5.0, 6.0, 7.0}) {
        double prev = 0.0;
        for (int nexp : {13, 14, 15}) {
            quadrature::QuadratureConfig cfg; cfg.n = 1 << nexp;
            const auto p = conformal::solve_potential(conformal::bubble_factor(a), cfg);
            std::printf("residual a=%.0f N=2^%d: %.6e  ratio=%.3f\n", a, nexp, p.residual,
                        prev > 0 ? prev / p.residual : 0.0);
            prev = p.residual;
        }
    }
    // closed-form potential check (bubble): u = x^2/(8 pi a) - log cosh(x)/(4 pi tanh a) + c
    {
        const double a = 10.0;
        quadrature::QuadratureConfig cfg;
        const auto p = conformal::solve_potential(conformal::bubble_factor(a), cfg);
        // compute c by zero-mean of closed form on the same grid
        double worst = 0.0;
        // closed-form c: mean of x^2/(8pi a) - log cosh/(4 pi tanh a) over dx/(2a)
        // evaluate numerically with the same grid for comparison
        std::vector<double> cf(p.samples.size());
        for (size_t i = 0; i < cf.size(); ++i) {
            const double x = p.node((int)i);
            cf[i] = x*x/(8*pi*a) - std::log(std::cosh(x))/(4*pi*std::tanh(a));
        }
        const double mean = quadrature::simpson(cf, p.h) / (2*a);
        for (size_t i = 0; i < cf.size(); ++i)
            worst = std::max(worst, std::abs((cf[i]-mean) - p.samples[i]));
        std::printf("closed-form potential max diff a=10: %.3e\n", worst);
        // flux at seam
        std::printf("u'(seam) = %.3e  u'(mid)=%.3e\n", p.derivative(0), p.derivative(p.n/2));
    }
    // spectral windows within |xi| <= 60, square torus half-period
    const auto sq = lattice::make_torus(0.0, 1.0);
    const lattice::Vec2 zero{0.0, 0.0}, half{0.5, 0.5};
    const auto ge = greens::greens_flat(sq, half, zero);
    for (double ri : {20.0, 30.0, 40.0, 50.0}) {
        const double s = oracles::greens_spectral_sum(sq, half, zero, ri, 60.0);
        std::printf("window(%.0f,60): diff=%.3e\n", ri, ge.g - s);
    }
    // criterion-7-style margins: 25 displacements x 3 shapes with window (60,120)
    {
        const auto hex = lattice::make_torus(0.5, std::sqrt(3.0)/2.0);
        const auto r10 = lattice::make_rect_torus(10.0);
        for (const auto* sh : {&sq, &hex, &r10}) {
            double worst = 0.0;
            for (int i = 1; i <= 5; ++i) for (int j = 1; j <= 5; ++j) {
                const double al = i / 6.0 + 0.013, be = j / 6.0 + 0.007;
                const auto u = sh->basis_u(); const auto v = sh->basis_v();
                const lattice::Vec2 x{al*u.x + be*v.x, al*u.y + be*v.y};
                const double g1 = greens::greens_flat(*sh, x, zero).g;
                const double g2 = oracles::greens_spectral_sum(*sh, x, zero, 60.0, 120.0);
                worst = std::max(worst, std::abs(g1-g2));
            }
            std::printf("greens grid worst (y_r=%.3f): %.3e\n", sh->reduced_im(), worst);
        }
    }
    // Richardson mass extrapolation
    {
        const double m = greens::robin_mass(sq, zero);
        double s4 = 0, s5 = 0;
        for (double d : {1e-3, 1e-4, 1e-5}) {
            const auto gev = greens::greens_flat(sq, {d, 0.0}, zero);
            const double val = gev.g + std::log(gev.dist)/(2*pi);
            std::printf("mass probe d=%.0e: %.12e (m=%.12e) diff=%.3e\n", d, val, m, val - m);
            if (d == 1e-4) s4 = val; if (d == 1e-5) s5 = val;
        }
        const double rich = (100.0*s5 - s4)/99.0;
        std::printf("richardson: %.12e diff=%.3e\n", rich, rich - m);
    }
    // second variation: FD oracle vs closed form
    {
        const auto shape10 = lattice::make_rect_torus(10.0);
        const auto psi = conformal::longitudinal_mode(10.0, 1);
        const double sv = conformal::second_variation(shape10, psi);
        const double lam = conformal::longitudinal_mode_eigenvalue(10.0, 1);
        const double closed = 1.0/(4*pi) - 2.0/lam;
        const double eps = 1e-3;
        quadrature::QuadratureConfig cfg;
        const double fp = conformal::conformal_change_functional(conformal::variation_factor(10.0, psi, eps), cfg);
        const double fm = conformal::conformal_change_functional(conformal::variation_factor(10.0, psi, -eps), cfg);
        const double fd = (fp + fm) / (eps*eps);
        std::printf("2nd var: solver=%.12e closed=%.12e fd=%.12e relerr=%.3e\n",
                    sv, closed, fd, std::abs(fd-sv)/std::abs(sv));
        const double fv = conformal::first_variation(shape10, psi);
        std::printf("1st var: %.3e\n", fv);
        // square torus mode 1 positive
        const auto shapePi = lattice::make_rect_torus(pi);
        std::printf("square mode1 2nd var = %.6f (expect >0)\n",
                    conformal::second_variation(shapePi, conformal::longitudinal_mode(pi, 1)));
    }
    // smoothing table at a=5
    {
        const double widths[] = {0.5, 0.25, 0.1, 0.02, 1e-3};
        const auto rows = conformal::smoothing_convergence(5.0, widths);
        for (const auto& r : rows)
            std::printf("width=%7.4f F=%.12f dev=%.3e\n", r.width, r.f_value, r.deviation);
    }
    // twist invariance residuals
    {
        quadrature::QuadratureConfig cfg;
        std::printf("twist(10,0.3)=%.3e twist(20,0.5)=%.3e twist(10,0)=%.3e\n",
            conformal::twist_invariance_check(10.0, 0.3, conformal::bubble_factor(10.0), cfg),
            conformal::twist_invariance_check(20.0, 0.5, conformal::bubble_factor(20.0), cfg),
            conformal::twist_invariance_check(10.0, 0.0, conformal::bubble_factor(10.0), cfg));
    }
    // robin mass change consistency: int (m_phi - m) e^{2phi} dV vs F
    {
        quadrature::QuadratureConfig cfg;
        const auto f = conformal::bubble_factor(20.0);
        const double F = conformal::conformal_change_functional(f, cfg);
        // integrate the pointwise change against e^{2phi} dV
        const int n = cfg.n; const double h = 40.0/n;
        const auto p = conformal::solve_potential(f, cfg);
        std::vector<double> cross(n+1), integ(n+1);
        for (int i = 0; i <= n; ++i) {
            const double x = p.node(i);
            cross[i] = f.e2phi(x) * p.samples[i];
        }
        const double c3 = quadrature::simpson(cross, h)/(40.0);
        for (int i = 0; i <= n; ++i) {
            const double x = p.node(i);
            const double dm = f.phi(x)/(2*pi) - 2*p.samples[i] + c3;
            integ[i] = dm * f.e2phi(x);
        }
        const double total = quadrature::simpson(integ, h)/40.0;
        std::printf("robin-change consistency: %.3e (F=%.6f)\n", total - F, F);
        const double rm0 = conformal::robin_mass_change(f, 0.0, 0.0, cfg);
        const double rm1 = conformal::robin_mass_change(f, 0.0, 3.0, cfg);
        std::printf("robin change at x1=0: %.6f (x2 independence diff=%.3e)\n", rm0, rm0-rm1);
    }
    return 0;
}
