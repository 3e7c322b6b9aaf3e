#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "torustrace/errors.hpp"

namespace torustrace::lattice {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

enum class ShapeClass { Skinny, Fat, Borderline };

const char* to_string(ShapeClass c);

// A unit-area flat torus R^2 / Lambda with modulus tau in the upper half plane.
// The stored lattice basis is built from the SL(2,Z)-reduced modulus
// (|Re tau| <= 1/2, |tau| >= 1) and has co-area 1; points handed to the
// Green's-function routines live in this basis frame.
class TorusShape {
public:
    double tau_re() const { return tau_re_; }
    double tau_im() const { return tau_im_; }

    double reduced_re() const { return red_re_; }
    double reduced_im() const { return red_im_; }

    // SL(2,Z) matrix {a,b,c,d} with tau_reduced = (a tau + b) / (c tau + d).
    std::array<long, 4> reduction_matrix() const { return mat_; }

    // Unit-area lattice basis vectors in the reduced frame.
    Vec2 basis_u() const;
    Vec2 basis_v() const;
    double coarea() const;

    std::optional<double> rect_param() const { return rect_param_; }

private:
    friend TorusShape make_torus(double, double);
    friend TorusShape make_rect_torus(double);
    TorusShape() = default;

    double tau_re_ = 0.0, tau_im_ = 1.0;
    double red_re_ = 0.0, red_im_ = 1.0;
    std::array<long, 4> mat_{1, 0, 0, 1};
    std::optional<double> rect_param_;
};

TorusShape make_torus(double tau_re, double tau_im);

// The paper's rectangle [-a,a] x [0,2pi] with metric (1/(4 pi a)) * Euclidean;
// side lengths sqrt(a/pi) x sqrt(pi/a), modulus tau = i pi / a.
TorusShape make_rect_torus(double a);

struct EigenvalueList {
    std::vector<double> values;                 // ascending, multiplicities kept
    std::vector<std::array<long, 2>> indices;   // dual index (m, n) per value
    double cutoff = 0.0;
    std::size_t count() const { return values.size(); }
};

// Laplace eigenvalue 4 pi^2 |m u* + n v*|^2 of the dual-lattice mode (m, n)
// on the unit-area lattice: 4 pi^2 (m^2 y + (n - m x)^2 / y) with x+iy reduced.
double dual_eigenvalue(const TorusShape& shape, long m, long n);

// All nonzero eigenvalues <= cutoff, sorted by (value, m, n).
EigenvalueList eigenvalues(const TorusShape& shape, double cutoff,
                           std::size_t count_limit = 4'000'000);

double lambda1(const TorusShape& shape);

// Skinny iff lambda1 < 8 pi - tol, Fat iff lambda1 > 8 pi + tol, else Borderline.
ShapeClass classify(const TorusShape& shape, double tol = 1e-9);

} // namespace torustrace::lattice
