#include "torustrace/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace torustrace::lattice {

namespace {

constexpr double kPi = std::numbers::pi;

struct Reduction {
    double x, y;
    std::array<long, 4> mat; // {a,b,c,d}: z_r = (a z + b)/(c z + d)
};

Reduction reduce(double x, double y) {
    long A = 1, B = 0, C = 0, D = 1;
    for (int iter = 0; iter < 256; ++iter) {
        const double k = std::round(x);
        if (k != 0.0) {
            x -= k;
            const long kl = static_cast<long>(k);
            A -= kl * C;
            B -= kl * D;
        }
        const double n = x * x + y * y;
        if (n < 1.0 - 1e-15) {
            const double nx = -x / n;
            const double ny = y / n;
            x = nx;
            y = ny;
            const long A2 = -C, B2 = -D, C2 = A, D2 = B;
            A = A2; B = B2; C = C2; D = D2;
        } else {
            break;
        }
    }
    return {x, y, {A, B, C, D}};
}

} // namespace

const char* to_string(ShapeClass c) {
    switch (c) {
        case ShapeClass::Skinny: return "Skinny";
        case ShapeClass::Fat: return "Fat";
        case ShapeClass::Borderline: return "Borderline";
    }
    return "?";
}

Vec2 TorusShape::basis_u() const {
    return {1.0 / std::sqrt(red_im_), 0.0};
}

Vec2 TorusShape::basis_v() const {
    const double s = std::sqrt(red_im_);
    return {red_re_ / s, s};
}

double TorusShape::coarea() const {
    const Vec2 u = basis_u();
    const Vec2 v = basis_v();
    return u.x * v.y - u.y * v.x;
}

TorusShape make_torus(double tau_re, double tau_im) {
    if (!(tau_im > 0.0)) throw std::domain_error("make_torus: Im tau must be positive");
    TorusShape s;
    s.tau_re_ = tau_re;
    s.tau_im_ = tau_im;
    const Reduction r = reduce(tau_re, tau_im);
    s.red_re_ = r.x;
    s.red_im_ = r.y;
    s.mat_ = r.mat;
    return s;
}

TorusShape make_rect_torus(double a) {
    if (!(a > 0.0)) throw std::domain_error("make_rect_torus: a must be positive");
    TorusShape s = make_torus(0.0, kPi / a);
    s.rect_param_ = a;
    return s;
}

double dual_eigenvalue(const TorusShape& shape, long m, long n) {
    const double x = shape.reduced_re();
    const double y = shape.reduced_im();
    const double t = static_cast<double>(n) - static_cast<double>(m) * x;
    return 4.0 * kPi * kPi * (static_cast<double>(m) * static_cast<double>(m) * y + t * t / y);
}

EigenvalueList eigenvalues(const TorusShape& shape, double cutoff, std::size_t count_limit) {
    if (!(cutoff > 0.0)) throw std::domain_error("eigenvalues: cutoff must be positive");
    const double x = shape.reduced_re();
    const double y = shape.reduced_im();
    const double r2 = cutoff / (4.0 * kPi * kPi); // |xi|^2 <= r2

    EigenvalueList out;
    out.cutoff = cutoff;

    const long m_max = static_cast<long>(std::floor(std::sqrt(r2 / y))) + 1;
    for (long m = -m_max; m <= m_max; ++m) {
        const double rem = r2 - static_cast<double>(m) * static_cast<double>(m) * y;
        if (rem < 0.0) continue;
        const double half = std::sqrt(rem * y);
        const double center = static_cast<double>(m) * x;
        const long n_lo = static_cast<long>(std::ceil(center - half)) - 1;
        const long n_hi = static_cast<long>(std::floor(center + half)) + 1;
        for (long n = n_lo; n <= n_hi; ++n) {
            if (m == 0 && n == 0) continue;
            const double lam = dual_eigenvalue(shape, m, n);
            if (lam <= cutoff) {
                if (out.values.size() >= count_limit)
                    throw resource_error("eigenvalues: enumeration exceeds the configured count limit");
                out.values.push_back(lam);
                out.indices.push_back({m, n});
            }
        }
    }

    std::vector<std::size_t> order(out.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::make_tuple(out.values[i], out.indices[i][0], out.indices[i][1]) <
               std::make_tuple(out.values[j], out.indices[j][0], out.indices[j][1]);
    });
    EigenvalueList sorted;
    sorted.cutoff = cutoff;
    sorted.values.reserve(order.size());
    sorted.indices.reserve(order.size());
    for (std::size_t i : order) {
        sorted.values.push_back(out.values[i]);
        sorted.indices.push_back(out.indices[i]);
    }
    return sorted;
}

double lambda1(const TorusShape& shape) {
    const double y = shape.reduced_im();
    const double cutoff = 4.0 * kPi * kPi * (y + 1.0 / y) + 1.0;
    const EigenvalueList ev = eigenvalues(shape, cutoff);
    return ev.values.front();
}

ShapeClass classify(const TorusShape& shape, double tol) {
    const double l1 = lambda1(shape);
    const double threshold = 8.0 * kPi;
    if (l1 < threshold - tol) return ShapeClass::Skinny;
    if (l1 > threshold + tol) return ShapeClass::Fat;
    return ShapeClass::Borderline;
}

} // namespace torustrace::lattice
