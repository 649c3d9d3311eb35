#pragma once

#include <Eigen/Dense>

namespace torusrec {

using Vec2 = Eigen::Vector2d;
using Vec2i = Eigen::Vector2i;
using Mat2 = Eigen::Matrix2d;

// Quarter turn counterclockwise: J*(1,0) = (0,1).
inline Mat2 quarter_turn() {
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}

inline Mat2 rotation2d(double radians) {
    Mat2 r;
    r << std::cos(radians), -std::sin(radians), std::sin(radians), std::cos(radians);
    return r;
}

// A flat torus R^2 / (B Z^2).  The basis columns are the lattice generators;
// points are stored in reference coordinates in [0,1)^2 and mapped to the
// plane ("native" coordinates) by the basis.
struct FlatTorus {
    Mat2 basis = Mat2::Identity();

    static FlatTorus square() { return FlatTorus{}; }
    static FlatTorus from_basis(const Mat2& b) { return FlatTorus{b}; }

    double det() const { return basis.determinant(); }
    bool nonsingular(double tol = 1e-12) const { return std::abs(det()) > tol; }

    Vec2 to_native(const Vec2& reference) const { return basis * reference; }
    Vec2 to_reference(const Vec2& native) const { return basis.inverse() * native; }
};

// Componentwise fractional part with result in [0,1).
inline double fract(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards against floor rounding for tiny negatives
    return f;
}

inline Vec2 fract(const Vec2& v) { return Vec2(fract(v.x()), fract(v.y())); }

}  // namespace torusrec
