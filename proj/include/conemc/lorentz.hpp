#pragma once

// Minkowski 3-space primitives: the metric dx^2 + dy^2 - dz^2, the Lorentzian
// cross product, causal classification, and the stereographic projection of
// the upper hyperboloid onto the open unit disk.

#include <complex>

namespace conemc {

struct LVec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    LVec3() = default;
    LVec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    LVec3 operator+(const LVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    LVec3 operator-(const LVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    LVec3 operator-() const { return {-x, -y, -z}; }
    LVec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    LVec3& operator+=(const LVec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline LVec3 operator*(double s, const LVec3& v) { return v * s; }

enum class CausalClass { spacelike, null, timelike };

// <a,b> = ax*bx + ay*by - az*bz
double minkowski_dot(const LVec3& a, const LVec3& b);

// The unique w with <w,c> = -det(a,b,c) for every c, rows (a,b,c).
LVec3 lorentz_cross(const LVec3& a, const LVec3& b);

// (x - iy)/(1 + z); maps the upper hyperboloid into |w| < 1.
// Throws std::domain_error when 1 + z <= 0.
std::complex<double> stereographic(const LVec3& g);

// Sign of <v,v>, with |<v,v>| <= tol mapped to null. Requires tol >= 0.
CausalClass classify(const LVec3& v, double tol);

// Plain Euclidean length, used for residual norms.
double euclidean_norm(const LVec3& v);

}  // namespace conemc
