#include "conemc/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace conemc {

double minkowski_dot(const LVec3& a, const LVec3& b) {
    return a.x * b.x + a.y * b.y - a.z * b.z;
}

LVec3 lorentz_cross(const LVec3& a, const LVec3& b) {
    // Solving <w,c> = -det(a,b,c) componentwise flips the sign of the first
    // two Euclidean cross-product components and keeps the third.
    return {a.z * b.y - a.y * b.z,
            a.x * b.z - a.z * b.x,
            a.x * b.y - a.y * b.x};
}

std::complex<double> stereographic(const LVec3& g) {
    const double denom = 1.0 + g.z;
    if (!(denom > 0.0)) {
        throw std::domain_error("stereographic: point has 1 + z <= 0");
    }
    return {g.x / denom, -g.y / denom};
}

CausalClass classify(const LVec3& v, double tol) {
    if (tol < 0.0) {
        throw std::invalid_argument("classify: tol must be >= 0");
    }
    const double q = minkowski_dot(v, v);
    if (std::abs(q) <= tol) return CausalClass::null;
    return q > 0.0 ? CausalClass::spacelike : CausalClass::timelike;
}

double euclidean_norm(const LVec3& v) {
    return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

}  // namespace conemc
