#pragma once

/**
 * @file ambient.hpp
 * @brief C^2 = R^4 primitives and the standard contact structure of S^3.
 *
 * Coordinates are ordered (x1, y1, x2, y2) with z1 = x1 + i y1 and
 * z2 = x2 + i y2. The complex structure acts slot-wise as i(x + iy) = -y + ix.
 */

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

namespace s3contact {

using AmbientVector = Eigen::Vector4d;

/// Real part of the Hermitian product on C^2, i.e. the Euclidean dot product.
inline double inner(const AmbientVector& v, const AmbientVector& w) { return v.dot(w); }

/// Multiplication by i.
inline AmbientVector j_mul(const AmbientVector& v) {
    return AmbientVector(-v[1], v[0], -v[3], v[2]);
}

/// A point of the unit sphere S^3.
class AmbientPoint {
public:
    static constexpr double kUnitTolerance = 1e-12;

    explicit AmbientPoint(const AmbientVector& coords) : coords_(coords) {
        if (std::abs(coords.squaredNorm() - 1.0) > kUnitTolerance) {
            throw std::invalid_argument("AmbientPoint: coordinates are not on the unit sphere");
        }
    }
    AmbientPoint(double x1, double y1, double x2, double y2)
        : AmbientPoint(AmbientVector(x1, y1, x2, y2)) {}

    /// Rescales an arbitrary nonzero vector onto S^3.
    static AmbientPoint normalized(const AmbientVector& v) {
        const double n = v.norm();
        if (!(n > 0.0)) throw std::invalid_argument("AmbientPoint: cannot normalize zero vector");
        return AmbientPoint(AmbientVector(v / n));
    }

    const AmbientVector& coords() const { return coords_; }
    operator const AmbientVector&() const { return coords_; }  // NOLINT(google-explicit-constructor)

    double x1() const { return coords_[0]; }
    double y1() const { return coords_[1]; }
    double x2() const { return coords_[2]; }
    double y2() const { return coords_[3]; }

private:
    AmbientVector coords_;
};

/// Reeb field xi(z) = iz; unit and tangent to S^3 at z.
inline AmbientVector reeb(const AmbientPoint& z) { return j_mul(z.coords()); }

/// Orthogonal projection of v onto T_z S^3.
inline AmbientVector tangent_project(const AmbientPoint& z, const AmbientVector& v) {
    const AmbientVector& p = z.coords();
    return v - inner(v, p) * p;
}

/**
 * Levi-Civita derivative of S^3 for a tangent field V along a tangent vector X,
 * given the Euclidean directional derivative dV = dV(X).
 *
 * Since <V, z> vanishes identically, <dV, z> = -<V, X>, so the tangential part
 * of dV is dV + <V, X> z.
 */
inline AmbientVector covariant_derivative(const AmbientPoint& z, const AmbientVector& X,
                                          const AmbientVector& dV, const AmbientVector& V) {
    return dV + inner(V, X) * z.coords();
}

}  // namespace s3contact
