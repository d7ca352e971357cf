#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "s3contact/ambient.hpp"

using namespace s3contact;

namespace {

void expect_vec_near(const AmbientVector& a, const AmbientVector& b, double tol) {
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

const double kHalfRoot2 = std::numbers::sqrt2 / 2;

}  // namespace

TEST(Inner, Examples) {
    EXPECT_EQ(inner({1, 0, 0, 0}, {1, 0, 0, 0}), 1.0);
    EXPECT_EQ(inner({1, 0, 0, 0}, {0, 1, 0, 0}), 0.0);
    EXPECT_EQ(inner({0.5, 0.5, 0.5, 0.5}, {1, 0, 0, 0}), 0.5);
}

TEST(JMul, Examples) {
    expect_vec_near(j_mul({1, 0, 0, 0}), {0, 1, 0, 0}, 0.0);
    expect_vec_near(j_mul({0, 1, 0, 0}), {-1, 0, 0, 0}, 0.0);
    const AmbientVector v(0.3, -0.1, 0.7, 0.2);
    expect_vec_near(j_mul(j_mul(v)), -v, 0.0);
}

TEST(JMul, IsAnIsometry) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const AmbientVector v = oracle::random_vec(rng), w = oracle::random_vec(rng);
        EXPECT_NEAR(inner(j_mul(v), j_mul(w)), inner(v, w), 1e-12);
    }
}

TEST(Reeb, Examples) {
    expect_vec_near(reeb(AmbientPoint(1, 0, 0, 0)), {0, 1, 0, 0}, 0.0);
    expect_vec_near(reeb(AmbientPoint(kHalfRoot2, 0, kHalfRoot2, 0)), {0, kHalfRoot2, 0, kHalfRoot2}, 1e-15);
}

TEST(Reeb, UnitAndTangentAtRandomPoints) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const AmbientPoint z(oracle::random_unit(rng));
        const AmbientVector xi = reeb(z);
        EXPECT_NEAR(xi.norm(), 1.0, 1e-12);
        EXPECT_NEAR(inner(xi, z), 0.0, 1e-12);
    }
}

TEST(AmbientPoint, RejectsOffSphereCoordinates) {
    EXPECT_THROW(AmbientPoint(1, 1, 0, 0), std::invalid_argument);
    EXPECT_THROW(AmbientPoint::normalized(AmbientVector::Zero()), std::invalid_argument);
    EXPECT_NEAR(AmbientPoint::normalized({3, 0, 4, 0}).x2(), 0.8, 1e-15);
}

TEST(TangentProject, Examples) {
    const AmbientPoint z(1, 0, 0, 0);
    expect_vec_near(tangent_project(z, z.coords()), AmbientVector::Zero(), 0.0);
    expect_vec_near(tangent_project(z, {0, 0, 1, 0}), {0, 0, 1, 0}, 0.0);
    expect_vec_near(tangent_project(z, {1, 1, 0, 0}), {0, 1, 0, 0}, 0.0);
}

TEST(TangentProject, IdempotentAndSelfAdjoint) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        const AmbientPoint z(oracle::random_unit(rng));
        const AmbientVector v = oracle::random_vec(rng), w = oracle::random_vec(rng);
        const AmbientVector pv = tangent_project(z, v);
        expect_vec_near(tangent_project(z, pv), pv, 1e-14);
        EXPECT_NEAR(inner(pv, z), 0.0, 1e-14);
        EXPECT_NEAR(inner(pv, w), inner(v, tangent_project(z, w)), 1e-14);
    }
}

TEST(CovariantDerivative, GreatCircleIsGeodesic) {
    for (double t : {0.0, 0.4, 1.3, 2.9}) {
        const AmbientPoint z(std::cos(t), 0, std::sin(t), 0);
        const AmbientVector V(-std::sin(t), 0, std::cos(t), 0);  // z'
        const AmbientVector dV(-std::cos(t), 0, -std::sin(t), 0);  // z''
        expect_vec_near(covariant_derivative(z, V, dV, V), AmbientVector::Zero(), 1e-15);
    }
}

TEST(CovariantDerivative, ConstantOrthogonalFieldIsParallel) {
    const AmbientPoint z(1, 0, 0, 0);
    const AmbientVector X(0, 1, 0, 0), V(0, 0, 1, 0);
    expect_vec_near(covariant_derivative(z, X, AmbientVector::Zero(), V), AmbientVector::Zero(), 0.0);
}

TEST(CovariantDerivative, CliffordCoordinateField) {
    // V = X = d/du of (sqrt2/2)(e^{iu}, e^{iv}) at (0,0); dV is its u-derivative.
    const auto jet = oracle::torus_jet(kHalfRoot2, kHalfRoot2, 0, 0);
    const AmbientPoint z(jet.F);
    expect_vec_near(jet.Fuu, {-kHalfRoot2, 0, 0, 0}, 1e-15);
    EXPECT_NEAR(inner(jet.Fu, jet.Fu), 0.5, 1e-15);
    const AmbientVector D = covariant_derivative(z, jet.Fu, jet.Fuu, jet.Fu);
    expect_vec_near(D, {-std::numbers::sqrt2 / 4, 0, std::numbers::sqrt2 / 4, 0}, 1e-15);
}

TEST(CovariantDerivative, OutputIsTangent) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const AmbientPoint z(oracle::random_unit(rng));
        const AmbientVector X = tangent_project(z, oracle::random_vec(rng));
        const AmbientVector V = tangent_project(z, oracle::random_vec(rng));
        // Any dV consistent with <V, z> = 0 along X has radial part -<V, X>.
        const AmbientVector dV = tangent_project(z, oracle::random_vec(rng)) - inner(V, X) * z.coords();
        EXPECT_LT(std::abs(inner(covariant_derivative(z, X, dV, V), z)), 1e-10);
    }
}
