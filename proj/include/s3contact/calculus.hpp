#pragma once

/**
 * @file calculus.hpp
 * @brief Differential operators on a patch: fundamental forms, curvatures,
 *        surface gradient, Laplace-Beltrami, and the connection coefficient w_2^1.
 *
 * Extrinsic quantities use the jet directly (II_ij = <F_ij, e3>, valid since
 * <F, e3> = 0). Intrinsic curvature comes from the Brioschi formula and serves as
 * an independent check of the Gauss equation K = 1 + det(shape operator).
 */

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Core>
#include <Eigen/LU>

#include "surface.hpp"

namespace s3contact {

using ScalarField = std::function<double(ParamPoint)>;

struct CalcConfig {
    double h_f = 1e-4;       ///< first-derivative step for scalar fields and frames
    double h_second = 1e-3;  ///< step for the Laplace-Beltrami stencil
    double h_metric = 1e-3;  ///< step for second derivatives of the metric (Brioschi)
    double eps_deg = kDefaultDegeneracyEps;
};

struct MetricDerivatives {
    double Eu, Ev, Fu, Fv, Gu, Gv;
    double Evv, Fuv, Guu;
};

struct MetricData {
    double E = 1.0, F = 0.0, G = 1.0;
    std::optional<MetricDerivatives> d;

    double det() const { return E * G - F * F; }
    /// Inverse metric g^{ij}.
    Eigen::Matrix2d inverse() const {
        Eigen::Matrix2d inv;
        inv << G, -F, -F, E;
        return inv / det();
    }
};

inline MetricData first_fundamental_form(const Jet2& jet) {
    MetricData m;
    m.E = inner(jet.Fu, jet.Fu);
    m.F = inner(jet.Fu, jet.Fv);
    m.G = inner(jet.Fv, jet.Fv);
    if (!(m.det() > 0.0)) throw DegenerateImmersionError("first_fundamental_form: EG - F^2 <= 0");
    return m;
}

namespace detail {

struct MetricFirstDerivs {
    double Eu, Ev, Fu, Fv, Gu, Gv;
};

inline MetricFirstDerivs metric_first_derivs(const Jet2& j) {
    return {2 * inner(j.Fuu, j.Fu),
            2 * inner(j.Fuv, j.Fu),
            inner(j.Fuu, j.Fv) + inner(j.Fu, j.Fuv),
            inner(j.Fuv, j.Fv) + inner(j.Fu, j.Fvv),
            2 * inner(j.Fuv, j.Fv),
            2 * inner(j.Fvv, j.Fv)};
}

inline void check_step(double x, double h) {
    if (!(h > 0.0) || x + h == x) throw std::invalid_argument("finite difference step underflows");
}

}  // namespace detail

/**
 * Metric with derivatives. First derivatives come from the jet; the second
 * derivatives the Brioschi formula needs are central differences of those
 * with step h (O(h^2)).
 */
inline MetricData metric_with_derivatives(const SurfacePatch& patch, ParamPoint p, double h) {
    detail::check_step(p.u, h);
    detail::check_step(p.v, h);
    const Jet2 jet = eval_jet(patch, p);
    MetricData m = first_fundamental_form(jet);
    const auto d0 = detail::metric_first_derivs(jet);
    const auto du_p = detail::metric_first_derivs(eval_jet(patch, {p.u + h, p.v}));
    const auto du_m = detail::metric_first_derivs(eval_jet(patch, {p.u - h, p.v}));
    const auto dv_p = detail::metric_first_derivs(eval_jet(patch, {p.u, p.v + h}));
    const auto dv_m = detail::metric_first_derivs(eval_jet(patch, {p.u, p.v - h}));
    MetricDerivatives d{};
    d.Eu = d0.Eu;
    d.Ev = d0.Ev;
    d.Fu = d0.Fu;
    d.Fv = d0.Fv;
    d.Gu = d0.Gu;
    d.Gv = d0.Gv;
    d.Evv = (dv_p.Ev - dv_m.Ev) / (2 * h);
    d.Guu = (du_p.Gu - du_m.Gu) / (2 * h);
    d.Fuv = 0.5 * ((dv_p.Fu - dv_m.Fu) / (2 * h) + (du_p.Fv - du_m.Fv) / (2 * h));
    m.d = d;
    return m;
}

/// Brioschi formula; needs metric derivatives.
inline double gauss_curvature_intrinsic(const MetricData& m) {
    if (!m.d) throw std::invalid_argument("gauss_curvature_intrinsic: metric derivatives missing");
    if (!(m.det() > 0.0)) throw DegenerateImmersionError("gauss_curvature_intrinsic: degenerate metric");
    const MetricDerivatives& d = *m.d;
    Eigen::Matrix3d m1, m2;
    m1 << -0.5 * d.Evv + d.Fuv - 0.5 * d.Guu, 0.5 * d.Eu, d.Fu - 0.5 * d.Ev,
          d.Fv - 0.5 * d.Gu, m.E, m.F,
          0.5 * d.Gv, m.F, m.G;
    m2 << 0.0, 0.5 * d.Ev, 0.5 * d.Gu,
          0.5 * d.Ev, m.E, m.F,
          0.5 * d.Gu, m.F, m.G;
    return (m1.determinant() - m2.determinant()) / (m.det() * m.det());
}

struct ShapeData {
    double l = 0.0, m = 0.0, n = 0.0;  ///< II in the (u, v) basis
    MetricData metric;
    Eigen::Matrix2d A_frame = Eigen::Matrix2d::Zero();  ///< II(e_i, e_j)
    double H = 0.0;
    double K_ext = 0.0;
};

inline double mean_curvature(const ShapeData& s) {
    const MetricData& g = s.metric;
    return (g.G * s.l - 2 * g.F * s.m + g.E * s.n) / (2 * g.det());
}

/// Gauss equation in the unit sphere: K = 1 + det(shape operator).
inline double gauss_curvature_extrinsic(const ShapeData& s) {
    return 1.0 + (s.l * s.n - s.m * s.m) / s.metric.det();
}

/// Coefficients (a, b) with X = a Fu + b Fv, for X tangent.
inline Eigen::Vector2d tangent_coordinates(const Jet2& jet, const MetricData& g, const AmbientVector& X) {
    return g.inverse() * Eigen::Vector2d(inner(X, jet.Fu), inner(X, jet.Fv));
}

inline ShapeData second_fundamental_form(const Jet2& jet, const AdaptedFrame& frame) {
    ShapeData s;
    s.metric = first_fundamental_form(jet);
    s.l = inner(jet.Fuu, frame.e3);
    s.m = inner(jet.Fuv, frame.e3);
    s.n = inner(jet.Fvv, frame.e3);
    Eigen::Matrix2d II;
    II << s.l, s.m, s.m, s.n;
    Eigen::Matrix2d C;
    C.col(0) = tangent_coordinates(jet, s.metric, frame.e1);
    C.col(1) = tangent_coordinates(jet, s.metric, frame.e2);
    s.A_frame = C.transpose() * II * C;
    s.H = mean_curvature(s);
    s.K_ext = gauss_curvature_extrinsic(s);
    return s;
}

/// Central-difference partials (f_u, f_v).
inline Eigen::Vector2d coordinate_gradient(const ScalarField& f, ParamPoint p, double h) {
    detail::check_step(p.u, h);
    detail::check_step(p.v, h);
    return {(f({p.u + h, p.v}) - f({p.u - h, p.v})) / (2 * h), (f({p.u, p.v + h}) - f({p.u, p.v - h})) / (2 * h)};
}

/// grad f = g^{ij} f_j d_i as an ambient tangent vector.
inline AmbientVector surface_gradient(const SurfacePatch& patch, const ScalarField& f, ParamPoint p,
                                      double h_f = 1e-4) {
    const Jet2 jet = eval_jet(patch, p);
    const MetricData g = first_fundamental_form(jet);
    const Eigen::Vector2d up = g.inverse() * coordinate_gradient(f, p, h_f);
    return up[0] * jet.Fu + up[1] * jet.Fv;
}

/**
 * Laplace-Beltrami in divergence form, (1/sqrt g) d_i (sqrt g g^{ij} d_j f),
 * discretized on a staggered 3x3 stencil: fluxes at the four half-step points
 * use exact metric values there and O(h^2) midpoint differences of f.
 */
inline double laplace_beltrami(const SurfacePatch& patch, const ScalarField& f, ParamPoint p, double h = 1e-3) {
    detail::check_step(p.u, h);
    detail::check_step(p.v, h);
    double fv[3][3];
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) fv[i + 1][j + 1] = f({p.u + i * h, p.v + j * h});

    auto half_metric = [&](double du, double dv) {
        const MetricData g = first_fundamental_form(eval_jet(patch, {p.u + du, p.v + dv}));
        return std::pair{std::sqrt(g.det()), g.inverse()};
    };

    // u-fluxes at (u +- h/2, v).
    auto u_flux = [&](int side) {
        const auto [sg, inv] = half_metric(0.5 * side * h, 0.0);
        const int lo = side > 0 ? 1 : 0, hi = side > 0 ? 2 : 1;
        const double f_u = (fv[hi][1] - fv[lo][1]) / h;
        const double f_v = (fv[lo][2] - fv[lo][0] + fv[hi][2] - fv[hi][0]) / (4 * h);
        return sg * (inv(0, 0) * f_u + inv(0, 1) * f_v);
    };
    auto v_flux = [&](int side) {
        const auto [sg, inv] = half_metric(0.0, 0.5 * side * h);
        const int lo = side > 0 ? 1 : 0, hi = side > 0 ? 2 : 1;
        const double f_v = (fv[1][hi] - fv[1][lo]) / h;
        const double f_u = (fv[2][lo] - fv[0][lo] + fv[2][hi] - fv[0][hi]) / (4 * h);
        return sg * (inv(1, 0) * f_u + inv(1, 1) * f_v);
    };

    const double div = (u_flux(+1) - u_flux(-1)) / h + (v_flux(+1) - v_flux(-1)) / h;
    const MetricData g0 = first_fundamental_form(eval_jet(patch, p));
    return div / std::sqrt(g0.det());
}

/// Contact angle around `center`, unwrapped through (sin, cos) so no branch jump enters a stencil.
inline ScalarField unwrapped_beta(const SurfacePatch& patch, const AdaptedFrame& center, double eps_deg) {
    const double s0 = center.sin_beta, c0 = center.cos_beta, b0 = center.beta;
    return [&patch, s0, c0, b0, eps_deg](ParamPoint q) {
        const AdaptedFrame fr = adapted_frame(eval_jet(patch, q), patch.orientation(), eps_deg);
        return b0 + std::atan2(fr.sin_beta * c0 - fr.cos_beta * s0, fr.cos_beta * c0 + fr.sin_beta * s0);
    };
}

/**
 * w_2^1(X) = <D_X f2, f1> with f1 = e1, f2 = i e1, and D the Levi-Civita
 * derivative of S^3. The field f2 is differenced over neighbouring frames.
 */
inline double connection_w21(const SurfacePatch& patch, ParamPoint p, const AdaptedFrame& frame,
                             const AmbientVector& X, const CalcConfig& cfg = {}) {
    if (frame.degenerate) throw GeometryError("connection_w21: degenerate frame");
    const double h = cfg.h_f;
    detail::check_step(p.u, h);
    detail::check_step(p.v, h);
    auto f2_at = [&](double du, double dv) {
        return j_mul(adapted_frame(eval_jet(patch, {p.u + du, p.v + dv}), patch.orientation(), cfg.eps_deg).e1);
    };
    const AmbientVector f2_u = (f2_at(h, 0) - f2_at(-h, 0)) / (2 * h);
    const AmbientVector f2_v = (f2_at(0, h) - f2_at(0, -h)) / (2 * h);
    const Jet2 jet = eval_jet(patch, p);
    const Eigen::Vector2d ab = tangent_coordinates(jet, first_fundamental_form(jet), X);
    const AmbientVector dV = ab[0] * f2_u + ab[1] * f2_v;
    const AmbientVector D = covariant_derivative(jet.F, X, dV, j_mul(frame.e1));
    return inner(D, frame.e1);
}

/// Every pointwise quantity the identity checks consume.
struct GeomSample {
    ParamPoint p;
    AmbientVector position, Fu, Fv;
    AdaptedFrame frame;
    ShapeData shape;
    double beta = 0.0;
    double beta1 = 0.0, beta2 = 0.0;
    AmbientVector grad_beta = AmbientVector::Zero();
    double lap_beta = 0.0;
    double H = 0.0;
    double K_ext = 0.0;
    double K_int = 0.0;
    Eigen::Matrix2d A_frame = Eigen::Matrix2d::Zero();
    double w21_e1 = std::numeric_limits<double>::quiet_NaN();
    double w21_e2 = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
};

inline GeomSample sample_geometry(const SurfacePatch& patch, ParamPoint p, const CalcConfig& cfg = {}) {
    const Jet2 jet = eval_jet(patch, p);
    GeomSample s;
    s.p = p;
    s.position = jet.F.coords();
    s.Fu = jet.Fu;
    s.Fv = jet.Fv;
    s.frame = adapted_frame(jet, patch.orientation(), cfg.eps_deg);
    s.degenerate = s.frame.degenerate;
    s.beta = s.frame.beta;

    s.shape = second_fundamental_form(jet, s.frame);
    s.H = s.shape.H;
    s.K_ext = s.shape.K_ext;
    s.A_frame = s.shape.A_frame;
    s.K_int = gauss_curvature_intrinsic(metric_with_derivatives(patch, p, cfg.h_metric));

    const ScalarField beta = unwrapped_beta(patch, s.frame, cfg.eps_deg);
    s.grad_beta = surface_gradient(patch, beta, p, cfg.h_f);
    s.beta1 = inner(s.grad_beta, s.frame.e1);
    s.beta2 = inner(s.grad_beta, s.frame.e2);
    s.lap_beta = laplace_beltrami(patch, beta, p, cfg.h_second);

    if (!s.degenerate) {
        s.w21_e1 = connection_w21(patch, p, s.frame, s.frame.e1, cfg);
        s.w21_e2 = connection_w21(patch, p, s.frame, s.frame.e2, cfg);
    }
    return s;
}

}  // namespace s3contact
