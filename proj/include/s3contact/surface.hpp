#pragma once

/**
 * @file surface.hpp
 * @brief Parametrized patches in S^3, second-order jets, and the adapted frame.
 *
 * The adapted frame (e1, e2, e3) of an oriented surface is built with the
 * gauge f1 = e1, f2 = i e1, f3 = iz and the sign convention
 *
 *     sin(beta) = <e3, iz>,    cos(beta) = -<e3, i e1> >= 0,
 *
 * which fixes the sign of e1 and puts beta in [-pi/2, pi/2]. With this choice
 *
 *     e2 =  sin(beta) i e1 + cos(beta) iz
 *     e3 = -cos(beta) i e1 + sin(beta) iz.
 */

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ambient.hpp"

namespace s3contact {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutsideDomainError : GeometryError {
    using GeometryError::GeometryError;
};
struct DegenerateImmersionError : GeometryError {
    using GeometryError::GeometryError;
};

struct ParamPoint {
    double u = 0.0;
    double v = 0.0;
    friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

/// Position and first/second parameter derivatives of an immersion.
struct Jet2 {
    AmbientPoint F;
    AmbientVector Fu, Fv, Fuu, Fuv, Fvv;
};

enum class Orientation : int { Positive = 1, Negative = -1 };

inline Orientation flipped(Orientation o) {
    return o == Orientation::Positive ? Orientation::Negative : Orientation::Positive;
}
inline double sign_of(Orientation o) { return static_cast<double>(static_cast<int>(o)); }

struct ParamRect {
    double u_min = 0.0, u_max = 0.0;
    double v_min = 0.0, v_max = 0.0;
};

struct Domain {
    ParamRect rect;
    bool periodic_u = false;
    bool periodic_v = false;
};

inline constexpr double kDefaultImmersionEps = 1e-12;
inline constexpr double kDefaultJetStep = 1e-4;
inline constexpr double kDefaultDegeneracyEps = 1e-6;

/**
 * An immutable parametrized patch. Jets come either from a closed-form
 * evaluator or from central differences of a position map.
 *
 * Periodic axes accept any parameter value; the evaluators are expected to be
 * periodic themselves, so no wrapping is done (wrapping would perturb the
 * finite-difference stencils by rounding).
 */
class SurfacePatch {
public:
    using JetFn = std::function<Jet2(ParamPoint)>;
    using PositionFn = std::function<AmbientVector(ParamPoint)>;

    static SurfacePatch analytic(Domain domain, JetFn jet, Orientation orientation = Orientation::Positive) {
        return SurfacePatch(domain, std::move(jet), 0.0, orientation);
    }

    static SurfacePatch from_positions(Domain domain, PositionFn position, double h_jet = kDefaultJetStep,
                                       Orientation orientation = Orientation::Positive) {
        if (!(h_jet > 0.0)) throw std::invalid_argument("SurfacePatch: h_jet must be positive");
        return SurfacePatch(domain, std::move(position), h_jet, orientation);
    }

    const Domain& domain() const { return domain_; }
    Orientation orientation() const { return orientation_; }
    bool has_analytic_jets() const { return std::holds_alternative<JetFn>(source_); }
    double h_jet() const { return h_jet_; }

    SurfacePatch with_orientation(Orientation o) const {
        SurfacePatch copy = *this;
        copy.orientation_ = o;
        return copy;
    }

    bool contains(ParamPoint p) const {
        const auto& r = domain_.rect;
        const bool in_u = domain_.periodic_u || (p.u >= r.u_min && p.u <= r.u_max);
        const bool in_v = domain_.periodic_v || (p.v >= r.v_min && p.v <= r.v_max);
        return in_u && in_v;
    }

    /// Raw jet without validation; callers go through eval_jet.
    Jet2 raw_jet(ParamPoint p) const {
        if (const auto* fn = std::get_if<JetFn>(&source_)) return (*fn)(p);
        return differenced_jet(std::get<PositionFn>(source_), p);
    }

private:
    SurfacePatch(Domain domain, std::variant<JetFn, PositionFn> source, double h_jet, Orientation o)
        : domain_(domain), source_(std::move(source)), h_jet_(h_jet), orientation_(o) {
        const auto& r = domain_.rect;
        if (!(r.u_max > r.u_min) || !(r.v_max > r.v_min)) {
            throw std::invalid_argument("SurfacePatch: degenerate parameter domain");
        }
    }

    Jet2 differenced_jet(const PositionFn& pos, ParamPoint p) const {
        const double h = h_jet_;
        auto at = [&](double du, double dv) {
            return AmbientPoint::normalized(pos({p.u + du, p.v + dv})).coords();
        };
        const AmbientVector c = at(0, 0);
        const AmbientVector up = at(h, 0), um = at(-h, 0);
        const AmbientVector vp = at(0, h), vm = at(0, -h);
        const AmbientVector pp = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);

        const AmbientPoint F(c);
        const AmbientVector Fu = tangent_project(F, (up - um) / (2 * h));
        const AmbientVector Fv = tangent_project(F, (vp - vm) / (2 * h));
        // Second derivatives of a sphere-valued map have radial part -<Fi, Fj> F.
        auto fix_radial = [&](const AmbientVector& d2, const AmbientVector& a, const AmbientVector& b) {
            return AmbientVector(tangent_project(F, d2) - inner(a, b) * c);
        };
        return Jet2{F, Fu, Fv,
                    fix_radial((up - 2 * c + um) / (h * h), Fu, Fu),
                    fix_radial((pp - pm - mp + mm) / (4 * h * h), Fu, Fv),
                    fix_radial((vp - 2 * c + vm) / (h * h), Fv, Fv)};
    }

    Domain domain_;
    std::variant<JetFn, PositionFn> source_;
    double h_jet_;
    Orientation orientation_;
};

/// Same surface, but with jets taken by central differences of its positions.
inline SurfacePatch with_differenced_jets(const SurfacePatch& patch, double h_jet = kDefaultJetStep) {
    return SurfacePatch::from_positions(
        patch.domain(), [patch](ParamPoint p) { return patch.raw_jet(p).F.coords(); }, h_jet, patch.orientation());
}

inline double gram_determinant(const Jet2& jet) {
    const double E = inner(jet.Fu, jet.Fu), F = inner(jet.Fu, jet.Fv), G = inner(jet.Fv, jet.Fv);
    return E * G - F * F;
}

/// Evaluates the jet at p; throws OutsideDomainError or DegenerateImmersionError.
inline Jet2 eval_jet(const SurfacePatch& patch, ParamPoint p, double eps_imm = kDefaultImmersionEps) {
    if (!patch.contains(p)) {
        throw OutsideDomainError("eval_jet: parameter (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                                 ") outside patch domain");
    }
    Jet2 jet = patch.raw_jet(p);
    if (!(gram_determinant(jet) > eps_imm)) {
        throw DegenerateImmersionError("eval_jet: immersion degenerate at (" + std::to_string(p.u) + ", " +
                                       std::to_string(p.v) + ")");
    }
    return jet;
}

/// Checks the Jet2 invariants: F on S^3, Fu and Fv tangent, immersion nondegenerate.
inline bool jet_is_valid(const Jet2& jet, double tol = 1e-10, double eps_imm = kDefaultImmersionEps) {
    const auto& F = jet.F.coords();
    return std::abs(F.norm() - 1.0) < tol && std::abs(inner(jet.Fu, F)) < tol && std::abs(inner(jet.Fv, F)) < tol &&
           gram_determinant(jet) > eps_imm;
}

namespace detail {

inline double det3(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Generalized cross product: the vector n with det[a, b, c, x] = <n, x>.
inline AmbientVector cross4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c) {
    AmbientVector n;
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector3d ra, rb, rc;
        for (int col = 0, j = 0; col < 4; ++col) {
            if (col == k) continue;
            ra[j] = a[col];
            rb[j] = b[col];
            rc[j] = c[col];
            ++j;
        }
        n[k] = ((k % 2 == 0) ? -1.0 : 1.0) * det3(ra, rb, rc);
    }
    return n;
}

}  // namespace detail

/// Unit normal e3 in T_F S^3 with det[F, Fu, Fv, e3] of the sign of `orientation`.
inline AmbientVector unit_normal(const Jet2& jet, Orientation orientation) {
    const AmbientVector n = detail::cross4(jet.F.coords(), jet.Fu, jet.Fv);
    const double len = n.norm();
    if (!(len > 0.0)) throw DegenerateImmersionError("unit_normal: degenerate tangent plane");
    return sign_of(orientation) * n / len;
}

struct AdaptedFrame {
    AmbientVector e1, e2, e3;
    double beta = 0.0;
    double sin_beta = 0.0;
    double cos_beta = 1.0;
    bool degenerate = false;
};

inline AdaptedFrame adapted_frame(const Jet2& jet, Orientation orientation,
                                  double eps_deg = kDefaultDegeneracyEps) {
    const AmbientVector xi = reeb(jet.F);
    AdaptedFrame fr;
    fr.e3 = unit_normal(jet, orientation);
    double s = inner(fr.e3, xi);

    // e1 spans TS cap Delta: rotate the tangential part of xi by a quarter turn in TS.
    const AmbientVector t1 = jet.Fu.normalized();
    const AmbientVector t2 = (jet.Fv - inner(jet.Fv, t1) * t1).normalized();
    const double a = inner(xi, t1), b = inner(xi, t2);
    const double rho = std::hypot(a, b);
    fr.e1 = rho > 0.0 ? AmbientVector((-b * t1 + a * t2) / rho) : t1;

    double c = -inner(fr.e3, j_mul(fr.e1));
    if (c < 0.0) {
        fr.e1 = -fr.e1;
        c = -c;
    }
    const double r = std::hypot(s, c);
    s /= r;
    c /= r;

    fr.sin_beta = s;
    fr.cos_beta = c;
    fr.beta = std::atan2(s, c);
    fr.e2 = s * j_mul(fr.e1) + c * xi;
    fr.degenerate = std::abs(c) < eps_deg;
    return fr;
}

/// Sample grid: `nu` x `nv` points over the domain or an optional sub-rectangle.
struct GridSpec {
    int nu = 0;
    int nv = 0;
    std::optional<ParamRect> sub;
};

/**
 * Row-major grid points (u outer, v inner). A periodic axis sampled over its
 * full range uses i * span / n; any other axis is cell-centred so stencils
 * around a sample stay inside the domain.
 */
inline std::vector<ParamPoint> grid_points(const SurfacePatch& patch, const GridSpec& grid) {
    if (grid.nu < 2 || grid.nv < 2) throw std::invalid_argument("grid: resolution must be at least 2 per axis");
    const Domain& dom = patch.domain();
    const ParamRect r = grid.sub.value_or(dom.rect);
    if (!(r.u_max > r.u_min) || !(r.v_max > r.v_min)) throw std::invalid_argument("grid: empty sub-rectangle");
    if ((!dom.periodic_u && (r.u_min < dom.rect.u_min || r.u_max > dom.rect.u_max)) ||
        (!dom.periodic_v && (r.v_min < dom.rect.v_min || r.v_max > dom.rect.v_max))) {
        throw OutsideDomainError("grid: sub-rectangle exceeds patch domain");
    }
    auto axis = [](double lo, double hi, int n, bool periodic_full) {
        std::vector<double> xs(static_cast<std::size_t>(n));
        const double step = (hi - lo) / n;
        for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (periodic_full ? i : i + 0.5) * step;
        return xs;
    };
    const auto us = axis(r.u_min, r.u_max, grid.nu, dom.periodic_u && !grid.sub);
    const auto vs = axis(r.v_min, r.v_max, grid.nv, dom.periodic_v && !grid.sub);
    std::vector<ParamPoint> pts;
    pts.reserve(us.size() * vs.size());
    for (double u : us)
        for (double v : vs) pts.push_back({u, v});
    return pts;
}

struct FrameSample {
    ParamPoint p;
    AdaptedFrame frame;
};

inline std::vector<FrameSample> frame_field(const SurfacePatch& patch, const GridSpec& grid,
                                            double eps_deg = kDefaultDegeneracyEps) {
    std::vector<FrameSample> out;
    for (const ParamPoint& p : grid_points(patch, grid)) {
        out.push_back({p, adapted_frame(eval_jet(patch, p), patch.orientation(), eps_deg)});
    }
    return out;
}

}  // namespace s3contact
