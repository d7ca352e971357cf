#pragma once

/**
 * @file catalog.hpp
 * @brief Built-in surfaces with closed-form jets.
 *
 *  - clifford-torus:   (sqrt2/2)(e^{iu}, e^{iv}), flat and minimal, beta = 0.
 *  - geodesic-sphere:  the great sphere y2 = 0 in the polar chart
 *                      (sin t cos p, sin t sin p, cos t, 0), t in [delta, pi - delta].
 *  - product-torus:    (cos r e^{iu}, sin r e^{iv}), flat, minimal only at r = pi/4.
 */

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surface.hpp"

namespace s3contact {

using ParamMap = std::map<std::string, double>;

struct UnknownSurfaceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kSphereCapDefault = 0.15;

/// Flat torus (a e^{iu}, b e^{iv}) with a^2 + b^2 = 1.
inline SurfacePatch product_torus_patch(double a, double b) {
    const double two_pi = 2 * std::numbers::pi;
    Domain dom{{0.0, two_pi, 0.0, two_pi}, true, true};
    return SurfacePatch::analytic(dom, [a, b](ParamPoint p) {
        const double cu = std::cos(p.u), su = std::sin(p.u), cv = std::cos(p.v), sv = std::sin(p.v);
        return Jet2{AmbientPoint(a * cu, a * su, b * cv, b * sv),
                    AmbientVector(-a * su, a * cu, 0, 0),
                    AmbientVector(0, 0, -b * sv, b * cv),
                    AmbientVector(-a * cu, -a * su, 0, 0),
                    AmbientVector(0, 0, 0, 0),
                    AmbientVector(0, 0, -b * cv, -b * sv)};
    });
}

inline SurfacePatch clifford_torus() {
    const double c = std::numbers::sqrt2 / 2;
    return product_torus_patch(c, c);
}

inline SurfacePatch product_torus(double r) {
    if (!(r > 0.0 && r < std::numbers::pi / 2)) {
        throw InvalidParameterError("product-torus: r must lie in (0, pi/2)");
    }
    return product_torus_patch(std::cos(r), std::sin(r));
}

inline SurfacePatch geodesic_sphere(double cap = kSphereCapDefault) {
    if (!(cap > 0.0 && cap < std::numbers::pi / 2)) {
        throw InvalidParameterError("geodesic-sphere: delta must lie in (0, pi/2)");
    }
    Domain dom{{cap, std::numbers::pi - cap, 0.0, 2 * std::numbers::pi}, false, true};
    return SurfacePatch::analytic(dom, [](ParamPoint p) {
        const double st = std::sin(p.u), ct = std::cos(p.u), sp = std::sin(p.v), cp = std::cos(p.v);
        return Jet2{AmbientPoint(st * cp, st * sp, ct, 0),
                    AmbientVector(ct * cp, ct * sp, -st, 0),
                    AmbientVector(-st * sp, st * cp, 0, 0),
                    AmbientVector(-st * cp, -st * sp, -ct, 0),
                    AmbientVector(-ct * sp, ct * cp, 0, 0),
                    AmbientVector(-st * cp, -st * sp, 0, 0)};
    });
}

/// Where an expected value comes from: the published example, a derivation, or direct substitution.
enum class Origin { Published, Derived, Elementary };

struct GoldenValue {
    std::string quantity;
    std::string value;
    Origin origin;
};

struct ParamSpec {
    std::string name;
    double lo;
    double hi;
    std::string range_text;
    std::optional<double> default_value;
};

struct CatalogEntry {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    std::function<SurfacePatch(const ParamMap&)> factory;
    std::vector<GoldenValue> golden;

    /// Canonical name plus parameter schema, e.g. "product-torus r:(0,π/2)".
    std::string signature() const {
        std::string s = name;
        for (const auto& p : params) {
            s += " " + p.name + ":" + p.range_text;
            if (p.default_value) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "=%g", *p.default_value);
                s += buf;
            }
        }
        return s;
    }
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"clifford-torus",
         "flat minimal torus |z1|^2 = |z2|^2 = 1/2",
         {},
         [](const ParamMap&) { return clifford_torus(); },
         {{"beta", "0 everywhere", Origin::Published},
          {"A_frame", "[[0,-1],[-1,0]] everywhere", Origin::Published},
          {"H", "0", Origin::Published},
          {"K", "0", Origin::Derived}}},
        {"geodesic-sphere",
         "totally geodesic great sphere y2 = 0, polar chart with caps of width delta removed",
         {{"delta", 0.0, std::numbers::pi / 2, "(0,π/2)", kSphereCapDefault}},
         [](const ParamMap& m) { return geodesic_sphere(m.at("delta")); },
         {{"e3", "(0,0,0,1)", Origin::Published},
          {"e1", "collinear with (-x1 x2, -y1 x2, 1 - x2^2, 0)", Origin::Published},
          {"sin beta", "x2", Origin::Derived},
          {"H", "0", Origin::Published},
          {"K", "1", Origin::Elementary},
          {"A_frame", "0", Origin::Elementary}}},
        {"product-torus",
         "flat torus (cos r e^{iu}, sin r e^{iv}); minimal only at r = π/4",
         {{"r", 0.0, std::numbers::pi / 2, "(0,π/2)", std::nullopt}},
         [](const ParamMap& m) { return product_torus(m.at("r")); },
         {{"K", "0", Origin::Derived}, {"H", "cot(2r)", Origin::Derived}}},
    };
    return entries;
}

inline const CatalogEntry* find_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return &e;
    return nullptr;
}

/// Builds a catalog surface, filling defaults and validating ranges (open intervals).
inline SurfacePatch make_surface(const std::string& name, const ParamMap& given) {
    const CatalogEntry* entry = find_entry(name);
    if (!entry) throw UnknownSurfaceError("unknown surface '" + name + "'");
    ParamMap resolved;
    for (const auto& [key, value] : given) {
        bool known = false;
        for (const auto& spec : entry->params) known = known || spec.name == key;
        if (!known) throw InvalidParameterError(name + ": unknown parameter '" + key + "'");
        resolved[key] = value;
    }
    for (const auto& spec : entry->params) {
        auto it = resolved.find(spec.name);
        if (it == resolved.end()) {
            if (!spec.default_value) throw InvalidParameterError(name + ": missing parameter '" + spec.name + "'");
            resolved[spec.name] = *spec.default_value;
        } else if (!(it->second > spec.lo && it->second < spec.hi)) {
            throw InvalidParameterError(name + ": parameter '" + spec.name + "' outside " + spec.range_text);
        }
    }
    return entry->factory(resolved);
}

/// Parameters after defaults are applied; used to echo the effective configuration.
inline ParamMap resolved_params(const std::string& name, const ParamMap& given) {
    const CatalogEntry* entry = find_entry(name);
    if (!entry) throw UnknownSurfaceError("unknown surface '" + name + "'");
    ParamMap out = given;
    for (const auto& spec : entry->params)
        if (!out.count(spec.name) && spec.default_value) out[spec.name] = *spec.default_value;
    return out;
}

}  // namespace s3contact
