#pragma once

// CSV number formatting and JSON encoding of reports. Output is locale-independent.

#include <charconv>
#include <cmath>
#include <string>

#include <json.hpp>

#include "identities.hpp"

namespace s3contact {

using Json = nlohmann::ordered_json;

/// 17 significant digits, '.' decimal separator.
inline std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

inline Json to_json(const GridSpec& g) {
    Json j;
    j["nu"] = g.nu;
    j["nv"] = g.nv;
    if (g.sub) {
        j["sub"] = {{"u_min", g.sub->u_min}, {"u_max", g.sub->u_max}, {"v_min", g.sub->v_min}, {"v_max", g.sub->v_max}};
    }
    return j;
}

inline Json to_json(const CheckConfig& c) {
    Json j;
    j["h_f"] = c.calc.h_f;
    j["h_second"] = c.calc.h_second;
    j["h_metric"] = c.calc.h_metric;
    j["eps_deg"] = c.calc.eps_deg;
    j["band_tan"] = c.band_tan;
    Json t = Json::object();
    for (IdentityKind k : kAllIdentities)
        if (auto it = c.thresholds.find(k); it != c.thresholds.end()) t[std::string(identity_name(k))] = it->second;
    j["thresholds"] = t;
    return j;
}

// JSON has no NaN; non-finite statistics are written as null.
inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const ResidualReport& r) {
    Json j;
    j["kind"] = std::string(identity_name(r.kind));
    j["grid"] = to_json(r.grid);
    j["n_total"] = r.n_total;
    j["n_degenerate"] = r.n_degenerate;
    j["max_abs"] = finite_or_null(r.max_abs);
    j["mean_abs"] = finite_or_null(r.mean_abs);
    j["rms"] = finite_or_null(r.rms);
    j["worst_point"] = r.worst_point ? Json{{"u", r.worst_point->u}, {"v", r.worst_point->v}} : Json(nullptr);
    j["threshold"] = r.config.thresholds.at(r.kind);
    j["pass"] = r.passes();
    if (r.hypothesis_max_abs_H) {
        j["hypothesis"] = {{"max_abs_H", *r.hypothesis_max_abs_H},
                           {"is_minimal", *r.hypothesis_max_abs_H < kMinimalityTolerance}};
    }
    j["config"] = to_json(r.config);
    return j;
}

inline Json to_json(const Theorem1Verdict& v) {
    Json j;
    j["name"] = "theorem1_consistency";
    j["is_minimal"] = v.is_minimal;
    j["max_abs_H"] = v.max_abs_H;
    j["beta_spread"] = v.beta_spread;
    j["K_max"] = v.K_max;
    j["premise_holds"] = v.premise_holds;
    j["verdict"] = v.pass ? "PASS" : "FAIL";
    return j;
}

}  // namespace s3contact
