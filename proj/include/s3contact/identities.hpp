#pragma once

/**
 * @file identities.hpp
 * @brief Residual checks for the contact-angle identities of minimal surfaces
 *        in S^3, aggregated over sample grids.
 *
 * Residuals, per sample:
 *   Tangency          sin(b)<X, iz> - cos(b)<X, i e1>,  X in {Fu, Fv}
 *   Minimality        H
 *   CurvatureFormula  K - (1 - |grad b + e1|^2)
 *   LaplacianFormula  lap b + tan(b) |grad b + 2 e1|^2
 *   ConnectionE1      w21(e1) - b2 / cos(b)
 *   ConnectionE2      w21(e2) + (b1 + 1 + sin^2 b) / cos(b)
 *   ShapePrediction   max |A - [[b2, -(b1+1)], [-(b1+1), -b2]]|
 *
 * Checks never abort on non-minimal input. Reports for identities that assume
 * minimality carry the grid's max |H| so "identity false" and "hypothesis unmet"
 * can be told apart.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "calculus.hpp"

namespace s3contact {

enum class IdentityKind {
    Tangency,
    Minimality,
    CurvatureFormula,
    LaplacianFormula,
    ConnectionE1,
    ConnectionE2,
    ShapePrediction,
};

inline constexpr std::array<IdentityKind, 7> kAllIdentities = {
    IdentityKind::Tangency,         IdentityKind::Minimality,   IdentityKind::CurvatureFormula,
    IdentityKind::LaplacianFormula, IdentityKind::ConnectionE1, IdentityKind::ConnectionE2,
    IdentityKind::ShapePrediction,
};

inline std::string_view identity_name(IdentityKind k) {
    switch (k) {
        case IdentityKind::Tangency: return "Tangency";
        case IdentityKind::Minimality: return "Minimality";
        case IdentityKind::CurvatureFormula: return "CurvatureFormula";
        case IdentityKind::LaplacianFormula: return "LaplacianFormula";
        case IdentityKind::ConnectionE1: return "ConnectionE1";
        case IdentityKind::ConnectionE2: return "ConnectionE2";
        case IdentityKind::ShapePrediction: return "ShapePrediction";
    }
    return "?";
}

inline std::optional<IdentityKind> parse_identity(std::string_view name) {
    for (IdentityKind k : kAllIdentities)
        if (identity_name(k) == name) return k;
    return std::nullopt;
}

inline bool assumes_minimality(IdentityKind k) {
    return k != IdentityKind::Tangency && k != IdentityKind::Minimality;
}

/// Pass thresholds on max_abs, one per identity.
inline std::map<IdentityKind, double> default_thresholds() {
    return {
        {IdentityKind::Tangency, 1e-9},         {IdentityKind::Minimality, 1e-8},
        {IdentityKind::CurvatureFormula, 1e-5}, {IdentityKind::LaplacianFormula, 1e-4},
        {IdentityKind::ConnectionE1, 1e-4},     {IdentityKind::ConnectionE2, 1e-4},
        {IdentityKind::ShapePrediction, 1e-5},
    };
}

struct CheckConfig {
    CalcConfig calc;
    double band_tan = 0.05;  ///< samples with |cos b| below this are dropped from 1/cos and tan checks
    std::map<IdentityKind, double> thresholds = default_thresholds();
};

struct ResidualReport {
    IdentityKind kind = IdentityKind::Tangency;
    GridSpec grid;
    std::size_t n_total = 0;
    std::size_t n_degenerate = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double rms = 0.0;
    std::optional<ParamPoint> worst_point;
    CheckConfig config;
    std::optional<double> hypothesis_max_abs_H;

    bool passes() const { return max_abs < config.thresholds.at(kind); }
};

inline double tangency_residual(const AdaptedFrame& fr, const AmbientVector& position, const AmbientVector& X) {
    const AmbientVector xi = j_mul(position);
    return fr.sin_beta * inner(X, xi) - fr.cos_beta * inner(X, j_mul(fr.e1));
}

inline Eigen::Matrix2d predicted_shape(double beta1, double beta2) {
    Eigen::Matrix2d A;
    A << beta2, -(beta1 + 1), -(beta1 + 1), -beta2;
    return A;
}

/// Residual of one identity at one sample; nullopt when the sample is excluded.
inline std::optional<double> residual(IdentityKind kind, const GeomSample& s, const CheckConfig& cfg) {
    const AdaptedFrame& fr = s.frame;
    const bool in_band = std::abs(fr.cos_beta) < cfg.band_tan;
    switch (kind) {
        case IdentityKind::Minimality:
            return s.H;
        case IdentityKind::Tangency: {
            if (s.degenerate) return std::nullopt;
            const double ru = tangency_residual(fr, s.position, s.Fu);
            const double rv = tangency_residual(fr, s.position, s.Fv);
            return std::abs(ru) >= std::abs(rv) ? ru : rv;
        }
        case IdentityKind::CurvatureFormula: {
            if (s.degenerate) return std::nullopt;
            return s.K_ext - (1.0 - (s.grad_beta + fr.e1).squaredNorm());
        }
        case IdentityKind::LaplacianFormula: {
            if (s.degenerate || in_band) return std::nullopt;
            const double tan_b = fr.sin_beta / fr.cos_beta;
            return s.lap_beta + tan_b * (s.grad_beta + 2 * fr.e1).squaredNorm();
        }
        case IdentityKind::ConnectionE1:
            if (s.degenerate || in_band) return std::nullopt;
            return s.w21_e1 - s.beta2 / fr.cos_beta;
        case IdentityKind::ConnectionE2:
            if (s.degenerate || in_band) return std::nullopt;
            return s.w21_e2 + (s.beta1 + 1.0 + fr.sin_beta * fr.sin_beta) / fr.cos_beta;
        case IdentityKind::ShapePrediction:
            if (s.degenerate) return std::nullopt;
            return (s.A_frame - predicted_shape(s.beta1, s.beta2)).cwiseAbs().maxCoeff();
    }
    return std::nullopt;
}

/// Samples in row-major grid order.
inline std::vector<GeomSample> sample_grid(const SurfacePatch& patch, const GridSpec& grid, const CalcConfig& calc) {
    std::vector<GeomSample> out;
    for (const ParamPoint& p : grid_points(patch, grid)) out.push_back(sample_geometry(patch, p, calc));
    return out;
}

inline double max_abs_H(const std::vector<GeomSample>& samples) {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, std::abs(s.H));
    return m;
}

/// Aggregates one identity over precomputed samples. Reduction order is the sample order.
inline ResidualReport make_report(IdentityKind kind, const std::vector<GeomSample>& samples, const GridSpec& grid,
                                  const CheckConfig& cfg) {
    ResidualReport rep;
    rep.kind = kind;
    rep.grid = grid;
    rep.config = cfg;
    rep.n_total = samples.size();
    double sum_abs = 0.0, sum_sq = 0.0;
    std::size_t n_used = 0;
    for (const auto& s : samples) {
        const auto r = residual(kind, s, cfg);
        if (!r) {
            ++rep.n_degenerate;
            continue;
        }
        const double a = std::abs(*r);
        ++n_used;
        sum_abs += a;
        sum_sq += a * a;
        // NaN residuals must surface as failures, not vanish from the max.
        if (!rep.worst_point || a > rep.max_abs || (std::isnan(a) && !std::isnan(rep.max_abs))) {
            rep.max_abs = a;
            rep.worst_point = s.p;
        }
    }
    if (n_used > 0) {
        rep.mean_abs = sum_abs / static_cast<double>(n_used);
        rep.rms = std::sqrt(sum_sq / static_cast<double>(n_used));
    }
    if (assumes_minimality(kind)) rep.hypothesis_max_abs_H = max_abs_H(samples);
    return rep;
}

inline ResidualReport check_identity(IdentityKind kind, const SurfacePatch& patch, const GridSpec& grid,
                                     const CheckConfig& cfg = {}) {
    return make_report(kind, sample_grid(patch, grid, cfg.calc), grid, cfg);
}

inline ResidualReport check_tangency(const SurfacePatch& patch, const GridSpec& grid, const CheckConfig& cfg = {}) {
    return check_identity(IdentityKind::Tangency, patch, grid, cfg);
}
inline ResidualReport check_minimality(const SurfacePatch& patch, const GridSpec& grid, const CheckConfig& cfg = {}) {
    return check_identity(IdentityKind::Minimality, patch, grid, cfg);
}
inline ResidualReport check_curvature_identity(const SurfacePatch& patch, const GridSpec& grid,
                                               const CheckConfig& cfg = {}) {
    return check_identity(IdentityKind::CurvatureFormula, patch, grid, cfg);
}
inline ResidualReport check_laplacian_identity(const SurfacePatch& patch, const GridSpec& grid,
                                               const CheckConfig& cfg = {}) {
    return check_identity(IdentityKind::LaplacianFormula, patch, grid, cfg);
}
inline std::pair<ResidualReport, ResidualReport> check_connection_identities(const SurfacePatch& patch,
                                                                            const GridSpec& grid,
                                                                            const CheckConfig& cfg = {}) {
    const auto samples = sample_grid(patch, grid, cfg.calc);
    return {make_report(IdentityKind::ConnectionE1, samples, grid, cfg),
            make_report(IdentityKind::ConnectionE2, samples, grid, cfg)};
}
inline ResidualReport check_shape_prediction(const SurfacePatch& patch, const GridSpec& grid,
                                             const CheckConfig& cfg = {}) {
    return check_identity(IdentityKind::ShapePrediction, patch, grid, cfg);
}

/// Constant contact angle on a minimal surface forces K = 0; vacuous when either premise fails.
struct Theorem1Verdict {
    bool is_minimal = false;
    double max_abs_H = 0.0;
    double beta_spread = 0.0;
    double K_max = 0.0;
    bool premise_holds = false;
    bool pass = true;
};

inline constexpr double kMinimalityTolerance = 1e-6;

inline Theorem1Verdict theorem1_consistency(const std::vector<GeomSample>& samples, double tol_const = 1e-8,
                                            double tol_flat = 1e-6) {
    Theorem1Verdict v;
    if (samples.empty()) return v;
    double bmin = samples.front().beta, bmax = bmin;
    for (const auto& s : samples) {
        bmin = std::min(bmin, s.beta);
        bmax = std::max(bmax, s.beta);
        v.K_max = std::max(v.K_max, std::abs(s.K_ext));
    }
    v.max_abs_H = max_abs_H(samples);
    v.is_minimal = v.max_abs_H < kMinimalityTolerance;
    v.beta_spread = bmax - bmin;
    v.premise_holds = v.is_minimal && v.beta_spread < tol_const;
    v.pass = !v.premise_holds || v.K_max < tol_flat;
    return v;
}

inline Theorem1Verdict theorem1_consistency(const SurfacePatch& patch, const GridSpec& grid, double tol_const = 1e-8,
                                            double tol_flat = 1e-6, const CalcConfig& calc = {}) {
    return theorem1_consistency(sample_grid(patch, grid, calc), tol_const, tol_flat);
}

struct SuiteResult {
    std::vector<ResidualReport> reports;
    Theorem1Verdict verdict;

    bool all_pass() const {
        return std::all_of(reports.begin(), reports.end(), [](const ResidualReport& r) { return r.passes(); });
    }
};

/// Samples the grid once and reports each selected identity in the given order.
inline SuiteResult run_suite(const SurfacePatch& patch, const GridSpec& grid, const std::vector<IdentityKind>& kinds,
                             const CheckConfig& cfg = {}) {
    const auto samples = sample_grid(patch, grid, cfg.calc);
    SuiteResult out;
    for (IdentityKind k : kinds) out.reports.push_back(make_report(k, samples, grid, cfg));
    out.verdict = theorem1_consistency(samples);
    return out;
}

}  // namespace s3contact
