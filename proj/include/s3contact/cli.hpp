#pragma once

/**
 * @file cli.hpp
 * @brief Command-line driver: list, sample, check, convergence.
 *
 * Exit codes: 0 success, 1 identity threshold failure, 2 usage or configuration
 * error, 3 I/O error.
 */

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catalog.hpp"
#include "identities.hpp"
#include "io.hpp"

namespace s3contact::cli {

enum ExitCode : int { kOk = 0, kIdentityFailure = 1, kUsage = 2, kIoError = 3 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string surface = "clifford-torus";
    ParamMap params;
    int nu = 32;
    int nv = 32;
    double h_f = 1e-4;
    double h_second = 1e-3;
    double h_metric = 1e-3;
    std::optional<double> h_jet;  ///< when set, jets come from differenced positions
    double eps_deg = kDefaultDegeneracyEps;
    double band_tan = 0.05;
    std::vector<IdentityKind> identities{kAllIdentities.begin(), kAllIdentities.end()};
    std::map<IdentityKind, double> thresholds = default_thresholds();
    std::vector<double> steps;
    std::string out;
    std::string format;
};

inline std::string valid_identity_names() {
    std::string s = "all";
    for (IdentityKind k : kAllIdentities) s += ", " + std::string(identity_name(k));
    return s;
}

inline double parse_number(const std::string& text, const std::string& what) {
    double x = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last) throw UsageError("invalid number for " + what + ": '" + text + "'");
    return x;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

inline std::vector<IdentityKind> parse_identities(const std::string& text) {
    if (text == "all") return {kAllIdentities.begin(), kAllIdentities.end()};
    std::vector<IdentityKind> out;
    for (const auto& name : split(text, ',')) {
        auto k = parse_identity(name);
        if (!k) throw UsageError("unknown identity '" + name + "'; valid names: " + valid_identity_names());
        out.push_back(*k);
    }
    if (out.empty()) throw UsageError("identity selection is empty; valid names: " + valid_identity_names());
    return out;
}

inline std::pair<std::string, double> parse_assignment(const std::string& text, const std::string& what) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(what + " must look like name=value, got '" + text + "'");
    const std::string key = text.substr(0, eq);
    return {key, parse_number(text.substr(eq + 1), what + " " + key)};
}

inline void validate(const RunConfig& cfg) {
    if (cfg.nu < 2 || cfg.nv < 2) throw UsageError("--nu and --nv must be at least 2");
    for (double h : {cfg.h_f, cfg.h_second, cfg.h_metric, cfg.eps_deg})
        if (!(h > 0.0)) throw UsageError("steps and tolerances must be positive");
    if (cfg.h_jet && !(*cfg.h_jet > 0.0)) throw UsageError("--h-jet must be positive");
    if (!(cfg.band_tan >= 0.0)) throw UsageError("--band-tan must be non-negative");
    if (cfg.identities.empty()) throw UsageError("identity selection is empty");
}

inline SurfacePatch build_patch(const RunConfig& cfg) {
    SurfacePatch patch = make_surface(cfg.surface, cfg.params);
    return cfg.h_jet ? with_differenced_jets(patch, *cfg.h_jet) : patch;
}

inline CheckConfig check_config(const RunConfig& cfg) {
    CheckConfig c;
    c.calc.h_f = cfg.h_f;
    c.calc.h_second = cfg.h_second;
    c.calc.h_metric = cfg.h_metric;
    c.calc.eps_deg = cfg.eps_deg;
    c.band_tan = cfg.band_tan;
    c.thresholds = cfg.thresholds;
    return c;
}

inline GridSpec grid_of(const RunConfig& cfg) { return GridSpec{cfg.nu, cfg.nv, std::nullopt}; }

inline std::string cmd_list() {
    std::string s;
    for (const auto& e : catalog()) s += e.signature() + "\n    " + e.summary + "\n";
    return s;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const SurfacePatch patch = build_patch(cfg);
    const auto samples = sample_grid(patch, grid_of(cfg), check_config(cfg).calc);
    out << "u,v,beta,beta1,beta2,H,K_ext,K_int,lap_beta,degenerate\n";
    for (const auto& s : samples) {
        for (double x : {s.p.u, s.p.v, s.beta, s.beta1, s.beta2, s.H, s.K_ext, s.K_int, s.lap_beta})
            out << format_double(x) << ',';
        out << (s.degenerate ? 1 : 0) << '\n';
    }
    return kOk;
}

/// The full check document; `all_pass` reports whether every selected identity met its threshold.
inline Json check_document(const RunConfig& cfg, bool& all_pass) {
    validate(cfg);
    const SurfacePatch patch = build_patch(cfg);
    const CheckConfig ccfg = check_config(cfg);
    const SuiteResult suite = run_suite(patch, grid_of(cfg), cfg.identities, ccfg);
    all_pass = suite.all_pass();

    Json doc;
    doc["schema"] = 1;
    doc["surface"] = cfg.surface;
    Json params = Json::object();
    for (const auto& [k, v] : resolved_params(cfg.surface, cfg.params)) params[k] = v;
    doc["parameters"] = params;
    doc["grid"] = to_json(grid_of(cfg));
    Json conf = to_json(ccfg);
    conf["h_jet"] = cfg.h_jet ? Json(*cfg.h_jet) : Json(nullptr);
    doc["config"] = conf;
    Json reports = Json::array();
    for (const auto& r : suite.reports) reports.push_back(to_json(r));
    doc["reports"] = reports;
    doc["verdicts"] = Json::array({to_json(suite.verdict)});
    doc["pass"] = all_pass;
    return doc;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
    bool all_pass = false;
    const Json doc = check_document(cfg, all_pass);
    out << doc.dump(2) << '\n';
    return all_pass ? kOk : kIdentityFailure;
}

inline int cmd_convergence(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    if (cfg.steps.size() < 3) throw UsageError("--steps needs at least three step sizes");
    for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
        if (!(cfg.steps[i] > 0.0)) throw UsageError("--steps must be positive");
        if (i > 0 && !(cfg.steps[i] < cfg.steps[i - 1])) throw UsageError("--steps must be strictly decreasing");
    }
    const SurfacePatch patch = build_patch(cfg);
    out << "h,identity,max_abs\n";
    for (double h : cfg.steps) {
        CheckConfig c = check_config(cfg);
        c.calc.h_f = c.calc.h_second = c.calc.h_metric = h;
        const SuiteResult suite = run_suite(patch, grid_of(cfg), cfg.identities, c);
        for (const auto& r : suite.reports)
            out << format_double(h) << ',' << identity_name(r.kind) << ',' << format_double(r.max_abs) << '\n';
    }
    return kOk;
}

namespace detail {

inline void add_run_options(CLI::App* sub, RunConfig& cfg, std::vector<std::string>& params,
                            std::vector<std::string>& thresholds, std::string& identities,
                            std::optional<double>& h_jet) {
    sub->add_option("--surface", cfg.surface, "catalog surface name (see `list`)");
    sub->add_option("--param", params, "surface parameter name=value (repeatable)");
    sub->add_option("--nu", cfg.nu, "grid resolution along u");
    sub->add_option("--nv", cfg.nv, "grid resolution along v");
    sub->add_option("--h-f", cfg.h_f, "first-derivative step");
    sub->add_option("--h-second", cfg.h_second, "Laplace-Beltrami step");
    sub->add_option("--h-metric", cfg.h_metric, "metric second-derivative step (intrinsic curvature)");
    sub->add_option("--h-jet", h_jet, "use differenced jets with this step instead of closed forms");
    sub->add_option("--eps-deg", cfg.eps_deg, "frame degeneracy threshold on |cos beta|");
    sub->add_option("--band-tan", cfg.band_tan, "exclusion band on |cos beta| for tan/sec checks");
    sub->add_option("--identity", identities, "all | name[,name...]");
    sub->add_option("--threshold", thresholds, "pass threshold Identity=value (repeatable)");
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "csv | json");
}

inline void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw IoError("cannot open output file '" + cfg.out + "'");
    f << text;
    if (!f.flush()) throw IoError("failed writing output file '" + cfg.out + "'");
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Contact angle, adapted frames and curvature identities of surfaces in S^3", "s3contact"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> params, thresholds;
    std::string identities = "all";
    std::string steps;
    std::optional<double> h_jet;

    auto* list = app.add_subcommand("list", "list catalog surfaces and their parameters");
    auto* sample = app.add_subcommand("sample", "write per-point geometric fields as CSV");
    auto* check = app.add_subcommand("check", "run identity checks and write a JSON report");
    auto* conv = app.add_subcommand("convergence", "max residuals over a list of differencing steps (CSV)");
    for (auto* sub : {sample, check, conv}) detail::add_run_options(sub, cfg, params, thresholds, identities, h_jet);
    conv->add_option("--steps", steps, "comma-separated strictly decreasing steps")->required();
    list->add_option("--out", cfg.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        cfg.h_jet = h_jet;
        for (const auto& p : params) cfg.params.insert(parse_assignment(p, "--param"));
        cfg.identities = parse_identities(identities);
        for (const auto& t : thresholds) {
            auto [name, value] = parse_assignment(t, "--threshold");
            auto k = parse_identity(name);
            if (!k) throw UsageError("unknown identity '" + name + "'; valid names: " + valid_identity_names());
            cfg.thresholds[*k] = value;
        }
        if (!steps.empty())
            for (const auto& s : split(steps, ',')) cfg.steps.push_back(parse_number(s, "--steps"));

        std::ostringstream buf;
        int code = kOk;
        if (list->parsed()) {
            buf << cmd_list();
        } else if (sample->parsed()) {
            if (!cfg.format.empty() && cfg.format != "csv") throw UsageError("sample writes csv only");
            code = cmd_sample(cfg, buf);
        } else if (check->parsed()) {
            if (!cfg.format.empty() && cfg.format != "json") throw UsageError("check writes json only");
            code = cmd_check(cfg, buf);
        } else {
            if (!cfg.format.empty() && cfg.format != "csv") throw UsageError("convergence writes csv only");
            code = cmd_convergence(cfg, buf);
        }
        detail::write_output(cfg, buf.str(), out);
        return code;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("s3contact");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace s3contact::cli
