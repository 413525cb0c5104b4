#include "polyspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polyspec/emit.hpp"
#include "polyspec/errors.hpp"
#include "polyspec/heat.hpp"
#include "polyspec/lab.hpp"
#include "polyspec/parallel.hpp"
#include "polyspec/shapes.hpp"
#include "polyspec/special_fn.hpp"
#include "polyspec/spectrum.hpp"
#include "polyspec/verify.hpp"
#include "polyspec/zeta.hpp"

namespace polyspec::cli {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    double tolerance = 1e-12;
    std::string format;  // empty: the subcommand's default
    std::string out;
    int threads = 0;     // 0: from POLYSPEC_THREADS

    OutputFormat output_format(OutputFormat fallback) const {
        return format.empty() ? fallback : parse_output_format(format);
    }
    std::optional<std::string> path() const { return out.empty() ? std::nullopt : std::optional(out); }
    int thread_count() const { return threads > 0 ? threads : default_thread_count(); }
};

double parse_number(const std::string& s) {
    if (s == "pi") return constants::pi;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (s.empty() || pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

struct ShapeOptions {
    std::string shape = "square";
    std::string a = "1";
    std::string b;
    std::string l;
    std::vector<double> dims;
    std::string polygon_file;

    void add_to(CLI::App* app) {
        app->add_option("--shape", shape,
                        "rect|square|equilateral|isosceles|hemi|box|polygon (long names also accepted)")
            ->capture_default_str();
        app->add_option("--a", a, "side a (rectangle), leg (isosceles right); 'pi' accepted")->capture_default_str();
        app->add_option("--b", b, "side b of a rectangle");
        app->add_option("--l", l, "side of the equilateral triangle, hypotenuse of the hemi-equilateral one");
        app->add_option("--dims", dims, "box side lengths, comma separated")->delimiter(',');
        app->add_option("--polygon-file", polygon_file, "convex polygon, one 'x,y' vertex per line");
    }

    ShapeSpec build() const {
        const double av = parse_number(a);
        const double lv = l.empty() ? av : parse_number(l);
        if (shape == "rect" || shape == "rectangle") {
            if (b.empty()) throw UsageError("--shape rect needs --b");
            return ShapeSpec::rectangle(av, parse_number(b));
        }
        if (shape == "square") return ShapeSpec::square(av);
        if (shape == "equilateral") return ShapeSpec::equilateral(lv);
        if (shape == "isosceles" || shape == "isosceles-right") return ShapeSpec::isosceles_right(av);
        if (shape == "hemi" || shape == "hemi-equilateral") return ShapeSpec::hemi_equilateral(lv);
        if (shape == "box") {
            if (dims.empty()) throw UsageError("--shape box needs --dims");
            return ShapeSpec::box(dims);
        }
        if (shape == "polygon") {
            if (polygon_file.empty()) throw UsageError("--shape polygon needs --polygon-file");
            return read_polygon_file(polygon_file);
        }
        throw UsageError("unknown shape '" + shape + "'");
    }
};

// "start:stop:count" (inclusive, linear) or "t1,t2,...".
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("grid must be start:stop:count");
        const double a = parse_number(parts[0]), b = parse_number(parts[1]);
        const double c = parse_number(parts[2]);
        if (!(c >= 1.0) || c != std::floor(c)) throw UsageError("grid count must be a positive integer");
        const int n = static_cast<int>(c);
        for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else {
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(p));
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

// "3..200", "3:200" or a single integer.
std::vector<int> parse_int_range(const std::string& s) {
    auto to_int = [](const std::string& x) {
        const double v = parse_number(x);
        if (v != std::floor(v)) throw UsageError("not an integer: '" + x + "'");
        return static_cast<int>(v);
    };
    std::size_t p = s.find("..");
    std::size_t skip = 2;
    if (p == std::string::npos) {
        p = s.find(':');
        skip = 1;
    }
    if (p == std::string::npos) return {to_int(s)};
    const int lo = to_int(s.substr(0, p)), hi = to_int(s.substr(p + skip));
    if (hi < lo) throw UsageError("empty range '" + s + "'");
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

LatticeBasis parse_lattice(const std::vector<double>& v) {
    if (v.size() != 4) throw UsageError("--lattice needs four numbers b11,b12,b21,b22");
    return LatticeBasis{{{v[0], v[1]}, {v[2], v[3]}}};
}

Json result_json(const ZetaResult& r) {
    Json j = Json::object();
    j["value"] = r.value;
    j["error_bound"] = r.error_bound;
    j["method"] = to_string(r.method);
    return j;
}

int cmd_eigs(const RunConfig& cfg, const ShapeOptions& so, const std::string& bc, double lambda_max,
             const std::string& param) {
    const Parametrization p = param == "orbits" ? Parametrization::PinskyOrbits : Parametrization::Standard;
    if (param != "orbits" && param != "standard") throw UsageError("--param must be standard or orbits");
    const EigenvalueList list = enumerate(so.build(), parse_boundary_condition(bc), lambda_max, p);
    Table t{{"value", "multiplicity"}, {}};
    for (const auto& e : list.entries) t.add({e.value, static_cast<std::int64_t>(e.multiplicity)});
    emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
    return kExitOk;
}

int cmd_zeta(const RunConfig& cfg, const ShapeOptions& so, const std::vector<double>& s_values,
             const std::string& method, const std::vector<double>& form) {
    Table t{{"s", "value", "error_bound", "method"}, {}};
    bool ok = true;
    const double tol = std::max(cfg.tolerance, 1e-15);
    for (double s : s_values) {
        if (!form.empty()) {
            if (form.size() != 3) throw UsageError("--form needs a,b,c");
            const ZetaResult r = epstein_zeta(QuadraticForm(form[0], form[1], form[2]), s, tol);
            t.add({s, r.value, r.error_bound, to_string(r.method)});
            continue;
        }
        const ShapeSpec shape = so.build();
        if (method == "chowla-selberg") {
            const ZetaResult r = spectral_zeta(shape, s, tol);
            t.add({s, r.value, r.error_bound, to_string(r.method)});
        } else if (method == "direct" || method == "both") {
            const ZetaCrossCheck c = cross_check_spectral_zeta(shape, s, tol);
            if (method == "both") t.add({s, c.chowla_selberg.value, c.chowla_selberg.error_bound, to_string(c.chowla_selberg.method)});
            t.add({s, c.direct.value, c.direct.error_bound, to_string(c.direct.method)});
            ok = ok && c.agree;
        } else {
            throw UsageError("--method must be chowla-selberg, direct or both");
        }
    }
    emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_det(const RunConfig& cfg, const ShapeOptions& so) {
    const ShapeSpec shape = so.build();
    const ZetaPrimeZero z = zeta_prime_zero(shape);
    const double det = std::exp(-z.mean());
    if (cfg.output_format(OutputFormat::Json) == OutputFormat::Csv) {
        Table t{{"shape", "series_form", "eta_form", "difference", "zeta_prime_zero", "determinant", "agree"}, {}};
        t.add({shape.name(), z.series_form.value, z.eta_form.value, z.difference, z.mean(), det, z.agree});
        emit(to_csv(t), cfg.path());
    } else {
        Json j = Json::object();
        j["shape"] = shape.name();
        j["series_form"] = result_json(z.series_form);
        j["eta_form"] = result_json(z.eta_form);
        j["difference"] = z.difference;
        j["agree"] = z.agree;
        j["zeta_prime_zero"] = z.mean();
        j["determinant"] = det;
        emit(dump(j), cfg.path());
    }
    return z.agree ? kExitOk : kExitCheckFailed;
}

int cmd_heat(const RunConfig& cfg, const ShapeOptions& so, const std::string& bc, const std::string& grid,
             const std::string& method, int expansion_order) {
    const ShapeSpec shape = so.build();
    const BoundaryCondition b = parse_boundary_condition(bc);
    if (expansion_order >= 0) {
        const HeatExpansion ex = expansion(shape, b, expansion_order);
        Table t{{"coeff", "t_power", "exp_rate"}, {}};
        for (const auto& term : ex.terms) t.add({term.coeff, term.t_power, term.exp_rate});
        emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
        return kExitOk;
    }
    const HeatMethod m = parse_heat_method(method);
    const std::vector<double> ts = parse_grid(grid);
    std::vector<HeatTraceValue> values(ts.size());
    const double tol = std::max(cfg.tolerance, 1e-15);
    parallel_for(ts.size(), cfg.thread_count(), [&](std::size_t i) { values[i] = heat_trace(shape, b, ts[i], m, tol); });
    Table t{{"t", "value", "method", "tail_bound"}, {}};
    for (const auto& v : values) t.add({v.t, v.value, to_string(v.method), v.tail_bound});
    emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
    return kExitOk;
}

int cmd_remainder_fit(const RunConfig& cfg, const ShapeOptions& so, const std::string& bc, const std::string& grid,
                      const std::vector<double>& lattice, const std::string& summary_path) {
    const std::vector<double> ts = parse_grid(grid);
    const RateFit fit = so.shape == "torus" ? fit_torus_rate(parse_lattice(lattice), ts)
                                            : fit_sharp_rate(so.build(), parse_boundary_condition(bc), ts);
    Table t{{"t", "minus_t_log_R", "c_hat"}, {}};
    for (const auto& p : fit.points) t.add({p.t, p.minus_t_log_r, p.c_point});
    Json summary = Json::object();
    summary["c_hat"] = fit.c_hat;
    summary["expected"] = fit.expected;
    summary["relative_error"] = std::fabs(fit.c_hat - fit.expected) / fit.expected;
    summary["log_prefactor"] = fit.log_prefactor;
    summary["t_power"] = fit.t_power;
    if (cfg.output_format(OutputFormat::Csv) == OutputFormat::Json) {
        Json j = Json::object();
        j["points"] = to_json(t);
        j["summary"] = summary;
        emit(dump(j), cfg.path());
    } else {
        emit(to_csv(t), cfg.path());
        // The CSV stays a single table; the summary goes to its own file or stderr.
        if (!summary_path.empty())
            emit(dump(summary), summary_path);
        else
            std::fputs(dump(summary).c_str(), stderr);
    }
    return kExitOk;
}

int cmd_ngon(const RunConfig& cfg, const std::string& range, double radius) {
    const NgonReport rep = polygon_to_disk_experiment(parse_int_range(range), radius);
    Table t{{"n", "hausdorff", "a_m1", "a_mhalf", "a_0", "gap"}, {}};
    for (const auto& r : rep.rows)
        t.add({static_cast<std::int64_t>(r.n), r.hausdorff, r.coeffs.a_minus1, r.coeffs.a_minus_half, r.coeffs.a_0, r.gap});
    emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
    return rep.a0_exact_all ? kExitOk : kExitCheckFailed;
}

int cmd_torus(const RunConfig& cfg, const std::vector<double>& lattice, const std::string& grid) {
    const LatticeBasis B = parse_lattice(lattice);
    const std::vector<double> ts = parse_grid(grid);
    std::vector<TorusHeatTrace> values(ts.size());
    const double tol = std::max(cfg.tolerance, 1e-15);
    parallel_for(ts.size(), cfg.thread_count(), [&](std::size_t i) { values[i] = torus_heat_trace(B, ts[i], tol); });
    Table t{{"t", "eigen_side", "lattice_side", "difference", "tail_bound", "agree"}, {}};
    bool ok = true;
    for (const auto& v : values) {
        t.add({v.t, v.eigen_side, v.lattice_side, v.eigen_side - v.lattice_side, v.tail_bound, v.agree});
        ok = ok && v.agree;
    }
    emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    const VerificationReport rep = run_verification(suite, cfg.thread_count());
    Table t{{"id", "check", "status", "measured", "expected", "tolerance", "mode", "seconds", "detail"}, {}};
    for (const auto& c : rep.checks) {
        t.add({static_cast<std::int64_t>(c.id), c.name, std::string(c.passed ? "pass" : "fail"), c.measured, c.expected,
               c.tolerance, c.mode, c.seconds, c.detail});
        std::fprintf(stderr, "%s\n", summary_line(c).c_str());
    }
    emit(render(t, cfg.output_format(OutputFormat::Csv)), cfg.path());
    return rep.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Spectral invariants of integrable polygons: eigenvalues, zeta functions, determinants, heat traces."};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML-style file of 'key = value' defaults ([subcommand] sections)");

    RunConfig cfg;
    app.add_option("--tol", cfg.tolerance, "numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "write output to this file instead of stdout");
    app.add_option("--threads", cfg.threads, "worker threads (default: POLYSPEC_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;

    ShapeOptions eigs_shape;
    std::string eigs_bc = "dirichlet", eigs_param = "standard";
    double lambda_max = 0.0;
    auto* eigs = app.add_subcommand("eigs", "list eigenvalues up to --lambda-max as value,multiplicity");
    eigs_shape.add_to(eigs);
    eigs->add_option("--bc", eigs_bc, "dirichlet or neumann")->capture_default_str();
    eigs->add_option("--lambda-max", lambda_max, "eigenvalue cutoff")->required();
    eigs->add_option("--param", eigs_param, "equilateral index set: standard or orbits")->capture_default_str();
    eigs->callback([&] { action = [&] { return cmd_eigs(cfg, eigs_shape, eigs_bc, lambda_max, eigs_param); }; });

    ShapeOptions zeta_shape;
    std::vector<double> s_values;
    std::vector<double> form;
    std::string zeta_method = "chowla-selberg";
    auto* zeta = app.add_subcommand("zeta", "Dirichlet spectral zeta function, or an Epstein zeta with --form");
    zeta_shape.add_to(zeta);
    zeta->add_option("--s", s_values, "values of s, comma separated")->required()->delimiter(',');
    zeta->add_option("--method", zeta_method, "chowla-selberg, direct or both (s > 1)")->capture_default_str();
    zeta->add_option("--form", form, "quadratic form a,b,c for a m^2 + b mn + c n^2")->delimiter(',');
    zeta->callback([&] { action = [&] { return cmd_zeta(cfg, zeta_shape, s_values, zeta_method, form); }; });

    ShapeOptions det_shape;
    auto* det = app.add_subcommand("det", "both closed forms of zeta'(0) and the determinant (JSON)");
    det_shape.add_to(det);
    det->callback([&] { action = [&] { return cmd_det(cfg, det_shape); }; });

    ShapeOptions heat_shape;
    std::string heat_bc = "dirichlet", heat_grid = "0.05:1:20", heat_method = "auto";
    int heat_expansion = -1;
    auto* heat = app.add_subcommand("heat", "heat trace on a t grid (t,value,method,tail_bound)");
    heat_shape.add_to(heat);
    heat->add_option("--bc", heat_bc, "dirichlet or neumann")->capture_default_str();
    heat->add_option("--t-grid", heat_grid, "start:stop:count or t1,t2,...")->capture_default_str();
    heat->add_option("--method", heat_method, "auto|theta|eigsum|transformed")->capture_default_str();
    heat->add_option("--expansion", heat_expansion, "print the expansion terms up to this many exponential levels");
    heat->callback([&] {
        action = [&] { return cmd_heat(cfg, heat_shape, heat_bc, heat_grid, heat_method, heat_expansion); };
    });

    ShapeOptions fit_shape;
    std::string fit_bc = "dirichlet", fit_grid = "0.1,0.05,0.02,0.01", fit_summary;
    std::vector<double> fit_lattice;
    auto* fit = app.add_subcommand("remainder-fit", "fit the exponential rate of the heat-trace remainder");
    fit_shape.add_to(fit);
    fit->add_option("--bc", fit_bc, "dirichlet or neumann")->capture_default_str();
    fit->add_option("--t-grid", fit_grid, "t values in (0, 0.2]")->capture_default_str();
    fit->add_option("--lattice", fit_lattice, "with --shape torus: basis b11,b12,b21,b22")->delimiter(',');
    fit->add_option("--summary", fit_summary, "file for the JSON summary (CSV mode; default stderr)");
    fit->callback([&] {
        action = [&] { return cmd_remainder_fit(cfg, fit_shape, fit_bc, fit_grid, fit_lattice, fit_summary); };
    });

    std::string ngon_range = "3..200";
    double ngon_radius = 1.0;
    auto* ngon = app.add_subcommand("ngon-limit", "heat coefficients of regular n-gons against the disk");
    ngon->add_option("--n", ngon_range, "range lo..hi")->capture_default_str();
    ngon->add_option("--radius", ngon_radius, "circumradius")->capture_default_str();
    ngon->callback([&] { action = [&] { return cmd_ngon(cfg, ngon_range, ngon_radius); }; });

    std::vector<double> torus_lattice = {1.0, 0.0, 0.0, 1.0};
    std::string torus_grid = "0.05,0.5";
    auto* torus = app.add_subcommand("torus", "both sides of the Poisson relation for a flat torus");
    torus->add_option("--lattice", torus_lattice, "basis b11,b12,b21,b22")->delimiter(',');
    torus->add_option("--t-grid", torus_grid, "start:stop:count or t1,t2,...")->capture_default_str();
    torus->callback([&] { action = [&] { return cmd_torus(cfg, torus_lattice, torus_grid); }; });

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--suite", suite, "all, or criterion numbers such as 1,4,9")->capture_default_str();
    verify->callback([&] { action = [&] { return cmd_verify(cfg, suite); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const PoleError& e) {
        std::fprintf(stderr, "pole: %s\n", e.what());
        return kExitUsage;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace polyspec::cli
