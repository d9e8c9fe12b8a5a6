#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <functional>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "sususy/beta_ode.hpp"
#include "sususy/csv.hpp"
#include "sususy/special_functions.hpp"
#include "sususy/scanner.hpp"
#include "sususy/spectral.hpp"
#include "sususy/version.hpp"

namespace sususy::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- helpers

std::vector<double> split_doubles(const std::string& text, char sep, const char* what) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string field;
    while (std::getline(is, field, sep)) {
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0')
            throw ConfigError(std::string(what) + ": not a number: '" + field + "'");
        out.push_back(v);
    }
    return out;
}

struct SeedSource {
    enum class Kind { Minus2x, Eq17, Csv } kind = Kind::Minus2x;
    double lambda = 2.0;
    std::string csv_path;

    std::string canonical() const {
        switch (kind) {
            case Kind::Minus2x: return "minus2x";
            case Kind::Eq17: return "eq17:lambda=" + format_double17(lambda);
            case Kind::Csv: return "csv:" + csv_path;
        }
        return {};
    }

    static SeedSource parse(const std::string& text, std::optional<double> lambda_flag) {
        SeedSource s;
        if (text == "minus2x") {
            s.kind = Kind::Minus2x;
        } else if (text.rfind("eq17", 0) == 0) {
            s.kind = Kind::Eq17;
            const auto pos = text.find("lambda=");
            if (pos != std::string::npos) {
                s.lambda = split_doubles(text.substr(pos + 7), ',', "seed lambda").at(0);
            } else if (lambda_flag) {
                s.lambda = *lambda_flag;
            } else {
                throw ConfigError("seed-source eq17 needs lambda (eq17:lambda=V or --lambda)");
            }
        } else if (text.rfind("csv:", 0) == 0) {
            s.kind = Kind::Csv;
            s.csv_path = text.substr(4);
            if (s.csv_path.empty()) throw ConfigError("seed-source csv: path is empty");
        } else {
            throw ConfigError("unknown seed-source '" + text +
                              "' (expected minus2x | eq17:lambda=V | csv:PATH)");
        }
        if (lambda_flag && s.kind == Kind::Eq17) s.lambda = *lambda_flag;
        return s;
    }
};

// flags override file entries; both land in ctx.config() before resolution
void apply_scan_flag_overrides(KeyValueConfig& kv, const CommandFlags& flags) {
    if (flags.grid) {
        const auto x = flags.grid->find('x');
        if (x == std::string::npos) throw ConfigError("--grid for scan must be NBxND");
        kv.set("n_beta", flags.grid->substr(0, x));
        kv.set("n_dbeta", flags.grid->substr(x + 1));
    }
    if (flags.window) {
        const auto w = split_doubles(*flags.window, ':', "--window");
        if (w.size() != 4)
            throw ConfigError("--window for scan must be b0min:b0max:db0min:db0max");
        kv.set_double("beta0_min", w[0]);
        kv.set_double("beta0_max", w[1]);
        kv.set_double("dbeta0_min", w[2]);
        kv.set_double("dbeta0_max", w[3]);
    }
}

ScanConfig materialize_scan_config(RunContext& ctx, int jobs) {
    ScanConfig cfg = ScanConfig::from_config(ctx.config());
    cfg.jobs = jobs;
    return cfg;
}

// resolved semantic config = scan echo + per-command keys; runtime knobs
// (out dir, jobs) never enter the fingerprint
void freeze_config(RunContext& ctx, const ScanConfig& scan,
                   const std::vector<std::pair<std::string, std::string>>& extra) {
    KeyValueConfig resolved = scan.echo();
    for (const auto& [k, v] : extra) resolved.set(k, v);
    ctx.config() = resolved;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

void write_gnuplot_preamble(std::ostream& os, const RunContext& ctx) {
    os << "# tool_version = " << kToolName << " " << kToolVersion << "\n";
    os << "# config_fingerprint = " << ctx.fingerprint() << "\n";
}

json residual_json(const char* name, const OperatorResidual& r) {
    return json{{"name", name}, {"value", r.value}, {"boundary_ok", r.boundary_ok}};
}

struct TripleSetup {
    PotentialTriple triple;
    std::unique_ptr<BetaProvider> provider;
    Interval window;
    int n;
};

TripleSetup build_from_source(RunContext& ctx, const SeedSource& source,
                              const ScanConfig& scan, int grid_n) {
    TripleSetup ts;
    ts.window = {-scan.x_max, scan.x_max};
    ts.n = grid_n;
    const auto grid = uniform_grid(ts.window.lo, ts.window.hi, grid_n);
    switch (source.kind) {
        case SeedSource::Kind::Minus2x:
            ts.provider = std::make_unique<LinearBeta>(
                -2.0, Interval{ts.window.lo - 2.0, ts.window.hi + 2.0});
            ts.triple = build_triple(*ts.provider, ShiftConstants::oscillator(), grid,
                                     "closed-form beta = -2x");
            break;
        case SeedSource::Kind::Eq17:
            ts.provider = std::make_unique<ParticularBeta>(source.lambda);
            ts.triple = build_triple(*ts.provider, ShiftConstants::oscillator(), grid,
                                     "closed-form particular solution");
            break;
        case SeedSource::Kind::Csv: {
            ctx.add_input(source.csv_path);
            const BetaSolution sol = read_beta_solution_csv(source.csv_path);
            if (!sol.regular())
                throw NumericalError("singular solution: " + source.csv_path +
                                     " cannot seed a potential derivation");
            auto dense = std::make_unique<SolutionBeta>(sol);
            const Interval cov = dense->domain();
            ts.window = {std::max(ts.window.lo, cov.lo), std::min(ts.window.hi, cov.hi)};
            ts.triple = oscillator_triple(
                *dense, uniform_grid(ts.window.lo, ts.window.hi, grid_n),
                "integrated solution from " + source.csv_path);
            ts.provider = std::move(dense);
            break;
        }
    }
    return ts;
}

InitialPoint initial_point_for(const SeedSource& source) {
    switch (source.kind) {
        case SeedSource::Kind::Minus2x: return {0.0, -2.0};
        case SeedSource::Kind::Eq17: return ParticularBeta(source.lambda).initial_point();
        case SeedSource::Kind::Csv:
            throw ConfigError("csv seed has no initial point; use beta0/dbeta0");
    }
    return {0.0, -2.0};
}

}  // namespace

// ------------------------------------------------------------------ derive

int run_derive(const RunOptions& opts, const CommandFlags& flags) {
    RunContext ctx("derive", opts);
    apply_scan_flag_overrides(ctx.config(), flags);
    const ScanConfig scan = materialize_scan_config(ctx, opts.jobs);

    const std::string source_text = flags.seed_source.value_or(
        ctx.config().get_string("seed_source", "minus2x"));
    const SeedSource source = SeedSource::parse(source_text, flags.lambda);

    int grid_n = ctx.config().get_int("grid_n", 1200);
    if (flags.grid) grid_n = std::stoi(*flags.grid);
    if (grid_n < 16) throw ConfigError("grid_n must be at least 16");

    freeze_config(ctx, scan,
                  {{"seed_source", source.canonical()}, {"grid_n", std::to_string(grid_n)}});

    TripleSetup ts = build_from_source(ctx, source, scan, grid_n);

    {
        auto out = ctx.open_output("potential_triple.csv");
        write_triple_csv(out, ts.triple, ctx.fingerprint());
    }
    for (auto [name, column, label] :
         {std::tuple{"potential_v.csv", &ts.triple.v, "V"},
          std::tuple{"potential_vtilde.csv", &ts.triple.v_tilde, "Vtilde"},
          std::tuple{"potential_gamma.csv", &ts.triple.gamma, "gamma"}}) {
        auto out = ctx.open_output(name);
        write_potential_csv(out, ts.triple.x, *column, label, ctx.fingerprint());
    }

    const TestFunction psi = TestFunction::gaussian(0.8);
    const ConstraintResiduals cres =
        constraint_residuals(ts.triple, *ts.provider, ts.triple.constants);
    const OperatorResidual ires =
        intertwining_residual(ts.triple, *ts.provider, psi, ts.window, ts.n);
    const OperatorResidual fres = factorization_residual(
        ts.triple, *ts.provider, ts.triple.constants, psi, ts.window, ts.n);

    {
        json j;
        j["tool_version"] = std::string(kToolName) + " " + kToolVersion;
        j["fingerprint"] = ctx.fingerprint();
        j["constraint"] = {{"partner_shift", cres.partner_shift},
                           {"algebraic", cres.algebraic},
                           {"differential", cres.differential}};
        j["intertwining"] = residual_json("intertwining", ires);
        j["factorization"] = residual_json("factorization", fres);
        j["probe"] = psi.label();
        j["window"] = {ts.window.lo, ts.window.hi};
        j["grid_n"] = ts.n;
        auto out = ctx.open_output("residual_report.json");
        out << j.dump(2) << "\n";
    }

    ctx.write_manifest();
    std::printf("derive: wrote potential triple (%d points), residuals [%.3e %.3e %.3e], "
                "intertwining %.3e, factorization %.3e\n",
                ts.n, cres.partner_shift, cres.algebraic, cres.differential, ires.value,
                fres.value);
    return 0;
}

// --------------------------------------------------------------- integrate

int run_integrate(const RunOptions& opts, const CommandFlags& flags) {
    RunContext ctx("integrate", opts);
    apply_scan_flag_overrides(ctx.config(), flags);
    const ScanConfig scan = materialize_scan_config(ctx, opts.jobs);

    InitialPoint p{};
    std::string source_label = "point";
    if (flags.seed_source || ctx.config().has("seed_source")) {
        const SeedSource source = SeedSource::parse(
            flags.seed_source.value_or(ctx.config().get_string("seed_source", "")),
            flags.lambda);
        p = initial_point_for(source);
        source_label = source.canonical();
    }
    if (flags.beta0) p.beta0 = *flags.beta0;
    else if (ctx.config().has("beta0")) p.beta0 = ctx.config().get_double("beta0", 0.0);
    if (flags.dbeta0) p.dbeta0 = *flags.dbeta0;
    else if (ctx.config().has("dbeta0")) p.dbeta0 = ctx.config().get_double("dbeta0", 0.0);

    freeze_config(ctx, scan,
                  {{"beta0", format_double17(p.beta0)},
                   {"dbeta0", format_double17(p.dbeta0)},
                   {"seed_source", source_label}});

    const BetaSolution sol = integrate(p, scan);
    {
        auto out = ctx.open_output("beta_solution.csv");
        const std::string fp = ctx.fingerprint();
        write_beta_solution_csv(out, sol, &fp);
    }
    if (sol.regular()) {
        ctx.note("status: regular over [-x_max, x_max]");
        std::printf("integrate: regular, %zu samples, equation residual %.3e\n",
                    sol.samples.size(), beta_equation_residual(sol));
    } else {
        std::ostringstream msg;
        msg << "status: singular at x = " << format_double17(sol.x_sing) << " ("
            << (sol.sing_side == Side::Left ? "left" : "right") << " sweep)";
        ctx.note(msg.str());
        std::printf("integrate: %s\n", msg.str().c_str());
    }
    ctx.write_manifest();
    return 0;
}

// -------------------------------------------------------------------- scan

namespace {

void write_figure1_script(std::ostream& os, const RunContext& ctx) {
    write_gnuplot_preamble(os, ctx);
    os << R"gp(set datafile separator comma
set title "Initial-condition plane: singularity-free (shadowed) vs singular (white)"
set xlabel "beta(0)"
set ylabel "beta'(0)"
set key outside top
plot "region_map.csv" using 1:(strcol(3) eq "regular" ? $2 : 1/0) \
       with points pt 5 ps 0.6 lc rgb "#707070" title "regular", \
     "region_map.csv" using 1:(strcol(3) eq "singular" ? $2 : 1/0) \
       with points pt 5 ps 0.6 lc rgb "#e8e8e8" title "singular", \
     "curve.csv" using 1:2 with lines lw 2 lc rgb "black" \
       title "beta'(0) = -2 + beta(0)^2"
)gp";
}

}  // namespace

int run_scan(const RunOptions& opts, const CommandFlags& flags) {
    RunContext ctx("scan", opts);
    apply_scan_flag_overrides(ctx.config(), flags);
    const ScanConfig scan = materialize_scan_config(ctx, opts.jobs);
    freeze_config(ctx, scan, {});

    const RegionMap map = scan_region(scan);

    {
        auto out = ctx.open_output("region_map.csv");
        map.write_csv(out);
    }
    {
        auto out = ctx.open_output("region_map.json");
        out << map.to_json();
    }
    {
        // the initial-condition curve, for the figure overlay
        auto out = ctx.open_output("curve.csv");
        const double reach = std::min(2.0 / kSqrtPi - 1e-6,
                                      std::max(std::abs(scan.beta0_window.lo),
                                               std::abs(scan.beta0_window.hi)));
        std::vector<double> b0s, db0s;
        for (int i = 0; i <= 400; ++i) {
            const double b0 = -reach + 2.0 * reach * i / 400;
            if (b0 < scan.beta0_window.lo || b0 > scan.beta0_window.hi) continue;
            b0s.push_back(b0);
            db0s.push_back(initial_curve(b0));
        }
        write_potential_csv(out, b0s, db0s, "dbeta0", ctx.fingerprint(),
                            {"curve dbeta0 = -2 + beta0^2"});
    }
    {
        auto out = ctx.open_output("figure1.gp");
        write_figure1_script(out, ctx);
    }

    if (map.thresholds.empty())
        std::fprintf(stderr, "warning: no curve seed inside the window; threshold table "
                             "is empty\n");

    ctx.write_manifest();
    int regular = 0;
    for (const auto& c : map.cells) regular += c.regular() ? 1 : 0;
    std::printf("scan: %dx%d cells, %d regular, %zu threshold columns\n", scan.n_beta,
                scan.n_dbeta, regular, map.thresholds.size());
    return 0;
}

// ---------------------------------------------------------------- spectrum

namespace {

struct PartnerPotential {
    std::function<double(double)> eval;
    double tail_mismatch;
};

PartnerPotential partner_plus4_potential(InitialPoint p, const ScanConfig& scan) {
    const BetaSolution sol = integrate(p, scan);
    if (!sol.regular()) {
        std::ostringstream msg;
        msg << "initial point (" << p.beta0 << ", " << p.dbeta0
            << ") is singular at x = " << sol.x_sing << "; spectrum needs a regular point";
        throw NumericalError(msg.str());
    }
    auto dense = std::make_shared<SolutionBeta>(sol);
    const Interval cov = dense->domain();
    const int m = 2401;
    std::vector<double> xs(m), w(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = cov.lo + cov.length() * i / (m - 1);
        w[i] = xs[i] * xs[i] + 2.0 * dense->eval(xs[i]).dbeta + 4.0;
    }
    const ExtendedPotential ext =
        extend_with_asymptote(xs, w, [](double x) { return x * x; });
    return {ext.eval, ext.tail_mismatch};
}

}  // namespace

int run_spectrum(const RunOptions& opts, const CommandFlags& flags) {
    RunContext ctx("spectrum", opts);
    apply_scan_flag_overrides(ctx.config(), flags);
    const ScanConfig scan = materialize_scan_config(ctx, opts.jobs);

    const double beta0 = flags.beta0.value_or(ctx.config().get_double("beta0", -0.7));
    const double dbeta0 = flags.dbeta0.value_or(ctx.config().get_double("dbeta0", -1.51));
    const double lambda = flags.lambda.value_or(ctx.config().get_double("lambda", 2.0));
    const int kmax = flags.kmax.value_or(ctx.config().get_int("kmax", 6));
    Interval dom{ctx.config().get_double("spectral_lo", -8.0),
                 ctx.config().get_double("spectral_hi", 8.0)};
    if (flags.window) {
        const auto w = split_doubles(*flags.window, ':', "--window");
        if (w.size() != 2) throw ConfigError("--window for spectrum must be lo:hi");
        dom = {w[0], w[1]};
    }
    const int n = ctx.config().get_int("spectral_n", 4000);
    if (kmax < 1 || kmax > n)
        throw ConfigError("kmax out of range for the discretization size");

    freeze_config(ctx, scan,
                  {{"beta0", format_double17(beta0)},
                   {"dbeta0", format_double17(dbeta0)},
                   {"lambda", format_double17(lambda)},
                   {"kmax", std::to_string(kmax)},
                   {"spectral_lo", format_double17(dom.lo)},
                   {"spectral_hi", format_double17(dom.hi)},
                   {"spectral_n", std::to_string(n)}});

    const Spectrum osc = lowest_eigenvalues(
        discretize([](double x) { return x * x; }, dom, n, "oscillator x^2"), kmax);

    const PartnerPotential partner = partner_plus4_potential({beta0, dbeta0}, scan);
    const Spectrum sp = lowest_eigenvalues(
        discretize(partner.eval, dom, n, "partner potential + 4"), kmax);

    const Spectrum am = lowest_eigenvalues(
        discretize([lambda](double x) { return abraham_moses(lambda, x); }, dom, n,
                   "abraham-moses family"),
        kmax);

    const std::string fp = ctx.fingerprint();
    {
        auto out = ctx.open_output("spectrum_oscillator.csv");
        write_spectrum_csv(out, osc, fp);
    }
    {
        auto out = ctx.open_output("spectrum_partner.csv");
        write_spectrum_csv(out, sp, fp);
    }
    {
        auto out = ctx.open_output("spectrum_am.csv");
        write_spectrum_csv(out, am, fp);
    }

    const auto diff_partner = compare_spectra(sp, osc);
    const auto diff_am = compare_spectra(am, osc);
    const double worst_partner = *std::max_element(diff_partner.begin(), diff_partner.end());
    const double worst_am = *std::max_element(diff_am.begin(), diff_am.end());
    {
        auto out = ctx.open_output("comparison.csv");
        out << "# tool_version = " << kToolName << " " << kToolVersion << "\n";
        out << "# config_fingerprint = " << fp << "\n";
        out << "# tail_mismatch = " << format_double17(partner.tail_mismatch) << "\n";
        out << "# note = spectral agreement is numerical evidence at fixed precision "
               "(hypothesis-consistent), not proof\n";
        out << "level,oscillator,partner_plus4,am,abs_diff_partner,abs_diff_am\n";
        for (int i = 0; i < kmax; ++i) {
            out << i << "," << format_double17(osc.eigenvalues[i]) << ","
                << format_double17(sp.eigenvalues[i]) << ","
                << format_double17(am.eigenvalues[i]) << ","
                << format_double17(diff_partner[i]) << "," << format_double17(diff_am[i])
                << "\n";
        }
    }

    ctx.write_manifest();
    std::printf("spectrum: k=%d, max |partner+4 - oscillator| = %.3e, max |am - "
                "oscillator| = %.3e (hypothesis-%s)\n",
                kmax, worst_partner, worst_am,
                worst_partner <= 5e-3 ? "consistent" : "INCONSISTENT");
    return 0;
}

// ----------------------------------------------------------------- figure2

int run_figure2(const RunOptions& opts, const CommandFlags& flags) {
    RunContext ctx("figure2", opts);
    apply_scan_flag_overrides(ctx.config(), flags);
    const ScanConfig scan = materialize_scan_config(ctx, opts.jobs);

    const double beta0 = flags.beta0.value_or(ctx.config().get_double("beta0", -0.7));
    std::vector<double> values = flags.dbeta0_list;
    if (values.empty() && ctx.config().has("dbeta0_list"))
        values = split_doubles(ctx.config().get_string("dbeta0_list", ""), ',', "dbeta0_list");
    if (values.empty())
        throw ConfigError("figure2 needs at least one beta'(0) value (--dbeta0, "
                          "repeatable, or dbeta0_list in the config)");

    int grid_n = ctx.config().get_int("grid_n", 1200);
    if (flags.grid) grid_n = std::stoi(*flags.grid);

    std::string joined;
    for (double v : values) {
        if (!joined.empty()) joined += ",";
        joined += format_double17(v);
    }
    freeze_config(ctx, scan,
                  {{"beta0", format_double17(beta0)},
                   {"dbeta0_list", joined},
                   {"grid_n", std::to_string(grid_n)}});

    const auto grid = uniform_grid(-scan.x_max, scan.x_max, grid_n);
    struct Curve {
        std::string file;
        double dbeta0;
    };
    std::vector<Curve> written;
    std::vector<double> skipped;

    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const double v = values[idx];
        const BetaSolution sol = integrate({beta0, v}, scan);
        if (!sol.regular()) {
            std::fprintf(stderr,
                         "figure2: skipping beta'(0) = %g (singular at x = %g)\n", v,
                         sol.x_sing);
            std::ostringstream note;
            note << "skipped dbeta0 = " << format_double17(v)
                 << " (singular at x = " << format_double17(sol.x_sing) << ")";
            ctx.note(note.str());
            skipped.push_back(v);
            continue;
        }
        const SolutionBeta dense(sol);
        std::vector<double> w(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            w[i] = grid[i] * grid[i] + 2.0 * dense.eval(grid[i]).dbeta + 4.0;

        char name[64];
        std::snprintf(name, sizeof name, "figure2_%02zu.csv", idx);
        auto out = ctx.open_output(name);
        std::ostringstream meta;
        meta << "initial point beta0 = " << format_double17(beta0)
             << " dbeta0 = " << format_double17(v);
        write_potential_csv(out, grid, w, "vtilde_plus4", ctx.fingerprint(), {meta.str()});
        written.push_back({name, v});
    }

    {
        auto out = ctx.open_output("figure2.gp");
        write_gnuplot_preamble(out, ctx);
        out << "set datafile separator comma\n";
        out << "set title \"Partner potentials + 4 for beta(0) = " << beta0 << "\"\n";
        out << "set xlabel \"x\"\nset ylabel \"Vtilde(x) + 4\"\n";
        out << "set yrange [-5:40]\n";
        out << "plot \\\n";
        for (std::size_t i = 0; i < written.size(); ++i) {
            out << "  \"" << written[i].file << "\" using 1:2 with lines title \"beta'(0) = "
                << written[i].dbeta0 << "\"";
            out << (i + 1 < written.size() ? ", \\\n" : "\n");
        }
        if (written.empty()) out << "  1/0 notitle\n";
    }

    ctx.write_manifest();
    std::printf("figure2: wrote %zu curves", written.size());
    if (!skipped.empty()) std::printf(", skipped %zu singular values", skipped.size());
    std::printf("\n");
    return skipped.empty() ? 0 : 2;
}

// ------------------------------------------------------------------ verify

namespace {

struct CheckTable {
    json rows = json::array();
    bool all_ok = true;

    void add(const std::string& name, bool ok, const std::string& detail) {
        std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        rows.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        all_ok = all_ok && ok;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

int run_verify(const RunOptions& opts, const CommandFlags& flags) {
    RunContext ctx("verify", opts);
    apply_scan_flag_overrides(ctx.config(), flags);
    const ScanConfig scan = materialize_scan_config(ctx, opts.jobs);
    const int kmax = flags.kmax.value_or(ctx.config().get_int("kmax", 6));
    const int spectral_n = ctx.config().get_int("spectral_n", 4000);
    freeze_config(ctx, scan,
                  {{"kmax", std::to_string(kmax)},
                   {"spectral_n", std::to_string(spectral_n)}});

    CheckTable table;

    {  // oscillator identity: closed form reproduces x^2, equation vanishes
        const LinearBeta beta;
        double worst_v = 0.0, worst_eq = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = 0.1 + 5.9 * i / 99.0;
            worst_v = std::max(worst_v, std::abs(potential_from_beta(
                                            beta, ShiftConstants::oscillator(), x) -
                                        x * x));
            worst_eq = std::max(worst_eq, std::abs(beta_equation_lhs(x, -2.0 * x, -2.0, 0.0)));
        }
        table.add("oscillator identity", worst_v <= 1e-12 && worst_eq <= 1e-12,
                  "max |V - x^2| = " + fmt(worst_v) + ", max |eq(beta_p)| = " + fmt(worst_eq));
    }

    {  // closed-form conformance of the integrator
        double worst = 0.0;
        bool regular = true;
        for (double lam : {1.5, 2.0, 5.0, -2.0}) {
            const ParticularBeta bp(lam);
            const BetaSolution sol = integrate(bp.initial_point(), scan);
            regular = regular && sol.regular();
            if (!sol.regular()) continue;
            for (const auto& s : sol.samples) {
                if (std::abs(s.x) > 5.0) continue;
                worst = std::max(worst, std::abs(s.beta - beta_particular(lam, s.x).beta));
            }
        }
        table.add("closed-form conformance", regular && worst <= 1e-6,
                  "sup |beta - beta_p| = " + fmt(worst) + " over |x| <= 5");
    }

    {  // reconstruction of the one-parameter family through the pipeline
        double worst = 0.0;
        for (double lam : {1.5, 2.0, 5.0}) {
            const ParticularBeta bp(lam);
            const BetaSolution sol = integrate(bp.initial_point(), scan);
            if (!sol.regular()) {
                worst = 1.0;
                break;
            }
            const SolutionBeta dense(sol);
            for (int i = 0; i <= 1000; ++i) {
                const double x = -5.0 + 0.01 * i;
                const double lhs = x * x + 2.0 * dense.eval(x).dbeta + 4.0;
                worst = std::max(worst, std::abs(lhs - abraham_moses(lam, x)));
            }
        }
        table.add("closed-form reconstruction", worst <= 1e-6,
                  "sup |x^2 + 2 beta' + 4 - V_lambda| = " + fmt(worst));
    }

    {  // operator identities on the oscillator closed forms
        const LinearBeta beta;
        const Interval window{-8.0, 8.0};
        const TestFunction psi = TestFunction::gaussian();
        const auto grid = uniform_grid(window.lo, window.hi, 4001);
        const PotentialTriple triple = oscillator_triple(beta, grid, "oscillator");
        const auto grid2 = uniform_grid(window.lo, window.hi, 8001);
        const PotentialTriple triple2 = oscillator_triple(beta, grid2, "oscillator");

        const double i1 = intertwining_residual(triple, beta, psi, window, 4001).value;
        const double i2 = intertwining_residual(triple2, beta, psi, window, 8001).value;
        const double f1 = factorization_residual(triple, beta, ShiftConstants::oscillator(),
                                                 psi, window, 4001)
                              .value;
        const double f2 = factorization_residual(triple2, beta, ShiftConstants::oscillator(),
                                                 psi, window, 8001)
                              .value;
        const bool ok = i1 <= 1e-3 && f1 <= 1e-3 && i1 / i2 >= 3.0 && f1 / f2 >= 3.0;
        table.add("intertwining & factorization", ok,
                  "residuals " + fmt(i1) + " / " + fmt(f1) + ", refinement gains " +
                      fmt(i1 / i2) + "x / " + fmt(f1 / f2) + "x");
    }

    {  // the curve lies inside the regular region; brackets behave
        bool ok = true;
        for (int i = 0; i < 20; ++i) {
            const double b0 = -1.0 + 2.0 * i / 19.0;
            ok = ok && classify_point({b0, initial_curve(b0)}, scan).regular();
        }
        std::string detail = "20 curve points regular";
        const auto up = threshold_bisect(-0.7, Direction::Up, scan);
        const auto dn = threshold_bisect(-0.7, Direction::Down, scan);
        if (up && dn) {
            const bool bracket =
                classify_point({-0.7, *up - scan.bisect_tol}, scan).regular() &&
                !classify_point({-0.7, *up + scan.bisect_tol}, scan).regular() &&
                classify_point({-0.7, *dn + scan.bisect_tol}, scan).regular() &&
                !classify_point({-0.7, *dn - scan.bisect_tol}, scan).regular();
            ok = ok && bracket;
            detail += "; beta0 = -0.7 band [" + fmt(*dn) + ", " + fmt(*up) + "] bracket " +
                      (bracket ? "valid" : "INVALID");
        } else {
            ok = false;
            detail += "; thresholds not found";
        }
        table.add("region map properties", ok, detail);
    }

    {  // isospectrality at fixed precision
        const Interval dom{-8.0, 8.0};
        const Spectrum osc = lowest_eigenvalues(
            discretize([](double x) { return x * x; }, dom, spectral_n, "x^2"), kmax);
        double worst_control = 0.0;
        for (int i = 0; i < kmax; ++i)
            worst_control =
                std::max(worst_control, std::abs(osc.eigenvalues[i] - (2.0 * i + 1.0)));

        double worst_partner = 0.0;
        bool regular = true;
        for (auto p : {InitialPoint{-0.7, -1.51}, InitialPoint{-0.7, -1.0},
                       InitialPoint{0.5, -2.2}}) {
            try {
                const PartnerPotential partner = partner_plus4_potential(p, scan);
                const Spectrum sp = lowest_eigenvalues(
                    discretize(partner.eval, dom, spectral_n, "partner"), kmax);
                for (double d : compare_spectra(sp, osc))
                    worst_partner = std::max(worst_partner, d);
            } catch (const NumericalError&) {
                regular = false;
            }
        }
        table.add("isospectrality (hypothesis)",
                  regular && worst_control <= 1e-3 && worst_partner <= 5e-3,
                  "oscillator control " + fmt(worst_control) + ", partner deviation " +
                      fmt(worst_partner) +
                      " (numerical evidence at fixed precision, not proof)");
    }

    {  // asymmetric double well at the frozen fixture
        bool ok = false;
        std::string detail = "fixture (-0.7, -1.0) not regular";
        try {
            const PartnerPotential partner = partner_plus4_potential({-0.7, -1.0}, scan);
            const int m = 2401;
            std::vector<double> xs(m), w(m);
            for (int i = 0; i < m; ++i) {
                xs[i] = -6.0 + 12.0 * i / (m - 1);
                w[i] = partner.eval(xs[i]);
            }
            const DoubleWellReport rep = double_well_analysis(xs, w);
            double depth_gap = 0.0;
            if (rep.minima.size() == 2)
                depth_gap = std::abs(rep.minima[0].depth - rep.minima[1].depth);
            ok = rep.minima.size() == 2 && depth_gap > 1e-2 && rep.asymmetry > 0.01;
            detail = std::to_string(rep.minima.size()) + " minima, depth gap " +
                     fmt(depth_gap) + ", asymmetry " + fmt(rep.asymmetry);
        } catch (const NumericalError&) {
        }
        table.add("asymmetric double well", ok, detail);
    }

    {
        json j;
        j["tool_version"] = std::string(kToolName) + " " + kToolVersion;
        j["fingerprint"] = ctx.fingerprint();
        j["checks"] = table.rows;
        j["all_ok"] = table.all_ok;
        auto out = ctx.open_output("verify_report.json");
        out << j.dump(2) << "\n";
    }
    ctx.write_manifest();
    return table.all_ok ? 0 : 2;
}

}  // namespace sususy::cli
