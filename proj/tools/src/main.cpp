#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sususy/version.hpp"

using namespace sususy;
using namespace sususy::cli;

namespace {

// exit contract: 0 success, 1 usage/config error, 2 numerical failure
constexpr int kUsageError = 1;
constexpr int kNumericalFailure = 2;

void add_common(CLI::App* cmd, RunOptions& opts) {
    cmd->add_option("--config", opts.config_path, "key = value config file");
    cmd->add_option("--out", opts.out_dir,
                    "output directory (default: $SUSUSY_OUT_DIR or .)");
    cmd->add_option("--jobs", opts.jobs, "worker pool size (0 = all CPUs)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("partner-potential toolkit (") + kToolName + " " +
                 kToolVersion + ")"};
    app.require_subcommand(1);

    RunOptions opts;
    CommandFlags flags;

    auto* derive = app.add_subcommand(
        "derive", "potential triple (V, Vtilde, gamma) and residual report from a "
                  "beta source");
    add_common(derive, opts);
    derive->add_option("--seed-source", flags.seed_source,
                       "minus2x | eq17:lambda=V | csv:PATH");
    derive->add_option("--lambda", flags.lambda, "lambda for the eq17 source");
    derive->add_option("--grid", flags.grid, "sample count for the output grid");

    auto* integrate = app.add_subcommand(
        "integrate", "integrate the beta equation from an initial point");
    add_common(integrate, opts);
    integrate->add_option("--beta0", flags.beta0, "beta(0)");
    integrate->add_option("--dbeta0", flags.dbeta0, "beta'(0)");
    integrate->add_option("--seed-source", flags.seed_source,
                          "minus2x | eq17:lambda=V (initial point from a closed form)");
    integrate->add_option("--lambda", flags.lambda, "lambda for the eq17 source");

    auto* scan = app.add_subcommand(
        "scan", "classify the initial-condition plane and locate thresholds");
    add_common(scan, opts);
    scan->add_option("--grid", flags.grid, "plane grid as NBxND (e.g. 44x60)");
    scan->add_option("--window", flags.window, "plane window b0min:b0max:db0min:db0max");

    auto* spectrum = app.add_subcommand(
        "spectrum", "low-lying spectra of the partner, the closed-form family and "
                    "the oscillator");
    add_common(spectrum, opts);
    spectrum->add_option("--beta0", flags.beta0, "beta(0) of the partner fixture");
    spectrum->add_option("--dbeta0", flags.dbeta0, "beta'(0) of the partner fixture");
    spectrum->add_option("--lambda", flags.lambda, "closed-form family parameter");
    spectrum->add_option("--kmax", flags.kmax, "number of eigenvalues");
    spectrum->add_option("--window", flags.window, "spectral domain lo:hi");

    auto* figure2 = app.add_subcommand(
        "figure2", "partner-potential gallery at fixed beta(0)");
    add_common(figure2, opts);
    figure2->add_option("--beta0", flags.beta0, "fixed beta(0) (default -0.7)");
    figure2->add_option("--dbeta0", flags.dbeta0_list,
                        "beta'(0) value (repeatable)");
    figure2->add_option("--grid", flags.grid, "sample count for the shared grid");

    auto* verify = app.add_subcommand(
        "verify", "run the full residual and isospectrality suite");
    add_common(verify, opts);
    verify->add_option("--kmax", flags.kmax, "number of eigenvalues to compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (derive->parsed()) return run_derive(opts, flags);
        if (integrate->parsed()) return run_integrate(opts, flags);
        if (scan->parsed()) return run_scan(opts, flags);
        if (spectrum->parsed()) return run_spectrum(opts, flags);
        if (figure2->parsed()) return run_figure2(opts, flags);
        if (verify->parsed()) return run_verify(opts, flags);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kNumericalFailure;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    }
    return kUsageError;
}
