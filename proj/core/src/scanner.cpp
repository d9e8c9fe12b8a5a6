#include "sususy/scanner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sususy/special_functions.hpp"
#include "sususy/version.hpp"

namespace sususy {

void ScanConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("scan config: " + what); };
    if (!(x_max > 0.0)) fail("x_max must be positive");
    if (!(rtol > 0.0) || !(atol > 0.0)) fail("tolerances must be positive");
    if (!(max_step > 0.0)) fail("max_step must be positive");
    if (!(beta_floor > 0.0) || !(blowup_cap > 0.0) || !(step_floor > 0.0))
        fail("termination criteria must be positive");
    if (!(beta0_window.length() > 0.0) || !(dbeta0_window.length() > 0.0))
        fail("plane window is degenerate");
    if (n_beta < 1 || n_dbeta < 1) fail("grid dimensions must be >= 1");
    if (!(bisect_tol > 0.0)) fail("bisect_tol must be positive");
    if (jobs < 0) fail("jobs must be >= 0");
}

ScanConfig ScanConfig::from_config(const KeyValueConfig& kv) {
    ScanConfig c;
    c.x_max = kv.get_double("x_max", c.x_max);
    c.rtol = kv.get_double("rtol", c.rtol);
    c.atol = kv.get_double("atol", c.atol);
    c.max_step = kv.get_double("max_step", c.max_step);
    c.beta_floor = kv.get_double("beta_floor", c.beta_floor);
    c.blowup_cap = kv.get_double("blowup_cap", c.blowup_cap);
    c.step_floor = kv.get_double("step_floor", c.step_floor);
    c.beta0_window.lo = kv.get_double("beta0_min", c.beta0_window.lo);
    c.beta0_window.hi = kv.get_double("beta0_max", c.beta0_window.hi);
    c.dbeta0_window.lo = kv.get_double("dbeta0_min", c.dbeta0_window.lo);
    c.dbeta0_window.hi = kv.get_double("dbeta0_max", c.dbeta0_window.hi);
    c.n_beta = kv.get_int("n_beta", c.n_beta);
    c.n_dbeta = kv.get_int("n_dbeta", c.n_dbeta);
    c.bisect_tol = kv.get_double("bisect_tol", c.bisect_tol);
    c.jobs = kv.get_int("jobs", c.jobs);
    c.validate();
    return c;
}

KeyValueConfig ScanConfig::echo() const {
    KeyValueConfig kv;
    kv.set_double("x_max", x_max);
    kv.set_double("rtol", rtol);
    kv.set_double("atol", atol);
    kv.set_double("max_step", max_step);
    kv.set_double("beta_floor", beta_floor);
    kv.set_double("blowup_cap", blowup_cap);
    kv.set_double("step_floor", step_floor);
    kv.set_double("beta0_min", beta0_window.lo);
    kv.set_double("beta0_max", beta0_window.hi);
    kv.set_double("dbeta0_min", dbeta0_window.lo);
    kv.set_double("dbeta0_max", dbeta0_window.hi);
    kv.set_int("n_beta", n_beta);
    kv.set_int("n_dbeta", n_dbeta);
    kv.set_double("bisect_tol", bisect_tol);
    return kv;
}

Classification classify_point(InitialPoint p, const ScanConfig& cfg) {
    const BetaSolution sol = integrate(p, cfg);
    return {sol.status, sol.x_sing};
}

namespace {

// The singular zone just outside the band contains measure-zero regular
// strands (trajectories that thread between the two poles); a pointwise
// query can land on one. A threshold describes the open band, so strands
// below the bisection resolution are outvoted by two nearby probes.
bool band_regular(double beta0, double v, const ScanConfig& cfg) {
    const double j = cfg.bisect_tol / 16.0;
    return classify_point({beta0, v}, cfg).regular() &&
           classify_point({beta0, v - j}, cfg).regular() &&
           classify_point({beta0, v + j}, cfg).regular();
}

}  // namespace

std::optional<double> threshold_bisect(double beta0, Direction dir, const ScanConfig& cfg) {
    cfg.validate();
    const double seed = initial_curve(beta0);  // throws when |beta0| too large
    if (!classify_point({beta0, seed}, cfg).regular())
        throw std::domain_error("threshold_bisect: curve seed did not classify Regular");

    const double sign = dir == Direction::Up ? 1.0 : -1.0;
    const double limit = dir == Direction::Up ? cfg.dbeta0_window.hi : cfg.dbeta0_window.lo;

    // expand outward by doubling until a singular point brackets the edge
    double regular_v = seed;
    double step = std::max(cfg.bisect_tol, 1e-2);
    double singular_v = 0.0;
    bool found = false;
    while (true) {
        double probe = regular_v + sign * step;
        if (sign * (probe - limit) > 0.0) probe = limit;
        if (band_regular(beta0, probe, cfg)) {
            regular_v = probe;
            if (probe == limit) break;  // boundary outside the scan window
            step *= 2.0;
        } else {
            singular_v = probe;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;

    while (std::abs(singular_v - regular_v) > cfg.bisect_tol) {
        const double mid = 0.5 * (singular_v + regular_v);
        (band_regular(beta0, mid, cfg) ? regular_v : singular_v) = mid;
    }

    // Any point of the final bracket estimates the boundary to within the
    // tolerance. Prefer one whose +-bisect_tol probes are inward-regular and
    // outward-singular; the bisection lattice can otherwise place the
    // outward probe exactly on one of the ulp-wide regular strands.
    const double width = singular_v - regular_v;  // signed, |width| <= tol
    for (double frac : {0.5, 0.25, 0.75, 0.375, 0.625, 0.125, 0.875}) {
        const double thr = regular_v + frac * width;
        const bool inward_ok =
            classify_point({beta0, thr - sign * cfg.bisect_tol}, cfg).regular();
        const bool outward_ok =
            !classify_point({beta0, thr + sign * cfg.bisect_tol}, cfg).regular();
        if (inward_ok && outward_ok) return thr;
    }
    return regular_v + 0.5 * width;
}

InitialPoint RegionMap::cell_center(int i_beta, int j_dbeta) const {
    const double db = config.beta0_window.length() / config.n_beta;
    const double dd = config.dbeta0_window.length() / config.n_dbeta;
    return {config.beta0_window.lo + (i_beta + 0.5) * db,
            config.dbeta0_window.lo + (j_dbeta + 0.5) * dd};
}

const Classification& RegionMap::cell(int i_beta, int j_dbeta) const {
    return cells[static_cast<std::size_t>(i_beta) * config.n_dbeta + j_dbeta];
}

RegionMap scan_region(const ScanConfig& cfg) {
    cfg.validate();
    RegionMap map;
    map.config = cfg;
    map.cells.resize(static_cast<std::size_t>(cfg.n_beta) * cfg.n_dbeta);

    const std::size_t total = map.cells.size();
    unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::size_t>(workers, total);

    // results land in a pre-shaped matrix keyed by cell index, so worker
    // completion order cannot affect the output
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        try {
            for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
                const int i = static_cast<int>(idx) / cfg.n_dbeta;
                const int j = static_cast<int>(idx) % cfg.n_dbeta;
                map.cells[idx] = classify_point(map.cell_center(i, j), cfg);
            }
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    const double curve_max = 2.0 / kSqrtPi;
    for (int i = 0; i < cfg.n_beta; ++i) {
        const double beta0 = map.cell_center(i, 0).beta0;
        if (std::abs(beta0) >= curve_max) continue;
        const double seed = initial_curve(beta0);
        if (seed < cfg.dbeta0_window.lo || seed > cfg.dbeta0_window.hi) continue;
        if (!classify_point({beta0, seed}, cfg).regular()) continue;  // no usable seed
        ColumnThresholds col{beta0, std::nullopt, std::nullopt};
        col.lower = threshold_bisect(beta0, Direction::Down, cfg);
        col.upper = threshold_bisect(beta0, Direction::Up, cfg);
        map.thresholds.push_back(col);
    }
    return map;
}

void RegionMap::write_csv(std::ostream& os) const {
    os << "# tool_version = " << kToolName << " " << kToolVersion << "\n";
    os << "# config_fingerprint = " << fingerprint_hex(config.fingerprint()) << "\n";
    os << "beta0,dbeta0,label,x_sing\n";
    for (int i = 0; i < config.n_beta; ++i) {
        for (int j = 0; j < config.n_dbeta; ++j) {
            const InitialPoint p = cell_center(i, j);
            const Classification& c = cell(i, j);
            os << format_double17(p.beta0) << "," << format_double17(p.dbeta0) << ",";
            if (c.regular())
                os << "regular,";
            else
                os << "singular," << format_double17(c.x_sing);
            os << "\n";
        }
    }
}

std::string RegionMap::to_json() const {
    nlohmann::json j;
    j["tool_version"] = std::string(kToolName) + " " + kToolVersion;
    j["fingerprint"] = fingerprint_hex(config.fingerprint());
    nlohmann::json cfg_echo;
    const KeyValueConfig echo = config.echo();
    for (const auto& [k, v] : echo.entries()) cfg_echo[k] = v;
    j["config"] = cfg_echo;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& col : thresholds) {
        nlohmann::json row;
        row["beta0"] = col.beta0;
        if (col.lower) row["lower"] = *col.lower;
        if (col.upper) row["upper"] = *col.upper;
        table.push_back(row);
    }
    j["thresholds"] = table;
    int regular_cells = 0;
    for (const auto& c : cells) regular_cells += c.regular() ? 1 : 0;
    j["regular_cells"] = regular_cells;
    j["singular_cells"] = static_cast<int>(cells.size()) - regular_cells;
    return j.dump(2) + "\n";
}

}  // namespace sususy
