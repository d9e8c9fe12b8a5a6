#include "sususy/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sususy/config.hpp"
#include "sususy/version.hpp"

namespace sususy {

namespace {

void write_preamble(std::ostream& os, const std::string& fingerprint) {
    os << "# tool_version = " << kToolName << " " << kToolVersion << "\n";
    os << "# config_fingerprint = " << fingerprint << "\n";
}

double parse_field(const std::string& field, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str())
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": not a number: '" + field + "'");
    return v;
}

}  // namespace

void write_beta_solution_csv(std::ostream& os, const BetaSolution& sol,
                             const std::string* file_fingerprint) {
    if (file_fingerprint) {
        write_preamble(os, *file_fingerprint);
        os << "# scan_config_fingerprint = " << fingerprint_hex(sol.config_fingerprint)
           << "\n";
    } else {
        write_preamble(os, fingerprint_hex(sol.config_fingerprint));
    }
    if (sol.regular()) {
        os << "# status = regular\n";
    } else {
        os << "# status = singular x_sing = " << format_double17(sol.x_sing)
           << " side = " << (sol.sing_side == Side::Left ? "left" : "right") << "\n";
    }
    os << "x,beta,dbeta\n";
    for (const auto& s : sol.samples)
        os << format_double17(s.x) << "," << format_double17(s.beta) << ","
           << format_double17(s.dbeta) << "\n";
}

BetaSolution read_beta_solution_csv(std::istream& is) {
    BetaSolution sol;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    bool saw_scan_fp = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string key;
            meta >> key;
            if (key == "status") {
                std::string eq, value;
                meta >> eq >> value;
                if (value == "regular") {
                    sol.status = SolutionStatus::Regular;
                } else if (value == "singular") {
                    sol.status = SolutionStatus::Singular;
                    std::string k2, e2, v2;
                    while (meta >> k2 >> e2 >> v2) {
                        if (k2 == "x_sing") sol.x_sing = parse_field(v2, line_no);
                        if (k2 == "side") sol.sing_side = v2 == "left" ? Side::Left : Side::Right;
                    }
                } else {
                    throw std::runtime_error("csv line " + std::to_string(line_no) +
                                             ": unknown status '" + value + "'");
                }
            } else if (key == "scan_config_fingerprint") {
                std::string eq, value;
                meta >> eq >> value;
                sol.config_fingerprint = std::strtoull(value.c_str(), nullptr, 16);
                saw_scan_fp = true;
            } else if (key == "config_fingerprint" && !saw_scan_fp) {
                std::string eq, value;
                meta >> eq >> value;
                sol.config_fingerprint = std::strtoull(value.c_str(), nullptr, 16);
            }
            continue;
        }
        if (!saw_header) {  // column header row
            saw_header = true;
            continue;
        }
        std::istringstream row(line);
        std::string fx, fb, fd;
        if (!std::getline(row, fx, ',') || !std::getline(row, fb, ',') ||
            !std::getline(row, fd, ','))
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": expected 3 fields x,beta,dbeta");
        sol.samples.push_back(
            {parse_field(fx, line_no), parse_field(fb, line_no), parse_field(fd, line_no)});
    }
    if (sol.samples.empty()) throw std::runtime_error("csv: no data rows");
    return sol;
}

BetaSolution read_beta_solution_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_beta_solution_csv(in);
}

void write_potential_csv(std::ostream& os, std::span<const double> x,
                         std::span<const double> v, const std::string& column_label,
                         const std::string& fingerprint,
                         const std::vector<std::string>& extra_metadata) {
    write_preamble(os, fingerprint);
    for (const auto& m : extra_metadata) os << "# " << m << "\n";
    os << "x," << column_label << "\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << format_double17(x[i]) << "," << format_double17(v[i]) << "\n";
}

void write_triple_csv(std::ostream& os, const PotentialTriple& triple,
                      const std::string& fingerprint) {
    write_preamble(os, fingerprint);
    if (!triple.provenance.empty()) os << "# provenance = " << triple.provenance << "\n";
    os << "# constants c = " << format_double17(triple.constants.c)
       << " delta = " << format_double17(triple.constants.delta) << "\n";
    os << "x,V,Vtilde,gamma\n";
    for (std::size_t i = 0; i < triple.x.size(); ++i)
        os << format_double17(triple.x[i]) << "," << format_double17(triple.v[i]) << ","
           << format_double17(triple.v_tilde[i]) << "," << format_double17(triple.gamma[i])
           << "\n";
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum,
                        const std::string& fingerprint) {
    write_preamble(os, fingerprint);
    os << "# potential = " << spectrum.label << "\n";
    os << "# domain = [" << format_double17(spectrum.a) << ", " << format_double17(spectrum.b)
       << "] n = " << spectrum.n << "\n";
    os << "level,eigenvalue\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
        os << i << "," << format_double17(spectrum.eigenvalues[i]) << "\n";
}

}  // namespace sususy
