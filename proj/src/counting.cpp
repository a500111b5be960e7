#include "beurling/counting.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "beurling/errors.hpp"

namespace beurling {

const char* to_string(FactorMode mode) {
    return mode == FactorMode::total ? "total" : "distinct";
}

FactorMode factor_mode_from_string(const std::string& s) {
    if (s == "total") return FactorMode::total;
    if (s == "distinct") return FactorMode::distinct;
    throw validation_error("unknown factor mode \"" + s + "\" (expected total|distinct)");
}

namespace {

void check_query(int q, int K) {
    if (K < 2) throw validation_error("modulus K must be >= 2");
    if (q < 0 || q >= K) throw validation_error("q must lie in [0, K)");
}

std::uint32_t factor_count(const GenInteger& n, FactorMode mode) {
    return mode == FactorMode::total ? n.omega_total : n.omega_distinct;
}

}  // namespace

std::complex<double> unit_root_power(long long q, long long l, long long K) {
    long long r = (q % K) * (l % K) % K;
    if (r < 0) r += K;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(K);
    return std::polar(1.0, angle);
}

std::complex<double> f_q_value(const GenInteger& n, int q, int K, FactorMode mode) {
    check_query(q, K);
    return unit_root_power(q, factor_count(n, mode), K);
}

std::vector<std::size_t> class_histogram(const SemigroupTable& table, int K, FactorMode mode,
                                         double x) {
    if (K < 2) throw validation_error("modulus K must be >= 2");
    std::vector<std::size_t> counts(static_cast<std::size_t>(K), 0);
    std::size_t end = table.upper_index(x);
    const auto& elements = table.elements();
    for (std::size_t i = 0; i < end; ++i)
        ++counts[factor_count(elements[i], mode) % static_cast<std::uint32_t>(K)];
    return counts;
}

std::complex<double> F_q(const SemigroupTable& table, int q, int K, FactorMode mode, double x) {
    check_query(q, K);
    std::vector<std::size_t> counts = class_histogram(table, K, mode, x);
    std::complex<double> sum = 0.0;
    for (int r = 0; r < K; ++r)
        sum += static_cast<double>(counts[static_cast<std::size_t>(r)]) * unit_root_power(q, r, K);
    return sum;
}

std::size_t S_count(const SemigroupTable& table, const ClassCountQuery& query, double x) {
    check_query(query.residue, query.modulus);
    return class_histogram(table, query.modulus, query.mode,
                           x)[static_cast<std::size_t>(query.residue)];
}

std::complex<double> orthogonality_reconstruct(const SemigroupTable& table,
                                               const ClassCountQuery& query, double x) {
    check_query(query.residue, query.modulus);
    const int K = query.modulus;
    std::vector<std::size_t> counts = class_histogram(table, K, query.mode, x);
    std::complex<double> sum = 0.0;
    for (int q = 0; q < K; ++q) {
        std::complex<double> fq = 0.0;
        for (int r = 0; r < K; ++r)
            fq += static_cast<double>(counts[static_cast<std::size_t>(r)]) *
                  unit_root_power(q, r, K);
        sum += std::conj(unit_root_power(q, query.residue, K)) * fq;
    }
    return sum / static_cast<double>(K);
}

ScanResult convergence_scan(const SemigroupTable& table, const ClassCountQuery& query,
                            const std::vector<double>& x_grid) {
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i - 1] < x_grid[i]))
            throw validation_error("scan grid must be strictly increasing");
    double a;
    std::string density_source;
    if (auto known = table.system().known_density()) {
        a = *known;
        density_source = "known";
    } else {
        a = density_estimate(table);
        density_source = "estimate";
        if (a < 1e-6)
            throw validation_error("no known density and empirical estimate is degenerate");
    }
    ScanResult scan;
    scan.quantity = "K*S/(a*x)";
    scan.grid = x_grid;
    scan.complex_valued = false;
    for (double x : x_grid) {
        double s = static_cast<double>(S_count(table, query, x));
        scan.values.emplace_back(static_cast<double>(query.modulus) * s / (a * x), 0.0);
    }
    scan.metadata["K"] = std::to_string(query.modulus);
    scan.metadata["c"] = std::to_string(query.residue);
    scan.metadata["mode"] = to_string(query.mode);
    scan.metadata["density"] = std::to_string(a);
    scan.metadata["density_source"] = density_source;
    scan.metadata["x_max"] = std::to_string(table.x_max());
    return scan;
}

double chebyshev_ratio(const PrimeSystem& system, const std::vector<double>& x_samples) {
    double worst = 0.0;
    for (double x : x_samples) {
        if (x <= 1) continue;
        double ratio =
            static_cast<double>(system.pi_count(x)) * std::log(x) / x;
        worst = std::max(worst, ratio);
    }
    return worst;
}

double density_estimate(const SemigroupTable& table) {
    return static_cast<double>(table.size()) / table.x_max();
}

double log_density(const SemigroupTable& table, double x) {
    std::size_t end = table.upper_index(x);
    const auto& elements = table.elements();
    long double sum = 0.0L;
    for (std::size_t i = 0; i < end; ++i)
        sum += 1.0L / elements[i].value.template convert_to<long double>();
    return static_cast<double>(sum);
}

void write_scan_csv(const ScanResult& scan, std::ostream& out) {
    out << "grid_point,value_re";
    if (scan.complex_valued) out << ",value_im";
    out << '\n';
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        out << scan.grid[i] << ',' << scan.values[i].real();
        if (scan.complex_valued) out << ',' << scan.values[i].imag();
        out << '\n';
    }
}

}  // namespace beurling
