#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "beurling/semigroup.hpp"

namespace beurling {

// Which factor count the residue classes are taken on.
enum class FactorMode { total, distinct };

const char* to_string(FactorMode mode);
FactorMode factor_mode_from_string(const std::string& s);

struct ClassCountQuery {
    int modulus = 2;   // K >= 2
    int residue = 0;   // c in [0, K)
    FactorMode mode = FactorMode::total;
};

// e^{2 pi i q l / K} for the element's factor count l; the angle is reduced
// through (q*l) mod K before evaluation.
std::complex<double> unit_root_power(long long q, long long l, long long K);
std::complex<double> f_q_value(const GenInteger& n, int q, int K, FactorMode mode);

// Residue-class histogram of factor counts over elements with value <= x:
// counts[r] = #{n <= x : l(n) == r (mod K)}. All twisted sums reduce to it.
std::vector<std::size_t> class_histogram(const SemigroupTable& table, int K, FactorMode mode,
                                         double x);

// F_q(x) = sum_{n <= x} f_q(n), accumulated as K integer counters times
// roots of unity.
std::complex<double> F_q(const SemigroupTable& table, int q, int K, FactorMode mode, double x);

// S_{K,c}(x): elements with factor count == c (mod K).
std::size_t S_count(const SemigroupTable& table, const ClassCountQuery& query, double x);

// (1/K) sum_q e^{-2 pi i q c / K} F_q(x); agrees with S_count to ~1e-9 N(x).
std::complex<double> orthogonality_reconstruct(const SemigroupTable& table,
                                               const ClassCountQuery& query, double x);

struct ScanResult {
    std::string quantity;
    std::vector<double> grid;
    std::vector<std::complex<double>> values;
    bool complex_valued = false;
    std::map<std::string, std::string> metadata;
};

// K * S_{K,c}(x) / (a x) over the grid; approaches 1 under the density and
// Chebyshev hypotheses. a prefers known_density, else the empirical estimate.
ScanResult convergence_scan(const SemigroupTable& table, const ClassCountQuery& query,
                            const std::vector<double>& x_grid);

// max over samples of pi(x) ln(x) / x; 0 for an empty system.
double chebyshev_ratio(const PrimeSystem& system, const std::vector<double>& x_samples);

double density_estimate(const SemigroupTable& table);

// sum_{n <= x} 1/value(n): the finite Stieltjes integral of dN(u)/u.
double log_density(const SemigroupTable& table, double x);

// CSV: grid_point, value_re[, value_im]; metadata goes to a JSON sidecar.
void write_scan_csv(const ScanResult& scan, std::ostream& out);

}  // namespace beurling
