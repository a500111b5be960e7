#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "beurling/counting.hpp"
#include "beurling/semigroup.hpp"

namespace beurling {

// A truncated transform evaluation with its cutoff and, when a density
// constant is available, an explicit tail bound. No operation here claims a
// limit value; everything is finite and auditable.
struct TransformValue {
    std::complex<double> value;
    double truncation_X = 0.0;
    std::optional<double> tail_bound;
    std::complex<double> s;
};

// Dirichlet partial sum sum_{value(n) <= X} value(n)^{-s}, sigma > 1.
// tail_bound = C X^{1-sigma} (1 + |s|/(sigma-1)) with C ~ max N(u)/u sampled
// over u >= X/2.
TransformValue zeta_truncated(const SemigroupTable& table, std::complex<double> s, double X);

// Prime-power sum sum_{p^k <= X} w(p,k) p^{-ks} / k for the h_q (total) or
// distinct weight family; equals mellin(dpi_measure(...), s).
TransformValue log_fq_hat(const PrimeSystem& system, std::complex<double> s, int q, int K,
                          FactorMode variant, double X);

// Same sum but cut by prime <= prime_cutoff with the k-sum carried until
// (p^k)^{-sigma} < 1e-18; pairs with euler_product_fq at a matched cutoff.
std::complex<double> log_fq_primes(const PrimeSystem& system, std::complex<double> s, int q,
                                   int K, FactorMode variant, double prime_cutoff);

// Finite Euler product over primes <= X:
//   total:    prod 1/(1 - z p^{-s})
//   distinct: prod (1 + z p^{-s}/(1 - p^{-s}))
// with z = e^{2 pi i q / K}.
TransformValue euler_product_fq(const PrimeSystem& system, std::complex<double> s, int q, int K,
                                FactorMode variant, double X);

// M - 1 - M cos(x) + cos(Kx); nonnegative for all real x once M >= K^2.
double trig_lhs(double x, int K, double M);

// sum_{p^k <= X} (p^k)^{-sigma} (1 - cos(t ln(p^k) - 2 pi q / K)) / k.
double dini_integral(const PrimeSystem& system, int q, int K, double t, double sigma, double X);

// sum_{p^k <= X} (p^k)^{-sigma} (M - 1 - M cos(t ln p^k - 2 pi q/K) + cos(K t ln p^k)) / k.
// Every atom contributes nonnegatively when M >= K^2.
double pointwise_inequality_check(const PrimeSystem& system, double sigma, double t, int q,
                                  int K, double M, double X);

struct HalaszProbeRow {
    double sigma = 0.0;
    double t = 0.0;
    int q = 0;
    int K = 2;
    double truncation_X = 0.0;
    double p_value = 0.0;     // (sigma-1) |exp(e^{2 pi i q/K} log zeta_X(sigma+it))|
    double dini_value = 0.0;  // I(sigma, t)
    double tail_bound = 0.0;  // q=0 zeta tail estimate at the chosen X
};

// Smallest power of 10 whose zeta tail estimate drops below 1e-3 of the
// truncated value, capped at x_cap (and at the table range).
double schedule_X(const SemigroupTable& table, double sigma, double x_cap);

// Evaluates the modulated-zeta magnitude and the Dini integrand over the
// (sigma, t) grid, with a per-sigma cutoff from schedule_X. q = 0 is
// rejected: the probe targets the nontrivial twist directions.
std::vector<HalaszProbeRow> halasz_probe(const SemigroupTable& table, int q, int K,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& sigmas, double x_cap);

// (sigma-1) zeta_X(sigma) + a_hat X^{1-sigma} with a_hat = N(X)/X: the
// density-completed diagnostic, ~ a for a system of density a.
double zeta_density_diagnostic(const SemigroupTable& table, double sigma, double X);

}  // namespace beurling
