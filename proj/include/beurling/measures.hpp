#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "beurling/counting.hpp"
#include "beurling/prime_system.hpp"
#include "beurling/rational.hpp"

namespace beurling {

struct Atom {
    Rational position;            // exact, >= 1
    std::complex<double> weight;
};

// Weights below this magnitude are dropped after merging.
inline constexpr double kWeightPruneThreshold = 1e-15;

// Finitely many atoms on [1, x_max], positions strictly increasing.
// Positions are exact; weights are complex floating values.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    // Sorts, merges equal positions, prunes near-zero weights.
    static DiscreteMeasure from_atoms(std::vector<Atom> atoms, double x_max);
    static DiscreteMeasure delta_one(double x_max);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double x_max() const { return x_max_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    // Weight at an exact position (0 if absent).
    std::complex<double> weight_at(const Rational& position) const;

private:
    std::vector<Atom> atoms_;
    double x_max_ = 1.0;
};

// A function on prime powers (p, k) -> complex, with a reporting tag.
struct PrimePowerWeight {
    std::function<std::complex<double>(const Rational& p, unsigned k)> fn;
    std::string tag;
};

PrimePowerWeight weight_one();
// h_q(p^k) = e^{2 pi i k q / K}
PrimePowerWeight weight_hq(int q, int K);
// distinct-factor variant: 1 - (1 - e^{2 pi i q / K})^k
PrimePowerWeight weight_distinct(int q, int K);
// three-way split of the distinct weight; g1 + g2 + g3 == weight_distinct
PrimePowerWeight weight_g1(int q, int K);
PrimePowerWeight weight_g2(int q, int K);
PrimePowerWeight weight_g3(int q, int K);

// Atoms at p^k <= x_max with weight w(p,k)/k; duplicate primes and equal
// rational positions merge by weight addition.
DiscreteMeasure dpi_measure(const PrimeSystem& system, double x_max, const PrimePowerWeight& w);

DiscreteMeasure measure_sum(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double x_max);
DiscreteMeasure measure_scale(const DiscreteMeasure& mu, std::complex<double> factor);

// Multiplicative convolution restricted to [1, x_max]: atoms at a*b with
// weights summed over all contributing pairs.
DiscreteMeasure convolve(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double x_max);

// delta_1 + sum_{j>=1} mu^{*j} / j!, truncated to [1, x_max]. All atoms of
// mu must sit at positions > 1 or the series would not terminate.
DiscreteMeasure exp_star(const DiscreteMeasure& mu, double x_max);

// Mellin-Stieltjes transform: sum of w * position^{-s}.
std::complex<double> mellin(const DiscreteMeasure& mu, std::complex<double> s);

struct ReconstructionReport {
    int q = 0;
    int K = 2;
    FactorMode mode = FactorMode::total;
    double x_max = 0.0;
    double max_discrepancy = 0.0;
    std::size_t positions_compared = 0;
    double tolerance = 1e-9;
    bool pass = false;
};

// Checks dF_q = exp*(h_q dPi) on a truncation: compares exp_star(dpi_measure)
// against the f_q-weighted integer measure from a full enumeration.
ReconstructionReport verify_fq_reconstruction(const PrimeSystem& system, int q, int K,
                                              FactorMode mode, double x_max);

// Partial L1 mass sum_{p^k <= X} |g2(p,k)| (p^k)^{-1} / k.
double g2_l1_partial(const PrimeSystem& system, int q, int K, double X);

// CSV: pos_num, pos_den, weight_re, weight_im.
void write_measure_csv(const DiscreteMeasure& mu, std::ostream& out);

}  // namespace beurling
