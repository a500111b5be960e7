#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "beurling/prime_system.hpp"
#include "beurling/rational.hpp"

namespace beurling {

// One generalized integer, identified with its exponent vector over the
// prime sequence. Distinct vectors are distinct elements even when their
// rational values coincide.
struct GenInteger {
    Rational value;
    std::uint32_t omega_total = 0;     // Omega: prime factors with multiplicity
    std::uint32_t omega_distinct = 0;  // omega: distinct prime indices used
    // Sparse exponent vector: (prime index, exponent), indices increasing.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
};

// Complete sorted enumeration of the multiplicative semigroup up to x_max.
class SemigroupTable {
public:
    SemigroupTable(std::shared_ptr<const PrimeSystem> system, double x_max,
                   std::vector<GenInteger> elements)
        : system_(std::move(system)), x_max_(x_max), elements_(std::move(elements)) {}

    const PrimeSystem& system() const { return *system_; }
    std::shared_ptr<const PrimeSystem> system_ptr() const { return system_; }
    double x_max() const { return x_max_; }
    const std::vector<GenInteger>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    // N(x): number of elements with value <= x. N(1) = 1.
    std::size_t n_count(double x) const;

    // Index of the first element with value > x (x within [1, x_max]).
    std::size_t upper_index(double x) const;

private:
    std::shared_ptr<const PrimeSystem> system_;
    double x_max_;
    std::vector<GenInteger> elements_;
};

inline constexpr std::uint64_t kDefaultMemCap = 200'000'000;

// DFS over prime indices with exact pruning at x_max. A pilot counting pass
// enforces mem_cap before any element is materialized.
SemigroupTable enumerate_semigroup(const PrimeSystem& system, double x_max,
                                   std::uint64_t mem_cap = kDefaultMemCap);
SemigroupTable enumerate_semigroup(std::shared_ptr<const PrimeSystem> system, double x_max,
                                   std::uint64_t mem_cap = kDefaultMemCap);

// Pi(x) = sum_k pi(x^{1/k})/k, exact; the sum terminates once x^{1/k} < p_1.
Rational pi_riemann(const PrimeSystem& system, double x);

// CSV dump: value_num, value_den, value_float, omega_total, omega_distinct.
void write_table_csv(const SemigroupTable& table, std::ostream& out);

}  // namespace beurling
