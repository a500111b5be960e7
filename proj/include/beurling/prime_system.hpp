#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "beurling/rational.hpp"

namespace beurling {

enum class SpecType { classical, explicit_list, modified };

// Generator descriptor; kept verbatim for serialization and reporting.
struct SystemSpec {
    SpecType type = SpecType::explicit_list;
    double limit = 0.0;                    // classical / modified base limit
    std::vector<Rational> primes;          // explicit list
    std::vector<long long> removed;        // modified: classical primes taken out
    std::vector<Rational> added;           // modified: extra generalized primes (multiset)
};

// A discrete Beurling generalized prime system: a nondecreasing multiset of
// rationals > 1, complete up to limit(). Immutable after construction.
class PrimeSystem {
public:
    static PrimeSystem classical(double limit);
    static PrimeSystem explicit_list(std::vector<Rational> primes);

    const std::vector<Rational>& primes() const { return primes_; }
    double limit() const { return limit_; }
    const SystemSpec& spec() const { return spec_; }
    std::optional<double> known_density() const { return known_density_; }
    bool empty() const { return primes_.empty(); }

    // Number of primes (with multiplicity) <= x. Throws range_error for
    // x > limit: the answer would be incomplete.
    std::size_t pi_count(double x) const;

private:
    PrimeSystem() = default;
    std::vector<Rational> primes_;
    double limit_ = 0.0;
    SystemSpec spec_;
    std::optional<double> known_density_;

    friend PrimeSystem modify_system(const PrimeSystem&, const std::vector<long long>&,
                                     const std::vector<Rational>&);
    friend PrimeSystem system_from_json(const nlohmann::json&);
};

// Removes classical primes and/or adds arbitrary rational primes > 1 to a
// classical base system. known_density becomes
// prod_{p removed} (1 - 1/p) * prod_{r added} r/(r-1).
PrimeSystem modify_system(const PrimeSystem& base, const std::vector<long long>& removed,
                          const std::vector<Rational>& added);

// Plain sieve of Eratosthenes; the reference oracle for classical systems.
std::vector<long long> sieve_primes(long long limit);

// System spec files:
// {"type": "classical"|"explicit"|"modified", "limit": number,
//  "primes": [{"num": int, "den": int}, ...], "removed": [int, ...],
//  "added": [{"num": int, "den": int}, ...]}
PrimeSystem system_from_json(const nlohmann::json& j);
PrimeSystem load_system(const std::string& path);
nlohmann::json system_to_json(const PrimeSystem& system);

}  // namespace beurling
