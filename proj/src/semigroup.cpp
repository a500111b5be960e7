#include "beurling/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "beurling/errors.hpp"

namespace beurling {

namespace {

// Counting pass with the same pruning as the real DFS; aborts once the
// running count would exceed cap.
std::uint64_t pilot_count(const std::vector<Rational>& primes, const Rational& x_max,
                          const Rational& value, std::size_t start, std::uint64_t budget) {
    std::uint64_t used = 1;  // this node
    if (used > budget) throw resource_error("enumeration would exceed the memory cap");
    for (std::size_t j = start; j < primes.size(); ++j) {
        Rational next = value * primes[j];
        if (next > x_max) break;  // primes nondecreasing: later ones overflow too
        used += pilot_count(primes, x_max, next, j, budget - used);
        if (used > budget) throw resource_error("enumeration would exceed the memory cap");
    }
    return used;
}

struct DfsEmitter {
    const std::vector<Rational>& primes;
    const Rational& x_max;
    std::vector<GenInteger>& out;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // sparse exponents

    void emit(const Rational& value) {
        GenInteger n;
        n.value = value;
        n.factors = stack;
        n.omega_distinct = static_cast<std::uint32_t>(stack.size());
        std::uint32_t total = 0;
        for (const auto& [idx, exp] : stack) total += exp;
        n.omega_total = total;
        out.push_back(std::move(n));
    }

    void go(const Rational& value, std::size_t start) {
        emit(value);
        for (std::size_t j = start; j < primes.size(); ++j) {
            Rational next = value * primes[j];
            if (next > x_max) break;
            stack.emplace_back(static_cast<std::uint32_t>(j), 1u);
            // exponent loop on prime j
            while (true) {
                go(next, j + 1);
                Rational deeper = next * primes[j];
                if (deeper > x_max) break;
                next = std::move(deeper);
                ++stack.back().second;
            }
            stack.pop_back();
        }
    }
};

// Value order with a lexicographic exponent-vector tie-break so the table is
// fully deterministic even when distinct elements share a rational value.
bool element_less(const GenInteger& a, const GenInteger& b) {
    // double keys first; exact comparison only on (rare) key collisions
    double da = to_double(a.value), db = to_double(b.value);
    if (da != db) return da < db;
    if (a.value != b.value) return a.value < b.value;
    // lex order on dense exponent vectors: the element whose first differing
    // index carries the larger exponent is lexicographically larger
    auto ita = a.factors.begin(), itb = b.factors.begin();
    while (ita != a.factors.end() && itb != b.factors.end()) {
        if (ita->first != itb->first) return ita->first > itb->first;  // other has e > 0 earlier
        if (ita->second != itb->second) return ita->second < itb->second;
        ++ita;
        ++itb;
    }
    return ita == a.factors.end() && itb != b.factors.end();
}

}  // namespace

SemigroupTable enumerate_semigroup(std::shared_ptr<const PrimeSystem> system, double x_max,
                                   std::uint64_t mem_cap) {
    if (!(x_max >= 1)) throw validation_error("enumerate requires x_max >= 1");
    if (x_max > system->limit())
        throw range_error("x_max = " + std::to_string(x_max) + " exceeds system limit " +
                          std::to_string(system->limit()));
    const Rational bound = rational_from_double(x_max);
    const std::vector<Rational>& primes = system->primes();

    std::uint64_t count = pilot_count(primes, bound, Rational(1), 0, mem_cap);

    std::vector<GenInteger> elements;
    elements.reserve(static_cast<std::size_t>(count));
    DfsEmitter emitter{primes, bound, elements, {}};
    emitter.go(Rational(1), 0);
    std::sort(elements.begin(), elements.end(), element_less);
    return SemigroupTable(std::move(system), x_max, std::move(elements));
}

SemigroupTable enumerate_semigroup(const PrimeSystem& system, double x_max,
                                   std::uint64_t mem_cap) {
    return enumerate_semigroup(std::make_shared<PrimeSystem>(system), x_max, mem_cap);
}

std::size_t SemigroupTable::upper_index(double x) const {
    if (x > x_max_)
        throw range_error("count query at x = " + std::to_string(x) +
                          " exceeds table range x_max = " + std::to_string(x_max_));
    if (x < 1) return 0;
    Rational bound = rational_from_double(x);
    auto it = std::upper_bound(elements_.begin(), elements_.end(), bound,
                               [](const Rational& b, const GenInteger& n) { return b < n.value; });
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t SemigroupTable::n_count(double x) const { return upper_index(x); }

Rational pi_riemann(const PrimeSystem& system, double x) {
    if (x > system.limit())
        throw range_error("pi_riemann at x = " + std::to_string(x) + " exceeds system limit");
    Rational bound = rational_from_double(std::max(x, 0.0));
    Rational sum(0);
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        Rational power = p;
        for (unsigned k = 1; power <= bound; ++k, power *= p) sum += Rational(1, k);
    }
    return sum;
}

void write_table_csv(const SemigroupTable& table, std::ostream& out) {
    out << "value_num,value_den,value_float,omega_total,omega_distinct\n";
    for (const GenInteger& n : table.elements()) {
        out << numerator(n.value) << ',' << denominator(n.value) << ',' << to_double(n.value)
            << ',' << n.omega_total << ',' << n.omega_distinct << '\n';
    }
}

}  // namespace beurling
