#include "beurling/prime_system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "beurling/errors.hpp"

namespace beurling {

std::vector<long long> sieve_primes(long long limit) {
    std::vector<long long> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (long long i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        for (long long j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return primes;
}

PrimeSystem PrimeSystem::classical(double limit) {
    if (!(limit >= 2))
        throw validation_error("classical system requires limit >= 2; got an empty range "
                               "(use an explicit empty list for a system with no primes)");
    PrimeSystem sys;
    for (long long p : sieve_primes(static_cast<long long>(std::floor(limit))))
        sys.primes_.emplace_back(p);
    sys.limit_ = limit;
    sys.spec_.type = SpecType::classical;
    sys.spec_.limit = limit;
    sys.known_density_ = 1.0;
    return sys;
}

PrimeSystem PrimeSystem::explicit_list(std::vector<Rational> primes) {
    for (const Rational& p : primes)
        if (p <= 1) throw validation_error("explicit prime " + rational_to_string(p) + " is <= 1");
    std::sort(primes.begin(), primes.end());
    PrimeSystem sys;
    sys.primes_ = std::move(primes);
    // The list is the whole system; no query can run past unmaterialized primes.
    sys.limit_ = std::numeric_limits<double>::infinity();
    sys.spec_.type = SpecType::explicit_list;
    sys.spec_.primes = sys.primes_;
    return sys;
}

PrimeSystem modify_system(const PrimeSystem& base, const std::vector<long long>& removed,
                          const std::vector<Rational>& added) {
    if (base.spec().type != SpecType::classical)
        throw validation_error("modify_system requires a classical base system");
    std::vector<Rational> primes = base.primes();
    double density = 1.0;
    for (long long r : removed) {
        auto it = std::find(primes.begin(), primes.end(), Rational(r));
        if (it == primes.end())
            throw validation_error("removed value " + std::to_string(r) +
                                   " is not a prime of the base system");
        primes.erase(it);
        density *= 1.0 - 1.0 / static_cast<double>(r);
    }
    for (const Rational& a : added) {
        if (a <= 1) throw validation_error("added value " + rational_to_string(a) + " is <= 1");
        primes.push_back(a);
        density *= to_double(a) / to_double(a - 1);
    }
    std::sort(primes.begin(), primes.end());

    PrimeSystem sys;
    sys.primes_ = std::move(primes);
    sys.limit_ = base.limit();
    sys.spec_.type = SpecType::modified;
    sys.spec_.limit = base.limit();
    sys.spec_.removed = removed;
    sys.spec_.added = added;
    std::sort(sys.spec_.removed.begin(), sys.spec_.removed.end());
    std::sort(sys.spec_.added.begin(), sys.spec_.added.end());
    sys.known_density_ = density;
    return sys;
}

std::size_t PrimeSystem::pi_count(double x) const {
    if (x > limit_)
        throw range_error("pi_count at x = " + std::to_string(x) + " exceeds system limit " +
                          std::to_string(limit_));
    if (x < 1) return 0;
    Rational bound = rational_from_double(x);
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), bound) - primes_.begin());
}

namespace {

nlohmann::json rational_json(const Rational& r) {
    return {{"num", numerator(r).template convert_to<long long>()},
            {"den", denominator(r).template convert_to<long long>()}};
}

Rational rational_from_json(const nlohmann::json& j) {
    long long num = j.at("num").get<long long>();
    long long den = j.at("den").get<long long>();
    if (den == 0) throw validation_error("rational with zero denominator in spec file");
    return Rational(num, den);
}

}  // namespace

PrimeSystem system_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "classical") {
        return PrimeSystem::classical(j.at("limit").get<double>());
    }
    if (type == "explicit") {
        std::vector<Rational> primes;
        if (j.contains("primes"))
            for (const auto& pj : j.at("primes")) primes.push_back(rational_from_json(pj));
        return PrimeSystem::explicit_list(std::move(primes));
    }
    if (type == "modified") {
        PrimeSystem base = PrimeSystem::classical(j.at("limit").get<double>());
        std::vector<long long> removed;
        if (j.contains("removed"))
            for (const auto& rj : j.at("removed")) removed.push_back(rj.get<long long>());
        std::vector<Rational> added;
        if (j.contains("added"))
            for (const auto& aj : j.at("added")) added.push_back(rational_from_json(aj));
        return modify_system(base, removed, added);
    }
    throw validation_error("unknown system type \"" + type + "\"");
}

PrimeSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open system spec file: " + path);
    nlohmann::json j;
    in >> j;
    return system_from_json(j);
}

nlohmann::json system_to_json(const PrimeSystem& system) {
    const SystemSpec& spec = system.spec();
    nlohmann::json j;
    switch (spec.type) {
        case SpecType::classical:
            j["type"] = "classical";
            j["limit"] = spec.limit;
            break;
        case SpecType::explicit_list: {
            j["type"] = "explicit";
            auto arr = nlohmann::json::array();
            for (const Rational& p : spec.primes) arr.push_back(rational_json(p));
            j["primes"] = arr;
            break;
        }
        case SpecType::modified: {
            j["type"] = "modified";
            j["limit"] = spec.limit;
            j["removed"] = spec.removed;
            auto arr = nlohmann::json::array();
            for (const Rational& a : spec.added) arr.push_back(rational_json(a));
            j["added"] = arr;
            break;
        }
    }
    return j;
}

}  // namespace beurling
