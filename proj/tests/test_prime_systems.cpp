#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "beurling/counting.hpp"
#include "beurling/errors.hpp"
#include "beurling/prime_system.hpp"

using namespace beurling;

TEST_CASE("classical primes up to small limits") {
    PrimeSystem sys = PrimeSystem::classical(10);
    REQUIRE(sys.primes().size() == 4);
    CHECK(sys.primes()[0] == 2);
    CHECK(sys.primes()[3] == 7);
    CHECK(sys.known_density() == 1.0);

    PrimeSystem two = PrimeSystem::classical(2);
    REQUIRE(two.primes().size() == 1);
    CHECK(two.primes()[0] == 2);
}

TEST_CASE("classical(100) matches the sieve oracle") {
    PrimeSystem sys = PrimeSystem::classical(100);
    CHECK(sys.primes().size() == 25);
    CHECK(sys.primes().back() == 97);
    CHECK(sieve_primes(100).size() == 25);
}

TEST_CASE("classical below 2 is rejected") {
    CHECK_THROWS_AS(PrimeSystem::classical(1.5), validation_error);
}

TEST_CASE("modify_system density bookkeeping") {
    PrimeSystem base = PrimeSystem::classical(100);

    PrimeSystem no2 = modify_system(base, {2}, {});
    CHECK(no2.primes().size() == 24);
    CHECK(no2.known_density().value() == doctest::Approx(0.5));

    PrimeSystem with32 = modify_system(base, {}, {Rational(3, 2)});
    CHECK(with32.primes().size() == 26);
    CHECK(with32.primes().front() == Rational(3, 2));
    CHECK(with32.known_density().value() == doctest::Approx(3.0));

    PrimeSystem same = modify_system(base, {}, {});
    CHECK(same.primes() == base.primes());
    CHECK(same.known_density().value() == doctest::Approx(1.0));
}

TEST_CASE("added-{3/2} density matches the folding oracle N'(x) = sum_k N(x (2/3)^k)") {
    // For the system classical + {3/2}, every element is (3/2)^k * n with n
    // classical, so N'(x) = sum_k floor(x (2/3)^k). Evaluate at x = 1e5.
    double x = 1e5;
    double n_prime = 0;
    for (double y = x; y >= 1.0; y *= 2.0 / 3.0) n_prime += std::floor(y);
    PrimeSystem with32 = modify_system(PrimeSystem::classical(100), {}, {Rational(3, 2)});
    CHECK(n_prime / x == doctest::Approx(with32.known_density().value()).epsilon(1e-3));
}

TEST_CASE("modify_system rejects bad arguments") {
    PrimeSystem base = PrimeSystem::classical(100);
    CHECK_THROWS_AS(modify_system(base, {4}, {}), validation_error);       // not a prime
    CHECK_THROWS_AS(modify_system(base, {101}, {}), validation_error);    // beyond base
    CHECK_THROWS_AS(modify_system(base, {}, {Rational(1)}), validation_error);
    CHECK_THROWS_AS(modify_system(base, {}, {Rational(1, 2)}), validation_error);
}

TEST_CASE("pi_count") {
    PrimeSystem sys = PrimeSystem::classical(100);
    CHECK(sys.pi_count(10) == 4);
    CHECK(sys.pi_count(1.5) == 0);
    CHECK(sys.pi_count(97) == 25);
    CHECK_THROWS_AS(sys.pi_count(101), range_error);

    PrimeSystem mixed = modify_system(PrimeSystem::classical(100), {2},
                                      {Rational(3, 2), Rational(3, 2)});
    CHECK(mixed.pi_count(2) == 2);  // two copies of 3/2, prime 2 removed
}

TEST_CASE("pi_count is nondecreasing in x") {
    PrimeSystem sys = PrimeSystem::classical(500);
    std::size_t prev = 0;
    for (double x = 1.0; x <= 500.0; x += 7.3) {
        std::size_t cur = sys.pi_count(x);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("Chebyshev ratio for the classical system up to 1e6") {
    PrimeSystem sys = PrimeSystem::classical(1e6);
    std::vector<double> samples;
    for (double x = 2.0; x <= 1e6; x *= 1.5) samples.push_back(x);
    samples.push_back(1e6);
    CHECK(chebyshev_ratio(sys, samples) <= 1.3);
}

TEST_CASE("duplicate primes are kept as a multiset") {
    PrimeSystem sys = PrimeSystem::explicit_list({Rational(2), Rational(2), Rational(3)});
    CHECK(sys.primes().size() == 3);
    CHECK(sys.pi_count(2) == 2);
}

TEST_CASE("explicit list rejects values <= 1") {
    CHECK_THROWS_AS(PrimeSystem::explicit_list({Rational(1)}), validation_error);
}
