#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "beurling/errors.hpp"
#include "beurling/measures.hpp"

using namespace beurling;

namespace {

double max_atom_difference(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    double worst = 0.0;
    for (const Atom& atom : a.atoms())
        worst = std::max(worst, std::abs(atom.weight - b.weight_at(atom.position)));
    for (const Atom& atom : b.atoms())
        worst = std::max(worst, std::abs(atom.weight - a.weight_at(atom.position)));
    return worst;
}

// random measures with positions drawn from a fixed rational pool > 1
DiscreteMeasure random_measure(std::mt19937_64& rng, double x_max) {
    static const Rational pool[] = {Rational(2), Rational(3), Rational(5, 2), Rational(7, 3),
                                    Rational(4), Rational(9, 2), Rational(5), Rational(11, 4)};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    std::uniform_int_distribution<int> n_atoms(1, 5);
    std::vector<Atom> atoms;
    for (int i = 0, n = n_atoms(rng); i < n; ++i)
        atoms.push_back({pool[pick(rng)], {w(rng), w(rng)}});
    return DiscreteMeasure::from_atoms(std::move(atoms), x_max);
}

}  // namespace

TEST_CASE("dPi atoms for small systems") {
    PrimeSystem classical = PrimeSystem::classical(10);
    DiscreteMeasure dpi = dpi_measure(classical, 10, weight_one());
    REQUIRE(dpi.size() == 7);  // {2,3,4,5,7,8,9}
    CHECK(dpi.weight_at(Rational(2)).real() == doctest::Approx(1.0));
    CHECK(dpi.weight_at(Rational(4)).real() == doctest::Approx(0.5));
    CHECK(dpi.weight_at(Rational(8)).real() == doctest::Approx(1.0 / 3.0));
    CHECK(dpi.weight_at(Rational(9)).real() == doctest::Approx(0.5));

    PrimeSystem two = PrimeSystem::explicit_list({Rational(2)});
    DiscreteMeasure h1 = dpi_measure(two, 10, weight_hq(1, 2));
    REQUIRE(h1.size() == 3);  // (-1)^k / k at 2, 4, 8
    CHECK(h1.weight_at(Rational(2)).real() == doctest::Approx(-1.0));
    CHECK(h1.weight_at(Rational(4)).real() == doctest::Approx(0.5));
    CHECK(h1.weight_at(Rational(8)).real() == doctest::Approx(-1.0 / 3.0));

    CHECK(dpi_measure(classical, 1, weight_one()).empty());
}

TEST_CASE("weight families") {
    // h_q
    CHECK(weight_hq(1, 2).fn(Rational(3), 3).real() == doctest::Approx(-1.0));
    CHECK(std::abs(weight_hq(0, 7).fn(Rational(2), 5) - 1.0) < 1e-15);
    CHECK(weight_hq(1, 4).fn(Rational(5), 2).real() == doctest::Approx(-1.0));  // i^2

    // distinct variant
    auto z = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
    CHECK(std::abs(weight_distinct(1, 5).fn(Rational(2), 1) - z) < 1e-14);
    CHECK(std::abs(weight_distinct(0, 3).fn(Rational(2), 9) - 1.0) < 1e-14);
    CHECK(weight_distinct(1, 2).fn(Rational(7), 2).real() == doctest::Approx(-3.0));

    // g2 branches
    CHECK(std::abs(weight_g2(2, 7).fn(Rational(3), 1)) < 1e-14);
    CHECK(weight_g2(1, 2).fn(Rational(2), 5).real() == doctest::Approx(1.0));
}

TEST_CASE("g1 + g2 + g3 equals the distinct weight") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick_k(2, 12);
    std::uniform_int_distribution<unsigned> pick_pow(1, 40);
    for (int i = 0; i < 500; ++i) {
        int K = pick_k(rng);
        int q = std::uniform_int_distribution<int>(0, K - 1)(rng);
        unsigned k = pick_pow(rng);
        for (const Rational& p : {Rational(2), Rational(3, 2), Rational(97), Rational(5, 2)}) {
            auto sum = weight_g1(q, K).fn(p, k) + weight_g2(q, K).fn(p, k) +
                       weight_g3(q, K).fn(p, k);
            CHECK(std::abs(sum - weight_distinct(q, K).fn(p, k)) <= 1e-12 * std::pow(2.0, k));
        }
    }
}

TEST_CASE("g2 envelope |g2(p^k)| <= 2^k for p > 2, <= 1 for p <= 2") {
    for (int K = 2; K <= 12; ++K) {
        for (int q = 0; q < K; ++q) {
            for (unsigned k = 1; k <= 40; ++k) {
                CHECK(std::abs(weight_g2(q, K).fn(Rational(3), k)) <=
                      std::pow(2.0, k) * (1.0 + 1e-12));
                CHECK(std::abs(weight_g2(q, K).fn(Rational(2), k)) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("convolution basics") {
    double x_max = 100;
    DiscreteMeasure da = DiscreteMeasure::from_atoms({{Rational(3), 2.0}}, x_max);
    DiscreteMeasure db = DiscreteMeasure::from_atoms({{Rational(5), {0.0, 1.0}}}, x_max);
    DiscreteMeasure dab = convolve(da, db, x_max);
    REQUIRE(dab.size() == 1);
    CHECK(dab.atoms()[0].position == Rational(15));
    CHECK(std::abs(dab.atoms()[0].weight - std::complex<double>(0.0, 2.0)) < 1e-15);

    DiscreteMeasure mu = DiscreteMeasure::from_atoms(
        {{Rational(2), 1.0}, {Rational(4), 0.5}}, x_max);
    DiscreteMeasure idconv = convolve(DiscreteMeasure::delta_one(x_max), mu, x_max);
    CHECK(max_atom_difference(idconv, mu) < 1e-15);

    DiscreteMeasure sq = convolve(mu, mu, 8);
    REQUIRE(sq.size() == 2);
    CHECK(sq.weight_at(Rational(4)).real() == doctest::Approx(1.0));
    CHECK(sq.weight_at(Rational(8)).real() == doctest::Approx(1.0));
}

TEST_CASE("convolution is commutative and associative") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 60; ++i) {
        double x_max = 200;
        DiscreteMeasure a = random_measure(rng, x_max);
        DiscreteMeasure b = random_measure(rng, x_max);
        DiscreteMeasure c = random_measure(rng, x_max);
        CHECK(max_atom_difference(convolve(a, b, x_max), convolve(b, a, x_max)) < 1e-12);
        CHECK(max_atom_difference(convolve(convolve(a, b, x_max), c, x_max),
                                  convolve(a, convolve(b, c, x_max), x_max)) < 1e-12);
    }
}

TEST_CASE("exp_star basics") {
    DiscreteMeasure e0 = exp_star(DiscreteMeasure(), 10);
    REQUIRE(e0.size() == 1);
    CHECK(e0.atoms()[0].position == 1);
    CHECK(e0.atoms()[0].weight.real() == doctest::Approx(1.0));

    DiscreteMeasure single = DiscreteMeasure::from_atoms({{Rational(2), 1.0}}, 10);
    DiscreteMeasure e = exp_star(single, 10);
    REQUIRE(e.size() == 4);
    CHECK(e.weight_at(Rational(1)).real() == doctest::Approx(1.0));
    CHECK(e.weight_at(Rational(2)).real() == doctest::Approx(1.0));
    CHECK(e.weight_at(Rational(4)).real() == doctest::Approx(0.5));
    CHECK(e.weight_at(Rational(8)).real() == doctest::Approx(1.0 / 6.0));

    // exp*(dPi) of the {2} system gives dN = atoms of weight 1 at 1,2,4,8
    PrimeSystem two = PrimeSystem::explicit_list({Rational(2)});
    DiscreteMeasure dn = exp_star(dpi_measure(two, 10, weight_one()), 10);
    REQUIRE(dn.size() == 4);
    for (const Atom& atom : dn.atoms()) CHECK(std::abs(atom.weight - 1.0) < 1e-12);

    CHECK_THROWS_AS(exp_star(DiscreteMeasure::delta_one(10), 10), validation_error);
}

TEST_CASE("exp_star functional equation on disjoint supports") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        double x_max = 64;
        DiscreteMeasure mu = DiscreteMeasure::from_atoms(
            {{Rational(2), {w(rng), w(rng)}}, {Rational(9, 2), {w(rng), w(rng)}}}, x_max);
        DiscreteMeasure nu = DiscreteMeasure::from_atoms(
            {{Rational(3), {w(rng), w(rng)}}, {Rational(7), {w(rng), w(rng)}}}, x_max);
        DiscreteMeasure lhs = exp_star(measure_sum(mu, nu, x_max), x_max);
        DiscreteMeasure rhs = convolve(exp_star(mu, x_max), exp_star(nu, x_max), x_max);
        CHECK(max_atom_difference(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("mellin evaluation") {
    CHECK(std::abs(mellin(DiscreteMeasure::delta_one(10), {2.5, 3.0}) - 1.0) < 1e-15);
    DiscreteMeasure single = DiscreteMeasure::from_atoms({{Rational(2), 1.0}}, 10);
    CHECK(mellin(single, {1.0, 0.0}).real() == doctest::Approx(0.5));
}

TEST_CASE("mellin is a morphism for convolution") {
    std::mt19937_64 rng(5);
    std::complex<double> s{1.7, 0.9};
    for (int i = 0; i < 40; ++i) {
        // x_max large enough that no product atom is truncated
        double x_max = 4000;
        DiscreteMeasure a = random_measure(rng, x_max);
        DiscreteMeasure b = random_measure(rng, x_max);
        std::complex<double> lhs = mellin(convolve(a, b, x_max), s);
        std::complex<double> rhs = mellin(a, s) * mellin(b, s);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("mellin of truncated classical dN near zeta(2)") {
    PrimeSystem sys = PrimeSystem::classical(1e5);
    DiscreteMeasure dn = exp_star(dpi_measure(sys, 300, weight_one()), 300);
    // dN for classical integers: weight 1 at each n <= 300
    double tail = 1.0 / 300.0;  // integral tail estimate for sum n^{-2}
    double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(std::abs(mellin(dn, {2.0, 0.0}).real() - zeta2) <= tail + 2e-6);
}

TEST_CASE("f_q reconstruction: dF_q = exp*(h_q dPi)") {
    PrimeSystem sys = PrimeSystem::classical(1000);
    auto r0 = verify_fq_reconstruction(sys, 0, 2, FactorMode::total, 100);
    CHECK(r0.pass);
    auto r1 = verify_fq_reconstruction(sys, 1, 2, FactorMode::total, 1000);
    CHECK(r1.pass);
    CHECK(r1.max_discrepancy <= 1e-9);
    auto r2 = verify_fq_reconstruction(sys, 1, 3, FactorMode::distinct, 1000);
    CHECK(r2.pass);
    // a collision-heavy system exercises exact-position merging
    PrimeSystem mixed = PrimeSystem::explicit_list({Rational(2), Rational(4), Rational(3)});
    CHECK(verify_fq_reconstruction(mixed, 1, 3, FactorMode::total, 256).pass);
}

TEST_CASE("g2 L1 partial sums") {
    PrimeSystem classical = PrimeSystem::classical(1e4);
    // majorant ln 2 + sum_{p>=3} sum_{k>=2} 2^k/(k p^k) stays below 1.6
    CHECK(g2_l1_partial(classical, 1, 2, 1e4) <= 1.6);
    PrimeSystem two = PrimeSystem::explicit_list({Rational(2)});
    CHECK(g2_l1_partial(two, 0, 2, 1e6) <= std::log(2.0) + 1e-9);
    CHECK(g2_l1_partial(classical, 1, 2, 1.5) == 0.0);
}

TEST_CASE("measure CSV dump") {
    DiscreteMeasure mu = DiscreteMeasure::from_atoms({{Rational(3, 2), {1.0, -2.0}}}, 10);
    std::ostringstream out;
    write_measure_csv(mu, out);
    CHECK(out.str() == "pos_num,pos_den,weight_re,weight_im\n3,2,1,-2\n");
}
