#include "beurling/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beurling/errors.hpp"
#include "beurling/measures.hpp"

namespace beurling {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

void require_sigma_above_one(std::complex<double> s) {
    if (!(s.real() > 1.0))
        throw validation_error("sigma must exceed 1 (tail not controlled otherwise)");
}

void check_qk(int q, int K) {
    if (K < 2) throw validation_error("modulus K must be >= 2");
    if (q < 0 || q >= K) throw validation_error("q must lie in [0, K)");
}

// Reduce an angle to [-pi, pi] in extended precision before evaluating any
// trigonometric factor; t ln(p^k) grows with k and naive reduction loses the
// per-atom nonnegativity at the 1e-12 level.
double reduce_angle(long double angle) {
    long double r = std::fmod(angle, kTwoPi);
    if (r > std::numbers::pi_v<long double>) r -= kTwoPi;
    if (r < -std::numbers::pi_v<long double>) r += kTwoPi;
    return static_cast<double>(r);
}

std::complex<double> unit_root(int q, int K) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) / K);
}

std::complex<double> power_neg_s(long double lnpos, std::complex<double> s) {
    long double mag = std::exp(-static_cast<long double>(s.real()) * lnpos);
    double angle = reduce_angle(static_cast<long double>(s.imag()) * lnpos);
    return {static_cast<double>(mag) * std::cos(angle), -static_cast<double>(mag) * std::sin(angle)};
}

// distinct-variant prime-power coefficient 1 - (1-z)^k
std::complex<double> variant_coefficient(FactorMode variant, std::complex<double> z,
                                         std::complex<double> one_minus_z, unsigned k) {
    if (variant == FactorMode::total)
        return std::pow(z, static_cast<int>(k));
    return 1.0 - std::pow(one_minus_z, static_cast<int>(k));
}

}  // namespace

TransformValue zeta_truncated(const SemigroupTable& table, std::complex<double> s, double X) {
    require_sigma_above_one(s);
    std::size_t end = table.upper_index(X);
    const auto& elements = table.elements();
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < end; ++i)
        sum += power_neg_s(log_rational(elements[i].value), s);

    TransformValue out;
    out.value = sum;
    out.truncation_X = X;
    out.s = s;
    // C = max N(u)/u over sampled u >= X/2, within the table range
    double c = 0.0;
    for (int i = 0; i <= 8; ++i) {
        double u = std::min(X / 2.0 * (1.0 + i / 4.0), table.x_max());
        if (u >= 1.0)
            c = std::max(c, static_cast<double>(table.n_count(u)) / u);
    }
    double sigma = s.real();
    out.tail_bound = c * std::pow(X, 1.0 - sigma) * (1.0 + std::abs(s) / (sigma - 1.0));
    return out;
}

TransformValue log_fq_hat(const PrimeSystem& system, std::complex<double> s, int q, int K,
                          FactorMode variant, double X) {
    require_sigma_above_one(s);
    check_qk(q, K);
    if (X > system.limit()) throw range_error("log_fq_hat cutoff exceeds system limit");
    const std::complex<double> z = unit_root(q, K);
    const std::complex<double> omz = 1.0 - z;
    const Rational bound = rational_from_double(std::max(X, 0.0));
    std::complex<double> sum = 0.0;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        long double lnp = log_rational(p);
        Rational power = p;
        for (unsigned k = 1; power <= bound; ++k, power *= p)
            sum += variant_coefficient(variant, z, omz, k) * power_neg_s(k * lnp, s) /
                   static_cast<double>(k);
    }
    TransformValue out;
    out.value = sum;
    out.truncation_X = X;
    out.s = s;
    return out;
}

std::complex<double> log_fq_primes(const PrimeSystem& system, std::complex<double> s, int q,
                                   int K, FactorMode variant, double prime_cutoff) {
    require_sigma_above_one(s);
    check_qk(q, K);
    const std::complex<double> z = unit_root(q, K);
    const std::complex<double> omz = 1.0 - z;
    const Rational bound = rational_from_double(std::max(prime_cutoff, 0.0));
    const double sigma = s.real();
    // The distinct-variant coefficient grows like |1-z|^k, so the cutoff has
    // to act on the whole term, not on p^{-k sigma} alone.
    const double growth = variant == FactorMode::total ? 1.0 : std::max(1.0, std::abs(omz));
    std::complex<double> sum = 0.0;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        long double lnp = log_rational(p);
        if (growth * std::exp(-sigma * static_cast<double>(lnp)) >= 0.999)
            throw validation_error("log_fq_primes: prime-power series does not converge at "
                                   "sigma = " + std::to_string(sigma) + " for prime " +
                                   rational_to_string(p));
        for (unsigned k = 1;; ++k) {
            double mag = std::exp(-sigma * static_cast<double>(k * lnp));
            if ((1.0 + std::pow(growth, static_cast<double>(k))) * mag / k < 1e-18) break;
            sum += variant_coefficient(variant, z, omz, k) * power_neg_s(k * lnp, s) /
                   static_cast<double>(k);
        }
    }
    return sum;
}

TransformValue euler_product_fq(const PrimeSystem& system, std::complex<double> s, int q, int K,
                                FactorMode variant, double X) {
    require_sigma_above_one(s);
    check_qk(q, K);
    const std::complex<double> z = unit_root(q, K);
    const Rational bound = rational_from_double(std::max(X, 0.0));
    std::complex<double> product = 1.0;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        std::complex<double> ps = power_neg_s(log_rational(p), s);
        if (variant == FactorMode::total)
            product *= 1.0 / (1.0 - z * ps);
        else
            product *= 1.0 + z * ps / (1.0 - ps);
    }
    TransformValue out;
    out.value = product;
    out.truncation_X = X;
    out.s = s;
    return out;
}

double trig_lhs(double x, int K, double M) {
    return M - 1.0 - M * std::cos(x) + std::cos(static_cast<double>(K) * x);
}

double dini_integral(const PrimeSystem& system, int q, int K, double t, double sigma, double X) {
    check_qk(q, K);
    if (!(sigma > 1.0)) throw validation_error("dini_integral requires sigma > 1");
    if (X > system.limit()) throw range_error("dini_integral cutoff exceeds system limit");
    const long double phase = kTwoPi * q / K;
    const Rational bound = rational_from_double(std::max(X, 0.0));
    double sum = 0.0;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        long double lnp = log_rational(p);
        Rational power = p;
        for (unsigned k = 1; power <= bound; ++k, power *= p) {
            double angle = reduce_angle(static_cast<long double>(t) * k * lnp - phase);
            sum += std::exp(-sigma * static_cast<double>(k * lnp)) * (1.0 - std::cos(angle)) /
                   static_cast<double>(k);
        }
    }
    return sum;
}

double pointwise_inequality_check(const PrimeSystem& system, double sigma, double t, int q,
                                  int K, double M, double X) {
    check_qk(q, K);
    if (!(sigma > 1.0)) throw validation_error("pointwise check requires sigma > 1");
    if (M < static_cast<double>(K) * K)
        throw validation_error("pointwise check requires M >= K^2");
    if (X > system.limit()) throw range_error("pointwise check cutoff exceeds system limit");
    const long double phase = kTwoPi * q / K;
    const Rational bound = rational_from_double(std::max(X, 0.0));
    double sum = 0.0;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        long double lnp = log_rational(p);
        Rational power = p;
        for (unsigned k = 1; power <= bound; ++k, power *= p) {
            // cos(K (theta - phase)) == cos(K theta) since K*phase is a
            // multiple of 2 pi; evaluating the whole combination at the
            // reduced shifted angle keeps each term >= 0 up to rounding.
            double x = reduce_angle(static_cast<long double>(t) * k * lnp - phase);
            sum += std::exp(-sigma * static_cast<double>(k * lnp)) * trig_lhs(x, K, M) /
                   static_cast<double>(k);
        }
    }
    return sum;
}

double zeta_density_diagnostic(const SemigroupTable& table, double sigma, double X) {
    if (!(sigma > 1.0)) throw validation_error("diagnostic requires sigma > 1");
    TransformValue z = zeta_truncated(table, {sigma, 0.0}, X);
    double a_hat = static_cast<double>(table.n_count(X)) / X;
    return (sigma - 1.0) * z.value.real() + a_hat * std::pow(X, 1.0 - sigma);
}

double schedule_X(const SemigroupTable& table, double sigma, double x_cap) {
    double cap = std::min(x_cap, table.x_max());
    for (double X = 10.0; X < cap; X *= 10.0) {
        TransformValue z = zeta_truncated(table, {sigma, 0.0}, X);
        if (z.tail_bound && *z.tail_bound < 1e-3 * std::abs(z.value)) return X;
    }
    return cap;
}

std::vector<HalaszProbeRow> halasz_probe(const SemigroupTable& table, int q, int K,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& sigmas, double x_cap) {
    check_qk(q, K);
    if (q == 0)
        throw validation_error("halasz_probe targets q != 0; use zeta_density_diagnostic "
                               "for the q = 0 control");
    const std::complex<double> z = unit_root(q, K);
    std::vector<HalaszProbeRow> rows;
    rows.reserve(sigmas.size() * t_grid.size());
    for (double sigma : sigmas) {
        if (!(sigma > 1.0)) throw validation_error("halasz_probe requires sigma > 1");
        double X = schedule_X(table, sigma, x_cap);
        TransformValue tail_probe = zeta_truncated(table, {sigma, 0.0}, X);
        for (double t : t_grid) {
            TransformValue logz =
                log_fq_hat(table.system(), {sigma, t}, 0, K, FactorMode::total, X);
            HalaszProbeRow row;
            row.sigma = sigma;
            row.t = t;
            row.q = q;
            row.K = K;
            row.truncation_X = X;
            row.p_value = (sigma - 1.0) * std::exp((z * logz.value).real());
            row.dini_value = dini_integral(table.system(), q, K, t, sigma, X);
            row.tail_bound = tail_probe.tail_bound.value_or(0.0);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace beurling
