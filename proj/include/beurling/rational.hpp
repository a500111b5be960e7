#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace beurling {

// Exact rational arithmetic. Positions, semigroup values and generalized
// primes are all rationals so that threshold comparisons (<= x) and atom
// merging are unambiguous.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    return Rational(x);
}

// log of a rational in extended precision, as log(num) - log(den).
inline long double log_rational(const Rational& r) {
    if (r <= 0) throw std::domain_error("log_rational: non-positive argument");
    return std::log(numerator(r).template convert_to<long double>()) -
           std::log(denominator(r).template convert_to<long double>());
}

inline Rational rational_pow(const Rational& base, unsigned k) {
    Rational out(1), b = base;
    while (k) {
        if (k & 1u) out *= b;
        b *= b;
        k >>= 1u;
    }
    return out;
}

inline std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace beurling
