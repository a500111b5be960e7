#include "beurling/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "beurling/errors.hpp"
#include "beurling/semigroup.hpp"

namespace beurling {

namespace {

std::complex<double> unit_root(int q, int K) {
    int r = q % K;
    if (r < 0) r += K;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / K);
}

void check_qk(int q, int K) {
    if (K < 2) throw validation_error("modulus K must be >= 2");
    if (q < 0 || q >= K) throw validation_error("q must lie in [0, K)");
}

DiscreteMeasure from_map(std::map<Rational, std::complex<double>>&& merged, double x_max) {
    std::vector<Atom> atoms;
    atoms.reserve(merged.size());
    for (auto& [pos, w] : merged)
        if (std::abs(w) >= kWeightPruneThreshold) atoms.push_back({pos, w});
    return DiscreteMeasure::from_atoms(std::move(atoms), x_max);
}

}  // namespace

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<Atom> atoms, double x_max) {
    if (!(x_max >= 1)) throw validation_error("measure x_max must be >= 1");
    const Rational bound = rational_from_double(x_max);
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    DiscreteMeasure mu;
    mu.x_max_ = x_max;
    for (Atom& a : atoms) {
        if (a.position < 1) throw validation_error("measure atom at position < 1");
        if (a.position > bound)
            throw validation_error("measure atom beyond x_max = " + std::to_string(x_max));
        if (!mu.atoms_.empty() && mu.atoms_.back().position == a.position)
            mu.atoms_.back().weight += a.weight;
        else
            mu.atoms_.push_back(std::move(a));
    }
    std::erase_if(mu.atoms_,
                  [](const Atom& a) { return std::abs(a.weight) < kWeightPruneThreshold; });
    return mu;
}

DiscreteMeasure DiscreteMeasure::delta_one(double x_max) {
    return from_atoms({{Rational(1), 1.0}}, x_max);
}

std::complex<double> DiscreteMeasure::weight_at(const Rational& position) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), position,
                               [](const Atom& a, const Rational& p) { return a.position < p; });
    if (it != atoms_.end() && it->position == position) return it->weight;
    return 0.0;
}

PrimePowerWeight weight_one() {
    return {[](const Rational&, unsigned) { return std::complex<double>(1.0); }, "1"};
}

PrimePowerWeight weight_hq(int q, int K) {
    check_qk(q, K);
    return {[q, K](const Rational&, unsigned k) {
                return unit_root(static_cast<int>((static_cast<long long>(q) * k) % K), K);
            },
            "h_" + std::to_string(q) + "_mod_" + std::to_string(K)};
}

PrimePowerWeight weight_distinct(int q, int K) {
    check_qk(q, K);
    const std::complex<double> w = 1.0 - unit_root(q, K);
    return {[w](const Rational&, unsigned k) { return 1.0 - std::pow(w, static_cast<int>(k)); },
            "distinct_" + std::to_string(q) + "_mod_" + std::to_string(K)};
}

PrimePowerWeight weight_g1(int q, int K) {
    check_qk(q, K);
    const std::complex<double> z = unit_root(q, K);
    return {[z](const Rational&, unsigned) { return z; },
            "g1_" + std::to_string(q) + "_mod_" + std::to_string(K)};
}

PrimePowerWeight weight_g2(int q, int K) {
    check_qk(q, K);
    const std::complex<double> z = unit_root(q, K);
    const std::complex<double> w = 1.0 - z;
    return {[z, w](const Rational& p, unsigned k) -> std::complex<double> {
                if (p > 2) return w - std::pow(w, static_cast<int>(k));
                return -z;
            },
            "g2_" + std::to_string(q) + "_mod_" + std::to_string(K)};
}

PrimePowerWeight weight_g3(int q, int K) {
    check_qk(q, K);
    const std::complex<double> w = 1.0 - unit_root(q, K);
    return {[w](const Rational& p, unsigned k) -> std::complex<double> {
                if (p > 2) return 0.0;
                return 1.0 - std::pow(w, static_cast<int>(k));
            },
            "g3_" + std::to_string(q) + "_mod_" + std::to_string(K)};
}

DiscreteMeasure dpi_measure(const PrimeSystem& system, double x_max, const PrimePowerWeight& w) {
    if (x_max > system.limit())
        throw range_error("dpi_measure cutoff exceeds system limit");
    const Rational bound = rational_from_double(std::max(x_max, 1.0));
    std::map<Rational, std::complex<double>> merged;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        Rational power = p;
        for (unsigned k = 1; power <= bound; ++k, power *= p)
            merged[power] += w.fn(p, k) / static_cast<double>(k);
    }
    return from_map(std::move(merged), std::max(x_max, 1.0));
}

DiscreteMeasure measure_sum(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double x_max) {
    std::vector<Atom> atoms = mu.atoms();
    atoms.insert(atoms.end(), nu.atoms().begin(), nu.atoms().end());
    return DiscreteMeasure::from_atoms(std::move(atoms), x_max);
}

DiscreteMeasure measure_scale(const DiscreteMeasure& mu, std::complex<double> factor) {
    std::vector<Atom> atoms = mu.atoms();
    for (Atom& a : atoms) a.weight *= factor;
    return DiscreteMeasure::from_atoms(std::move(atoms), mu.x_max());
}

DiscreteMeasure convolve(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double x_max) {
    const Rational bound = rational_from_double(x_max);
    std::map<Rational, std::complex<double>> merged;
    for (const Atom& a : mu.atoms()) {
        for (const Atom& b : nu.atoms()) {
            Rational pos = a.position * b.position;
            if (pos > bound) break;  // nu atoms increasing: later products only larger
            merged[pos] += a.weight * b.weight;
        }
    }
    return from_map(std::move(merged), x_max);
}

DiscreteMeasure exp_star(const DiscreteMeasure& mu, double x_max) {
    if (!mu.empty() && mu.atoms().front().position == 1)
        throw validation_error("exp_star requires all atoms at positions > 1");
    DiscreteMeasure result = DiscreteMeasure::delta_one(x_max);
    DiscreteMeasure power = DiscreteMeasure::delta_one(x_max);
    double factorial = 1.0;
    for (unsigned j = 1;; ++j) {
        power = convolve(power, mu, x_max);
        if (power.empty()) break;
        factorial *= static_cast<double>(j);
        result = measure_sum(result, measure_scale(power, 1.0 / factorial), x_max);
    }
    return result;
}

std::complex<double> mellin(const DiscreteMeasure& mu, std::complex<double> s) {
    std::complex<double> sum = 0.0;
    for (const Atom& a : mu.atoms()) {
        long double lnpos = log_rational(a.position);
        // pos^{-s} = e^{-sigma ln pos} (cos - i sin)(t ln pos)
        long double mag = std::exp(-static_cast<long double>(s.real()) * lnpos);
        long double angle = static_cast<long double>(s.imag()) * lnpos;
        sum += a.weight * std::complex<double>(static_cast<double>(mag * std::cos(angle)),
                                               static_cast<double>(-mag * std::sin(angle)));
    }
    return sum;
}

ReconstructionReport verify_fq_reconstruction(const PrimeSystem& system, int q, int K,
                                              FactorMode mode, double x_max) {
    check_qk(q, K);
    PrimePowerWeight w = mode == FactorMode::total ? weight_hq(q, K) : weight_distinct(q, K);
    DiscreteMeasure lhs = exp_star(dpi_measure(system, x_max, w), x_max);

    // reference: atom at each distinct value v with weight sum of f_q over
    // the semigroup elements of that value
    SemigroupTable table = enumerate_semigroup(system, x_max);
    std::map<Rational, std::complex<double>> reference;
    for (const GenInteger& n : table.elements()) reference[n.value] += f_q_value(n, q, K, mode);

    double worst = 0.0;
    std::size_t compared = 0;
    for (const auto& [pos, wref] : reference) {
        worst = std::max(worst, std::abs(lhs.weight_at(pos) - wref));
        ++compared;
    }
    for (const Atom& a : lhs.atoms()) {
        if (reference.find(a.position) == reference.end()) {
            worst = std::max(worst, std::abs(a.weight));
            ++compared;
        }
    }
    ReconstructionReport report;
    report.q = q;
    report.K = K;
    report.mode = mode;
    report.x_max = x_max;
    report.max_discrepancy = worst;
    report.positions_compared = compared;
    report.pass = worst <= report.tolerance;
    return report;
}

double g2_l1_partial(const PrimeSystem& system, int q, int K, double X) {
    check_qk(q, K);
    if (X > system.limit()) throw range_error("g2_l1_partial cutoff exceeds system limit");
    PrimePowerWeight g2 = weight_g2(q, K);
    const Rational bound = rational_from_double(std::max(X, 0.0));
    double sum = 0.0;
    for (const Rational& p : system.primes()) {
        if (p > bound) break;
        Rational power = p;
        for (unsigned k = 1; power <= bound; ++k, power *= p)
            sum += std::abs(g2.fn(p, k)) / (to_double(power) * static_cast<double>(k));
    }
    return sum;
}

void write_measure_csv(const DiscreteMeasure& mu, std::ostream& out) {
    out << "pos_num,pos_den,weight_re,weight_im\n";
    for (const Atom& a : mu.atoms())
        out << numerator(a.position) << ',' << denominator(a.position) << ',' << a.weight.real()
            << ',' << a.weight.imag() << '\n';
}

}  // namespace beurling
