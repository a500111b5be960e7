#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "beurling/analytic.hpp"
#include "beurling/counting.hpp"
#include "beurling/errors.hpp"
#include "beurling/measures.hpp"
#include "beurling/prime_system.hpp"
#include "beurling/semigroup.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace beurling;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

// FNV-1a over the canonical config dump; embedded in every JSON sidecar so
// outputs are traceable to the exact run configuration.
std::string config_digest(const json& config) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_sidecar(const fs::path& path, const json& config, json payload) {
    payload["config"] = config;
    payload["config_digest"] = config_digest(config);
    std::ofstream out(path);
    out << payload.dump(2) << '\n';
}

struct CheckRow {
    std::string name;
    double tolerance;
    double observed;
    bool pass;
};

json check_json(const std::vector<CheckRow>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"check", c.name},
                       {"tolerance", c.tolerance},
                       {"observed_max", c.observed},
                       {"pass", c.pass}});
    return arr;
}

int run_enumerate(const std::string& system_path, double x_max, std::uint64_t mem_cap,
                  const fs::path& out_dir) {
    PrimeSystem system = load_system(system_path);
    SemigroupTable table = enumerate_semigroup(system, x_max, mem_cap);

    std::ofstream csv(out_dir / "table.csv");
    write_table_csv(table, csv);

    std::vector<double> samples;
    for (double x = 2.0; x <= x_max; x *= 2.0) samples.push_back(x);
    samples.push_back(x_max);

    json config = {{"command", "enumerate"}, {"system", system_to_json(system)},
                   {"x_max", x_max},         {"mem_cap", mem_cap}};
    json summary = {{"N", table.size()},
                    {"density_estimate", density_estimate(table)},
                    {"chebyshev_ratio", x_max >= 2 ? chebyshev_ratio(system, samples) : 0.0},
                    {"log_density", log_density(table, x_max)},
                    {"outputs", {"table.csv"}}};
    write_sidecar(out_dir / "summary.json", config, summary);
    std::cout << "enumerated " << table.size() << " elements up to " << x_max << '\n';
    return kExitOk;
}

int run_scan(const std::string& system_path, int K, const std::string& mode_arg,
             std::vector<double> grid, std::uint64_t mem_cap, const fs::path& out_dir) {
    if (grid.empty()) throw validation_error("scan requires a nonempty --grid");
    std::sort(grid.begin(), grid.end());
    PrimeSystem system = load_system(system_path);
    SemigroupTable table = enumerate_semigroup(system, grid.back(), mem_cap);

    std::vector<FactorMode> modes;
    if (mode_arg == "both")
        modes = {FactorMode::total, FactorMode::distinct};
    else
        modes = {factor_mode_from_string(mode_arg)};

    json config = {{"command", "scan"}, {"system", system_to_json(system)},
                   {"K", K},            {"mode", mode_arg},
                   {"grid", grid}};
    for (FactorMode mode : modes) {
        for (int c = 0; c < K; ++c) {
            ScanResult scan = convergence_scan(table, {K, c, mode}, grid);
            std::string stem = "scan_K" + std::to_string(K) + "_c" + std::to_string(c) + "_" +
                               to_string(mode);
            std::ofstream csv(out_dir / (stem + ".csv"));
            write_scan_csv(scan, csv);
            json meta = {{"quantity", scan.quantity}, {"outputs", {stem + ".csv"}}};
            for (const auto& [k, v] : scan.metadata) meta[k] = v;
            write_sidecar(out_dir / (stem + ".json"), config, meta);
        }
    }
    std::cout << "scan complete: K=" << K << ", " << grid.size() << " grid points\n";
    return kExitOk;
}

int run_verify(const std::string& system_path, double x_max, std::uint64_t seed,
               std::uint64_t mem_cap, const fs::path& out_dir) {
    PrimeSystem system = load_system(system_path);
    double table_x = std::min(x_max, system.limit());
    SemigroupTable table = enumerate_semigroup(system, table_x, mem_cap);
    std::mt19937_64 rng(seed);
    std::vector<CheckRow> checks;

    {  // partition + orthogonality over random (K, x)
        std::uniform_int_distribution<int> pick_k(2, 12);
        std::uniform_real_distribution<double> pick_x(1.0, table_x);
        double worst = 0.0;
        bool partition_ok = true;
        for (FactorMode mode : {FactorMode::total, FactorMode::distinct}) {
            for (int i = 0; i < 50; ++i) {
                int K = pick_k(rng);
                double x = pick_x(rng);
                std::size_t n = table.n_count(x);
                std::size_t total = 0;
                for (int c = 0; c < K; ++c) {
                    std::size_t s = S_count(table, {K, c, mode}, x);
                    total += s;
                    double diff = std::abs(orthogonality_reconstruct(table, {K, c, mode}, x) -
                                           std::complex<double>(static_cast<double>(s)));
                    worst = std::max(worst, n > 0 ? diff / static_cast<double>(n) : diff);
                }
                partition_ok = partition_ok && total == n;
            }
        }
        checks.push_back({"partition_identity", 0.0, partition_ok ? 0.0 : 1.0, partition_ok});
        checks.push_back({"orthogonality", 1e-9, worst, worst <= 1e-9});
    }

    {  // exp* reconstruction, both weight families
        double recon_x = std::min(table_x, 1000.0);
        double worst = 0.0;
        for (int K = 2; K <= 4; ++K)
            for (int q = 0; q < K; ++q)
                for (FactorMode mode : {FactorMode::total, FactorMode::distinct})
                    worst = std::max(
                        worst,
                        verify_fq_reconstruction(system, q, K, mode, recon_x).max_discrepancy);
        checks.push_back({"exp_star_reconstruction", 1e-9, worst, worst <= 1e-9});
    }

    {  // g1 + g2 + g3 == distinct weight
        std::uniform_int_distribution<int> pick_k(2, 12);
        std::uniform_int_distribution<unsigned> pick_pow(1, 20);
        std::uniform_int_distribution<int> pick_prime(0, 200);
        double worst = 0.0;
        for (int i = 0; i < 2000; ++i) {
            int K = pick_k(rng);
            std::uniform_int_distribution<int> pick_q(0, K - 1);
            int q = pick_q(rng);
            Rational p(3 + 2 * pick_prime(rng), 1 + (i % 2));  // mixed integer/rational "primes"
            unsigned k = pick_pow(rng);
            auto sum = weight_g1(q, K).fn(p, k) + weight_g2(q, K).fn(p, k) +
                       weight_g3(q, K).fn(p, k);
            worst = std::max(worst, std::abs(sum - weight_distinct(q, K).fn(p, k)));
        }
        checks.push_back({"g_decomposition", 1e-12, worst, worst <= 1e-12});
    }

    {  // trigonometric inequality fuzz
        std::uniform_real_distribution<double> pick_x(-std::numbers::pi, std::numbers::pi);
        std::uniform_int_distribution<int> pick_k(2, 10);
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            int K = pick_k(rng);
            worst = std::min(worst, trig_lhs(pick_x(rng), K, static_cast<double>(K) * K));
        }
        checks.push_back({"trig_inequality_min", 1e-12, -worst, worst >= -1e-12});
    }

    {  // per-atom Halasz integrand fuzz over random atoms and parameters
        std::uniform_real_distribution<double> pick_t(-10.0, 10.0);
        std::uniform_int_distribution<int> pick_k(2, 10);
        std::uniform_int_distribution<unsigned> pick_pow(1, 30);
        const auto& primes = system.primes();
        std::uniform_int_distribution<std::size_t> pick_p(0, primes.empty() ? 0 : primes.size() - 1);
        double worst = 0.0;
        for (int i = 0; i < 100000 && !primes.empty(); ++i) {
            int K = pick_k(rng);
            std::uniform_int_distribution<int> pick_q(0, K - 1);
            double M = static_cast<double>(K) * K;
            long double lnu = pick_pow(rng) * log_rational(primes[pick_p(rng)]);
            long double angle = static_cast<long double>(pick_t(rng)) * lnu -
                                2.0L * std::numbers::pi_v<long double> * pick_q(rng) / K;
            long double r = std::fmod(angle, 2.0L * std::numbers::pi_v<long double>);
            worst = std::min(worst, trig_lhs(static_cast<double>(r), K, M));
        }
        checks.push_back({"per_atom_inequality_min", 1e-12, -worst, worst >= -1e-12});
    }

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.pass;
    json config = {{"command", "verify"}, {"system", system_to_json(system)},
                   {"x_max", x_max},      {"seed", seed}};
    write_sidecar(out_dir / "verify.json", config,
                  {{"checks", check_json(checks)}, {"all_pass", all_pass}});
    for (const auto& c : checks)
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  observed=" << c.observed
                  << " tolerance=" << c.tolerance << '\n';
    return all_pass ? kExitOk : kExitCheckFailure;
}

int run_probe(const std::string& system_path, int q, int K, std::vector<double> sigmas,
              std::vector<double> t_grid, double x_cap, std::uint64_t mem_cap,
              const fs::path& out_dir) {
    PrimeSystem system = load_system(system_path);
    SemigroupTable table = enumerate_semigroup(system, std::min(x_cap, system.limit()), mem_cap);
    auto rows = halasz_probe(table, q, K, t_grid, sigmas, x_cap);

    std::ofstream csv(out_dir / "probe.csv");
    csv << "sigma,t,q,K,X,P_value,dini_I,tail_bound\n";
    for (const auto& r : rows)
        csv << r.sigma << ',' << r.t << ',' << r.q << ',' << r.K << ',' << r.truncation_X << ','
            << r.p_value << ',' << r.dini_value << ',' << r.tail_bound << '\n';
    json config = {{"command", "probe"}, {"system", system_to_json(system)}, {"q", q},
                   {"K", K},             {"sigmas", sigmas},                 {"t_grid", t_grid},
                   {"x_cap", x_cap}};
    write_sidecar(out_dir / "probe.json", config,
                  {{"rows", rows.size()}, {"outputs", {"probe.csv"}}});
    std::cout << "probe complete: " << rows.size() << " rows\n";
    return kExitOk;
}

int run_zeta(const std::string& system_path, std::vector<double> sigmas,
             std::vector<double> t_grid, double x_max, std::uint64_t mem_cap,
             const fs::path& out_dir) {
    PrimeSystem system = load_system(system_path);
    SemigroupTable table = enumerate_semigroup(system, std::min(x_max, system.limit()), mem_cap);
    if (t_grid.empty()) t_grid.push_back(0.0);

    std::ofstream csv(out_dir / "zeta.csv");
    csv << "sigma,t,X,value_re,value_im,tail_bound\n";
    for (double sigma : sigmas)
        for (double t : t_grid) {
            TransformValue z = zeta_truncated(table, {sigma, t}, table.x_max());
            csv << sigma << ',' << t << ',' << z.truncation_X << ',' << z.value.real() << ','
                << z.value.imag() << ',' << z.tail_bound.value_or(0.0) << '\n';
        }
    json config = {{"command", "zeta"}, {"system", system_to_json(system)},
                   {"sigmas", sigmas},  {"t_grid", t_grid},
                   {"x_max", x_max}};
    write_sidecar(out_dir / "zeta.json", config, {{"outputs", {"zeta.csv"}}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Beurling generalized number system laboratory"};
    app.require_subcommand(1);

    std::string system_path, out_dir = ".", mode = "total";
    double x_max = 1000.0, x_cap = 1e6;
    int K = 2, c = 0, q = 1;
    std::uint64_t seed = 0, mem_cap = kDefaultMemCap;
    std::vector<double> grid, sigmas, t_grid;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--system", system_path, "system spec JSON file")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--mem-cap", mem_cap, "enumeration element cap");
    };

    auto* cmd_enumerate = app.add_subcommand("enumerate", "enumerate the semigroup");
    add_common(cmd_enumerate);
    cmd_enumerate->add_option("--x-max", x_max, "enumeration bound")->required();

    auto* cmd_scan = app.add_subcommand("scan", "convergence scan of K*S/(a*x)");
    add_common(cmd_scan);
    cmd_scan->add_option("--K", K, "modulus")->required();
    cmd_scan->add_option("--c", c, "residue (unused; all classes are scanned)");
    cmd_scan->add_option("--mode", mode, "total|distinct|both");
    cmd_scan->add_option("--grid", grid, "x grid")->delimiter(',')->required();

    auto* cmd_verify = app.add_subcommand("verify", "run the identity/inequality battery");
    add_common(cmd_verify);
    cmd_verify->add_option("--x-max", x_max, "table bound for identity checks");
    cmd_verify->add_option("--seed", seed, "fuzz seed (mandatory for reproducibility)")
        ->required();

    auto* cmd_probe = app.add_subcommand("probe", "Halasz-condition probe grid");
    add_common(cmd_probe);
    cmd_probe->add_option("--q", q, "twist index (nonzero)")->required();
    cmd_probe->add_option("--K", K, "modulus")->required();
    cmd_probe->add_option("--sigmas", sigmas, "sigma sequence")->delimiter(',')->required();
    cmd_probe->add_option("--t-grid", t_grid, "t grid")->delimiter(',')->required();
    cmd_probe->add_option("--x-cap", x_cap, "cutoff cap");

    auto* cmd_zeta = app.add_subcommand("zeta", "truncated zeta values");
    add_common(cmd_zeta);
    cmd_zeta->add_option("--sigmas", sigmas, "sigma values")->delimiter(',')->required();
    cmd_zeta->add_option("--t-grid", t_grid, "t values")->delimiter(',');
    cmd_zeta->add_option("--x-max", x_max, "truncation bound")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        fs::path out(out_dir);
        fs::create_directories(out);
        if (cmd_enumerate->parsed()) return run_enumerate(system_path, x_max, mem_cap, out);
        if (cmd_scan->parsed()) {
            if (c < 0 || c >= K) throw validation_error("residue c must lie in [0, K)");
            return run_scan(system_path, K, mode, grid, mem_cap, out);
        }
        if (cmd_verify->parsed()) return run_verify(system_path, x_max, seed, mem_cap, out);
        if (cmd_probe->parsed())
            return run_probe(system_path, q, K, sigmas, t_grid, x_cap, mem_cap, out);
        if (cmd_zeta->parsed()) return run_zeta(system_path, sigmas, t_grid, x_max, mem_cap, out);
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const range_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
    return kExitOk;
}
