// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any fail. Thresholds are fixed here, not tuned at runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "bootstrap.hpp"
#include "circuit.hpp"
#include "costs.hpp"
#include "datasets.hpp"
#include "entropy.hpp"
#include "io.hpp"
#include "oracles.hpp"
#include "qbas.hpp"
#include "rng.hpp"
#include "runner.hpp"
#include "statevector.hpp"

using namespace qcbm;
using std::numbers::pi;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double median(std::vector<double> values) {
    const std::size_t n = values.size();
    auto mid = values.begin() + n / 2;
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(values.begin(), mid);
    return 0.5 * (lo + hi);
}

StateVector random_state(int num_qubits, std::uint64_t seed) {
    auto eng = rng::make_engine(seed);
    std::vector<std::complex<double>> amps(std::uint64_t{1} << num_qubits);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = {rng::uniform(eng, -1.0, 1.0), rng::uniform(eng, -1.0, 1.0)};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return StateVector::from_amplitudes(num_qubits, std::move(amps));
}

EmpiricalDistribution random_distribution(int num_qubits, std::uint64_t seed,
                                          int support) {
    auto eng = rng::make_engine(seed);
    const auto dim = std::uint64_t{1} << num_qubits;
    std::vector<double> probs(dim, 0.0);
    double total = 0.0;
    for (int k = 0; k < support; ++k) {
        const auto index = rng::uniform_index(eng, dim);
        const double w = rng::uniform(eng, 0.05, 1.0);
        probs[index] += w;
        total += w;
    }
    for (auto& p : probs) p /= total;
    return EmpiricalDistribution::from_dense(num_qubits, probs);
}

void criterion_1_table() {
    const std::vector<std::pair<std::int64_t, std::int64_t>> table{
        {6, 15}, {10, 30}, {14, 46}, {30, 120}, {254, 1554}, {510, 3475}, {2046, 16780}};
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (const auto& [k, expected] : table) {
        const auto actual = coupon_collector_reads(k);
        if (actual != expected) {
            pass = false;
            detail = "N_reads(" + std::to_string(k) + ") = " + std::to_string(actual) +
                     ", expected " + std::to_string(expected);
        }
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (pass) detail = "all 7 rows exact in " + std::to_string(ms) + " ms";
    report(1, "coupon-collector readout table", pass && ms < 1.0, detail);
}

void criterion_2_bas_counts() {
    bool pass = true;
    std::string detail = "counts match brute force for n,m <= 4";
    for (int n = 1; n <= 4 && pass; ++n)
        for (int m = 1; m <= 4 && pass; ++m) {
            const auto expected =
                (std::uint64_t{1} << n) + (std::uint64_t{1} << m) - 2;
            std::set<std::uint64_t> generated;
            for (const auto& p : bas_patterns(n, m)) generated.insert(spin_to_index(p));
            std::uint64_t brute = 0;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << (n * m)); ++x) {
                const bool member = is_bas_index(x, n, m);
                brute += member;
                if (member != generated.contains(x)) pass = false;
            }
            if (generated.size() != expected || brute != expected) {
                pass = false;
                detail = "mismatch at (" + std::to_string(n) + "," + std::to_string(m) + ")";
            }
        }
    report(2, "BAS pattern counting", pass, detail);
}

void criterion_3_ghz() {
    const auto verify = verify_ghz_recipes(12);
    double worst = 0.0;
    for (const auto& entry : verify.entries) worst = std::max(worst, entry.max_deviation);
    report(3, "GHZ recipes N=2..12", verify.all_pass,
           "max deviation " + format_double(worst));
}

void criterion_4_entropy() {
    bool pass = true;
    std::string detail;

    std::vector<std::complex<double>> cat(16, std::complex<double>{});
    cat[0] = cat[15] = {1.0 / std::sqrt(2.0), 0.0};
    const double s_cat = avg_two_qubit_entropy(StateVector::from_amplitudes(4, std::move(cat)));
    const double s_min = avg_two_qubit_entropy(phased_bas22_state(0, 0, 0, 0, 0));
    const double u = 2.0 * pi / 3.0;
    const double s_max = avg_two_qubit_entropy(phased_bas22_state(0, 0, 0, u, -u));
    if (std::abs(s_cat - 1.0) > 1e-4 || std::abs(s_min - 1.25163) > 1e-4 ||
        std::abs(s_max - 1.79248) > 1e-4) {
        pass = false;
        detail = "extrema off: " + format_double(s_cat) + ", " + format_double(s_min) +
                 ", " + format_double(s_max);
    }

    double worst = 0.0;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const double v1 = i * 2.0 * pi / 32.0;
            const double v2 = j * 2.0 * pi / 32.0;
            const double closed = s_bas22_closed_form(v1, v2);
            const double numeric =
                avg_two_qubit_entropy(phased_bas22_state(v2, v1, 0, 0, 0));
            worst = std::max(worst, std::abs(closed - numeric));
        }
    if (worst > 1e-8) {
        pass = false;
        detail += " grid disagreement " + format_double(worst);
    }
    if (pass)
        detail = "extrema within 1e-4, 32x32 grid max |closed - oracle| = " +
                 format_double(worst);
    report(4, "entanglement-entropy extrema and surface", pass, detail);
}

ExperimentConfig bas_config(TopologyKind topology, int layers) {
    ExperimentConfig config;
    config.dataset.kind = "bas";
    config.dataset.n = 2;
    config.dataset.m = 2;
    config.dataset.seed = 11;
    config.dataset.size = 1000;
    config.num_qubits = 4;
    config.layers = layers;
    config.topology = topology;
    config.shots = 1000;
    config.iterations = 100;
    config.restarts = 25;
    config.seed = 7;
    return config;
}

void criterion_5_trainability() {
    const auto run_medians = [](TopologyKind topology) {
        const auto result = run_ddqcl(bas_config(topology, 2));
        std::vector<double> kls;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& record : result.records) {
            kls.push_back(record.final_kl);
            best = std::min(best, record.final_kl);
        }
        return std::make_pair(median(kls), best);
    };
    const auto [median_all, best_all] = run_medians(TopologyKind::All);
    const auto [median_chain, best_chain] = run_medians(TopologyKind::Chain);
    const auto [median_star, best_star] = run_medians(TopologyKind::Star);

    const bool threshold = best_all < 0.05;
    const bool ordering = median_all < median_chain && median_all < median_star;
    report(5, "BAS(2,2) trainability and topology ordering", threshold && ordering,
           "best KL(all,L2) = " + format_double(best_all) +
               ", medians all/chain/star = " + format_double(median_all) + "/" +
               format_double(median_chain) + "/" + format_double(median_star));
}

void criterion_6_thermal() {
    // Scaled-down run per the acceptance spec: 10 instances instead of 25.
    ThermalSuiteOptions options;
    options.sizes = {5};
    options.instances = 10;
    options.iterations = 50;
    options.seed = 3;
    const auto result = run_thermal_suite(options);

    const double t_hard = kCriticalTemperature / 1.5;
    const double t_easy = 2.0 * kCriticalTemperature;
    const auto med = [&](double T, int depth) {
        return median(result.cell(5, T, depth).final_kls);
    };
    const double hard1 = med(t_hard, 1), hard2 = med(t_hard, 2), hard3 = med(t_hard, 3);
    const double easy1 = med(t_easy, 1), easy3 = med(t_easy, 3);
    const bool ordering = hard3 <= hard2 && hard2 <= hard1;
    const bool gap = (easy1 - easy3) < (hard1 - hard3);
    report(6, "thermal depth/temperature ordering", ordering && gap,
           "hard-T medians L1/L2/L3 = " + format_double(hard1) + "/" +
               format_double(hard2) + "/" + format_double(hard3) +
               ", easy gap = " + format_double(easy1 - easy3) +
               ", hard gap = " + format_double(hard1 - hard3));
}

void criterion_7_qbas() {
    std::vector<std::complex<double>> amps(16, std::complex<double>{});
    const double a = 1.0 / std::sqrt(6.0);
    for (std::uint64_t index : {0b0000, 0b0011, 0b0101, 0b1010, 0b1100, 0b1111})
        amps[index] = {a, 0.0};
    const auto ideal = StateVector::from_amplitudes(4, std::move(amps));
    const auto ideal_report = qbas_score(ideal, 2, 2, 25, 19);
    const auto boot = bootstrap_mean_ci(ideal_report.scores, kDefaultResamples, 19);
    const bool ideal_ok = ideal_report.precision == 1.0 && boot.center >= 0.95;

    const auto zero_report = qbas_score(StateVector(4), 2, 2, 25, 19);
    bool zero_ok = true;
    for (double s : zero_report.scores)
        if (std::abs(s - 2.0 / 7.0) > 0.02) zero_ok = false;

    report(7, "qBAS closed forms", ideal_ok && zero_ok,
           "ideal bootstrapped mean = " + format_double(boot.center) +
               ", |0000> mean = " + format_double(zero_report.mean_score()));
}

void criterion_8_oracles() {
    bool gates_ok = true;
    double worst_gate = 0.0;
    auto eng = rng::make_engine(88);
    for (int n = 1; n <= 4; ++n) {
        const auto base = random_state(n, rng::derive(21, n));
        const oracle::Vector vec(base.amplitudes().begin(), base.amplitudes().end());
        const auto compare = [&](const StateVector& actual, const oracle::Vector& expected) {
            for (std::size_t i = 0; i < expected.size(); ++i)
                worst_gate = std::max(worst_gate,
                                      std::abs(actual.amplitudes()[i] - expected[i]));
        };
        for (int q = 0; q < n; ++q) {
            const double theta = rng::uniform(eng, -3.0, 3.0);
            auto rz = base;
            rz.apply_rz(q, theta);
            compare(rz, oracle::matvec(oracle::rz_matrix(n, q, theta), vec));
            auto rx = base;
            rx.apply_rx(q, theta);
            compare(rx, oracle::matvec(oracle::rx_matrix(n, q, theta), vec));
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double theta = rng::uniform(eng, -3.0, 3.0);
                auto xx = base;
                xx.apply_xx(i, j, theta);
                compare(xx, oracle::matvec(oracle::xx_matrix(n, i, j, theta), vec));
            }
        if (n >= 2) {
            const double theta = rng::uniform(eng, -3.0, 3.0);
            auto gms = base;
            gms.apply_gms(theta);
            compare(gms, oracle::matvec(oracle::gms_matrix(n, theta), vec));
        }
    }
    gates_ok = worst_gate < 1e-10;

    double worst_emd = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3;
        const auto p = random_distribution(n, rng::derive(60, trial), 6);
        const auto q = random_distribution(n, rng::derive(61, trial), 6);
        const auto& src = p.support();
        const auto& dst = q.support();
        std::vector<double> supply, demand;
        std::vector<std::vector<double>> cost;
        for (const auto& [x, w] : src) {
            supply.push_back(w);
            std::vector<double> row;
            for (const auto& [y, wq] : dst)
                row.push_back(static_cast<double>(std::popcount(x ^ y)));
            cost.push_back(std::move(row));
        }
        for (const auto& [y, w] : dst) demand.push_back(w);
        const double lp = oracle::transport_lp(supply, demand, cost);
        worst_emd = std::max(worst_emd, std::abs(cost_emd(p, q) - lp));
    }
    const bool emd_ok = worst_emd < 1e-9;

    report(8, "dense-matrix and LP oracle equivalence", gates_ok && emd_ok,
           "max gate deviation " + format_double(worst_gate) + ", max EMD deviation " +
               format_double(worst_emd));
}

void criterion_9_reproducibility() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qcbm_acceptance_replay";
    fs::remove_all(dir);

    ExperimentConfig config;
    config.dataset.kind = "bas";
    config.dataset.n = 2;
    config.dataset.m = 2;
    config.dataset.seed = 2;
    config.dataset.size = 300;
    config.num_qubits = 4;
    config.layers = 2;
    config.topology = TopologyKind::All;
    config.shots = 300;
    config.iterations = 10;
    config.restarts = 3;
    config.seed = 99;
    config.output_dir = (dir / "a").string();

    const auto first = run_ddqcl(config);
    write_train_outputs(first, dir / "a");
    config.output_dir = (dir / "b").string();
    const auto second = run_ddqcl(config);
    write_train_outputs(second, dir / "b");

    bool pass = true;
    for (int r = 0; r < config.restarts; ++r) {
        const auto name = "trace_restart_" + std::to_string(r) + ".csv";
        if (read_text(dir / "a" / name) != read_text(dir / "b" / name)) pass = false;
    }
    fs::remove_all(dir);
    report(9, "byte-identical trace replay", pass,
           pass ? "3 restarts x 10 iterations identical" : "trace files differ");
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1_table();
    criterion_2_bas_counts();
    criterion_3_ghz();
    criterion_4_entropy();
    criterion_5_trainability();
    criterion_6_thermal();
    criterion_7_qbas();
    criterion_8_oracles();
    criterion_9_reproducibility();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/9 criteria passed in %.1f s\n", 9 - g_failures, seconds);
    return g_failures == 0 ? 0 : 1;
}
