#include "qbas.hpp"

#include <cmath>
#include <set>
#include <string>

#include "datasets.hpp"
#include "errors.hpp"

namespace qcbm {

double ScoreReport::mean_score() const {
    if (scores.empty()) return 0.0;
    double total = 0.0;
    for (double s : scores) total += s;
    return total / static_cast<double>(scores.size());
}

std::int64_t coupon_collector_reads(std::int64_t num_patterns) {
    if (num_patterns < 1) throw ArgumentError("pattern count must be >= 1");
    long double harmonic = 0.0L;
    for (std::int64_t i = num_patterns; i >= 1; --i)
        harmonic += 1.0L / static_cast<long double>(i);
    return static_cast<std::int64_t>(
        std::ceil(static_cast<long double>(num_patterns) * harmonic));
}

double qbas_precision(std::span<const std::uint64_t> shots, int n, int m) {
    if (shots.empty()) throw ArgumentError("precision needs at least one shot");
    std::int64_t hits = 0;
    for (std::uint64_t s : shots)
        if (is_bas_index(s, n, m)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(shots.size());
}

double qbas_recall(std::span<const std::uint64_t> batch, int n, int m) {
    const auto num_patterns = static_cast<std::int64_t>((std::int64_t{1} << n) +
                                                        (std::int64_t{1} << m) - 2);
    const std::int64_t expected = coupon_collector_reads(num_patterns);
    if (static_cast<std::int64_t>(batch.size()) != expected)
        throw ArgumentError("recall batch must hold exactly " + std::to_string(expected) +
                            " shots");
    std::set<std::uint64_t> distinct;
    for (std::uint64_t s : batch)
        if (is_bas_index(s, n, m)) distinct.insert(s);
    return static_cast<double>(distinct.size()) / static_cast<double>(num_patterns);
}

double f1_score(double precision, double recall) {
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

namespace {

ScoreReport score_batches(std::span<const std::uint64_t> shots, std::int64_t num_reads,
                          int batches, int n, int m) {
    ScoreReport report;
    report.n = n;
    report.m = m;
    report.num_reads = num_reads;
    report.pooled_samples = static_cast<std::int64_t>(shots.size());
    report.precision = qbas_precision(shots, n, m);
    for (int b = 0; b < batches; ++b) {
        const auto batch = shots.subspan(static_cast<std::size_t>(b) * num_reads,
                                         static_cast<std::size_t>(num_reads));
        report.recalls.push_back(qbas_recall(batch, n, m));
        report.scores.push_back(f1_score(report.precision, report.recalls.back()));
    }
    return report;
}

}  // namespace

ScoreReport qbas_score(const StateVector& state, int n, int m, int repetitions,
                       std::uint64_t seed) {
    if (repetitions < 1) throw ArgumentError("repetitions must be >= 1");
    if (state.num_qubits() != n * m)
        throw ArgumentError("state has " + std::to_string(state.num_qubits()) +
                            " qubits but BAS(" + std::to_string(n) + "," +
                            std::to_string(m) + ") needs " + std::to_string(n * m));
    const std::int64_t num_patterns = (std::int64_t{1} << n) + (std::int64_t{1} << m) - 2;
    const std::int64_t num_reads = coupon_collector_reads(num_patterns);
    const EmpiricalDistribution probs = state.probabilities();
    std::vector<std::uint64_t> shots;
    shots.reserve(static_cast<std::size_t>(repetitions) * num_reads);
    for (int b = 0; b < repetitions; ++b) {
        auto eng = rng::make_engine(seed, rng::kQbas, static_cast<std::uint64_t>(b));
        const auto batch = probs.sample(num_reads, eng);
        shots.insert(shots.end(), batch.begin(), batch.end());
    }
    return score_batches(shots, num_reads, repetitions, n, m);
}

ScoreReport qbas_score_from_shots(std::span<const std::uint64_t> shots, int n, int m) {
    const std::int64_t num_patterns = (std::int64_t{1} << n) + (std::int64_t{1} << m) - 2;
    const std::int64_t num_reads = coupon_collector_reads(num_patterns);
    const int batches = static_cast<int>(shots.size() / static_cast<std::size_t>(num_reads));
    if (batches < 1)
        throw ArgumentError("shot list holds fewer than one batch of " +
                            std::to_string(num_reads) + " reads");
    return score_batches(shots, num_reads, batches, n, m);
}

}  // namespace qcbm
