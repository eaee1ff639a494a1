#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "statevector.hpp"

namespace qcbm {

// qBAS(n,m) report. Precision is pooled over all repetitions; each
// repetition contributes one recall and one F1 score.
struct ScoreReport {
    int n = 0;
    int m = 0;
    std::int64_t num_reads = 0;
    double precision = 0.0;
    std::vector<double> recalls;
    std::vector<double> scores;
    std::int64_t pooled_samples = 0;

    double mean_score() const;
};

// Coupon-collector readout budget: ceil(k * H_k) for k equally likely
// patterns.
std::int64_t coupon_collector_reads(std::int64_t num_patterns);

// Fraction of shots that are BAS(n,m) members.
double qbas_precision(std::span<const std::uint64_t> shots, int n, int m);

// Distinct BAS patterns seen / N_BAS; the batch must hold exactly
// coupon_collector_reads(N_BAS) shots.
double qbas_recall(std::span<const std::uint64_t> batch, int n, int m);

// Harmonic mean 2pr/(p+r), defined as 0 when p + r == 0.
double f1_score(double precision, double recall);

// Draws `repetitions` batches of N_reads shots from the state (per-batch
// derived seeds), pools precision over all of them, and scores each batch.
ScoreReport qbas_score(const StateVector& state, int n, int m, int repetitions,
                       std::uint64_t seed);

// Same scoring over an externally supplied shot list: the first
// floor(len / N_reads) full batches feed the recalls, precision pools over
// every shot provided.
ScoreReport qbas_score_from_shots(std::span<const std::uint64_t> shots, int n, int m);

}  // namespace qcbm
