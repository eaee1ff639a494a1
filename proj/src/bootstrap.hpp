#pragma once

#include <cstdint>
#include <span>

namespace qcbm {

enum class BootstrapKind { Median90, Mean2Sigma };

struct BootstrapSummary {
    double center = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int num_resamples = 0;
    BootstrapKind kind = BootstrapKind::Median90;
    int excluded = 0;  // non-finite inputs dropped before resampling
};

inline constexpr int kDefaultResamples = 10000;

// Linear interpolation between closest ranks; q in [0, 100], values sorted.
double percentile(std::span<const double> sorted_values, double q);

// Resample-with-replacement medians: center = median of medians, CI from
// the 5th/95th percentiles (90% confidence).
BootstrapSummary bootstrap_median_ci(std::span<const double> values, int num_resamples,
                                     std::uint64_t seed);

// Resampled means: center = mean of means, CI = center +- 2 std of means
// (95% confidence).
BootstrapSummary bootstrap_mean_ci(std::span<const double> values, int num_resamples,
                                   std::uint64_t seed);

}  // namespace qcbm
