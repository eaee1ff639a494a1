#include "bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace qcbm {

namespace {

// Drops non-finite values (undefined KL markers) and reports how many.
std::vector<double> finite_values(std::span<const double> values, int& excluded) {
    std::vector<double> out;
    out.reserve(values.size());
    excluded = 0;
    for (double v : values) {
        if (std::isfinite(v))
            out.push_back(v);
        else
            ++excluded;
    }
    return out;
}

double median_of(std::vector<double>& scratch) {
    const std::size_t n = scratch.size();
    auto mid = scratch.begin() + n / 2;
    std::nth_element(scratch.begin(), mid, scratch.end());
    if (n % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(scratch.begin(), mid);
    return 0.5 * (lo + hi);
}

// Each resample gets its own derived engine, so the loop is order-free.
std::vector<double> resample_statistics(std::span<const double> values, int num_resamples,
                                        std::uint64_t seed,
                                        double (*statistic)(std::vector<double>&)) {
    std::vector<double> stats(static_cast<std::size_t>(num_resamples));
    std::vector<double> scratch(values.size());
    for (int r = 0; r < num_resamples; ++r) {
        auto eng = rng::make_engine(seed, rng::kBootstrap, static_cast<std::uint64_t>(r));
        for (auto& v : scratch)
            v = values[rng::uniform_index(eng, values.size())];
        stats[static_cast<std::size_t>(r)] = statistic(scratch);
    }
    return stats;
}

double mean_of(std::vector<double>& scratch) {
    double total = 0.0;
    for (double v : scratch) total += v;
    return total / static_cast<double>(scratch.size());
}

BootstrapSummary degenerate_summary(BootstrapKind kind, int num_resamples, int excluded) {
    BootstrapSummary summary;
    summary.kind = kind;
    summary.num_resamples = num_resamples;
    summary.excluded = excluded;
    summary.center = summary.lower = summary.upper =
        std::numeric_limits<double>::infinity();
    return summary;
}

}  // namespace

double percentile(std::span<const double> sorted_values, double q) {
    if (sorted_values.empty()) throw ArgumentError("percentile of an empty sequence");
    if (q < 0.0 || q > 100.0) throw ArgumentError("percentile rank must be in [0, 100]");
    const double rank = q / 100.0 * static_cast<double>(sorted_values.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

BootstrapSummary bootstrap_median_ci(std::span<const double> values, int num_resamples,
                                     std::uint64_t seed) {
    if (values.size() < 2) throw ArgumentError("bootstrap needs at least 2 values");
    if (num_resamples < 1) throw ArgumentError("resample count must be >= 1");
    int excluded = 0;
    const auto finite = finite_values(values, excluded);
    if (finite.empty())
        return degenerate_summary(BootstrapKind::Median90, num_resamples, excluded);

    auto medians = resample_statistics(finite, num_resamples, seed, &median_of);
    std::sort(medians.begin(), medians.end());
    BootstrapSummary summary;
    summary.kind = BootstrapKind::Median90;
    summary.num_resamples = num_resamples;
    summary.excluded = excluded;
    summary.center = percentile(medians, 50.0);
    summary.lower = percentile(medians, 5.0);
    summary.upper = percentile(medians, 95.0);
    return summary;
}

BootstrapSummary bootstrap_mean_ci(std::span<const double> values, int num_resamples,
                                   std::uint64_t seed) {
    if (values.size() < 2) throw ArgumentError("bootstrap needs at least 2 values");
    if (num_resamples < 1) throw ArgumentError("resample count must be >= 1");
    int excluded = 0;
    const auto finite = finite_values(values, excluded);
    if (finite.empty())
        return degenerate_summary(BootstrapKind::Mean2Sigma, num_resamples, excluded);

    const auto means = resample_statistics(finite, num_resamples, seed, &mean_of);
    double center = 0.0;
    for (double m : means) center += m;
    center /= static_cast<double>(means.size());
    double variance = 0.0;
    for (double m : means) variance += (m - center) * (m - center);
    variance /= static_cast<double>(means.size());
    const double spread = 2.0 * std::sqrt(variance);

    BootstrapSummary summary;
    summary.kind = BootstrapKind::Mean2Sigma;
    summary.num_resamples = num_resamples;
    summary.excluded = excluded;
    summary.center = center;
    summary.lower = center - spread;
    summary.upper = center + spread;
    return summary;
}

}  // namespace qcbm
