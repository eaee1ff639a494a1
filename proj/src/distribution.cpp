#include "distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "errors.hpp"

namespace qcbm {

namespace {
constexpr double kMassTolerance = 1e-10;
}

EmpiricalDistribution::EmpiricalDistribution(int num_qubits, std::vector<Entry> weights)
    : num_qubits_(num_qubits), weights_(std::move(weights)) {
    if (num_qubits < 1 || num_qubits > 63)
        throw ArgumentError("distribution qubit count out of range");
    std::sort(weights_.begin(), weights_.end());
    double mass = 0.0;
    std::uint64_t prev = 0;
    bool first = true;
    for (const auto& [index, p] : weights_) {
        if (index >= dimension()) throw ArgumentError("basis index outside 2^N range");
        if (!first && index == prev) throw ArgumentError("duplicate basis index in weights");
        if (p < 0.0) throw ArgumentError("negative probability weight");
        prev = index;
        first = false;
        mass += p;
    }
    if (std::abs(mass - 1.0) > kMassTolerance)
        throw ArgumentError("distribution weights must sum to 1");
    std::erase_if(weights_, [](const Entry& e) { return e.second == 0.0; });
}

EmpiricalDistribution EmpiricalDistribution::from_dense(int num_qubits,
                                                        std::span<const double> probs) {
    if (probs.size() != (std::uint64_t{1} << num_qubits))
        throw ArgumentError("dense probability vector has wrong length");
    std::vector<Entry> weights;
    for (std::uint64_t i = 0; i < probs.size(); ++i)
        if (probs[i] != 0.0) weights.emplace_back(i, probs[i]);
    return EmpiricalDistribution(num_qubits, std::move(weights));
}

EmpiricalDistribution EmpiricalDistribution::from_samples(
    int num_qubits, std::span<const std::uint64_t> samples) {
    if (samples.empty()) throw ArgumentError("cannot build a distribution from zero samples");
    std::map<std::uint64_t, std::int64_t> counts;
    for (std::uint64_t s : samples) ++counts[s];
    std::vector<Entry> weights;
    weights.reserve(counts.size());
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (const auto& [index, c] : counts)
        weights.emplace_back(index, static_cast<double>(c) * inv);
    return EmpiricalDistribution(num_qubits, std::move(weights));
}

double EmpiricalDistribution::probability(std::uint64_t index) const {
    auto it = std::lower_bound(weights_.begin(), weights_.end(), index,
                               [](const Entry& e, std::uint64_t i) { return e.first < i; });
    if (it == weights_.end() || it->first != index) return 0.0;
    return it->second;
}

std::vector<std::uint64_t> EmpiricalDistribution::sample(std::int64_t count,
                                                         rng::Engine& eng) const {
    if (count < 1) throw ArgumentError("sample count must be >= 1");
    std::vector<double> cdf(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i].second;
        cdf[i] = acc;
    }
    std::vector<std::uint64_t> out(static_cast<std::size_t>(count));
    for (auto& s : out) {
        const double u = rng::uniform01(eng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;  // guards the ~1e-16 shortfall of the last cumsum
        s = weights_[static_cast<std::size_t>(it - cdf.begin())].first;
    }
    return out;
}

std::vector<std::uint64_t> EmpiricalDistribution::sample(std::int64_t count,
                                                         std::uint64_t seed) const {
    auto eng = rng::make_engine(seed, rng::kDataset);
    return sample(count, eng);
}

}  // namespace qcbm
