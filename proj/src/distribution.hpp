#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace qcbm {

// Normalized histogram over the 2^N computational basis indices. Only
// nonzero entries are stored, sorted by basis index; total mass must be 1
// within 1e-10.
class EmpiricalDistribution {
public:
    using Entry = std::pair<std::uint64_t, double>;

    EmpiricalDistribution(int num_qubits, std::vector<Entry> weights);

    static EmpiricalDistribution from_dense(int num_qubits, std::span<const double> probs);
    static EmpiricalDistribution from_samples(int num_qubits,
                                              std::span<const std::uint64_t> samples);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << num_qubits_; }

    // 0 for indices outside the stored support.
    double probability(std::uint64_t index) const;

    const std::vector<Entry>& support() const { return weights_; }

    // Multinomial sample by CDF inversion; one engine output per draw.
    std::vector<std::uint64_t> sample(std::int64_t count, rng::Engine& eng) const;
    std::vector<std::uint64_t> sample(std::int64_t count, std::uint64_t seed) const;

private:
    int num_qubits_;
    std::vector<Entry> weights_;
};

}  // namespace qcbm
