#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "basis.hpp"
#include "distribution.hpp"

namespace qcbm {

// Random Ising instance: symmetric couplings with zero diagonal plus local
// fields, all drawn i.i.d. Normal(0, 1/sqrt(N)).
struct IsingInstance {
    int num_spins = 0;
    std::vector<double> couplings;  // row-major num_spins x num_spins
    std::vector<double> fields;
    double temperature = 1.0;
    std::uint64_t seed = 0;

    double coupling(int i, int j) const {
        return couplings[static_cast<std::size_t>(i) * num_spins + j];
    }
};

// Reference temperature for the thermal learning presets.
inline constexpr double kCriticalTemperature = 1.0;

// Bars-and-stripes on an n x m grid, row-major pixel-to-qubit mapping
// (qubit = row * m + col). Exactly 2^n + 2^m - 2 patterns.
std::vector<SpinString> bas_patterns(int n, int m);
bool is_bas(std::span<const std::int8_t> pattern, int n, int m);
bool is_bas_index(std::uint64_t index, int n, int m);
EmpiricalDistribution bas_distribution(int n, int m);

IsingInstance random_ising_instance(int num_spins, double temperature, std::uint64_t seed);

// E(x) = sum_{i<j} J_ij x_i x_j + sum_i h_i x_i for the spin string behind
// `index`.
double ising_energy(const IsingInstance& instance, std::uint64_t index);

// Exact Boltzmann weights P(x) proportional to exp(E(x)/T) over all 2^N
// configurations (positive exponent; max-shifted before exponentiation).
EmpiricalDistribution thermal_distribution(const IsingInstance& instance);

// 1/2 on each of |0...0> and |1...1>.
EmpiricalDistribution ferromagnet_distribution(int num_qubits);

struct Dataset {
    int num_qubits = 0;
    std::vector<std::uint64_t> samples;

    EmpiricalDistribution empirical() const {
        return EmpiricalDistribution::from_samples(num_qubits, samples);
    }
};

Dataset draw_dataset(const EmpiricalDistribution& dist, std::int64_t size,
                     std::uint64_t seed);

// Text format: one '0'/'1' string per line (qubit 0 leftmost), plus a
// sidecar <path>.meta.json with generator kind, parameters and seed.
struct DatasetMeta {
    std::string kind;
    std::string params_json = "{}";
    std::uint64_t seed = 0;
};

void write_samples(const std::filesystem::path& path, const Dataset& dataset,
                   const DatasetMeta& meta);
Dataset read_samples(const std::filesystem::path& path);

}  // namespace qcbm
