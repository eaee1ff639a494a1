#include "datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "io.hpp"

namespace qcbm {

namespace {

void check_bas_size(int n, int m) {
    if (n < 1 || m < 1) throw ArgumentError("BAS grid sides must be >= 1");
    if (n * m > kMaxQubits)
        throw CapacityError("BAS grid needs more than " + std::to_string(kMaxQubits) +
                            " qubits");
}

}  // namespace

std::vector<SpinString> bas_patterns(int n, int m) {
    check_bas_size(n, m);
    std::set<std::uint64_t> indices;
    // Row patterns: each of the n rows all black or all white.
    for (std::uint64_t rows = 0; rows < (std::uint64_t{1} << n); ++rows) {
        std::uint64_t index = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c)
                if ((rows >> r) & 1) index |= qubit_mask(n * m, r * m + c);
        indices.insert(index);
    }
    // Column patterns; all-white and all-black collapse into the row set.
    for (std::uint64_t cols = 0; cols < (std::uint64_t{1} << m); ++cols) {
        std::uint64_t index = 0;
        for (int c = 0; c < m; ++c)
            for (int r = 0; r < n; ++r)
                if ((cols >> c) & 1) index |= qubit_mask(n * m, r * m + c);
        indices.insert(index);
    }
    std::vector<SpinString> patterns;
    patterns.reserve(indices.size());
    for (std::uint64_t index : indices) patterns.push_back(index_to_spin(index, n * m));
    return patterns;
}

bool is_bas(std::span<const std::int8_t> pattern, int n, int m) {
    check_bas_size(n, m);
    if (pattern.size() != static_cast<std::size_t>(n) * m)
        throw ArgumentError("pattern length must equal n*m");
    bool rows_constant = true;
    for (int r = 0; r < n && rows_constant; ++r)
        for (int c = 1; c < m; ++c)
            if (pattern[r * m + c] != pattern[r * m]) {
                rows_constant = false;
                break;
            }
    if (rows_constant) return true;
    for (int c = 0; c < m; ++c)
        for (int r = 1; r < n; ++r)
            if (pattern[r * m + c] != pattern[c]) return false;
    return true;
}

bool is_bas_index(std::uint64_t index, int n, int m) {
    const SpinString spins = index_to_spin(index, n * m);
    return is_bas(spins, n, m);
}

EmpiricalDistribution bas_distribution(int n, int m) {
    const auto patterns = bas_patterns(n, m);
    const double p = 1.0 / static_cast<double>(patterns.size());
    std::vector<EmpiricalDistribution::Entry> weights;
    weights.reserve(patterns.size());
    for (const auto& pattern : patterns) weights.emplace_back(spin_to_index(pattern), p);
    return EmpiricalDistribution(n * m, std::move(weights));
}

IsingInstance random_ising_instance(int num_spins, double temperature,
                                    std::uint64_t seed) {
    if (num_spins < 1 || num_spins > 20)
        throw ArgumentError("Ising instance size must be in [1, 20]");
    if (!(temperature > 0.0)) throw ArgumentError("temperature must be positive");
    IsingInstance instance;
    instance.num_spins = num_spins;
    instance.temperature = temperature;
    instance.seed = seed;
    instance.couplings.assign(static_cast<std::size_t>(num_spins) * num_spins, 0.0);
    instance.fields.resize(num_spins);
    // Sherrington-Kirkpatrick normalization: coefficient scale 1/sqrt(N)
    // puts the reference temperature near T = 1, so the {2T_c, T_c,
    // T_c/1.5} presets span easy-to-hard learning tasks.
    const double stddev = 1.0 / std::sqrt(static_cast<double>(num_spins));
    auto eng = rng::make_engine(seed, rng::kIsing);
    // Draw order is part of the format: h_0..h_{N-1}, then J_ij row-major
    // over the i<j triangle.
    for (int i = 0; i < num_spins; ++i) instance.fields[i] = rng::normal(eng, 0.0, stddev);
    for (int i = 0; i < num_spins; ++i)
        for (int j = i + 1; j < num_spins; ++j) {
            const double v = rng::normal(eng, 0.0, stddev);
            instance.couplings[static_cast<std::size_t>(i) * num_spins + j] = v;
            instance.couplings[static_cast<std::size_t>(j) * num_spins + i] = v;
        }
    return instance;
}

double ising_energy(const IsingInstance& instance, std::uint64_t index) {
    const int n = instance.num_spins;
    const SpinString spins = index_to_spin(index, n);
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        energy += instance.fields[i] * spins[i];
        for (int j = i + 1; j < n; ++j)
            energy += instance.coupling(i, j) * spins[i] * spins[j];
    }
    return energy;
}

EmpiricalDistribution thermal_distribution(const IsingInstance& instance) {
    const int n = instance.num_spins;
    if (n < 1 || n > 20) throw ArgumentError("thermal enumeration limited to N <= 20");
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<double> energies(dim);
    double max_energy = -std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < dim; ++x) {
        energies[x] = ising_energy(instance, x);
        max_energy = std::max(max_energy, energies[x]);
    }
    std::vector<double> probs(dim);
    double z = 0.0;
    for (std::uint64_t x = 0; x < dim; ++x) {
        probs[x] = std::exp((energies[x] - max_energy) / instance.temperature);
        z += probs[x];
    }
    for (auto& p : probs) p /= z;
    return EmpiricalDistribution::from_dense(n, probs);
}

EmpiricalDistribution ferromagnet_distribution(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ArgumentError("ferromagnet size out of range");
    std::vector<EmpiricalDistribution::Entry> weights{
        {0, 0.5}, {(std::uint64_t{1} << num_qubits) - 1, 0.5}};
    return EmpiricalDistribution(num_qubits, std::move(weights));
}

Dataset draw_dataset(const EmpiricalDistribution& dist, std::int64_t size,
                     std::uint64_t seed) {
    if (size < 1) throw ArgumentError("dataset size must be >= 1");
    Dataset dataset;
    dataset.num_qubits = dist.num_qubits();
    dataset.samples = dist.sample(size, seed);
    return dataset;
}

void write_samples(const std::filesystem::path& path, const Dataset& dataset,
                   const DatasetMeta& meta) {
    std::string body;
    body.reserve(dataset.samples.size() * (dataset.num_qubits + 1));
    for (std::uint64_t s : dataset.samples) {
        body += index_to_bits(s, dataset.num_qubits);
        body += '\n';
    }
    write_text_atomic(path, body);

    nlohmann::json j{{"kind", meta.kind},
                     {"num_qubits", dataset.num_qubits},
                     {"size", dataset.samples.size()},
                     {"seed", meta.seed},
                     {"params", nlohmann::json::parse(meta.params_json)}};
    std::filesystem::path meta_path = path;
    meta_path += ".meta.json";
    write_text_atomic(meta_path, j.dump(2) + "\n");
}

Dataset read_samples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sample file: " + path.string());
    Dataset dataset;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (dataset.num_qubits == 0)
            dataset.num_qubits = static_cast<int>(line.size());
        else if (line.size() != static_cast<std::size_t>(dataset.num_qubits))
            throw IoError("inconsistent string length in " + path.string());
        dataset.samples.push_back(bits_to_index(line));
    }
    if (dataset.samples.empty()) throw IoError("sample file is empty: " + path.string());
    if (dataset.num_qubits > kMaxQubits)
        throw CapacityError("sample file strings exceed the qubit capacity");
    return dataset;
}

}  // namespace qcbm
