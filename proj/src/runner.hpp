#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bootstrap.hpp"
#include "circuit.hpp"
#include "costs.hpp"
#include "datasets.hpp"
#include "pso.hpp"
#include "qbas.hpp"

namespace qcbm {

// Declarative experiment description; see README for the JSON schema.
struct DatasetSpec {
    std::string kind;  // "bas" | "ferromagnet" | "thermal"
    int n = 0, m = 0;  // bas grid
    int num_qubits = 0;
    double temperature = kCriticalTemperature;
    std::uint64_t instance_seed = 0;  // thermal couplings/fields
    std::uint64_t seed = 0;           // data sampling
    std::int64_t size = 1000;

    EmpiricalDistribution target_distribution() const;
    int qubit_count() const;
};

struct ExperimentConfig {
    DatasetSpec dataset;
    int num_qubits = 0;
    int layers = 2;
    TopologyKind topology = TopologyKind::All;
    CostConfig cost;
    pso::SwarmConfig swarm;  // num_particles == 0 means 2 * param_count
    int patience = 20;
    std::int64_t shots = 1000;
    int iterations = 100;
    int restarts = 25;
    std::uint64_t seed = 0;
    std::string output_dir;
    bool log_exact_kl = true;

    CircuitTemplate circuit() const;
    void validate() const;  // throws ConfigError with dotted field paths

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::filesystem::path& path);

    // FNV-1a of the canonical JSON serialization.
    std::string hash() const;
};

struct TraceRow {
    std::int64_t iteration = 0;
    double best_cost = 0.0;
    double kl = 0.0;  // exact KL of the global best; NaN when disabled
};

// One restart of the DDQCL loop; replaying the config and seed ledger
// reproduces cost/kl/params bit-exactly (wall clock excepted).
struct RunRecord {
    int restart_index = 0;
    std::uint64_t restart_seed = 0;
    std::vector<TraceRow> trace;  // row 0 is the post-initialization swarm
    std::vector<double> best_params;
    double final_cost = 0.0;
    double final_kl = 0.0;
    std::int64_t iterations = 0;
    double wall_ms = 0.0;
};

struct TrainResult {
    ExperimentConfig config;
    std::string config_hash;
    std::vector<RunRecord> records;
    int best_restart = 0;  // lowest final cost
};

// Hybrid training loop: per restart, init a swarm (seed = base + restart
// index) and iterate circuit execution -> finite-shot sampling -> cost
// against the data; exact KL against the target distribution is logged
// from noiseless probabilities and never feeds back into training.
TrainResult run_ddqcl(const ExperimentConfig& config);

void write_train_outputs(const TrainResult& result,
                         const std::filesystem::path& out_dir);
std::string trace_csv(const TrainResult& result, const RunRecord& record);

// Rebuilds config + best parameters from a summary.json written by
// write_train_outputs.
struct LoadedRun {
    ExperimentConfig config;
    std::vector<double> best_params;
};
LoadedRun load_run_summary(const std::filesystem::path& run_dir);

struct QbasBenchmark {
    ScoreReport report;
    BootstrapSummary bootstrap;
    std::string config_hash;  // empty when scored without a training config
    std::uint64_t seed = 0;
    nlohmann::json to_json() const;
};

// Scores the lowest-cost restart with R repetitions and bootstraps the
// score mean.
QbasBenchmark run_qbas_benchmark(const ExperimentConfig& config,
                                 const TrainResult& result, int repetitions = 25);
QbasBenchmark qbas_benchmark_for_state(const StateVector& state, int n, int m,
                                       int repetitions, std::uint64_t seed);

struct ThermalSuiteOptions {
    std::vector<int> sizes{5, 6};
    std::vector<double> temperatures{2.0 * kCriticalTemperature, kCriticalTemperature,
                                     kCriticalTemperature / 1.5};
    std::vector<int> depths{1, 2, 3};
    int instances = 25;
    int iterations = 50;
    std::int64_t shots = 1000;
    std::int64_t dataset_size = 1000;
    std::uint64_t seed = 0;
    CostConfig cost;
};

struct ThermalCell {
    int size = 0;
    double temperature = 0.0;
    int depth = 0;
    std::vector<double> final_kls;            // one per instance
    std::vector<BootstrapSummary> kl_trace;   // bootstrapped median per iteration
    BootstrapSummary final_summary;
};

struct ThermalSuiteResult {
    ThermalSuiteOptions options;
    std::vector<ThermalCell> cells;

    const ThermalCell& cell(int size, double temperature, int depth) const;
};

// One training run per random instance (all-to-all topology), mirroring the
// 25-instance KL-vs-iteration tables.
ThermalSuiteResult run_thermal_suite(const ThermalSuiteOptions& options);
void write_thermal_outputs(const ThermalSuiteResult& result,
                           const std::filesystem::path& out_dir);

struct GhzVerifyReport {
    struct Entry {
        int num_qubits = 0;
        bool pass = false;
        double max_deviation = 0.0;
    };
    std::vector<Entry> entries;
    bool all_pass = true;
    nlohmann::json to_json() const;
};

// Builds the GHZ recipe for every N in [2, max_qubits] and checks the
// {0...0, 1...1} = {0.5, 0.5} distribution within 1e-9.
GhzVerifyReport verify_ghz_recipes(int max_qubits);

// CSV grid of the closed-form BAS(2,2) entropy surface over [0, 2pi)^2.
void write_entropy_surface(const std::filesystem::path& csv_path, int grid_size);

}  // namespace qcbm
