#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "entropy.hpp"
#include "errors.hpp"
#include "io.hpp"

namespace qcbm {

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw ConfigError(path + key, "missing required field");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path + key, e.what());
    }
}

template <typename T>
T get_or(const json& j, const std::string& path, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path + key, e.what());
    }
}

const char* bootstrap_kind_name(BootstrapKind kind) {
    return kind == BootstrapKind::Median90 ? "median_90" : "mean_2sigma";
}

// JSON has no infinity literal; undefined-KL markers serialize as "inf".
json json_number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

json bootstrap_to_json(const BootstrapSummary& s) {
    return json{{"center", json_number(s.center)},
                {"lower", json_number(s.lower)},
                {"upper", json_number(s.upper)},
                {"kind", bootstrap_kind_name(s.kind)},
                {"num_resamples", s.num_resamples},
                {"excluded", s.excluded}};
}

}  // namespace

int DatasetSpec::qubit_count() const {
    if (kind == "bas") return n * m;
    return num_qubits;
}

EmpiricalDistribution DatasetSpec::target_distribution() const {
    if (kind == "bas") return bas_distribution(n, m);
    if (kind == "ferromagnet") return ferromagnet_distribution(num_qubits);
    if (kind == "thermal")
        return thermal_distribution(
            random_ising_instance(num_qubits, temperature, instance_seed));
    throw ConfigError("dataset.kind", "unknown dataset kind: " + kind);
}

CircuitTemplate ExperimentConfig::circuit() const {
    return CircuitTemplate(num_qubits, layers, topology);
}

void ExperimentConfig::validate() const {
    if (dataset.kind != "bas" && dataset.kind != "ferromagnet" &&
        dataset.kind != "thermal")
        throw ConfigError("dataset.kind", "must be one of bas, ferromagnet, thermal");
    if (dataset.kind == "bas" && (dataset.n < 1 || dataset.m < 1))
        throw ConfigError("dataset.n", "BAS grid sides must be >= 1");
    if (dataset.kind != "bas" && dataset.num_qubits < 1)
        throw ConfigError("dataset.num_qubits", "must be >= 1");
    if (dataset.kind == "thermal" && !(dataset.temperature > 0))
        throw ConfigError("dataset.temperature", "must be positive");
    if (dataset.size < 1) throw ConfigError("dataset.size", "must be >= 1");
    if (num_qubits != dataset.qubit_count())
        throw ConfigError("circuit.num_qubits",
                          "must match the dataset qubit count (" +
                              std::to_string(dataset.qubit_count()) + ")");
    if (layers < 1) throw ConfigError("circuit.layers", "must be >= 1");
    if (!(cost.epsilon > 0)) throw ConfigError("cost.epsilon", "must be positive");
    if (shots < 1) throw ConfigError("shots", "must be >= 1");
    if (iterations < 1) throw ConfigError("iterations", "must be >= 1");
    if (restarts < 1) throw ConfigError("restarts", "must be >= 1");
    if (patience < 0) throw ConfigError("patience", "must be >= 0");
}

json ExperimentConfig::to_json() const {
    json d{{"kind", dataset.kind}, {"seed", dataset.seed}, {"size", dataset.size}};
    if (dataset.kind == "bas") {
        d["n"] = dataset.n;
        d["m"] = dataset.m;
    } else {
        d["num_qubits"] = dataset.num_qubits;
    }
    if (dataset.kind == "thermal") {
        d["temperature"] = dataset.temperature;
        d["instance_seed"] = dataset.instance_seed;
    }
    return json{
        {"dataset", d},
        {"circuit",
         {{"num_qubits", num_qubits},
          {"layers", layers},
          {"topology", std::string(topology_name(topology))},
          {"param_order", std::string(CircuitTemplate::kParamOrderVersion)}}},
        {"cost",
         {{"kind", std::string(cost_kind_name(cost.kind))}, {"epsilon", cost.epsilon}}},
        {"swarm",
         {{"cognition", swarm.cognition},
          {"social", swarm.social},
          {"inertia", swarm.inertia},
          {"max_step", swarm.max_step},
          {"num_particles", swarm.num_particles}}},
        {"patience", patience},
        {"shots", shots},
        {"iterations", iterations},
        {"restarts", restarts},
        {"seed", seed},
        {"output_dir", output_dir},
        {"log_exact_kl", log_exact_kl}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig config;
    const json dataset = get_field<json>(j, "", "dataset");
    config.dataset.kind = get_field<std::string>(dataset, "dataset.", "kind");
    if (config.dataset.kind == "bas") {
        config.dataset.n = get_field<int>(dataset, "dataset.", "n");
        config.dataset.m = get_field<int>(dataset, "dataset.", "m");
    } else {
        config.dataset.num_qubits = get_field<int>(dataset, "dataset.", "num_qubits");
    }
    if (config.dataset.kind == "thermal") {
        config.dataset.temperature = get_or(dataset, "dataset.", "temperature",
                                            kCriticalTemperature);
        config.dataset.instance_seed =
            get_or<std::uint64_t>(dataset, "dataset.", "instance_seed", 0);
    }
    config.dataset.seed = get_or<std::uint64_t>(dataset, "dataset.", "seed", 0);
    config.dataset.size = get_or<std::int64_t>(dataset, "dataset.", "size", 1000);

    const json circuit = get_field<json>(j, "", "circuit");
    config.num_qubits = get_field<int>(circuit, "circuit.", "num_qubits");
    config.layers = get_field<int>(circuit, "circuit.", "layers");
    try {
        config.topology =
            topology_from_name(get_field<std::string>(circuit, "circuit.", "topology"));
    } catch (const ArgumentError& e) {
        throw ConfigError("circuit.topology", e.what());
    }

    if (j.contains("cost")) {
        const json& cost = j.at("cost");
        try {
            config.cost.kind =
                cost_kind_from_name(get_or<std::string>(cost, "cost.", "kind", "nll"));
        } catch (const ArgumentError& e) {
            throw ConfigError("cost.kind", e.what());
        }
        config.cost.epsilon = get_or(cost, "cost.", "epsilon", 1e-8);
    }
    if (j.contains("swarm")) {
        const json& swarm = j.at("swarm");
        config.swarm.cognition = get_or(swarm, "swarm.", "cognition", 0.5);
        config.swarm.social = get_or(swarm, "swarm.", "social", 0.5);
        config.swarm.inertia = get_or(swarm, "swarm.", "inertia", 0.5);
        config.swarm.max_step = get_or(swarm, "swarm.", "max_step", std::numbers::pi);
        config.swarm.num_particles = get_or(swarm, "swarm.", "num_particles", 0);
    }
    config.patience = get_or(j, "", "patience", 20);
    config.shots = get_or<std::int64_t>(j, "", "shots", 1000);
    config.iterations = get_or(j, "", "iterations", 100);
    config.restarts = get_or(j, "", "restarts", 25);
    config.seed = get_or<std::uint64_t>(j, "", "seed", 0);
    config.output_dir = get_or<std::string>(j, "", "output_dir", "");
    config.log_exact_kl = get_or(j, "", "log_exact_kl", true);
    config.validate();
    return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw ConfigError(path.string(), e.what());
    }
    return from_json(j);
}

std::string ExperimentConfig::hash() const {
    // The hash identifies the experiment; where its artifacts land does not
    // change what was run, and replays into fresh directories must match.
    json j = to_json();
    j.erase("output_dir");
    return fnv1a64_hex(j.dump());
}

namespace {

// One restart: swarm over the circuit parameters against finite-shot cost
// estimates. Shot streams derive from (restart seed, iteration, particle)
// so evaluation order cannot matter.
RunRecord run_restart(const ExperimentConfig& config, const CircuitTemplate& circuit,
                      const Dataset& data, const EmpiricalDistribution& data_empirical,
                      const EmpiricalDistribution& target, int restart_index) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t restart_seed = config.seed + static_cast<std::uint64_t>(restart_index);
    const int dim = circuit.param_count();

    pso::SwarmConfig swarm = config.swarm;
    if (swarm.num_particles == 0) swarm.num_particles = 2 * dim;
    swarm.max_iterations = config.iterations;
    swarm.rng_seed = restart_seed;

    pso::Objective objective = [&](std::span<const double> params,
                                   const pso::EvalContext& ctx) {
        const StateVector state = circuit.execute(params);
        const std::uint64_t shot_seed =
            rng::derive(restart_seed, static_cast<std::uint64_t>(ctx.iteration),
                        static_cast<std::uint64_t>(ctx.particle));
        const EmpiricalDistribution model =
            state.sample_distribution(config.shots, shot_seed);
        switch (config.cost.kind) {
            case CostKind::Nll:
                return cost_nll(data.samples, model, config.cost.epsilon);
            case CostKind::Emd:
                return cost_emd(data_empirical, model);
            case CostKind::MomentMatch:
                return cost_mm(data_empirical, model);
        }
        throw ArgumentError("invalid cost kind value");
    };

    RunRecord record;
    record.restart_index = restart_index;
    record.restart_seed = restart_seed;

    pso::Observer observer = [&](const pso::SwarmState& state) {
        TraceRow row;
        row.iteration = state.iteration;
        row.best_cost = state.global_best_cost;
        row.kl = std::numeric_limits<double>::quiet_NaN();
        if (config.log_exact_kl) {
            const StateVector best = circuit.execute(state.global_best);
            row.kl = kl_divergence(target, best.probabilities());
        }
        record.trace.push_back(row);
    };

    const pso::RunResult result =
        pso::run(swarm, dim, objective, config.patience, observer);
    record.best_params = result.best_position;
    record.final_cost = result.best_cost;
    record.iterations = result.iterations;
    record.final_kl =
        kl_divergence(target, circuit.execute(result.best_position).probabilities());
    record.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return record;
}

}  // namespace

TrainResult run_ddqcl(const ExperimentConfig& config) {
    config.validate();
    const EmpiricalDistribution target = config.dataset.target_distribution();
    const Dataset data = draw_dataset(target, config.dataset.size, config.dataset.seed);
    const EmpiricalDistribution data_empirical = data.empirical();
    const CircuitTemplate circuit = config.circuit();

    TrainResult result;
    result.config = config;
    result.config_hash = config.hash();
    result.records.resize(static_cast<std::size_t>(config.restarts));

    // Restarts are independent; aggregation below is single-threaded.
    std::vector<std::future<RunRecord>> futures;
    futures.reserve(static_cast<std::size_t>(config.restarts));
    for (int r = 0; r < config.restarts; ++r)
        futures.push_back(std::async(std::launch::async, [&, r] {
            return run_restart(config, circuit, data, data_empirical, target, r);
        }));
    for (int r = 0; r < config.restarts; ++r)
        result.records[static_cast<std::size_t>(r)] = futures[static_cast<std::size_t>(r)].get();

    result.best_restart = 0;
    for (int r = 1; r < config.restarts; ++r)
        if (result.records[r].final_cost < result.records[result.best_restart].final_cost)
            result.best_restart = r;
    return result;
}

std::string trace_csv(const TrainResult& result, const RunRecord& record) {
    std::ostringstream out;
    out << "# config_hash=" << result.config_hash << " restart=" << record.restart_index
        << " restart_seed=" << record.restart_seed << "\n";
    out << "iteration,global_best_cost,kl_divergence\n";
    for (const TraceRow& row : record.trace) {
        out << row.iteration << ',' << format_double(row.best_cost) << ',';
        if (!std::isnan(row.kl)) out << format_double(row.kl);
        out << "\n";
    }
    return out.str();
}

void write_train_outputs(const TrainResult& result, const std::filesystem::path& out_dir) {
    for (const RunRecord& record : result.records) {
        const auto name = "trace_restart_" + std::to_string(record.restart_index) + ".csv";
        write_text_atomic(out_dir / name, trace_csv(result, record));
    }

    json ledger{{"base_seed", result.config.seed},
                {"dataset_seed", result.config.dataset.seed}};
    json restart_seeds = json::array();
    for (const RunRecord& record : result.records) restart_seeds.push_back(record.restart_seed);
    ledger["restart_seeds"] = restart_seeds;

    json records = json::array();
    for (const RunRecord& record : result.records) {
        records.push_back({{"restart", record.restart_index},
                           {"restart_seed", record.restart_seed},
                           {"final_cost", record.final_cost},
                           {"final_kl", json_number(record.final_kl)},
                           {"iterations", record.iterations},
                           {"wall_ms", record.wall_ms},
                           {"best_params", record.best_params}});
    }
    json summary{{"config", result.config.to_json()},
                 {"config_hash", result.config_hash},
                 {"seed_ledger", ledger},
                 {"records", records},
                 {"best_restart", result.best_restart}};
    write_text_atomic(out_dir / "summary.json", summary.dump(2) + "\n");
}

LoadedRun load_run_summary(const std::filesystem::path& run_dir) {
    const auto path = run_dir / "summary.json";
    json summary;
    try {
        summary = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    LoadedRun loaded{ExperimentConfig::from_json(summary.at("config")), {}};
    const int best = summary.at("best_restart").get<int>();
    loaded.best_params =
        summary.at("records").at(best).at("best_params").get<std::vector<double>>();
    return loaded;
}

json QbasBenchmark::to_json() const {
    json j{{"n", report.n},
           {"m", report.m},
           {"num_reads", report.num_reads},
           {"precision", report.precision},
           {"recalls", report.recalls},
           {"scores", report.scores},
           {"mean_score", report.mean_score()},
           {"pooled_samples", report.pooled_samples},
           {"seed", seed},
           {"bootstrap", bootstrap_to_json(bootstrap)}};
    if (!config_hash.empty()) j["config_hash"] = config_hash;
    return j;
}

QbasBenchmark qbas_benchmark_for_state(const StateVector& state, int n, int m,
                                       int repetitions, std::uint64_t seed) {
    QbasBenchmark benchmark;
    benchmark.report = qbas_score(state, n, m, repetitions, seed);
    benchmark.bootstrap =
        bootstrap_mean_ci(benchmark.report.scores, kDefaultResamples, seed);
    benchmark.seed = seed;
    return benchmark;
}

QbasBenchmark run_qbas_benchmark(const ExperimentConfig& config,
                                 const TrainResult& result, int repetitions) {
    if (config.dataset.kind != "bas")
        throw ArgumentError("qBAS benchmark needs a BAS dataset config");
    const RunRecord& best = result.records[static_cast<std::size_t>(result.best_restart)];
    const StateVector state = config.circuit().execute(best.best_params);
    auto benchmark = qbas_benchmark_for_state(state, config.dataset.n, config.dataset.m,
                                              repetitions, config.seed);
    benchmark.config_hash = config.hash();
    return benchmark;
}

const ThermalCell& ThermalSuiteResult::cell(int size, double temperature,
                                            int depth) const {
    for (const ThermalCell& c : cells)
        if (c.size == size && c.depth == depth &&
            std::abs(c.temperature - temperature) < 1e-12)
            return c;
    throw ArgumentError("no thermal cell for the requested (size, T, depth)");
}

ThermalSuiteResult run_thermal_suite(const ThermalSuiteOptions& options) {
    if (options.instances < 1) throw ArgumentError("instances must be >= 1");
    ThermalSuiteResult result;
    result.options = options;
    for (int size : options.sizes)
        for (std::size_t ti = 0; ti < options.temperatures.size(); ++ti)
            for (int depth : options.depths) {
                const double temperature = options.temperatures[ti];
                ThermalCell cell;
                cell.size = size;
                cell.temperature = temperature;
                cell.depth = depth;
                std::vector<std::vector<double>> traces;
                for (int i = 0; i < options.instances; ++i) {
                    // Instances are shared across depths so the depth
                    // comparison sees identical learning targets.
                    const std::uint64_t instance_seed = rng::derive(
                        options.seed, static_cast<std::uint64_t>(size), ti,
                        static_cast<std::uint64_t>(i));
                    ExperimentConfig config;
                    config.dataset.kind = "thermal";
                    config.dataset.num_qubits = size;
                    config.dataset.temperature = temperature;
                    config.dataset.instance_seed = instance_seed;
                    config.dataset.seed = rng::derive(instance_seed, 1);
                    config.dataset.size = options.dataset_size;
                    config.num_qubits = size;
                    config.layers = depth;
                    config.topology = TopologyKind::All;
                    config.cost = options.cost;
                    config.shots = options.shots;
                    config.iterations = options.iterations;
                    config.patience = options.iterations;  // keep traces aligned
                    config.restarts = 1;
                    config.seed =
                        rng::derive(instance_seed, 1000 + static_cast<std::uint64_t>(depth));
                    const TrainResult train = run_ddqcl(config);
                    const RunRecord& record = train.records.front();
                    cell.final_kls.push_back(record.final_kl);
                    std::vector<double> kls;
                    kls.reserve(record.trace.size());
                    for (const TraceRow& row : record.trace) kls.push_back(row.kl);
                    traces.push_back(std::move(kls));
                }
                const std::size_t rows = traces.front().size();
                for (std::size_t t = 0; t < rows; ++t) {
                    std::vector<double> at_t;
                    at_t.reserve(traces.size());
                    for (const auto& trace : traces) at_t.push_back(trace[t]);
                    cell.kl_trace.push_back(bootstrap_median_ci(
                        at_t, kDefaultResamples,
                        rng::derive(options.seed, static_cast<std::uint64_t>(size),
                                    1000 * ti + static_cast<std::uint64_t>(depth), t)));
                }
                cell.final_summary = cell.kl_trace.back();
                result.cells.push_back(std::move(cell));
            }
    return result;
}

void write_thermal_outputs(const ThermalSuiteResult& result,
                           const std::filesystem::path& out_dir) {
    std::ostringstream csv;
    csv << "# seed=" << result.options.seed << " instances=" << result.options.instances
        << " iterations=" << result.options.iterations
        << " shots=" << result.options.shots << "\n";
    csv << "num_qubits,temperature,layers,iteration,kl_median,kl_lower,kl_upper,excluded\n";
    for (const ThermalCell& cell : result.cells)
        for (std::size_t t = 0; t < cell.kl_trace.size(); ++t) {
            const BootstrapSummary& s = cell.kl_trace[t];
            csv << cell.size << ',' << format_double(cell.temperature) << ','
                << cell.depth << ',' << t << ',' << format_double(s.center) << ','
                << format_double(s.lower) << ',' << format_double(s.upper) << ','
                << s.excluded << "\n";
        }
    write_text_atomic(out_dir / "thermal_suite.csv", csv.str());

    json cells = json::array();
    for (const ThermalCell& cell : result.cells)
        cells.push_back({{"num_qubits", cell.size},
                         {"temperature", cell.temperature},
                         {"layers", cell.depth},
                         {"final", bootstrap_to_json(cell.final_summary)}});
    json summary{{"instances", result.options.instances},
                 {"iterations", result.options.iterations},
                 {"shots", result.options.shots},
                 {"seed", result.options.seed},
                 {"cells", cells}};
    write_text_atomic(out_dir / "thermal_summary.json", summary.dump(2) + "\n");
}

json GhzVerifyReport::to_json() const {
    json entries_json = json::array();
    for (const Entry& e : entries)
        entries_json.push_back({{"num_qubits", e.num_qubits},
                                {"pass", e.pass},
                                {"max_deviation", e.max_deviation}});
    return json{{"entries", entries_json}, {"all_pass", all_pass}};
}

GhzVerifyReport verify_ghz_recipes(int max_qubits) {
    if (max_qubits < 2 || max_qubits > 12)
        throw ArgumentError("GHZ verification covers 2..12 qubits");
    GhzVerifyReport report;
    for (int n = 2; n <= max_qubits; ++n) {
        GhzVerifyReport::Entry entry;
        entry.num_qubits = n;
        try {
            const GhzRecipe recipe = build_ghz_recipe(n);
            const EmpiricalDistribution probs =
                recipe.circuit.execute(recipe.params).probabilities();
            const std::uint64_t top = (std::uint64_t{1} << n) - 1;
            double deviation = std::max(std::abs(probs.probability(0) - 0.5),
                                        std::abs(probs.probability(top) - 0.5));
            for (const auto& [index, p] : probs.support())
                if (index != 0 && index != top) deviation = std::max(deviation, p);
            entry.max_deviation = deviation;
            entry.pass = deviation <= 1e-9;
        } catch (const std::exception&) {
            entry.pass = false;
            entry.max_deviation = std::numeric_limits<double>::infinity();
        }
        report.all_pass = report.all_pass && entry.pass;
        report.entries.push_back(entry);
    }
    return report;
}

void write_entropy_surface(const std::filesystem::path& csv_path, int grid_size) {
    if (grid_size < 2) throw ArgumentError("grid size must be >= 2");
    std::ostringstream csv;
    csv << "v1,v2,entropy_bits\n";
    const double step = 2.0 * std::numbers::pi / grid_size;
    for (int i = 0; i < grid_size; ++i)
        for (int j = 0; j < grid_size; ++j) {
            const double v1 = i * step;
            const double v2 = j * step;
            csv << format_double(v1) << ',' << format_double(v2) << ','
                << format_double(s_bas22_closed_form(v1, v2)) << "\n";
        }
    write_text_atomic(csv_path, csv.str());
}

}  // namespace qcbm
