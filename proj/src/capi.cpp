#include "qcbm.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "circuit.hpp"
#include "costs.hpp"
#include "datasets.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "qbas.hpp"
#include "runner.hpp"
#include "statevector.hpp"

struct qcbm_state {
    qcbm::StateVector impl;
};

struct qcbm_dist {
    qcbm::EmpiricalDistribution impl;
};

struct qcbm_circuit {
    qcbm::CircuitTemplate impl;
};

namespace {

thread_local std::string g_last_error;

qcbm_status fail(qcbm_status status, const char* what) {
    g_last_error = what;
    return status;
}

// Runs the body and maps C++ exceptions onto status codes.
template <typename Fn>
qcbm_status wrap(Fn&& fn) {
    try {
        fn();
        return QCBM_OK;
    } catch (const qcbm::CapacityError& e) {
        return fail(QCBM_ERR_CAPACITY, e.what());
    } catch (const qcbm::IndexError& e) {
        return fail(QCBM_ERR_INDEX, e.what());
    } catch (const qcbm::ConfigError& e) {
        return fail(QCBM_ERR_CONFIG, e.what());
    } catch (const qcbm::IoError& e) {
        return fail(QCBM_ERR_IO, e.what());
    } catch (const qcbm::ArgumentError& e) {
        return fail(QCBM_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(QCBM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QCBM_ERR_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void maybe_return_json(char** out, const nlohmann::json& j) {
    if (out) *out = copy_string(j.dump(2) + "\n");
}

qcbm::ExperimentConfig load_config(const char* config_path,
                                   const qcbm_run_overrides* overrides) {
    if (!config_path) throw qcbm::ArgumentError("config path is null");
    auto config = qcbm::ExperimentConfig::from_file(config_path);
    if (overrides) {
        if (overrides->seed >= 0) config.seed = static_cast<std::uint64_t>(overrides->seed);
        if (overrides->shots > 0) config.shots = overrides->shots;
        if (overrides->iterations > 0)
            config.iterations = static_cast<int>(overrides->iterations);
        if (overrides->restarts > 0)
            config.restarts = static_cast<int>(overrides->restarts);
        if (overrides->out_dir) config.output_dir = overrides->out_dir;
    }
    config.validate();
    if (config.output_dir.empty())
        throw qcbm::ConfigError("output_dir", "missing (set it in the config or override)");
    return config;
}

}  // namespace

extern "C" {

const char* qcbm_status_name(qcbm_status status) {
    switch (status) {
        case QCBM_OK: return "ok";
        case QCBM_ERR_ARGUMENT: return "argument_error";
        case QCBM_ERR_INDEX: return "index_error";
        case QCBM_ERR_CAPACITY: return "capacity_error";
        case QCBM_ERR_CONFIG: return "config_error";
        case QCBM_ERR_IO: return "io_error";
        case QCBM_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* qcbm_last_error(void) { return g_last_error.c_str(); }

const char* qcbm_version(void) { return "1.0.0"; }

void qcbm_string_free(char* text) { delete[] text; }

qcbm_status qcbm_state_create(int num_qubits, qcbm_state** out) {
    return wrap([&] {
        if (!out) throw qcbm::ArgumentError("out pointer is null");
        *out = new qcbm_state{qcbm::StateVector(num_qubits)};
    });
}

void qcbm_state_free(qcbm_state* state) { delete state; }

int qcbm_state_num_qubits(const qcbm_state* state) {
    return state ? state->impl.num_qubits() : 0;
}

qcbm_status qcbm_state_rz(qcbm_state* state, int qubit, double theta) {
    return wrap([&] {
        if (!state) throw qcbm::ArgumentError("state handle is null");
        state->impl.apply_rz(qubit, theta);
    });
}

qcbm_status qcbm_state_rx(qcbm_state* state, int qubit, double theta) {
    return wrap([&] {
        if (!state) throw qcbm::ArgumentError("state handle is null");
        state->impl.apply_rx(qubit, theta);
    });
}

qcbm_status qcbm_state_xx(qcbm_state* state, int qubit_i, int qubit_j, double theta) {
    return wrap([&] {
        if (!state) throw qcbm::ArgumentError("state handle is null");
        state->impl.apply_xx(qubit_i, qubit_j, theta);
    });
}

qcbm_status qcbm_state_gms(qcbm_state* state, double theta) {
    return wrap([&] {
        if (!state) throw qcbm::ArgumentError("state handle is null");
        state->impl.apply_gms(theta);
    });
}

qcbm_status qcbm_state_amplitudes(const qcbm_state* state, double* re, double* im,
                                  size_t len) {
    return wrap([&] {
        if (!state || !re || !im) throw qcbm::ArgumentError("null pointer argument");
        const auto& amps = state->impl.amplitudes();
        if (len < amps.size()) throw qcbm::ArgumentError("buffer too small");
        for (std::size_t i = 0; i < amps.size(); ++i) {
            re[i] = amps[i].real();
            im[i] = amps[i].imag();
        }
    });
}

void qcbm_dist_free(qcbm_dist* dist) { delete dist; }

int qcbm_dist_num_qubits(const qcbm_dist* dist) {
    return dist ? dist->impl.num_qubits() : 0;
}

double qcbm_dist_probability(const qcbm_dist* dist, uint64_t basis_index) {
    return dist ? dist->impl.probability(basis_index) : 0.0;
}

size_t qcbm_dist_support_size(const qcbm_dist* dist) {
    return dist ? dist->impl.support().size() : 0;
}

qcbm_status qcbm_state_probabilities(const qcbm_state* state, qcbm_dist** out) {
    return wrap([&] {
        if (!state || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = new qcbm_dist{state->impl.probabilities()};
    });
}

qcbm_status qcbm_state_sample(const qcbm_state* state, int64_t num_shots, uint64_t seed,
                              qcbm_dist** out) {
    return wrap([&] {
        if (!state || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = new qcbm_dist{state->impl.sample_distribution(num_shots, seed)};
    });
}

qcbm_status qcbm_dist_bas(int n, int m, qcbm_dist** out) {
    return wrap([&] {
        if (!out) throw qcbm::ArgumentError("out pointer is null");
        *out = new qcbm_dist{qcbm::bas_distribution(n, m)};
    });
}

qcbm_status qcbm_dist_ferromagnet(int num_qubits, qcbm_dist** out) {
    return wrap([&] {
        if (!out) throw qcbm::ArgumentError("out pointer is null");
        *out = new qcbm_dist{qcbm::ferromagnet_distribution(num_qubits)};
    });
}

qcbm_status qcbm_dist_thermal(int num_spins, double temperature, uint64_t instance_seed,
                              qcbm_dist** out) {
    return wrap([&] {
        if (!out) throw qcbm::ArgumentError("out pointer is null");
        *out = new qcbm_dist{qcbm::thermal_distribution(
            qcbm::random_ising_instance(num_spins, temperature, instance_seed))};
    });
}

qcbm_status qcbm_is_bas(uint64_t basis_index, int n, int m, int* out) {
    return wrap([&] {
        if (!out) throw qcbm::ArgumentError("out pointer is null");
        *out = qcbm::is_bas_index(basis_index, n, m) ? 1 : 0;
    });
}

qcbm_status qcbm_kl_divergence(const qcbm_dist* target, const qcbm_dist* model,
                               double* out) {
    return wrap([&] {
        if (!target || !model || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = qcbm::kl_divergence(target->impl, model->impl);
    });
}

qcbm_status qcbm_cost_nll(const uint64_t* data, size_t len, const qcbm_dist* model,
                          double epsilon, double* out) {
    return wrap([&] {
        if (!data || !model || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = qcbm::cost_nll({data, len}, model->impl, epsilon);
    });
}

qcbm_status qcbm_cost_emd(const qcbm_dist* target, const qcbm_dist* model, double* out) {
    return wrap([&] {
        if (!target || !model || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = qcbm::cost_emd(target->impl, model->impl);
    });
}

qcbm_status qcbm_cost_mm(const qcbm_dist* target, const qcbm_dist* model, double* out) {
    return wrap([&] {
        if (!target || !model || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = qcbm::cost_mm(target->impl, model->impl);
    });
}

qcbm_status qcbm_circuit_create(int num_qubits, int num_layers, const char* topology,
                                qcbm_circuit** out) {
    return wrap([&] {
        if (!topology || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = new qcbm_circuit{qcbm::CircuitTemplate(
            num_qubits, num_layers, qcbm::topology_from_name(topology))};
    });
}

void qcbm_circuit_free(qcbm_circuit* circuit) { delete circuit; }

int qcbm_circuit_param_count(const qcbm_circuit* circuit) {
    return circuit ? circuit->impl.param_count() : 0;
}

qcbm_status qcbm_circuit_execute(const qcbm_circuit* circuit, const double* params,
                                 size_t len, qcbm_state** out) {
    return wrap([&] {
        if (!circuit || !out || (!params && len > 0))
            throw qcbm::ArgumentError("null pointer argument");
        *out = new qcbm_state{circuit->impl.execute({params, len})};
    });
}

qcbm_status qcbm_ghz_recipe(int num_qubits, qcbm_circuit** circuit, double* params,
                            size_t cap, size_t* param_len) {
    return wrap([&] {
        auto recipe = qcbm::build_ghz_recipe(num_qubits);
        if (param_len) *param_len = recipe.params.size();
        if (params) {
            if (cap < recipe.params.size())
                throw qcbm::ArgumentError("params buffer too small");
            std::memcpy(params, recipe.params.data(),
                        recipe.params.size() * sizeof(double));
        }
        if (circuit) *circuit = new qcbm_circuit{std::move(recipe.circuit)};
    });
}

int64_t qcbm_coupon_collector_reads(int64_t num_patterns) {
    if (num_patterns < 1) return -1;
    return qcbm::coupon_collector_reads(num_patterns);
}

qcbm_status qcbm_qbas_score(const qcbm_state* state, int n, int m, int repetitions,
                            uint64_t seed, double* mean_score, double* precision,
                            double* scores) {
    return wrap([&] {
        if (!state) throw qcbm::ArgumentError("state handle is null");
        const auto report = qcbm::qbas_score(state->impl, n, m, repetitions, seed);
        if (mean_score) *mean_score = report.mean_score();
        if (precision) *precision = report.precision;
        if (scores)
            std::memcpy(scores, report.scores.data(),
                        report.scores.size() * sizeof(double));
    });
}

qcbm_status qcbm_avg_two_qubit_entropy(const qcbm_state* state, double* out) {
    return wrap([&] {
        if (!state || !out) throw qcbm::ArgumentError("null pointer argument");
        *out = qcbm::avg_two_qubit_entropy(state->impl);
    });
}

qcbm_status qcbm_s_bas22(double v1, double v2, double* out) {
    return wrap([&] {
        if (!out) throw qcbm::ArgumentError("out pointer is null");
        *out = qcbm::s_bas22_closed_form(v1, v2);
    });
}

qcbm_status qcbm_run_train(const char* config_path, const qcbm_run_overrides* overrides,
                           char** summary_json) {
    return wrap([&] {
        const auto config = load_config(config_path, overrides);
        const auto result = qcbm::run_ddqcl(config);
        qcbm::write_train_outputs(result, config.output_dir);
        maybe_return_json(summary_json,
                          nlohmann::json::parse(
                              qcbm::read_text(std::filesystem::path(config.output_dir) /
                                              "summary.json")));
    });
}

qcbm_status qcbm_run_qbas(const char* config_path, const qcbm_run_overrides* overrides,
                          int repetitions, char** report_json) {
    return wrap([&] {
        const auto config = load_config(config_path, overrides);
        const auto result = qcbm::run_ddqcl(config);
        qcbm::write_train_outputs(result, config.output_dir);
        const auto benchmark = qcbm::run_qbas_benchmark(config, result, repetitions);
        const auto j = benchmark.to_json();
        qcbm::write_text_atomic(
            std::filesystem::path(config.output_dir) / "qbas_report.json",
            j.dump(2) + "\n");
        maybe_return_json(report_json, j);
    });
}

qcbm_status qcbm_run_qbas_dir(const char* run_dir, int repetitions, int64_t seed,
                              char** report_json) {
    return wrap([&] {
        if (!run_dir) throw qcbm::ArgumentError("run directory is null");
        const auto loaded = qcbm::load_run_summary(run_dir);
        if (loaded.config.dataset.kind != "bas")
            throw qcbm::ArgumentError("run directory was not trained on a BAS dataset");
        const auto state = loaded.config.circuit().execute(loaded.best_params);
        auto benchmark = qcbm::qbas_benchmark_for_state(
            state, loaded.config.dataset.n, loaded.config.dataset.m, repetitions,
            seed >= 0 ? static_cast<std::uint64_t>(seed) : loaded.config.seed);
        benchmark.config_hash = loaded.config.hash();
        const auto j = benchmark.to_json();
        qcbm::write_text_atomic(std::filesystem::path(run_dir) / "qbas_report.json",
                                j.dump(2) + "\n");
        maybe_return_json(report_json, j);
    });
}

qcbm_status qcbm_run_score_shots(const char* shots_path, int n, int m,
                                 const char* out_path, char** report_json) {
    return wrap([&] {
        if (!shots_path) throw qcbm::ArgumentError("shots path is null");
        const auto dataset = qcbm::read_samples(shots_path);
        if (dataset.num_qubits != n * m)
            throw qcbm::ArgumentError("shot strings do not match the BAS grid size");
        const auto report = qcbm::qbas_score_from_shots(dataset.samples, n, m);
        nlohmann::json j{{"n", report.n},
                         {"m", report.m},
                         {"num_reads", report.num_reads},
                         {"precision", report.precision},
                         {"recalls", report.recalls},
                         {"scores", report.scores},
                         {"mean_score", report.mean_score()},
                         {"pooled_samples", report.pooled_samples},
                         {"source", shots_path}};
        if (out_path) qcbm::write_text_atomic(out_path, j.dump(2) + "\n");
        maybe_return_json(report_json, j);
    });
}

qcbm_status qcbm_run_thermal_suite(const qcbm_thermal_options* options,
                                   const char* out_dir, char** summary_json) {
    return wrap([&] {
        if (!out_dir) throw qcbm::ArgumentError("output directory is null");
        qcbm::ThermalSuiteOptions opts;
        if (options) {
            if (options->sizes && options->num_sizes)
                opts.sizes.assign(options->sizes, options->sizes + options->num_sizes);
            if (options->temperatures && options->num_temperatures)
                opts.temperatures.assign(
                    options->temperatures,
                    options->temperatures + options->num_temperatures);
            if (options->depths && options->num_depths)
                opts.depths.assign(options->depths, options->depths + options->num_depths);
            if (options->instances > 0) opts.instances = options->instances;
            if (options->iterations > 0) opts.iterations = options->iterations;
            if (options->shots > 0) opts.shots = options->shots;
            opts.seed = options->seed;
        }
        const auto result = qcbm::run_thermal_suite(opts);
        qcbm::write_thermal_outputs(result, out_dir);
        maybe_return_json(summary_json,
                          nlohmann::json::parse(qcbm::read_text(
                              std::filesystem::path(out_dir) / "thermal_summary.json")));
    });
}

qcbm_status qcbm_run_ghz_verify(int max_qubits, const char* out_path,
                                char** report_json) {
    return wrap([&] {
        const auto report = qcbm::verify_ghz_recipes(max_qubits);
        const auto j = report.to_json();
        if (out_path) qcbm::write_text_atomic(out_path, j.dump(2) + "\n");
        maybe_return_json(report_json, j);
    });
}

qcbm_status qcbm_run_entropy_surface(int grid_size, const char* out_csv) {
    return wrap([&] {
        if (!out_csv) throw qcbm::ArgumentError("output path is null");
        qcbm::write_entropy_surface(out_csv, grid_size);
    });
}

}  // extern "C"
