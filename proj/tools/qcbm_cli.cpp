// Command-line front end. Links only the C API from include/qcbm.h; all
// functionality lives in libqcbm.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcbm.h"

namespace {

struct OverrideFlags {
    std::int64_t seed = -1;
    std::int64_t shots = -1;
    std::int64_t iterations = -1;
    std::int64_t restarts = -1;
    std::string out_dir;

    qcbm_run_overrides to_c() const {
        qcbm_run_overrides o{};
        o.seed = seed;
        o.shots = shots;
        o.iterations = iterations;
        o.restarts = restarts;
        o.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();
        return o;
    }
};

void add_override_flags(CLI::App* cmd, OverrideFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Override the base RNG seed");
    cmd->add_option("--shots", flags.shots, "Override measurements per cost evaluation");
    cmd->add_option("--iterations", flags.iterations, "Override optimizer iterations");
    cmd->add_option("--restarts", flags.restarts, "Override random restarts");
    cmd->add_option("--out", flags.out_dir, "Override the output directory");
}

int report(qcbm_status status, char* json) {
    if (json) {
        std::fputs(json, stdout);
        qcbm_string_free(json);
    }
    if (status != QCBM_OK) {
        std::fprintf(stderr, "error (%s): %s\n", qcbm_status_name(status),
                     qcbm_last_error());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcbm - train and benchmark quantum circuit Born machines"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qcbm_version()));

    // train
    std::string train_config;
    OverrideFlags train_flags;
    auto* train = app.add_subcommand("train", "Run the DDQCL training loop");
    train->add_option("config", train_config, "Experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    add_override_flags(train, train_flags);

    // qbas
    std::string qbas_config, qbas_dir, qbas_shots_file;
    OverrideFlags qbas_flags;
    int qbas_reps = 25;
    int qbas_n = 2, qbas_m = 2;
    std::int64_t qbas_seed = -1;
    auto* qbas = app.add_subcommand("qbas", "Train (or load a run) and score with qBAS");
    qbas->add_option("--config", qbas_config, "Train per this config, then score")
        ->check(CLI::ExistingFile);
    qbas->add_option("--run-dir", qbas_dir, "Score an existing training run directory");
    qbas->add_option("--shots-file", qbas_shots_file, "Score a measurement file instead")
        ->check(CLI::ExistingFile);
    qbas->add_option("-n", qbas_n, "BAS rows (shots-file mode)");
    qbas->add_option("-m", qbas_m, "BAS columns (shots-file mode)");
    qbas->add_option("--repetitions", qbas_reps, "Score repetitions R");
    qbas->add_option("--score-seed", qbas_seed, "Seed for the scoring shots (run-dir mode)");
    add_override_flags(qbas, qbas_flags);

    // score-shots
    std::string shots_file, shots_out;
    int shots_n = 2, shots_m = 2;
    auto* score =
        app.add_subcommand("score-shots", "qBAS-score an external measurement file");
    score->add_option("file", shots_file, "Shot file, one '0'/'1' string per line")
        ->required()
        ->check(CLI::ExistingFile);
    score->add_option("-n", shots_n, "BAS rows")->required();
    score->add_option("-m", shots_m, "BAS columns")->required();
    score->add_option("--out", shots_out, "Write the report JSON here");

    // thermal-suite
    std::vector<int> th_sizes;
    std::vector<double> th_temps;
    std::vector<int> th_depths;
    int th_instances = 0, th_iterations = 0;
    std::int64_t th_shots = 0, th_seed = 0;
    std::string th_out;
    auto* thermal =
        app.add_subcommand("thermal-suite", "KL-vs-depth table over thermal datasets");
    thermal->add_option("--sizes", th_sizes, "Spin counts (default 5 6)");
    thermal->add_option("--temperatures", th_temps, "Temperatures (default 2 1 0.666...)");
    thermal->add_option("--depths", th_depths, "Circuit depths (default 1 2 3)");
    thermal->add_option("--instances", th_instances, "Random instances per cell (default 25)");
    thermal->add_option("--iterations", th_iterations, "Optimizer iterations (default 50)");
    thermal->add_option("--shots", th_shots, "Measurements per evaluation (default 1000)");
    thermal->add_option("--seed", th_seed, "Base RNG seed");
    thermal->add_option("--out", th_out, "Output directory")->required();

    // ghz-verify
    int ghz_max = 12;
    std::string ghz_out;
    auto* ghz = app.add_subcommand("ghz-verify", "Check the GHZ recipes for N = 2..max");
    ghz->add_option("--max-qubits", ghz_max, "Largest register to verify (2..12)");
    ghz->add_option("--out", ghz_out, "Write the report JSON here");

    // entropy-surface
    int grid = 32;
    std::string surface_out = "entropy_surface.csv";
    auto* surface =
        app.add_subcommand("entropy-surface", "Export the BAS(2,2) entropy surface CSV");
    surface->add_option("--grid", grid, "Grid points per axis (default 32)");
    surface->add_option("--out", surface_out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    char* json = nullptr;
    qcbm_status status = QCBM_OK;
    if (train->parsed()) {
        const auto o = train_flags.to_c();
        status = qcbm_run_train(train_config.c_str(), &o, &json);
    } else if (qbas->parsed()) {
        if (!qbas_config.empty()) {
            const auto o = qbas_flags.to_c();
            status = qcbm_run_qbas(qbas_config.c_str(), &o, qbas_reps, &json);
        } else if (!qbas_dir.empty()) {
            status = qcbm_run_qbas_dir(qbas_dir.c_str(), qbas_reps, qbas_seed, &json);
        } else if (!qbas_shots_file.empty()) {
            status = qcbm_run_score_shots(qbas_shots_file.c_str(), qbas_n, qbas_m, nullptr,
                                          &json);
        } else {
            std::fprintf(stderr, "qbas needs --config, --run-dir, or --shots-file\n");
            return 1;
        }
    } else if (score->parsed()) {
        status = qcbm_run_score_shots(shots_file.c_str(), shots_n, shots_m,
                                      shots_out.empty() ? nullptr : shots_out.c_str(),
                                      &json);
    } else if (thermal->parsed()) {
        qcbm_thermal_options o{};
        o.sizes = th_sizes.empty() ? nullptr : th_sizes.data();
        o.num_sizes = th_sizes.size();
        o.temperatures = th_temps.empty() ? nullptr : th_temps.data();
        o.num_temperatures = th_temps.size();
        o.depths = th_depths.empty() ? nullptr : th_depths.data();
        o.num_depths = th_depths.size();
        o.instances = th_instances;
        o.iterations = th_iterations;
        o.shots = th_shots;
        o.seed = static_cast<std::uint64_t>(th_seed);
        status = qcbm_run_thermal_suite(&o, th_out.c_str(), &json);
    } else if (ghz->parsed()) {
        status = qcbm_run_ghz_verify(ghz_max, ghz_out.empty() ? nullptr : ghz_out.c_str(),
                                     &json);
    } else if (surface->parsed()) {
        status = qcbm_run_entropy_surface(grid, surface_out.c_str());
        if (status == QCBM_OK) std::printf("wrote %s\n", surface_out.c_str());
    }
    return report(status, json);
}
