#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "rng.hpp"

namespace qcbm::pso {

struct SwarmConfig {
    double cognition = 0.5;  // c1
    double social = 0.5;     // c2
    double inertia = 0.5;    // w
    double max_step = std::numbers::pi;  // per-dimension velocity clamp
    int num_particles = 0;
    int max_iterations = 100;
    std::uint64_t rng_seed = 0;
};

// Fixed defaults: c1 = c2 = w = 0.5, clamp pi, particles = 2 * dimension.
SwarmConfig default_config(int param_dim);

// Objectives may be stochastic; the context identifies the evaluation so
// shot noise can be seeded independently of evaluation order.
struct EvalContext {
    std::int64_t iteration = 0;
    int particle = 0;
};
using Objective = std::function<double(std::span<const double>, const EvalContext&)>;

struct SwarmState {
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> velocities;
    std::vector<std::vector<double>> personal_best;
    std::vector<double> personal_best_cost;
    std::vector<double> global_best;
    double global_best_cost = 0.0;
    std::int64_t iteration = 0;
    rng::Engine engine;
};

// Positions start uniform in [-pi, pi)^dim, velocities uniform in
// [-max_step/2, max_step/2)^dim; every particle is evaluated once.
SwarmState init_swarm(const SwarmConfig& config, int param_dim,
                      const Objective& objective);

// One synchronous global-best update:
//   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x),  |v_k| <= max_step,
//   x <- x + v,
// then fresh evaluations update the bests (stored best costs are never
// re-evaluated). Positions are not wrapped; angles wrap at gate application.
void step(SwarmState& state, const SwarmConfig& config, const Objective& objective);

using Observer = std::function<void(const SwarmState&)>;

struct RunResult {
    std::vector<double> best_position;
    double best_cost = 0.0;
    std::vector<double> trace;  // global best cost after each iteration
    std::int64_t iterations = 0;
};

// Runs until config.max_iterations, or until the global best has not
// improved by more than 1e-12 for more than `patience` consecutive
// iterations. The observer (if any) runs after every iteration and must not
// mutate shared state; it exists for logging and never perturbs the
// optimization or its RNG stream.
RunResult run(const SwarmConfig& config, int param_dim, const Objective& objective,
              int patience = 20, const Observer& observer = {});

}  // namespace qcbm::pso
