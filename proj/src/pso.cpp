#include "pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace qcbm::pso {

namespace {

constexpr double kImprovementTolerance = 1e-12;

void check_config(const SwarmConfig& config, int param_dim) {
    if (param_dim < 1) throw ArgumentError("parameter dimension must be >= 1");
    if (config.cognition < 0 || config.social < 0 || config.inertia < 0)
        throw ArgumentError("swarm coefficients must be nonnegative");
    if (!(config.max_step > 0)) throw ArgumentError("max_step must be positive");
    if (config.num_particles < 2) throw ArgumentError("swarm needs at least 2 particles");
}

double evaluate(const Objective& objective, std::span<const double> position,
                const EvalContext& ctx) {
    try {
        return objective(position, ctx);
    } catch (...) {
        std::throw_with_nested(std::runtime_error(
            "objective evaluation failed for particle " + std::to_string(ctx.particle) +
            " at iteration " + std::to_string(ctx.iteration)));
    }
}

void refresh_global_best(SwarmState& state) {
    for (std::size_t p = 0; p < state.personal_best.size(); ++p)
        if (state.personal_best_cost[p] < state.global_best_cost) {
            state.global_best_cost = state.personal_best_cost[p];
            state.global_best = state.personal_best[p];
        }
}

}  // namespace

SwarmConfig default_config(int param_dim) {
    if (param_dim < 1) throw ArgumentError("parameter dimension must be >= 1");
    SwarmConfig config;
    config.num_particles = 2 * param_dim;
    return config;
}

SwarmState init_swarm(const SwarmConfig& config, int param_dim,
                      const Objective& objective) {
    check_config(config, param_dim);
    SwarmState state;
    state.engine = rng::make_engine(config.rng_seed, rng::kSwarm);
    state.positions.resize(config.num_particles);
    state.velocities.resize(config.num_particles);
    const double vmax = config.max_step / 2.0;
    for (int p = 0; p < config.num_particles; ++p) {
        auto& x = state.positions[p];
        auto& v = state.velocities[p];
        x.resize(param_dim);
        v.resize(param_dim);
        for (int k = 0; k < param_dim; ++k)
            x[k] = rng::uniform(state.engine, -std::numbers::pi, std::numbers::pi);
        for (int k = 0; k < param_dim; ++k)
            v[k] = rng::uniform(state.engine, -vmax, vmax);
    }
    state.personal_best = state.positions;
    state.personal_best_cost.resize(config.num_particles);
    for (int p = 0; p < config.num_particles; ++p)
        state.personal_best_cost[p] =
            evaluate(objective, state.positions[p], {state.iteration, p});
    state.global_best_cost = std::numeric_limits<double>::infinity();
    refresh_global_best(state);
    return state;
}

void step(SwarmState& state, const SwarmConfig& config, const Objective& objective) {
    const std::size_t dim = state.global_best.size();
    ++state.iteration;
    // All velocity updates see the global best from the previous iteration.
    for (std::size_t p = 0; p < state.positions.size(); ++p) {
        auto& x = state.positions[p];
        auto& v = state.velocities[p];
        const auto& pb = state.personal_best[p];
        for (std::size_t k = 0; k < dim; ++k) {
            const double r1 = rng::uniform01(state.engine);
            const double r2 = rng::uniform01(state.engine);
            double vk = config.inertia * v[k] +
                        config.cognition * r1 * (pb[k] - x[k]) +
                        config.social * r2 * (state.global_best[k] - x[k]);
            vk = std::clamp(vk, -config.max_step, config.max_step);
            v[k] = vk;
            x[k] += vk;
        }
    }
    for (std::size_t p = 0; p < state.positions.size(); ++p) {
        const double cost = evaluate(objective, state.positions[p],
                                     {state.iteration, static_cast<int>(p)});
        if (cost < state.personal_best_cost[p]) {
            state.personal_best_cost[p] = cost;
            state.personal_best[p] = state.positions[p];
        }
    }
    refresh_global_best(state);
}

RunResult run(const SwarmConfig& config, int param_dim, const Objective& objective,
              int patience, const Observer& observer) {
    SwarmState state = init_swarm(config, param_dim, objective);
    if (observer) observer(state);
    RunResult result;
    int stall = 0;
    double last_best = state.global_best_cost;
    while (state.iteration < config.max_iterations) {
        step(state, config, objective);
        result.trace.push_back(state.global_best_cost);
        if (observer) observer(state);
        if (last_best - state.global_best_cost > kImprovementTolerance)
            stall = 0;
        else
            ++stall;
        last_best = state.global_best_cost;
        if (stall > patience) break;
    }
    result.best_position = state.global_best;
    result.best_cost = state.global_best_cost;
    result.iterations = state.iteration;
    return result;
}

}  // namespace qcbm::pso
