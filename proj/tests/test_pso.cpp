#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "errors.hpp"
#include "pso.hpp"
#include "rng.hpp"

using namespace qcbm;
using std::numbers::pi;

namespace {

// Deterministic test objectives ignore the evaluation context.
pso::Objective plain(double (*fn)(std::span<const double>)) {
    return [fn](std::span<const double> x, const pso::EvalContext&) { return fn(x); };
}

double sphere(std::span<const double> x) {
    const double ax = x[0] - 1.2;
    const double ay = x[1] + 0.4;
    return ax * ax + ay * ay;
}

double flat(std::span<const double>) { return 1.0; }

}  // namespace

TEST_CASE("default config follows the fixed hyperparameters") {
    const auto config = pso::default_config(14);
    CHECK(config.cognition == 0.5);
    CHECK(config.social == 0.5);
    CHECK(config.inertia == 0.5);
    CHECK(config.num_particles == 28);
    CHECK(config.max_step == pi);
    CHECK(pso::default_config(1).num_particles == 2);
    CHECK_THROWS_AS(pso::default_config(0), ArgumentError);
}

TEST_CASE("swarm initialization") {
    auto config = pso::default_config(3);
    config.rng_seed = 5;
    const auto a = pso::init_swarm(config, 3, plain(flat));
    const auto b = pso::init_swarm(config, 3, plain(flat));
    CHECK(a.positions == b.positions);
    CHECK(a.velocities == b.velocities);

    for (const auto& x : a.positions)
        for (double v : x) {
            CHECK(v >= -pi);
            CHECK(v < pi);
        }
    for (const auto& vel : a.velocities)
        for (double v : vel) {
            CHECK(v >= -pi / 2);
            CHECK(v < pi / 2);
        }

    double best = a.personal_best_cost[0];
    for (double c : a.personal_best_cost) best = std::min(best, c);
    CHECK(a.global_best_cost == best);
}

TEST_CASE("converges on a 2d quadratic") {
    // Default coefficients with a swarm large enough to avoid the stagnation
    // a 4-particle swarm is prone to.
    auto config = pso::default_config(2);
    config.num_particles = 20;
    config.rng_seed = 17;
    config.max_iterations = 200;
    const auto result = pso::run(config, 2, plain(sphere), 200);
    CHECK(result.best_cost < 1e-4);
    CHECK(result.best_position[0] == doctest::Approx(1.2).epsilon(0.05));
    CHECK(result.best_position[1] == doctest::Approx(-0.4).epsilon(0.05));
}

TEST_CASE("global best never increases") {
    auto config = pso::default_config(4);
    config.rng_seed = 23;
    config.max_iterations = 100;
    // A rough multi-modal surface.
    const auto result = pso::run(config, 4, plain([](std::span<const double> x) {
                                     double v = 0.0;
                                     for (double xi : x)
                                         v += xi * xi + 2.0 * std::sin(3.0 * xi);
                                     return v;
                                 }),
                                 100);
    for (std::size_t i = 1; i < result.trace.size(); ++i)
        CHECK(result.trace[i] <= result.trace[i - 1]);
}

TEST_CASE("stationary swarm is a fixed point") {
    auto config = pso::default_config(2);
    config.rng_seed = 3;
    auto state = pso::init_swarm(config, 2, plain(flat));
    // Park every particle on the global best with zero velocity.
    for (auto& x : state.positions) x = state.global_best;
    for (auto& pb : state.personal_best) pb = state.global_best;
    for (auto& v : state.velocities) v.assign(2, 0.0);
    for (auto& c : state.personal_best_cost) c = state.global_best_cost;
    pso::step(state, config, plain(flat));
    for (const auto& x : state.positions) CHECK(x == state.global_best);
    for (const auto& v : state.velocities) CHECK(v == std::vector<double>{0.0, 0.0});
}

TEST_CASE("flat objective stops after patience runs out") {
    auto config = pso::default_config(2);
    config.rng_seed = 9;
    config.max_iterations = 1000;
    const auto result = pso::run(config, 2, plain(flat), 10);
    CHECK(result.iterations == 11);
    CHECK(result.trace.size() == 11);
}

TEST_CASE("max_iterations dominates while progress continues") {
    auto config = pso::default_config(2);
    config.rng_seed = 29;
    config.max_iterations = 100;
    const auto result = pso::run(config, 2, plain(sphere), 30);
    CHECK(result.iterations <= 100);
    CHECK(result.trace.size() == static_cast<std::size_t>(result.iterations));
}

TEST_CASE("velocity clamp is respected") {
    auto config = pso::default_config(2);
    config.rng_seed = 41;
    config.max_step = 0.3;
    config.max_iterations = 50;
    // Far-away optimum encourages large steps.
    const auto pull = plain([](std::span<const double> x) {
        const double dx = x[0] - 40.0;
        const double dy = x[1] - 40.0;
        return dx * dx + dy * dy;
    });
    pso::Observer check_velocity = [&](const pso::SwarmState& state) {
        for (const auto& v : state.velocities)
            for (double vk : v) CHECK(std::abs(vk) <= 0.3 + 1e-15);
    };
    pso::run(config, 2, pull, 50, check_velocity);
}

TEST_CASE("bit-identical traces under a fixed seed") {
    auto config = pso::default_config(3);
    config.rng_seed = 77;
    config.max_iterations = 60;
    const auto a = pso::run(config, 3, plain(sphere), 60);
    const auto b = pso::run(config, 3, plain(sphere), 60);
    CHECK(a.trace == b.trace);
    CHECK(a.best_position == b.best_position);
}

TEST_CASE("stored personal bests are never re-evaluated") {
    // A stochastic objective keyed on (iteration, particle): each personal
    // best must match some value actually returned that iteration, and can
    // only ever decrease.
    auto config = pso::default_config(2);
    config.rng_seed = 55;
    config.max_iterations = 40;
    std::set<double> returned;
    pso::Objective noisy = [&](std::span<const double> x, const pso::EvalContext& ctx) {
        auto eng = rng::make_engine(900, static_cast<std::uint64_t>(ctx.iteration),
                                    static_cast<std::uint64_t>(ctx.particle));
        const double v = x[0] * x[0] + x[1] * x[1] + rng::uniform01(eng);
        returned.insert(v);
        return v;
    };
    std::vector<double> last_best;
    pso::Observer watch = [&](const pso::SwarmState& state) {
        if (!last_best.empty())
            for (std::size_t p = 0; p < state.personal_best_cost.size(); ++p) {
                CHECK(state.personal_best_cost[p] <= last_best[p] + 1e-15);
                if (state.personal_best_cost[p] < last_best[p] - 1e-15)
                    CHECK(returned.contains(state.personal_best_cost[p]));
            }
        last_best = state.personal_best_cost;
    };
    pso::run(config, 2, noisy, 40, watch);
}

TEST_CASE("objective failures carry the particle index") {
    auto config = pso::default_config(2);
    config.rng_seed = 1;
    pso::Objective broken = [](std::span<const double>, const pso::EvalContext& ctx) {
        if (ctx.particle == 1) throw std::domain_error("boom");
        return 0.0;
    };
    CHECK_THROWS_WITH_AS(pso::init_swarm(config, 2, broken),
                         "objective evaluation failed for particle 1 at iteration 0",
                         std::runtime_error);
}
