#include "costs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"

namespace qcbm {

namespace {

void check_same_system(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.num_qubits() != b.num_qubits())
        throw ArgumentError("distributions are over different qubit counts");
}

// Min-cost transportation by successive shortest paths with Johnson
// potentials. Supplies and demands are real-valued probabilities; forward
// edges are uncapacitated, so every augmentation exhausts the path's root
// supply, the sink's demand, or a backward (carried-flow) edge.
class TransportSolver {
public:
    TransportSolver(std::vector<double> supply, std::vector<double> demand,
                    std::vector<std::vector<double>> cost)
        : supply_(std::move(supply)),
          demand_(std::move(demand)),
          cost_(std::move(cost)),
          flow_(supply_.size(), std::vector<double>(demand_.size(), 0.0)),
          potential_(supply_.size() + demand_.size(), 0.0) {}

    double solve() {
        double remaining = 0.0;
        for (double s : supply_) remaining += s;
        std::size_t rounds = 0;
        while (remaining > kMassEps) {
            if (++rounds > kMaxRounds)
                throw std::logic_error("transportation solve failed to converge");
            remaining -= augment();
        }
        double total = 0.0;
        for (std::size_t i = 0; i < supply_.size(); ++i)
            for (std::size_t j = 0; j < demand_.size(); ++j)
                total += flow_[i][j] * cost_[i][j];
        return total;
    }

private:
    static constexpr double kFlowEps = 1e-15;
    static constexpr double kMassEps = 1e-12;
    static constexpr std::size_t kMaxRounds = 10000;

    // Node ids: sources are [0, ns), sinks are [ns, ns + nd).
    double augment() {
        const std::size_t ns = supply_.size();
        const std::size_t nd = demand_.size();
        const std::size_t n = ns + nd;
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> dist(n, inf);
        std::vector<int> prev(n, -1);
        std::vector<char> done(n, 0);
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

        for (std::size_t i = 0; i < ns; ++i)
            if (supply_[i] > kFlowEps) {
                dist[i] = 0.0;
                heap.emplace(0.0, i);
            }
        auto relax = [&](std::size_t from, std::size_t to, double reduced) {
            // Tiny negative reduced costs are floating-point noise.
            double candidate = dist[from] + std::max(reduced, 0.0);
            if (candidate < dist[to]) {
                dist[to] = candidate;
                prev[to] = static_cast<int>(from);
                heap.emplace(candidate, to);
            }
        };
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (done[u]) continue;
            done[u] = 1;
            if (u < ns) {
                for (std::size_t j = 0; j < nd; ++j)
                    relax(u, ns + j, cost_[u][j] + potential_[u] - potential_[ns + j]);
            } else {
                const std::size_t j = u - ns;
                for (std::size_t i = 0; i < ns; ++i)
                    if (flow_[i][j] > kFlowEps)
                        relax(u, i, -cost_[i][j] + potential_[u] - potential_[i]);
            }
        }

        std::size_t best = n;
        for (std::size_t j = 0; j < nd; ++j)
            if (demand_[j] > kFlowEps && dist[ns + j] < inf &&
                (best == n || dist[ns + j] < dist[best]))
                best = ns + j;
        if (best == n) throw std::logic_error("transportation problem is infeasible");

        for (std::size_t v = 0; v < n; ++v)
            if (dist[v] < inf) potential_[v] += dist[v];

        // Walk back to the root; only backward edges and the endpoints can
        // limit the pushed amount.
        std::size_t root = best;
        double bottleneck = demand_[best - ns];
        while (prev[root] != -1) {
            const auto p = static_cast<std::size_t>(prev[root]);
            if (p >= ns)  // backward edge (sink p -> source root)
                bottleneck = std::min(bottleneck, flow_[root][p - ns]);
            root = p;
        }
        bottleneck = std::min(bottleneck, supply_[root]);

        for (std::size_t v = best; prev[v] != -1;) {
            const auto p = static_cast<std::size_t>(prev[v]);
            if (p < ns)
                flow_[p][v - ns] += bottleneck;  // forward edge p -> v
            else
                flow_[v][p - ns] -= bottleneck;  // backward edge p -> v
            v = p;
        }
        supply_[root] -= bottleneck;
        demand_[best - ns] -= bottleneck;
        return bottleneck;
    }

    std::vector<double> supply_;
    std::vector<double> demand_;
    std::vector<std::vector<double>> cost_;
    std::vector<std::vector<double>> flow_;
    std::vector<double> potential_;
};

}  // namespace

CostKind cost_kind_from_name(std::string_view name) {
    if (name == "nll") return CostKind::Nll;
    if (name == "emd") return CostKind::Emd;
    if (name == "mm") return CostKind::MomentMatch;
    throw ArgumentError("unknown cost kind: " + std::string(name));
}

std::string_view cost_kind_name(CostKind kind) {
    switch (kind) {
        case CostKind::Nll: return "nll";
        case CostKind::Emd: return "emd";
        case CostKind::MomentMatch: return "mm";
    }
    throw ArgumentError("invalid cost kind value");
}

double kl_divergence(const EmpiricalDistribution& target,
                     const EmpiricalDistribution& model) {
    check_same_system(target, model);
    double total = 0.0;
    for (const auto& [index, p] : target.support()) {
        const double q = model.probability(index);
        if (q == 0.0) return std::numeric_limits<double>::infinity();
        total += p * std::log(p / q);
    }
    return total;
}

double cost_nll(std::span<const std::uint64_t> data, const EmpiricalDistribution& model,
                double epsilon) {
    if (data.empty()) throw ArgumentError("NLL needs at least one data point");
    if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
    double total = 0.0;
    for (std::uint64_t x : data)
        total += std::log(std::max(epsilon, model.probability(x)));
    return -total / static_cast<double>(data.size());
}

double cost_emd(const EmpiricalDistribution& target, const EmpiricalDistribution& model) {
    check_same_system(target, model);
    const auto& src = target.support();
    const auto& dst = model.support();
    if (src.size() > 4096 || dst.size() > 4096)
        throw CapacityError("EMD support too large for the exact solver");
    std::vector<double> supply(src.size());
    std::vector<double> demand(dst.size());
    std::vector<std::vector<double>> cost(src.size(), std::vector<double>(dst.size()));
    for (std::size_t i = 0; i < src.size(); ++i) {
        supply[i] = src[i].second;
        for (std::size_t j = 0; j < dst.size(); ++j)
            cost[i][j] = static_cast<double>(std::popcount(src[i].first ^ dst[j].first));
    }
    for (std::size_t j = 0; j < dst.size(); ++j) demand[j] = dst[j].second;
    return TransportSolver(std::move(supply), std::move(demand), std::move(cost)).solve();
}

double cost_mm(const EmpiricalDistribution& target, const EmpiricalDistribution& model) {
    check_same_system(target, model);
    const int n = target.num_qubits();
    if (n < 2) throw ArgumentError("moment matching needs at least 2 qubits");

    auto moments = [n](const EmpiricalDistribution& dist, std::vector<double>& first,
                       std::vector<double>& second) {
        first.assign(n, 0.0);
        second.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (const auto& [index, p] : dist.support()) {
            const SpinString spins = index_to_spin(index, n);
            for (int i = 0; i < n; ++i) {
                first[i] += p * spins[i];
                for (int j = 0; j < i; ++j)
                    second[static_cast<std::size_t>(i) * n + j] += p * spins[i] * spins[j];
            }
        }
    };

    std::vector<double> m1_t, m2_t, m1_m, m2_m;
    moments(target, m1_t, m2_t);
    moments(model, m1_m, m2_m);

    double first_term = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = m1_t[i] - m1_m[i];
        first_term += d * d;
    }
    first_term /= n;

    double second_term = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            const double d = m2_t[static_cast<std::size_t>(i) * n + j] -
                             m2_m[static_cast<std::size_t>(i) * n + j];
            second_term += d * d;
        }
    second_term *= 2.0 / (static_cast<double>(n) * (n - 1));

    return first_term + second_term;
}

}  // namespace qcbm
