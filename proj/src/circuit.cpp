#include "circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace qcbm {

TopologyKind topology_from_name(std::string_view name) {
    if (name == "all") return TopologyKind::All;
    if (name == "chain") return TopologyKind::Chain;
    if (name == "star") return TopologyKind::Star;
    throw ArgumentError("unknown topology: " + std::string(name));
}

std::string_view topology_name(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::All: return "all";
        case TopologyKind::Chain: return "chain";
        case TopologyKind::Star: return "star";
    }
    throw ArgumentError("invalid topology value");
}

std::vector<std::pair<int, int>> Topology::edges() const {
    std::vector<std::pair<int, int>> out;
    switch (kind) {
        case TopologyKind::All:
            for (int i = 0; i < num_qubits; ++i)
                for (int j = i + 1; j < num_qubits; ++j) out.emplace_back(i, j);
            break;
        case TopologyKind::Chain:
            for (int i = 0; i + 1 < num_qubits; ++i) out.emplace_back(i, i + 1);
            break;
        case TopologyKind::Star:
            for (int j = 1; j < num_qubits; ++j) out.emplace_back(0, j);
            break;
    }
    return out;
}

int Topology::edge_count() const {
    switch (kind) {
        case TopologyKind::All: return num_qubits * (num_qubits - 1) / 2;
        case TopologyKind::Chain:
        case TopologyKind::Star: return num_qubits - 1;
    }
    throw ArgumentError("invalid topology value");
}

CircuitTemplate::CircuitTemplate(int num_qubits, int num_layers, TopologyKind topology)
    : num_qubits_(num_qubits),
      num_layers_(num_layers),
      topology_{topology, num_qubits} {
    if (num_qubits < 2 || num_qubits > kMaxQubits)
        throw ArgumentError("circuit needs 2.." + std::to_string(kMaxQubits) + " qubits");
    if (num_layers < 1) throw ArgumentError("circuit needs at least one layer");
}

int CircuitTemplate::rotation_params_in_layer(int layer) const {
    // First layer: Rx, Rz per qubit. Final layer of an odd-depth circuit
    // (other than layer 1): Rz, Rx per qubit. Other odd layers: Rz, Rx, Rz.
    if (layer == 1) return 2 * num_qubits_;
    if (layer == num_layers_ && num_layers_ % 2 == 1) return 2 * num_qubits_;
    return 3 * num_qubits_;
}

int CircuitTemplate::param_count() const {
    int total = 0;
    for (int layer = 1; layer <= num_layers_; ++layer)
        total += (layer % 2 == 1) ? rotation_params_in_layer(layer)
                                  : topology_.edge_count();
    return total;
}

StateVector CircuitTemplate::execute(std::span<const double> params) const {
    if (params.size() != static_cast<std::size_t>(param_count()))
        throw ArgumentError("parameter vector length " + std::to_string(params.size()) +
                            " does not match template parameter count " +
                            std::to_string(param_count()));
    StateVector state(num_qubits_);
    std::size_t p = 0;
    for (int layer = 1; layer <= num_layers_; ++layer) {
        if (layer % 2 == 1) {
            const bool drop_first_rz = layer == 1;
            const bool drop_last_rz =
                !drop_first_rz && layer == num_layers_ && num_layers_ % 2 == 1;
            for (int q = 0; q < num_qubits_; ++q) {
                if (!drop_first_rz) state.apply_rz(q, params[p++]);
                state.apply_rx(q, params[p++]);
                if (!drop_last_rz) state.apply_rz(q, params[p++]);
            }
        } else {
            for (const auto& [i, j] : topology_.edges()) state.apply_xx(i, j, params[p++]);
        }
    }
    return state;
}

nlohmann::json CircuitTemplate::to_json() const {
    return nlohmann::json{{"num_qubits", num_qubits_},
                          {"num_layers", num_layers_},
                          {"topology", topology_name(topology_.kind)},
                          {"param_order", kParamOrderVersion}};
}

CircuitTemplate CircuitTemplate::from_json(const nlohmann::json& j) {
    const auto order = j.value("param_order", std::string(kParamOrderVersion));
    if (order != kParamOrderVersion)
        throw ArgumentError("unsupported parameter order version: " + order);
    return CircuitTemplate(j.at("num_qubits").get<int>(), j.at("num_layers").get<int>(),
                           topology_from_name(j.at("topology").get<std::string>()));
}

GhzRecipe build_ghz_recipe(int num_qubits) {
    if (num_qubits < 2) throw ArgumentError("GHZ recipe needs at least 2 qubits");
    constexpr double half_pi = std::numbers::pi / 2.0;
    CircuitTemplate circuit(num_qubits, 2, TopologyKind::All);
    std::vector<double> params(static_cast<std::size_t>(circuit.param_count()), 0.0);
    if (num_qubits % 2 == 1) {
        // Odd variant: Rx(pi/2) on every qubit (slot k=2 comes first in the
        // opening layer).
        for (int q = 0; q < num_qubits; ++q)
            params[static_cast<std::size_t>(2) * q] = half_pi;
    }
    for (std::size_t p = static_cast<std::size_t>(2) * num_qubits; p < params.size(); ++p)
        params[p] = half_pi;  // GMS layer: all pairs at pi/2

    // The distribution postcondition is the recipe's correctness oracle.
    const StateVector state = circuit.execute(params);
    const EmpiricalDistribution probs = state.probabilities();
    const std::uint64_t top = (std::uint64_t{1} << num_qubits) - 1;
    if (std::abs(probs.probability(0) - 0.5) > 1e-9 ||
        std::abs(probs.probability(top) - 0.5) > 1e-9)
        throw std::logic_error("GHZ recipe failed its distribution postcondition");
    return GhzRecipe{std::move(circuit), std::move(params)};
}

}  // namespace qcbm
