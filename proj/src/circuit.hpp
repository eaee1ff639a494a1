#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "statevector.hpp"

namespace qcbm {

enum class TopologyKind { All, Chain, Star };

TopologyKind topology_from_name(std::string_view name);
std::string_view topology_name(TopologyKind kind);

// Which qubit pairs receive an XX gate in an entangling layer.
struct Topology {
    TopologyKind kind = TopologyKind::All;
    int num_qubits = 0;

    // Lexicographic order; this is also the parameter order within a layer.
    // all: (0,1)..(0,N-1),(1,2)..; chain: (i,i+1); star: (0,j).
    std::vector<std::pair<int, int>> edges() const;
    int edge_count() const;
};

// Layered circuit template. Odd layers (1, 3, ...) apply the single-qubit
// decomposition Rz(k=3) Rx(k=2) Rz(k=1) to every qubit; even layers apply
// XX on every topology edge. Acting on |0...0>, the first layer drops its
// leading Rz (no effect on the initial state), and the final layer of an
// odd-depth circuit drops its trailing Rz (per-basis phases are invisible
// to measurement), giving 2N parameters for those layers and 3N otherwise.
//
// Parameter order is layer-major; within rotation layers qubit-major with
// ascending rotation id k, within entangling layers lexicographic edge
// order. Serialized templates carry kParamOrderVersion.
class CircuitTemplate {
public:
    CircuitTemplate(int num_qubits, int num_layers, TopologyKind topology);

    int num_qubits() const { return num_qubits_; }
    int num_layers() const { return num_layers_; }
    const Topology& topology() const { return topology_; }

    int param_count() const;
    int rotation_params_in_layer(int layer) const;  // 1-based layer number

    // Runs the circuit on |0...0>. Throws ArgumentError on a length mismatch.
    StateVector execute(std::span<const double> params) const;

    static constexpr std::string_view kParamOrderVersion = "layer-major/v1";

    nlohmann::json to_json() const;
    static CircuitTemplate from_json(const nlohmann::json& j);

private:
    int num_qubits_;
    int num_layers_;
    Topology topology_;
};

// GHZ preparation recipe: a rotation layer plus one maximally entangling
// GMS layer (every pair at pi/2). Even qubit counts need no rotations; odd
// counts get Rx(pi/2) on every qubit. The returned circuit is validated at
// construction to produce {|0...0>: 0.5, |1...1>: 0.5} within 1e-9.
struct GhzRecipe {
    CircuitTemplate circuit;
    std::vector<double> params;
};

GhzRecipe build_ghz_recipe(int num_qubits);

}  // namespace qcbm
