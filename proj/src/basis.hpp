#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

// Basis-index convention, fixed globally: qubit 0 is the most significant
// bit of the basis index, spin +1 maps to bit 0 ('0', white) and spin -1
// maps to bit 1 ('1', black).

namespace qcbm {

// Dense complex<double> vectors stay under ~0.5 GiB up to this size.
inline constexpr int kMaxQubits = 24;

using SpinString = std::vector<std::int8_t>;

inline std::uint64_t qubit_mask(int num_qubits, int qubit) {
    return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

inline std::uint64_t spin_to_index(std::span<const std::int8_t> spins) {
    std::uint64_t index = 0;
    for (std::int8_t s : spins) {
        if (s != 1 && s != -1) throw ArgumentError("spin values must be +1 or -1");
        index = (index << 1) | (s == -1 ? 1u : 0u);
    }
    return index;
}

inline SpinString index_to_spin(std::uint64_t index, int num_qubits) {
    SpinString spins(static_cast<std::size_t>(num_qubits));
    for (int q = 0; q < num_qubits; ++q)
        spins[q] = (index & qubit_mask(num_qubits, q)) ? -1 : 1;
    return spins;
}

inline std::string index_to_bits(std::uint64_t index, int num_qubits) {
    std::string bits(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q)
        if (index & qubit_mask(num_qubits, q)) bits[q] = '1';
    return bits;
}

inline std::uint64_t bits_to_index(const std::string& bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw ArgumentError("bit strings may contain only '0'/'1'");
        index = (index << 1) | (c == '1' ? 1u : 0u);
    }
    return index;
}

}  // namespace qcbm
