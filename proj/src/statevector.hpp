#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "basis.hpp"
#include "distribution.hpp"

namespace qcbm {

// Rotation angles are canonicalized to [-pi, pi) before any gate is applied.
double wrap_angle(double theta);

// Dense statevector over the computational basis, restricted to the native
// gate set Rz, Rx, XX and the global Molmer-Sorensen gate.
//
//   Rz(t) = exp(-i t/2 Z),  Rx(t) = exp(-i t/2 X),
//   XX(t) = exp(-i t/2 X_i X_j),  GMS(t) = XX(t) on all N(N-1)/2 pairs.
//
// Gates mutate the owned amplitude buffer in place; copying the object
// yields an independent state. Global phase is never normalized away.
class StateVector {
public:
    // Prepares |0...0>.
    explicit StateVector(int num_qubits);

    // Builds a state from explicit amplitudes; the norm must be 1 within
    // 1e-10.
    static StateVector from_amplitudes(int num_qubits,
                                       std::vector<std::complex<double>> amps);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << num_qubits_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::uint64_t index) const;

    void apply_rz(int qubit, double theta);
    void apply_rx(int qubit, double theta);
    void apply_xx(int qubit_i, int qubit_j, double theta);
    void apply_gms(double theta);

    // Born-rule probabilities |amplitude|^2.
    EmpiricalDistribution probabilities() const;

    // num_shots computational-basis measurements, deterministic under seed.
    std::vector<std::uint64_t> sample(std::int64_t num_shots, std::uint64_t seed) const;
    EmpiricalDistribution sample_distribution(std::int64_t num_shots,
                                              std::uint64_t seed) const;

    double norm_squared() const;

private:
    void check_qubit(int qubit) const;

    int num_qubits_;
    std::vector<std::complex<double>> amps_;
};

}  // namespace qcbm
