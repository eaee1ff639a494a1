#pragma once

#include <complex>
#include <span>
#include <vector>

#include "statevector.hpp"

namespace qcbm {

// Hermitian, unit-trace, positive-semidefinite matrix (within round-off).
struct DensityMatrix {
    int dimension = 0;
    std::vector<std::complex<double>> entries;  // row-major

    std::complex<double>& at(int row, int col) {
        return entries[static_cast<std::size_t>(row) * dimension + col];
    }
    const std::complex<double>& at(int row, int col) const {
        return entries[static_cast<std::size_t>(row) * dimension + col];
    }

    // Throws ArgumentError if Hermiticity/trace/positivity is violated
    // beyond 1e-10.
    void validate() const;
};

// Partial trace over every qubit not in `keep`; kept qubits retain their
// relative order in the reduced basis.
DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep);

// -sum lambda log2 lambda over eigenvalues above 1e-12 (bits). Negative
// round-off eigenvalues above -1e-10 are clamped to zero.
double von_neumann_entropy(const DensityMatrix& rho);

// Mean entropy of the two-qubit reductions AB, AC, AD of a 4-qubit state.
double avg_two_qubit_entropy(const StateVector& state);

// (1/sqrt 6) (e^{iu1}|0000> + e^{iu2}|0011> + e^{iu3}|0101> + e^{iu4}|1010>
//            + e^{iu5}|1100> + |1111>).
StateVector phased_bas22_state(double u1, double u2, double u3, double u4, double u5);

// Closed-form average entanglement entropy of the phased BAS(2,2) family
// as a function of v1 = u2-u3-u4+u5 and v2 = u1-u3-u4. Removable
// singularities are evaluated through the x log2 x -> 0 limit.
double s_bas22_closed_form(double v1, double v2);

}  // namespace qcbm
