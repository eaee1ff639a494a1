#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: gates as explicit dense 2^N x 2^N matrices applied by mat-vec, and
// the earth mover's distance as a two-phase dense simplex on the
// transportation LP.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;
using Vector = std::vector<Complex>;

Matrix rz_matrix(int num_qubits, int qubit, double theta);
Matrix rx_matrix(int num_qubits, int qubit, double theta);
Matrix xx_matrix(int num_qubits, int qubit_i, int qubit_j, double theta);
Matrix gms_matrix(int num_qubits, double theta);

Vector matvec(const Matrix& m, const Vector& v);

// Optimal transportation cost via simplex with Bland's rule.
double transport_lp(const std::vector<double>& supply, const std::vector<double>& demand,
                    const std::vector<std::vector<double>>& cost);

}  // namespace oracle
