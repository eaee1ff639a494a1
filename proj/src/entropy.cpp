#include "entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "basis.hpp"
#include "errors.hpp"

namespace qcbm {

namespace {

constexpr double kMatrixTolerance = 1e-10;
constexpr double kEigenvalueFloor = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

void DensityMatrix::validate() const {
    if (dimension < 1 ||
        entries.size() != static_cast<std::size_t>(dimension) * dimension)
        throw ArgumentError("density matrix storage does not match its dimension");
    double trace = 0.0;
    for (int i = 0; i < dimension; ++i) {
        trace += at(i, i).real();
        if (std::abs(at(i, i).imag()) > kMatrixTolerance)
            throw ArgumentError("density matrix diagonal is not real");
        for (int j = 0; j < i; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > kMatrixTolerance)
                throw ArgumentError("density matrix is not Hermitian");
    }
    if (std::abs(trace - 1.0) > kMatrixTolerance)
        throw ArgumentError("density matrix trace is not 1");
}

DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep) {
    const int n = state.num_qubits();
    std::set<int> kept(keep.begin(), keep.end());
    if (kept.empty()) throw ArgumentError("keep set must be nonempty");
    if (kept.size() != keep.size()) throw ArgumentError("keep set has duplicates");
    if (static_cast<int>(kept.size()) >= n)
        throw ArgumentError("keep set must be a proper subset of the qubits");
    for (int q : kept)
        if (q < 0 || q >= n) throw ArgumentError("keep set contains an invalid qubit");

    std::vector<int> kept_list(kept.begin(), kept.end());
    std::vector<int> traced_list;
    for (int q = 0; q < n; ++q)
        if (!kept.contains(q)) traced_list.push_back(q);

    const int k = static_cast<int>(kept_list.size());
    const int t = n - k;
    const int dim = 1 << k;

    // Full basis index from a reduced index and an environment index, both
    // MSB-first within their own qubit lists.
    auto compose = [&](std::uint64_t reduced, std::uint64_t env) {
        std::uint64_t index = 0;
        for (int b = 0; b < k; ++b)
            if ((reduced >> (k - 1 - b)) & 1) index |= qubit_mask(n, kept_list[b]);
        for (int b = 0; b < t; ++b)
            if ((env >> (t - 1 - b)) & 1) index |= qubit_mask(n, traced_list[b]);
        return index;
    };

    DensityMatrix rho;
    rho.dimension = dim;
    rho.entries.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
    const auto& amps = state.amplitudes();
    for (std::uint64_t env = 0; env < (std::uint64_t{1} << t); ++env)
        for (int a = 0; a < dim; ++a) {
            const std::complex<double> left = amps[compose(a, env)];
            if (left == std::complex<double>{}) continue;
            for (int b = 0; b < dim; ++b)
                rho.at(a, b) += left * std::conj(amps[compose(b, env)]);
        }
    return rho;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    rho.validate();
    Eigen::MatrixXcd m(rho.dimension, rho.dimension);
    for (int i = 0; i < rho.dimension; ++i)
        for (int j = 0; j < rho.dimension; ++j) m(i, j) = rho.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda < -kMatrixTolerance)
            throw ArgumentError("density matrix has a negative eigenvalue");
        if (lambda > kEigenvalueFloor) entropy -= lambda * std::log2(lambda);
    }
    return entropy;
}

double avg_two_qubit_entropy(const StateVector& state) {
    if (state.num_qubits() != 4)
        throw ArgumentError("average two-qubit entropy is defined for 4-qubit states");
    double total = 0.0;
    for (int other : {1, 2, 3}) {
        const int keep[] = {0, other};
        total += von_neumann_entropy(reduced_density(state, keep));
    }
    return total / 3.0;
}

StateVector phased_bas22_state(double u1, double u2, double u3, double u4, double u5) {
    std::vector<std::complex<double>> amps(16, std::complex<double>{});
    const double norm = 1.0 / std::sqrt(6.0);
    amps[0b0000] = std::polar(norm, u1);
    amps[0b0011] = std::polar(norm, u2);
    amps[0b0101] = std::polar(norm, u3);
    amps[0b1010] = std::polar(norm, u4);
    amps[0b1100] = std::polar(norm, u5);
    amps[0b1111] = {norm, 0.0};
    return StateVector::from_amplitudes(4, std::move(amps));
}

double s_bas22_closed_form(double v1, double v2) {
    if (!std::isfinite(v1) || !std::isfinite(v2))
        throw ArgumentError("angles must be finite");
    // One reduction carries eigenvalues (1 +- c)/... with c = |cos(v1/2)|;
    // its atanh/log terms regroup into (1+c)log2(1+c) + (1-c)log2(1-c) + 4,
    // which stays finite at c = 1 where the raw expression is 0 * inf.
    const double c = std::abs(std::cos(v1 / 2.0));
    const double paired = xlog2x(1.0 + c) + xlog2x(1.0 - c) + 4.0;

    auto quartet = [](double w) {
        const double cs = std::cos(w / 4.0);
        const double sn = std::sin(w / 4.0);
        const double c2 = cs * cs;
        const double s2 = sn * sn;
        double out = 0.0;
        if (c2 > 0.0) out += 2.0 * c2 * std::log2(2.0 / 3.0 * c2);
        if (s2 > 0.0) out += 2.0 * s2 * std::log2(2.0 / 3.0 * s2);
        return out;
    };

    const double bracket =
        paired + quartet(v2) + quartet(v2 - v1) - std::log2(31104.0);
    return -bracket / 9.0;
}

}  // namespace qcbm
