#include "statevector.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "basis.hpp"
#include "errors.hpp"

namespace qcbm {

namespace {
constexpr std::complex<double> kMinusI{0.0, -1.0};
}

double wrap_angle(double theta) {
    if (!std::isfinite(theta)) throw ArgumentError("rotation angle must be finite");
    double r = std::remainder(theta, 2.0 * std::numbers::pi);
    if (r == std::numbers::pi) r = -std::numbers::pi;  // half-open [-pi, pi)
    return r;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw CapacityError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    amps_.assign(dimension(), {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

StateVector StateVector::from_amplitudes(int num_qubits,
                                         std::vector<std::complex<double>> amps) {
    StateVector state(num_qubits);
    if (amps.size() != state.dimension())
        throw ArgumentError("amplitude vector length must be 2^N");
    state.amps_ = std::move(amps);
    if (std::abs(state.norm_squared() - 1.0) > 1e-10)
        throw ArgumentError("amplitudes are not normalized");
    return state;
}

std::complex<double> StateVector::amplitude(std::uint64_t index) const {
    if (index >= dimension()) throw IndexError("basis index out of range");
    return amps_[index];
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_)
        throw IndexError("qubit index " + std::to_string(qubit) + " out of range for N=" +
                         std::to_string(num_qubits_));
}

void StateVector::apply_rz(int qubit, double theta) {
    check_qubit(qubit);
    const double half = 0.5 * wrap_angle(theta);
    const std::complex<double> phase0 = std::polar(1.0, -half);
    const std::complex<double> phase1 = std::polar(1.0, half);
    const std::uint64_t mask = qubit_mask(num_qubits_, qubit);
    for (std::uint64_t i = 0; i < dimension(); ++i)
        amps_[i] *= (i & mask) ? phase1 : phase0;
}

void StateVector::apply_rx(int qubit, double theta) {
    check_qubit(qubit);
    const double half = 0.5 * wrap_angle(theta);
    const double c = std::cos(half);
    const std::complex<double> mis = kMinusI * std::sin(half);
    const std::uint64_t mask = qubit_mask(num_qubits_, qubit);
    for (std::uint64_t i = 0; i < dimension(); ++i) {
        if (i & mask) continue;
        const std::uint64_t j = i | mask;
        const std::complex<double> a = amps_[i];
        const std::complex<double> b = amps_[j];
        amps_[i] = c * a + mis * b;
        amps_[j] = mis * a + c * b;
    }
}

void StateVector::apply_xx(int qubit_i, int qubit_j, double theta) {
    check_qubit(qubit_i);
    check_qubit(qubit_j);
    if (qubit_i == qubit_j) throw ArgumentError("XX gate requires two distinct qubits");
    const double half = 0.5 * wrap_angle(theta);
    const double c = std::cos(half);
    const std::complex<double> mis = kMinusI * std::sin(half);
    const std::uint64_t mask_i = qubit_mask(num_qubits_, qubit_i);
    const std::uint64_t pair_mask = mask_i | qubit_mask(num_qubits_, qubit_j);
    // Each unordered pair {i, i ^ pair_mask} is visited once, from the side
    // where qubit_i's bit is clear.
    for (std::uint64_t i = 0; i < dimension(); ++i) {
        if (i & mask_i) continue;
        const std::uint64_t j = i ^ pair_mask;
        const std::complex<double> a = amps_[i];
        const std::complex<double> b = amps_[j];
        amps_[i] = c * a + mis * b;
        amps_[j] = mis * a + c * b;
    }
}

void StateVector::apply_gms(double theta) {
    if (num_qubits_ < 2) throw ArgumentError("GMS gate requires at least 2 qubits");
    for (int i = 0; i < num_qubits_; ++i)
        for (int j = i + 1; j < num_qubits_; ++j) apply_xx(i, j, theta);
}

EmpiricalDistribution StateVector::probabilities() const {
    std::vector<EmpiricalDistribution::Entry> weights;
    for (std::uint64_t i = 0; i < dimension(); ++i) {
        const double p = std::norm(amps_[i]);
        if (p != 0.0) weights.emplace_back(i, p);
    }
    return EmpiricalDistribution(num_qubits_, std::move(weights));
}

std::vector<std::uint64_t> StateVector::sample(std::int64_t num_shots,
                                               std::uint64_t seed) const {
    if (num_shots < 1) throw ArgumentError("num_shots must be >= 1");
    auto eng = rng::make_engine(seed, rng::kShots);
    return probabilities().sample(num_shots, eng);
}

EmpiricalDistribution StateVector::sample_distribution(std::int64_t num_shots,
                                                       std::uint64_t seed) const {
    return EmpiricalDistribution::from_samples(num_qubits_, sample(num_shots, seed));
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

}  // namespace qcbm
