#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "distribution.hpp"

namespace qcbm {

enum class CostKind { Nll, Emd, MomentMatch };

CostKind cost_kind_from_name(std::string_view name);
std::string_view cost_kind_name(CostKind kind);

struct CostConfig {
    CostKind kind = CostKind::Nll;
    double epsilon = 1e-8;  // NLL clipping floor
};

// D_KL[target | model] in nats over the support of `target`; returns +inf
// when the model assigns zero mass to a supported point.
double kl_divergence(const EmpiricalDistribution& target,
                     const EmpiricalDistribution& model);

// Clipped negative log-likelihood -(1/D) sum_d ln(max(eps, P(x_d))), nats.
// Probabilities are not renormalized after the clipping.
double cost_nll(std::span<const std::uint64_t> data, const EmpiricalDistribution& model,
                double epsilon);

// Exact earth mover's distance under the Hamming ground metric, solved as a
// min-cost transportation problem on the union support.
double cost_emd(const EmpiricalDistribution& target, const EmpiricalDistribution& model);

// First- and second-moment matching error in spin variables:
// (1/N) sum_i dm_i^2 + (2/(N(N-1))) sum_{i>j} dc_ij^2.
double cost_mm(const EmpiricalDistribution& target, const EmpiricalDistribution& model);

}  // namespace qcbm
