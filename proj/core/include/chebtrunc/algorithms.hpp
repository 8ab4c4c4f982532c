#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chebtrunc/chebyshev.hpp"
#include "chebtrunc/noise.hpp"

namespace chebtrunc {

enum class AllocationMode { Uniform, ProportionalKnownSigma, ProportionalEstimated };

/// Integer sample counts per Chebyshev node, summing exactly to the budget.
struct AllocationPlan {
    std::vector<std::int64_t> counts;
    std::int64_t budget = 0;
    AllocationMode mode = AllocationMode::Uniform;
};

/// Result of one approximation pipeline: the truncated approximant plus
/// per-node diagnostics.
struct ApproxResult {
    ChebyshevSeries series;               // truncated approximant p_n
    int chosen_degree = 0;                // n
    int interpolant_degree = 0;           // degree of the full interpolant
    AllocationPlan plan;
    std::vector<double> node_means;       // ybar_i
    std::vector<double> node_variances;   // S_i^2 (empty when no repeats were taken)
    std::int64_t samples_used = 0;
    double noise_floor_estimate = 0.0;    // variance fed to the degree selection
};

/// Hamilton (largest-remainder) apportionment of `total` units proportional
/// to the weights; ties go to the lower index. Minimizes the l1 deviation
/// from the exact proportional targets.
std::vector<std::int64_t> largest_remainder_apportion(std::span<const double> weights,
                                                      std::int64_t total);

/// Proportional-to-sigma^2 allocation with every node guaranteed at least
/// one sample; the lift decrements the current largest count. Requires
/// budget >= node count and at least one positive sigma.
AllocationPlan allocate_known_sigma(std::span<const double> sigma_vec, std::int64_t budget);

/// Degree selection: argmin over n <= max_degree of
///   Cp(n) = RSS(n) + 2 (n+1) noise_floor,
/// where RSS(n) is the discarded-coefficient energy under the discrete
/// Chebyshev inner product. Ties break toward the smallest n.
int mallows_cp_select(const ChebyshevSeries& coeffs, double noise_floor, int max_degree);

/// Sample once per node at the degree-N grid, interpolate, and truncate at
/// the Cp-selected degree with a spectral tail estimate of the noise floor.
/// Uses the whole budget of N+1 samples; O(N log N).
ApproxResult noisy_chebtrunc(SamplingOracle& oracle, int n);

/// Weighted sampling with known noise levels: allocate the budget of N+1
/// samples over the degree-N_hat grid proportionally to sigma_i^2, average,
/// interpolate, truncate. O(N + N_hat log N_hat).
ApproxResult weighted_chebtrunc_known(SamplingOracle& oracle, int n, int n_hat);

/// Pre-sample m = floor(r*N/(N_hat+1)) draws per node to estimate the noise
/// variances, allocate the remaining budget proportionally to the estimates,
/// then average (pre-samples included), interpolate, truncate.
/// Defaults: n_hat = floor(sqrt(N)), r = 0.1.
ApproxResult hetero_chebtrunc(SamplingOracle& oracle, int n, int n_hat = -1, double r = 0.1);

}  // namespace chebtrunc
