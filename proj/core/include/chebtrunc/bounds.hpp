#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace chebtrunc {

/// Subgaussian tail class: P(|X| >= t) <= 2 exp(-t^2 / sigma^2).
struct SubgaussianParam {
    double sigma = 0.0;
};

/// Subexponential tail class: quadratic exponent up to the crossover
/// t = nu^2/alpha, linear beyond it.
struct SubexponentialParam {
    double nu = 0.0;
    double alpha = 0.0;
    double crossover() const { return nu * nu / alpha; }
};

/// A tail-bound value before and after clamping to [0,1]. Raw values above 1
/// are kept so bound curves stay plottable where they are vacuous.
struct TailBound {
    double raw = 0.0;
    double probability = 0.0;
};

/// Threshold/probability pair produced by the deviation-bound evaluators.
struct BoundEvaluation {
    double threshold = 0.0;
    double probability_raw = 0.0;
    double probability = 0.0;
};

/// Shared inputs of the deviation bounds: per-node noise levels at the
/// N_hat+1 Chebyshev points, the total sample budget N, the truncation
/// degree n, and the caller-supplied best-approximation residual.
struct BoundInputs {
    std::vector<double> sigma_vec;      // per-node sigma_i, size n_hat+1
    std::int64_t total_budget_n = 0;    // N
    int n_hat = 0;                      // interpolation degree
    int trunc_degree = 0;               // n
    double presample_fraction = 0.0;    // r
    double relative_slack = 0.0;        // s
    double best_residual_inf = 0.0;     // ||r_n||_inf, property of the unknown best approximant
    double t = 0.0;

    void validate() const;
};

/// Unbiased sample variance S^2 = sum (x_i - mean)^2 / (m-1), single pass.
/// Requires at least two samples.
double sample_variance(std::span<const double> samples);

/// Subexponential parameters of the m-sample variance estimator of a
/// subgaussian variable: nu = (4 sigma/sqrt(m))(1 + 1/sqrt(m-1)),
/// alpha = (4 sigma/m)(1 + 1/sqrt(m-1)).
SubexponentialParam sample_variance_tail_params(double sigma, int m);

TailBound subexponential_tail(double t, const SubexponentialParam& p);
TailBound subgaussian_tail(double t, const SubgaussianParam& p);

/// Union bound on the event that any node's proportional variance estimate
/// S_i^2 / sum_j S_j^2 errs relatively by more than s, from m samples per
/// node. Requires every sigma_j > 0 and 0 < s < 1.
TailBound proportional_estimate_bound(double s, std::span<const double> sigma_vec, int m);

/// Pointwise deviation bound of the known-sigma weighted pipeline under
/// subgaussian noise.
BoundEvaluation weighted_subgaussian_bound(const BoundInputs& in);

/// Subexponential analogue; t_star is the branch crossover of the stated
/// exponents (they intersect at t = 1, the default).
BoundEvaluation weighted_subexponential_bound(const BoundInputs& in, std::span<const double> nu_vec,
                                              double alpha_max, double t_star = 1.0);

/// Pointwise deviation bound of the pre-sampling pipeline: the weighted
/// bound inflated by 1/sqrt((1-s)(1-r)).
BoundEvaluation presampled_subgaussian_bound(const BoundInputs& in);

/// Uniform-error bound on the raw interpolant under arbitrarily dependent
/// cross-node noise; q_inf is the caller-supplied exact-interpolant error.
BoundEvaluation dependent_noise_bound(int n_hat, std::int64_t total_budget_n,
                                      std::span<const double> sigma_vec, double q_inf, double t);

double l2_norm(std::span<const double> v);
double linf_norm(std::span<const double> v);

}  // namespace chebtrunc
