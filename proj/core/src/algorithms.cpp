#include "chebtrunc/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chebtrunc {

namespace {

// Weights whose sum is below this are treated as degenerate (all-zero) and
// replaced by a uniform allocation.
constexpr double kDegenerateWeightSum = 1e-300;

std::vector<std::int64_t> uniform_apportion(std::size_t nodes, std::int64_t total) {
    return largest_remainder_apportion(std::vector<double>(nodes, 1.0), total);
}

// Spectral tail estimate of the per-node noise variance for single-draw
// sampling: noise contributes ~2 sigma^2/(N+1) to each squared coefficient,
// and the top decile of the spectrum is noise-dominated once the signal
// coefficients have decayed. The decile mean tracks the average coefficient
// energy; under strongly localized noise individual coefficients run hotter
// and the selection can overfit inside the noisy region, which is the known
// behaviour of single-draw sampling under heteroskedastic noise (the
// pipelines with per-node variance information use selection_noise_floor
// instead).
double tail_noise_floor(const ChebyshevSeries& series) {
    const auto& c = series.coeffs();
    const std::size_t n = c.size();
    const std::size_t count = std::max<std::size_t>(1, n / 10);
    double sum = 0.0;
    for (std::size_t i = n - count; i < n; ++i) sum += c[i] * c[i];
    return 0.5 * static_cast<double>(n) * (sum / static_cast<double>(count));
}

ChebyshevSeries interpolate_and_truncate(const std::vector<double>& node_means,
                                         double noise_floor, int max_degree, int* chosen) {
    const ChebyshevSeries full = values_to_coeffs(node_means);
    *chosen = mallows_cp_select(full, noise_floor, max_degree);
    return truncate(full, *chosen);
}

// Node-variance level the degree selection must beat. The interpolation
// coefficients carry noise Var(c_k) = (4/Nh^2) sum'' v_j cos^2(k j pi/Nh);
// a field concentrated near the grid centre pushes the even-indexed
// coefficients to twice the node average, so the selection is keyed to the
// worst coefficient rather than the mean. Evaluated exactly with one more
// cosine transform of the per-node variances; equals the plain node mean
// for a constant field.
double selection_noise_floor(const std::vector<double>& node_variances) {
    const std::size_t nodes = node_variances.size();
    const int n_hat = static_cast<int>(nodes) - 1;
    double mean = 0.0;
    for (double v : node_variances) mean += v;
    mean /= static_cast<double>(nodes);
    if (n_hat < 2) return mean;

    const ChebyshevSeries spectrum = values_to_coeffs(node_variances);
    // sum''_j v_j cos(q j pi/Nh) from the transform's scaled coefficients
    auto weighted_sum = [&](int q) {
        const double c = spectrum[static_cast<std::size_t>(q)];
        return (q == 0 || q == n_hat) ? c * static_cast<double>(n_hat)
                                      : c * static_cast<double>(n_hat) / 2.0;
    };
    const double base = weighted_sum(0);
    double worst = 0.0;
    for (int k = 1; k < n_hat; ++k) {
        const int q = 2 * k <= n_hat ? 2 * k : 2 * n_hat - 2 * k;
        worst = std::max(worst, base + weighted_sum(q));
    }
    const double nh = static_cast<double>(n_hat);
    const double var_worst = 2.0 / (nh * nh) * worst;
    // node-variance equivalent of the worst coefficient
    return std::max(mean, 0.5 * (nh + 1.0) * var_worst);
}

}  // namespace

std::vector<std::int64_t> largest_remainder_apportion(std::span<const double> weights,
                                                      std::int64_t total) {
    if (weights.empty()) throw std::invalid_argument("apportion: empty weights");
    if (total < 0) throw std::invalid_argument("apportion: negative total");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("apportion: bad weight");
        sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("apportion: weights sum to zero");

    const std::size_t n = weights.size();
    std::vector<std::int64_t> counts(n);
    std::vector<double> remainder(n);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = static_cast<double>(total) * (weights[i] / sum);
        counts[i] = static_cast<std::int64_t>(std::floor(target));
        remainder[i] = target - static_cast<double>(counts[i]);
        assigned += counts[i];
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    std::int64_t leftover = total - assigned;
    for (std::size_t pos = 0; leftover > 0; pos = (pos + 1) % n, --leftover)
        ++counts[order[pos]];
    return counts;
}

AllocationPlan allocate_known_sigma(std::span<const double> sigma_vec, std::int64_t budget) {
    const std::size_t nodes = sigma_vec.size();
    if (nodes == 0) throw std::invalid_argument("allocate_known_sigma: empty sigma_vec");
    if (budget < static_cast<std::int64_t>(nodes))
        throw std::invalid_argument("allocate_known_sigma: budget below one sample per node");
    std::vector<double> weights(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        if (sigma_vec[i] < 0.0) throw std::invalid_argument("allocate_known_sigma: negative sigma");
        weights[i] = sigma_vec[i] * sigma_vec[i];
    }

    AllocationPlan plan;
    plan.budget = budget;
    plan.mode = AllocationMode::ProportionalKnownSigma;
    plan.counts = largest_remainder_apportion(weights, budget);

    // Every node needs at least one sample; take the unit from the current
    // largest count (lowest index on ties).
    for (std::size_t i = 0; i < nodes; ++i) {
        if (plan.counts[i] > 0) continue;
        const auto donor = std::max_element(plan.counts.begin(), plan.counts.end());
        --*donor;
        plan.counts[i] = 1;
    }
    return plan;
}

int mallows_cp_select(const ChebyshevSeries& coeffs, double noise_floor, int max_degree) {
    if (noise_floor < 0.0) throw std::invalid_argument("mallows_cp_select: negative noise floor");
    const int top = coeffs.degree();
    if (max_degree < 0 || max_degree > top)
        throw std::invalid_argument("mallows_cp_select: max_degree out of range");
    const auto& c = coeffs.coeffs();
    const double m = static_cast<double>(top) + 1.0;

    // Below the relative machine-precision floor the tail coefficients are
    // interpolation roundoff, not signal; without it a zero noise floor would
    // drag the selection out to the last nonzero roundoff coefficient.
    double cmax = 0.0;
    for (double v : c) cmax = std::max(cmax, std::abs(v));
    const double eps_c = 1e-13 * cmax;
    const double sigma2 = std::max(noise_floor, 0.5 * m * eps_c * eps_c);

    // RSS(n) over discarded coefficients, accumulated from the top down.
    std::vector<double> rss(static_cast<std::size_t>(top) + 1, 0.0);
    double acc = 0.0;
    for (int i = top; i >= 1; --i) {
        const double w = (i == top) ? 2.0 : 1.0;
        acc += w * c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
        rss[static_cast<std::size_t>(i) - 1] = 0.5 * m * acc;
    }

    int best = 0;
    double best_cp = rss[0] + 2.0 * sigma2;
    for (int n = 1; n <= max_degree; ++n) {
        const double cp = rss[static_cast<std::size_t>(n)] + 2.0 * (n + 1) * sigma2;
        if (cp < best_cp) {
            best = n;
            best_cp = cp;
        }
    }
    return best;
}

ApproxResult noisy_chebtrunc(SamplingOracle& oracle, int n) {
    if (n < 1) throw std::invalid_argument("noisy_chebtrunc: need N >= 1");
    const ChebyshevGrid grid(n);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = oracle.sample(grid[i]);

    const ChebyshevSeries full = values_to_coeffs(values);
    const double noise_floor = tail_noise_floor(full);
    const int chosen = mallows_cp_select(full, noise_floor, n);

    ApproxResult result{truncate(full, chosen),
                        chosen,
                        n,
                        AllocationPlan{std::vector<std::int64_t>(grid.size(), 1),
                                       static_cast<std::int64_t>(grid.size()),
                                       AllocationMode::Uniform},
                        std::move(values),
                        {},
                        static_cast<std::int64_t>(grid.size()),
                        noise_floor};
    return result;
}

ApproxResult weighted_chebtrunc_known(SamplingOracle& oracle, int n, int n_hat) {
    if (n_hat < 1 || n_hat > n)
        throw std::invalid_argument("weighted_chebtrunc_known: need 1 <= N_hat <= N");
    const ChebyshevGrid grid(n_hat);
    const std::int64_t budget = static_cast<std::int64_t>(n) + 1;

    std::vector<double> sigma(grid.size());
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sigma[i] = oracle.noise().sigma_at(grid[i]);
        weight_sum += sigma[i] * sigma[i];
    }

    AllocationPlan plan;
    if (weight_sum > kDegenerateWeightSum) {
        plan = allocate_known_sigma(sigma, budget);
    } else {
        plan.counts = uniform_apportion(grid.size(), budget);
        plan.budget = budget;
        plan.mode = AllocationMode::Uniform;
    }

    std::vector<double> means(grid.size()), variances(grid.size());
    std::vector<double> node_noise(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto stats = oracle.sample_many(grid[i], plan.counts[i]);
        means[i] = stats.mean;
        variances[i] = stats.variance;
        node_noise[i] = sigma[i] * sigma[i] / static_cast<double>(plan.counts[i]);
    }
    const double noise_floor = selection_noise_floor(node_noise);

    int chosen = 0;
    ChebyshevSeries series = interpolate_and_truncate(means, noise_floor, n_hat, &chosen);
    return {std::move(series), chosen,          n_hat, std::move(plan), std::move(means),
            std::move(variances), budget, noise_floor};
}

ApproxResult hetero_chebtrunc(SamplingOracle& oracle, int n, int n_hat, double r) {
    if (n < 1) throw std::invalid_argument("hetero_chebtrunc: need N >= 1");
    if (n_hat < 0) n_hat = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    if (n_hat < 1 || n_hat > n)
        throw std::invalid_argument("hetero_chebtrunc: need 1 <= N_hat <= N");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("hetero_chebtrunc: r must lie in (0,1)");

    const ChebyshevGrid grid(n_hat);
    const std::int64_t nodes = static_cast<std::int64_t>(grid.size());
    const std::int64_t budget = static_cast<std::int64_t>(n) + 1;
    const std::int64_t presamples =
        static_cast<std::int64_t>(std::floor(r * static_cast<double>(n) / static_cast<double>(nodes)));
    if (presamples < 2)
        throw std::invalid_argument(
            "hetero_chebtrunc: pre-sample size below 2; lower N_hat or raise r");

    // Pre-sampling phase: estimate per-node variances.
    std::vector<double> pre_means(grid.size()), variances(grid.size());
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto stats = oracle.sample_many(grid[i], presamples);
        pre_means[i] = stats.mean;
        variances[i] = stats.variance;
        weight_sum += stats.variance;
    }

    // Weighted phase: whatever the rounding of the pre-sample size left
    // unspent goes back into the proportional budget.
    const std::int64_t remaining = budget - presamples * nodes;
    std::vector<std::int64_t> extra;
    AllocationMode mode = AllocationMode::ProportionalEstimated;
    if (weight_sum > kDegenerateWeightSum) {
        extra = largest_remainder_apportion(variances, remaining);
    } else {
        extra = uniform_apportion(grid.size(), remaining);
        mode = AllocationMode::Uniform;
    }

    AllocationPlan plan;
    plan.budget = budget;
    plan.mode = mode;
    plan.counts.resize(grid.size());

    std::vector<double> means(grid.size());
    std::vector<double> node_noise(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        plan.counts[i] = presamples + extra[i];
        double mean = pre_means[i];
        if (extra[i] > 0) {
            const auto stats = oracle.sample_many(grid[i], extra[i]);
            mean = (static_cast<double>(presamples) * pre_means[i] +
                    static_cast<double>(extra[i]) * stats.mean) /
                   static_cast<double>(plan.counts[i]);
        }
        means[i] = mean;
        node_noise[i] = variances[i] / static_cast<double>(plan.counts[i]);
    }
    const double noise_floor = selection_noise_floor(node_noise);

    int chosen = 0;
    ChebyshevSeries series = interpolate_and_truncate(means, noise_floor, n_hat, &chosen);
    return {std::move(series), chosen,          n_hat, std::move(plan), std::move(means),
            std::move(variances), budget, noise_floor};
}

}  // namespace chebtrunc
