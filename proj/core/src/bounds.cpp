#include "chebtrunc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chebtrunc/chebyshev.hpp"

namespace chebtrunc {

namespace {

TailBound clamp01(double raw) { return {raw, std::min(raw, 1.0)}; }

}  // namespace

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double linf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void BoundInputs::validate() const {
    if (sigma_vec.empty()) throw std::invalid_argument("BoundInputs: sigma_vec is empty");
    if (n_hat < 1 || static_cast<int>(sigma_vec.size()) != n_hat + 1)
        throw std::invalid_argument("BoundInputs: sigma_vec must hold n_hat+1 entries, n_hat >= 1");
    if (trunc_degree < 0 || trunc_degree > n_hat || total_budget_n < n_hat)
        throw std::invalid_argument("BoundInputs: need n <= n_hat <= N");
    for (double s : sigma_vec)
        if (s < 0.0) throw std::invalid_argument("BoundInputs: negative sigma");
    if (best_residual_inf < 0.0 || t < 0.0)
        throw std::invalid_argument("BoundInputs: residual and t must be nonnegative");
    if (presample_fraction < 0.0 || presample_fraction >= 1.0 || relative_slack < 0.0 ||
        relative_slack >= 1.0)
        throw std::invalid_argument("BoundInputs: r and s must lie in [0,1)");
    // l2 <= sqrt(n_hat+1) * linf, with equality only for constant fields.
    const double l2 = l2_norm(sigma_vec);
    const double cap = std::sqrt(static_cast<double>(n_hat) + 1.0) * linf_norm(sigma_vec);
    if (l2 > cap * (1.0 + 1e-12))
        throw std::invalid_argument("BoundInputs: sigma norms violate l2 <= sqrt(n_hat+1) linf");
}

double sample_variance(std::span<const double> samples) {
    const std::size_t m = samples.size();
    if (m < 2) throw std::invalid_argument("sample_variance: need at least two samples");
    double mean = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (double x : samples) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    return m2 / static_cast<double>(m - 1);
}

SubexponentialParam sample_variance_tail_params(double sigma, int m) {
    if (sigma <= 0.0) throw std::invalid_argument("sample_variance_tail_params: sigma must be positive");
    if (m < 2) throw std::invalid_argument("sample_variance_tail_params: need m >= 2");
    const double factor = 1.0 + 1.0 / std::sqrt(static_cast<double>(m - 1));
    return {4.0 * sigma / std::sqrt(static_cast<double>(m)) * factor,
            4.0 * sigma / static_cast<double>(m) * factor};
}

TailBound subexponential_tail(double t, const SubexponentialParam& p) {
    if (t < 0.0) throw std::invalid_argument("subexponential_tail: t must be nonnegative");
    if (!(p.nu > 0.0) || !(p.alpha > 0.0))
        throw std::invalid_argument("subexponential_tail: parameters must be positive");
    const double exponent =
        t <= p.crossover() ? t * t / (2.0 * p.nu * p.nu) : t / (2.0 * p.alpha);
    return clamp01(2.0 * std::exp(-exponent));
}

TailBound subgaussian_tail(double t, const SubgaussianParam& p) {
    if (t < 0.0) throw std::invalid_argument("subgaussian_tail: t must be nonnegative");
    if (p.sigma < 0.0) throw std::invalid_argument("subgaussian_tail: sigma must be nonnegative");
    if (t == 0.0) return clamp01(2.0);
    if (p.sigma == 0.0) return clamp01(0.0);
    return clamp01(2.0 * std::exp(-t * t / (p.sigma * p.sigma)));
}

TailBound proportional_estimate_bound(double s, std::span<const double> sigma_vec, int m) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("proportional_estimate_bound: s must lie in (0,1)");
    if (m < 2) throw std::invalid_argument("proportional_estimate_bound: need m >= 2");
    if (sigma_vec.empty()) throw std::invalid_argument("proportional_estimate_bound: empty sigma_vec");
    const double factor = 1.0 + 1.0 / std::sqrt(static_cast<double>(m - 1));
    double sum = 0.0;
    for (double sigma : sigma_vec) {
        if (!(sigma > 0.0))
            throw std::invalid_argument("proportional_estimate_bound: every sigma must be positive");
        const double quad =
            s * s * sigma * sigma * m / (32.0 * (2.0 + s) * (2.0 + s)) / (factor * factor);
        const double lin = s * sigma * m / (8.0 * (2.0 + s)) / factor;
        sum += std::max(2.0 * std::exp(-quad), 2.0 * std::exp(-lin));
    }
    return clamp01(sum);
}

BoundEvaluation weighted_subgaussian_bound(const BoundInputs& in) {
    in.validate();
    const double np1 = static_cast<double>(in.trunc_degree) + 1.0;
    const double noise_term = 2.0 * in.t * l2_norm(in.sigma_vec) /
                              std::sqrt(static_cast<double>(in.total_budget_n) *
                                        static_cast<double>(in.n_hat)) *
                              std::sqrt(np1);
    const double threshold =
        noise_term + (std::sqrt(8.0 * np1) + 1.0) * in.best_residual_inf;
    const double raw = 2.0 * std::exp(-in.t * in.t / 2.0);
    return {threshold, raw, std::min(raw, 1.0)};
}

BoundEvaluation weighted_subexponential_bound(const BoundInputs& in, std::span<const double> nu_vec,
                                              double alpha_max, double t_star) {
    in.validate();
    if (!(alpha_max > 0.0))
        throw std::invalid_argument("weighted_subexponential_bound: alpha must be positive");
    if (static_cast<int>(nu_vec.size()) != in.n_hat + 1)
        throw std::invalid_argument("weighted_subexponential_bound: nu_vec must hold n_hat+1 entries");
    for (double nu : nu_vec)
        if (nu < 0.0) throw std::invalid_argument("weighted_subexponential_bound: negative nu");
    const double np1 = static_cast<double>(in.trunc_degree) + 1.0;
    const double nu2 = l2_norm(nu_vec) * l2_norm(nu_vec);
    const double log_factor = 2.0 / kPi * std::log(np1) + 1.0;
    const double threshold =
        log_factor * std::sqrt(np1) *
        (2.0 * in.t * nu2 / alpha_max / std::sqrt(static_cast<double>(in.total_budget_n)) +
         std::sqrt(8.0) * in.best_residual_inf);
    const double coef = nu2 / (2.0 * alpha_max * alpha_max);
    const double exponent = in.t <= t_star ? coef * in.t * in.t : coef * in.t;
    const double raw = 2.0 * np1 * std::exp(-exponent);
    return {threshold, raw, std::min(raw, 1.0)};
}

BoundEvaluation presampled_subgaussian_bound(const BoundInputs& in) {
    in.validate();
    const double np1 = static_cast<double>(in.trunc_degree) + 1.0;
    const double inflation =
        1.0 / std::sqrt((1.0 - in.relative_slack) * (1.0 - in.presample_fraction));
    const double noise_term = 2.0 * in.t * l2_norm(in.sigma_vec) /
                              std::sqrt(static_cast<double>(in.total_budget_n) *
                                        static_cast<double>(in.n_hat)) *
                              std::sqrt(np1) * inflation;
    const double threshold =
        noise_term + (std::sqrt(8.0 * np1) + 1.0) * in.best_residual_inf;
    const double raw = 2.0 * std::exp(-in.t * in.t / 2.0);
    return {threshold, raw, std::min(raw, 1.0)};
}

BoundEvaluation dependent_noise_bound(int n_hat, std::int64_t total_budget_n,
                                      std::span<const double> sigma_vec, double q_inf, double t) {
    if (n_hat < 1 || total_budget_n < 1)
        throw std::invalid_argument("dependent_noise_bound: need n_hat >= 1 and N >= 1");
    if (static_cast<int>(sigma_vec.size()) != n_hat + 1)
        throw std::invalid_argument("dependent_noise_bound: sigma_vec must hold n_hat+1 entries");
    if (q_inf < 0.0 || t < 0.0)
        throw std::invalid_argument("dependent_noise_bound: q_inf and t must be nonnegative");
    const double threshold = q_inf + t * l2_norm(sigma_vec) /
                                         std::sqrt(static_cast<double>(total_budget_n)) *
                                         lebesgue_log_bound(n_hat);
    const double raw = 2.0 * static_cast<double>(n_hat) * std::exp(-t * t);
    return {threshold, raw, std::min(raw, 1.0)};
}

}  // namespace chebtrunc
