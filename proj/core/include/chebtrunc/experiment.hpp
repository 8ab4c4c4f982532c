#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chebtrunc/algorithms.hpp"
#include "chebtrunc/bounds.hpp"
#include "chebtrunc/noise.hpp"

namespace chebtrunc {

inline constexpr std::uint64_t kDefaultMasterSeed = 0x7c3b9a52d41e68f1ULL;

enum class AlgorithmKind { Noisy, WeightedKnown, Hetero };

std::string algorithm_name(AlgorithmKind kind);
AlgorithmKind algorithm_from_name(const std::string& name);

/// How the interpolation degree N_hat is derived from the budget N.
struct NHatRule {
    enum class Kind { Sqrt, Fixed, FactorSqrt };
    Kind kind = Kind::Sqrt;
    double value = 1.0;  // fixed degree, or the factor multiplying sqrt(N)
    int resolve(int n) const;
};

/// A target function together with a printable label.
struct TargetSpec {
    std::string label;
    std::function<double(double)> fn;

    static TargetSpec named(const std::string& name);
    /// Polynomial given by its Chebyshev-basis coefficients.
    static TargetSpec chebyshev(std::vector<double> coeffs);
};

struct ExperimentConfig {
    TargetSpec target = TargetSpec::named("runge");
    NoiseField noise = NoiseField::constant(0.1);
    std::vector<AlgorithmKind> algorithms{AlgorithmKind::Noisy, AlgorithmKind::WeightedKnown,
                                          AlgorithmKind::Hetero};
    std::vector<int> n_grid{1000};
    int trials = 50;
    NHatRule n_hat{};
    double r = 0.1;
    std::uint64_t master_seed = kDefaultMasterSeed;
    bool master_seed_from_config = false;
    int sup_resolution = 10001;
    bool emit_timing = false;
    int threads = 0;  // 0 = hardware concurrency

    /// Rejects invalid grids and any (algorithm, N) pair whose pipeline
    /// preconditions fail, before any sampling happens.
    void validate() const;
};

struct TrialRecord {
    AlgorithmKind algorithm = AlgorithmKind::Noisy;
    int n = 0;
    int n_hat = 0;
    double r = 0.0;
    int trial = 0;
    int chosen_degree = 0;
    double sup_error = 0.0;
    std::int64_t samples_used = 0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    std::string status;  // "ok", or the error text for a failed trial
};

/// Run every algorithm x N x trial combination on its own oracle seeded from
/// (master_seed, algorithm, N, trial). Deterministic for any worker count.
std::vector<TrialRecord> run_sweep(const ExperimentConfig& config);

struct SummaryRow {
    AlgorithmKind algorithm = AlgorithmKind::Noisy;
    int n = 0;
    int count = 0;
    double mean_sup_error = 0.0;
    double q025_sup_error = 0.0;
    double q975_sup_error = 0.0;
    double mean_chosen_degree = 0.0;
    double mean_wall_time_s = 0.0;
};

/// Group records by (algorithm, N) and reduce to mean and 2.5%/97.5%
/// quantiles of the sup error. Failed trials are excluded.
std::vector<SummaryRow> summarize(std::span<const TrialRecord> records);

/// p-quantile by linear interpolation of the order statistics:
/// h = (n-1) p, q = x_(floor h) + (h - floor h) (x_(floor h + 1) - x_(floor h)).
double quantile_linear(std::vector<double> values, double p);

struct AllocationRow {
    double x = 0.0;
    double sigma_true = 0.0;
    double variance_estimate = 0.0;   // pre-sampled S_i^2
    std::int64_t count_estimated = 0;  // pre-samples included
    std::int64_t count_known = 0;
};

/// Side-by-side per-node sample counts of the estimated-sigma and
/// known-sigma allocations for one run.
std::vector<AllocationRow> allocation_dump(const ExperimentConfig& config, int n, int n_hat,
                                           double r);

/// Bound-curve tabulation. `kind` selects the evaluator; the grid sweeps the
/// deviation t, except for kind "prop1" where it sweeps the relative slack s.
struct BoundTableSpec {
    std::string kind;  // lemma1 | prop1 | thm1 | thm2 | hetero | dependent
    double grid_min = 0.0;
    double grid_max = 5.0;
    int grid_count = 51;
    double sigma = 1.0;  // lemma1
    int m = 100;         // lemma1, prop1
    std::vector<double> sigma_vec;
    std::int64_t total_budget_n = 0;
    int n_hat = 1;
    int trunc_degree = 0;
    double r = 0.1;
    double s = 0.0;
    double r_n_inf = 0.0;
    double q_inf = 0.0;
    std::vector<double> nu_vec;
    double alpha = 1.0;
    double t_star = 1.0;
};

struct BoundTableRow {
    double t = 0.0;
    double threshold = 0.0;
    double probability_raw = 0.0;
    double probability_clamped = 0.0;
};

std::vector<BoundTableRow> bound_table(const BoundTableSpec& spec);

struct RuntimeRow {
    AlgorithmKind algorithm = AlgorithmKind::Noisy;
    int n = 0;
    int trials = 0;
    double median_wall_time_s = 0.0;
};

/// Wall-time medians of the single-draw vs pre-sampling pipelines over the
/// config's N grid. Runs sequentially; checks scaling shape, not absolute
/// times.
std::vector<RuntimeRow> runtime_study(const ExperimentConfig& config);

std::string records_csv(std::span<const TrialRecord> records, bool emit_timing);
std::string summary_csv(std::span<const SummaryRow> rows, bool emit_timing);
std::string allocation_csv(std::span<const AllocationRow> rows);
std::string bound_table_csv(std::span<const BoundTableRow> rows);
std::string runtime_csv(std::span<const RuntimeRow> rows);

/// gnuplot script plotting mean sup error vs N per algorithm from a summary
/// CSV produced by summary_csv().
std::string gnuplot_error_script(const std::string& summary_path,
                                 std::span<const AlgorithmKind> algorithms);

}  // namespace chebtrunc
