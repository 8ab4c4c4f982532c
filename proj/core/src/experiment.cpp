#include "chebtrunc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chebtrunc/csv.hpp"
#include "chebtrunc/parallel.hpp"
#include "chebtrunc/rng.hpp"

namespace chebtrunc {

namespace {

// Stable stream tags; part of the determinism contract.
std::uint64_t algorithm_tag(AlgorithmKind kind) {
    switch (kind) {
        case AlgorithmKind::Noisy: return 1;
        case AlgorithmKind::WeightedKnown: return 2;
        case AlgorithmKind::Hetero: return 3;
    }
    throw std::logic_error("algorithm_tag: unreachable");
}

ApproxResult run_pipeline(AlgorithmKind kind, SamplingOracle& oracle, int n, int n_hat, double r) {
    switch (kind) {
        case AlgorithmKind::Noisy: return noisy_chebtrunc(oracle, n);
        case AlgorithmKind::WeightedKnown: return weighted_chebtrunc_known(oracle, n, n_hat);
        case AlgorithmKind::Hetero: return hetero_chebtrunc(oracle, n, n_hat, r);
    }
    throw std::logic_error("run_pipeline: unreachable");
}

void check_preconditions(AlgorithmKind kind, int n, int n_hat, double r) {
    if (n < 1) throw std::invalid_argument("config: N must be at least 1");
    if (kind == AlgorithmKind::Noisy) return;
    if (n_hat < 1 || n_hat > n)
        throw std::invalid_argument("config: need 1 <= N_hat <= N for N=" + std::to_string(n));
    if (kind == AlgorithmKind::Hetero) {
        const std::int64_t m = static_cast<std::int64_t>(
            std::floor(r * static_cast<double>(n) / (static_cast<double>(n_hat) + 1.0)));
        if (m < 2)
            throw std::invalid_argument("config: pre-sample size below 2 at N=" +
                                        std::to_string(n) + "; lower N_hat or raise r");
    }
}

std::string sanitize_status(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    return text;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

std::string algorithm_name(AlgorithmKind kind) {
    switch (kind) {
        case AlgorithmKind::Noisy: return "noisy";
        case AlgorithmKind::WeightedKnown: return "weighted_known";
        case AlgorithmKind::Hetero: return "hetero";
    }
    throw std::logic_error("algorithm_name: unreachable");
}

AlgorithmKind algorithm_from_name(const std::string& name) {
    if (name == "noisy") return AlgorithmKind::Noisy;
    if (name == "weighted_known") return AlgorithmKind::WeightedKnown;
    if (name == "hetero") return AlgorithmKind::Hetero;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

int NHatRule::resolve(int n) const {
    switch (kind) {
        case Kind::Sqrt:
            return static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
        case Kind::Fixed:
            return static_cast<int>(value);
        case Kind::FactorSqrt:
            return static_cast<int>(std::floor(value * std::sqrt(static_cast<double>(n))));
    }
    throw std::logic_error("NHatRule: unreachable");
}

TargetSpec TargetSpec::named(const std::string& name) { return {name, named_target(name)}; }

TargetSpec TargetSpec::chebyshev(std::vector<double> coeffs) {
    ChebyshevSeries series(std::move(coeffs));
    std::string label = "cheb(";
    for (int i = 0; i <= series.degree(); ++i) {
        if (i > 0) label += ',';
        label += format_double(series[static_cast<std::size_t>(i)]);
    }
    label += ')';
    return {std::move(label), [series](double x) { return evaluate(series, x); }};
}

void ExperimentConfig::validate() const {
    if (!target.fn) throw std::invalid_argument("config: missing target function");
    if (algorithms.empty()) throw std::invalid_argument("config: no algorithms selected");
    if (n_grid.empty()) throw std::invalid_argument("config: empty N grid");
    if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (sup_resolution < 2) throw std::invalid_argument("config: sup_resolution must be at least 2");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("config: r must lie in (0,1)");
    for (int n : n_grid) {
        if (n < 10) throw std::invalid_argument("config: every N must be at least 10");
        for (AlgorithmKind kind : algorithms)
            check_preconditions(kind, n, kind == AlgorithmKind::Noisy ? n : n_hat.resolve(n), r);
    }
}

std::vector<TrialRecord> run_sweep(const ExperimentConfig& config) {
    config.validate();

    struct Task {
        AlgorithmKind algorithm;
        int n;
        int n_hat;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(config.algorithms.size() * config.n_grid.size() *
                  static_cast<std::size_t>(config.trials));
    for (AlgorithmKind kind : config.algorithms)
        for (int n : config.n_grid)
            for (int trial = 0; trial < config.trials; ++trial)
                tasks.push_back(
                    {kind, n, kind == AlgorithmKind::Noisy ? n : config.n_hat.resolve(n), trial});

    std::vector<TrialRecord> records(tasks.size());
    parallel_for(static_cast<std::int64_t>(tasks.size()), config.threads, [&](std::int64_t idx) {
        const Task& task = tasks[static_cast<std::size_t>(idx)];
        TrialRecord& rec = records[static_cast<std::size_t>(idx)];
        rec.algorithm = task.algorithm;
        rec.n = task.n;
        rec.n_hat = task.n_hat;
        rec.r = task.algorithm == AlgorithmKind::Hetero ? config.r : 0.0;
        rec.trial = task.trial;
        rec.seed = derive_seed(config.master_seed,
                               {algorithm_tag(task.algorithm), static_cast<std::uint64_t>(task.n),
                                static_cast<std::uint64_t>(task.trial)});
        try {
            SamplingOracle oracle(config.target.fn, config.noise, rec.seed);
            const auto t0 = std::chrono::steady_clock::now();
            const ApproxResult result =
                run_pipeline(task.algorithm, oracle, task.n, task.n_hat, config.r);
            const auto t1 = std::chrono::steady_clock::now();
            rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
            rec.chosen_degree = result.chosen_degree;
            rec.samples_used = result.samples_used;
            rec.sup_error = sup_error(config.target.fn, result.series, config.sup_resolution);
            rec.status = "ok";
        } catch (const std::exception& e) {
            rec.sup_error = std::numeric_limits<double>::quiet_NaN();
            rec.status = sanitize_status(e.what());
        }
    });
    return records;
}

double quantile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile_linear: empty input");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile_linear: p outside [0,1]");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

std::vector<SummaryRow> summarize(std::span<const TrialRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize: empty record set");

    struct Group {
        std::vector<double> sup, degree, wall;
    };
    std::vector<std::pair<std::pair<int, int>, Group>> groups;  // key: (algo tag, N)
    for (const TrialRecord& rec : records) {
        if (rec.status != "ok") continue;
        const std::pair<int, int> key{static_cast<int>(rec.algorithm), rec.n};
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, {}});
            it = groups.end() - 1;
        }
        it->second.sup.push_back(rec.sup_error);
        it->second.degree.push_back(static_cast<double>(rec.chosen_degree));
        it->second.wall.push_back(rec.wall_time_s);
    }
    if (groups.empty()) throw std::invalid_argument("summarize: no successful records");

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (auto& [key, g] : groups) {
        SummaryRow row;
        row.algorithm = static_cast<AlgorithmKind>(key.first);
        row.n = key.second;
        row.count = static_cast<int>(g.sup.size());
        row.mean_sup_error = mean_of(g.sup);
        row.q025_sup_error = quantile_linear(g.sup, 0.025);
        row.q975_sup_error = quantile_linear(g.sup, 0.975);
        row.mean_chosen_degree = mean_of(g.degree);
        row.mean_wall_time_s = mean_of(g.wall);
        rows.push_back(row);
    }
    return rows;
}

std::vector<AllocationRow> allocation_dump(const ExperimentConfig& config, int n, int n_hat,
                                           double r) {
    check_preconditions(AlgorithmKind::Hetero, n, n_hat, r);
    const std::uint64_t seed = derive_seed(
        config.master_seed, {algorithm_tag(AlgorithmKind::Hetero), static_cast<std::uint64_t>(n), 0});
    SamplingOracle oracle(config.target.fn, config.noise, seed);
    const ApproxResult hetero = hetero_chebtrunc(oracle, n, n_hat, r);

    const ChebyshevGrid grid(n_hat);
    std::vector<double> sigma(grid.size());
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sigma[i] = config.noise.sigma_at(grid[i]);
        weight_sum += sigma[i] * sigma[i];
    }
    const std::int64_t budget = static_cast<std::int64_t>(n) + 1;
    const std::vector<std::int64_t> known =
        weight_sum > 0.0 ? allocate_known_sigma(sigma, budget).counts
                         : largest_remainder_apportion(std::vector<double>(grid.size(), 1.0), budget);

    std::vector<AllocationRow> rows(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        rows[i] = {grid[i], sigma[i], hetero.node_variances[i], hetero.plan.counts[i], known[i]};
    return rows;
}

std::vector<BoundTableRow> bound_table(const BoundTableSpec& spec) {
    if (spec.grid_count < 1) throw std::invalid_argument("bound_table: grid_count must be positive");
    if (!(spec.grid_max >= spec.grid_min)) throw std::invalid_argument("bound_table: bad grid range");

    std::vector<double> grid(static_cast<std::size_t>(spec.grid_count));
    for (int i = 0; i < spec.grid_count; ++i)
        grid[static_cast<std::size_t>(i)] =
            spec.grid_count == 1
                ? spec.grid_min
                : spec.grid_min + (spec.grid_max - spec.grid_min) * static_cast<double>(i) /
                                      static_cast<double>(spec.grid_count - 1);

    std::vector<BoundTableRow> rows;
    rows.reserve(grid.size());
    if (spec.kind == "lemma1") {
        const SubexponentialParam p = sample_variance_tail_params(spec.sigma, spec.m);
        for (double t : grid) {
            const TailBound b = subexponential_tail(t, p);
            rows.push_back({t, t, b.raw, b.probability});
        }
    } else if (spec.kind == "prop1") {
        for (double s : grid) {
            const TailBound b = proportional_estimate_bound(s, spec.sigma_vec, spec.m);
            rows.push_back({s, s, b.raw, b.probability});
        }
    } else if (spec.kind == "thm1" || spec.kind == "hetero") {
        BoundInputs in;
        in.sigma_vec = spec.sigma_vec;
        in.total_budget_n = spec.total_budget_n;
        in.n_hat = spec.n_hat;
        in.trunc_degree = spec.trunc_degree;
        in.best_residual_inf = spec.r_n_inf;
        if (spec.kind == "hetero") {
            in.presample_fraction = spec.r;
            in.relative_slack = spec.s;
        }
        for (double t : grid) {
            in.t = t;
            const BoundEvaluation e = spec.kind == "thm1" ? weighted_subgaussian_bound(in)
                                                          : presampled_subgaussian_bound(in);
            rows.push_back({t, e.threshold, e.probability_raw, e.probability});
        }
    } else if (spec.kind == "thm2") {
        BoundInputs in;
        in.sigma_vec = spec.sigma_vec.empty()
                           ? std::vector<double>(spec.nu_vec.size(), 0.0)
                           : spec.sigma_vec;
        in.total_budget_n = spec.total_budget_n;
        in.n_hat = spec.n_hat;
        in.trunc_degree = spec.trunc_degree;
        in.best_residual_inf = spec.r_n_inf;
        for (double t : grid) {
            in.t = t;
            const BoundEvaluation e =
                weighted_subexponential_bound(in, spec.nu_vec, spec.alpha, spec.t_star);
            rows.push_back({t, e.threshold, e.probability_raw, e.probability});
        }
    } else if (spec.kind == "dependent") {
        for (double t : grid) {
            const BoundEvaluation e = dependent_noise_bound(spec.n_hat, spec.total_budget_n,
                                                            spec.sigma_vec, spec.q_inf, t);
            rows.push_back({t, e.threshold, e.probability_raw, e.probability});
        }
    } else {
        throw std::invalid_argument("bound_table: unknown kind '" + spec.kind + "'");
    }
    return rows;
}

std::vector<RuntimeRow> runtime_study(const ExperimentConfig& config) {
    ExperimentConfig timing = config;
    timing.algorithms = {AlgorithmKind::Noisy, AlgorithmKind::Hetero};
    timing.validate();

    std::vector<RuntimeRow> rows;
    for (AlgorithmKind kind : timing.algorithms) {
        for (int n : timing.n_grid) {
            const int n_hat = kind == AlgorithmKind::Noisy ? n : timing.n_hat.resolve(n);
            std::vector<double> times;
            times.reserve(static_cast<std::size_t>(timing.trials));
            for (int trial = 0; trial < timing.trials; ++trial) {
                const std::uint64_t seed =
                    derive_seed(timing.master_seed, {algorithm_tag(kind),
                                                     static_cast<std::uint64_t>(n),
                                                     static_cast<std::uint64_t>(trial)});
                SamplingOracle oracle(timing.target.fn, timing.noise, seed);
                const auto t0 = std::chrono::steady_clock::now();
                run_pipeline(kind, oracle, n, n_hat, timing.r);
                const auto t1 = std::chrono::steady_clock::now();
                times.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
            rows.push_back({kind, n, timing.trials, quantile_linear(times, 0.5)});
        }
    }
    return rows;
}

std::string records_csv(std::span<const TrialRecord> records, bool emit_timing) {
    CsvWriter w;
    w.schema("chebtrunc.records.v1");
    w.header(emit_timing
                 ? "algorithm,n,n_hat,r,trial,chosen_degree,sup_error,samples_used,seed,wall_time_s,status"
                 : "algorithm,n,n_hat,r,trial,chosen_degree,sup_error,samples_used,seed,status");
    for (const TrialRecord& rec : records) {
        w.field(algorithm_name(rec.algorithm))
            .field(rec.n)
            .field(rec.n_hat)
            .field(rec.r)
            .field(rec.trial)
            .field(rec.chosen_degree)
            .field(rec.sup_error)
            .field(rec.samples_used)
            .field(format_uint(rec.seed));
        if (emit_timing) w.field(rec.wall_time_s);
        w.field(rec.status);
        w.end_row();
    }
    return w.str();
}

std::string summary_csv(std::span<const SummaryRow> rows, bool emit_timing) {
    CsvWriter w;
    w.schema("chebtrunc.summary.v1");
    w.header(emit_timing
                 ? "algorithm,n,trials,mean_sup_error,q025_sup_error,q975_sup_error,mean_chosen_degree,mean_wall_time_s"
                 : "algorithm,n,trials,mean_sup_error,q025_sup_error,q975_sup_error,mean_chosen_degree");
    for (const SummaryRow& row : rows) {
        w.field(algorithm_name(row.algorithm))
            .field(row.n)
            .field(row.count)
            .field(row.mean_sup_error)
            .field(row.q025_sup_error)
            .field(row.q975_sup_error)
            .field(row.mean_chosen_degree);
        if (emit_timing) w.field(row.mean_wall_time_s);
        w.end_row();
    }
    return w.str();
}

std::string allocation_csv(std::span<const AllocationRow> rows) {
    CsvWriter w;
    w.schema("chebtrunc.alloc.v1");
    w.header("x,sigma,s2,k_hetero,k_known");
    for (const AllocationRow& row : rows) {
        w.field(row.x)
            .field(row.sigma_true)
            .field(row.variance_estimate)
            .field(row.count_estimated)
            .field(row.count_known);
        w.end_row();
    }
    return w.str();
}

std::string bound_table_csv(std::span<const BoundTableRow> rows) {
    CsvWriter w;
    w.schema("chebtrunc.bounds.v1");
    w.header("t,threshold,probability_raw,probability_clamped");
    for (const BoundTableRow& row : rows) {
        w.field(row.t).field(row.threshold).field(row.probability_raw).field(row.probability_clamped);
        w.end_row();
    }
    return w.str();
}

std::string runtime_csv(std::span<const RuntimeRow> rows) {
    CsvWriter w;
    w.schema("chebtrunc.bench.v1");
    w.header("algorithm,n,trials,median_wall_time_s");
    for (const RuntimeRow& row : rows) {
        w.field(algorithm_name(row.algorithm)).field(row.n).field(row.trials).field(
            row.median_wall_time_s);
        w.end_row();
    }
    return w.str();
}

std::string gnuplot_error_script(const std::string& summary_path,
                                 std::span<const AlgorithmKind> algorithms) {
    std::string s;
    s += "set datafile separator ','\n";
    s += "set logscale xy\n";
    s += "set xlabel 'N'\n";
    s += "set ylabel 'mean sup error'\n";
    s += "set key top right\n";
    s += "plot ";
    bool first = true;
    for (AlgorithmKind kind : algorithms) {
        if (!first) s += ", \\\n     ";
        first = false;
        const std::string name = algorithm_name(kind);
        s += "'" + summary_path + "' using 2:(strcol(1) eq '" + name +
             "' ? $4 : 1/0) with linespoints title '" + name + "'";
    }
    s += "\n";
    return s;
}

}  // namespace chebtrunc
