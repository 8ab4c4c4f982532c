#include <CLI11.hpp>

#include <chebtrunc/algorithms.hpp>
#include <chebtrunc/config.hpp>
#include <chebtrunc/csv.hpp>
#include <chebtrunc/experiment.hpp>
#include <chebtrunc/rng.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace chebtrunc;

constexpr const char* kSeedEnvVar = "CHEBTRUNC_SEED";

std::uint64_t env_or_default_seed() {
    if (const char* env = std::getenv(kSeedEnvVar)) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(kSeedEnvVar) + " is not a valid seed");
        }
    }
    return kDefaultMasterSeed;
}

// "-" sends CSV output to stdout instead of a file.
void emit(const std::string& path, const std::string& contents) {
    if (path == "-")
        std::cout << contents;
    else
        write_file(path, contents);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::string current;
    for (char c : text + ",") {
        if (c == ',') {
            if (!current.empty()) values.push_back(std::stod(current));
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current += c;
        }
    }
    return values;
}

struct NoiseOptions {
    std::string noise = "constant(sigma=0.1)";
    std::string distribution = "normal";
    std::string dependence = "independent";

    void attach(CLI::App* cmd) {
        cmd->add_option("--noise", noise, "noise field, e.g. burst(hi=1, lo=1e-5, a=0, b=0.1)");
        cmd->add_option("--distribution", distribution, "normal | uniform");
        cmd->add_option("--dependence", dependence, "independent | shared(w=...)");
    }

    NoiseField build() const {
        std::string text = "noise = " + noise + "\ndistribution = " + distribution +
                           "\ndependence = " + dependence + "\n";
        return parse_config(text).noise;
    }
};

int cmd_approximate(const std::string& target_spec, const NoiseOptions& noise_opts,
                    const std::string& algorithm, int n, const std::string& n_hat_rule, double r,
                    std::optional<std::uint64_t> seed, int sup_resolution, bool print_coeffs) {
    const TargetSpec target = parse_target_spec(target_spec);
    const NoiseField noise = noise_opts.build();
    const AlgorithmKind kind = algorithm_from_name(algorithm);
    const int n_hat = kind == AlgorithmKind::Noisy ? n : parse_n_hat_rule(n_hat_rule).resolve(n);
    const std::uint64_t master = seed.value_or(env_or_default_seed());

    SamplingOracle oracle(target.fn, noise, master);
    ApproxResult result = kind == AlgorithmKind::Noisy ? noisy_chebtrunc(oracle, n)
                          : kind == AlgorithmKind::WeightedKnown
                              ? weighted_chebtrunc_known(oracle, n, n_hat)
                              : hetero_chebtrunc(oracle, n, n_hat, r);

    std::cout << "algorithm: " << algorithm_name(kind) << "\n";
    std::cout << "target: " << target.label << "\n";
    std::cout << "N: " << n << "\n";
    std::cout << "N_hat: " << result.interpolant_degree << "\n";
    if (kind == AlgorithmKind::Hetero) std::cout << "r: " << format_double(r) << "\n";
    std::cout << "seed: " << format_uint(master) << "\n";
    std::cout << "chosen_degree: " << result.chosen_degree << "\n";
    std::cout << "samples_used: " << result.samples_used << "\n";
    std::cout << "noise_floor: " << format_double(result.noise_floor_estimate) << "\n";
    std::cout << "sup_error: "
              << format_double(sup_error(target.fn, result.series, sup_resolution)) << "\n";
    if (print_coeffs) {
        std::cout << "coefficients:";
        for (double c : result.series.coeffs()) std::cout << ' ' << format_double(c);
        std::cout << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& records_path,
              const std::string& summary_path, const std::string& gnuplot_path,
              std::optional<std::uint64_t> seed, std::optional<int> threads) {
    ExperimentConfig config = load_config(config_path);
    if (seed) {
        config.master_seed = *seed;
    } else if (!config.master_seed_from_config) {
        config.master_seed = env_or_default_seed();
    }
    if (threads) config.threads = *threads;

    const auto records = run_sweep(config);
    emit(records_path, records_csv(records, config.emit_timing));
    const auto rows = summarize(records);
    emit(summary_path, summary_csv(rows, config.emit_timing));
    if (!gnuplot_path.empty())
        emit(gnuplot_path, gnuplot_error_script(summary_path, config.algorithms));

    std::cerr << "wrote " << records.size() << " records to " << records_path << "\n";
    std::cerr << "wrote " << rows.size() << " summary rows to " << summary_path << "\n";
    if (!gnuplot_path.empty()) std::cout << "wrote gnuplot script to " << gnuplot_path << "\n";
    return 0;
}

int cmd_alloc(const std::string& target_spec, const NoiseOptions& noise_opts, int n,
              const std::string& n_hat_rule, double r, std::optional<std::uint64_t> seed,
              const std::string& out_path) {
    ExperimentConfig config;
    config.target = parse_target_spec(target_spec);
    config.noise = noise_opts.build();
    config.master_seed = seed.value_or(env_or_default_seed());
    const int n_hat = parse_n_hat_rule(n_hat_rule).resolve(n);
    const auto rows = allocation_dump(config, n, n_hat, r);
    emit(out_path, allocation_csv(rows));
    std::cerr << "wrote " << rows.size() << " allocation rows to " << out_path << "\n";
    return 0;
}

int cmd_bounds(const BoundTableSpec& spec, const std::string& out_path) {
    const auto rows = bound_table(spec);
    emit(out_path, bound_table_csv(rows));
    std::cerr << "wrote " << rows.size() << " bound rows to " << out_path << "\n";
    return 0;
}

int cmd_bench(const std::string& target_spec, const NoiseOptions& noise_opts,
              const std::string& n_grid_spec, int trials, const std::string& n_hat_rule, double r,
              std::optional<std::uint64_t> seed, const std::string& out_path) {
    ExperimentConfig config;
    config.target = parse_target_spec(target_spec);
    config.noise = noise_opts.build();
    config.n_grid = parse_n_grid(n_grid_spec);
    config.trials = trials;
    config.n_hat = parse_n_hat_rule(n_hat_rule);
    config.r = r;
    config.master_seed = seed.value_or(env_or_default_seed());
    const auto rows = runtime_study(config);
    emit(out_path, runtime_csv(rows));
    std::cerr << "wrote " << rows.size() << " timing rows to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev approximation of noisy functions under heteroskedastic noise"};
    app.require_subcommand(1);

    // approximate
    auto* approx = app.add_subcommand("approximate", "run one pipeline and print the result");
    std::string a_target = "runge", a_algorithm = "hetero", a_n_hat = "sqrt";
    NoiseOptions a_noise;
    int a_n = 10000, a_resolution = 10001;
    double a_r = 0.1;
    std::optional<std::uint64_t> a_seed;
    bool a_coeffs = false;
    approx->add_option("--target", a_target, "runge | cheb(c0,c1,...)");
    a_noise.attach(approx);
    approx->add_option("--algorithm", a_algorithm, "noisy | weighted_known | hetero");
    approx->add_option("-N,--budget-n", a_n, "sample budget is N+1")->required();
    approx->add_option("--n-hat", a_n_hat, "sqrt | fixed(v) | sqrt_factor(c)");
    approx->add_option("-r,--presample-fraction", a_r, "pre-sampling fraction (hetero)");
    approx->add_option("--seed", a_seed, "master seed (default: $CHEBTRUNC_SEED)");
    approx->add_option("--sup-resolution", a_resolution, "dense grid size for the error report");
    approx->add_flag("--coeffs", a_coeffs, "print the truncated coefficient vector");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a Monte-Carlo experiment sweep from a config");
    std::string s_config, s_records = "records.csv", s_summary = "summary.csv", s_gnuplot;
    std::optional<std::uint64_t> s_seed;
    std::optional<int> s_threads;
    sweep->add_option("--config", s_config, "experiment config file")->required();
    sweep->add_option("--records", s_records, "records CSV output path");
    sweep->add_option("--summary", s_summary, "summary CSV output path");
    sweep->add_option("--gnuplot", s_gnuplot, "also write a gnuplot script");
    sweep->add_option("--seed", s_seed, "override the master seed");
    sweep->add_option("--threads", s_threads, "override the worker count");

    // alloc
    auto* alloc = app.add_subcommand("alloc", "dump per-node sample allocations");
    std::string l_target = "runge", l_n_hat = "fixed(1000)", l_out = "alloc.csv";
    NoiseOptions l_noise;
    int l_n = 1000000;
    double l_r = 0.1;
    std::optional<std::uint64_t> l_seed;
    alloc->add_option("--target", l_target, "runge | cheb(c0,c1,...)");
    l_noise.attach(alloc);
    alloc->add_option("-N,--budget-n", l_n, "sample budget is N+1");
    alloc->add_option("--n-hat", l_n_hat, "sqrt | fixed(v) | sqrt_factor(c)");
    alloc->add_option("-r,--presample-fraction", l_r, "pre-sampling fraction");
    alloc->add_option("--seed", l_seed, "master seed");
    alloc->add_option("--out", l_out, "CSV output path");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "tabulate a concentration bound as CSV");
    BoundTableSpec b_spec;
    std::string b_sigma_vec, b_nu_vec, b_out = "bounds.csv";
    double b_const_sigma = 1.0;
    int b_nodes = 0;
    bounds
        ->add_option("--kind", b_spec.kind,
                     "lemma1 | prop1 | thm1 | thm2 | hetero | dependent")
        ->required();
    bounds->add_option("--t-min", b_spec.grid_min, "grid start (s for prop1)");
    bounds->add_option("--t-max", b_spec.grid_max, "grid end");
    bounds->add_option("--t-count", b_spec.grid_count, "grid size");
    bounds->add_option("--sigma", b_spec.sigma, "single-node sigma (lemma1)");
    bounds->add_option("-m,--samples", b_spec.m, "samples per node (lemma1, prop1)");
    bounds->add_option("--sigma-vec", b_sigma_vec, "comma-separated per-node sigmas");
    bounds->add_option("--const-sigma", b_const_sigma, "constant sigma, used with --nodes");
    bounds->add_option("--nodes", b_nodes, "node count for --const-sigma");
    bounds->add_option("-N,--budget-n", b_spec.total_budget_n, "sample budget is N+1");
    bounds->add_option("--n-hat", b_spec.n_hat, "interpolation degree");
    bounds->add_option("-n,--degree", b_spec.trunc_degree, "truncation degree");
    bounds->add_option("-r,--presample-fraction", b_spec.r, "pre-sampling fraction (hetero)");
    bounds->add_option("-s,--slack", b_spec.s, "relative estimate slack (hetero)");
    bounds->add_option("--r-n-inf", b_spec.r_n_inf, "best-approximation residual sup norm");
    bounds->add_option("--q-inf", b_spec.q_inf, "exact-interpolant error sup norm (dependent)");
    bounds->add_option("--nu-vec", b_nu_vec, "comma-separated per-node nu (thm2)");
    bounds->add_option("--alpha", b_spec.alpha, "max alpha (thm2)");
    bounds->add_option("--t-star", b_spec.t_star, "branch crossover (thm2)");
    bounds->add_option("--out", b_out, "CSV output path");

    // bench
    auto* bench = app.add_subcommand("bench", "compare pipeline wall times over an N grid");
    std::string c_target = "runge", c_grid = "logspace(1e3, 1e6, 8)", c_n_hat = "sqrt",
                c_out = "bench.csv";
    NoiseOptions c_noise;
    int c_trials = 5;
    double c_r = 0.1;
    std::optional<std::uint64_t> c_seed;
    bench->add_option("--target", c_target, "runge | cheb(c0,c1,...)");
    c_noise.attach(bench);
    bench->add_option("--n-grid", c_grid, "logspace(min,max,count) | list(...)");
    bench->add_option("--trials", c_trials, "repetitions per point (median reported)");
    bench->add_option("--n-hat", c_n_hat, "sqrt | fixed(v) | sqrt_factor(c)");
    bench->add_option("-r,--presample-fraction", c_r, "pre-sampling fraction");
    bench->add_option("--seed", c_seed, "master seed");
    bench->add_option("--out", c_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (approx->parsed())
            return cmd_approximate(a_target, a_noise, a_algorithm, a_n, a_n_hat, a_r, a_seed,
                                   a_resolution, a_coeffs);
        if (sweep->parsed())
            return cmd_sweep(s_config, s_records, s_summary, s_gnuplot, s_seed, s_threads);
        if (alloc->parsed()) return cmd_alloc(l_target, l_noise, l_n, l_n_hat, l_r, l_seed, l_out);
        if (bounds->parsed()) {
            if (!b_sigma_vec.empty()) b_spec.sigma_vec = parse_double_list(b_sigma_vec);
            if (b_nodes > 0) b_spec.sigma_vec.assign(static_cast<std::size_t>(b_nodes), b_const_sigma);
            if (!b_nu_vec.empty()) b_spec.nu_vec = parse_double_list(b_nu_vec);
            return cmd_bounds(b_spec, b_out);
        }
        if (bench->parsed())
            return cmd_bench(c_target, c_noise, c_grid, c_trials, c_n_hat, c_r, c_seed, c_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
