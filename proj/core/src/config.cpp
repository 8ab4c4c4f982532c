#include "chebtrunc/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chebtrunc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!trim(current).empty() || !parts.empty()) parts.push_back(trim(current));
    return parts;
}

double parse_number(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("config: bad number '" + s + "'");
    return v;
}

std::int64_t parse_integer(const std::string& s) {
    const double v = parse_number(s);
    if (std::floor(v) != v) throw std::invalid_argument("config: expected integer, got '" + s + "'");
    return static_cast<std::int64_t>(v);
}

std::uint64_t parse_seed(const std::string& s) {
    std::size_t pos = 0;
    std::uint64_t v;
    try {
        v = std::stoull(s, &pos, 0);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad seed '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("config: bad seed '" + s + "'");
    return v;
}

// Splits "name(arg, arg, ...)" into name and raw args; a bare word has no args.
struct Call {
    std::string name;
    std::vector<std::string> args;
};

Call parse_call(const std::string& spec) {
    const auto open = spec.find('(');
    if (open == std::string::npos) return {trim(spec), {}};
    if (spec.back() != ')') throw std::invalid_argument("config: missing ')' in '" + spec + "'");
    Call c;
    c.name = trim(spec.substr(0, open));
    const std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    if (!trim(inner).empty()) c.args = split_commas(inner);
    return c;
}

// Named arguments "k=v" with a fixed key set; positional args also accepted
// in the declared order.
std::vector<double> named_args(const Call& call, const std::vector<std::string>& keys) {
    std::vector<double> values(keys.size(), std::numeric_limits<double>::quiet_NaN());
    std::size_t positional = 0;
    for (const std::string& arg : call.args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos) {
            if (positional >= keys.size())
                throw std::invalid_argument("config: too many arguments in '" + call.name + "(...)'");
            values[positional++] = parse_number(arg);
            continue;
        }
        const std::string key = trim(arg.substr(0, eq));
        const auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end())
            throw std::invalid_argument("config: unknown argument '" + key + "' in '" + call.name +
                                        "(...)'");
        values[static_cast<std::size_t>(it - keys.begin())] = parse_number(trim(arg.substr(eq + 1)));
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (std::isnan(values[i]))
            throw std::invalid_argument("config: missing argument '" + keys[i] + "' in '" +
                                        call.name + "(...)'");
    return values;
}

}  // namespace

NoiseField parse_noise_spec(const std::string& spec) {
    const Call call = parse_call(spec);
    if (call.name == "constant") {
        const auto v = named_args(call, {"sigma"});
        return NoiseField::constant(v[0]);
    }
    if (call.name == "burst" || call.name == "indicator") {
        const auto v = named_args(call, {"hi", "lo", "a", "b"});
        return NoiseField::indicator(v[0], v[1], v[2], v[3]);
    }
    if (call.name == "expr") {
        if (call.args.size() != 1)
            throw std::invalid_argument("config: expr() takes one name argument");
        std::string name = call.args[0];
        const auto eq = name.find('=');
        if (eq != std::string::npos) name = trim(name.substr(eq + 1));
        return NoiseField::expression(name);
    }
    throw std::invalid_argument("config: unknown noise spec '" + spec + "'");
}

TargetSpec parse_target_spec(const std::string& spec) {
    const Call call = parse_call(spec);
    if (call.args.empty()) return TargetSpec::named(call.name);
    if (call.name == "cheb") {
        std::vector<double> coeffs;
        coeffs.reserve(call.args.size());
        for (const std::string& arg : call.args) coeffs.push_back(parse_number(arg));
        return TargetSpec::chebyshev(std::move(coeffs));
    }
    throw std::invalid_argument("config: unknown target spec '" + spec + "'");
}

std::vector<int> parse_n_grid(const std::string& spec) {
    const Call call = parse_call(spec);
    std::vector<int> grid;
    if (call.name == "logspace") {
        if (call.args.size() != 3)
            throw std::invalid_argument("config: logspace takes (min, max, count)");
        const double lo = parse_number(call.args[0]);
        const double hi = parse_number(call.args[1]);
        const std::int64_t count = parse_integer(call.args[2]);
        if (!(lo > 0.0) || !(hi >= lo) || count < 1)
            throw std::invalid_argument("config: bad logspace range");
        for (std::int64_t i = 0; i < count; ++i) {
            const double frac = count == 1 ? 0.0
                                           : static_cast<double>(i) / static_cast<double>(count - 1);
            const double v = std::pow(10.0, std::log10(lo) + frac * (std::log10(hi) - std::log10(lo)));
            const int n = static_cast<int>(std::llround(v));
            if (grid.empty() || grid.back() != n) grid.push_back(n);
        }
    } else if (call.name == "list") {
        for (const std::string& arg : call.args) grid.push_back(static_cast<int>(parse_integer(arg)));
    } else {
        throw std::invalid_argument("config: unknown N grid spec '" + spec + "'");
    }
    if (grid.empty()) throw std::invalid_argument("config: empty N grid");
    return grid;
}

NHatRule parse_n_hat_rule(const std::string& spec) {
    const Call call = parse_call(spec);
    if (call.name == "sqrt" && call.args.empty()) return {NHatRule::Kind::Sqrt, 1.0};
    if (call.name == "fixed") {
        if (call.args.size() != 1) throw std::invalid_argument("config: fixed takes one value");
        return {NHatRule::Kind::Fixed, static_cast<double>(parse_integer(call.args[0]))};
    }
    if (call.name == "sqrt_factor") {
        if (call.args.size() != 1) throw std::invalid_argument("config: sqrt_factor takes one value");
        return {NHatRule::Kind::FactorSqrt, parse_number(call.args[0])};
    }
    throw std::invalid_argument("config: unknown n_hat rule '" + spec + "'");
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw std::invalid_argument("config: duplicate key '" + key + "'");

        if (key == "target") {
            config.target = parse_target_spec(value);
        } else if (key == "noise") {
            const NoiseDistribution dist = config.noise.distribution();
            const NoiseDependence dep = config.noise.dependence();
            const double w = config.noise.dependence_weight();
            config.noise = parse_noise_spec(value).with_distribution(dist);
            if (dep == NoiseDependence::SharedAdditive)
                config.noise = config.noise.with_shared_dependence(w);
        } else if (key == "distribution") {
            if (value == "normal")
                config.noise = config.noise.with_distribution(NoiseDistribution::Normal);
            else if (value == "uniform")
                config.noise = config.noise.with_distribution(NoiseDistribution::UniformSymmetric);
            else
                throw std::invalid_argument("config: unknown distribution '" + value + "'");
        } else if (key == "dependence") {
            if (value == "independent") {
                // default; nothing to do
            } else {
                const Call call = parse_call(value);
                if (call.name != "shared")
                    throw std::invalid_argument("config: unknown dependence '" + value + "'");
                const auto v = named_args(call, {"w"});
                config.noise = config.noise.with_shared_dependence(v[0]);
            }
        } else if (key == "algorithms") {
            config.algorithms.clear();
            for (const std::string& name : split_commas(value))
                config.algorithms.push_back(algorithm_from_name(name));
        } else if (key == "n_grid") {
            config.n_grid = parse_n_grid(value);
        } else if (key == "trials") {
            config.trials = static_cast<int>(parse_integer(value));
        } else if (key == "n_hat") {
            config.n_hat = parse_n_hat_rule(value);
        } else if (key == "r") {
            config.r = parse_number(value);
        } else if (key == "master_seed") {
            config.master_seed = parse_seed(value);
            config.master_seed_from_config = true;
        } else if (key == "sup_resolution") {
            config.sup_resolution = static_cast<int>(parse_integer(value));
        } else if (key == "emit_timing") {
            if (value == "true")
                config.emit_timing = true;
            else if (value == "false")
                config.emit_timing = false;
            else
                throw std::invalid_argument("config: emit_timing must be true or false");
        } else if (key == "threads") {
            config.threads = static_cast<int>(parse_integer(value));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace chebtrunc
