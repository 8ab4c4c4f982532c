#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace chebtrunc {

enum class NoiseKind { Constant, Indicator, Expression };
enum class NoiseDistribution { Normal, UniformSymmetric };
enum class NoiseDependence { Independent, SharedAdditive };

/// Declarative description of a heteroskedastic noise field sigma(x) on
/// [-1,1], together with the draw distribution and the cross-point
/// dependence mode. Immutable value type.
class NoiseField {
public:
    static NoiseField constant(double sigma0);
    /// sigma(x) = hi on [a,b], lo elsewhere.
    static NoiseField indicator(double hi, double lo, double a, double b);
    /// Named closed forms: "sin3" is |sin(3x) + 1e-5|, "runge" is 1/(1+25x^2).
    static NoiseField expression(const std::string& name);

    NoiseField with_distribution(NoiseDistribution d) const;
    /// Switch to shared-additive dependence with the given weight in [0,1].
    NoiseField with_shared_dependence(double weight) const;

    /// Noise standard deviation at x; rejects x outside [-1,1].
    double sigma_at(double x) const;
    bool homoskedastic() const { return kind_ == NoiseKind::Constant; }

    NoiseKind kind() const { return kind_; }
    NoiseDistribution distribution() const { return distribution_; }
    NoiseDependence dependence() const { return dependence_; }
    double dependence_weight() const { return weight_; }
    const std::string& expression_name() const { return expr_name_; }

private:
    NoiseField() = default;

    NoiseKind kind_ = NoiseKind::Constant;
    double sigma0_ = 0.0;
    double hi_ = 0.0, lo_ = 0.0, a_ = 0.0, b_ = 0.0;
    std::string expr_name_;
    NoiseDistribution distribution_ = NoiseDistribution::Normal;
    NoiseDependence dependence_ = NoiseDependence::Independent;
    double weight_ = 0.0;
};

/// The only gateway to noisy evaluations y = f(x) + eps_x. Owns a
/// deterministic RNG stream: two oracles with equal (target, noise, seed)
/// produce bit-identical draw sequences. Single-threaded by design; create
/// one oracle per trial from a derived seed.
class SamplingOracle {
public:
    SamplingOracle(std::function<double(double)> target, NoiseField noise, std::uint64_t seed);

    double target(double x) const { return target_(x); }
    const NoiseField& noise() const { return noise_; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t samples_drawn() const { return samples_drawn_; }

    /// One noisy draw f(x) + eps, with eps of mean 0 and std sigma_at(x).
    double sample(double x);

    struct Moments {
        double mean = 0.0;
        double variance = 0.0;  // unbiased; 0 for count == 1
        std::int64_t count = 0;
    };

    /// Mean and unbiased sample variance of k fresh draws at x, accumulated
    /// with a single-pass Welford update.
    Moments sample_many(double x, std::int64_t k);

private:
    double unit_draw();

    std::function<double(double)> target_;
    NoiseField noise_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_;
    double shared_component_ = 0.0;
    std::int64_t samples_drawn_ = 0;
};

/// Named target functions usable in experiments ("runge").
std::function<double(double)> named_target(const std::string& name);

}  // namespace chebtrunc
