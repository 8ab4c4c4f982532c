#include "chebtrunc/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace chebtrunc {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_domain(double x) {
    if (!(x >= -1.0 && x <= 1.0))
        throw std::invalid_argument("noise: x outside [-1,1]");
}

double expression_sigma(const std::string& name, double x) {
    if (name == "sin3") return std::abs(std::sin(3.0 * x) + 1e-5);
    if (name == "runge") return 1.0 / (1.0 + 25.0 * x * x);
    throw std::invalid_argument("noise: unknown expression '" + name + "'");
}

}  // namespace

NoiseField NoiseField::constant(double sigma0) {
    if (sigma0 < 0.0) throw std::invalid_argument("NoiseField: sigma must be nonnegative");
    NoiseField f;
    f.kind_ = NoiseKind::Constant;
    f.sigma0_ = sigma0;
    return f;
}

NoiseField NoiseField::indicator(double hi, double lo, double a, double b) {
    if (hi < 0.0 || lo < 0.0) throw std::invalid_argument("NoiseField: sigma must be nonnegative");
    if (!(a <= b) || a < -1.0 || b > 1.0)
        throw std::invalid_argument("NoiseField: indicator interval must satisfy -1 <= a <= b <= 1");
    NoiseField f;
    f.kind_ = NoiseKind::Indicator;
    f.hi_ = hi;
    f.lo_ = lo;
    f.a_ = a;
    f.b_ = b;
    return f;
}

NoiseField NoiseField::expression(const std::string& name) {
    expression_sigma(name, 0.0);  // validates the name
    NoiseField f;
    f.kind_ = NoiseKind::Expression;
    f.expr_name_ = name;
    return f;
}

NoiseField NoiseField::with_distribution(NoiseDistribution d) const {
    NoiseField f = *this;
    f.distribution_ = d;
    return f;
}

NoiseField NoiseField::with_shared_dependence(double weight) const {
    if (weight < 0.0 || weight > 1.0)
        throw std::invalid_argument("NoiseField: dependence weight must be in [0,1]");
    NoiseField f = *this;
    f.dependence_ = NoiseDependence::SharedAdditive;
    f.weight_ = weight;
    return f;
}

double NoiseField::sigma_at(double x) const {
    check_domain(x);
    switch (kind_) {
        case NoiseKind::Constant:
            return sigma0_;
        case NoiseKind::Indicator:
            return (x >= a_ && x <= b_) ? hi_ : lo_;
        case NoiseKind::Expression:
            return expression_sigma(expr_name_, x);
    }
    throw std::logic_error("NoiseField: unreachable");
}

SamplingOracle::SamplingOracle(std::function<double(double)> target, NoiseField noise,
                               std::uint64_t seed)
    : target_(std::move(target)),
      noise_(std::move(noise)),
      seed_(seed),
      rng_(seed),
      uniform_(-kSqrt3, kSqrt3) {
    // The shared component is one standard-normal draw fixed for the oracle
    // lifetime; drawing it up front keeps the stream layout independent of
    // the call sequence.
    if (noise_.dependence() == NoiseDependence::SharedAdditive) shared_component_ = normal_(rng_);
}

double SamplingOracle::unit_draw() {
    // Unit-variance draw from the configured family. Uniform-symmetric is
    // U[-sqrt(3), sqrt(3)], which has variance 1.
    return noise_.distribution() == NoiseDistribution::Normal ? normal_(rng_) : uniform_(rng_);
}

double SamplingOracle::sample(double x) {
    check_domain(x);
    const double fx = target_(x);
    const double sigma = noise_.sigma_at(x);
    double eps = unit_draw();
    if (noise_.dependence() == NoiseDependence::SharedAdditive) {
        const double w = noise_.dependence_weight();
        eps = std::sqrt(1.0 - w * w) * eps + w * shared_component_;
    }
    ++samples_drawn_;
    return fx + sigma * eps;
}

SamplingOracle::Moments SamplingOracle::sample_many(double x, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("sample_many: k must be positive");
    check_domain(x);
    const double fx = target_(x);
    const double sigma = noise_.sigma_at(x);
    const bool shared = noise_.dependence() == NoiseDependence::SharedAdditive;
    const double w = noise_.dependence_weight();
    const double local_scale = shared ? std::sqrt(1.0 - w * w) : 1.0;
    const double shared_offset = shared ? w * shared_component_ : 0.0;

    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
        const double y = fx + sigma * (local_scale * unit_draw() + shared_offset);
        const double delta = y - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (y - mean);
    }
    samples_drawn_ += k;
    return {mean, k > 1 ? m2 / static_cast<double>(k - 1) : 0.0, k};
}

std::function<double(double)> named_target(const std::string& name) {
    if (name == "runge") return [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
    throw std::invalid_argument("named_target: unknown target '" + name + "'");
}

}  // namespace chebtrunc
