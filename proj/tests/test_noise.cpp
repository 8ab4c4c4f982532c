#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chebtrunc/noise.hpp>
#include <chebtrunc/rng.hpp>

#include <cmath>
#include <vector>

using namespace chebtrunc;

namespace {

double zero_fn(double) { return 0.0; }
double runge(double x) { return 1.0 / (1.0 + 25.0 * x * x); }

}  // namespace

TEST_CASE("sigma_at: burst field and expression catalog") {
    const NoiseField burst = NoiseField::indicator(1.0, 1e-5, 0.0, 0.1);
    CHECK(burst.sigma_at(0.05) == doctest::Approx(1.0));
    CHECK(burst.sigma_at(-0.5) == doctest::Approx(1e-5));
    CHECK(burst.sigma_at(0.0) == doctest::Approx(1.0));
    CHECK_FALSE(burst.homoskedastic());

    const NoiseField sin3 = NoiseField::expression("sin3");
    CHECK(sin3.sigma_at(0.0) == doctest::Approx(1e-5));
    CHECK(sin3.sigma_at(0.4) == doctest::Approx(std::abs(std::sin(1.2) + 1e-5)));

    const NoiseField flat = NoiseField::constant(0.25);
    CHECK(flat.homoskedastic());
    CHECK(flat.sigma_at(0.9) == doctest::Approx(0.25));

    CHECK_THROWS_AS(burst.sigma_at(1.5), std::invalid_argument);
    CHECK_THROWS_AS(NoiseField::constant(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseField::expression("nope"), std::invalid_argument);
}

TEST_CASE("zero noise reproduces the target exactly") {
    SamplingOracle oracle(runge, NoiseField::constant(0.0), 42);
    for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(oracle.sample(x) == runge(x));
    const auto stats = oracle.sample_many(0.5, 17);
    CHECK(stats.mean == runge(0.5));
    CHECK(stats.variance == 0.0);
}

TEST_CASE("fixed seed gives bit-identical streams") {
    const NoiseField field = NoiseField::indicator(1.0, 0.1, -0.5, 0.5);
    SamplingOracle a(runge, field, 777);
    SamplingOracle b(runge, field, 777);
    for (int i = 0; i < 100; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / 99.0;
        CHECK(a.sample(x) == b.sample(x));
    }
    SamplingOracle c(runge, field, 778);
    bool any_different = false;
    for (int i = 0; i < 100; ++i)
        if (a.sample(0.25) != c.sample(0.25)) any_different = true;
    CHECK(any_different);
}

TEST_CASE("normal draws: empirical mean and std at sigma=1") {
    SamplingOracle oracle(zero_fn, NoiseField::constant(1.0), 2025);
    const int n = 1'000'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = oracle.sample(0.0);
        sum += y;
        sum2 += y * y;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum2 / n - mean * mean);
    CHECK(std::abs(mean) < 0.005);
    CHECK(sd > 0.995);
    CHECK(sd < 1.005);
    CHECK(oracle.samples_drawn() == n);
}

TEST_CASE("uniform-symmetric draws have the declared variance") {
    const NoiseField field =
        NoiseField::constant(0.5).with_distribution(NoiseDistribution::UniformSymmetric);
    SamplingOracle oracle(zero_fn, field, 11);
    const int n = 400'000;
    double sum2 = 0.0, max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = oracle.sample(0.0);
        sum2 += y * y;
        max_abs = std::max(max_abs, std::abs(y));
    }
    // Half-width is sigma * sqrt(3).
    CHECK(max_abs <= 0.5 * std::sqrt(3.0) + 1e-12);
    CHECK(std::sqrt(sum2 / n) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("sample_many: two-draw formula and moment bands") {
    const NoiseField field = NoiseField::constant(1.0);
    SamplingOracle replay(zero_fn, field, 3001);
    const double a = replay.sample(0.2);
    const double b = replay.sample(0.2);
    SamplingOracle oracle(zero_fn, field, 3001);
    const auto stats = oracle.sample_many(0.2, 2);
    CHECK(stats.mean == doctest::Approx(0.5 * (a + b)).epsilon(1e-15));
    CHECK(stats.variance == doctest::Approx(0.5 * (a - b) * (a - b)).epsilon(1e-12));
    CHECK(stats.count == 2);

    SamplingOracle big(runge, field, 3002);
    const auto wide = big.sample_many(0.3, 10'000);
    CHECK(std::abs(wide.mean - runge(0.3)) < 0.04);
    CHECK(wide.variance > 0.94);
    CHECK(wide.variance < 1.06);

    CHECK_THROWS_AS(oracle.sample_many(0.0, 0), std::invalid_argument);
}

TEST_CASE("variance of the k-sample mean is sigma^2/k") {
    const int k = 16;
    const int reps = 20'000;
    SamplingOracle oracle(zero_fn, NoiseField::constant(1.0), 515);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < reps; ++i) {
        const double m = oracle.sample_many(0.0, k).mean;
        sum += m;
        sum2 += m * m;
    }
    const double var = sum2 / reps - (sum / reps) * (sum / reps);
    CHECK(var == doctest::Approx(1.0 / k).epsilon(0.06));
}

TEST_CASE("budget accounting is exact") {
    SamplingOracle oracle(zero_fn, NoiseField::constant(0.3), 90);
    std::int64_t expected = 0;
    for (std::int64_t k : {1, 2, 7, 100, 1, 999}) {
        oracle.sample_many(0.1, k);
        expected += k;
    }
    oracle.sample(-0.4);
    ++expected;
    CHECK(oracle.samples_drawn() == expected);
}

TEST_CASE("independent mode: draws at distinct points are uncorrelated") {
    const int pairs = 10'000;
    std::vector<double> u(pairs), v(pairs);
    for (int i = 0; i < pairs; ++i) {
        SamplingOracle oracle(zero_fn, NoiseField::constant(1.0),
                              derive_seed(40, {static_cast<std::uint64_t>(i)}));
        u[static_cast<std::size_t>(i)] = oracle.sample(-0.6);
        v[static_cast<std::size_t>(i)] = oracle.sample(0.6);
    }
    double su = 0, sv = 0, suu = 0, svv = 0, suv = 0;
    for (int i = 0; i < pairs; ++i) {
        su += u[i];
        sv += v[i];
        suu += u[i] * u[i];
        svv += v[i] * v[i];
        suv += u[i] * v[i];
    }
    const double mu = su / pairs, mv = sv / pairs;
    const double corr =
        (suv / pairs - mu * mv) / std::sqrt((suu / pairs - mu * mu) * (svv / pairs - mv * mv));
    CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("shared-additive dependence") {
    // w = 1: the local part vanishes, so every draw at a point is the same
    // shift, scaled by sigma(x).
    const NoiseField extreme = NoiseField::constant(2.0).with_shared_dependence(1.0);
    SamplingOracle oracle(zero_fn, extreme, 61);
    const double first = oracle.sample(0.1);
    for (int i = 0; i < 10; ++i) CHECK(oracle.sample(0.1) == doctest::Approx(first).epsilon(1e-15));
    CHECK(oracle.sample(-0.9) == doctest::Approx(first).epsilon(1e-15));

    // w = 0.5: cross-point correlation of single draws is w^2.
    const NoiseField half = NoiseField::constant(1.0).with_shared_dependence(0.5);
    const int reps = 20'000;
    double su = 0, sv = 0, suu = 0, svv = 0, suv = 0;
    for (int i = 0; i < reps; ++i) {
        SamplingOracle o(zero_fn, half, derive_seed(88, {static_cast<std::uint64_t>(i)}));
        const double a = o.sample(-0.5);
        const double b = o.sample(0.5);
        su += a;
        sv += b;
        suu += a * a;
        svv += b * b;
        suv += a * b;
    }
    const double mu = su / reps, mv = sv / reps;
    const double corr =
        (suv / reps - mu * mv) / std::sqrt((suu / reps - mu * mu) * (svv / reps - mv * mv));
    CHECK(corr == doctest::Approx(0.25).epsilon(0.15));

    CHECK_THROWS_AS(NoiseField::constant(1.0).with_shared_dependence(1.5), std::invalid_argument);
}

TEST_CASE("seed derivation separates streams") {
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
    CHECK(derive_seed(5, {1, 10, 0}) == derive_seed(5, {1, 10, 0}));
}
