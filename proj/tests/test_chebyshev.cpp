#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chebtrunc/chebyshev.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace chebtrunc;

namespace {

// O(N^2) reference transform: c_k = (2/N) sum'' f(x_j) cos(k j pi / N) with
// halved first/last terms of the sum, then c_0 and c_N halved again. Kept
// independent of the FFT path on purpose.
std::vector<double> direct_transform(const std::vector<double>& values) {
    const std::size_t n = values.size();
    const int N = static_cast<int>(n) - 1;
    if (N == 0) return {values[0]};
    std::vector<double> coeffs(n, 0.0);
    for (int k = 0; k <= N; ++k) {
        double sum = 0.0;
        for (int j = 0; j <= N; ++j) {
            const double w = (j == 0 || j == N) ? 0.5 : 1.0;
            sum += w * values[static_cast<std::size_t>(j)] *
                   std::cos(kPi * static_cast<double>(k) * static_cast<double>(j) /
                            static_cast<double>(N));
        }
        double c = 2.0 / static_cast<double>(N) * sum;
        if (k == 0 || k == N) c *= 0.5;
        coeffs[static_cast<std::size_t>(k)] = c;
    }
    return coeffs;
}

double runge(double x) { return 1.0 / (1.0 + 25.0 * x * x); }

std::vector<double> random_values(std::size_t count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(count);
    for (double& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("grid: stated points") {
    const ChebyshevGrid g2(2);
    CHECK(g2[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g2[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g2[2] == doctest::Approx(-1.0).epsilon(1e-15));

    const ChebyshevGrid g1(1);
    CHECK(g1[0] == 1.0);
    CHECK(g1[1] == -1.0);

    const ChebyshevGrid g4(4);
    CHECK(g4[1] == doctest::Approx(0.7071067811865476).epsilon(1e-16));

    const ChebyshevGrid g0(0);
    CHECK(g0.size() == 1);
    CHECK(g0[0] == 1.0);
}

TEST_CASE("grid: endpoints, monotonicity, symmetry") {
    for (int n : {1, 2, 3, 7, 64, 501, 1000}) {
        const ChebyshevGrid g(n);
        CHECK(g[0] == 1.0);
        CHECK(g[static_cast<std::size_t>(n)] == -1.0);
        for (int i = 0; i < n; ++i)
            CHECK(g[static_cast<std::size_t>(i)] > g[static_cast<std::size_t>(i) + 1]);
        for (int i = 0; i <= n; ++i)
            CHECK(g[static_cast<std::size_t>(i)] == -g[static_cast<std::size_t>(n - i)]);
    }
    CHECK_THROWS_AS(ChebyshevGrid(-1), std::invalid_argument);
}

TEST_CASE("values_to_coeffs: linear and constant") {
    const auto linear = values_to_coeffs(std::vector<double>{1.0, -1.0});
    CHECK(linear[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(linear[1] == doctest::Approx(1.0).epsilon(1e-15));

    for (int n : {0, 1, 5, 33}) {
        const auto ones = values_to_coeffs(std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0));
        CHECK(ones[0] == doctest::Approx(1.0).epsilon(1e-14));
        for (int k = 1; k <= n; ++k)
            CHECK(std::abs(ones[static_cast<std::size_t>(k)]) < 1e-14);
    }

    CHECK_THROWS_AS(values_to_coeffs(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("values_to_coeffs: Runge at N=32 matches the direct-sum oracle") {
    const ChebyshevGrid grid(32);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = runge(grid[i]);
    const auto fast = values_to_coeffs(values);
    const auto direct = direct_transform(values);
    for (std::size_t k = 0; k < direct.size(); ++k)
        CHECK(std::abs(fast[k] - direct[k]) < 1e-12);
}

TEST_CASE("transform matches the direct-sum oracle for every N <= 256") {
    std::mt19937_64 rng(1234);
    for (int n = 1; n <= 256; ++n) {
        const auto values = random_values(static_cast<std::size_t>(n) + 1, rng);
        const auto fast = values_to_coeffs(values);
        const auto direct = direct_transform(values);
        for (std::size_t k = 0; k < direct.size(); ++k)
            CHECK(std::abs(fast[k] - direct[k]) < 1e-12);
    }
}

TEST_CASE("round trip coeffs -> values -> coeffs up to N = 4096") {
    std::mt19937_64 rng(99);
    for (int n : {1, 2, 3, 10, 63, 64, 255, 1000, 4096}) {
        const auto values = random_values(static_cast<std::size_t>(n) + 1, rng);
        const auto series = values_to_coeffs(values);
        const auto back = coeffs_to_values(series, ChebyshevGrid(n));
        for (std::size_t i = 0; i < values.size(); ++i)
            CHECK(back[i] == doctest::Approx(values[i]).epsilon(1e-13));
    }
}

TEST_CASE("coeffs_to_values: stated examples and Clenshaw agreement") {
    const auto linear = coeffs_to_values(ChebyshevSeries({0.0, 1.0}), ChebyshevGrid(1));
    CHECK(linear[0] == doctest::Approx(1.0));
    CHECK(linear[1] == doctest::Approx(-1.0));

    const auto constant = coeffs_to_values(ChebyshevSeries({1.0}), ChebyshevGrid(2));
    for (double v : constant) CHECK(v == doctest::Approx(1.0));

    std::mt19937_64 rng(7);
    const auto coeffs = random_values(17, rng);
    const ChebyshevSeries series(coeffs);
    const ChebyshevGrid grid(16);
    const auto values = coeffs_to_values(series, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(values[i] == doctest::Approx(evaluate(series, grid[i])).epsilon(1e-13));

    CHECK_THROWS_AS(coeffs_to_values(ChebyshevSeries({1.0, 2.0, 3.0}), ChebyshevGrid(1)),
                    std::invalid_argument);
}

TEST_CASE("coeffs_to_values pads onto a finer grid") {
    const ChebyshevSeries series({0.5, -0.25, 0.125});
    const ChebyshevGrid grid(9);
    const auto values = coeffs_to_values(series, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(values[i] == doctest::Approx(evaluate(series, grid[i])).epsilon(1e-14));
}

TEST_CASE("evaluate: Clenshaw against closed forms") {
    CHECK(evaluate(ChebyshevSeries({0.0, 0.0, 1.0}), 0.0) == doctest::Approx(-1.0));
    CHECK(evaluate(ChebyshevSeries({3.0}), 0.37) == doctest::Approx(3.0));
    CHECK(evaluate(ChebyshevSeries({3.0}), -1.0) == doctest::Approx(3.0));
    // T3 via its monomial expansion 4x^3 - 3x
    const ChebyshevSeries t3({0.0, 0.0, 0.0, 1.0});
    for (double x : {0.5, -0.25, 0.99, -1.0, 1.0})
        CHECK(evaluate(t3, x) == doctest::Approx(4.0 * x * x * x - 3.0 * x).epsilon(1e-14));
    CHECK(evaluate(t3, 0.5) == doctest::Approx(-1.0));
}

TEST_CASE("truncate keeps an exact prefix") {
    const ChebyshevSeries s({1.0, 2.0, 3.0});
    CHECK(truncate(s, 2).coeffs() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(truncate(s, 0).coeffs() == std::vector<double>{1.0});
    CHECK(truncate(ChebyshevSeries({0.5, -0.2, 0.07, -0.01}), 1).coeffs() ==
          std::vector<double>{0.5, -0.2});
    CHECK_THROWS_AS(truncate(s, 3), std::invalid_argument);
    CHECK_THROWS_AS(truncate(s, -1), std::invalid_argument);
}

TEST_CASE("lebesgue_log_bound") {
    CHECK(lebesgue_log_bound(0) == doctest::Approx(1.0));
    CHECK(lebesgue_log_bound(9) == doctest::Approx(2.0 / kPi * std::log(10.0) + 1.0));
    CHECK(lebesgue_log_bound(9) == doctest::Approx(2.4657).epsilon(1e-4));
    double prev = 0.0;
    for (int n = 0; n <= 200; ++n) {
        const double v = lebesgue_log_bound(n);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("sup_error") {
    const ChebyshevSeries identity({0.0, 1.0});
    CHECK(sup_error([](double x) { return x; }, identity, 501) < 1e-15);

    const ChebyshevSeries zero({0.0, 0.0});
    CHECK(sup_error([](double x) { return x * x; }, zero, 1001) == doctest::Approx(1.0));

    // Runge against its own N=64 interpolant decays geometrically; the dense
    // check keeps it comfortably below 1e-4.
    const ChebyshevGrid grid(64);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = runge(grid[i]);
    const auto interpolant = values_to_coeffs(values);
    CHECK(sup_error(runge, interpolant, 5001) < 1e-4);

    CHECK_THROWS_AS(sup_error(runge, identity, 1), std::invalid_argument);

    // default resolution is 10 * max(degree, 100)
    CHECK(sup_error(runge, interpolant) == sup_error(runge, interpolant, 1000));
}

TEST_CASE("interpolation exactness for polynomials") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int degree : {0, 1, 2, 5, 12, 40}) {
        std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
        for (double& c : coeffs) c = dist(rng);
        const ChebyshevSeries poly(coeffs);
        for (int n : {degree, degree + 1, degree + 17}) {
            const ChebyshevGrid grid(n);
            std::vector<double> values(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) values[i] = evaluate(poly, grid[i]);
            const auto recovered = values_to_coeffs(values);
            for (int trial = 0; trial < 20; ++trial) {
                const double x = dist(rng);
                CHECK(evaluate(recovered, x) == doctest::Approx(evaluate(poly, x)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("grid symmetry splits parities") {
    const int n = 48;
    const ChebyshevGrid grid(n);
    std::vector<double> even(grid.size()), odd(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        even[i] = std::cos(5.0 * grid[i]);
        odd[i] = std::sin(5.0 * grid[i]);
    }
    const auto even_coeffs = values_to_coeffs(even);
    const auto odd_coeffs = values_to_coeffs(odd);
    for (int k = 1; k <= n; k += 2) CHECK(std::abs(even_coeffs[static_cast<std::size_t>(k)]) < 1e-13);
    for (int k = 0; k <= n; k += 2) CHECK(std::abs(odd_coeffs[static_cast<std::size_t>(k)]) < 1e-13);
}
