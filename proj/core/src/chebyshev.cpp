#include "chebtrunc/chebyshev.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace chebtrunc {

namespace {

// FFTW plan creation is not thread-safe; execution through the new-array
// interface is. Plans are created with FFTW_UNALIGNED so they can run on any
// caller buffer, and cached per size (a run touches a bounded set of sizes).
class Dct1Plans {
public:
    static Dct1Plans& instance() {
        static Dct1Plans plans;
        return plans;
    }

    void execute(const double* in, double* out, std::size_t n) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(n);
            if (it == cache_.end()) {
                std::vector<double> a(n), b(n);
                plan = fftw_plan_r2r_1d(static_cast<int>(n), a.data(), b.data(), FFTW_REDFT00,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (plan == nullptr) throw std::runtime_error("fftw: failed to plan DCT-I");
                cache_.emplace(n, plan);
            } else {
                plan = it->second;
            }
        }
        // Out-of-place r2r transforms leave the input untouched.
        fftw_execute_r2r(plan, const_cast<double*>(in), out);
    }

private:
    Dct1Plans() = default;
    std::mutex mutex_;
    std::unordered_map<std::size_t, fftw_plan> cache_;
};

// REDFT00 of length N+1: Y_k = X_0 + (-1)^k X_N + 2 sum_{j=1}^{N-1} X_j cos(kj pi/N).
void dct1(const double* in, double* out, std::size_t n) { Dct1Plans::instance().execute(in, out, n); }

}  // namespace

ChebyshevGrid::ChebyshevGrid(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("ChebyshevGrid: degree must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(degree) + 1;
    points_.resize(n);
    if (degree == 0) {
        points_[0] = 1.0;
        return;
    }
    // Mirror the upper half so points[i] == -points[N-i] exactly.
    for (int i = 0; i <= degree / 2; ++i) {
        const double c = std::cos(static_cast<double>(i) * kPi / static_cast<double>(degree));
        points_[static_cast<std::size_t>(i)] = c;
        points_[static_cast<std::size_t>(degree - i)] = -c;
    }
    if (degree % 2 == 0) points_[static_cast<std::size_t>(degree / 2)] = 0.0;
}

ChebyshevSeries::ChebyshevSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("ChebyshevSeries: coefficient vector is empty");
}

ChebyshevGrid chebyshev_points(int degree) { return ChebyshevGrid(degree); }

ChebyshevSeries values_to_coeffs(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("values_to_coeffs: empty input");
    const std::size_t n = values.size();
    if (n == 1) return ChebyshevSeries({values[0]});

    std::vector<double> out(n);
    dct1(values.data(), out.data(), n);

    const double scale = 1.0 / static_cast<double>(n - 1);
    std::vector<double> coeffs(n);
    coeffs[0] = 0.5 * scale * out[0];
    for (std::size_t k = 1; k + 1 < n; ++k) coeffs[k] = scale * out[k];
    coeffs[n - 1] = 0.5 * scale * out[n - 1];
    return ChebyshevSeries(std::move(coeffs));
}

std::vector<double> coeffs_to_values(const ChebyshevSeries& series, const ChebyshevGrid& grid) {
    if (grid.degree() < series.degree())
        throw std::invalid_argument("coeffs_to_values: grid is smaller than the series degree");
    const std::size_t n = grid.size();
    if (n == 1) return {series[0]};

    // Halving the interior coefficients makes REDFT00 evaluate
    // sum_k c_k cos(kj pi/N) exactly.
    std::vector<double> in(n, 0.0);
    const auto& c = series.coeffs();
    in[0] = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) in[k] = 0.5 * c[k];
    if (series.degree() == grid.degree()) in[n - 1] = c[n - 1];

    std::vector<double> out(n);
    dct1(in.data(), out.data(), n);
    return out;
}

double evaluate(const ChebyshevSeries& series, double x) {
    const auto& c = series.coeffs();
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b;
    }
    return x * b1 - b2 + c[0];
}

ChebyshevSeries truncate(const ChebyshevSeries& series, int n) {
    if (n < 0 || n > series.degree())
        throw std::invalid_argument("truncate: target degree out of range");
    const auto& c = series.coeffs();
    return ChebyshevSeries(std::vector<double>(c.begin(), c.begin() + n + 1));
}

double lebesgue_log_bound(int degree) {
    if (degree < 0) throw std::invalid_argument("lebesgue_log_bound: negative degree");
    return 2.0 / kPi * std::log(static_cast<double>(degree) + 1.0) + 1.0;
}

double sup_error(const std::function<double(double)>& f, const ChebyshevSeries& series,
                 int resolution) {
    if (resolution < 2) throw std::invalid_argument("sup_error: resolution must be at least 2");
    const ChebyshevGrid dense(resolution - 1);
    double worst = 0.0;
    for (double x : dense.points()) worst = std::max(worst, std::abs(f(x) - evaluate(series, x)));
    return worst;
}

double sup_error(const std::function<double(double)>& f, const ChebyshevSeries& series) {
    return sup_error(f, series, 10 * std::max(series.degree(), 100));
}

}  // namespace chebtrunc
