#pragma once

#include <functional>
#include <span>
#include <vector>

namespace chebtrunc {

inline constexpr double kPi = 3.14159265358979323846;

/// Chebyshev extrema grid on [-1,1]: points[i] = cos(i*pi/N), descending
/// from 1 to -1. Degree 0 is the single point x = 1.
class ChebyshevGrid {
public:
    explicit ChebyshevGrid(int degree);

    int degree() const { return degree_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<double>& points() const { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }

private:
    int degree_;
    std::vector<double> points_;
};

/// Polynomial in the Chebyshev basis: p(x) = sum coeffs[i] * T_i(x).
class ChebyshevSeries {
public:
    explicit ChebyshevSeries(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](std::size_t i) const { return coeffs_[i]; }

private:
    std::vector<double> coeffs_;
};

ChebyshevGrid chebyshev_points(int degree);

/// Interpolate the given point values (taken at the matching Chebyshev grid)
/// as a Chebyshev series. DCT-I based, O(N log N) for any N.
ChebyshevSeries values_to_coeffs(std::span<const double> values);

/// Evaluate the series at every point of `grid`; inverse of values_to_coeffs
/// when grid.degree() == series.degree(). Requires grid at least as fine as
/// the series degree.
std::vector<double> coeffs_to_values(const ChebyshevSeries& series, const ChebyshevGrid& grid);

/// Clenshaw evaluation of the series at a single point.
double evaluate(const ChebyshevSeries& series, double x);

/// Keep coefficients 0..n unchanged, drop the rest.
ChebyshevSeries truncate(const ChebyshevSeries& series, int n);

/// Upper bound (2/pi) log(N+1) + 1 on the Lebesgue constant of degree-N
/// Chebyshev interpolation.
double lebesgue_log_bound(int degree);

/// Max of |f(x) - series(x)| over a dense Chebyshev grid with `resolution`
/// points. An under-estimate of the true sup-norm that converges as the
/// resolution grows.
double sup_error(const std::function<double(double)>& f, const ChebyshevSeries& series,
                 int resolution);

/// sup_error at the default resolution 10 * max(series.degree(), 100).
double sup_error(const std::function<double(double)>& f, const ChebyshevSeries& series);

}  // namespace chebtrunc
