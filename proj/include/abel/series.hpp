#ifndef ABEL_SERIES_HPP
#define ABEL_SERIES_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace abel {

/// Truncated formal power series with real coefficients c_0..c_M.
/// Arithmetic is exact truncation of the Cauchy product.
struct PowerSeries {
    std::vector<double> coeffs;

    PowerSeries() = default;
    explicit PowerSeries(std::vector<double> c) : coeffs(std::move(c)) {}
    PowerSeries(std::initializer_list<double> c) : coeffs(c) {}

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    double operator[](std::size_t i) const { return coeffs[i]; }
};

/// Cauchy product truncated to min(order(a), order(b)).
PowerSeries convolve(const PowerSeries& a, const PowerSeries& b);

/// Multiplicative inverse (same truncation). Throws std::invalid_argument
/// if the constant term vanishes.
PowerSeries reciprocal(const PowerSeries& a);

/// Coefficients of (1 - xi)^beta up to order M: c_0 = 1,
/// c_n = c_{n-1} (n-1-beta)/n.
PowerSeries binomial_series(double beta, std::size_t M);

/// r(xi) = (1 - xi)^alpha * omega(xi); satisfies r_0 = omega_0,
/// sum r_n -> 1 and |r_n| = O(n^{-alpha-2}).
PowerSeries r_series(double alpha, std::span<const double> omega);

/// Raised when a series does not satisfy the Kaluza conditions
/// (p_n > 0 and nondecreasing consecutive ratios).
struct KaluzaPreconditionError : std::invalid_argument {
    std::size_t index;
    KaluzaPreconditionError(std::size_t idx, const std::string& what)
        : std::invalid_argument(what), index(idx) {}
};

/// Sign certificate for the reciprocal of a Kaluza sequence:
/// 1/p = c0 - sum_{s>=1} c_s xi^s with c0 > 0, c_s >= 0 (strictly positive
/// when the ratio condition is strict), and the partial-sum bound
/// sum_{j<=s} c_j <= c0 * p_s/p_{s-1} for every s.
struct KaluzaCertificate {
    double c0 = 0.0;
    std::vector<double> c;      // c_1..c_M
    double max_partial_sum = 0.0;
    bool signs_ok = false;
    bool partial_sum_bound_ok = false;

    bool holds() const { return signs_ok && partial_sum_bound_ok; }
};

/// Checks the Kaluza conditions on p (throws KaluzaPreconditionError with
/// the first offending index) and returns the certificate.
KaluzaCertificate kaluza_certificate(const PowerSeries& p);

/// min over `samples` equispaced angles of |sum a_n (radius e^{i theta})^n|.
/// Requires radius in (0,1) so the truncated series is a controlled
/// approximation of the generating function.
double disc_min_modulus(const PowerSeries& a, double radius, std::size_t samples);

} // namespace abel

#endif
