#ifndef ABEL_WEIGHTS_HPP
#define ABEL_WEIGHTS_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace abel {

/// Grid-independent coefficients of the product midpoint rule for a given
/// alpha in (0,1] and truncation length n_max:
///
///   omega_s   = ((s+1)^alpha - s^alpha) / Gamma(alpha+1)
///   omega_inv = coefficients of the reciprocal power series 1/omega(xi)
///   tau_n     = quadrature-error kernel of the rule applied to C^1 data
///   beta_n    = sum_{l=0}^{n-1} omega_inv_l  (partial sums, n = 1..n_max+1)
///   w_start   = starting correction weights (w_{n,1}, w_{n,2}), n = 1..n_max
///
/// alpha = 1 is the classical midpoint rule: omega = (1,1,...),
/// omega_inv = (1,-1,0,...), tau = 0, w_start = 0.
struct WeightTable {
    double alpha = 0.0;
    std::size_t n_max = 0;
    std::vector<double> omega;
    std::vector<double> omega_inv;
    std::vector<double> tau;
    std::vector<double> beta;
    std::vector<std::array<double, 2>> w_start;

    /// Computes every sequence. Immutable after construction.
    static WeightTable build(double alpha, std::size_t n_max);
};

std::vector<double> compute_omega(double alpha, std::size_t n_max);
std::vector<double> compute_tau(double alpha, std::size_t n_max);

/// Reciprocal of the power series with the given coefficients, by forward
/// substitution. Throws std::invalid_argument if omega[0] == 0.
std::vector<double> compute_omega_inv(std::span<const double> omega);

/// beta[i] = sum of omega_inv[0..i], i.e. beta_{i+1}.
std::vector<double> compute_beta(std::span<const double> omega_inv);

/// (w_{n,1}, w_{n,2}) with w_{n,2} = sum_{j=0}^{n-1} tau_j and
/// w_{n,1} = -w_{n,2}, for n = 1..n_max.
std::vector<std::array<double, 2>>
compute_correction_weights(std::span<const double> tau, std::size_t n_max);

} // namespace abel

#endif
