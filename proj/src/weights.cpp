#include "abel/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "abel/gamma.hpp"

namespace abel {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::domain_error("weights: alpha must lie in (0, 1]");
    }
}

// (s+1)^alpha - s^alpha without loss of significance for large s.
double pow_increment(double alpha, std::size_t s) {
    const double fs = static_cast<double>(s);
    if (s < 8) {
        return std::pow(fs + 1.0, alpha) - std::pow(fs, alpha);
    }
    return std::pow(fs, alpha) * std::expm1(alpha * std::log1p(1.0 / fs));
}

// tau_n for large n, as n^alpha/Gamma(alpha+1) times the series
//   -sum_{m>=2} P_m u^m (m-1) / (2 (m+1)!),  u = 1/n,
// where P_m = alpha (alpha-1) ... (alpha-m+1). The direct formula loses
// all significant digits for large n (the two terms agree to O(n^-2)).
double tau_tail(double alpha, double inv_gamma1, std::size_t n) {
    const double fn = static_cast<double>(n);
    const double u = 1.0 / fn;
    double brace = 0.0;
    double falling = 1.0;
    double factorial = 1.0; // (m+1)!
    double upow = 1.0;
    for (int m = 1; m < 48; ++m) {
        falling *= alpha - (m - 1);
        upow *= u;
        factorial *= m + 1;
        if (m >= 2) {
            const double term = -falling * upow * (m - 1) / (2.0 * factorial);
            brace += term;
            if (std::abs(term) <= 1e-22 * std::abs(brace)) break;
        }
    }
    return std::pow(fn, alpha) * inv_gamma1 * brace;
}

} // namespace

std::vector<double> compute_omega(double alpha, std::size_t n_max) {
    check_alpha(alpha);
    if (n_max < 1) throw std::invalid_argument("compute_omega: n_max >= 1 required");
    if (alpha == 1.0) {
        // classical midpoint rule
        return std::vector<double>(n_max + 1, 1.0);
    }
    const double inv_gamma1 = 1.0 / gamma_fn(alpha + 1.0);
    std::vector<double> omega(n_max + 1);
    for (std::size_t s = 0; s <= n_max; ++s) {
        omega[s] = pow_increment(alpha, s) * inv_gamma1;
    }
    return omega;
}

std::vector<double> compute_tau(double alpha, std::size_t n_max) {
    check_alpha(alpha);
    if (n_max < 1) throw std::invalid_argument("compute_tau: n_max >= 1 required");
    if (alpha == 1.0) {
        return std::vector<double>(n_max + 1, 0.0);
    }
    const double inv_gamma1 = 1.0 / gamma_fn(alpha + 1.0);
    const double inv_gamma2 = 1.0 / gamma_fn(alpha + 2.0);
    std::vector<double> tau(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n < 8) {
            const double fn = static_cast<double>(n);
            tau[n] = (std::pow(fn + 1.0, alpha + 1.0) - std::pow(fn, alpha + 1.0)) * inv_gamma2
                     - 0.5 * (std::pow(fn + 1.0, alpha) + std::pow(fn, alpha)) * inv_gamma1;
        } else {
            tau[n] = tau_tail(alpha, inv_gamma1, n);
        }
    }
    return tau;
}

std::vector<double> compute_omega_inv(std::span<const double> omega) {
    if (omega.empty() || omega[0] == 0.0) {
        throw std::invalid_argument("compute_omega_inv: leading coefficient must be nonzero");
    }
    const std::size_t len = omega.size();
    std::vector<double> inv(len);
    const double inv0 = 1.0 / omega[0];
    inv[0] = inv0;
    for (std::size_t n = 1; n < len; ++n) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            acc += omega[j] * inv[n - j];
        }
        inv[n] = -acc * inv0;
    }
    return inv;
}

std::vector<double> compute_beta(std::span<const double> omega_inv) {
    if (omega_inv.empty()) {
        throw std::invalid_argument("compute_beta: empty input");
    }
    std::vector<double> beta(omega_inv.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < omega_inv.size(); ++i) {
        acc += omega_inv[i];
        beta[i] = acc;
    }
    return beta;
}

std::vector<std::array<double, 2>>
compute_correction_weights(std::span<const double> tau, std::size_t n_max) {
    if (tau.size() < n_max) {
        throw std::invalid_argument("compute_correction_weights: tau too short");
    }
    std::vector<std::array<double, 2>> w(n_max);
    double acc = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        acc += tau[n - 1];
        w[n - 1] = {-acc, acc};
    }
    return w;
}

WeightTable WeightTable::build(double alpha, std::size_t n_max) {
    WeightTable t;
    t.alpha = alpha;
    t.n_max = n_max;
    t.omega = compute_omega(alpha, n_max);
    t.omega_inv = compute_omega_inv(t.omega);
    t.tau = compute_tau(alpha, n_max);
    t.beta = compute_beta(t.omega_inv);
    t.w_start = compute_correction_weights(t.tau, n_max);
    return t;
}

} // namespace abel
