#ifndef ABEL_QUADRATURE_HPP
#define ABEL_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "abel/weights.hpp"

namespace abel {

/// Uniform grid on [0, a]: full points x_i = i h (i = 0..n) and midpoints
/// x_{j-1/2} = (j - 1/2) h (j = 1..n), h = a/n.
struct Grid {
    double a = 1.0;
    std::size_t n = 0;
    double h = 0.0;

    static Grid uniform(double a, std::size_t n) {
        if (!(a > 0.0) || n == 0) {
            throw std::invalid_argument("Grid: need a > 0 and n >= 1");
        }
        return Grid{a, n, a / static_cast<double>(n)};
    }

    double full(std::size_t i) const { return static_cast<double>(i) * h; }
    double mid(std::size_t j) const { return (static_cast<double>(j) - 0.5) * h; }
};

/// One Abel-type first-kind problem: kernel k(x,y) with k(x,x) = 1,
/// exact right-hand side f, optional exact solution u, and smoothness
/// metadata (Hoelder exponent gamma, optional constant L).
struct ProblemSpec {
    double alpha = 0.5;
    std::function<double(double, double)> kernel;
    std::function<double(double)> rhs;
    std::optional<std::function<double(double)>> exact_solution;
    double gamma = 1.0;
    std::optional<double> hoelder_L;
    double interval_end = 1.0;
};

/// Fractional integral of the monomial y^q:
/// Gamma(q+1)/Gamma(q+1+alpha) * x^{q+alpha}.
double abel_monomial_exact(double alpha, double q, double x);

/// Product midpoint rule: entry n-1 holds
/// h^alpha sum_{j=1}^{n} omega_{n-j} phi(x_{j-1/2}), n = 1..grid.n.
/// phi_mid must hold the midpoint samples phi(x_{j-1/2}).
std::vector<double> midpoint_apply(const WeightTable& weights, const Grid& grid,
                                   std::span<const double> phi_mid);

/// Modified rule with the starting corrections
/// + h^alpha (w_{n,1} phi(x_{1/2}) + w_{n,2} phi(x_{3/2}));
/// exact for polynomials of degree <= 1. Requires grid.n >= 2.
std::vector<double> midpoint_apply_modified(const WeightTable& weights, const Grid& grid,
                                            std::span<const double> phi_mid);

/// E_n(phi) = exact_value(x_n) - discrete value, n = 1..grid.n.
std::vector<double> quadrature_error(const WeightTable& weights, const Grid& grid,
                                     const std::function<double(double)>& phi,
                                     const std::function<double(double)>& exact_value);

/// Raised when the adaptive oracle cannot reach the requested accuracy.
struct QuadratureAccuracyError : std::runtime_error {
    double achieved;
    QuadratureAccuracyError(double est, const std::string& what)
        : std::runtime_error(what), achieved(est) {}
};

/// Reference evaluator for the fractional integral
///   I^alpha[phi](x) = 1/Gamma(alpha) int_0^x (x-y)^{alpha-1} phi(y) dy.
/// The substitution y = x (1 - t^{1/alpha}) removes the singularity:
///   I^alpha[phi](x) = x^alpha / Gamma(alpha+1) int_0^1 phi(x(1-t^{1/alpha})) dt,
/// and the remaining integral is evaluated by adaptive Gauss-Kronrod
/// refinement until two successive refinements agree to rel_tol.
double singular_quadrature_oracle(double alpha, const std::function<double(double)>& phi,
                                  double x, double rel_tol = 1e-10);

} // namespace abel

#endif
