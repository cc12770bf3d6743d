#ifndef ABEL_SOLVER_HPP
#define ABEL_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abel/quadrature.hpp"
#include "abel/weights.hpp"

namespace abel {

/// Right-hand side samples f_n^delta at x_1..x_N with known noise level:
/// |f_n^delta - f(x_n)| <= delta.
struct NoisyRhs {
    std::vector<double> values;
    double delta = 0.0;
};

struct StabilityNorms {
    double norm_D = 0.0;        // ||D_h||_inf
    double norm_DA_inv = 0.0;   // ||(D_h A_h)^{-1}||_inf
    double norm_A_inv = 0.0;    // ||A_h^{-1}||_inf
    double scaled_norm_A_inv = 0.0;  // h^alpha ||A_h^{-1}||_inf
};

struct SolveReport {
    std::vector<double> u_mid;  // u_{j-1/2}^delta, j = 1..N
    std::optional<double> max_error;  // vs exact solution, if supplied
    std::optional<StabilityNorms> stability;
    bool used_corrections = false;
    Grid grid;
    std::optional<std::uint64_t> seed;
};

struct SingularKernelError : std::runtime_error {
    std::size_t index;
    SingularKernelError(std::size_t idx, const std::string& what)
        : std::runtime_error(what), index(idx) {}
};

struct StartingSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Plain scheme: forward substitution on
///   h^alpha sum_{j<=n} omega_{n-j} k(x_n, x_{j-1/2}) u_{j-1/2} = f_n^delta.
SolveReport solve_plain(const ProblemSpec& problem, const Grid& grid,
                        const NoisyRhs& rhs, const WeightTable& weights);

/// Modified scheme: 2x2 starting system with weights
/// omega_{n-j} + w_{n,j} (omega_{-1} = 0), then recursion for n >= 3.
/// Requires grid.n >= 3 and a kernel defined on the full square.
SolveReport solve_modified(const ProblemSpec& problem, const Grid& grid,
                           const NoisyRhs& rhs, const WeightTable& weights);

/// Dense lower-triangular matrix, row-major, 1-indexed via at().
struct LowerTriangular {
    std::size_t n = 0;
    std::vector<double> data;  // n*n, upper part zero

    explicit LowerTriangular(std::size_t size) : n(size), data(size * size, 0.0) {}
    double& at(std::size_t row, std::size_t col) { return data[(row - 1) * n + (col - 1)]; }
    double at(std::size_t row, std::size_t col) const { return data[(row - 1) * n + (col - 1)]; }
};

/// A_h[n][j] = omega_{n-j} k(x_n, x_{j-1/2}), D_h[n][j] = omega_inv_{n-j}.
/// Dense diagnostic path, limited to grid.n <= 4096.
std::pair<LowerTriangular, LowerTriangular>
build_matrices(const ProblemSpec& problem, const Grid& grid, const WeightTable& weights);

/// Max-norm stability quantities of the matrices from build_matrices.
StabilityNorms stability_diagnostics(const LowerTriangular& A, const LowerTriangular& D,
                                     double h, double alpha);

enum class StepRegime {
    direct,      // h ~ delta^{1/gamma}
    fractional,  // h ~ delta^{1/(gamma-1+2 alpha)}
};

struct StepChoice {
    std::size_t n = 0;
    StepRegime regime = StepRegime::direct;
    double h = 0.0;
};

struct RateRegimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Noise-calibrated step size. Admissible ranges:
///   direct:     alpha <= 1/2 and alpha < gamma <= 1 + alpha
///   fractional: alpha >= 1/2 and 1 - alpha < gamma <= 2 - alpha, or
///               gamma > 2 - alpha with zero initial conditions/corrections.
/// Outside both, throws RateRegimeError naming the gap.
StepChoice choose_step_size(double delta, double gamma, double alpha, double c_scale,
                            bool zero_initial_conditions, double interval_length = 1.0);

} // namespace abel

#endif
