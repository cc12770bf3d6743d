#include "abel/solver.hpp"

#include <algorithm>
#include <cmath>

#include "abel/gamma.hpp"

namespace abel {

namespace {

void check_solve_inputs(const Grid& grid, const NoisyRhs& rhs, const WeightTable& weights) {
    if (rhs.values.size() != grid.n) {
        throw std::invalid_argument("solve: rhs length must equal grid.n");
    }
    if (weights.n_max + 1 < grid.n) {
        throw std::invalid_argument("solve: weight table too short for grid");
    }
}

void attach_error(SolveReport& report, const ProblemSpec& problem, const Grid& grid) {
    if (!problem.exact_solution) return;
    const auto& u = *problem.exact_solution;
    double worst = 0.0;
    for (std::size_t j = 1; j <= grid.n; ++j) {
        worst = std::max(worst, std::abs(report.u_mid[j - 1] - u(grid.mid(j))));
    }
    report.max_error = worst;
}

} // namespace

SolveReport solve_plain(const ProblemSpec& problem, const Grid& grid,
                        const NoisyRhs& rhs, const WeightTable& weights) {
    check_solve_inputs(grid, rhs, weights);
    const double ha = std::pow(grid.h, weights.alpha);
    const auto& k = problem.kernel;
    const auto& omega = weights.omega;

    std::vector<double> mid(grid.n);
    for (std::size_t j = 1; j <= grid.n; ++j) mid[j - 1] = grid.mid(j);

    std::vector<double> u(grid.n);
    std::vector<double> krow(grid.n);
    for (std::size_t n = 1; n <= grid.n; ++n) {
        const double xn = grid.full(n);
        for (std::size_t j = 1; j <= n; ++j) krow[j - 1] = k(xn, mid[j - 1]);
        const double diag = omega[0] * krow[n - 1];
        if (diag == 0.0) {
            throw SingularKernelError(n, "solve_plain: zero diagonal at row " + std::to_string(n));
        }
        double acc = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            acc += omega[n - j] * krow[j - 1] * u[j - 1];
        }
        u[n - 1] = (rhs.values[n - 1] / ha - acc) / diag;
    }

    SolveReport report;
    report.u_mid = std::move(u);
    report.used_corrections = false;
    report.grid = grid;
    attach_error(report, problem, grid);
    return report;
}

SolveReport solve_modified(const ProblemSpec& problem, const Grid& grid,
                           const NoisyRhs& rhs, const WeightTable& weights) {
    if (grid.n < 3) {
        throw std::invalid_argument("solve_modified: grid.n >= 3 required");
    }
    check_solve_inputs(grid, rhs, weights);
    const double ha = std::pow(grid.h, weights.alpha);
    const auto& k = problem.kernel;
    const auto& omega = weights.omega;
    const auto& w = weights.w_start;

    std::vector<double> mid(grid.n);
    for (std::size_t j = 1; j <= grid.n; ++j) mid[j - 1] = grid.mid(j);

    // starting system S_h (u_{1/2}, u_{3/2})^T = (f_1, f_2)^T / h^alpha,
    // entries (omega_{n-j} + w_{n,j}) k(x_n, x_{j-1/2}) with omega_{-1} = 0
    double S[2][2];
    for (std::size_t n = 1; n <= 2; ++n) {
        for (std::size_t j = 1; j <= 2; ++j) {
            const double om = (n >= j) ? omega[n - j] : 0.0;
            S[n - 1][j - 1] = (om + w[n - 1][j - 1]) * k(grid.full(n), mid[j - 1]);
        }
    }
    const double det = S[0][0] * S[1][1] - S[0][1] * S[1][0];
    const double norm_S = std::max(std::abs(S[0][0]) + std::abs(S[0][1]),
                                   std::abs(S[1][0]) + std::abs(S[1][1]));
    if (det == 0.0) {
        throw StartingSystemError("solve_modified: singular starting system");
    }
    const double norm_S_inv = std::max(std::abs(S[1][1]) + std::abs(S[0][1]),
                                       std::abs(S[1][0]) + std::abs(S[0][0])) / std::abs(det);
    if (norm_S * norm_S_inv > 1e8) {
        throw StartingSystemError("solve_modified: starting system condition number exceeds 1e8");
    }

    std::vector<double> u(grid.n);
    const double b1 = rhs.values[0] / ha;
    const double b2 = rhs.values[1] / ha;
    u[0] = (b1 * S[1][1] - b2 * S[0][1]) / det;
    u[1] = (S[0][0] * b2 - S[1][0] * b1) / det;

    std::vector<double> krow(grid.n);
    for (std::size_t n = 3; n <= grid.n; ++n) {
        const double xn = grid.full(n);
        for (std::size_t j = 1; j <= n; ++j) krow[j - 1] = k(xn, mid[j - 1]);
        const double diag = omega[0] * krow[n - 1];
        if (diag == 0.0) {
            throw SingularKernelError(n,
                "solve_modified: zero diagonal at row " + std::to_string(n));
        }
        double acc = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            acc += omega[n - j] * krow[j - 1] * u[j - 1];
        }
        acc += w[n - 1][0] * krow[0] * u[0] + w[n - 1][1] * krow[1] * u[1];
        u[n - 1] = (rhs.values[n - 1] / ha - acc) / diag;
    }

    SolveReport report;
    report.u_mid = std::move(u);
    report.used_corrections = true;
    report.grid = grid;
    attach_error(report, problem, grid);
    return report;
}

std::pair<LowerTriangular, LowerTriangular>
build_matrices(const ProblemSpec& problem, const Grid& grid, const WeightTable& weights) {
    if (grid.n > 4096) {
        throw std::invalid_argument("build_matrices: dense diagnostic path limited to n <= 4096");
    }
    if (weights.n_max + 1 < grid.n) {
        throw std::invalid_argument("build_matrices: weight table too short");
    }
    LowerTriangular A(grid.n);
    LowerTriangular D(grid.n);
    for (std::size_t n = 1; n <= grid.n; ++n) {
        const double xn = grid.full(n);
        for (std::size_t j = 1; j <= n; ++j) {
            A.at(n, j) = weights.omega[n - j] * problem.kernel(xn, grid.mid(j));
            D.at(n, j) = weights.omega_inv[n - j];
        }
    }
    return {std::move(A), std::move(D)};
}

namespace {

double inf_norm(const LowerTriangular& M) {
    double worst = 0.0;
    for (std::size_t row = 1; row <= M.n; ++row) {
        double acc = 0.0;
        for (std::size_t col = 1; col <= row; ++col) acc += std::abs(M.at(row, col));
        worst = std::max(worst, acc);
    }
    return worst;
}

// ||M^{-1}||_inf by solving M z = e_j for every unit vector; the inverse of
// a lower-triangular matrix is lower-triangular, so column j only fills
// rows >= j.
double inv_inf_norm(const LowerTriangular& M) {
    const std::size_t n = M.n;
    std::vector<double> row_sums(n, 0.0);
    std::vector<double> z(n);
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t row = j; row <= n; ++row) {
            double acc = (row == j) ? 1.0 : 0.0;
            for (std::size_t col = j; col < row; ++col) {
                acc -= M.at(row, col) * z[col - 1];
            }
            const double diag = M.at(row, row);
            if (diag == 0.0) {
                throw std::runtime_error("stability_diagnostics: singular triangular factor");
            }
            z[row - 1] = acc / diag;
            row_sums[row - 1] += std::abs(z[row - 1]);
        }
    }
    return *std::max_element(row_sums.begin(), row_sums.end());
}

LowerTriangular tri_multiply(const LowerTriangular& L, const LowerTriangular& R) {
    LowerTriangular out(L.n);
    for (std::size_t row = 1; row <= L.n; ++row) {
        for (std::size_t col = 1; col <= row; ++col) {
            double acc = 0.0;
            for (std::size_t mid = col; mid <= row; ++mid) {
                acc += L.at(row, mid) * R.at(mid, col);
            }
            out.at(row, col) = acc;
        }
    }
    return out;
}

} // namespace

StabilityNorms stability_diagnostics(const LowerTriangular& A, const LowerTriangular& D,
                                     double h, double alpha) {
    if (A.n != D.n) {
        throw std::invalid_argument("stability_diagnostics: size mismatch");
    }
    StabilityNorms norms;
    norms.norm_D = inf_norm(D);
    norms.norm_DA_inv = inv_inf_norm(tri_multiply(D, A));
    norms.norm_A_inv = inv_inf_norm(A);
    norms.scaled_norm_A_inv = std::pow(h, alpha) * norms.norm_A_inv;
    return norms;
}

StepChoice choose_step_size(double delta, double gamma, double alpha, double c_scale,
                            bool zero_initial_conditions, double interval_length) {
    if (!(delta > 0.0)) throw std::invalid_argument("choose_step_size: delta must be > 0");
    if (!(c_scale > 0.0)) throw std::invalid_argument("choose_step_size: c_scale must be > 0");

    const bool direct_ok = alpha <= 0.5 && gamma > alpha && gamma <= 1.0 + alpha;
    const bool fractional_ok =
        (alpha >= 0.5 && gamma > 1.0 - alpha && gamma <= 2.0 - alpha) ||
        (gamma > 2.0 - alpha && zero_initial_conditions);

    StepChoice choice;
    if (direct_ok) {
        choice.regime = StepRegime::direct;
        choice.h = c_scale * std::pow(delta, 1.0 / gamma);
    } else if (fractional_ok) {
        choice.regime = StepRegime::fractional;
        choice.h = c_scale * std::pow(delta, 1.0 / (gamma - 1.0 + 2.0 * alpha));
    } else if (alpha < 0.5 && gamma > 1.0 + alpha && gamma <= 2.0 - alpha) {
        throw RateRegimeError(
            "choose_step_size: saturation gap (alpha < 1/2, 1+alpha < gamma <= 2-alpha): "
            "no improved rate is available in this range");
    } else {
        throw RateRegimeError("choose_step_size: gamma outside the admissible ranges "
                              "of both step-size regimes");
    }

    const double raw = interval_length / choice.h;
    const double clamped = std::clamp(std::round(raw), 4.0, 1048576.0);
    choice.n = static_cast<std::size_t>(clamped);
    return choice;
}

} // namespace abel
