#ifndef ABEL_HARNESS_HPP
#define ABEL_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abel/quadrature.hpp"
#include "abel/solver.hpp"

namespace abel {

/// Test family on [0,1]:
///   k(x,y) = (1+xy)/(1+x^2)
///   u(y)   = y^q / Gamma(q+1)
///   f(x)   = x^{q+alpha} (q+1+alpha + (q+1) x^2) / (Gamma(q+2+alpha) (1+x^2))
/// The solution lies in the Hoelder class of exponent q (gamma metadata = q).
ProblemSpec test_problem(double alpha, double q);

/// Deterministic uniform noise on [-delta, delta] (splitmix64 generator,
/// one state step per sample, 53-bit mantissa mapping). Same seed, same
/// output, on every platform.
NoisyRhs inject_noise(std::span<const double> exact_values, double delta,
                      std::uint64_t seed);

struct ExperimentConfig {
    double alpha = 0.5;
    double q = 1.0;             // solution exponent
    bool use_corrections = false;
    std::vector<std::size_t> n_list = {32, 64, 128, 256, 512, 1024, 2048};
    double noise_c = 0.3;       // delta = noise_c * h^{noise_p + alpha}
    double noise_p = 1.0;       // exact-data order p(alpha, q)
    std::uint64_t seed = 1;     // row seed = seed + row index
    std::string output_path;
};

struct ExperimentRow {
    std::size_t n = 0;
    double delta = 0.0;
    double delta_rel_percent = 0.0;  // 100 delta / ||f||_inf over full grid points
    double max_error = 0.0;
    double ratio = 0.0;              // max_error / delta^{p/(p+alpha)}
};

/// One table: for each N builds the grid, calibrates delta, injects seeded
/// noise, solves (plain or modified), and reports the row. Rows may be
/// computed in parallel (ABEL_MIDPOINT_THREADS caps the worker count);
/// output order is always by n_list index.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// Preset configurations reproducing the published tables:
/// "1" (alpha=0.5, q=2, plain), "2" (0.9, 0.4, plain), "3" (0.2, 0.5, plain),
/// "4" (0.5, 1, plain), "4c" (0.5, 1, corrected).
ExperimentConfig example_config(const std::string& id);

/// Least-squares slope of log(error) against log(h), with the two coarsest
/// grids discarded. Requires at least 4 points.
double fit_rate(std::span<const double> h, std::span<const double> error);

/// CSV rendering of a table (header + one line per row, LF endings,
/// 17 significant digits).
std::string to_csv(std::span<const ExperimentRow> rows);

} // namespace abel

#endif
