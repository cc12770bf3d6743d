#ifndef ABEL_VERIFY_HPP
#define ABEL_VERIFY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace abel {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Weight/series invariant suite for one alpha:
/// positivity and monotone ratios of the weights, sign pattern of the
/// inverse weights, the Gamma(alpha+1) sum identity, decay-slope
/// regressions for the inverse weights and their partial sums, the
/// convolution identity, the Kaluza sign certificate for
/// 2 Gamma(alpha+1) omega, and the unit-disc lower bound.
std::vector<CheckResult> run_invariant_suite(double alpha, std::size_t n_max);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace abel

#endif
