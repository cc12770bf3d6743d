#include "abel/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace abel {

namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's table).
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtTwoPi = 2.506628274631000502415765284811045253;

double lanczos_gamma(double x) {
    if (x < 0.5) {
        // reflection formula keeps the series argument >= 0.5
        return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (x + i);
    }
    const double t = x + 7.5;
    return kSqrtTwoPi * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("gamma_fn: argument must be positive");
    }
    return lanczos_gamma(x);
}

} // namespace abel
