#ifndef ABEL_GAMMA_HPP
#define ABEL_GAMMA_HPP

namespace abel {

/// Gamma function for positive real arguments (Lanczos approximation,
/// relative accuracy better than 1e-13 on (0, 5]).
/// Throws std::domain_error for x <= 0.
double gamma_fn(double x);

} // namespace abel

#endif
