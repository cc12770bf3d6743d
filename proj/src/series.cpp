#include "abel/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace abel {

PowerSeries convolve(const PowerSeries& a, const PowerSeries& b) {
    if (a.coeffs.empty() || b.coeffs.empty()) return PowerSeries{};
    const std::size_t len = std::min(a.coeffs.size(), b.coeffs.size());
    std::vector<double> out(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        const double ai = a.coeffs[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; i + j < len; ++j) {
            out[i + j] += ai * b.coeffs[j];
        }
    }
    return PowerSeries(std::move(out));
}

PowerSeries reciprocal(const PowerSeries& a) {
    if (a.coeffs.empty() || a.coeffs[0] == 0.0) {
        throw std::invalid_argument("reciprocal: constant term must be nonzero");
    }
    const std::size_t len = a.coeffs.size();
    std::vector<double> inv(len);
    const double inv0 = 1.0 / a.coeffs[0];
    inv[0] = inv0;
    for (std::size_t n = 1; n < len; ++n) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            acc += a.coeffs[j] * inv[n - j];
        }
        inv[n] = -acc * inv0;
    }
    return PowerSeries(std::move(inv));
}

PowerSeries binomial_series(double beta, std::size_t M) {
    std::vector<double> c(M + 1);
    c[0] = 1.0;
    for (std::size_t n = 1; n <= M; ++n) {
        c[n] = c[n - 1] * (static_cast<double>(n) - 1.0 - beta) / static_cast<double>(n);
    }
    return PowerSeries(std::move(c));
}

PowerSeries r_series(double alpha, std::span<const double> omega) {
    PowerSeries w(std::vector<double>(omega.begin(), omega.end()));
    return convolve(binomial_series(alpha, w.order()), w);
}

KaluzaCertificate kaluza_certificate(const PowerSeries& p) {
    const auto& q = p.coeffs;
    if (q.empty() || !(q[0] > 0.0)) {
        throw KaluzaPreconditionError(0, "kaluza: p_0 must be positive");
    }
    for (std::size_t n = 1; n < q.size(); ++n) {
        if (!(q[n] > 0.0)) {
            throw KaluzaPreconditionError(
                n, "kaluza: p_" + std::to_string(n) + " not positive");
        }
    }
    for (std::size_t s = 1; s + 1 < q.size(); ++s) {
        // ratio condition p_{s+1}/p_s >= p_s/p_{s-1}, cross-multiplied
        if (q[s + 1] * q[s - 1] < q[s] * q[s]) {
            throw KaluzaPreconditionError(
                s + 1, "kaluza: ratio condition fails at index " + std::to_string(s + 1));
        }
    }

    const PowerSeries inv = reciprocal(p);
    KaluzaCertificate cert;
    cert.c0 = inv.coeffs[0];
    cert.c.assign(inv.coeffs.size() > 1 ? inv.coeffs.size() - 1 : 0, 0.0);
    cert.signs_ok = cert.c0 > 0.0;
    cert.partial_sum_bound_ok = true;
    double partial = 0.0;
    for (std::size_t s = 1; s < inv.coeffs.size(); ++s) {
        const double cs = -inv.coeffs[s];
        cert.c[s - 1] = cs;
        if (!(cs >= 0.0)) cert.signs_ok = false;
        partial += cs;
        cert.max_partial_sum = std::max(cert.max_partial_sum, partial);
        const double bound = cert.c0 * q[s] / q[s - 1];
        if (partial > bound * (1.0 + 1e-12)) {
            cert.partial_sum_bound_ok = false;
        }
    }
    return cert;
}

double disc_min_modulus(const PowerSeries& a, double radius, std::size_t samples) {
    if (!(radius > 0.0) || radius >= 1.0) {
        throw std::invalid_argument("disc_min_modulus: radius must lie in (0, 1)");
    }
    if (samples == 0) {
        throw std::invalid_argument("disc_min_modulus: need at least one sample");
    }
    constexpr double kTwoPi = 6.283185307179586476925286766559005768;
    double min_mod = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(samples);
        const std::complex<double> z = std::polar(radius, theta);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = a.coeffs.size(); i-- > 0;) {
            acc = acc * z + a.coeffs[i];
        }
        min_mod = std::min(min_mod, std::abs(acc));
    }
    return min_mod;
}

} // namespace abel
