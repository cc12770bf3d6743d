#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "abel/gamma.hpp"
#include "abel/series.hpp"
#include "abel/verify.hpp"
#include "abel/weights.hpp"

using namespace abel;

namespace {

// deterministic coefficients for property checks
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    double next_unit() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    double next_signed() { return 2.0 * next_unit() - 1.0; }
};

PowerSeries random_series(TestRng& rng, std::size_t order) {
    std::vector<double> c(order + 1);
    for (double& v : c) v = rng.next_signed();
    return PowerSeries(std::move(c));
}

// |c_0| >= min_c0 with a geometric tail, so the reciprocal stays bounded
PowerSeries random_invertible_series(TestRng& rng, std::size_t order, double min_c0) {
    std::vector<double> c(order + 1);
    double c0 = rng.next_signed();
    if (std::abs(c0) < min_c0) c0 = (c0 < 0.0 ? -1.0 : 1.0) * min_c0;
    c[0] = c0;
    double scale = std::abs(c0);
    for (std::size_t n = 1; n <= order; ++n) {
        scale *= 0.4;
        c[n] = scale * rng.next_signed();
    }
    return PowerSeries(std::move(c));
}

double max_abs_diff(const PowerSeries& a, const PowerSeries& b) {
    REQUIRE(a.coeffs.size() == b.coeffs.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("convolution with the unit element") {
    const PowerSeries e{1.0, 0.0, 0.0};
    const PowerSeries a{2.0, -1.0, 0.25};
    const PowerSeries prod = convolve(e, a);
    CHECK(max_abs_diff(prod, a) == 0.0);
}

TEST_CASE("convolution squares (1+xi)") {
    const PowerSeries a{1.0, 1.0, 0.0};
    const PowerSeries sq = convolve(a, a);
    CHECK(sq.coeffs == std::vector<double>{1.0, 2.0, 1.0});
}

TEST_CASE("binomial series of opposite exponents invert each other") {
    for (double alpha : {0.2, 0.5, 0.9}) {
        const PowerSeries prod = convolve(binomial_series(-alpha, 512),
                                          binomial_series(alpha, 512));
        for (std::size_t i = 0; i < prod.coeffs.size(); ++i) {
            CHECK(std::abs(prod.coeffs[i] - (i == 0 ? 1.0 : 0.0)) <= 1e-10);
        }
    }
}

TEST_CASE("convolution is commutative and associative") {
    TestRng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const PowerSeries a = random_series(rng, 64);
        const PowerSeries b = random_series(rng, 64);
        const PowerSeries c = random_series(rng, 64);
        CHECK(max_abs_diff(convolve(a, b), convolve(b, a)) <= 1e-12);
        CHECK(max_abs_diff(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) <= 1e-12);
    }
}

TEST_CASE("reciprocal of the unit element") {
    const PowerSeries e{1.0, 0.0, 0.0, 0.0};
    CHECK(max_abs_diff(reciprocal(e), e) == 0.0);
}

TEST_CASE("reciprocal of the all-ones series") {
    const PowerSeries ones(std::vector<double>(6, 1.0));
    const PowerSeries inv = reciprocal(ones);
    CHECK(inv.coeffs[0] == 1.0);
    CHECK(inv.coeffs[1] == -1.0);
    for (std::size_t i = 2; i < inv.coeffs.size(); ++i) CHECK(inv.coeffs[i] == 0.0);
}

TEST_CASE("reciprocal of 2 + xi is the geometric series") {
    const PowerSeries a{2.0, 1.0, 0.0, 0.0, 0.0};
    const PowerSeries inv = reciprocal(a);
    CHECK(inv.coeffs[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(inv.coeffs[1] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(inv.coeffs[2] == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(inv.coeffs[3] == doctest::Approx(-0.0625).epsilon(1e-15));
}

TEST_CASE("reciprocal rejects a vanishing constant term") {
    const PowerSeries a{0.0, 1.0};
    CHECK_THROWS_AS(reciprocal(a), std::invalid_argument);
}

TEST_CASE("reciprocal is an involution") {
    TestRng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const PowerSeries a = random_invertible_series(rng, 48, 0.1);
        CHECK(max_abs_diff(reciprocal(reciprocal(a)), a) <= 1e-9);
    }
}

TEST_CASE("reciprocal against convolution") {
    TestRng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const PowerSeries a = random_invertible_series(rng, 48, 0.25);
        const PowerSeries prod = convolve(a, reciprocal(a));
        for (std::size_t i = 0; i < prod.coeffs.size(); ++i) {
            CHECK(std::abs(prod.coeffs[i] - (i == 0 ? 1.0 : 0.0)) <= 1e-10);
        }
    }
}

TEST_CASE("binomial series basics") {
    const PowerSeries b1 = binomial_series(1.0, 3);
    CHECK(b1.coeffs == std::vector<double>{1.0, -1.0, 0.0, 0.0});
    const PowerSeries b0 = binomial_series(0.0, 3);
    CHECK(b0.coeffs == std::vector<double>{1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("binomial series tail constant") {
    // n^{beta+1} c_n -> 1/Gamma(-beta) for beta = 0.5
    const std::size_t n = 10000;
    const PowerSeries b = binomial_series(0.5, n);
    const double scaled = std::pow(static_cast<double>(n), 1.5) * b.coeffs[n];
    CHECK(scaled == doctest::Approx(-0.28209479177387814).epsilon(1e-3));
}

TEST_CASE("r series of the classical weights is the unit") {
    const auto omega = compute_omega(1.0, 64);
    const PowerSeries r = r_series(1.0, omega);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
        CHECK(std::abs(r.coeffs[i] - (i == 0 ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("r series constant term and decay") {
    const double alpha = 0.5;
    const std::size_t M = 8192;
    const auto omega = compute_omega(alpha, M);
    const PowerSeries r = r_series(alpha, omega);
    CHECK(r.coeffs[0] == doctest::Approx(omega[0]).epsilon(1e-15));

    std::vector<double> ns, vals;
    for (std::size_t n = M / 4; n <= M; ++n) {
        ns.push_back(static_cast<double>(n));
        vals.push_back(r.coeffs[n]);
    }
    CHECK(std::abs(loglog_slope(ns, vals) + 2.5) <= 0.15);
}

TEST_CASE("r series partial sums approach 1") {
    // truncated series cannot be evaluated at xi=1; the partial sums must
    // approach 1 under refinement of the truncation
    const double alpha = 0.3;
    const auto omega = compute_omega(alpha, 8192);
    const PowerSeries r = r_series(alpha, omega);
    double prev_gap = 1.0;
    for (std::size_t M : {1024u, 2048u, 4096u, 8192u}) {
        double sum = 0.0;
        for (std::size_t i = 0; i <= M; ++i) sum += r.coeffs[i];
        const double gap = std::abs(sum - 1.0);
        CHECK(gap <= 1e-3);
        CHECK(gap <= prev_gap + 1e-15);
        prev_gap = gap;
    }
}

TEST_CASE("factorization chain reproduces the inverse weights") {
    // omega_inv = (1-xi)^alpha / r(xi)
    const double alpha = 0.5;
    const std::size_t M = 2048;
    const auto omega = compute_omega(alpha, M);
    const auto omega_inv = compute_omega_inv(omega);
    const PowerSeries chain =
        convolve(binomial_series(alpha, M), reciprocal(r_series(alpha, omega)));
    for (std::size_t n = 0; n <= M; ++n) {
        CHECK(std::abs(chain.coeffs[n] - omega_inv[n]) <= 1e-8);
    }
}

TEST_CASE("Kaluza certificate for the scaled weight series") {
    const double alpha = 0.5;
    const double g1 = gamma_fn(alpha + 1.0);
    const auto omega = compute_omega(alpha, 2048);
    PowerSeries p;
    p.coeffs.resize(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) p.coeffs[i] = 2.0 * g1 * omega[i];
    const KaluzaCertificate cert = kaluza_certificate(p);
    CHECK(cert.holds());
    CHECK(cert.c0 == doctest::Approx(0.5).epsilon(1e-14));
    double total = 0.0;
    for (double cs : cert.c) {
        CHECK(cs > 0.0);
        total += cs;
    }
    CHECK(total < cert.c0);
    CHECK(cert.max_partial_sum < 0.5);
}

TEST_CASE("Kaluza certificate of the all-ones series") {
    const PowerSeries ones(std::vector<double>(16, 1.0));
    const KaluzaCertificate cert = kaluza_certificate(ones);
    CHECK(cert.holds());
    CHECK(cert.c0 == 1.0);
    CHECK(cert.c[0] == 1.0);
    for (std::size_t i = 1; i < cert.c.size(); ++i) CHECK(cert.c[i] == 0.0);
}

TEST_CASE("Kaluza precondition failure reports the first offending index") {
    const PowerSeries p{1.0, 2.0, 1.0};
    CHECK_THROWS_AS(kaluza_certificate(p), KaluzaPreconditionError);
    try {
        kaluza_certificate(p);
    } catch (const KaluzaPreconditionError& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("disc minimum of the unit element") {
    const PowerSeries e{1.0, 0.0, 0.0};
    CHECK(disc_min_modulus(e, 0.5, 64) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("disc lower bound for the weight series") {
    const double alpha = 0.5;
    const auto omega = compute_omega(alpha, 4096);
    const PowerSeries w(std::vector<double>(omega.begin(), omega.end()));
    const double min_mod = disc_min_modulus(w, 0.99, 4096);
    CHECK(min_mod >= 0.56418958354775628);  // 1/(2 Gamma(1.5))
}

TEST_CASE("disc minimum of 0.5 - 0.5 xi near the boundary") {
    const PowerSeries q{0.5, -0.5};
    const double min_mod = disc_min_modulus(q, 0.999, 4096);
    // minimum sits at theta = 0: 0.5 (1 - r)
    CHECK(min_mod == doctest::Approx(5.0e-4).epsilon(1e-10));
    CHECK(min_mod > 0.0);
}

TEST_CASE("disc sampling validates its arguments") {
    const PowerSeries e{1.0};
    CHECK_THROWS_AS(disc_min_modulus(e, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(disc_min_modulus(e, 0.5, 0), std::invalid_argument);
}
