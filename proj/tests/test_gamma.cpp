#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "abel/gamma.hpp"

using abel::gamma_fn;

TEST_CASE("gamma at integers") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("gamma against high-precision reference") {
    // reference values computed with 40-digit arithmetic
    static const double table[][2] = {
        {0.1, 9.5135076986687318363},
        {0.25, 3.6256099082219083119},
        {0.5, 1.7724538509055160273},
        {0.75, 1.2254167024651776451},
        {1.3, 0.89747069630627718849},
        {1.5, 0.88622692545275801365},
        {1.9, 0.96176583190738741941},
        {2.3, 1.166711905198160345},
        {2.5, 1.3293403881791370205},
        {2.7, 1.544685845850593765},
        {3.0, 2.0},
        {3.3, 2.6834373819557687936},
        {3.5, 3.3233509704478425512},
        {4.2, 7.7566895357931776387},
        {4.5, 11.631728396567448929},
        {0.9999, 1.0000577314579576838},
        {1.0001, 0.99994228832316241908},
    };
    for (const auto& [x, ref] : table) {
        CHECK(std::abs(gamma_fn(x) - ref) / ref <= 1e-13);
    }
}

TEST_CASE("gamma half-integer closed form") {
    const double sqrt_pi = 1.7724538509055160273;
    CHECK(std::abs(gamma_fn(1.5) - 0.5 * sqrt_pi) <= 1e-15);
}

TEST_CASE("gamma rejects nonpositive arguments") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}
