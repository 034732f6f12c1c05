#include "doctest.h"

#include <cmath>

#include "adx/constants.hpp"

using namespace adx;

TEST_CASE("sphere area and ball volume closed forms") {
    CHECK(sphere_area(2) == doctest::Approx(2.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    CHECK(sphere_area(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
    CHECK(ball_volume(4) == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
    CHECK(ball_volume(2) == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("minimal regularization index") {
    CHECK(min_index({2, 4}) == 2);
    CHECK(min_index({1, 2}) == 2);
    CHECK(min_index({2, 5}) == 3);  // ceil(5/2)
    CHECK(min_index({3, 4}) == 2);
    CHECK(min_index({2, 6}) == 3);
}

TEST_CASE("sharp exponential constant") {
    // m=2, n=4: 32 pi^2
    CHECK(adams_constant({2, 4}) ==
          doctest::Approx(32.0 * pi * pi).epsilon(1e-12));
    // first-order case reduces to n * omega_{n-1}^{1/(n-1)}
    for (int n = 2; n <= 10; ++n) {
        double ref = n * std::pow(sphere_area(n), 1.0 / (n - 1.0));
        CHECK(adams_constant({1, n}) == doctest::Approx(ref).epsilon(1e-12));
    }
    // m=1, n=2 classical value 4 pi
    CHECK(adams_constant({1, 2}) == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK_THROWS(adams_constant({4, 4}));
    CHECK_THROWS(adams_constant({0, 4}));
}
