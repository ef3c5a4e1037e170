#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "scars/bessel.hpp"
#include "series_oracle.hpp"

using scars::bessel_eval;
using scars::bessel_j;
using scars::bessel_j_prime;
using scars::bessel_zero;
using scars::bessel_zeros_upto;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("values at the origin") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(5, 0.0) == 0.0);
    CHECK(bessel_j_prime(0, 0.0) == 0.0);
    CHECK(bessel_j_prime(1, 0.0) == 0.5);
    CHECK(bessel_j_prime(7, 0.0) == 0.0);
}

TEST_CASE("small-argument values match the series oracle") {
    // covers both evaluation branches: series region and recurrence region
    for (int l = 0; l <= 10; ++l)
        for (double x = 0.5; x <= 20.0; x += 0.5) {
            const double expected = static_cast<double>(oracle::series_j(l, x));
            CHECK(std::fabs(bessel_j(l, x) - expected) <= 1e-10);
        }
}

TEST_CASE("high-order value near a tabulated zero is tiny") {
    const double v = bessel_j(111, 241.87);
    CHECK(std::fabs(v) < 5e-3);
    CHECK(v == doctest::Approx(-0.00016553555740054065).epsilon(1e-6));
}

TEST_CASE("standard-library cross-check on moderate orders") {
    for (int l : {0, 3, 17, 42})
        for (double x : {0.7, 4.1, 13.0, 55.5, 88.0})
            CHECK(bessel_j(l, x) ==
                  doctest::Approx(std::cyl_bessel_j(static_cast<double>(l), x)).epsilon(1e-9));
}

TEST_CASE("magnitude bound |J_l| <= 1") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> order(0, 200);
    std::uniform_real_distribution<double> arg(0.0, 400.0);
    for (int i = 0; i < 2000; ++i)
        CHECK(std::fabs(bessel_j(order(rng), arg(rng))) <= 1.0 + 1e-12);
}

TEST_CASE("recurrence and derivative identities") {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<int> order(1, 200);
    std::uniform_real_distribution<double> arg(1e-3, 400.0);
    for (int i = 0; i < 2000; ++i) {
        const int l = order(rng);
        const double x = arg(rng);
        const double jm = bessel_j(l - 1, x);
        const double j0 = bessel_j(l, x);
        const double jp = bessel_j(l + 1, x);
        CHECK(std::fabs(jm + jp - (2.0 * l / x) * j0) <= 1e-8);
        CHECK(std::fabs(bessel_j_prime(l, x) - 0.5 * (jm - jp)) <= 1e-8);
    }
}

TEST_CASE("derivative consistency against the oracle") {
    // J_0'(j_{0,1}) = -J_1(j_{0,1})
    const double z = 2.404825557695773;
    const double expected = -static_cast<double>(oracle::series_j(1, z));
    CHECK(bessel_j_prime(0, z) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("eval bundles value and derivative coherently") {
    const scars::BesselEval ev = bessel_eval(13, 40.0);
    CHECK(ev.order == 13);
    CHECK(ev.argument == 40.0);
    CHECK(ev.value == doctest::Approx(bessel_j(13, 40.0)).epsilon(1e-14));
    CHECK(ev.derivative == doctest::Approx(bessel_j_prime(13, 40.0)).epsilon(1e-14));
}

TEST_CASE("first zeros against the bisection oracle") {
    CHECK(bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-10));
    CHECK(bessel_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-10));
    CHECK(bessel_zero(0, 3) == doctest::Approx(8.653727912911013).epsilon(1e-10));
    CHECK(bessel_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-10));
    for (int l = 0; l <= 6; ++l)
        for (int n = 1; n <= 3; ++n) {
            const double expected = static_cast<double>(oracle::series_zero(l, n));
            if (expected > 0.0) CHECK(std::fabs(bessel_zero(l, n) - expected) <= 1e-9);
        }
}

TEST_CASE("tabulated high-order zeros") {
    CHECK(std::fabs(bessel_zero(111, 30) - 241.87) <= 0.01);
    CHECK(std::fabs(bessel_zero(120, 27) - 242.14) <= 0.01);
    CHECK(std::fabs(bessel_zero(129, 24) - 241.96) <= 0.01);
}

TEST_CASE("zeros are genuine roots and increase strictly") {
    for (int l : {0, 7, 64, 111}) {
        double prev = 0.0;
        for (int n = 1; n <= 5; ++n) {
            const double z = bessel_zero(l, n);
            CHECK(z > prev);
            prev = z;
            const scars::BesselEval ev = bessel_eval(l, z);
            CHECK(std::fabs(ev.value) <= 1e-8 * std::max(1.0, std::fabs(ev.derivative)));
        }
    }
}

TEST_CASE("zero list extraction") {
    const auto z0 = bessel_zeros_upto(0, 10.0);
    REQUIRE(z0.size() == 3);
    CHECK(z0[0] == doctest::Approx(2.404825557695773).epsilon(1e-10));
    CHECK(z0[1] == doctest::Approx(5.520078110286311).epsilon(1e-10));
    CHECK(z0[2] == doctest::Approx(8.653727912911013).epsilon(1e-10));

    CHECK(bessel_zeros_upto(0, 2.0).empty());

    const auto z111 = bessel_zeros_upto(111, 243.0);
    REQUIRE(z111.size() >= 30);
    CHECK(std::fabs(z111[29] - 241.87) <= 0.01);
    // list agrees with the single-zero API
    CHECK(z111[29] == doctest::Approx(bessel_zero(111, 30)).epsilon(1e-12));
}

TEST_CASE("zero interlacing between adjacent orders") {
    for (int l : {0, 1, 2, 5, 20, 111}) {
        const double x_max = l + 60.0;
        const auto a = bessel_zeros_upto(l, x_max);
        const auto b = bessel_zeros_upto(l + 1, x_max);
        REQUIRE(a.size() >= 4);
        REQUIRE(b.size() >= 3);
        for (std::size_t i = 0; i + 1 < a.size() && i < b.size(); ++i) {
            CHECK(a[i] < b[i]);
            CHECK(b[i] < a[i + 1]);
        }
    }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(bessel_j(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(513, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, -0.5), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, 1025.0), std::domain_error);
    CHECK_THROWS_AS(bessel_zero(0, 0), std::domain_error);
    CHECK_THROWS_AS(bessel_zero(0, 100000), std::range_error);
    CHECK_THROWS_AS(bessel_zeros_upto(0, 1100.0), std::range_error);
}

TEST_CASE("scan step never skips zeros on a dense table") {
    // spacing between consecutive zeros always exceeds the pi/4 scan step;
    // re-scan at half step must find the identical table
    const auto coarse = bessel_zeros_upto(17, 80.0);
    std::vector<double> fine;
    const double step = kPi / 8.0;
    double a = 17.0, fa = bessel_j(17, a);
    while (a < 80.0) {
        const double b = std::min(a + step, 80.0);
        const double fb = bessel_j(17, b);
        if ((fa < 0.0) != (fb < 0.0)) fine.push_back(0.5 * (a + b));
        a = b;
        fa = fb;
    }
    REQUIRE(coarse.size() == fine.size());
    for (std::size_t i = 0; i < coarse.size(); ++i)
        CHECK(std::fabs(coarse[i] - fine[i]) <= 0.5);
}
