#include <Eigen/Dense>

#include "doctest.h"
#include "ttb/assembly.hpp"
#include "ttb/hermite_beam.hpp"
#include "ttb/vehicle.hpp"

using ttb::locate_wheel;
using ttb::VehicleParams;
using ttb::vehicle_position;
using ttb::vehicle_speed;

TEST_SUITE_BEGIN("vehicle");

TEST_CASE("position under constant speed and acceleration") {
    VehicleParams constant{5750.0, 0.0, 0.0, 0.0, 27.78, 0.0};
    CHECK(vehicle_position(constant, 0.0) == 0.0);
    CHECK(vehicle_position(constant, 1.08) == doctest::Approx(30.0024).epsilon(1e-12));
    CHECK(vehicle_speed(constant, 5.0) == 27.78);

    VehicleParams accel{1000.0, 0.0, 0.0, 0.0, 10.0, 2.0};
    CHECK(vehicle_position(accel, 3.0) == doctest::Approx(39.0).epsilon(1e-14));
    CHECK(vehicle_speed(accel, 3.0) == doctest::Approx(16.0).epsilon(1e-14));

    CHECK(vehicle_position(constant, 2.0, 5.0) == doctest::Approx(5.0 + 2.0 * 27.78));
    CHECK_THROWS_AS(vehicle_position(constant, -1.0), std::domain_error);
}

TEST_CASE("wheel localization") {
    const auto origin = locate_wheel(0.0, 3.0, 10);
    CHECK(origin.j == 1);
    CHECK(origin.s == 0.0);
    CHECK(origin.xi == 0.0);

    const auto interior = locate_wheel(7.5, 3.0, 10);
    CHECK(interior.j == 3);
    CHECK(interior.s == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(interior.xi == doctest::Approx(0.5).epsilon(1e-14));

    // right boundary clamps onto the last element
    const auto end = locate_wheel(30.0, 3.0, 10);
    CHECK(end.j == 10);
    CHECK(end.s == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(end.xi == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(locate_wheel(-0.1, 3.0, 10), std::domain_error);
    CHECK_THROWS_AS(locate_wheel(30.1, 3.0, 10), std::domain_error);
    CHECK_THROWS_AS(locate_wheel(1.0, 0.0, 10), std::domain_error);
}

TEST_CASE("parameter validation") {
    VehicleParams ok{5750.0, 0.0, 1.595e6, 0.0, 27.78, 0.0};
    CHECK_NOTHROW(ok.validate());
    VehicleParams bad = ok;
    bad.m_body = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.v = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.k_susp = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.m_wheel = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("shape embedding is continuous across element boundaries") {
    const int n = 10;
    const double l = 3.0;
    const double eps = 1e-9;

    auto embed = [&](double x) {
        const auto loc = locate_wheel(x, l, n);
        const auto sh = ttb::shape(loc.xi, loc.l);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * (n + 1));
        for (int a = 0; a < 4; ++a) g(2 * (loc.j - 1) + a) += sh.n(a);
        return g;
    };

    for (int p = 1; p < n; ++p) {
        const double x = p * l;
        const Eigen::VectorXd left = embed(x - eps);
        const Eigen::VectorXd right = embed(x + eps);
        const Eigen::VectorXd at = embed(x);
        CHECK((left - right).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((left - at).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_SUITE_END();
