#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "ttb/config.hpp"
#include "ttb/errors.hpp"
#include "ttb/reference.hpp"
#include "ttb/sim.hpp"

using ttb::AccelUpdate;
using ttb::benchmark_config;
using ttb::Probe;
using ttb::ProbeQuantity;
using ttb::ProbeTarget;
using ttb::run_simulation;
using ttb::SimConfig;

namespace {

SimConfig light_crossing() {
    SimConfig cfg;
    cfg.mesh.n = 4;
    cfg.mesh.l = 3.0;
    cfg.mesh.rail = ttb::BeamSection{2e7, 50.0, 0.0};
    cfg.mesh.bridge = ttb::BeamSection{8e9, 2000.0, 0.0};
    cfg.mesh.k_bed = 1e11;
    cfg.vehicle = ttb::VehicleParams{1000.0, 0.0, 0.0, 0.0, 12.0, 0.0};
    cfg.newmark = ttb::NewmarkParams{0.25, 0.5, 0.005};
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("sim");

TEST_CASE("unforced system stays identically at rest") {
    SimConfig cfg = benchmark_config();
    cfg.gravity = 0.0;
    const auto hist = run_simulation(cfg);
    for (const auto& column : hist.columns) {
        for (double v : column) CHECK(v == 0.0);
    }
}

TEST_CASE("crossing step count") {
    const SimConfig cfg = benchmark_config();
    CHECK(cfg.crossing_time() == doctest::Approx(30.0 / 27.78).epsilon(1e-14));
    const auto hist = run_simulation(cfg);
    CHECK(hist.times.size() == 217);  // 216 steps at dt = 0.005, t = 0 included
    CHECK(hist.columns.size() == 3);
    CHECK(hist.names[0] == "bridge_disp@15");
    CHECK(hist.units[2] == "m/s^2");
}

TEST_CASE("moving-force crossing matches the modal series within 1% of peak") {
    SimConfig cfg = benchmark_config();
    cfg.vehicle.k_susp = 0.0;
    const auto hist = run_simulation(cfg);

    const ttb::reference::MovingForceModel oracle{
        {30.0, cfg.mesh.bridge.rigidity, cfg.mesh.bridge.mass_per_length},
        cfg.vehicle.m_body * cfg.gravity,
        cfg.vehicle.v,
        50};
    double worst = 0.0, peak = 0.0;
    const auto& disp = hist.columns[0];
    for (std::size_t i = 0; i < hist.times.size(); ++i) {
        const double exact = ttb::reference::moving_force_displacement(oracle, 15.0, hist.times[i]);
        worst = std::max(worst, std::abs(disp[i] - exact));
        peak = std::max(peak, std::abs(exact));
    }
    CHECK(worst <= 0.01 * peak);
}

TEST_CASE("moving-force response is exactly linear in the load") {
    SimConfig cfg = light_crossing();
    const auto base = run_simulation(cfg);
    cfg.vehicle.m_body *= 2.0;  // doubles the moving force m_body * g
    const auto twice = run_simulation(cfg);
    for (std::size_t c = 0; c < base.columns.size(); ++c) {
        for (std::size_t i = 0; i < base.columns[c].size(); ++i) {
            CHECK(twice.columns[c][i] == 2.0 * base.columns[c][i]);
        }
    }
}

TEST_CASE("free vibration after exit: constant amplitude at the first frequency") {
    SimConfig cfg = benchmark_config();
    cfg.tail = 1.4;
    const auto hist = run_simulation(cfg);
    const auto& w = hist.columns[0];
    const auto& t = hist.times;

    // interpolated upward zero crossings in the tail window
    std::vector<double> crossings;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] < 1.2) continue;
        if (w[i - 1] < 0.0 && w[i] >= 0.0) {
            const double frac = -w[i - 1] / (w[i] - w[i - 1]);
            crossings.push_back(t[i - 1] + frac * (t[i] - t[i - 1]));
        }
    }
    REQUIRE(crossings.size() >= 3);
    const double measured_hz =
        static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
    const double f1 = ttb::reference::natural_frequency_hz(
        {30.0, cfg.mesh.bridge.rigidity, cfg.mesh.bridge.mass_per_length}, 1);
    CHECK(measured_hz == doctest::Approx(f1).epsilon(0.02));

    // zero damping: no decay between the two halves of the tail
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= 1.2 && t[i] < 1.8) first = std::max(first, std::abs(w[i]));
        if (t[i] >= 1.8 && t[i] <= 2.4) second = std::max(second, std::abs(w[i]));
    }
    CHECK(second == doctest::Approx(first).epsilon(0.01));
}

TEST_CASE("body amplitude on rigid track follows the transmissibility curve") {
    SimConfig cfg;
    cfg.mesh.n = 10;
    cfg.mesh.l = 3.0;
    cfg.mesh.rail = ttb::BeamSection{1e14, 1000.0, 0.0};
    cfg.mesh.bridge = ttb::BeamSection{1e14, 1000.0, 0.0};
    cfg.mesh.k_bed = 0.0;
    cfg.vehicle = ttb::VehicleParams{2000.0, 0.0, 1.579e6, 0.0, 20.0, 0.0};
    cfg.vehicle.c_susp = 2.0 * 0.25 * std::sqrt(cfg.vehicle.k_susp * cfg.vehicle.m_body);
    cfg.profile = ttb::Profile::sinusoid(5e-4, 5.0);
    cfg.newmark = ttb::NewmarkParams{0.25, 0.5, 5e-4};
    cfg.probes = {Probe{ProbeTarget::Body, ProbeQuantity::Displacement, 0.0, false}};

    const auto hist = run_simulation(cfg);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < hist.times.size(); ++i) {
        if (hist.times[i] < 1.0) continue;
        lo = std::min(lo, hist.columns[0][i]);
        hi = std::max(hi, hist.columns[0][i]);
    }
    const double measured = 0.5 * (hi - lo);

    const double omega = 2.0 * M_PI * cfg.vehicle.v / 5.0;  // forcing frequency
    const double k = cfg.vehicle.k_susp, c = cfg.vehicle.c_susp, m = cfg.vehicle.m_body;
    const double transmissibility =
        std::sqrt((k * k + c * c * omega * omega) /
                  (std::pow(k - m * omega * omega, 2) + c * c * omega * omega));
    CHECK(measured == doctest::Approx(5e-4 * transmissibility).epsilon(0.01));
}

TEST_CASE("probe interpolation") {
    SimConfig cfg = benchmark_config();
    cfg.mesh.k_bed = 0.0;
    const auto sys = ttb::apply_constraints(ttb::assemble_rail_bridge(cfg.mesh), cfg.mesh.n);

    SUBCASE("nodal unit displacement is returned exactly") {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(sys.size());
        const int idx = sys.index_of(2 * (cfg.mesh.n + 1) + 4);  // bridge node 2 vertical
        u(idx) = 1.0;
        CHECK(ttb::probe_value(sys, cfg.mesh, u, ProbeTarget::Bridge, 6.0) == 1.0);
        CHECK(ttb::probe_value(sys, cfg.mesh, u, ProbeTarget::Rail, 6.0) == 0.0);
    }

    SUBCASE("constrained end returns zero") {
        Eigen::VectorXd u = Eigen::VectorXd::Ones(sys.size());
        // x = 0: the only nonzero shape value targets the eliminated DOF,
        // leaving the rotation term, which N_B kills at xi = 0
        Eigen::VectorXd e = Eigen::VectorXd::Zero(sys.size());
        CHECK(ttb::probe_value(sys, cfg.mesh, e, ProbeTarget::Bridge, 0.0) == 0.0);
    }

    SUBCASE("static point-load deflection curve is reproduced between nodes") {
        const int mid = sys.index_of(2 * (cfg.mesh.n + 1) + cfg.mesh.n);
        Eigen::VectorXd f = Eigen::VectorXd::Zero(sys.size());
        f(mid) = 1.0;
        ttb::State st;
        st.u = Eigen::FullPivLU<Eigen::MatrixXd>(sys.k).solve(f);
        st.v = Eigen::VectorXd::Zero(sys.size());
        st.acc = st.v;

        const double ei = cfg.mesh.bridge.rigidity;
        const double span = cfg.mesh.span();
        // midspan: closed form L^3 / 48 EI
        CHECK(ttb::probe_displacement(st, sys, cfg.mesh, ProbeTarget::Bridge, 15.0) ==
              doctest::Approx(span * span * span / (48.0 * ei)).epsilon(1e-9));
        // quarter span, inside an element: w = P x (3 L^2 - 4 x^2) / (48 EI)
        const double x = 7.5;
        const double expected = x * (3.0 * span * span - 4.0 * x * x) / (48.0 * ei);
        CHECK(ttb::probe_displacement(st, sys, cfg.mesh, ProbeTarget::Bridge, x) ==
              doctest::Approx(expected).epsilon(1e-9));
    }

    SUBCASE("body probe requires a coupled system") {
        CHECK_THROWS_AS(ttb::probe_value(sys, cfg.mesh, Eigen::VectorXd::Zero(sys.size()),
                                         ProbeTarget::Body, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("contact force in the moving-force limit is the static weight") {
    SimConfig cfg = light_crossing();
    cfg.probes = {Probe{ProbeTarget::Body, ProbeQuantity::ContactForce, 0.0, false}};
    const auto hist = run_simulation(cfg);
    const double weight = cfg.vehicle.m_body * cfg.gravity;
    for (std::size_t i = 0; i < hist.times.size(); ++i) {
        if (cfg.vehicle.v * hist.times[i] > cfg.mesh.span()) break;  // departed: reported as 0
        CHECK(hist.columns[0][i] == weight);
    }
}

TEST_CASE("rail follows the bridge through the stiff bed") {
    SimConfig cfg = benchmark_config();
    cfg.probes = {
        Probe{ProbeTarget::Rail, ProbeQuantity::Displacement, 0.0, true},
        Probe{ProbeTarget::Bridge, ProbeQuantity::Displacement, 0.0, true},
    };
    const auto hist = run_simulation(cfg);
    double gap = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < hist.times.size(); ++i) {
        gap = std::max(gap, std::abs(hist.columns[0][i] - hist.columns[1][i]));
        peak = std::max(peak, std::abs(hist.columns[1][i]));
    }
    CHECK(gap < 1e-4 * peak);
}

TEST_CASE("acceleration update policies stay close on the benchmark") {
    SimConfig cfg = benchmark_config();
    const auto equil = run_simulation(cfg);
    cfg.accel_update = AccelUpdate::Increment;
    const auto incr = run_simulation(cfg);

    auto peak = [](const std::vector<double>& column) {
        double p = 0.0;
        for (double v : column) p = std::max(p, std::abs(v));
        return p;
    };
    const double pe = peak(equil.columns[0]);
    const double pi = peak(incr.columns[0]);
    CHECK(pi == doctest::Approx(pe).epsilon(0.15));
}

TEST_CASE("configuration errors") {
    SimConfig cfg = benchmark_config();
    cfg.probes = {Probe{ProbeTarget::Bridge, ProbeQuantity::Displacement, 40.0, false}};
    CHECK_THROWS_AS(run_simulation(cfg), ttb::ConfigError);

    cfg = benchmark_config();
    cfg.x0 = 31.0;
    CHECK_THROWS_AS(run_simulation(cfg), ttb::ConfigError);

    cfg = benchmark_config();
    cfg.tail = -1.0;
    CHECK_THROWS_AS(run_simulation(cfg), ttb::ConfigError);
}

TEST_SUITE_END();
