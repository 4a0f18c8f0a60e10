#include <array>
#include <sstream>

#include <Eigen/Dense>

#include "doctest.h"
#include "test_support.hpp"
#include "ttb/assembly.hpp"
#include "ttb/config.hpp"
#include "ttb/coupling.hpp"
#include "ttb/reference.hpp"

using ttb::apply_constraints;
using ttb::assemble_rail_bridge;
using ttb::connectivity;
using ttb::Mesh;
using ttb::scatter_vehicle;

namespace {

Mesh benchmark_mesh() { return ttb::benchmark_config().mesh; }

}  // namespace

TEST_SUITE_BEGIN("assembly");

TEST_CASE("connectivity vectors") {
    const auto vcs = connectivity(10);
    REQUIRE(vcs.size() == 10);
    CHECK(vcs[0] == std::array<int, 8>{1, 2, 3, 4, 23, 24, 25, 26});
    CHECK(vcs[1] == std::array<int, 8>{3, 4, 5, 6, 25, 26, 27, 28});
    CHECK(vcs[2] == std::array<int, 8>{5, 6, 7, 8, 27, 28, 29, 30});
    CHECK(vcs[3] == std::array<int, 8>{7, 8, 9, 10, 29, 30, 31, 32});

    const auto small = connectivity(4);
    CHECK(small[3] == std::array<int, 8>{7, 8, 9, 10, 17, 18, 19, 20});
}

TEST_CASE("assembled sizes and corner entries") {
    const Mesh mesh = benchmark_mesh();
    const auto sys = assemble_rail_bridge(mesh);
    CHECK(sys.size() == 44);

    // first rail vertical: one bending corner plus the bed share
    const double expected =
        mesh.rail.rigidity * 12.0 / (mesh.l * mesh.l * mesh.l) + mesh.k_bed * 13.0 * mesh.l / 35.0;
    CHECK(sys.k(0, 0) == doctest::Approx(expected).epsilon(1e-14));

    // interior rail verticals accumulate two element corners
    for (int p = 1; p < mesh.n; ++p) {
        CHECK(sys.k(2 * p, 2 * p) == doctest::Approx(2.0 * expected).epsilon(1e-14));
    }
}

TEST_CASE("damping matrix vanishes without damping sources") {
    Mesh mesh = benchmark_mesh();
    mesh.n = 2;
    mesh.c_bed = 0.0;
    mesh.rail.damping_per_length = 0.0;
    mesh.bridge.damping_per_length = 0.0;
    const auto sys = assemble_rail_bridge(mesh);
    CHECK(sys.c.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stiffness is linear in the bed stiffness") {
    Mesh alpha = benchmark_mesh();
    Mesh beta = benchmark_mesh();
    Mesh both = benchmark_mesh();
    alpha.k_bed = 3.7e12;
    beta.k_bed = 6.3e12;
    both.k_bed = alpha.k_bed + beta.k_bed;
    // the beam-rigidity part would be double counted when summing, so
    // compare the bed-induced difference
    Mesh zero = benchmark_mesh();
    zero.k_bed = 0.0;
    const Eigen::MatrixXd ka = assemble_rail_bridge(alpha).k - assemble_rail_bridge(zero).k;
    const Eigen::MatrixXd kb = assemble_rail_bridge(beta).k - assemble_rail_bridge(zero).k;
    const Eigen::MatrixXd kab = assemble_rail_bridge(both).k - assemble_rail_bridge(zero).k;
    CHECK((kab - ka - kb).cwiseAbs().maxCoeff() <= 1e-12 * kab.cwiseAbs().maxCoeff());
}

TEST_CASE("exact symmetry and positive definite mass") {
    const auto sys = assemble_rail_bridge(benchmark_mesh());
    CHECK((sys.k - sys.k.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sys.m - sys.m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sys.c - sys.c.transpose()).cwiseAbs().maxCoeff() == 0.0);

    Eigen::LLT<Eigen::MatrixXd> llt(sys.m);
    CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("n = 2 assembly equals the brute-force oracle exactly") {
    Mesh mesh = benchmark_mesh();
    mesh.n = 2;
    mesh.l = 15.0;
    mesh.c_bed = 7.5;
    mesh.rail.damping_per_length = 1.25;
    mesh.bridge.damping_per_length = 4.5;
    const auto sys = assemble_rail_bridge(mesh);
    const auto brute = ttbtest::brute_assemble_n2(mesh);
    CHECK(sys.size() == 12);
    CHECK((sys.m - brute.m).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sys.c - brute.c).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sys.k - brute.k).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("support constraints eliminate the four end verticals") {
    const auto full = assemble_rail_bridge(benchmark_mesh());
    const auto sys = apply_constraints(full, 10);
    CHECK(sys.size() == 40);
    CHECK(sys.dof_map[0] == -1);
    CHECK(sys.dof_map[20] == -1);
    CHECK(sys.dof_map[22] == -1);
    CHECK(sys.dof_map[42] == -1);
    CHECK(sys.dof_map[1] == 0);    // first rotation stays free
    CHECK(sys.dof_map[21] == 19);  // right-end rail rotation

    Mesh small = benchmark_mesh();
    small.n = 2;
    CHECK(apply_constraints(assemble_rail_bridge(small), 2).size() == 8);

    CHECK_THROWS_AS(apply_constraints(sys, 10), std::invalid_argument);
}

TEST_CASE("static point load at the bridge midspan node is nodally exact") {
    Mesh mesh = benchmark_mesh();
    mesh.k_bed = 0.0;  // decouple the layers
    const auto sys = apply_constraints(assemble_rail_bridge(mesh), mesh.n);
    const int mid = sys.index_of(2 * (mesh.n + 1) + mesh.n);
    REQUIRE(mid >= 0);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(sys.size());
    f(mid) = 1.0;
    const Eigen::VectorXd u = Eigen::FullPivLU<Eigen::MatrixXd>(sys.k).solve(f);

    const double expected = ttb::reference::static_midspan_deflection(
        {mesh.span(), mesh.bridge.rigidity, mesh.bridge.mass_per_length}, 1.0);
    CHECK(u(mid) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("bridge block reproduces the closed-form frequencies") {
    Mesh mesh = benchmark_mesh();
    mesh.k_bed = 0.0;
    const auto sys = apply_constraints(assemble_rail_bridge(mesh), mesh.n);
    const auto freqs = ttb::beam_block_frequencies_hz(sys, true, 2);
    const ttb::reference::BeamModel beam{mesh.span(), mesh.bridge.rigidity,
                                         mesh.bridge.mass_per_length};
    const double f1 = ttb::reference::natural_frequency_hz(beam, 1);
    CHECK(f1 == doctest::Approx(3.318).epsilon(2e-4));
    CHECK(freqs[0] == doctest::Approx(f1).epsilon(1e-3));
    CHECK(freqs[1] == doctest::Approx(4.0 * f1).epsilon(5e-3));
}

TEST_CASE("vehicle scatter") {
    const Mesh mesh = benchmark_mesh();
    const auto base = apply_constraints(assemble_rail_bridge(mesh), mesh.n);
    ttb::VehicleParams veh{5750.0, 0.0, 1.595e6, 0.0, 27.78, 0.0};

    SUBCASE("zero blocks leave the system untouched apart from the body mass") {
        ttb::CouplingBlocks blocks;
        blocks.m_11 = veh.m_body;
        const auto sys = scatter_vehicle(base, blocks, ttb::locate_wheel(0.0, mesh.l, mesh.n));
        CHECK(sys.size() == 41);
        CHECK(sys.m(0, 0) == veh.m_body);
        CHECK(sys.k.row(0).cwiseAbs().maxCoeff() == 0.0);
        CHECK(sys.k.col(0).cwiseAbs().maxCoeff() == 0.0);
        CHECK((sys.k.bottomRightCorner(40, 40) - base.k).cwiseAbs().maxCoeff() == 0.0);
        CHECK((sys.m.bottomRightCorner(40, 40) - base.m).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("wheel entering at the support couples nothing into free DOFs") {
        const auto loc = ttb::locate_wheel(0.0, mesh.l, mesh.n);
        const auto blocks = ttb::build_coupling_blocks(veh, loc, ttb::IrregularitySample{}, veh.v);
        const auto sys = scatter_vehicle(base, blocks, loc);
        // N(0) targets the eliminated end vertical; N_B terms vanish at xi = 0
        CHECK(sys.k.row(0).cwiseAbs().maxCoeff() == doctest::Approx(blocks.k_11));
        CHECK(sys.k.col(0).cwiseAbs().maxCoeff() == doctest::Approx(blocks.k_11));
        CHECK(sys.f.cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("midelement scatter hits the mapped rail DOFs") {
        const auto loc = ttb::locate_wheel(13.5, mesh.l, mesh.n);  // element 5, xi = 0.5
        const auto blocks = ttb::build_coupling_blocks(veh, loc, ttb::IrregularitySample{}, veh.v);
        const auto sys = scatter_vehicle(base, blocks, loc);

        const Eigen::Vector4d n_half(0.5, 0.375, 0.5, -0.375);
        // full rail DOFs 9..12 (1-based); one eliminated DOF precedes them
        for (int a = 0; a < 4; ++a) {
            const int idx = sys.index_of(8 + a);
            CHECK(idx == 8 + a);
            CHECK(sys.k(0, idx) == doctest::Approx(-1.595e6 * n_half(a)).epsilon(1e-12));
            CHECK(sys.k(idx, 0) == doctest::Approx(1.595e6 * n_half(a)).epsilon(1e-12));
        }
    }

    SUBCASE("scatter preconditions") {
        const auto unreduced = assemble_rail_bridge(mesh);
        ttb::CouplingBlocks blocks;
        CHECK_THROWS_AS(scatter_vehicle(unreduced, blocks, ttb::locate_wheel(0.0, mesh.l, mesh.n)),
                        std::invalid_argument);
    }
}

TEST_CASE("coordinate dump round-trips") {
    Mesh mesh = benchmark_mesh();
    mesh.n = 2;
    const auto sys = apply_constraints(assemble_rail_bridge(mesh), 2);
    std::ostringstream text;
    ttb::dump_matrix_coordinate(sys.k, text);

    Eigen::MatrixXd parsed = Eigen::MatrixXd::Zero(sys.size(), sys.size());
    std::istringstream in(text.str());
    int i, j;
    double value;
    while (in >> i >> j >> value) {
        parsed(i - 1, j - 1) = value;
    }
    CHECK((parsed - sys.k).cwiseAbs().maxCoeff() == 0.0);
}

TEST_SUITE_END();
