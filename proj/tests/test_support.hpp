#pragma once

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ttb/assembly.hpp"
#include "ttb/hermite_beam.hpp"

// Shared oracles for the test suites. Everything here is independent of
// the code paths it checks: quadrature instead of closed forms,
// hand-indexed accumulation instead of the connectivity generator.
namespace ttbtest {

/// 6-point Gauss-Legendre integral over [0, l] of a Matrix4d-valued
/// integrand in xi; exact for polynomials up to degree 11.
template <typename F>
Eigen::Matrix4d gauss6(double l, F&& f) {
    static constexpr std::array<double, 3> nodes = {0.2386191860831969, 0.6612093864662645,
                                                    0.9324695142031521};
    static constexpr std::array<double, 3> weights = {0.4679139345726910, 0.3607615730481386,
                                                      0.1713244923791704};
    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 3; ++i) {
        const Eigen::Matrix4d pair = f(0.5 * (1.0 - nodes[i])) + f(0.5 * (1.0 + nodes[i]));
        acc += (0.5 * l * weights[i]) * pair;
    }
    return acc;
}

/// Quadrature versions of the element integrals.
inline Eigen::Matrix4d nn_by_quadrature(double l) {
    return gauss6(l, [&](double xi) -> Eigen::Matrix4d {
        const Eigen::Vector4d n = ttb::shape(xi, l).n;
        return n * n.transpose();
    });
}

inline Eigen::Matrix4d bb_by_quadrature(double l) {
    return gauss6(l, [&](double xi) -> Eigen::Matrix4d {
        const Eigen::Vector4d d2 = ttb::shape(xi, l).d2;
        return d2 * d2.transpose();
    });
}

/// Brute-force assembly for n = 2: literal connectivity rows and a
/// naive triple loop, nothing shared with assemble_rail_bridge.
struct BruteSystem {
    Eigen::MatrixXd m, c, k;
};

inline BruteSystem brute_assemble_n2(const ttb::Mesh& mesh) {
    const ttb::ElementBlocks eb = ttb::element_blocks(mesh.l);
    Eigen::Matrix<double, 8, 8> me = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 8> ce = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix<double, 8, 8> ke = Eigen::Matrix<double, 8, 8>::Zero();
    me.topLeftCorner<4, 4>() = mesh.rail.mass_per_length * eb.nn;
    me.bottomRightCorner<4, 4>() = mesh.bridge.mass_per_length * eb.nn;
    ke.topLeftCorner<4, 4>() = mesh.rail.rigidity * eb.bb + mesh.k_bed * eb.nn;
    ke.bottomRightCorner<4, 4>() = mesh.bridge.rigidity * eb.bb + mesh.k_bed * eb.nn;
    ke.topRightCorner<4, 4>() = -mesh.k_bed * eb.nn;
    ke.bottomLeftCorner<4, 4>() = -mesh.k_bed * eb.nn;
    ce.topLeftCorner<4, 4>() = (mesh.c_bed + mesh.rail.damping_per_length) * eb.nn;
    ce.bottomRightCorner<4, 4>() = (mesh.c_bed + mesh.bridge.damping_per_length) * eb.nn;
    ce.topRightCorner<4, 4>() = -mesh.c_bed * eb.nn;
    ce.bottomLeftCorner<4, 4>() = -mesh.c_bed * eb.nn;

    const int vc[2][8] = {{1, 2, 3, 4, 7, 8, 9, 10}, {3, 4, 5, 6, 9, 10, 11, 12}};
    BruteSystem sys;
    sys.m = Eigen::MatrixXd::Zero(12, 12);
    sys.c = Eigen::MatrixXd::Zero(12, 12);
    sys.k = Eigen::MatrixXd::Zero(12, 12);
    for (int p = 0; p < 2; ++p) {
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                sys.m(vc[p][i] - 1, vc[p][j] - 1) += me(i, j);
                sys.c(vc[p][i] - 1, vc[p][j] - 1) += ce(i, j);
                sys.k(vc[p][i] - 1, vc[p][j] - 1) += ke(i, j);
            }
        }
    }
    return sys;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

}  // namespace ttbtest
