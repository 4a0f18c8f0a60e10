#pragma once

#include <Eigen/Dense>

namespace ttb {

/// Cubic Hermite shape functions of a two-node beam element with a
/// vertical translation and a rotation at each node, evaluated at a
/// dimensionless position xi = s / l.
///
/// Derivatives are taken with respect to the physical coordinate
/// s = xi * l, not with respect to xi, because the convective terms of
/// the moving-wheel formulation need N'(s) and N''(s) directly.
struct ShapeEval {
    Eigen::Vector4d n;   ///< N_A, N_B, N_C, N_D
    Eigen::Vector4d d1;  ///< dN/ds
    Eigen::Vector4d d2;  ///< d2N/ds2
};

/// The two closed-form 4x4 element integrals every beam matrix is built
/// from: nn = integral of N^T N over [0, l] (consistent-mass kernel) and
/// bb = integral of N''^T N'' over [0, l] (bending kernel).
struct ElementBlocks {
    Eigen::Matrix4d nn;
    Eigen::Matrix4d bb;
};

/// Evaluate the shape functions at xi in [0, 1] for an element of
/// length l > 0. Throws std::domain_error on out-of-range input.
ShapeEval shape(double xi, double l);

/// Exact analytic integrals of the shape-function products for an
/// element of length l > 0. nn is symmetric positive definite; bb is
/// symmetric positive semidefinite with a two-dimensional null space
/// (rigid translation and rigid rotation).
ElementBlocks element_blocks(double l);

}  // namespace ttb
