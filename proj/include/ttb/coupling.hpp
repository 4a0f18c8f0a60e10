#pragma once

#include <Eigen/Dense>

#include "ttb/track_irregularity.hpp"
#include "ttb/vehicle.hpp"

namespace ttb {

inline constexpr double kStandardGravity = 9.81;  // [m/s^2]

/// Time-varying vehicle-rail interaction blocks in local element form,
/// ready to be scattered into the global system: 4x4 additions to the
/// rail block of the element under the wheel, 1x4 / 4x1 couplings
/// between the car-body DOF and those rail DOFs, the scalar car-body
/// entries, and the force contributions.
///
/// All vertical displacements are positive downward; gravity loads the
/// rail positively.
struct CouplingBlocks {
    double m_11 = 0.0;
    double c_11 = 0.0;
    double k_11 = 0.0;
    double f_1 = 0.0;

    Eigen::Matrix4d m_rr = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d c_rr = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d k_rr = Eigen::Matrix4d::Zero();

    Eigen::RowVector4d c_1r = Eigen::RowVector4d::Zero();
    Eigen::RowVector4d k_1r = Eigen::RowVector4d::Zero();
    Eigen::Vector4d c_r1 = Eigen::Vector4d::Zero();
    Eigen::Vector4d k_r1 = Eigen::Vector4d::Zero();
    Eigen::Vector4d f_r = Eigen::Vector4d::Zero();
};

/// Build the interaction blocks for a wheel at `loc` with instantaneous
/// speed `v_inst` over an irregularity sample taken at the contact
/// point.
CouplingBlocks build_coupling_blocks(const VehicleParams& params,
                                     const WheelLocation& loc,
                                     const IrregularitySample& irr,
                                     double v_inst,
                                     double gravity = kStandardGravity);

/// Blocks for a vehicle that has left the span: only the car-body mass
/// remains (the body DOF stays in the system), every coupling and force
/// term is zero.
CouplingBlocks departed_coupling_blocks(const VehicleParams& params);

}  // namespace ttb
