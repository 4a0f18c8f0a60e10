#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "ttb/coupling.hpp"
#include "ttb/vehicle.hpp"

namespace ttb {

/// Properties of one beam layer (rail or bridge deck).
struct BeamSection {
    double rigidity = 0.0;            ///< E*I [N m^2]
    double mass_per_length = 0.0;     ///< [kg/m]
    double damping_per_length = 0.0;  ///< distributed viscous damping [N s/m^2]

    void validate() const;
};

/// Two-layer mesh: rail and bridge beams of n elements each, tied by a
/// continuous spring-damper bed layer.
struct Mesh {
    int n = 0;                 ///< elements per beam
    double l = 0.0;            ///< element length [m]
    BeamSection rail;
    BeamSection bridge;
    double k_bed = 0.0;        ///< bed stiffness per unit length [N/m^2]
    double c_bed = 0.0;        ///< bed damping per unit length [N s/m^2]

    double span() const { return static_cast<double>(n) * l; }
    void validate() const;
};

/// Square mass/damping/stiffness matrices plus force vector over the
/// retained DOFs, with the bookkeeping needed to address them.
///
/// Full (unreduced) DOF numbering, 0-based: rail node i carries
/// (2i, 2i+1) = (vertical, rotation); bridge node i carries the same
/// pair offset by 2(n+1). After apply_constraints, dof_map[full] gives
/// the index within the reduced matrices, or -1 for an eliminated DOF.
/// After scatter_vehicle, the car-body DOF sits at index 0 and every
/// retained beam DOF is shifted up by one.
struct GlobalSystem {
    Eigen::MatrixXd m, c, k;
    Eigen::VectorXd f;
    std::vector<int> dof_map;  ///< full beam DOF -> retained index (-1 = eliminated)
    int elements = 0;
    bool reduced = false;
    bool has_vehicle = false;

    int size() const { return static_cast<int>(m.rows()); }

    /// Index of `full_dof` within this system's matrices, or -1 if the
    /// DOF was eliminated. Accounts for the prepended vehicle DOF.
    int index_of(int full_dof) const;
};

/// Connectivity vector of each element: the 8 global DOF indices
/// (1-based, rail pair then bridge pair per node) touched by element p.
std::vector<std::array<int, 8>> connectivity(int n);

/// Assemble the constant rail-bridge system (no vehicle, no supports):
/// 4(n+1) square matrices accumulated element by element through the
/// connectivity vectors. The elementary force vector is zero.
GlobalSystem assemble_rail_bridge(const Mesh& mesh);

/// Eliminate the vertical-translation DOFs at both ends of both beams
/// (simple supports), compacting rows/columns and recording the
/// mapping. End rotations remain free.
GlobalSystem apply_constraints(const GlobalSystem& sys, int n);

/// Couple the vehicle into a reduced rail-bridge system: prepend the
/// car-body DOF and scatter the interaction blocks into the rail DOFs
/// of the element under the wheel. Contributions to eliminated DOFs are
/// dropped.
GlobalSystem scatter_vehicle(const GlobalSystem& sys, const CouplingBlocks& blocks,
                             const WheelLocation& loc);

/// Retained-system indices of one beam's free DOFs, in ascending full
/// order. `bridge` selects the lower layer.
std::vector<int> beam_free_dofs(const GlobalSystem& sys, bool bridge);

/// Lowest natural frequencies [Hz] of one beam's sub-block of a reduced
/// system, from the generalized symmetric eigenproblem K x = w^2 M x.
/// Meaningful when the layers are uncoupled (k_bed = 0).
std::vector<double> beam_block_frequencies_hz(const GlobalSystem& sys, bool bridge, int count);

/// Write a dense matrix as coordinate-format sparse text: one
/// "row col value" line per nonzero entry, 1-based, %.17g.
void dump_matrix_coordinate(const Eigen::MatrixXd& a, std::ostream& out);

}  // namespace ttb
