#pragma once

#include <string>
#include <vector>

#include "ttb/assembly.hpp"
#include "ttb/newmark.hpp"
#include "ttb/track_irregularity.hpp"
#include "ttb/vehicle.hpp"

namespace ttb {

enum class ProbeTarget { Bridge, Rail, Body };
enum class ProbeQuantity { Displacement, Velocity, Acceleration, ContactForce };

/// One output channel of a simulation: a kinematic quantity of a beam
/// point, of the car body, or the wheel-rail contact force. Beam probes
/// may follow the wheel instead of sitting at a fixed abscissa.
struct Probe {
    ProbeTarget target = ProbeTarget::Bridge;
    ProbeQuantity quantity = ProbeQuantity::Displacement;
    double x = 0.0;
    bool under_wheel = false;

    std::string name() const;
    std::string unit() const;
};

/// How the acceleration vector is refreshed after each step:
/// Equilibrium re-solves the equation of motion with the new-time
/// matrices (default; avoids drift when the wheel moves), Increment
/// keeps the pure Newmark difference update.
enum class AccelUpdate { Equilibrium, Increment };

struct SimConfig {
    Mesh mesh;
    VehicleParams vehicle;
    Profile profile = Profile::smooth();
    NewmarkParams newmark;
    std::vector<Probe> probes;  ///< empty = default_probes(mesh)
    double t_end = -1.0;        ///< < 0 = crossing time of the span
    double tail = 0.0;          ///< extra time after t_end, vehicle departed
    double x0 = 0.0;            ///< wheel abscissa at t = 0
    double gravity = 9.81;
    AccelUpdate accel_update = AccelUpdate::Equilibrium;

    /// Time for the wheel to reach the far support from x0.
    double crossing_time() const;
    /// t_end where set, crossing time otherwise.
    double duration() const;
    void validate() const;
};

/// Named, uniformly sampled response series. All columns share `times`.
struct TimeHistory {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::string> units;
    std::vector<std::vector<double>> columns;

    int column_index(const std::string& name) const;  ///< -1 if absent
};

/// Bridge midspan displacement + acceleration and car-body
/// acceleration.
std::vector<Probe> default_probes(const Mesh& mesh);

/// Run a crossing simulation: assemble the constant rail-bridge system
/// once, then per step rebuild the wheel coupling at the old and new
/// positions, advance with the incremental Newmark step (matrices
/// frozen at the step's start, force increment from the new position),
/// refresh the acceleration, and evaluate the probes.
TimeHistory run_simulation(const SimConfig& config);

/// Interpolated beam response at abscissa x from a retained-DOF vector
/// (displacement, velocity or acceleration alike); eliminated DOFs
/// contribute zero. For ProbeTarget::Body returns the car-body entry.
double probe_value(const GlobalSystem& sys, const Mesh& mesh, const Eigen::VectorXd& dofs,
                   ProbeTarget target, double x);

/// Beam displacement at x (or the car-body displacement), evaluated
/// from the state through the element shape functions.
double probe_displacement(const State& state, const GlobalSystem& sys, const Mesh& mesh,
                          ProbeTarget target, double x);

/// Wheel-rail contact force: static weight plus suspension force plus
/// wheel inertia, from the permanent-contact kinematics. Negative
/// values are reported, not acted upon.
double contact_force(const State& state, const GlobalSystem& sys, const Mesh& mesh,
                     const VehicleParams& vehicle, const WheelLocation& loc,
                     const IrregularitySample& irr, double v_inst, double gravity);

}  // namespace ttb
