#pragma once

#include <vector>

#include "ttb/track_irregularity.hpp"
#include "ttb/vehicle.hpp"

namespace ttb::reference {

/// One simply supported uniform Euler-Bernoulli beam, described by its
/// exact sine mode shapes. Used only for verification: every quantity
/// here is computed from closed forms or a spectral discretization,
/// never from the element matrices the main solver assembles.
struct BeamModel {
    double span = 0.0;                ///< [m]
    double rigidity = 0.0;            ///< E*I [N m^2]
    double mass_per_length = 0.0;     ///< [kg/m]
    double damping_per_length = 0.0;  ///< [N s/m^2]
};

/// Natural frequency of the given mode (1-based) in Hz:
/// f_i = i^2 pi / (2 L^2) * sqrt(EI / m).
double natural_frequency_hz(const BeamModel& beam, int mode);

/// Midspan deflection under a static point load at midspan:
/// P L^3 / (48 EI).
double static_midspan_deflection(const BeamModel& beam, double load);

/// Constant point force crossing the beam at constant speed.
struct MovingForceModel {
    BeamModel beam;
    double force = 0.0;  ///< [N], positive downward
    double speed = 0.0;  ///< [m/s]
    int modes = 50;
};

/// Exact modal-series deflection at position x and time t (free
/// vibration continues after the force leaves the span).
double moving_force_displacement(const MovingForceModel& model, double x, double t);

/// Exact modal-series acceleration at position x and time t.
double moving_force_acceleration(const MovingForceModel& model, double x, double t);

/// Sprung-mass vehicle crossing a simply supported beam, discretized on
/// the beam's exact sine modes (car-body DOF + `modes` generalized beam
/// coordinates) and integrated with classic RK4 at a fine substep.
struct ModalCrossingConfig {
    BeamModel beam;
    VehicleParams vehicle;
    Profile profile = Profile::smooth();
    double gravity = 9.81;
    double x0 = 0.0;
    int modes = 10;
    int substeps = 50;  ///< RK4 substeps per output interval
};

struct ModalCrossingHistory {
    std::vector<double> times;
    std::vector<double> bridge_disp;  ///< beam deflection at the probe [m]
    std::vector<double> bridge_acc;   ///< beam acceleration at the probe [m/s^2]
    std::vector<double> body_disp;    ///< car-body displacement [m]
    std::vector<double> body_acc;     ///< car-body acceleration [m/s^2]
};

/// Integrate the modal system and record the beam response at x_probe
/// for each entry of `times` (uniformly spaced, starting at 0).
ModalCrossingHistory modal_crossing_history(const ModalCrossingConfig& config,
                                            const std::vector<double>& times,
                                            double x_probe);

}  // namespace ttb::reference
