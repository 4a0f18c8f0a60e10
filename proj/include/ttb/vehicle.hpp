#pragma once

namespace ttb {

/// Single-axle sprung-mass vehicle: a body mass carried on a
/// spring-damper suspension above a wheel mass that stays in permanent
/// contact with the rail.
struct VehicleParams {
    double m_body = 0.0;   ///< sprung body mass [kg]
    double m_wheel = 0.0;  ///< wheel mass [kg]
    double k_susp = 0.0;   ///< suspension stiffness [N/m]
    double c_susp = 0.0;   ///< suspension damping [N s/m]
    double v = 0.0;        ///< entry speed [m/s]
    double a = 0.0;        ///< longitudinal acceleration [m/s^2]

    void validate() const;
};

/// Where the wheel acts: global abscissa, 1-based element index, local
/// coordinate s measured from the element's left node, and xi = s / l.
struct WheelLocation {
    double x = 0.0;
    int j = 1;
    double s = 0.0;
    double xi = 0.0;
    double l = 0.0;
};

/// Wheel abscissa at time t: x0 + v t + a t^2 / 2. Requires t >= 0.
double vehicle_position(const VehicleParams& params, double t, double x0 = 0.0);

/// Instantaneous speed v + a t, used by every convective term.
double vehicle_speed(const VehicleParams& params, double t);

/// Map a global abscissa onto (element, local coordinate) for a beam of
/// n elements of length l. The right boundary x = n*l is clamped onto
/// the last element with s = l. Throws std::domain_error when x lies
/// outside [0, n*l] beyond floating-point slack.
WheelLocation locate_wheel(double x, double l, int n);

}  // namespace ttb
