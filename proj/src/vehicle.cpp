#include "ttb/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttb {

void VehicleParams::validate() const {
    if (!(m_body > 0.0)) throw std::invalid_argument("vehicle: body mass must be positive");
    if (m_wheel < 0.0) throw std::invalid_argument("vehicle: wheel mass must be non-negative");
    if (k_susp < 0.0) throw std::invalid_argument("vehicle: suspension stiffness must be non-negative");
    if (c_susp < 0.0) throw std::invalid_argument("vehicle: suspension damping must be non-negative");
    if (!(v > 0.0)) throw std::invalid_argument("vehicle: speed must be positive");
}

double vehicle_position(const VehicleParams& params, double t, double x0) {
    if (t < 0.0) throw std::domain_error("vehicle_position: t must be non-negative");
    return x0 + params.v * t + 0.5 * params.a * t * t;
}

double vehicle_speed(const VehicleParams& params, double t) {
    return params.v + params.a * t;
}

WheelLocation locate_wheel(double x, double l, int n) {
    if (n < 1) throw std::domain_error("locate_wheel: need at least one element");
    if (!(l > 0.0)) throw std::domain_error("locate_wheel: element length must be positive");
    const double span = static_cast<double>(n) * l;
    const double slack = 1e-9 * std::max(span, 1.0);
    if (x < -slack || x > span + slack) {
        throw std::domain_error("locate_wheel: position outside the beam span");
    }
    const double xc = std::clamp(x, 0.0, span);

    WheelLocation loc;
    loc.x = x;
    loc.l = l;
    // j = floor(x/l) + 1, clamped so the right boundary maps onto the
    // last element with s = l
    loc.j = std::min(static_cast<int>(std::floor(xc / l)) + 1, n);
    loc.s = xc - static_cast<double>(loc.j - 1) * l;
    loc.xi = loc.s / l;
    return loc;
}

}  // namespace ttb
