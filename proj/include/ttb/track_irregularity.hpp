#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ttb {

/// Vertical rail-surface deviation and its first two spatial derivatives
/// at one track position.
struct IrregularitySample {
    double r = 0.0;   ///< deviation [m]
    double r1 = 0.0;  ///< dr/dx [-]
    double r2 = 0.0;  ///< d2r/dx2 [1/m]
};

/// Vertical deviation of the rail running surface from the ideal profile.
/// Immutable after construction; evaluation is pure and thread-safe.
class Profile {
public:
    /// Ideal surface: r = r' = r'' = 0 everywhere.
    static Profile smooth();

    /// r(x) = amplitude * sin(2*pi*x/wavelength + phase).
    static Profile sinusoid(double amplitude, double wavelength, double phase = 0.0);

    /// Uniformly sampled ordinates interpolated by a natural cubic spline
    /// (zero curvature at both ends). Requires spacing > 0 and at least
    /// 4 ordinates.
    static Profile sampled(double spacing, std::vector<double> ordinates,
                           double start = 0.0);

    /// Load a sampled profile from a two-column plain-text table
    /// (position, ordinate), whitespace-separated, SI units, with "#"
    /// comment lines. Positions must be uniformly spaced.
    static Profile from_file(const std::string& path);

    IrregularitySample eval(double x) const;

    bool is_smooth() const;

private:
    struct Smooth {};
    struct Sinusoid {
        double amplitude;
        double wavelength;
        double phase;
    };
    struct Spline {
        double x0;
        double dx;
        std::vector<double> y;
        std::vector<double> m;  // second derivatives at the knots
    };

    Profile() = default;
    std::variant<Smooth, Sinusoid, Spline> impl_;
};

}  // namespace ttb
