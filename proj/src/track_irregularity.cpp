#include "ttb/track_irregularity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ttb/errors.hpp"

namespace ttb {

namespace {

/// Second derivatives of the natural cubic spline through uniformly
/// spaced ordinates (Thomas algorithm on the tridiagonal system).
std::vector<double> natural_spline_moments(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> m(n, 0.0);
    if (n < 3) return m;

    const std::size_t k = n - 2;  // interior unknowns
    std::vector<double> diag(k, 4.0), rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = 6.0 * (y[i] - 2.0 * y[i + 1] + y[i + 2]) / (h * h);
    }
    for (std::size_t i = 1; i < k; ++i) {
        const double w = 1.0 / diag[i - 1];
        diag[i] -= w;
        rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
        m[i + 1] = (rhs[i] - m[i + 2]) / diag[i];
    }
    return m;
}

}  // namespace

Profile Profile::smooth() {
    Profile p;
    p.impl_ = Smooth{};
    return p;
}

Profile Profile::sinusoid(double amplitude, double wavelength, double phase) {
    if (!(wavelength > 0.0)) {
        throw std::domain_error("Profile::sinusoid: wavelength must be positive");
    }
    Profile p;
    p.impl_ = Sinusoid{amplitude, wavelength, phase};
    return p;
}

Profile Profile::sampled(double spacing, std::vector<double> ordinates, double start) {
    if (!(spacing > 0.0)) {
        throw std::domain_error("Profile::sampled: grid spacing must be positive");
    }
    if (ordinates.size() < 4) {
        throw std::domain_error("Profile::sampled: need at least 4 ordinates");
    }
    Spline s;
    s.x0 = start;
    s.dx = spacing;
    s.m = natural_spline_moments(ordinates, spacing);
    s.y = std::move(ordinates);
    Profile p;
    p.impl_ = std::move(s);
    return p;
}

Profile Profile::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open track profile file: " + path);
    }
    std::vector<double> xs, ys;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x)) continue;  // blank or comment-only line
        if (!(ls >> y)) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected two columns (position, ordinate)");
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 4) {
        throw ConfigError(path + ": track profile needs at least 4 samples");
    }
    const double h = xs[1] - xs[0];
    if (!(h > 0.0)) {
        throw ConfigError(path + ": positions must be strictly increasing");
    }
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-9 * h) {
            throw ConfigError(path + ": positions must be uniformly spaced");
        }
    }
    return sampled(h, std::move(ys), xs.front());
}

bool Profile::is_smooth() const {
    return std::holds_alternative<Smooth>(impl_);
}

IrregularitySample Profile::eval(double x) const {
    IrregularitySample out;
    if (std::holds_alternative<Smooth>(impl_)) {
        return out;
    }
    if (const auto* s = std::get_if<Sinusoid>(&impl_)) {
        const double k = 2.0 * M_PI / s->wavelength;
        const double arg = k * x + s->phase;
        out.r = s->amplitude * std::sin(arg);
        out.r1 = s->amplitude * k * std::cos(arg);
        out.r2 = -s->amplitude * k * k * std::sin(arg);
        return out;
    }
    const auto& sp = std::get<Spline>(impl_);
    const double span = sp.dx * static_cast<double>(sp.y.size() - 1);
    const double slack = 1e-9 * std::max(span, 1.0);
    if (x < sp.x0 - slack || x > sp.x0 + span + slack) {
        throw std::domain_error("Profile::eval: position outside sampled track");
    }
    double u = std::clamp(x - sp.x0, 0.0, span);
    auto i = static_cast<std::size_t>(u / sp.dx);
    if (i >= sp.y.size() - 1) i = sp.y.size() - 2;
    const double t = u - static_cast<double>(i) * sp.dx;

    const double h = sp.dx;
    const double mi = sp.m[i], mj = sp.m[i + 1];
    const double b = (sp.y[i + 1] - sp.y[i]) / h - h * (2.0 * mi + mj) / 6.0;
    out.r = sp.y[i] + t * b + 0.5 * t * t * mi + t * t * t * (mj - mi) / (6.0 * h);
    out.r1 = b + t * mi + 0.5 * t * t * (mj - mi) / h;
    out.r2 = mi + t * (mj - mi) / h;
    return out;
}

}  // namespace ttb
