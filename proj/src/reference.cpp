#include "ttb/reference.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace ttb::reference {

namespace {

double mode_omega(const BeamModel& beam, int i) {
    const double kappa = static_cast<double>(i) * M_PI / beam.span;
    return kappa * kappa * std::sqrt(beam.rigidity / beam.mass_per_length);
}

struct ModeState {
    double eta, etad, etadd;
};

/// Response of one beam mode to the moving constant force. Handles the
/// near-resonant denominator and free vibration after the exit.
ModeState moving_force_mode(const MovingForceModel& model, int i, double t) {
    const double span = model.beam.span;
    const double cross = span / model.speed;
    const double omega = mode_omega(model.beam, i);
    const double cap_omega = static_cast<double>(i) * M_PI * model.speed / span;
    const double p = 2.0 * model.force / (model.beam.mass_per_length * span);

    auto forced = [&](double tau) -> ModeState {
        ModeState s{};
        if (std::abs(omega - cap_omega) < 1e-9 * omega) {
            s.eta = p / (2.0 * omega * omega) *
                    (std::sin(omega * tau) - omega * tau * std::cos(omega * tau));
            s.etad = 0.5 * p * tau * std::sin(omega * tau);
            s.etadd = 0.5 * p * (std::sin(omega * tau) + omega * tau * std::cos(omega * tau));
            return s;
        }
        const double den = omega * omega - cap_omega * cap_omega;
        s.eta = p / den * (std::sin(cap_omega * tau) -
                           cap_omega / omega * std::sin(omega * tau));
        s.etad = p * cap_omega / den * (std::cos(cap_omega * tau) - std::cos(omega * tau));
        s.etadd = p / den * (-cap_omega * cap_omega * std::sin(cap_omega * tau) +
                             cap_omega * omega * std::sin(omega * tau));
        return s;
    };

    if (t <= cross) return forced(t);

    // free vibration from the state at exit
    const ModeState exit = forced(cross);
    const double tau = t - cross;
    ModeState s{};
    s.eta = exit.eta * std::cos(omega * tau) + exit.etad / omega * std::sin(omega * tau);
    s.etad = -exit.eta * omega * std::sin(omega * tau) + exit.etad * std::cos(omega * tau);
    s.etadd = -omega * omega * s.eta;
    return s;
}

}  // namespace

double natural_frequency_hz(const BeamModel& beam, int mode) {
    if (mode < 1) throw std::invalid_argument("natural_frequency_hz: mode must be >= 1");
    return mode_omega(beam, mode) / (2.0 * M_PI);
}

double static_midspan_deflection(const BeamModel& beam, double load) {
    const double span3 = beam.span * beam.span * beam.span;
    return load * span3 / (48.0 * beam.rigidity);
}

double moving_force_displacement(const MovingForceModel& model, double x, double t) {
    double w = 0.0;
    for (int i = 1; i <= model.modes; ++i) {
        const double phi = std::sin(static_cast<double>(i) * M_PI * x / model.beam.span);
        w += phi * moving_force_mode(model, i, t).eta;
    }
    return w;
}

double moving_force_acceleration(const MovingForceModel& model, double x, double t) {
    double w = 0.0;
    for (int i = 1; i <= model.modes; ++i) {
        const double phi = std::sin(static_cast<double>(i) * M_PI * x / model.beam.span);
        w += phi * moving_force_mode(model, i, t).etadd;
    }
    return w;
}

ModalCrossingHistory modal_crossing_history(const ModalCrossingConfig& config,
                                            const std::vector<double>& times,
                                            double x_probe) {
    if (times.size() < 2 || times.front() != 0.0) {
        throw std::invalid_argument("modal_crossing_history: need uniform times from 0");
    }
    const double h_out = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs(times[i] - static_cast<double>(i) * h_out) > 1e-9 * h_out) {
            throw std::invalid_argument("modal_crossing_history: times must be uniform");
        }
    }
    if (config.substeps < 1) throw std::invalid_argument("modal_crossing_history: substeps >= 1");

    const int nm = config.modes;
    const int dim = nm + 1;  // car body + beam modes
    const double span = config.beam.span;
    const double m_modal = 0.5 * config.beam.mass_per_length * span;
    const double c_modal = 0.5 * config.beam.damping_per_length * span;

    Eigen::VectorXd omega2(nm);
    for (int i = 1; i <= nm; ++i) {
        const double w = mode_omega(config.beam, i);
        omega2(i - 1) = w * w;
    }

    // assemble the coupled modal system at time t
    auto system_at = [&](double t, Eigen::MatrixXd& m, Eigen::MatrixXd& c,
                         Eigen::MatrixXd& k, Eigen::VectorXd& f) {
        m.setZero(dim, dim);
        c.setZero(dim, dim);
        k.setZero(dim, dim);
        f.setZero(dim);
        m(0, 0) = config.vehicle.m_body;
        for (int i = 0; i < nm; ++i) {
            m(1 + i, 1 + i) = m_modal;
            c(1 + i, 1 + i) = c_modal;
            k(1 + i, 1 + i) = omega2(i) * m_modal;
        }

        const double x = config.x0 + config.vehicle.v * t + 0.5 * config.vehicle.a * t * t;
        if (x < 0.0 || x > span) return;  // off the span: body decoupled

        const double vt = config.vehicle.v + config.vehicle.a * t;
        const double k1 = config.vehicle.k_susp;
        const double c1 = config.vehicle.c_susp;
        const double mw = config.vehicle.m_wheel;
        const IrregularitySample irr = config.profile.eval(x);

        Eigen::VectorXd phi(nm), phi1(nm), phi2(nm);
        for (int i = 1; i <= nm; ++i) {
            const double kap = static_cast<double>(i) * M_PI / span;
            phi(i - 1) = std::sin(kap * x);
            phi1(i - 1) = kap * std::cos(kap * x);
            phi2(i - 1) = -kap * kap * std::sin(kap * x);
        }

        c(0, 0) += c1;
        k(0, 0) += k1;
        m.bottomRightCorner(nm, nm) += mw * phi * phi.transpose();
        c.bottomRightCorner(nm, nm) +=
            c1 * phi * phi.transpose() + 2.0 * vt * mw * phi * phi1.transpose();
        k.bottomRightCorner(nm, nm) += k1 * phi * phi.transpose() +
                                       (c1 * vt + mw * config.vehicle.a) * phi * phi1.transpose() +
                                       mw * vt * vt * phi * phi2.transpose();
        c.row(0).tail(nm) = -c1 * phi.transpose();
        c.col(0).tail(nm) = -c1 * phi;
        k.row(0).tail(nm) = -k1 * phi.transpose() - c1 * vt * phi1.transpose();
        k.col(0).tail(nm) = k1 * phi;

        f(0) = k1 * irr.r + c1 * vt * irr.r1;
        const double contact = (config.vehicle.m_body + mw) * config.gravity - k1 * irr.r -
                               c1 * vt * irr.r1 -
                               mw * (config.vehicle.a * irr.r1 + vt * vt * irr.r2);
        f.tail(nm) = contact * phi;
    };

    Eigen::MatrixXd m, c, k;
    Eigen::VectorXd f;
    auto acceleration = [&](double t, const Eigen::VectorXd& q,
                            const Eigen::VectorXd& qd) -> Eigen::VectorXd {
        system_at(t, m, c, k, f);
        return Eigen::PartialPivLU<Eigen::MatrixXd>(m).solve(f - c * qd - k * q);
    };

    Eigen::VectorXd phi_probe(nm);
    for (int i = 1; i <= nm; ++i) {
        phi_probe(i - 1) = std::sin(static_cast<double>(i) * M_PI * x_probe / span);
    }

    ModalCrossingHistory out;
    out.times = times;
    out.bridge_disp.reserve(times.size());
    out.bridge_acc.reserve(times.size());
    out.body_disp.reserve(times.size());
    out.body_acc.reserve(times.size());

    Eigen::VectorXd q = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd qd = Eigen::VectorXd::Zero(dim);
    const double h = h_out / static_cast<double>(config.substeps);

    auto record = [&](double t) {
        const Eigen::VectorXd acc = acceleration(t, q, qd);
        out.bridge_disp.push_back(phi_probe.dot(q.tail(nm)));
        out.bridge_acc.push_back(phi_probe.dot(acc.tail(nm)));
        out.body_disp.push_back(q(0));
        out.body_acc.push_back(acc(0));
    };

    record(0.0);
    for (std::size_t step = 1; step < times.size(); ++step) {
        double t = times[step - 1];
        for (int sub = 0; sub < config.substeps; ++sub) {
            // classic RK4 on [q, qd]
            const Eigen::VectorXd a1 = acceleration(t, q, qd);
            const Eigen::VectorXd k1q = qd;
            const Eigen::VectorXd a2 = acceleration(t + 0.5 * h, q + 0.5 * h * k1q, qd + 0.5 * h * a1);
            const Eigen::VectorXd k2q = qd + 0.5 * h * a1;
            const Eigen::VectorXd a3 = acceleration(t + 0.5 * h, q + 0.5 * h * k2q, qd + 0.5 * h * a2);
            const Eigen::VectorXd k3q = qd + 0.5 * h * a2;
            const Eigen::VectorXd a4 = acceleration(t + h, q + h * k3q, qd + h * a3);
            const Eigen::VectorXd k4q = qd + h * a3;
            q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
            qd += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            t += h;
        }
        record(times[step]);
    }
    return out;
}

}  // namespace ttb::reference
