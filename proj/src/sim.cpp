#include "ttb/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ttb/coupling.hpp"
#include "ttb/errors.hpp"
#include "ttb/hermite_beam.hpp"

namespace ttb {

namespace {

std::string format_x(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

/// Everything the loop needs about one time instant: the coupled
/// system plus the wheel kinematics used by the contact-force probe.
struct StepContext {
    GlobalSystem sys;
    bool on_span = false;
    WheelLocation loc;
    IrregularitySample irr;
    double v_inst = 0.0;
};

StepContext context_at(const SimConfig& cfg, const GlobalSystem& base, double t) {
    const double span = cfg.mesh.span();
    const double slack = 1e-9 * std::max(span, 1.0);
    const double x = vehicle_position(cfg.vehicle, t, cfg.x0);

    StepContext ctx;
    ctx.v_inst = vehicle_speed(cfg.vehicle, t);
    if (x >= -slack && x <= span + slack) {
        ctx.on_span = true;
        ctx.loc = locate_wheel(x, cfg.mesh.l, cfg.mesh.n);
        ctx.irr = cfg.profile.eval(std::clamp(x, 0.0, span));
        const CouplingBlocks blocks =
            build_coupling_blocks(cfg.vehicle, ctx.loc, ctx.irr, ctx.v_inst, cfg.gravity);
        ctx.sys = scatter_vehicle(base, blocks, ctx.loc);
    } else {
        ctx.loc = WheelLocation{x, 1, 0.0, 0.0, cfg.mesh.l};
        ctx.sys = scatter_vehicle(base, departed_coupling_blocks(cfg.vehicle), ctx.loc);
    }
    return ctx;
}

double evaluate_probe(const SimConfig& cfg, const StepContext& ctx, const State& state,
                      const Probe& probe) {
    if (probe.quantity == ProbeQuantity::ContactForce) {
        if (!ctx.on_span) return 0.0;
        return contact_force(state, ctx.sys, cfg.mesh, cfg.vehicle, ctx.loc, ctx.irr,
                             ctx.v_inst, cfg.gravity);
    }
    const Eigen::VectorXd& dofs = probe.quantity == ProbeQuantity::Displacement ? state.u
                                  : probe.quantity == ProbeQuantity::Velocity   ? state.v
                                                                                : state.acc;
    if (probe.target == ProbeTarget::Body) return dofs(0);
    if (probe.under_wheel) {
        if (!ctx.on_span) return 0.0;
        return probe_value(ctx.sys, cfg.mesh, dofs, probe.target,
                           std::clamp(ctx.loc.x, 0.0, cfg.mesh.span()));
    }
    return probe_value(ctx.sys, cfg.mesh, dofs, probe.target, probe.x);
}

}  // namespace

std::string Probe::name() const {
    std::string base;
    switch (target) {
        case ProbeTarget::Bridge: base = "bridge"; break;
        case ProbeTarget::Rail: base = "rail"; break;
        case ProbeTarget::Body: base = "body"; break;
    }
    switch (quantity) {
        case ProbeQuantity::Displacement: base += "_disp"; break;
        case ProbeQuantity::Velocity: base += "_vel"; break;
        case ProbeQuantity::Acceleration: base += "_acc"; break;
        case ProbeQuantity::ContactForce: return "contact_force";
    }
    if (target != ProbeTarget::Body) {
        base += under_wheel ? "@wheel" : "@" + format_x(x);
    }
    return base;
}

std::string Probe::unit() const {
    switch (quantity) {
        case ProbeQuantity::Displacement: return "m";
        case ProbeQuantity::Velocity: return "m/s";
        case ProbeQuantity::Acceleration: return "m/s^2";
        case ProbeQuantity::ContactForce: return "N";
    }
    return "";
}

double SimConfig::crossing_time() const {
    const double dist = mesh.span() - x0;
    if (vehicle.a == 0.0) return dist / vehicle.v;
    const double disc = vehicle.v * vehicle.v + 2.0 * vehicle.a * dist;
    if (disc <= 0.0) throw ConfigError("vehicle decelerates to rest before the far support");
    return (-vehicle.v + std::sqrt(disc)) / vehicle.a;
}

double SimConfig::duration() const { return t_end > 0.0 ? t_end : crossing_time(); }

void SimConfig::validate() const {
    mesh.validate();
    vehicle.validate();
    newmark.validate();
    if (x0 < 0.0 || x0 >= mesh.span()) throw ConfigError("entry offset outside the span");
    if (tail < 0.0) throw ConfigError("tail must be non-negative");
    if (!(duration() > 0.0)) throw ConfigError("simulated duration must be positive");
    for (const auto& p : probes) {
        if (p.target != ProbeTarget::Body && !p.under_wheel &&
            p.quantity != ProbeQuantity::ContactForce &&
            (p.x < 0.0 || p.x > mesh.span())) {
            throw ConfigError("probe '" + p.name() + "' lies outside the span");
        }
    }
}

int TimeHistory::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<Probe> default_probes(const Mesh& mesh) {
    const double mid = 0.5 * mesh.span();
    return {
        Probe{ProbeTarget::Bridge, ProbeQuantity::Displacement, mid, false},
        Probe{ProbeTarget::Bridge, ProbeQuantity::Acceleration, mid, false},
        Probe{ProbeTarget::Body, ProbeQuantity::Acceleration, 0.0, false},
    };
}

double probe_value(const GlobalSystem& sys, const Mesh& mesh, const Eigen::VectorXd& dofs,
                   ProbeTarget target, double x) {
    if (target == ProbeTarget::Body) {
        if (!sys.has_vehicle) throw std::invalid_argument("probe_value: no vehicle DOF");
        return dofs(0);
    }
    const WheelLocation at = locate_wheel(x, mesh.l, mesh.n);
    const ShapeEval sh = shape(at.xi, at.l);
    const int offset = target == ProbeTarget::Bridge ? 2 * (mesh.n + 1) : 0;
    double w = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int idx = sys.index_of(offset + 2 * (at.j - 1) + a);
        if (idx >= 0) w += sh.n(a) * dofs(idx);
    }
    return w;
}

double probe_displacement(const State& state, const GlobalSystem& sys, const Mesh& mesh,
                          ProbeTarget target, double x) {
    return probe_value(sys, mesh, state.u, target, x);
}

double contact_force(const State& state, const GlobalSystem& sys, const Mesh& mesh,
                     const VehicleParams& vehicle, const WheelLocation& loc,
                     const IrregularitySample& irr, double v_inst, double gravity) {
    const ShapeEval sh = shape(loc.xi, loc.l);
    Eigen::Vector4d u4 = Eigen::Vector4d::Zero();
    Eigen::Vector4d v4 = Eigen::Vector4d::Zero();
    Eigen::Vector4d a4 = Eigen::Vector4d::Zero();
    for (int a = 0; a < 4; ++a) {
        const int idx = sys.index_of(2 * (loc.j - 1) + a);
        if (idx < 0) continue;
        u4(a) = state.u(idx);
        v4(a) = state.v(idx);
        a4(a) = state.acc(idx);
    }
    const double w = sh.n.dot(u4);
    const double w1 = sh.d1.dot(u4);
    const double w2 = sh.d2.dot(u4);
    const double wd = sh.n.dot(v4);
    const double wd1 = sh.d1.dot(v4);
    const double wdd = sh.n.dot(a4);

    const double q1 = state.u(0);
    const double q1d = state.v(0);
    // permanent contact: wheel follows rail surface plus irregularity
    const double qe_d = v_inst * irr.r1 + wd + v_inst * w1;
    const double qe_dd = v_inst * v_inst * irr.r2 + vehicle.a * irr.r1 + wdd +
                         2.0 * v_inst * wd1 + v_inst * v_inst * w2 + vehicle.a * w1;

    return (vehicle.m_body + vehicle.m_wheel) * gravity +
           vehicle.k_susp * (w + irr.r - q1) + vehicle.c_susp * (qe_d - q1d) -
           vehicle.m_wheel * qe_dd;
}

TimeHistory run_simulation(const SimConfig& config) {
    config.validate();

    const GlobalSystem base =
        apply_constraints(assemble_rail_bridge(config.mesh), config.mesh.n);

    const double dt = config.newmark.dt;
    const double total = config.duration() + config.tail;
    // the run length snaps to the nearest whole step (within dt/2 of total)
    const auto steps = static_cast<long>(std::llround(total / dt));

    std::vector<Probe> probes = config.probes.empty() ? default_probes(config.mesh) : config.probes;

    TimeHistory hist;
    hist.times.reserve(static_cast<std::size_t>(steps) + 1);
    for (const auto& p : probes) {
        hist.names.push_back(p.name());
        hist.units.push_back(p.unit());
        hist.columns.emplace_back();
        hist.columns.back().reserve(static_cast<std::size_t>(steps) + 1);
    }

    StepContext ctx = context_at(config, base, 0.0);
    const int dim = ctx.sys.size();

    State state;
    state.u = Eigen::VectorXd::Zero(dim);
    state.v = Eigen::VectorXd::Zero(dim);
    state.t = 0.0;
    state.acc = initial_acceleration(ctx.sys.m, ctx.sys.c, ctx.sys.k, ctx.sys.f, state.u, state.v);

    auto record = [&](const StepContext& c, const State& s) {
        hist.times.push_back(s.t);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            hist.columns[i].push_back(evaluate_probe(config, c, s, probes[i]));
        }
    };
    record(ctx, state);

    for (long i = 0; i < steps; ++i) {
        const double t_new = static_cast<double>(i + 1) * dt;
        StepContext next = context_at(config, base, t_new);
        try {
            const Eigen::VectorXd df = next.sys.f - ctx.sys.f;
            state = newmark_step(ctx.sys.m, ctx.sys.c, ctx.sys.k, df, state, config.newmark);
            state.t = t_new;
            if (config.accel_update == AccelUpdate::Equilibrium) {
                state.acc = recompute_acceleration(next.sys.m, next.sys.c, next.sys.k,
                                                   next.sys.f, state.u, state.v);
            }
        } catch (const std::exception& e) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "step %ld (t=%.6g s): %s", i + 1, t_new, e.what());
            throw SolverError(msg);
        }
        record(next, state);
        ctx = std::move(next);
    }

    for (std::size_t c = 0; c < hist.columns.size(); ++c) {
        for (double value : hist.columns[c]) {
            if (!std::isfinite(value)) {
                throw SolverError("non-finite value in output column " + hist.names[c]);
            }
        }
    }
    return hist;
}

}  // namespace ttb
