#include "ttb/newmark.hpp"

#include <stdexcept>

#include "ttb/errors.hpp"

namespace ttb {

namespace {

Eigen::VectorXd solve_equilibrium(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                                  const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) {
        throw SolverError("mass matrix is singular");
    }
    return lu.solve(f - c * v - k * u);
}

}  // namespace

void NewmarkParams::validate() const {
    if (!(beta >= 1.0 / 6.0 - 1e-12 && beta <= 0.5 + 1e-12)) {
        throw std::invalid_argument("newmark: beta must lie in [1/6, 1/2]");
    }
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("newmark: delta must lie in (0, 1]");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("newmark: dt must be positive");
    }
}

Eigen::VectorXd initial_acceleration(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                                     const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                     const Eigen::VectorXd& u0, const Eigen::VectorXd& v0) {
    return solve_equilibrium(m, c, k, f, u0, v0);
}

State newmark_step(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                   const Eigen::MatrixXd& k, const Eigen::VectorXd& df,
                   const State& state, const NewmarkParams& params) {
    params.validate();
    const Eigen::Index n = m.rows();
    if (c.rows() != n || k.rows() != n || df.size() != n || state.u.size() != n ||
        state.v.size() != n || state.acc.size() != n) {
        throw std::invalid_argument("newmark_step: inconsistent dimensions");
    }
    if (!df.allFinite() || !state.u.allFinite() || !state.v.allFinite() ||
        !state.acc.allFinite()) {
        throw std::invalid_argument("newmark_step: non-finite input");
    }

    const double b = params.beta;
    const double d = params.delta;
    const double dt = params.dt;

    const Eigen::MatrixXd keff =
        k + m / (b * dt * dt) + c * (d / (b * dt));
    const Eigen::VectorXd feff =
        df + m * (state.v / (b * dt) + state.acc / (2.0 * b)) +
        c * (state.v * (d / b) + state.acc * (dt * (d / (2.0 * b) - 1.0)));

    Eigen::FullPivLU<Eigen::MatrixXd> lu(keff);
    if (!lu.isInvertible()) {
        throw SolverError("effective stiffness matrix is singular");
    }
    const Eigen::VectorXd du = lu.solve(feff);
    const Eigen::VectorXd dv =
        (d / (b * dt)) * du - (d / b) * state.v + dt * (1.0 - d / (2.0 * b)) * state.acc;
    const Eigen::VectorXd da =
        (du - dt * state.v - 0.5 * dt * dt * state.acc) / (b * dt * dt);

    State next;
    next.u = state.u + du;
    next.v = state.v + dv;
    next.acc = state.acc + da;
    next.t = state.t + dt;
    return next;
}

Eigen::VectorXd recompute_acceleration(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                                       const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                       const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return solve_equilibrium(m, c, k, f, u, v);
}

}  // namespace ttb
