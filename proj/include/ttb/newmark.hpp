#pragma once

#include <Eigen/Dense>

namespace ttb {

/// Newmark integrator parameters. beta in [1/6, 1/2]; delta = 1/2 gives
/// the classic family (no algorithmic damping), beta = 1/4 the
/// unconditionally stable average-acceleration member, beta = 1/6 the
/// conditionally stable linear-acceleration member.
struct NewmarkParams {
    double beta = 0.25;
    double delta = 0.5;
    double dt = 0.005;  ///< [s]

    void validate() const;
};

/// Displacement, velocity and acceleration vectors at one time instant.
struct State {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    Eigen::VectorXd acc;
    double t = 0.0;
};

/// Startup acceleration from the equation of motion at t = 0:
/// solve m * acc = f - c * v0 - k * u0.
Eigen::VectorXd initial_acceleration(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                                     const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                     const Eigen::VectorXd& u0, const Eigen::VectorXd& v0);

/// One incremental Newmark step. m, c, k are the system matrices frozen
/// at the step's start; df is the force increment F(t+dt) - F(t). The
/// effective stiffness K + m/(beta dt^2) + c delta/(beta dt) is
/// factorized and solved for the displacement increment; velocity and
/// acceleration increments follow from the Newmark difference
/// relations. Throws SolverError on a singular effective stiffness and
/// std::invalid_argument on non-finite input.
State newmark_step(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                   const Eigen::MatrixXd& k, const Eigen::VectorXd& df,
                   const State& state, const NewmarkParams& params);

/// Acceleration from equilibrium at the new time, using the matrices
/// and force of t + dt. For time-invariant systems this coincides with
/// the incremental update inside newmark_step; for time-varying ones it
/// removes the drift the stale-matrix increment would accumulate.
Eigen::VectorXd recompute_acceleration(const Eigen::MatrixXd& m, const Eigen::MatrixXd& c,
                                       const Eigen::MatrixXd& k, const Eigen::VectorXd& f,
                                       const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace ttb
