#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <optional>
#include <vector>

namespace dtpar {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// First-order ODE system dx/dt = g(x; t) with initial state x(0).
///
/// The Jacobian dg/dx is supplied analytically. Systems with banded structure
/// may additionally provide `sparse_jacobian`; consumers that assemble
/// products like J*Phi use it when present.
struct DynamicalSystem {
    int dim = 0;
    Vector initial_state;
    std::function<Vector(const Vector&, double)> velocity;
    std::function<Matrix(const Vector&, double)> jacobian;
    std::function<SparseMatrix(const Vector&, double)> sparse_jacobian;  // optional
};

struct NewtonConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_iters = 25;
};

struct NewtonStats {
    int iterations = 0;
    double residual_norm = 0.0;
    bool guess_was_solution = false;  // zero-iteration exit
};

/// Newton's method for r(w) = 0 with dense LU linear solves.
///
/// Exits with zero iterations when the initial guess already satisfies the
/// absolute tolerance; the caller can observe this through `stats`.
Vector newton_solve(const std::function<Vector(const Vector&)>& residual,
                    const std::function<Matrix(const Vector&)>& residual_jacobian,
                    const Vector& guess, const NewtonConfig& cfg = {},
                    NewtonStats* stats = nullptr);

/// One backward-Euler step: solves w - xi - dt*g(w; t_next) = 0.
/// The Newton guess defaults to xi unless an external guess is supplied.
Vector be_step(const DynamicalSystem& sys, const Vector& xi, double t_next, double dt,
               const NewtonConfig& cfg = {}, const Vector* guess = nullptr,
               NewtonStats* stats = nullptr);

/// One Crank–Nicolson step: solves w - xi - (dt/2)*[g(w; t_next) + g(xi, t_prev)] = 0.
Vector cn_step(const DynamicalSystem& sys, const Vector& xi, double t_prev, double t_next,
               double dt, const NewtonConfig& cfg = {}, NewtonStats* stats = nullptr);

class TimeGrid;

/// Cumulative Newton work of a propagation.
struct PropagationStats {
    long steps = 0;
    long newton_iterations = 0;
    long zero_iteration_steps = 0;
};

/// Optional supplier of Newton initial guesses, keyed by target fine index.
using GuessProvider = std::function<std::optional<Vector>(int fine_index)>;

/// Backward-Euler fine propagation from fine index i to j (0 <= i <= j <= n_fine).
/// Returns all intermediate states; trajectory[0] is xi.
std::vector<Vector> fine_propagate(const DynamicalSystem& sys, const TimeGrid& grid,
                                   const Vector& xi, int i, int j,
                                   const NewtonConfig& cfg = {},
                                   const GuessProvider& guess = nullptr,
                                   PropagationStats* stats = nullptr);

enum class IntegratorKind { BackwardEuler, CrankNicolson };

/// One coarse integrator application over [T_n, T_n + H].
Vector coarse_integrator_step(IntegratorKind kind, const DynamicalSystem& sys,
                              const Vector& xi, double t_n, double H,
                              const NewtonConfig& cfg = {}, PropagationStats* stats = nullptr);

/// Central finite-difference Jacobian of the velocity; testing aid only.
Matrix fd_jacobian(const DynamicalSystem& sys, const Vector& xi, double t);

}  // namespace dtpar
