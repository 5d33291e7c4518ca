#include "dtpar/ode.hpp"

#include <cmath>

#include "dtpar/errors.hpp"
#include "dtpar/time_grid.hpp"

namespace dtpar {

Vector newton_solve(const std::function<Vector(const Vector&)>& residual,
                    const std::function<Matrix(const Vector&)>& residual_jacobian,
                    const Vector& guess, const NewtonConfig& cfg, NewtonStats* stats) {
    Vector w = guess;
    Vector r = residual(w);
    const double r0_norm = r.norm();
    double r_norm = r0_norm;

    auto converged = [&](double rn) {
        return rn <= cfg.abs_tol || rn <= cfg.rel_tol * r0_norm;
    };

    int iter = 0;
    if (!converged(r_norm)) {
        for (iter = 1; iter <= cfg.max_iters; ++iter) {
            Matrix jac = residual_jacobian(w);
            Eigen::PartialPivLU<Matrix> lu(jac);
            Vector dw = lu.solve(-r);
            if (!dw.allFinite())
                throw SingularJacobian("newton_solve: linear solve produced non-finite update");
            w += dw;
            r = residual(w);
            r_norm = r.norm();
            if (converged(r_norm)) break;
        }
        if (!converged(r_norm))
            throw NonConvergence("newton_solve: iteration cap reached", cfg.max_iters, r_norm);
    }

    if (stats) {
        stats->iterations = iter;
        stats->residual_norm = r_norm;
        stats->guess_was_solution = (iter == 0);
    }
    return w;
}

Vector be_step(const DynamicalSystem& sys, const Vector& xi, double t_next, double dt,
               const NewtonConfig& cfg, const Vector* guess, NewtonStats* stats) {
    if (dt <= 0.0) throw DomainError("be_step: dt must be positive");
    auto residual = [&](const Vector& w) -> Vector {
        return w - xi - dt * sys.velocity(w, t_next);
    };
    auto jacobian = [&](const Vector& w) -> Matrix {
        Matrix jac = -dt * sys.jacobian(w, t_next);
        jac.diagonal().array() += 1.0;
        return jac;
    };
    return newton_solve(residual, jacobian, guess ? *guess : xi, cfg, stats);
}

Vector cn_step(const DynamicalSystem& sys, const Vector& xi, double t_prev, double t_next,
               double dt, const NewtonConfig& cfg, NewtonStats* stats) {
    if (dt <= 0.0) throw DomainError("cn_step: dt must be positive");
    const Vector g_prev = sys.velocity(xi, t_prev);
    auto residual = [&](const Vector& w) -> Vector {
        return w - xi - 0.5 * dt * (sys.velocity(w, t_next) + g_prev);
    };
    auto jacobian = [&](const Vector& w) -> Matrix {
        Matrix jac = -0.5 * dt * sys.jacobian(w, t_next);
        jac.diagonal().array() += 1.0;
        return jac;
    };
    return newton_solve(residual, jacobian, xi, cfg, stats);
}

std::vector<Vector> fine_propagate(const DynamicalSystem& sys, const TimeGrid& grid,
                                   const Vector& xi, int i, int j, const NewtonConfig& cfg,
                                   const GuessProvider& guess, PropagationStats* stats) {
    if (i < 0 || j < i || j > grid.n_fine())
        throw DomainError("fine_propagate: invalid fine index range");
    std::vector<Vector> trajectory;
    trajectory.reserve(j - i + 1);
    trajectory.push_back(xi);
    const double h = grid.fine_step();
    for (int m = i + 1; m <= j; ++m) {
        std::optional<Vector> g = guess ? guess(m) : std::nullopt;
        NewtonStats ns;
        trajectory.push_back(
            be_step(sys, trajectory.back(), grid.fine_time(m), h, cfg, g ? &*g : nullptr, &ns));
        if (stats) {
            ++stats->steps;
            stats->newton_iterations += ns.iterations;
            if (ns.guess_was_solution) ++stats->zero_iteration_steps;
        }
    }
    return trajectory;
}

Vector coarse_integrator_step(IntegratorKind kind, const DynamicalSystem& sys, const Vector& xi,
                              double t_n, double H, const NewtonConfig& cfg,
                              PropagationStats* stats) {
    NewtonStats ns;
    Vector out;
    switch (kind) {
        case IntegratorKind::BackwardEuler:
            out = be_step(sys, xi, t_n + H, H, cfg, nullptr, &ns);
            break;
        case IntegratorKind::CrankNicolson:
            out = cn_step(sys, xi, t_n, t_n + H, H, cfg, &ns);
            break;
    }
    if (stats) {
        ++stats->steps;
        stats->newton_iterations += ns.iterations;
        if (ns.guess_was_solution) ++stats->zero_iteration_steps;
    }
    return out;
}

Matrix fd_jacobian(const DynamicalSystem& sys, const Vector& xi, double t) {
    const int n = sys.dim;
    Matrix jac(n, n);
    Vector probe = xi;
    for (int c = 0; c < n; ++c) {
        const double step = 1e-6 * (1.0 + std::abs(xi[c]));
        probe[c] = xi[c] + step;
        const Vector gp = sys.velocity(probe, t);
        probe[c] = xi[c] - step;
        const Vector gm = sys.velocity(probe, t);
        probe[c] = xi[c];
        jac.col(c) = (gp - gm) / (2.0 * step);
    }
    return jac;
}

}  // namespace dtpar
