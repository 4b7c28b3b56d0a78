#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace cqedlab {

struct LmOptions {
    int max_iterations = 200;
    double relative_step_tolerance = 1e-10;
    double initial_damping = 1e-3;
};

template <typename Scalar>
struct LmSummary {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sigma;
    Scalar sum_squares = 0;
    bool converged = false;
    int iterations = 0;
};

// Damped Gauss-Newton with Marquardt diagonal scaling. `Model` provides
//   residuals(x) -> Vector   (model - data)
//   jacobian(x)  -> Matrix   (d residuals / d x)
// Non-finite trial costs are treated as rejected steps. The schedule is fixed,
// so identical inputs give bit-identical output.
template <typename Model, typename Scalar = double>
LmSummary<Scalar> levenberg_marquardt(const Model& model,
                                      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x,
                                      const LmOptions& options = {}) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    LmSummary<Scalar> out;
    Vector r = model.residuals(x);
    Scalar cost = r.squaredNorm();
    Scalar lambda = Scalar(options.initial_damping);

    int it = 0;
    bool converged = false;
    while (it < options.max_iterations) {
        ++it;
        const Matrix jac = model.jacobian(x);
        const Matrix jtj = jac.transpose() * jac;
        const Vector grad = jac.transpose() * r;
        if (grad.norm() == Scalar(0) || cost == Scalar(0)) {
            converged = true;
            break;
        }

        bool accepted = false;
        Vector step;
        while (!accepted) {
            Matrix damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(Scalar(1e-30));
            step = damped.ldlt().solve(-grad);
            const Vector trial = x + step;
            const Vector trial_r = model.residuals(trial);
            const Scalar trial_cost = trial_r.squaredNorm();
            if (std::isfinite(double(trial_cost)) && trial_cost <= cost) {
                x = trial;
                r = trial_r;
                cost = trial_cost;
                lambda = std::max(lambda / Scalar(10), Scalar(1e-12));
                accepted = true;
            } else {
                lambda *= Scalar(10);
                if (lambda > Scalar(1e20)) {
                    break;
                }
            }
        }

        const Scalar tol = Scalar(options.relative_step_tolerance);
        if (step.norm() <= tol * (x.norm() + tol)) {
            converged = true;
            break;
        }
        if (!accepted) {
            break;
        }
    }

    out.x = x;
    out.sum_squares = cost;
    out.converged = converged;
    out.iterations = it;

    const Matrix jac = model.jacobian(x);
    const Eigen::Index dof = jac.rows() - jac.cols();
    out.sigma = Vector::Zero(x.size());
    if (dof > 0) {
        const Matrix cov = (jac.transpose() * jac).completeOrthogonalDecomposition().pseudoInverse() *
                           (cost / Scalar(dof));
        out.sigma = cov.diagonal().cwiseMax(Scalar(0)).cwiseSqrt();
    }
    return out;
}

}  // namespace cqedlab
