#pragma once

#include <Eigen/Dense>

#include "teamdyn/game.hpp"

namespace teamdyn {

// Analytic two-Gaussian-mixture discrimination objective on an unconstrained
// domain:
//   f(theta, p; v, w) = (pi1 - pi2) v'mu - 2 p v'theta + v'theta
//                       + sum_i w_i (mu_i^2 - theta_i^2)
// with minimizers (theta, p) and maximizers (v, w), pi2 = 1 - pi1.
// Stationary points with v = w = 0 sit at (theta, p) = (mu, pi1) and
// (-mu, pi2). Coordinate layout: theta (n), p (1), v (n), w (n).
class TeamWgan final : public Game {
public:
    TeamWgan(Eigen::VectorXd mu, double pi1);

    int n() const { return static_cast<int>(mu_.size()); }
    const Eigen::VectorXd& mu() const { return mu_; }
    double pi1() const { return pi1_; }

    const Domain& domain() const override { return domain_; }
    int min_dim() const override { return n() + 1; }
    double value(const Eigen::VectorXd& z) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& z) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& z) const override;

private:
    Eigen::VectorXd mu_;
    double pi1_;
    Domain domain_;
};

// Distance of a point to the nearest of the two stationary branches,
// measured as max(|theta -/+ mu|_2, |p - pi|) on the matching branch.
double wgan_branch_error(const TeamWgan& game, const Eigen::VectorXd& z);

} // namespace teamdyn
