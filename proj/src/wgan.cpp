#include "teamdyn/wgan.hpp"

#include <algorithm>
#include <cmath>

#include "teamdyn/errors.hpp"

namespace teamdyn {

TeamWgan::TeamWgan(Eigen::VectorXd mu, double pi1) : mu_(std::move(mu)), pi1_(pi1) {
    if (mu_.size() == 0) throw DomainError("TeamWgan: mu must be nonempty");
    if (!mu_.allFinite()) throw DomainError("TeamWgan: mu must be finite");
    if (!(pi1 > 0.0 && pi1 < 1.0) || pi1 == 0.5)
        throw DomainError("TeamWgan: pi1 must lie in (0,1) and differ from 1/2");
    domain_.kind = Domain::Kind::unconstrained;
    const int n = this->n();
    domain_.shape = {n, 1, n, n};
}

double TeamWgan::value(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw DimensionError("TeamWgan::value: wrong coordinate count");
    const int n = this->n();
    const auto theta = z.segment(0, n);
    const double p = z[n];
    const auto v = z.segment(n + 1, n);
    const auto w = z.segment(2 * n + 1, n);
    const double pi2 = 1.0 - pi1_;
    double f = (pi1_ - pi2) * v.dot(mu_) - 2.0 * p * v.dot(theta) + v.dot(theta);
    for (int i = 0; i < n; ++i) f += w[i] * (mu_[i] * mu_[i] - theta[i] * theta[i]);
    return f;
}

Eigen::VectorXd TeamWgan::gradient(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw DimensionError("TeamWgan::gradient: wrong coordinate count");
    const int n = this->n();
    const auto theta = z.segment(0, n);
    const double p = z[n];
    const auto v = z.segment(n + 1, n);
    const auto w = z.segment(2 * n + 1, n);
    const double pi2 = 1.0 - pi1_;

    Eigen::VectorXd g(dim());
    g.segment(0, n) = (1.0 - 2.0 * p) * v - 2.0 * w.cwiseProduct(theta);
    g[n] = -2.0 * v.dot(theta);
    g.segment(n + 1, n) = (pi1_ - pi2) * mu_ + (1.0 - 2.0 * p) * theta;
    g.segment(2 * n + 1, n) = mu_.cwiseProduct(mu_) - theta.cwiseProduct(theta);
    return g;
}

Eigen::MatrixXd TeamWgan::hessian(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw DimensionError("TeamWgan::hessian: wrong coordinate count");
    const int n = this->n();
    const auto theta = z.segment(0, n);
    const double p = z[n];
    const auto v = z.segment(n + 1, n);
    const auto w = z.segment(2 * n + 1, n);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
    auto sym = [&](int i, int j, double val) {
        h(i, j) = val;
        h(j, i) = val;
    };
    for (int i = 0; i < n; ++i) {
        h(i, i) = -2.0 * w[i];                       // theta-theta
        sym(i, n, -2.0 * v[i]);                      // theta-p
        sym(i, n + 1 + i, 1.0 - 2.0 * p);            // theta-v
        sym(i, 2 * n + 1 + i, -2.0 * theta[i]);      // theta-w
        sym(n, n + 1 + i, -2.0 * theta[i]);          // p-v
    }
    return h;
}

double wgan_branch_error(const TeamWgan& game, const Eigen::VectorXd& z) {
    if (z.size() != game.dim())
        throw DimensionError("wgan_branch_error: wrong coordinate count");
    const int n = game.n();
    const auto theta = z.segment(0, n);
    const double p = z[n];
    const double e1 = std::max((theta - game.mu()).norm(), std::abs(p - game.pi1()));
    const double e2 = std::max((theta + game.mu()).norm(), std::abs(p - (1.0 - game.pi1())));
    return std::min(e1, e2);
}

} // namespace teamdyn
