#include "teamdyn/stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "teamdyn/errors.hpp"
#include "teamdyn/geometry.hpp"
#include "teamdyn/metrics.hpp"

namespace teamdyn {

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw DimensionError("eigenvalues: matrix is not square");
    if (M.rows() > 64) throw CapabilityError("eigenvalues: dimension above 64 unsupported");
    if (M.rows() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> solver;
    solver.compute(M, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigenvalues: QR iteration did not converge");
    std::vector<std::complex<double>> out(M.rows());
    for (int i = 0; i < M.rows(); ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

double spectral_radius(const Eigen::MatrixXd& M) {
    double r = 0.0;
    for (const auto& ev : eigenvalues(M)) r = std::max(r, std::abs(ev));
    return r;
}

int reduced_dim(const Domain& domain) {
    if (domain.kind == Domain::Kind::unconstrained) return domain.dim();
    return domain.dim() - domain.blocks();
}

Eigen::MatrixXd reduce_matrix(const Domain& domain) {
    const int d = domain.dim();
    if (domain.kind == Domain::Kind::unconstrained)
        return Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(reduced_dim(domain), d);
    int row = 0, off = 0;
    for (int s : domain.shape) {
        for (int i = 0; i < s - 1; ++i) R(row++, off + i) = 1.0;
        off += s;
    }
    return R;
}

Eigen::MatrixXd expand_matrix(const Domain& domain) {
    const int d = domain.dim();
    if (domain.kind == Domain::Kind::unconstrained)
        return Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, reduced_dim(domain));
    int col = 0, off = 0;
    for (int s : domain.shape) {
        for (int i = 0; i < s - 1; ++i) {
            E(off + i, col) = 1.0;
            E(off + s - 1, col) = -1.0;
            ++col;
        }
        off += s;
    }
    return E;
}

Eigen::VectorXd reduce_point(const Domain& domain, const Eigen::VectorXd& z) {
    if (z.size() != domain.dim()) throw DimensionError("reduce_point: wrong length");
    if (domain.kind == Domain::Kind::unconstrained) return z;
    Eigen::VectorXd u(reduced_dim(domain));
    int row = 0, off = 0;
    for (int s : domain.shape) {
        for (int i = 0; i < s - 1; ++i) u[row++] = z[off + i];
        off += s;
    }
    return u;
}

Eigen::VectorXd expand_point(const Domain& domain, const Eigen::VectorXd& u) {
    if (domain.kind == Domain::Kind::unconstrained) {
        if (u.size() != domain.dim()) throw DimensionError("expand_point: wrong length");
        return u;
    }
    if (u.size() != reduced_dim(domain)) throw DimensionError("expand_point: wrong length");
    Eigen::VectorXd z(domain.dim());
    int row = 0, off = 0;
    for (int s : domain.shape) {
        double sum = 0.0;
        for (int i = 0; i < s - 1; ++i) {
            z[off + i] = u[row++];
            sum += z[off + i];
        }
        z[off + s - 1] = 1.0 - sum;
        off += s;
    }
    return z;
}

Eigen::MatrixXd tangent_projector(const Domain& domain) {
    const int d = domain.dim();
    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(d, d);
    if (domain.kind == Domain::Kind::unconstrained) return T;
    int off = 0;
    for (int s : domain.shape) {
        T.block(off, off, s, s).array() -= 1.0 / s;
        off += s;
    }
    return T;
}

Eigen::MatrixXd field_jacobian(const Game& game, const Eigen::VectorXd& z) {
    Eigen::MatrixXd J = game.hessian(z);
    J.topRows(game.min_dim()) *= -1.0;
    return J;
}

namespace {

void require_interior(const Game& game, const Eigen::VectorXd& z, const char* who) {
    if (z.size() != game.dim())
        throw DimensionError(std::string(who) + ": wrong coordinate count");
    if (!is_interior(game.domain(), z))
        throw DomainError(std::string(who) + ": point must be interior");
}

struct AlphaBeta {
    std::vector<std::complex<double>> unstable;
    double alpha = 0.0, beta = 0.0;
};

AlphaBeta right_half_plane(const std::vector<std::complex<double>>& eigs) {
    AlphaBeta ab;
    bool first = true;
    for (const auto& rho : eigs) {
        if (rho.real() <= 1e-9) continue;
        ab.unstable.push_back(rho);
        const double mag2_over_re = std::norm(rho) / rho.real();
        if (first) {
            ab.alpha = rho.real();
            ab.beta = mag2_over_re;
            first = false;
        } else {
            ab.alpha = std::max(ab.alpha, rho.real());
            ab.beta = std::min(ab.beta, mag2_over_re);
        }
    }
    return ab;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1));
    return g;
}

} // namespace

Eigen::MatrixXd game_operator(const Game& game, const Eigen::VectorXd& z) {
    require_interior(game, z, "game_operator");
    const Domain& domain = game.domain();
    const Eigen::MatrixXd E = expand_matrix(domain);
    return E.transpose() * field_jacobian(game, z) * E;
}

Eigen::MatrixXd effective_operator(const Game& game, const Eigen::VectorXd& z) {
    require_interior(game, z, "effective_operator");
    const Domain& domain = game.domain();
    return reduce_matrix(domain) * tangent_projector(domain) * field_jacobian(game, z) *
           expand_matrix(domain);
}

Eigen::MatrixXd dynamics_jacobian(Method method, const Game& game,
                                  const Eigen::VectorXd& z, double eta, double k,
                                  double p) {
    require_interior(game, z, "dynamics_jacobian");
    const Domain& domain = game.domain();
    const Eigen::MatrixXd R = reduce_matrix(domain);
    const Eigen::MatrixXd E = expand_matrix(domain);
    const Eigen::MatrixXd T = tangent_projector(domain);
    const int n = reduced_dim(domain);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

    switch (method) {
        case Method::GDA: {
            return I + eta * (R * T * field_jacobian(game, z) * E);
        }
        case Method::OGDA: {
            const Eigen::MatrixXd Heff = R * T * field_jacobian(game, z) * E;
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
            J.topLeftCorner(n, n) = I + 2.0 * eta * Heff;
            J.topRightCorner(n, n) = -eta * Heff;
            J.bottomLeftCorner(n, n) = I;
            return J;
        }
        case Method::EG: {
            const Eigen::VectorXd zh =
                project_profile(domain, z + eta * signed_field(game, z));
            const Eigen::MatrixXd Gz = field_jacobian(game, z);
            const Eigen::MatrixXd Gh = field_jacobian(game, zh);
            const int d = game.dim();
            const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(d, d);
            return R * T * (Id + eta * Gh * T * (Id + eta * Gz)) * E;
        }
        case Method::OMWU: {
            // z+ = normalize(z .* exp(e)) per block with
            // e = 2*eta*F(z) - eta*F(z_prev), linearized at z_prev = z.
            if (domain.kind != Domain::Kind::unconstrained && !(z.minCoeff() > 0.0))
                throw DomainError("dynamics_jacobian: OMWU needs a strictly interior point");
            const Eigen::VectorXd f = signed_field(game, z);
            const Eigen::VectorXd e = eta * f; // e(z, z) = 2*eta*F - eta*F
            const int d = game.dim();
            Eigen::VectorXd zp(d);
            Eigen::MatrixXd D = Eigen::MatrixXd::Zero(d, d);      // direct part
            Eigen::MatrixXd Lam = Eigen::MatrixXd::Zero(d, d);    // dz+/de
            int off = 0;
            for (int s : domain.shape) {
                const double m = e.segment(off, s).maxCoeff();
                Eigen::VectorXd num(s);
                double N = 0.0;
                for (int i = 0; i < s; ++i) {
                    num[i] = z[off + i] * std::exp(e[off + i] - m);
                    N += num[i];
                }
                for (int i = 0; i < s; ++i) zp[off + i] = num[i] / N;
                for (int i = 0; i < s; ++i) {
                    for (int j = 0; j < s; ++j) {
                        const double ex = std::exp(e[off + j] - m) / N;
                        D(off + i, off + j) = (i == j ? ex : 0.0) - zp[off + i] * ex;
                        Lam(off + i, off + j) =
                            zp[off + i] * ((i == j ? 1.0 : 0.0) - zp[off + j]);
                    }
                }
                off += s;
            }
            const Eigen::MatrixXd G = field_jacobian(game, z);
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
            J.topLeftCorner(n, n) = R * (D + 2.0 * eta * Lam * G) * E;
            J.topRightCorner(n, n) = R * (-eta * Lam * G) * E;
            J.bottomLeftCorner(n, n) = I;
            return J;
        }
        case Method::KPV: {
            const Eigen::MatrixXd Heff = R * T * field_jacobian(game, z) * E;
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
            J.topLeftCorner(n, n) = I + eta * (Heff + k * I);
            J.topRightCorner(n, n) = -eta * k * I;
            J.bottomLeftCorner(n, n) = eta * p * I;
            J.bottomRightCorner(n, n) = (1.0 - eta * p) * I;
            return J;
        }
    }
    throw ConfigError("dynamics_jacobian: unknown method");
}

Eigen::MatrixXd linearization(Method method, const Eigen::MatrixXd& H, double eta,
                              double k, double p) {
    if (H.rows() != H.cols()) throw DimensionError("linearization: H must be square");
    const int n = static_cast<int>(H.rows());
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    switch (method) {
        case Method::GDA:
            return I + eta * H;
        case Method::OGDA: {
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
            J.topLeftCorner(n, n) = I + 2.0 * eta * H;
            J.topRightCorner(n, n) = -eta * H;
            J.bottomLeftCorner(n, n) = I;
            return J;
        }
        case Method::EG:
            return I + eta * H + eta * eta * H * H;
        case Method::KPV: {
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
            J.topLeftCorner(n, n) = I + eta * (H + k * I);
            J.topRightCorner(n, n) = -eta * k * I;
            J.bottomLeftCorner(n, n) = eta * p * I;
            J.bottomRightCorner(n, n) = I - eta * p * I;
            return J;
        }
        case Method::OMWU:
            throw ConfigError("linearization: no closed form is provided for OMWU");
    }
    throw ConfigError("linearization: unknown method");
}

SufficientReport check_sufficient(const Game& game, const Eigen::VectorXd& z) {
    SufficientReport report;
    report.H = game_operator(game, z);
    report.eigenvalues = eigenvalues(report.H);

    double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
    for (const auto& ev : report.eigenvalues) {
        max_abs = std::max(max_abs, std::abs(ev));
        min_abs = std::min(min_abs, std::abs(ev));
    }
    report.invertible = min_abs > 1e-9 * std::max(1.0, max_abs);

    const AlphaBeta ab = right_half_plane(report.eigenvalues);
    report.unstable = ab.unstable;
    report.e_empty = ab.unstable.empty();
    report.alpha = ab.alpha;
    report.beta = ab.beta;
    report.condition_holds =
        report.invertible && (report.e_empty || report.beta > report.alpha);
    if (report.condition_holds && !report.e_empty)
        report.k_interval = std::make_pair(-report.beta, -report.alpha);

    if (!report.condition_holds) return report;

    // Certify a concrete (eta, p) pair against the Jacobian of the step map
    // that is actually iterated; its linearization sees the tangent-projected
    // operator, so the gain is centered on that operator's admissible
    // interval (identical to (-beta+-alpha)/2 for unconstrained domains).
    const AlphaBeta ab_eff =
        right_half_plane(eigenvalues(effective_operator(game, z)));
    const double k_mid =
        ab_eff.unstable.empty() ? -1.0 : -(ab_eff.alpha + ab_eff.beta) / 2.0;

    // Keep the strongest contraction found: barely-stable pairs near the
    // grid edges certify stability but converge uselessly slowly.
    for (double eta : log_grid(1e-3, 0.2, 20)) {
        for (double p : log_grid(1e-4, 1.0, 20)) {
            const Eigen::MatrixXd J =
                dynamics_jacobian(Method::KPV, game, z, eta, k_mid, p);
            const double rho = spectral_radius(J);
            if (rho < 1.0 && (!report.certificate || rho < report.certificate->rho))
                report.certificate = SufficientReport::Certificate{eta, k_mid, p, rho};
        }
    }
    return report;
}

WeaklyStableResult is_weakly_stable(const TeamGame& game, const MixedProfile& ne) {
    ne.validate(game);
    const Eigen::VectorXd z = ne.flat();
    if (ne_gap(game, z) >= 1e-8)
        throw PreconditionError("is_weakly_stable: input is not a Nash equilibrium");

    constexpr double support_tol = 1e-9;
    constexpr double indifference_tol = 1e-8;
    auto support = [&](int player) {
        std::vector<int> supp;
        const int off = game.player_offset(player);
        for (int l = 0; l < game.strategy_count(player); ++l)
            if (z[off + l] > support_tol) supp.push_back(l);
        return supp;
    };

    for (int i = 0; i < game.num_players(); ++i) {
        const auto supp_i = support(i);
        if (supp_i.size() < 2) continue; // not randomizing
        for (int k : supp_i) {
            Eigen::VectorXd pinned = z;
            pinned.segment(game.player_offset(i), game.strategy_count(i)).setZero();
            pinned[game.player_offset(i) + k] = 1.0;
            const Eigen::VectorXd g = game.gradient(pinned);
            for (int j = 0; j < game.num_players(); ++j) {
                if (j == i || game.is_minimizer(j) != game.is_minimizer(i)) continue;
                const auto supp_j = support(j);
                if (supp_j.size() < 2) continue;
                const double sign = game.is_minimizer(j) ? -1.0 : 1.0;
                int best = supp_j[0], worst = supp_j[0];
                for (int l : supp_j) {
                    const double u = sign * g[game.player_offset(j) + l];
                    if (u > sign * g[game.player_offset(j) + best]) best = l;
                    if (u < sign * g[game.player_offset(j) + worst]) worst = l;
                }
                const double spread = sign * g[game.player_offset(j) + best] -
                                      sign * g[game.player_offset(j) + worst];
                if (spread > indifference_tol) {
                    WeaklyStableResult res;
                    res.weakly_stable = false;
                    res.witness = WeaklyStableWitness{i, k, j, best, worst};
                    return res;
                }
            }
        }
    }
    return WeaklyStableResult{};
}

double check_mvi(const Game& game, const Eigen::VectorXd& z,
                 const Eigen::VectorXd& z_star) {
    if (z.size() != game.dim() || z_star.size() != game.dim())
        throw DimensionError("check_mvi: wrong coordinate count");
    // The variational-inequality operator is the *negated* motion field:
    // (grad_x U, -grad_y U) for the min-max objective U.
    return -signed_field(game, z).dot(z - z_star);
}

} // namespace teamdyn
