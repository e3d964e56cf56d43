#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <random>

#include "teamdyn/congestion.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/errors.hpp"
#include "teamdyn/families.hpp"
#include "teamdyn/metrics.hpp"
#include "teamdyn/stability.hpp"
#include "teamdyn/wgan.hpp"

using namespace teamdyn;
using cplx = std::complex<double>;

namespace {

Eigen::VectorXd gmp_ne() { return Eigen::VectorXd::Constant(8, 0.5); }

// Reduced pseudo-Hessian of the generalized matching pennies game and the
// signed operator obtained by flipping the minimizer rows.
Eigen::MatrixXd reduced_hessian_gmp(double omega) {
    Eigen::MatrixXd H(4, 4);
    H << 0, -2 * omega, -1, -1, //
        -2 * omega, 0, -1, -1,  //
        -1, -1, 0, 2 * omega,   //
        -1, -1, 2 * omega, 0;
    return H;
}

Eigen::MatrixXd signed_operator_gmp(double omega) {
    Eigen::MatrixXd H = reduced_hessian_gmp(omega);
    H.topRows(2) *= -1.0;
    return H;
}

void check_spectrum(const std::vector<cplx>& got, std::vector<cplx> expect,
                    double tol) {
    REQUIRE(got.size() == expect.size());
    for (const cplx& lam : got) {
        auto best = std::min_element(expect.begin(), expect.end(),
                                     [&](const cplx& a, const cplx& b) {
                                         return std::abs(lam - a) < std::abs(lam - b);
                                     });
        REQUIRE(best != expect.end());
        CHECK(std::abs(lam - *best) < tol);
        expect.erase(best);
    }
}

// Central-difference Jacobian of a vector map.
template <typename F>
Eigen::MatrixXd fd_jacobian(F&& f, const Eigen::VectorXd& u, double h = 1e-6) {
    const Eigen::VectorXd f0 = f(u);
    Eigen::MatrixXd J(f0.size(), u.size());
    for (int j = 0; j < u.size(); ++j) {
        Eigen::VectorXd up = u, um = u;
        up[j] += h;
        um[j] -= h;
        J.col(j) = (f(up) - f(um)) / (2 * h);
    }
    return J;
}

} // namespace

TEST_CASE("eigenvalue wrapper basics and error contracts") {
    check_spectrum(eigenvalues(Eigen::MatrixXd::Identity(3, 3)),
                   {cplx(1), cplx(1), cplx(1)}, 1e-12);

    // Companion matrix of lambda^2 - 3 lambda + 2 = (lambda-1)(lambda-2).
    Eigen::MatrixXd C(2, 2);
    C << 3, -2, 1, 0;
    check_spectrum(eigenvalues(C), {cplx(1), cplx(2)}, 1e-12);

    Eigen::MatrixXd rot(2, 2);
    rot << 0, -2, 1, 0;
    CHECK(spectral_radius(rot) == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXd::Zero(65, 65)), CapabilityError);
}

TEST_CASE("reduced pseudo-Hessian of GMP and its spectrum") {
    const double omega = 0.5;
    const TeamGame g = make_gmp(omega);
    const Eigen::MatrixXd R = reduce_matrix(g.domain());
    const Eigen::MatrixXd E = expand_matrix(g.domain());
    CHECK((R * E - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);
    CHECK((tangent_projector(g.domain()) * E - E).norm() < 1e-15);

    const Eigen::MatrixXd Hred = E.transpose() * g.hessian(gmp_ne()) * E;
    CHECK((Hred - reduced_hessian_gmp(omega)).lpNorm<Eigen::Infinity>() < 1e-12);

    const double s5 = std::sqrt(5.0);
    check_spectrum(eigenvalues(reduced_hessian_gmp(omega)),
                   {cplx(-1), cplx(1), cplx(s5), cplx(-s5)}, 1e-7);
}

TEST_CASE("signed game operator of GMP: spectrum and interval endpoints") {
    for (double omega : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const TeamGame g = make_gmp(omega);
        const Eigen::MatrixXd H = game_operator(g, gmp_ne());
        CHECK((H - signed_operator_gmp(omega)).lpNorm<Eigen::Infinity>() < 1e-12);
        check_spectrum(eigenvalues(H),
                       {cplx(-2 * omega), cplx(-2 * omega), cplx(2 * omega, 2),
                        cplx(2 * omega, -2)},
                       1e-9);
    }

    Eigen::VectorXd boundary = gmp_ne();
    boundary[0] = 1.0;
    boundary[1] = 0.0;
    CHECK_THROWS_AS(game_operator(make_gmp(0.5), boundary), DomainError);
}

TEST_CASE("effective operator is the tangent-halved signed operator on 2-simplex blocks") {
    const TeamGame g = make_gmp(0.5);
    const Eigen::MatrixXd H = game_operator(g, gmp_ne());
    const Eigen::MatrixXd Heff = effective_operator(g, gmp_ne());
    CHECK((Heff - 0.5 * H).lpNorm<Eigen::Infinity>() < 1e-12);

    // On an unconstrained domain the two coincide.
    Eigen::VectorXd mu(2);
    mu << 1.0, -0.5;
    const TeamWgan w(mu, 0.7);
    Eigen::VectorXd star(7);
    star << 1.0, -0.5, 0.7, 0.0, 0.0, 0.0, 0.0;
    CHECK((effective_operator(w, star) - game_operator(w, star)).norm() < 1e-12);
}

TEST_CASE("step Jacobians match their closed block forms") {
    const TeamGame g = make_gmp(0.5);
    const Eigen::VectorXd z = gmp_ne();
    const Eigen::MatrixXd Heff = effective_operator(g, z);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    const double eta = 0.1, k = -1.1, p = 0.3;

    CHECK((dynamics_jacobian(Method::GDA, g, z, eta) - (I + eta * Heff)).norm() < 1e-10);

    Eigen::MatrixXd Jogda(8, 8);
    Jogda << I + 2 * eta * Heff, -eta * Heff, I, Eigen::MatrixXd::Zero(4, 4);
    CHECK((dynamics_jacobian(Method::OGDA, g, z, eta) - Jogda).norm() < 1e-10);

    Eigen::MatrixXd Jkpv(8, 8);
    Jkpv << I + eta * (k * I + Heff), -eta * k * I, eta * p * I, I - eta * p * I;
    CHECK((dynamics_jacobian(Method::KPV, g, z, eta, k, p) - Jkpv).norm() < 1e-10);

    // EG equals I + eta*Heff + eta^2*Heff^2 at a fixed point.
    const Eigen::MatrixXd Jeg = dynamics_jacobian(Method::EG, g, z, eta);
    CHECK((Jeg - (I + eta * Heff + eta * eta * Heff * Heff)).norm() < 1e-10);
}

TEST_CASE("step Jacobians agree with finite differences of the step maps") {
    const TeamGame g = make_gmp(0.5);
    const Domain dom = g.domain();
    Eigen::VectorXd z(8);
    z << 0.45, 0.55, 0.52, 0.48, 0.5, 0.5, 0.55, 0.45;
    const Eigen::VectorXd u = reduce_point(dom, z);
    const double eta = 0.1, k = -1.1, p = 0.3;

    auto gda_map = [&](const Eigen::VectorXd& uu) {
        DynamicsState s = init_state(g, Method::GDA, expand_point(dom, uu));
        step_gda(s, g, dom, eta);
        return reduce_point(dom, s.z);
    };
    CHECK((dynamics_jacobian(Method::GDA, g, z, eta) - fd_jacobian(gda_map, u))
              .lpNorm<Eigen::Infinity>() < 1e-6);

    auto eg_map = [&](const Eigen::VectorXd& uu) {
        DynamicsState s = init_state(g, Method::EG, expand_point(dom, uu));
        step_eg(s, g, dom, eta);
        return reduce_point(dom, s.z);
    };
    CHECK((dynamics_jacobian(Method::EG, g, z, eta) - fd_jacobian(eg_map, u))
              .lpNorm<Eigen::Infinity>() < 1e-6);

    // Companion maps carry (current, previous) as the state.
    auto companion = [&](Method m) {
        return [&, m](const Eigen::VectorXd& w) {
            const Eigen::VectorXd cur = expand_point(dom, w.head(4));
            const Eigen::VectorXd prev = expand_point(dom, w.tail(4));
            DynamicsState s = init_state(g, m, cur);
            s.prev_field = signed_field(g, prev);
            if (m == Method::OGDA)
                step_ogda(s, g, dom, eta);
            else
                step_omwu(s, g, dom, eta);
            Eigen::VectorXd out(8);
            out << reduce_point(dom, s.z), w.head(4);
            return out;
        };
    };
    Eigen::VectorXd w0(8);
    w0 << u, u;
    CHECK((dynamics_jacobian(Method::OGDA, g, z, eta) -
           fd_jacobian(companion(Method::OGDA), w0))
              .lpNorm<Eigen::Infinity>() < 1e-6);
    CHECK((dynamics_jacobian(Method::OMWU, g, z, eta) -
           fd_jacobian(companion(Method::OMWU), w0))
              .lpNorm<Eigen::Infinity>() < 1e-6);

    auto kpv_map = [&](const Eigen::VectorXd& w) {
        DynamicsState s = init_state(g, Method::KPV, expand_point(dom, w.head(4)));
        s.theta = expand_point(dom, w.tail(4));
        step_kpv(s, g, dom, eta, k, p);
        Eigen::VectorXd out(8);
        out << reduce_point(dom, s.z), reduce_point(dom, s.theta);
        return out;
    };
    CHECK((dynamics_jacobian(Method::KPV, g, z, eta, k, p) - fd_jacobian(kpv_map, w0))
              .lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("extra-gradient linearization eigenvalues match the closed form") {
    const double omega = 0.5, eta = 0.2;
    const Eigen::MatrixXd J = linearization(Method::EG, signed_operator_gmp(omega), eta);
    const double re_pair = 1 + eta * (2 * omega + 4 * eta * omega * omega - 4 * eta);
    const double im_pair = 2 * eta * (1 + 4 * eta * omega);
    const double re_real = 1 + eta * (-2 * omega + 4 * eta * omega * omega);
    check_spectrum(eigenvalues(J),
                   {cplx(re_pair, im_pair), cplx(re_pair, -im_pair), cplx(re_real),
                    cplx(re_real)},
                   1e-7);
}

TEST_CASE("optimistic linearization eigenvalues are roots of the characteristic product") {
    const double omega = 0.5, eta = 0.1;
    const Eigen::MatrixXd J = linearization(Method::OGDA, signed_operator_gmp(omega), eta);
    auto poly = [&](cplx l) {
        const cplx a = 4.0 * (1 + omega * omega) * eta * eta * (1.0 - 2.0 * l) * (1.0 - 2.0 * l) +
                       (l - 1.0) * (l - 1.0) * l * l -
                       4.0 * omega * eta * l * (1.0 - 3.0 * l + 2.0 * l * l);
        const cplx b = (l - 1.0) * l + 2.0 * omega * eta * (2.0 * l - 1.0);
        return a * b * b;
    };
    for (const cplx& lam : eigenvalues(J)) CHECK(std::abs(poly(lam)) < 1e-9);
}

TEST_CASE("anchored-feedback block matrix factors into per-mode quadratics") {
    const double omega = 0.5, k = -1.1, p = 0.3;
    const Eigen::MatrixXd H = signed_operator_gmp(omega);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd M(8, 8);
    M << k * I + H, -k * I, p * I, -p * I;
    const std::vector<cplx> modes = {cplx(-2 * omega), cplx(-2 * omega),
                                     cplx(2 * omega, 2), cplx(2 * omega, -2)};
    for (const cplx& lam : eigenvalues(M)) {
        double best = 1e300;
        for (const cplx& rho : modes)
            best = std::min(best,
                            std::abs(lam * lam + lam * (p - k - rho) - rho * p));
        CHECK(best < 1e-8);
    }
    CHECK_THROWS_AS(linearization(Method::OMWU, H, 0.1), ConfigError);
}

TEST_CASE("stabilizability report on GMP across omega") {
    for (double omega : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const SufficientReport r = check_sufficient(make_gmp(omega), gmp_ne());
        CHECK(r.invertible);
        CHECK_FALSE(r.e_empty);
        CHECK(r.alpha == doctest::Approx(2 * omega).epsilon(1e-9));
        CHECK(r.beta == doctest::Approx(2 * omega + 2 / omega).epsilon(1e-9));
        REQUIRE(r.k_interval.has_value());
        CHECK(r.k_interval->first == doctest::Approx(-(2 * omega + 2 / omega)));
        CHECK(r.k_interval->second == doctest::Approx(-2 * omega));
        CHECK(r.condition_holds);
        REQUIRE(r.certificate.has_value());
        CHECK(r.certificate->rho < 1.0);
    }
    const SufficientReport half = check_sufficient(make_gmp(0.5), gmp_ne());
    CHECK(half.k_interval->first == doctest::Approx(-5.0));
    CHECK(half.k_interval->second == doctest::Approx(-1.0));
}

TEST_CASE("certified parameters stabilize the simulated dynamic") {
    const TeamGame g = make_gmp(0.5);
    const SufficientReport r = check_sufficient(g, gmp_ne());
    REQUIRE(r.certificate.has_value());

    DynamicsConfig cfg;
    cfg.method = Method::KPV;
    cfg.eta = r.certificate->eta;
    cfg.k = r.certificate->k;
    cfg.p = r.certificate->p;
    cfg.max_iters = 200000;
    cfg.reference = gmp_ne();
    Eigen::VectorXd z0(8);
    z0 << 0.51, 0.49, 0.495, 0.505, 0.49, 0.51, 0.505, 0.495;
    const Trajectory t = run(g, cfg, z0, 0);
    CHECK(t.dist_refs.back() < 1e-4);
}

TEST_CASE("degenerate operators fail the sufficient condition") {
    const TeamGame zero({2}, {2}, std::vector<double>(4, 0.0));
    const SufficientReport r =
        check_sufficient(zero, Eigen::VectorXd::Constant(4, 0.5));
    CHECK_FALSE(r.invertible);
    CHECK_FALSE(r.condition_holds);
}

TEST_CASE("purely rotational operator: empty right half-plane but singular") {
    Eigen::VectorXd mu(2);
    mu << 1.0, -0.5;
    const TeamWgan g(mu, 0.7);
    Eigen::VectorXd star(7);
    star << 1.0, -0.5, 0.7, 0.0, 0.0, 0.0, 0.0;
    const SufficientReport r = check_sufficient(g, star);
    CHECK(r.e_empty);
    for (const cplx& lam : r.eigenvalues) CHECK(std::abs(lam.real()) < 1e-9);
    // H = [[0, -A], [A', 0]] with A of shape 3x4: odd dimension forces a zero
    // eigenvalue, so the invertibility hypothesis fails.
    CHECK_FALSE(r.invertible);
    CHECK_FALSE(r.condition_holds);
    CHECK_FALSE(r.certificate.has_value());
}

TEST_CASE("the fully mixed GMP equilibrium is not weakly stable") {
    const TeamGame g = make_gmp(0.5);
    MixedProfile ne = uniform_profile(g);
    const WeaklyStableResult r = is_weakly_stable(g, ne);
    CHECK_FALSE(r.weakly_stable);
    REQUIRE(r.witness.has_value());
    const WeaklyStableWitness& w = *r.witness;
    REQUIRE(w.player >= 0);
    REQUIRE(w.player < 4);
    REQUIRE(w.teammate != w.player);
    // Pinned player and teammate belong to the same team.
    CHECK((w.player < 2) == (w.teammate < 2));

    // Replay the witness: pin the player and compare the teammate's payoffs.
    MixedProfile pinned = ne;
    auto& block = w.player < 2 ? pinned.x[w.player] : pinned.y[w.player - 2];
    block.setZero();
    block[w.strategy] = 1.0;
    const Eigen::VectorXd grad =
        g.gradient(pinned.flat()).segment(g.player_offset(w.teammate), 2);
    const double sign = g.is_minimizer(w.teammate) ? -1.0 : 1.0;
    CHECK(sign * grad[w.better] > sign * grad[w.worse] + 1e-8);
}

TEST_CASE("weak stability holds for singleton-team and pure equilibria") {
    // 1v1 matching pennies: no teammates, so the condition is vacuous.
    const TeamGame pennies({2}, {2}, {1.0, -1.0, -1.0, 1.0});
    CHECK(is_weakly_stable(pennies, uniform_profile(pennies)).weakly_stable);

    // Dominant-strategy 1v1 game, pure equilibrium.
    const TeamGame dom({2}, {2}, {0.0, 1.0, 1.0, 2.0});
    MixedProfile pure = uniform_profile(dom);
    pure.x[0] = Eigen::Vector2d(1.0, 0.0);
    pure.y[0] = Eigen::Vector2d(0.0, 1.0);
    CHECK(is_weakly_stable(dom, pure).weakly_stable);

    // Pure split equilibrium of the routing reduction (teammates present).
    CongestionGame cg;
    cg.num_players = 2;
    cg.edge_costs = {{1.0, 2.0}, {1.0, 2.0}};
    cg.strategies = {{{0}, {1}}, {{0}, {1}}};
    const TeamGame routed = congestion_to_team_game(cg);
    MixedProfile split = uniform_profile(routed);
    split.x[0] = Eigen::Vector2d(1.0, 0.0);
    split.x[1] = Eigen::Vector2d(0.0, 1.0);
    CHECK(is_weakly_stable(routed, split).weakly_stable);

    // Not an equilibrium: precondition violation.
    MixedProfile bad = uniform_profile(dom);
    CHECK_THROWS_AS(is_weakly_stable(dom, bad), PreconditionError);
}

TEST_CASE("variational inequality values") {
    Eigen::VectorXd z(8), star(8);
    z << 1.0 / 3, 2.0 / 3, 1.0 / 6, 5.0 / 6, 2.0 / 3, 1.0 / 3, 1.0 / 3, 2.0 / 3;
    star = gmp_ne();
    for (double omega : {0.1, 0.5, 0.9}) {
        const TeamGame g = make_gmp(omega);
        CHECK(std::abs(check_mvi(g, z, star) - (-omega / 9)) < 1e-12);
        CHECK(check_mvi(g, star, star) == 0.0);
    }

    // 1v1 bilinear games are monotone: the inequality never goes negative.
    const TeamGame pennies({2}, {2}, {1.0, -1.0, -1.0, 1.0});
    const Eigen::VectorXd uni = Eigen::VectorXd::Constant(4, 0.5);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(check_mvi(pennies, sample_point(pennies.domain(), rng), uni) >= -1e-12);
}
