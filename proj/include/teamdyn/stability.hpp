#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "teamdyn/dynamics.hpp"
#include "teamdyn/game.hpp"

namespace teamdyn {

// All eigenvalues (with algebraic multiplicity) of a real square matrix of
// dimension <= 64. Throws DimensionError (non-square), CapabilityError
// (too large), NumericError (solver failure).
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& M);

double spectral_radius(const Eigen::MatrixXd& M);

// Reduced-coordinate adapters. A block with d coordinates on a simplex has
// d-1 free coordinates (the last one is eliminated); unconstrained blocks
// keep all coordinates.
//   R: full -> reduced (drop the last coordinate of each simplex block)
//   E: reduced-tangent -> full-tangent (last coordinate = minus the block sum)
//   expand_point: reduced point -> full point (last coordinate = 1 - sum)
Eigen::MatrixXd reduce_matrix(const Domain& domain);
Eigen::MatrixXd expand_matrix(const Domain& domain);
Eigen::VectorXd reduce_point(const Domain& domain, const Eigen::VectorXd& z);
Eigen::VectorXd expand_point(const Domain& domain, const Eigen::VectorXd& u);
int reduced_dim(const Domain& domain);

// Orthogonal projector onto the tangent space of the domain at an interior
// point (blockwise I - (1/d) 11'; identity for unconstrained blocks). This is
// the local derivative of the Euclidean projection.
Eigen::MatrixXd tangent_projector(const Domain& domain);

// Jacobian of the signed field F in full coordinates.
Eigen::MatrixXd field_jacobian(const Game& game, const Eigen::VectorXd& z);

// Reduced-coordinate operator [[-Uxx, -Uxy], [Uyx, Uyy]] at an interior
// point, i.e. the Jacobian of the reduced signed field. Its spectrum drives
// every stability verdict. Throws DomainError at boundary points.
Eigen::MatrixXd game_operator(const Game& game, const Eigen::VectorXd& z);

// Reduced Jacobian of the map z -> tangent-projected field, R*T*F'*E. This
// is the operator the projected discrete dynamics actually linearize around
// (equals game_operator for unconstrained domains).
Eigen::MatrixXd effective_operator(const Game& game, const Eigen::VectorXd& z);

// Jacobian of the actual step map in reduced coordinates at an interior
// point. OGDA/OMWU/KPV return companion/block forms of twice the reduced
// dimension (previous iterate, respectively estimate, appended).
Eigen::MatrixXd dynamics_jacobian(Method method, const Game& game,
                                  const Eigen::VectorXd& z, double eta,
                                  double k = 0.0, double p = 0.0);

// Closed-form linearization of the *unprojected* update built from a
// supplied reduced operator H: GDA I + eta*H; OGDA companion
// [[I+2\eta H, -\eta H],[I, 0]]; EG I + eta*H + eta^2*H^2; KPV
// I + eta*[[kI+H, -kI],[pI, -pI]]. Used as an algebraic oracle; OMWU has no
// such form here.
Eigen::MatrixXd linearization(Method method, const Eigen::MatrixXd& H, double eta,
                              double k = 0.0, double p = 0.0);

struct SufficientReport {
    Eigen::MatrixXd H;                             // reduced game operator
    std::vector<std::complex<double>> eigenvalues; // spectrum of H
    std::vector<std::complex<double>> unstable;    // E: eigenvalues with Re > 0
    double alpha = 0.0; // max Re over E
    double beta = 0.0;  // min |rho|^2 / Re(rho) over E
    bool invertible = false;
    bool e_empty = false;
    bool condition_holds = false;
    std::optional<std::pair<double, double>> k_interval; // (-beta, -alpha)

    struct Certificate {
        double eta, k, p;
        double rho; // spectral radius of the certified KPV Jacobian
    };
    std::optional<Certificate> certificate;
};

// Stabilizability test for the anchored-feedback dynamic at a candidate
// interior equilibrium: computes H, its right-half-plane eigenvalues E,
// alpha, beta, the admissible gain interval (-beta, -alpha), and searches a
// logarithmic (eta, p) grid for a pair whose actual KPV step Jacobian has
// spectral radius < 1 at the midpoint gain of the effective operator's
// interval.
SufficientReport check_sufficient(const Game& game, const Eigen::VectorXd& z);

struct WeaklyStableWitness {
    int player;    // pinned player
    int strategy;  // pure strategy it is pinned to
    int teammate;  // teammate whose indifference breaks
    int better;    // teammate strategy with the higher payoff
    int worse;     // teammate strategy with the lower payoff
};

struct WeaklyStableResult {
    bool weakly_stable = true;
    std::optional<WeaklyStableWitness> witness;
};

// A mixed equilibrium is weakly stable when pinning any randomizing player
// to any supported pure strategy leaves every teammate indifferent across
// their own support. Throws PreconditionError unless ne_gap(ne) < 1e-8.
WeaklyStableResult is_weakly_stable(const TeamGame& game, const MixedProfile& ne);

// <F(z), z - z_star> in full coordinates, where F is the min-max
// variational-inequality operator (grad_x U, -grad_y U); a negative value
// violates the Minty variational inequality at z.
double check_mvi(const Game& game, const Eigen::VectorXd& z,
                 const Eigen::VectorXd& z_star);

} // namespace teamdyn
