#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "teamdyn/game.hpp"

namespace teamdyn {

enum class Method { GDA, OGDA, EG, OMWU, KPV };

Method method_from_string(const std::string& name);
std::string to_string(Method m);

struct DynamicsConfig {
    Method method = Method::GDA;
    double eta = 0.1;
    double k = 0.0; // KPV feedback gain (K = k*I)
    double p = 0.0; // KPV estimate tracking rate (P = p*I)
    long max_iters = 100000;
    double tol = 1e-10;   // per-step displacement threshold for stabilization
    long stride = 100;    // sampling stride for the trajectory
    std::optional<Eigen::VectorXd> reference; // for the distance metric
    bool strict = true;   // throw on NaN/Inf iterates instead of recording
};

struct DynamicsState {
    Eigen::VectorXd z;          // current point (x blocks then y blocks)
    Eigen::VectorXd prev_field; // previous signed gradient field (OGDA, OMWU)
    Eigen::VectorXd theta;      // fixed-point estimate (KPV)
    long step_count = 0;
};

// The simultaneous-play vector field: descent for the first min_dim
// coordinates (team A), ascent for the rest.
Eigen::VectorXd signed_field(const Game& game, const Eigen::VectorXd& z);

// Prepare per-method auxiliary state at z0 (previous field bootstrapped to
// the current field; theta = z0).
DynamicsState init_state(const Game& game, Method method, const Eigen::VectorXd& z0);

void step_gda(DynamicsState& s, const Game& game, const Domain& domain, double eta);
void step_ogda(DynamicsState& s, const Game& game, const Domain& domain, double eta);
void step_eg(DynamicsState& s, const Game& game, const Domain& domain, double eta);
void step_omwu(DynamicsState& s, const Game& game, const Domain& domain, double eta);
void step_kpv(DynamicsState& s, const Game& game, const Domain& domain, double eta,
              double k, double p);

// Dispatch on config.method.
void step(DynamicsState& s, const Game& game, const DynamicsConfig& config);

enum class Termination { max_iters, stabilized, stabilized_boundary, diverged };
std::string to_string(Termination t);

struct Trajectory {
    std::vector<long> steps;                 // sampled step indices
    std::vector<Eigen::VectorXd> iterates;   // z at sampled steps
    std::vector<Eigen::VectorXd> averages;   // running average at sampled steps
    std::vector<double> ne_gaps;             // NaN for games without one
    std::vector<double> dist_refs;           // NaN without a reference
    Termination termination = Termination::max_iters;
    long total_steps = 0;
    long diverged_step = -1;
    Eigen::VectorXd final_z;
    Eigen::VectorXd final_avg;
};

// Iterate the configured method from `initial` (or a seeded uniform draw
// from the domain). Stops at max_iters, after 100 consecutive steps with
// displacement below config.tol ("stabilized", or "stabilized_boundary"
// when the stable point touches a simplex face), or on NaN/Inf iterates
// (throws NumericError when config.strict, records otherwise).
Trajectory run(const Game& game, const DynamicsConfig& config,
               const std::optional<Eigen::VectorXd>& initial, std::uint64_t seed);

// CSV schema: step, coord_0..coord_{d-1}, avg_0..avg_{d-1}, ne_gap, dist_ref.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

} // namespace teamdyn
