#include "teamdyn/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>

#include "teamdyn/errors.hpp"
#include "teamdyn/metrics.hpp"

namespace teamdyn {

Method method_from_string(const std::string& name) {
    if (name == "gda" || name == "GDA") return Method::GDA;
    if (name == "ogda" || name == "OGDA") return Method::OGDA;
    if (name == "eg" || name == "EG") return Method::EG;
    if (name == "omwu" || name == "OMWU") return Method::OMWU;
    if (name == "kpv" || name == "KPV") return Method::KPV;
    throw ConfigError("unknown method: " + name);
}

std::string to_string(Method m) {
    switch (m) {
        case Method::GDA: return "gda";
        case Method::OGDA: return "ogda";
        case Method::EG: return "eg";
        case Method::OMWU: return "omwu";
        case Method::KPV: return "kpv";
    }
    return "?";
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::max_iters: return "max_iters";
        case Termination::stabilized: return "stabilized";
        case Termination::stabilized_boundary: return "stabilized_boundary";
        case Termination::diverged: return "diverged";
    }
    return "?";
}

Eigen::VectorXd signed_field(const Game& game, const Eigen::VectorXd& z) {
    Eigen::VectorXd f = game.gradient(z);
    f.head(game.min_dim()) *= -1.0;
    return f;
}

DynamicsState init_state(const Game& game, Method method, const Eigen::VectorXd& z0) {
    if (z0.size() != game.dim()) throw DimensionError("init_state: wrong coordinate count");
    DynamicsState s;
    s.z = z0;
    if (method == Method::OGDA || method == Method::OMWU)
        s.prev_field = signed_field(game, z0);
    if (method == Method::KPV) s.theta = z0;
    return s;
}

void step_gda(DynamicsState& s, const Game& game, const Domain& domain, double eta) {
    s.z = project_profile(domain, s.z + eta * signed_field(game, s.z));
    ++s.step_count;
}

void step_ogda(DynamicsState& s, const Game& game, const Domain& domain, double eta) {
    const Eigen::VectorXd f = signed_field(game, s.z);
    s.z = project_profile(domain, s.z + 2.0 * eta * f - eta * s.prev_field);
    s.prev_field = f;
    ++s.step_count;
}

void step_eg(DynamicsState& s, const Game& game, const Domain& domain, double eta) {
    const Eigen::VectorXd zh =
        project_profile(domain, s.z + eta * signed_field(game, s.z));
    s.z = project_profile(domain, s.z + eta * signed_field(game, zh));
    ++s.step_count;
}

void step_omwu(DynamicsState& s, const Game& game, const Domain& domain, double eta) {
    if (domain.kind != Domain::Kind::product_of_simplices)
        throw DomainError("step_omwu: requires a product-of-simplices domain");
    if (!(s.z.minCoeff() > 0.0))
        throw DomainError("step_omwu: state must be strictly interior");
    const Eigen::VectorXd f = signed_field(game, s.z);
    const Eigen::VectorXd e = 2.0 * eta * f - eta * s.prev_field;
    int off = 0;
    for (int d : domain.shape) {
        // Subtract the per-player max exponent before exponentiating so the
        // (scale-invariant) normalization cannot overflow.
        const double m = e.segment(off, d).maxCoeff();
        double sum = 0.0;
        for (int i = 0; i < d; ++i) {
            s.z[off + i] *= std::exp(e[off + i] - m);
            sum += s.z[off + i];
        }
        s.z.segment(off, d) /= sum;
        off += d;
    }
    s.prev_field = f;
    ++s.step_count;
}

void step_kpv(DynamicsState& s, const Game& game, const Domain& domain, double eta,
              double k, double p) {
    const Eigen::VectorXd f = signed_field(game, s.z);
    const Eigen::VectorXd drift = s.z - s.theta;
    const Eigen::VectorXd z_new =
        project_profile(domain, s.z + eta * f + eta * k * drift);
    s.theta = project_profile(domain, s.theta + eta * p * drift);
    s.z = z_new;
    ++s.step_count;
}

void step(DynamicsState& s, const Game& game, const DynamicsConfig& config) {
    const Domain& domain = game.domain();
    switch (config.method) {
        case Method::GDA: step_gda(s, game, domain, config.eta); break;
        case Method::OGDA: step_ogda(s, game, domain, config.eta); break;
        case Method::EG: step_eg(s, game, domain, config.eta); break;
        case Method::OMWU: step_omwu(s, game, domain, config.eta); break;
        case Method::KPV: step_kpv(s, game, domain, config.eta, config.k, config.p); break;
    }
}

namespace {

constexpr int kStablePersistence = 100;
constexpr double kBoundaryTol = 1e-6;

} // namespace

Trajectory run(const Game& game, const DynamicsConfig& config,
               const std::optional<Eigen::VectorXd>& initial, std::uint64_t seed) {
    if (config.eta <= 0.0) throw ConfigError("run: eta must be positive");
    if (config.max_iters < 0) throw ConfigError("run: max_iters must be nonnegative");
    if (config.stride <= 0) throw ConfigError("run: stride must be positive");
    if (config.method == Method::KPV && !(config.p > 0.0 && config.k < 0.0))
        std::cerr << "run: kpv outside the recommended regime (want k < 0, p > 0)\n";

    const Domain& domain = game.domain();
    Eigen::VectorXd z0;
    if (initial) {
        if (!contains(domain, *initial))
            throw DomainError("run: initial point is not feasible");
        z0 = *initial;
    } else {
        std::mt19937_64 rng(seed);
        z0 = sample_point(domain, rng);
    }
    if (config.method == Method::OMWU && !(z0.minCoeff() > 0.0))
        throw DomainError("run: OMWU needs a strictly interior start");

    const auto* team_game = dynamic_cast<const TeamGame*>(&game);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    Trajectory traj;
    auto record = [&](long t, const Eigen::VectorXd& z, const Eigen::VectorXd& avg) {
        traj.steps.push_back(t);
        traj.iterates.push_back(z);
        traj.averages.push_back(avg);
        traj.ne_gaps.push_back(team_game ? ne_gap(*team_game, z) : nan);
        traj.dist_refs.push_back(config.reference ? (z - *config.reference).norm() : nan);
    };

    DynamicsState state = init_state(game, config.method, z0);
    Eigen::VectorXd avg = z0;
    record(0, z0, avg);

    int consecutive_small = 0;
    long t = 0;
    traj.termination = Termination::max_iters;
    while (t < config.max_iters) {
        const Eigen::VectorXd z_prev = state.z;
        step(state, game, config);
        ++t;

        if (!state.z.allFinite()) {
            traj.diverged_step = t;
            if (config.strict)
                throw NumericError("run: non-finite iterate at step " + std::to_string(t), t);
            traj.termination = Termination::diverged;
            state.z = z_prev; // keep the last finite point as the final state
            --t;
            break;
        }

        // Running average over post-step iterates z_1..z_t.
        avg += (state.z - avg) / static_cast<double>(t);

        const double displacement = (state.z - z_prev).lpNorm<Eigen::Infinity>();
        consecutive_small = displacement < config.tol ? consecutive_small + 1 : 0;

        if (t % config.stride == 0) record(t, state.z, avg);

        if (consecutive_small >= kStablePersistence) {
            const bool boundary = domain.kind == Domain::Kind::product_of_simplices &&
                                  state.z.minCoeff() < kBoundaryTol;
            traj.termination =
                boundary ? Termination::stabilized_boundary : Termination::stabilized;
            break;
        }
    }
    if (traj.steps.back() != t) record(t, state.z, avg);

    traj.total_steps = t;
    traj.final_z = state.z;
    traj.final_avg = avg;
    return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const int d = static_cast<int>(traj.final_z.size());
    out << "step";
    for (int i = 0; i < d; ++i) out << ",coord_" << i;
    for (int i = 0; i < d; ++i) out << ",avg_" << i;
    out << ",ne_gap,dist_ref\n";

    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << ',' << buf;
    };
    for (size_t r = 0; r < traj.steps.size(); ++r) {
        out << traj.steps[r];
        for (int i = 0; i < d; ++i) put(traj.iterates[r][i]);
        for (int i = 0; i < d; ++i) put(traj.averages[r][i]);
        put(traj.ne_gaps[r]);
        put(traj.dist_refs[r]);
        out << '\n';
    }
}

} // namespace teamdyn
