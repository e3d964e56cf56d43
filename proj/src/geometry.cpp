#include "teamdyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "teamdyn/errors.hpp"

namespace teamdyn {

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const int d = static_cast<int>(v.size());
    if (d == 0) throw DimensionError("project_simplex: empty vector");
    for (int i = 0; i < d; ++i)
        if (std::isnan(v[i])) throw NumericError("project_simplex: NaN input");

    // Sort descending, ties broken by original index.
    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (v[a] != v[b]) return v[a] > v[b];
        return a < b;
    });

    double cumsum = 0.0;
    double tau = 0.0;
    int rho = 0;
    for (int j = 0; j < d; ++j) {
        cumsum += v[idx[j]];
        const double t = (cumsum - 1.0) / (j + 1);
        if (v[idx[j]] - t > 0.0) {
            rho = j + 1;
            tau = t;
        }
    }
    (void)rho;

    Eigen::VectorXd out(d);
    for (int i = 0; i < d; ++i) out[i] = std::max(v[i] - tau, 0.0);
    return out;
}

Eigen::VectorXd project_profile(const Domain& domain, const Eigen::VectorXd& raw) {
    if (raw.size() != domain.dim())
        throw DimensionError("project_profile: vector length does not match domain");
    if (domain.kind == Domain::Kind::unconstrained) return raw;

    Eigen::VectorXd out(raw.size());
    int off = 0;
    for (int s : domain.shape) {
        out.segment(off, s) = project_simplex(raw.segment(off, s));
        off += s;
    }
    return out;
}

bool contains(const Domain& domain, const Eigen::VectorXd& z, double tol) {
    if (z.size() != domain.dim()) return false;
    if (!z.allFinite()) return false;
    if (domain.kind == Domain::Kind::unconstrained) return true;
    int off = 0;
    for (int s : domain.shape) {
        double sum = 0.0;
        for (int i = 0; i < s; ++i) {
            if (z[off + i] < -tol) return false;
            sum += z[off + i];
        }
        if (std::abs(sum - 1.0) > tol) return false;
        off += s;
    }
    return true;
}

bool is_interior(const Domain& domain, const Eigen::VectorXd& z, double tol) {
    if (domain.kind == Domain::Kind::unconstrained) return z.allFinite();
    return z.allFinite() && z.minCoeff() >= tol;
}

Eigen::VectorXd sample_point(const Domain& domain, std::mt19937_64& rng) {
    Eigen::VectorXd z(domain.dim());
    if (domain.kind == Domain::Kind::unconstrained) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < z.size(); ++i) z[i] = u(rng);
        return z;
    }
    std::exponential_distribution<double> e(1.0);
    int off = 0;
    for (int s : domain.shape) {
        double sum = 0.0;
        for (int i = 0; i < s; ++i) {
            z[off + i] = e(rng);
            sum += z[off + i];
        }
        z.segment(off, s) /= sum;
        off += s;
    }
    return z;
}

} // namespace teamdyn
