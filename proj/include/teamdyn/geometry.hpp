#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace teamdyn {

// Feasible set of a game: either a product of probability simplices (one
// block per player) or an unconstrained Euclidean space with the same block
// structure.
struct Domain {
    enum class Kind { product_of_simplices, unconstrained };

    Kind kind = Kind::product_of_simplices;
    std::vector<int> shape; // coordinate count per block (player)

    int dim() const {
        int d = 0;
        for (int s : shape) d += s;
        return d;
    }
    int blocks() const { return static_cast<int>(shape.size()); }
    int offset(int block) const {
        int o = 0;
        for (int b = 0; b < block; ++b) o += shape[b];
        return o;
    }
};

// Euclidean projection onto the standard probability simplex by
// sort-and-threshold. Exact in finitely many operations; sort ties are broken
// by original index for determinism. Throws NumericError on NaN input.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

// Blockwise projection onto the domain (identity for unconstrained domains).
// Throws DimensionError if the vector length does not match the domain.
Eigen::VectorXd project_profile(const Domain& domain, const Eigen::VectorXd& raw);

// Membership test with tolerance (sum within tol of 1, coordinates >= -tol).
bool contains(const Domain& domain, const Eigen::VectorXd& z, double tol = 1e-9);

// All coordinates at least `tol` away from zero (always true for
// unconstrained domains).
bool is_interior(const Domain& domain, const Eigen::VectorXd& z, double tol = 1e-6);

// Uniform sample: Dirichlet(1,...,1) per simplex block, or coordinate-wise
// uniform on [-1, 1] for unconstrained domains.
Eigen::VectorXd sample_point(const Domain& domain, std::mt19937_64& rng);

} // namespace teamdyn
