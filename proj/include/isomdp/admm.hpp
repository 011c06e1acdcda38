#pragma once

#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "isomdp/lp.hpp"

namespace isomdp {

/// Cached direct factorization of the constant saddle-point matrix
///   [ rho*I  A' ]
///   [   A    0  ]
/// built once per (lp, rho) and shared read-only across steps (and threads).
class KktFactorization;

/// Scaled-dual ADMM iterates for a standard-form LP. Single-owner mutable;
/// distinct states may step concurrently since the factorization is shared
/// immutably.
struct AdmmState {
    Eigen::VectorXd alpha;
    Eigen::VectorXd z;   // nonnegative after every update
    Eigen::VectorXd eta; // scaled dual
    double rho = 1.0;
    std::shared_ptr<const KktFactorization> kkt;
};

/// Zero-initializes the iterates and factors the KKT system once.
/// Throws SingularSystem when the factorization fails (rank-deficient A).
AdmmState admm_setup(const StandardFormLp& lp, double rho);

/// One update: alpha solves the equality-constrained quadratic subproblem via
/// the cached factorization (with one step of iterative refinement when the
/// linear-solve residual exceeds 1e-10), then z = {alpha + eta}_+ and
/// eta += alpha - z.
void admm_step(AdmmState& state, const StandardFormLp& lp);

/// ||alpha - z||_inf, the LP primal residual.
double primal_residual(const AdmmState& state);

/// ||A alpha - b||_inf; alpha satisfies the equality block after every step
/// up to factorization accuracy.
double equality_residual(const AdmmState& state, const StandardFormLp& lp);

} // namespace isomdp
