#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "isomdp/mdp.hpp"

namespace isomdp {

/// min q'a s.t. Aa = b, a >= 0 over the vectorized occupation measure with
/// one slack column per average-type constraint.
///
/// Row layout: X initial-distribution rows, then X*N flow-conservation rows
/// (time-major, k = 1..N), then L constraint rows. Column layout follows
/// flat_index for the decision block, slacks appended last.
struct StandardFormLp {
    Eigen::VectorXd q;
    Eigen::SparseMatrix<double> A; // M x D, compressed
    Eigen::VectorXd b;
    int n_decision = 0; // X*U*(N+1)
    int n_slack = 0;    // L

    int X = 0, U = 0, N = 0; // source dimensions, kept for devectorization

    int rows() const { return static_cast<int>(A.rows()); }
    int cols() const { return n_decision + n_slack; }
};

/// Position of pi(x, u, k) in the vectorized decision variable:
/// k*X*U + (x-1)*U + (u-1). Arguments x and u are 1-based, k runs 0..N.
/// Throws IndexOutOfRange.
int flat_index(int x, int u, int k, int X, int U, int N);

/// Assembles the standard-form LP for a validated model.
StandardFormLp build_lp(const MdpModel& model);

/// Writes pi back into a vector laid out by flat_index (no slack entries).
Eigen::VectorXd vectorize(const OccupationMeasure& pi);

/// Inverse of vectorize; slack entries of alpha (if any) are dropped.
/// Requires length(alpha) >= X*U*(N+1).
OccupationMeasure devectorize(const Eigen::VectorXd& alpha, const MdpModel& model);

} // namespace isomdp
