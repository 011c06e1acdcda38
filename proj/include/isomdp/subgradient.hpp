#pragma once

#include <utility>
#include <vector>

#include "isomdp/mdp.hpp"

namespace isomdp {

/// Relaxed nearly-isotonic-regularized problem in theta, with the state
/// distribution held fixed: minimize the linear expected cost under p plus
/// lambda times the rectified monotonicity penalty, subject to unit row sums
/// (kept by projection) and nonnegativity (handled by the switching rule).
struct RegularizedProblem {
    const MdpModel* model = nullptr; // non-owning; supplies c and c_N
    StateDistribution p_fixed;
    double lambda = 0.0;
    double diameter_bound = 0.0; // R = sqrt(2*X*(N+1))

    static RegularizedProblem make(const MdpModel& model, StateDistribution p,
                                   double lambda);
};

/// lambda * sum_k sum_{x<X} { sum_u u * (theta(x,u,k) - theta(x+1,u,k)) }_+ .
/// Zero exactly iff the policy is monotone at tolerance zero.
double penalty(const ConditionalPolicy& theta, double lambda);

/// Linear expected cost under the fixed state distribution plus the penalty.
double objective(const RegularizedProblem& prob, const ConditionalPolicy& theta);

/// One subgradient of `objective`, shaped like theta ([k][x][u]).
/// The cost part is c(x,u,k) p(x,k) (terminal: c_N(x) p(x,N)); the penalty
/// part weights each active rectifier indicator by the action value u.
/// Indicators use strict "> 0"; at a kink the penalty term contributes zero.
std::vector<double> subgradient_objective(const RegularizedProblem& prob,
                                          const ConditionalPolicy& theta);

/// Relaxed-nonnegativity constraint functional fbar = max(-theta) and one of
/// its subgradients: -1 at the argmax entry (lexicographically first (k,x,u)
/// on ties), zero elsewhere. ||gbar||_2 = 1 always.
std::pair<double, std::vector<double>>
constraint_value_and_subgradient(const ConditionalPolicy& theta);

/// Euclidean projection onto the unit-row-sum hyperplanes: each (x,k) row is
/// shifted by (row sum - 1)/U. Entries may stay negative.
ConditionalPolicy project_affine(const ConditionalPolicy& theta);

/// Switching projected-subgradient update with step R/sqrt(n + 0.5):
/// steps on the objective when fbar(theta) < R/sqrt(n + 0.5), on fbar
/// otherwise; the direction is normalized and the result re-projected.
/// `n` is the run-global step counter, n >= 1.
/// Throws ZeroDirection when the chosen direction is numerically zero.
ConditionalPolicy sg_step(const RegularizedProblem& prob,
                          const ConditionalPolicy& theta, long n);

} // namespace isomdp
