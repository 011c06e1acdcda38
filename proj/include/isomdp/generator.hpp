#pragma once

#include <cstdint>

#include "isomdp/mdp.hpp"

namespace isomdp {

/// Seeded sampling spec for structured random instances. The stream is
/// mt19937_64 with uniforms mapped via (word >> 11) * 2^-53, so identical
/// specs produce bit-identical models on every platform.
struct GeneratorSpec {
    int X = 1;
    int U = 1;
    int N = 1;
    std::uint64_t seed = 0;
    double cost_scale = 1.0;
};

/// Samples an MDP guaranteed to satisfy (A1)-(A4).
///
/// Costs: c(x,u,k) = a_k(x) + m_k(u) * s_k(x) with a_k, s_k sorted decreasing
/// and m_k sorted increasing, all nonnegative; terminal cost sorted
/// decreasing. Transitions: tail sums T(i,u,l) = (1-w) B_k(l) + w C_k(l)
/// where B_k, C_k are the pointwise min/max tail functions of two random
/// distributions (so C_k dominates B_k) and w = phi_k(i) * psi_k(u) with
/// phi, psi sorted increasing in [0,1] — which makes T increasing in i and
/// supermodular in (i,u) by construction.
///
/// Draw order per model: for each k: a_k (X), s_k (X), m_k (U); then c_N (X);
/// then for each k: two X-draw distributions for B/C, phi_k (X), psi_k (U).
///
/// The checker verifies the result; failures resample (up to 1000 attempts)
/// before GenerationFailed.
MdpModel random_monotone_mdp(const GeneratorSpec& spec);

/// Two-state repair problem: states {1 broken, 2 working}, actions
/// {1 replace, 2 continue}. Replacing always yields a working machine and
/// costs `replace_cost`; continuing costs `broken_cost` while broken and a
/// working machine breaks with probability `theta_break`. Terminal cost is
/// zero and the chain starts working. Satisfies (A1)-(A4) for any valid
/// parameters. Throws InvalidProbability.
MdpModel machine_replacement_model(double theta_break, double replace_cost,
                                   double broken_cost, int N);

/// Average-type constraint with nonnegative sampled beta and
/// gamma = tightness x (expected beta-expenditure of the unconstrained DP
/// policy), so tightness >= 1 keeps the instance feasible. Requires an
/// unconstrained model.
Constraint expenditure_constraint(const MdpModel& model, std::uint64_t seed,
                                  double tightness);

} // namespace isomdp
