#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isomdp/admm.hpp"
#include "isomdp/mdp.hpp"
#include "isomdp/subgradient.hpp"

namespace isomdp {

enum class SolveMode { plain_admm, regularized };

enum class Phase { admm, sg };

enum class SolveStatus {
    converged,        // residual (and cost gap, when a reference is known) below threshold
    budget_exhausted, // max_iter reached first
};

std::string to_string(SolveMode mode);
std::string to_string(Phase phase);
std::string to_string(SolveStatus status);

struct SolverConfig {
    double rho = 5.0;
    std::optional<double> lambda; // empty = auto (default_lambda)
    int i_admm = 10;
    int i_sg = 5;
    long max_iter = 250;
    double eps_cost = 0.01; // relative cost-gap threshold
    double eps_res = 1e-4;  // primal-residual threshold
    long boost_iter = 0;    // > 0: no subgradient steps past this iteration
    SolveMode mode = SolveMode::regularized;
    std::optional<double> reference_cost; // c* for gap traces and stopping

    /// Disables early stopping so the whole budget is traced (used by sweeps).
    bool run_full_budget = false;

    void validate() const; // throws ConfigError
};

struct IterationRecord {
    long iter = 0; // global index; ADMM and subgradient steps share one axis
    Phase phase = Phase::admm;
    double cost = 0.0;                  // exact expected cost of the current policy
    std::optional<double> cost_gap;     // |c - c*| when the reference is known
    std::optional<double> primal_res;   // only at ADMM iterates
};

struct SolveResult {
    ConditionalPolicy policy; // conversion of the final z-iterate
    std::vector<IterationRecord> trace;
    SolveStatus status = SolveStatus::budget_exhausted;
    double final_cost = 0.0;
    double lambda_used = 0.0;
    OccupationMeasure final_occupation; // devectorized final z, for feasibility checks
};

/// Regularization weight balancing the penalty against the cost scale:
/// (1/(X*U)) * sum_x sum_u ( sum_{k<N} c(x,u,k) + c_N(x) ).
double default_lambda(const MdpModel& model);

/// Runs the alternating scheme: blocks of i_admm ADMM steps on the LP, then
/// (in regularized mode) conversion of the z-iterate to (theta, p) and i_sg
/// projected subgradient steps on the relaxed problem, then re-entry with the
/// repaired theta (alpha = theta*p rebuilt, z clamped, eta retained). Stops at
/// an ADMM iterate once the primal residual, and the relative cost gap when a
/// reference is known, are below their thresholds; otherwise at max_iter.
SolveResult solve(const MdpModel& model, const SolverConfig& config);

struct SweepRow {
    double rho = 0.0;
    SolveMode mode = SolveMode::plain_admm;
    /// Iteration after which the criterion holds at every later recorded
    /// iterate of the relevant kind; empty when the budget is exceeded.
    std::optional<long> iters_res;
    std::optional<long> iters_cost;
};

/// Full-budget runs for each rho and both modes, reporting when each
/// criterion is definitively reached. A missing reference cost is computed
/// once: dp_solve when the model is unconstrained, otherwise a plain-ADMM
/// run with ten times the budget.
std::vector<SweepRow> rho_sweep(const MdpModel& model,
                                const std::vector<double>& rhos,
                                const SolverConfig& config);

/// Earliest ADMM iterate from which the primal residual stays below eps_res
/// at every later ADMM record; empty when that never happens.
std::optional<long> definitive_reach_residual(
    const std::vector<IterationRecord>& trace, double eps_res);

/// Earliest recorded iterate (either phase) from which the relative cost gap
/// to `reference` stays below eps_cost; empty when that never happens.
std::optional<long> definitive_reach_cost(
    const std::vector<IterationRecord>& trace, double reference, double eps_cost);

} // namespace isomdp
