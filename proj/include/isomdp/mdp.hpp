#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isomdp/errors.hpp"

namespace isomdp {

/// State mass below this is treated as zero when conditioning an occupation
/// measure on the state (the division in theta = pi / p is skipped).
inline constexpr double kMassEps = 1e-12;

struct Constraint {
    /// beta(k, x, u) for k = 0..N, flattened [k][x][u].
    std::vector<double> beta;
    double gamma = 0.0;
};

/// Finite-horizon MDP with states 1..X, actions 1..U and times k = 0..N.
/// Stage costs and transitions are defined for k = 0..N-1; the terminal cost
/// is action-independent. Storage is flat and 0-based; only `x0` keeps the
/// paper's 1-based state numbering.
struct MdpModel {
    int X = 0;
    int U = 0;
    int N = 0;
    int x0 = 1; // 1-based initial state

    std::vector<double> P;  // [k][u][i][j], size N*U*X*X
    std::vector<double> c;  // [k][x][u],   size N*X*U
    std::vector<double> cN; // [x],         size X
    std::vector<Constraint> constraints;

    double transition(int k, int u, int i, int j) const {
        return P[((static_cast<std::size_t>(k) * U + u) * X + i) * X + j];
    }
    double& transition(int k, int u, int i, int j) {
        return P[((static_cast<std::size_t>(k) * U + u) * X + i) * X + j];
    }
    double stage_cost(int k, int x, int u) const {
        return c[(static_cast<std::size_t>(k) * X + x) * U + u];
    }
    double& stage_cost(int k, int x, int u) {
        return c[(static_cast<std::size_t>(k) * X + x) * U + u];
    }
    double terminal_cost(int x) const { return cN[x]; }

    int num_constraints() const { return static_cast<int>(constraints.size()); }

    /// Size of a [k][x][u] array spanning k = 0..N.
    std::size_t policy_size() const {
        return static_cast<std::size_t>(N + 1) * X * U;
    }

    /// Allocates zeroed arrays of the right sizes for (X, U, N).
    static MdpModel zeros(int X, int U, int N);

    /// Checks dimensions, row-stochasticity (1e-12) and the x0 range.
    /// Throws DimensionMismatch or InvalidProbability.
    void validate() const;
};

/// theta(x, u, k) = Pr{u_k = u | x_k = x}, flattened [k][x][u] for k = 0..N.
/// Rows sum to one; entries may be transiently negative inside the
/// subgradient stage (the affine projection only restores row sums).
struct ConditionalPolicy {
    int X = 0;
    int U = 0;
    int N = 0;
    std::vector<double> theta;

    double operator()(int k, int x, int u) const {
        return theta[(static_cast<std::size_t>(k) * X + x) * U + u];
    }
    double& operator()(int k, int x, int u) {
        return theta[(static_cast<std::size_t>(k) * X + x) * U + u];
    }

    static ConditionalPolicy uniform(int X, int U, int N);
};

/// pi(x, u, k) = Pr{x_k = x, u_k = u}, flattened [k][x][u] for k = 0..N.
struct OccupationMeasure {
    int X = 0;
    int U = 0;
    int N = 0;
    std::vector<double> pi;

    double operator()(int k, int x, int u) const {
        return pi[(static_cast<std::size_t>(k) * X + x) * U + u];
    }
    double& operator()(int k, int x, int u) {
        return pi[(static_cast<std::size_t>(k) * X + x) * U + u];
    }

    static OccupationMeasure zeros(int X, int U, int N);
};

/// p(x, k) = Pr{x_k = x}, flattened [k][x] for k = 0..N.
struct StateDistribution {
    int X = 0;
    int N = 0;
    std::vector<double> p;

    double operator()(int k, int x) const {
        return p[static_cast<std::size_t>(k) * X + x];
    }
    double& operator()(int k, int x) {
        return p[static_cast<std::size_t>(k) * X + x];
    }

    static StateDistribution zeros(int X, int N);
};

/// Expected action mu~_k(x) = sum_u u * theta(x,u,k) for x = 1..X,
/// with actions valued 1..U. Returned vector is indexed by x-1.
std::vector<double> policy_expectation(const ConditionalPolicy& theta, int k);

/// mu~_k(x) - mu~_k(x+1), evaluated as sum_u u * (theta(x,u,k) - theta(x+1,u,k)).
/// This exact expression is shared by is_monotone and the isotonic penalty so
/// that "penalty == 0" and "monotone at tol 0" agree bit-for-bit.
/// `x` is 0-based and must satisfy x < X-1.
double expected_action_drop(const ConditionalPolicy& theta, int k, int x);

/// True iff mu~_k(x+1) >= mu~_k(x) - tol for every adjacent pair and time.
bool is_monotone(const ConditionalPolicy& theta, double tol);

/// Marginalizes pi into (theta, p). Entries of pi are clamped to zero first.
/// For states with p(x,k) <= kMassEps the theta row falls back to the
/// matching row of `previous` when given, else to the uniform row.
std::pair<ConditionalPolicy, StateDistribution>
occupation_to_conditional(const OccupationMeasure& pi,
                          const ConditionalPolicy* previous = nullptr);

/// pi(x,u,k) = theta(x,u,k) * p(x,k).
OccupationMeasure conditional_to_occupation(const ConditionalPolicy& theta,
                                            const StateDistribution& p);

/// Forward Chapman-Kolmogorov pass: p(.,0) = indicator of x0 and
/// p(j,k+1) = sum_i sum_u P_ij(u,k) theta(i,u,k) p(i,k).
StateDistribution propagate_distribution(const MdpModel& model,
                                         const ConditionalPolicy& theta);

/// Expected cumulative cost from x0 under theta:
/// J = sum_k sum_x sum_u c(x,u,k) theta(x,u,k) p(x,k) + sum_x c_N(x) p(x,N).
double evaluate_expected_cost(const MdpModel& model,
                              const ConditionalPolicy& theta);

struct DpResult {
    ConditionalPolicy policy; // deterministic; terminal rows pinned to action 1
    double optimal_cost = 0.0;
};

/// Backward-induction oracle for the unconstrained problem. Per-state ties are
/// broken toward the largest minimizing action, which keeps the returned
/// policy monotone whenever the model satisfies (A1)-(A4).
/// Throws ConstrainedModelError if the model carries constraints.
DpResult dp_solve(const MdpModel& model);

struct AssumptionCheck {
    bool pass = true;
    /// Coordinates of the first violation, 1-based, empty when passing.
    /// Meaning per condition is documented in `detail`.
    std::vector<int> first_violation;
    std::string detail;
};

/// Pass/fail per structural condition, with the first violating index tuple.
struct AssumptionReport {
    AssumptionCheck a1; // costs decreasing in x
    AssumptionCheck a2; // transition rows increasing in first-order dominance
    AssumptionCheck a3; // costs submodular in (x, u)
    AssumptionCheck a4; // transitions tail-sum supermodular in (i, u)

    bool all_pass() const { return a1.pass && a2.pass && a3.pass && a4.pass; }
};

/// Checks (A1)-(A4) with tolerance 1e-10.
AssumptionReport check_monotone_assumptions(const MdpModel& model);

} // namespace isomdp
