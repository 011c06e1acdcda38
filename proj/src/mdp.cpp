#include "isomdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace isomdp {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DimensionMismatch(what);
}

} // namespace

MdpModel MdpModel::zeros(int X, int U, int N) {
    MdpModel m;
    m.X = X;
    m.U = U;
    m.N = N;
    m.x0 = 1;
    m.P.assign(static_cast<std::size_t>(N) * U * X * X, 0.0);
    m.c.assign(static_cast<std::size_t>(N) * X * U, 0.0);
    m.cN.assign(static_cast<std::size_t>(X), 0.0);
    return m;
}

void MdpModel::validate() const {
    if (X < 1 || U < 1 || N < 1)
        throw DimensionMismatch("model dimensions must be positive (X=" +
                                std::to_string(X) + ", U=" + std::to_string(U) +
                                ", N=" + std::to_string(N) + ")");
    if (x0 < 1 || x0 > X)
        throw InvalidProbability("initial state x0=" + std::to_string(x0) +
                                 " outside 1.." + std::to_string(X));
    require(P.size() == static_cast<std::size_t>(N) * U * X * X,
            "transition array P has size " + std::to_string(P.size()));
    require(c.size() == static_cast<std::size_t>(N) * X * U,
            "stage cost array has size " + std::to_string(c.size()));
    require(cN.size() == static_cast<std::size_t>(X),
            "terminal cost array has size " + std::to_string(cN.size()));
    for (const auto& cons : constraints)
        require(cons.beta.size() == policy_size(),
                "constraint beta array has size " + std::to_string(cons.beta.size()));

    for (int k = 0; k < N; ++k)
        for (int u = 0; u < U; ++u)
            for (int i = 0; i < X; ++i) {
                double row_sum = 0.0;
                for (int j = 0; j < X; ++j) {
                    const double p = transition(k, u, i, j);
                    if (!(p >= 0.0))
                        throw InvalidProbability(
                            "P[" + std::to_string(k) + "][" + std::to_string(u + 1) +
                            "][" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                            "] = " + std::to_string(p) + " is negative");
                    row_sum += p;
                }
                if (std::abs(row_sum - 1.0) > 1e-12)
                    throw InvalidProbability(
                        "transition row (k=" + std::to_string(k) + ", u=" +
                        std::to_string(u + 1) + ", i=" + std::to_string(i + 1) +
                        ") sums to " + std::to_string(row_sum));
            }

    for (double v : c)
        if (!std::isfinite(v)) throw InvalidProbability("non-finite stage cost");
    for (double v : cN)
        if (!std::isfinite(v)) throw InvalidProbability("non-finite terminal cost");
}

ConditionalPolicy ConditionalPolicy::uniform(int X, int U, int N) {
    ConditionalPolicy th;
    th.X = X;
    th.U = U;
    th.N = N;
    th.theta.assign(static_cast<std::size_t>(N + 1) * X * U, 1.0 / U);
    return th;
}

OccupationMeasure OccupationMeasure::zeros(int X, int U, int N) {
    OccupationMeasure pi;
    pi.X = X;
    pi.U = U;
    pi.N = N;
    pi.pi.assign(static_cast<std::size_t>(N + 1) * X * U, 0.0);
    return pi;
}

StateDistribution StateDistribution::zeros(int X, int N) {
    StateDistribution p;
    p.X = X;
    p.N = N;
    p.p.assign(static_cast<std::size_t>(N + 1) * X, 0.0);
    return p;
}

std::vector<double> policy_expectation(const ConditionalPolicy& theta, int k) {
    std::vector<double> mu(theta.X, 0.0);
    for (int x = 0; x < theta.X; ++x) {
        double s = 0.0;
        for (int u = 0; u < theta.U; ++u) s += (u + 1) * theta(k, x, u);
        mu[x] = s;
    }
    return mu;
}

double expected_action_drop(const ConditionalPolicy& theta, int k, int x) {
    double s = 0.0;
    for (int u = 0; u < theta.U; ++u)
        s += (u + 1) * (theta(k, x, u) - theta(k, x + 1, u));
    return s;
}

bool is_monotone(const ConditionalPolicy& theta, double tol) {
    for (int k = 0; k <= theta.N; ++k)
        for (int x = 0; x + 1 < theta.X; ++x)
            if (expected_action_drop(theta, k, x) > tol) return false;
    return true;
}

std::pair<ConditionalPolicy, StateDistribution>
occupation_to_conditional(const OccupationMeasure& pi,
                          const ConditionalPolicy* previous) {
    const int X = pi.X, U = pi.U, N = pi.N;
    ConditionalPolicy theta = ConditionalPolicy::uniform(X, U, N);
    StateDistribution p = StateDistribution::zeros(X, N);

    for (int k = 0; k <= N; ++k)
        for (int x = 0; x < X; ++x) {
            double mass = 0.0;
            for (int u = 0; u < U; ++u) mass += std::max(pi(k, x, u), 0.0);
            p(k, x) = mass;
            if (mass > kMassEps) {
                for (int u = 0; u < U; ++u)
                    theta(k, x, u) = std::max(pi(k, x, u), 0.0) / mass;
            } else if (previous != nullptr) {
                for (int u = 0; u < U; ++u) theta(k, x, u) = (*previous)(k, x, u);
            }
            // else: keep the uniform row
        }
    return {std::move(theta), std::move(p)};
}

OccupationMeasure conditional_to_occupation(const ConditionalPolicy& theta,
                                            const StateDistribution& p) {
    OccupationMeasure pi = OccupationMeasure::zeros(theta.X, theta.U, theta.N);
    for (int k = 0; k <= theta.N; ++k)
        for (int x = 0; x < theta.X; ++x)
            for (int u = 0; u < theta.U; ++u)
                pi(k, x, u) = theta(k, x, u) * p(k, x);
    return pi;
}

StateDistribution propagate_distribution(const MdpModel& model,
                                         const ConditionalPolicy& theta) {
    const int X = model.X, U = model.U, N = model.N;
    StateDistribution p = StateDistribution::zeros(X, N);
    p(0, model.x0 - 1) = 1.0;
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < X; ++i) {
            const double pi_mass = p(k, i);
            if (pi_mass == 0.0) continue;
            for (int u = 0; u < U; ++u) {
                const double w = pi_mass * theta(k, i, u);
                if (w == 0.0) continue;
                for (int j = 0; j < X; ++j)
                    p(k + 1, j) += w * model.transition(k, u, i, j);
            }
        }
    return p;
}

double evaluate_expected_cost(const MdpModel& model,
                              const ConditionalPolicy& theta) {
    const StateDistribution p = propagate_distribution(model, theta);
    double total = 0.0;
    for (int k = 0; k < model.N; ++k)
        for (int x = 0; x < model.X; ++x) {
            const double px = p(k, x);
            if (px == 0.0) continue;
            for (int u = 0; u < model.U; ++u)
                total += model.stage_cost(k, x, u) * theta(k, x, u) * px;
        }
    for (int x = 0; x < model.X; ++x) total += model.terminal_cost(x) * p(model.N, x);
    return total;
}

DpResult dp_solve(const MdpModel& model) {
    if (!model.constraints.empty())
        throw ConstrainedModelError(
            "dp_solve handles unconstrained models only (" +
            std::to_string(model.num_constraints()) + " constraints present)");

    const int X = model.X, U = model.U, N = model.N;
    std::vector<double> value(model.cN); // V_N
    ConditionalPolicy policy = ConditionalPolicy::uniform(X, U, N);
    std::fill(policy.theta.begin(), policy.theta.end(), 0.0);

    // Terminal action is cost-irrelevant; pin it to action 1 so the returned
    // policy has constant (hence monotone) expected action at k = N.
    for (int x = 0; x < X; ++x) policy(N, x, 0) = 1.0;

    std::vector<double> next(X, 0.0);
    for (int k = N - 1; k >= 0; --k) {
        for (int x = 0; x < X; ++x) {
            double best = std::numeric_limits<double>::infinity();
            int best_u = 0;
            for (int u = 0; u < U; ++u) {
                double q = model.stage_cost(k, x, u);
                for (int j = 0; j < X; ++j)
                    q += model.transition(k, u, x, j) * value[j];
                if (q <= best) { // ties go to the largest action
                    best = q;
                    best_u = u;
                }
            }
            next[x] = best;
            policy(k, x, best_u) = 1.0;
        }
        value = next;
    }
    return {std::move(policy), value[model.x0 - 1]};
}

namespace {

constexpr double kCheckTol = 1e-10;

std::string coords(std::initializer_list<int> idx) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (int v : idx) {
        if (!first) os << ", ";
        os << v;
        first = false;
    }
    os << ")";
    return os.str();
}

} // namespace

AssumptionReport check_monotone_assumptions(const MdpModel& model) {
    const int X = model.X, U = model.U, N = model.N;
    AssumptionReport rep;

    // A1: c(x,u,k) and c_N(x) weakly decreasing in x. Violations are reported
    // at (x, u, k) with x the lower state of the offending pair; u = 0 flags
    // the terminal cost.
    for (int k = 0; k < N && rep.a1.pass; ++k)
        for (int u = 0; u < U && rep.a1.pass; ++u)
            for (int x = 0; x + 1 < X; ++x)
                if (model.stage_cost(k, x + 1, u) >
                    model.stage_cost(k, x, u) + kCheckTol) {
                    rep.a1 = {false,
                              {x + 1, u + 1, k},
                              "c increasing in x at (x, u, k) = " +
                                  coords({x + 1, u + 1, k})};
                    break;
                }
    if (rep.a1.pass)
        for (int x = 0; x + 1 < X; ++x)
            if (model.cN[x + 1] > model.cN[x] + kCheckTol) {
                rep.a1 = {false,
                          {x + 1, 0, N},
                          "terminal cost increasing in x at x = " +
                              std::to_string(x + 1)};
                break;
            }

    // A2: first-order stochastic dominance of row i+1 over row i:
    // sum_{j>=l} P_ij(u,k) <= sum_{j>=l} P_{i+1,j}(u,k). Reported at (i, u, k, l).
    for (int k = 0; k < N && rep.a2.pass; ++k)
        for (int u = 0; u < U && rep.a2.pass; ++u)
            for (int i = 0; i + 1 < X && rep.a2.pass; ++i) {
                double tail_lo = 0.0, tail_hi = 0.0;
                for (int l = X - 1; l >= 0; --l) {
                    tail_lo += model.transition(k, u, i, l);
                    tail_hi += model.transition(k, u, i + 1, l);
                    if (tail_lo > tail_hi + kCheckTol) {
                        rep.a2 = {false,
                                  {i + 1, u + 1, k, l + 1},
                                  "row " + std::to_string(i + 1) +
                                      " not dominated at (i, u, k, l) = " +
                                      coords({i + 1, u + 1, k, l + 1})};
                        break;
                    }
                }
            }

    // A3: c(x,u+1,k) - c(x,u,k) weakly decreasing in x. Reported at (x, u, k).
    for (int k = 0; k < N && rep.a3.pass; ++k)
        for (int u = 0; u + 1 < U && rep.a3.pass; ++u)
            for (int x = 0; x + 1 < X; ++x) {
                const double d_lo =
                    model.stage_cost(k, x, u + 1) - model.stage_cost(k, x, u);
                const double d_hi =
                    model.stage_cost(k, x + 1, u + 1) - model.stage_cost(k, x + 1, u);
                if (d_hi > d_lo + kCheckTol) {
                    rep.a3 = {false,
                              {x + 1, u + 1, k},
                              "cost not submodular at (x, u, k) = " +
                                  coords({x + 1, u + 1, k})};
                    break;
                }
            }

    // A4: sum_{j>=l} (P_ij(u+1,k) - P_ij(u,k)) weakly increasing in i.
    // Reported at (i, u, k, l).
    for (int k = 0; k < N && rep.a4.pass; ++k)
        for (int u = 0; u + 1 < U && rep.a4.pass; ++u)
            for (int i = 0; i + 1 < X && rep.a4.pass; ++i) {
                double diff_lo = 0.0, diff_hi = 0.0;
                for (int l = X - 1; l >= 0; --l) {
                    diff_lo += model.transition(k, u + 1, i, l) -
                               model.transition(k, u, i, l);
                    diff_hi += model.transition(k, u + 1, i + 1, l) -
                               model.transition(k, u, i + 1, l);
                    if (diff_lo > diff_hi + kCheckTol) {
                        rep.a4 = {false,
                                  {i + 1, u + 1, k, l + 1},
                                  "tail sums not supermodular at (i, u, k, l) = " +
                                      coords({i + 1, u + 1, k, l + 1})};
                        break;
                    }
                }
            }

    return rep;
}

} // namespace isomdp
