#include "isomdp/subgradient.hpp"

#include <cmath>
#include <string>

namespace isomdp {

RegularizedProblem RegularizedProblem::make(const MdpModel& model,
                                            StateDistribution p, double lambda) {
    if (lambda < 0.0)
        throw ConfigError("lambda must be nonnegative, got " + std::to_string(lambda));
    RegularizedProblem prob;
    prob.model = &model;
    prob.p_fixed = std::move(p);
    prob.lambda = lambda;
    prob.diameter_bound = std::sqrt(2.0 * model.X * (model.N + 1));
    return prob;
}

double penalty(const ConditionalPolicy& theta, double lambda) {
    double total = 0.0;
    for (int k = 0; k <= theta.N; ++k)
        for (int x = 0; x + 1 < theta.X; ++x) {
            const double drop = expected_action_drop(theta, k, x);
            if (drop > 0.0) total += drop;
        }
    return lambda * total;
}

double objective(const RegularizedProblem& prob, const ConditionalPolicy& theta) {
    const MdpModel& m = *prob.model;
    const StateDistribution& p = prob.p_fixed;
    double cost = 0.0;
    for (int k = 0; k < m.N; ++k)
        for (int x = 0; x < m.X; ++x) {
            const double px = p(k, x);
            for (int u = 0; u < m.U; ++u)
                cost += m.stage_cost(k, x, u) * theta(k, x, u) * px;
        }
    for (int x = 0; x < m.X; ++x) {
        const double px = p(m.N, x);
        for (int u = 0; u < m.U; ++u)
            cost += m.terminal_cost(x) * theta(m.N, x, u) * px;
    }
    return cost + penalty(theta, prob.lambda);
}

std::vector<double> subgradient_objective(const RegularizedProblem& prob,
                                          const ConditionalPolicy& theta) {
    const MdpModel& m = *prob.model;
    const StateDistribution& p = prob.p_fixed;
    const int X = m.X, U = m.U, N = m.N;
    std::vector<double> g(theta.theta.size(), 0.0);

    auto at = [&](int k, int x, int u) -> double& {
        return g[(static_cast<std::size_t>(k) * X + x) * U + u];
    };

    for (int k = 0; k <= N; ++k)
        for (int x = 0; x < X; ++x) {
            const double px = p(k, x);
            for (int u = 0; u < U; ++u)
                at(k, x, u) = (k < N ? m.stage_cost(k, x, u) : m.terminal_cost(x)) * px;
        }

    if (prob.lambda > 0.0)
        for (int k = 0; k <= N; ++k)
            for (int x = 0; x + 1 < X; ++x)
                if (expected_action_drop(theta, k, x) > 0.0)
                    for (int u = 0; u < U; ++u) {
                        const double w = prob.lambda * (u + 1);
                        at(k, x, u) += w;
                        at(k, x + 1, u) -= w;
                    }
    return g;
}

std::pair<double, std::vector<double>>
constraint_value_and_subgradient(const ConditionalPolicy& theta) {
    std::vector<double> gbar(theta.theta.size(), 0.0);
    std::size_t arg = 0;
    double best = -theta.theta[0];
    for (std::size_t i = 1; i < theta.theta.size(); ++i) {
        const double v = -theta.theta[i];
        if (v > best) { // strict: lexicographically first (k, x, u) wins ties
            best = v;
            arg = i;
        }
    }
    gbar[arg] = -1.0;
    return {best, std::move(gbar)};
}

ConditionalPolicy project_affine(const ConditionalPolicy& theta) {
    ConditionalPolicy out = theta;
    for (int k = 0; k <= out.N; ++k)
        for (int x = 0; x < out.X; ++x) {
            double sum = 0.0;
            for (int u = 0; u < out.U; ++u) sum += out(k, x, u);
            const double shift = (sum - 1.0) / out.U;
            for (int u = 0; u < out.U; ++u) out(k, x, u) -= shift;
        }
    return out;
}

ConditionalPolicy sg_step(const RegularizedProblem& prob,
                          const ConditionalPolicy& theta, long n) {
    const double step = prob.diameter_bound / std::sqrt(static_cast<double>(n) + 0.5);

    auto [fbar, gbar] = constraint_value_and_subgradient(theta);
    // ||gbar||_2 = 1 analytically (single unit entry).
    std::vector<double> dir;
    if (fbar < step)
        dir = subgradient_objective(prob, theta);
    else
        dir = std::move(gbar);

    double norm_sq = 0.0;
    for (double v : dir) norm_sq += v * v;
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-15)
        throw ZeroDirection("subgradient direction is numerically zero");

    ConditionalPolicy next = theta;
    const double scale = step / norm;
    for (std::size_t i = 0; i < next.theta.size(); ++i)
        next.theta[i] -= scale * dir[i];
    return project_affine(next);
}

} // namespace isomdp
