// Test-only reference implementations, kept independent of the library code
// paths they are used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "isomdp/mdp.hpp"

namespace oracle {

using isomdp::ConditionalPolicy;
using isomdp::MdpModel;

inline double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random policy with strictly positive rows.
inline ConditionalPolicy random_policy(int X, int U, int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ConditionalPolicy th = ConditionalPolicy::uniform(X, U, N);
    for (int k = 0; k <= N; ++k)
        for (int x = 0; x < X; ++x) {
            double sum = 0.0;
            for (int u = 0; u < U; ++u) {
                const double v = 0.05 + canonical(rng);
                th(k, x, u) = v;
                sum += v;
            }
            for (int u = 0; u < U; ++u) th(k, x, u) /= sum;
        }
    return th;
}

struct PathExpectation {
    double cost = 0.0;
    std::vector<double> expenditures; // one per model constraint
};

/// Expected cumulative cost (and per-constraint beta expenditure) under theta
/// by exhaustive enumeration of every trajectory (x_0, u_0, ..., x_N, u_N).
inline PathExpectation enumerate_paths(const MdpModel& m,
                                       const ConditionalPolicy& theta) {
    PathExpectation out;
    out.expenditures.assign(m.constraints.size(), 0.0);

    const auto beta_at = [&](int l, int k, int x, int u) {
        return m.constraints[l]
            .beta[(static_cast<std::size_t>(k) * m.X + x) * m.U + u];
    };

    std::function<void(int, int, double, double, std::vector<double>)> rec =
        [&](int k, int x, double prob, double cost_acc, std::vector<double> spend) {
            if (k == m.N) {
                for (int u = 0; u < m.U; ++u) {
                    const double w = prob * theta(m.N, x, u);
                    if (w == 0.0) continue;
                    out.cost += w * (cost_acc + m.cN[x]);
                    for (std::size_t l = 0; l < spend.size(); ++l)
                        out.expenditures[l] +=
                            w * (spend[l] + beta_at(static_cast<int>(l), m.N, x, u));
                }
                return;
            }
            for (int u = 0; u < m.U; ++u) {
                const double pu = theta(k, x, u);
                if (pu == 0.0) continue;
                const double cost2 = cost_acc + m.stage_cost(k, x, u);
                std::vector<double> spend2 = spend;
                for (std::size_t l = 0; l < spend2.size(); ++l)
                    spend2[l] += beta_at(static_cast<int>(l), k, x, u);
                for (int j = 0; j < m.X; ++j) {
                    const double pj = m.transition(k, u, x, j);
                    if (pj == 0.0) continue;
                    rec(k + 1, j, prob * pu * pj, cost2, spend2);
                }
            }
        };
    rec(0, m.x0 - 1, 1.0, 0.0, std::vector<double>(m.constraints.size(), 0.0));
    return out;
}

/// Calls `f` with every deterministic non-stationary policy, including the
/// terminal-time action choice: U^(X*(N+1)) policies in total.
template <typename F>
void for_each_deterministic_policy(int X, int U, int N, F&& f) {
    const int slots = X * (N + 1);
    std::vector<int> choice(slots, 0);
    ConditionalPolicy th = ConditionalPolicy::uniform(X, U, N);
    while (true) {
        std::fill(th.theta.begin(), th.theta.end(), 0.0);
        for (int k = 0; k <= N; ++k)
            for (int x = 0; x < X; ++x) th(k, x, choice[k * X + x]) = 1.0;
        f(th);

        int pos = 0;
        while (pos < slots && ++choice[pos] == U) choice[pos++] = 0;
        if (pos == slots) break;
    }
}

struct BestPolicy {
    double cost = std::numeric_limits<double>::infinity();
    bool found = false;
    ConditionalPolicy policy;
};

/// Best deterministic policy by brute force; with `respect_constraints`, only
/// policies whose enumerated expenditures stay within every gamma (+ tol).
inline BestPolicy best_deterministic_policy(const MdpModel& m,
                                            bool respect_constraints,
                                            double feas_tol = 1e-9) {
    BestPolicy best;
    for_each_deterministic_policy(m.X, m.U, m.N, [&](const ConditionalPolicy& th) {
        const PathExpectation pe = enumerate_paths(m, th);
        if (respect_constraints)
            for (std::size_t l = 0; l < pe.expenditures.size(); ++l)
                if (pe.expenditures[l] > m.constraints[l].gamma + feas_tol) return;
        if (pe.cost < best.cost) {
            best.cost = pe.cost;
            best.policy = th;
            best.found = true;
        }
    });
    return best;
}

/// Central finite difference of `f` in coordinate `i` of theta.
inline double central_difference(
    const std::function<double(const ConditionalPolicy&)>& f,
    const ConditionalPolicy& theta, std::size_t i, double h) {
    ConditionalPolicy plus = theta, minus = theta;
    plus.theta[i] += h;
    minus.theta[i] -= h;
    return (f(plus) - f(minus)) / (2.0 * h);
}

} // namespace oracle
