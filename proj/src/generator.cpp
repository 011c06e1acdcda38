#include "isomdp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace isomdp {

namespace {

/// Canonical [0,1) double from one mt19937_64 word; avoids the
/// implementation-defined std::uniform_real_distribution.
double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> draw(std::mt19937_64& rng, int n) {
    std::vector<double> v(n);
    for (double& x : v) x = canonical(rng);
    return v;
}

std::vector<double> sorted_increasing(std::mt19937_64& rng, int n) {
    auto v = draw(rng, n);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<double> sorted_decreasing(std::mt19937_64& rng, int n) {
    auto v = draw(rng, n);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

/// Tail-sum function of a random distribution on {1..X} with strictly
/// positive entries: tail[l] = sum_{j>=l} g_j, tail[0] = 1.
std::vector<double> random_tail(std::mt19937_64& rng, int X) {
    std::vector<double> g = draw(rng, X);
    double total = 0.0;
    for (double& v : g) {
        v += 0.1 / X; // keep every transition probability bounded away from 0
        total += v;
    }
    std::vector<double> tail(X + 1, 0.0);
    for (int l = X - 1; l >= 0; --l) tail[l] = tail[l + 1] + g[l] / total;
    tail[0] = 1.0;
    return tail;
}

MdpModel sample_candidate(const GeneratorSpec& spec, std::mt19937_64& rng) {
    const int X = spec.X, U = spec.U, N = spec.N;
    MdpModel m = MdpModel::zeros(X, U, N);
    m.x0 = X; // start from the top state, mirroring "working" in repair models

    for (int k = 0; k < N; ++k) {
        const auto a = sorted_decreasing(rng, X);
        const auto s = sorted_decreasing(rng, X);
        const auto mu = sorted_increasing(rng, U);
        for (int x = 0; x < X; ++x)
            for (int u = 0; u < U; ++u)
                m.stage_cost(k, x, u) = spec.cost_scale * (a[x] + mu[u] * s[x]);
    }
    {
        auto t = sorted_decreasing(rng, X);
        for (int x = 0; x < X; ++x) m.cN[x] = spec.cost_scale * t[x];
    }

    for (int k = 0; k < N; ++k) {
        const auto t1 = random_tail(rng, X);
        const auto t2 = random_tail(rng, X);
        std::vector<double> lo(X + 1), hi(X + 1);
        for (int l = 0; l <= X; ++l) {
            lo[l] = std::min(t1[l], t2[l]);
            hi[l] = std::max(t1[l], t2[l]);
        }
        const auto phi = sorted_increasing(rng, X);
        const auto psi = sorted_increasing(rng, U);
        for (int u = 0; u < U; ++u)
            for (int i = 0; i < X; ++i) {
                const double w = phi[i] * psi[u];
                for (int j = 0; j < X; ++j) {
                    const double tail_j = (1.0 - w) * lo[j] + w * hi[j];
                    const double tail_j1 = (1.0 - w) * lo[j + 1] + w * hi[j + 1];
                    m.transition(k, u, i, j) = tail_j - tail_j1;
                }
            }
    }
    return m;
}

} // namespace

MdpModel random_monotone_mdp(const GeneratorSpec& spec) {
    if (spec.X < 1 || spec.U < 1 || spec.N < 1)
        throw ConfigError("generator dimensions must be positive");
    if (!(spec.cost_scale > 0.0))
        throw ConfigError("cost_scale must be positive");

    std::mt19937_64 rng(spec.seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MdpModel m = sample_candidate(spec, rng);
        m.validate();
        if (check_monotone_assumptions(m).all_pass()) return m;
    }
    throw GenerationFailed("no (A1)-(A4) instance found in 1000 attempts for X=" +
                           std::to_string(spec.X) + ", U=" + std::to_string(spec.U) +
                           ", N=" + std::to_string(spec.N));
}

MdpModel machine_replacement_model(double theta_break, double replace_cost,
                                   double broken_cost, int N) {
    if (!(theta_break >= 0.0 && theta_break <= 1.0))
        throw InvalidProbability("breakdown probability " +
                                 std::to_string(theta_break) + " outside [0, 1]");
    if (replace_cost < 0.0 || broken_cost < 0.0)
        throw InvalidProbability("costs must be nonnegative");
    if (N < 1) throw ConfigError("horizon must be positive");

    // States: 1 broken, 2 working. Actions: 1 replace, 2 continue.
    MdpModel m = MdpModel::zeros(2, 2, N);
    m.x0 = 2;
    for (int k = 0; k < N; ++k) {
        m.transition(k, 0, 0, 1) = 1.0; // replace: -> working
        m.transition(k, 0, 1, 1) = 1.0;
        m.transition(k, 1, 0, 0) = 1.0; // continue: broken stays broken
        m.transition(k, 1, 1, 0) = theta_break;
        m.transition(k, 1, 1, 1) = 1.0 - theta_break;

        m.stage_cost(k, 0, 0) = replace_cost;
        m.stage_cost(k, 1, 0) = replace_cost;
        m.stage_cost(k, 0, 1) = broken_cost;
        m.stage_cost(k, 1, 1) = 0.0;
    }
    return m;
}

Constraint expenditure_constraint(const MdpModel& model, std::uint64_t seed,
                                  double tightness) {
    if (!model.constraints.empty())
        throw ConstrainedModelError("expenditure_constraint needs an unconstrained model");
    if (!(tightness > 0.0)) throw ConfigError("tightness must be positive");

    std::mt19937_64 rng(seed);
    Constraint cons;
    cons.beta.resize(model.policy_size());
    for (double& v : cons.beta) v = canonical(rng);

    const DpResult dp = dp_solve(model);
    const StateDistribution p = propagate_distribution(model, dp.policy);
    double spent = 0.0;
    for (int k = 0; k <= model.N; ++k)
        for (int x = 0; x < model.X; ++x)
            for (int u = 0; u < model.U; ++u)
                spent += cons.beta[(static_cast<std::size_t>(k) * model.X + x) *
                                   model.U + u] *
                         dp.policy(k, x, u) * p(k, x);
    cons.gamma = tightness * spent;
    return cons;
}

} // namespace isomdp
