#include "isomdp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "isomdp/lp.hpp"

namespace isomdp {

std::string to_string(SolveMode mode) {
    return mode == SolveMode::plain_admm ? "plain" : "regularized";
}

std::string to_string(Phase phase) { return phase == Phase::admm ? "admm" : "sg"; }

std::string to_string(SolveStatus status) {
    return status == SolveStatus::converged ? "converged" : "budget_exhausted";
}

void SolverConfig::validate() const {
    if (!(rho > 0.0)) throw ConfigError("rho must be positive");
    if (lambda && *lambda < 0.0) throw ConfigError("lambda must be nonnegative");
    if (i_admm < 1) throw ConfigError("i_admm must be positive");
    if (i_sg < 1) throw ConfigError("i_sg must be positive");
    if (max_iter < 1) throw ConfigError("max_iter must be positive");
    if (!(eps_cost > 0.0)) throw ConfigError("eps_cost must be positive");
    if (!(eps_res > 0.0)) throw ConfigError("eps_res must be positive");
    if (boost_iter < 0) throw ConfigError("boost_iter must be nonnegative");
}

double default_lambda(const MdpModel& model) {
    double total = 0.0;
    for (int x = 0; x < model.X; ++x)
        for (int u = 0; u < model.U; ++u) {
            for (int k = 0; k < model.N; ++k) total += model.stage_cost(k, x, u);
            total += model.terminal_cost(x);
        }
    return total / (static_cast<double>(model.X) * model.U);
}

namespace {

/// Clamps negatives to zero and renormalizes each (x,k) row. Rows that lose
/// all mass (cannot happen for affine-feasible theta) fall back to uniform.
ConditionalPolicy repair_policy(const ConditionalPolicy& theta) {
    ConditionalPolicy out = theta;
    for (int k = 0; k <= out.N; ++k)
        for (int x = 0; x < out.X; ++x) {
            double sum = 0.0;
            for (int u = 0; u < out.U; ++u) {
                double v = std::max(out(k, x, u), 0.0);
                out(k, x, u) = v;
                sum += v;
            }
            if (sum > 0.0)
                for (int u = 0; u < out.U; ++u) out(k, x, u) /= sum;
            else
                for (int u = 0; u < out.U; ++u) out(k, x, u) = 1.0 / out.U;
        }
    return out;
}

double relative_gap(double cost, double reference) {
    const double gap = std::abs(cost - reference);
    return reference != 0.0 ? gap / std::abs(reference) : gap;
}

struct Tracker {
    const MdpModel& model;
    const SolverConfig& config;
    std::vector<IterationRecord> trace;
    ConditionalPolicy prev_theta;
    bool have_prev = false;
    long iter = 0;
    bool done = false;

    explicit Tracker(const MdpModel& m, const SolverConfig& c) : model(m), config(c) {}

    std::optional<double> gap_of(double cost) const {
        if (!config.reference_cost) return std::nullopt;
        return std::abs(cost - *config.reference_cost);
    }

    /// Converts the z-iterate, records cost + residual, updates stopping.
    void record_admm(const AdmmState& st) {
        ++iter;
        const OccupationMeasure pi = devectorize(st.z, model);
        auto [theta, p] =
            occupation_to_conditional(pi, have_prev ? &prev_theta : nullptr);
        prev_theta = std::move(theta);
        have_prev = true;
        const double cost = evaluate_expected_cost(model, prev_theta);
        const double res = primal_residual(st);
        trace.push_back({iter, Phase::admm, cost, gap_of(cost), res});

        if (config.run_full_budget) return;
        const bool res_ok = res < config.eps_res;
        const bool cost_ok =
            !config.reference_cost ||
            relative_gap(cost, *config.reference_cost) < config.eps_cost;
        if (res_ok && cost_ok) done = true;
    }

    void record_sg(const ConditionalPolicy& theta_iterate) {
        ++iter;
        const ConditionalPolicy repaired = repair_policy(theta_iterate);
        const double cost = evaluate_expected_cost(model, repaired);
        trace.push_back({iter, Phase::sg, cost, gap_of(cost), std::nullopt});
    }
};

} // namespace

SolveResult solve(const MdpModel& model, const SolverConfig& config) {
    model.validate();
    config.validate();

    const StandardFormLp lp = build_lp(model);
    AdmmState st = admm_setup(lp, config.rho);
    const double lambda = config.lambda ? *config.lambda : default_lambda(model);

    Tracker tk(model, config);
    bool sg_enabled = config.mode == SolveMode::regularized;

    while (tk.iter < config.max_iter && !tk.done) {
        for (int t = 0; t < config.i_admm && tk.iter < config.max_iter && !tk.done; ++t) {
            admm_step(st, lp);
            tk.record_admm(st);
        }
        if (tk.done || tk.iter >= config.max_iter) break;
        if (!sg_enabled) continue;
        if (config.boost_iter > 0 && tk.iter + 1 > config.boost_iter) {
            sg_enabled = false; // boost window over: plain ADMM from here on
            continue;
        }

        // Switch to the relaxed formulation: theta from the (nonnegative)
        // z-iterate, p frozen for the whole subgradient block.
        const OccupationMeasure pi = devectorize(st.z, model);
        auto [theta, p] =
            occupation_to_conditional(pi, tk.have_prev ? &tk.prev_theta : nullptr);
        const RegularizedProblem prob = RegularizedProblem::make(model, p, lambda);

        for (int t = 0; t < config.i_sg && tk.iter < config.max_iter; ++t) {
            if (config.boost_iter > 0 && tk.iter + 1 > config.boost_iter) {
                sg_enabled = false;
                break;
            }
            try {
                theta = sg_step(prob, theta, tk.iter + 1);
            } catch (const ZeroDirection&) {
                break; // stationary: skip the remainder of this block
            }
            tk.record_sg(theta);
        }

        // Re-entry into the LP formulation: repair theta, rebuild alpha from
        // theta*p (slacks recomputed from the constraint rows), clamp z, and
        // keep eta so accumulated dual information survives the switch.
        const ConditionalPolicy repaired = repair_policy(theta);
        tk.prev_theta = repaired;
        const OccupationMeasure pi_back = conditional_to_occupation(repaired, prob.p_fixed);
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(lp.cols());
        alpha.head(lp.n_decision) = vectorize(pi_back);
        for (int l = 0; l < lp.n_slack; ++l) {
            const Constraint& cons = model.constraints[l];
            double spent = 0.0;
            for (std::size_t i = 0; i < cons.beta.size(); ++i)
                spent += cons.beta[i] * pi_back.pi[i];
            alpha[lp.n_decision + l] = cons.gamma - spent;
        }
        st.alpha = alpha;
        st.z = alpha.cwiseMax(0.0);
    }

    SolveResult result;
    result.trace = std::move(tk.trace);
    result.status = tk.done ? SolveStatus::converged : SolveStatus::budget_exhausted;
    result.lambda_used = lambda;
    result.final_occupation = devectorize(st.z, model);
    auto [policy, p_final] = occupation_to_conditional(
        result.final_occupation, tk.have_prev ? &tk.prev_theta : nullptr);
    result.policy = std::move(policy);
    result.final_cost = evaluate_expected_cost(model, result.policy);
    return result;
}

namespace {

/// Smallest recorded iteration from which `holds` stays true through the end
/// of the filtered trace; empty when it fails at the last relevant record or
/// never holds.
template <typename Filter, typename Holds>
std::optional<long> definitive_iteration(const std::vector<IterationRecord>& trace,
                                         Filter relevant, Holds holds) {
    std::optional<long> candidate;
    bool any = false;
    for (const IterationRecord& rec : trace) {
        if (!relevant(rec)) continue;
        any = true;
        if (holds(rec)) {
            if (!candidate) candidate = rec.iter;
        } else {
            candidate.reset();
        }
    }
    return any ? candidate : std::nullopt;
}

} // namespace

std::optional<long> definitive_reach_residual(
    const std::vector<IterationRecord>& trace, double eps_res) {
    return definitive_iteration(
        trace, [](const IterationRecord& r) { return r.phase == Phase::admm; },
        [&](const IterationRecord& r) { return *r.primal_res < eps_res; });
}

std::optional<long> definitive_reach_cost(
    const std::vector<IterationRecord>& trace, double reference, double eps_cost) {
    return definitive_iteration(
        trace, [](const IterationRecord&) { return true; },
        [&](const IterationRecord& r) {
            return relative_gap(r.cost, reference) < eps_cost;
        });
}

std::vector<SweepRow> rho_sweep(const MdpModel& model,
                                const std::vector<double>& rhos,
                                const SolverConfig& config) {
    SolverConfig base = config;
    base.run_full_budget = true;
    if (!base.reference_cost) {
        if (model.constraints.empty()) {
            base.reference_cost = dp_solve(model).optimal_cost;
        } else {
            SolverConfig ref_cfg = config;
            ref_cfg.mode = SolveMode::plain_admm;
            ref_cfg.max_iter = 10 * config.max_iter;
            ref_cfg.run_full_budget = false;
            base.reference_cost = solve(model, ref_cfg).final_cost;
        }
    }

    std::vector<SweepRow> table;
    for (double rho : rhos)
        for (SolveMode mode : {SolveMode::plain_admm, SolveMode::regularized}) {
            SolverConfig cfg = base;
            cfg.rho = rho;
            cfg.mode = mode;
            const SolveResult res = solve(model, cfg);

            SweepRow row;
            row.rho = rho;
            row.mode = mode;
            row.iters_res = definitive_reach_residual(res.trace, cfg.eps_res);
            row.iters_cost =
                definitive_reach_cost(res.trace, *cfg.reference_cost, cfg.eps_cost);
            table.push_back(row);
        }
    return table;
}

} // namespace isomdp
