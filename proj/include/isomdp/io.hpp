#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isomdp/mdp.hpp"
#include "isomdp/solver.hpp"

namespace isomdp {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_real(double v);

/// Model files are JSON documents with members X, U, N, x0,
/// P ([N][U][X][X]), cost ([N][X][U]), terminal_cost ([X]) and constraints
/// (list of {beta: [N+1][X][U], gamma}). Writing is deterministic; loading
/// validates the model and reports failures with a path-qualified message.
MdpModel load_model(const std::string& path);
void save_model(const MdpModel& model, const std::string& path);
std::string model_to_json(const MdpModel& model);
MdpModel model_from_json(const std::string& text, const std::string& context);

/// Policy files carry X, U, N and theta ([N+1][X][U]).
void save_policy(const ConditionalPolicy& theta, const std::string& path);
ConditionalPolicy load_policy(const std::string& path);

/// Trace CSV: header `iter,phase,cost,cost_gap,primal_res`; optional fields
/// are left empty (primal_res in sg rows, cost_gap without a reference).
void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& os);
void save_trace(const std::vector<IterationRecord>& trace, const std::string& path);
std::vector<IterationRecord> load_trace(const std::string& path);

/// Bench CSV: header `rho,seed,mode,iters_res,iters_cost`; an empty count
/// means the criterion was not definitively reached within the budget.
struct BenchRow {
    double rho = 0.0;
    std::uint64_t seed = 0;
    SolveMode mode = SolveMode::plain_admm;
    std::optional<long> iters_res;
    std::optional<long> iters_cost;
};
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& os);
void save_bench(const std::vector<BenchRow>& rows, const std::string& path);

} // namespace isomdp
