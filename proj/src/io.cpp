#include "isomdp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace isomdp {

using nlohmann::json;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void emit_reals(std::ostream& os, const std::vector<double>& flat,
                const std::vector<int>& dims, std::size_t& pos, int depth,
                int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (depth == static_cast<int>(dims.size()) - 1) {
        os << "[";
        for (int i = 0; i < dims[depth]; ++i) {
            if (i) os << ", ";
            os << format_real(flat[pos++]);
        }
        os << "]";
        return;
    }
    os << "[\n";
    for (int i = 0; i < dims[depth]; ++i) {
        os << pad << "  ";
        emit_reals(os, flat, dims, pos, depth + 1, indent + 1);
        if (i + 1 < dims[depth]) os << ",";
        os << "\n";
    }
    os << pad << "]";
}

std::string nested_reals(const std::vector<double>& flat, std::vector<int> dims,
                         int indent) {
    std::ostringstream os;
    std::size_t pos = 0;
    emit_reals(os, flat, dims, pos, 0, indent);
    return os.str();
}

/// P is stored [k][u][i][j] but serialized [N][U][X][X] in the same order,
/// so flat emission matches directly. cost is [k][x][u] -> [N][X][U]; beta
/// and theta are [k][x][u] -> [N+1][X][U].

template <typename T>
T fetch(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key))
        throw ModelParseError(ctx + ": missing member \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ModelParseError(ctx + ": member \"" + key + "\": " + e.what());
    }
}

void flatten_reals(const json& node, int depth, const std::vector<int>& dims,
                   std::vector<double>& out, const std::string& ctx) {
    if (depth == static_cast<int>(dims.size())) {
        if (!node.is_number())
            throw ModelParseError(ctx + ": expected a number");
        out.push_back(node.get<double>());
        return;
    }
    if (!node.is_array() || static_cast<int>(node.size()) != dims[depth])
        throw ModelParseError(ctx + ": expected an array of length " +
                              std::to_string(dims[depth]));
    int i = 0;
    for (const json& child : node)
        flatten_reals(child, depth + 1, dims, out, ctx + "[" + std::to_string(i++) + "]");
}

std::vector<double> fetch_array(const json& j, const char* key,
                                const std::vector<int>& dims,
                                const std::string& ctx) {
    if (!j.contains(key))
        throw ModelParseError(ctx + ": missing member \"" + key + "\"");
    std::vector<double> out;
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    out.reserve(total);
    flatten_reals(j.at(key), 0, dims, out, ctx + "." + key);
    return out;
}

} // namespace

std::string model_to_json(const MdpModel& model) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"X\": " << model.X << ",\n";
    os << "  \"U\": " << model.U << ",\n";
    os << "  \"N\": " << model.N << ",\n";
    os << "  \"x0\": " << model.x0 << ",\n";
    os << "  \"P\": " << nested_reals(model.P, {model.N, model.U, model.X, model.X}, 1)
       << ",\n";
    os << "  \"cost\": " << nested_reals(model.c, {model.N, model.X, model.U}, 1)
       << ",\n";
    os << "  \"terminal_cost\": " << nested_reals(model.cN, {model.X}, 1) << ",\n";
    os << "  \"constraints\": [";
    for (int l = 0; l < model.num_constraints(); ++l) {
        if (l) os << ",";
        os << "\n    {\n      \"beta\": "
           << nested_reals(model.constraints[l].beta,
                           {model.N + 1, model.X, model.U}, 3)
           << ",\n      \"gamma\": " << format_real(model.constraints[l].gamma)
           << "\n    }";
    }
    if (model.num_constraints() > 0) os << "\n  ";
    os << "]\n";
    os << "}\n";
    return os.str();
}

MdpModel model_from_json(const std::string& text, const std::string& context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ModelParseError(context + ": " + e.what());
    }
    if (!j.is_object()) throw ModelParseError(context + ": top level must be an object");

    MdpModel m;
    m.X = fetch<int>(j, "X", context);
    m.U = fetch<int>(j, "U", context);
    m.N = fetch<int>(j, "N", context);
    m.x0 = fetch<int>(j, "x0", context);
    if (m.X < 1 || m.U < 1 || m.N < 1)
        throw ModelParseError(context + ": dimensions must be positive");

    m.P = fetch_array(j, "P", {m.N, m.U, m.X, m.X}, context);
    m.c = fetch_array(j, "cost", {m.N, m.X, m.U}, context);
    m.cN = fetch_array(j, "terminal_cost", {m.X}, context);

    if (j.contains("constraints")) {
        const json& cs = j.at("constraints");
        if (!cs.is_array())
            throw ModelParseError(context + ": constraints must be an array");
        int l = 0;
        for (const json& c : cs) {
            const std::string ctx = context + ".constraints[" + std::to_string(l++) + "]";
            Constraint cons;
            cons.beta = fetch_array(c, "beta", {m.N + 1, m.X, m.U}, ctx);
            cons.gamma = fetch<double>(c, "gamma", ctx);
            m.constraints.push_back(std::move(cons));
        }
    }

    try {
        m.validate();
    } catch (const std::exception& e) {
        throw ModelParseError(context + ": " + e.what());
    }
    return m;
}

MdpModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str(), path);
}

void save_model(const MdpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelParseError(path + ": cannot open file for writing");
    out << model_to_json(model);
}

void save_policy(const ConditionalPolicy& theta, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelParseError(path + ": cannot open file for writing");
    out << "{\n";
    out << "  \"X\": " << theta.X << ",\n";
    out << "  \"U\": " << theta.U << ",\n";
    out << "  \"N\": " << theta.N << ",\n";
    out << "  \"theta\": "
        << nested_reals(theta.theta, {theta.N + 1, theta.X, theta.U}, 1) << "\n";
    out << "}\n";
}

ConditionalPolicy load_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError(path + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ModelParseError(path + ": " + e.what());
    }
    ConditionalPolicy th;
    th.X = fetch<int>(j, "X", path);
    th.U = fetch<int>(j, "U", path);
    th.N = fetch<int>(j, "N", path);
    th.theta = fetch_array(j, "theta", {th.N + 1, th.X, th.U}, path);
    return th;
}

void write_trace_csv(const std::vector<IterationRecord>& trace, std::ostream& os) {
    os << "iter,phase,cost,cost_gap,primal_res\n";
    for (const IterationRecord& r : trace) {
        os << r.iter << "," << to_string(r.phase) << "," << format_real(r.cost) << ",";
        if (r.cost_gap) os << format_real(*r.cost_gap);
        os << ",";
        if (r.primal_res) os << format_real(*r.primal_res);
        os << "\n";
    }
}

void save_trace(const std::vector<IterationRecord>& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelParseError(path + ": cannot open file for writing");
    write_trace_csv(trace, out);
}

std::vector<IterationRecord> load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelParseError(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line) || line != "iter,phase,cost,cost_gap,primal_res")
        throw ModelParseError(path + ": bad trace header");

    std::vector<IterationRecord> trace;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (fields.size() != 5)
            throw ModelParseError(path + ":" + std::to_string(line_no) +
                                  ": expected 5 fields");
        IterationRecord rec;
        rec.iter = std::stol(fields[0]);
        if (fields[1] == "admm")
            rec.phase = Phase::admm;
        else if (fields[1] == "sg")
            rec.phase = Phase::sg;
        else
            throw ModelParseError(path + ":" + std::to_string(line_no) +
                                  ": unknown phase \"" + fields[1] + "\"");
        rec.cost = std::stod(fields[2]);
        if (!fields[3].empty()) rec.cost_gap = std::stod(fields[3]);
        if (!fields[4].empty()) rec.primal_res = std::stod(fields[4]);
        trace.push_back(rec);
    }
    return trace;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
    os << "rho,seed,mode,iters_res,iters_cost\n";
    for (const BenchRow& r : rows) {
        os << format_real(r.rho) << "," << r.seed << "," << to_string(r.mode) << ",";
        if (r.iters_res) os << *r.iters_res;
        os << ",";
        if (r.iters_cost) os << *r.iters_cost;
        os << "\n";
    }
}

void save_bench(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelParseError(path + ": cannot open file for writing");
    write_bench_csv(rows, out);
}

} // namespace isomdp
