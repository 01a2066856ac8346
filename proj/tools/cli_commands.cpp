#include "cli_commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qubopart/anneal.hpp"
#include "qubopart/graph.hpp"
#include "qubopart/problems.hpp"
#include "qubopart/qubo.hpp"
#include "qubopart/report.hpp"

namespace qubopart::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Budget {
    int restarts;
    long long steps;
};

Budget resolve_budget(const SolverOptions& opt, Budget quick, Budget paper) {
    Budget b = quick;
    if (opt.preset == "paper") {
        b = paper;
    } else if (opt.preset != "quick") {
        throw std::invalid_argument("unknown preset: " + opt.preset);
    }
    if (opt.restarts > 0) b.restarts = opt.restarts;
    if (opt.steps > 0) b.steps = opt.steps;
    return b;
}

std::vector<std::uint8_t> probe_bits(int n, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0xBEEFu};
    Rng rng(seq);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    return bits;
}

void write_report(const RunReport& report, const OutputOptions& output) {
    const ReportFormat format = parse_report_format(output.format);
    if (output.out_path.empty()) {
        emit_report(report, format, std::cout);
        return;
    }
    std::ofstream out(output.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + output.out_path);
    emit_report(report, format, out);
}

ordered_json solver_echo(const SolverOptions& opt, const Budget& budget, const Schedule& sched,
                         double offset_inc) {
    ordered_json j;
    j["engine"] = opt.baseline_sa ? "sequential_sa" : "parallel_trial";
    j["seed"] = opt.seed;
    j["restarts"] = budget.restarts;
    j["steps"] = budget.steps;
    j["t_start"] = sched.t_start;
    j["t_end"] = sched.t_end;
    j["offset_increment"] = offset_inc;
    j["initial_state_mode"] = "shared";
    if (opt.time_limit_sec) j["time_limit_sec"] = *opt.time_limit_sec;
    return j;
}

ordered_json restart_table(const AnnealResult& result) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : result.per_restart) {
        rows.push_back({{"final_energy", r.final_energy},
                        {"best_energy", r.best_energy},
                        {"accepted_flips", r.accepted_flips}});
    }
    return rows;
}

std::string bits_string(std::span<const std::uint8_t> bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

struct LoadedGraph {
    Graph graph;
    std::vector<long long> bus_ids;  // empty unless electrical
    std::string source;
};

LoadedGraph load_graph(const GraphInput& input) {
    const int sources = int(!input.edges_path.empty()) + int(!input.electrical_path.empty()) +
                        int(!input.builtin.empty());
    if (sources != 1) {
        throw std::invalid_argument("exactly one of --edges, --electrical, --builtin is required");
    }
    LoadedGraph g;
    if (!input.builtin.empty()) {
        if (input.builtin != "karate") {
            throw std::invalid_argument("unknown builtin graph: " + input.builtin);
        }
        g.graph = karate_club();
        g.source = "builtin:karate";
        return g;
    }
    if (!input.edges_path.empty()) {
        std::ifstream in(input.edges_path);
        if (!in) throw std::runtime_error("cannot open edge list: " + input.edges_path);
        g.graph = load_edge_list(in);
        g.source = input.edges_path;
        return g;
    }
    std::ifstream in(input.electrical_path);
    if (!in) throw std::runtime_error("cannot open line data: " + input.electrical_path);
    auto net = load_electrical_lines(in);
    g.graph = std::move(net.graph);
    g.bus_ids = std::move(net.bus_ids);
    g.source = input.electrical_path;
    return g;
}

struct PartitionRun {
    AnnealResult result;
    Schedule schedule;
    double offset_inc = 0.0;
    PartitionDecodeReport decode;
    double seconds = 0.0;
};

PartitionRun solve_partition(const Graph& graph, int k, double gamma, double lambda,
                             const std::string& onehot, const SolverOptions& opt,
                             const Budget& budget) {
    const auto start = Clock::now();
    PartitionProblem prob;
    prob.graph = graph;
    prob.k = k;
    prob.gamma = gamma;
    prob.nonempty_lambda = lambda;
    auto built = build_graph_partition(prob);

    QuboModel model = built.model;
    AnnealParams params;
    params.restarts = budget.restarts;
    params.seed = opt.seed;
    params.threads = opt.threads;
    params.time_limit_sec = opt.time_limit_sec;
    params.engine = opt.baseline_sa ? EngineKind::sequential_sa : EngineKind::parallel_trial;
    if (onehot == "penalty") {
        const auto b = modularity_matrix(graph, gamma);
        model = add_one_hot_penalty(built.model, built.blocks, default_one_hot_penalty(b));
        params.one_hot_mode = OneHotMode::penalty;
    } else if (onehot != "moves") {
        throw std::invalid_argument("unknown one-hot mode: " + onehot);
    }

    PartitionRun run;
    Schedule sched = suggest_schedule(model, built.constraints,
                                      probe_bits(model.num_vars(), opt.seed), budget.steps, opt.seed);
    if (opt.t_start > 0.0) sched.t_start = opt.t_start;
    if (opt.t_end > 0.0) sched.t_end = opt.t_end;
    if (sched.t_end > sched.t_start) sched.t_end = sched.t_start;
    run.offset_inc = opt.offset_inc >= 0.0 ? opt.offset_inc : default_offset_increment(model);
    params.offset_increment = run.offset_inc;

    run.result = anneal(model, built.constraints, sched, params, &built.blocks);
    run.schedule = sched;
    run.decode = decode_partition(run.result.best_bits, graph.num_nodes(), k);
    run.seconds = seconds_since(start);
    return run;
}

ordered_json partition_result_json(const Graph& graph, const std::vector<long long>& bus_ids,
                                   int k, double gamma, const PartitionRun& run) {
    ordered_json r;
    r["k"] = k;
    r["best_energy"] = run.result.best_total_energy;
    r["feasible"] = run.decode.feasible;
    if (run.decode.feasible) {
        r["modularity"] = modularity(graph, run.decode.assignment, gamma);
        ordered_json assign;
        for (int i = 0; i < graph.num_nodes(); ++i) {
            const std::string key = bus_ids.empty() ? std::to_string(i)
                                                    : std::to_string(bus_ids[i]);
            assign[key] = run.decode.assignment.group_of[i];
        }
        r["assignment"] = assign;
        const auto stats = boundary_weight_stats(graph, run.decode.assignment);
        ordered_json b;
        b["boundary_count"] = stats.boundary_count;
        b["interior_count"] = stats.interior_count;
        b["boundary_mean"] = stats.boundary_mean ? ordered_json(*stats.boundary_mean)
                                                 : ordered_json(nullptr);
        b["interior_mean"] = stats.interior_mean ? ordered_json(*stats.interior_mean)
                                                 : ordered_json(nullptr);
        r["boundary_stats"] = b;
    } else {
        r["modularity"] = nullptr;
        r["zero_hot_blocks"] = run.decode.zero_hot_blocks;
        r["multi_hot_blocks"] = run.decode.multi_hot_blocks;
    }
    r["time_limit_hit"] = run.result.time_limit_hit;
    r["restarts"] = restart_table(run.result);
    return r;
}

std::vector<long long> read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::vector<long long> values;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        long long v;
        if (!(ls >> v)) {
            ls.clear();
            std::string token;
            if (ls >> token) {
                throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                         ": not an integer");
            }
            continue;  // blank line
        }
        if (v < 1) {
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": values must be positive");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<long long> generate_values(long long n, long long max_value, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("--generate requires a positive count");
    if (max_value < 1) throw std::invalid_argument("--max-value must be positive");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0x6E756Du};
    Rng rng(seq);
    std::uniform_int_distribution<long long> value(1, max_value);
    std::vector<long long> values(static_cast<std::size_t>(n));
    for (auto& v : values) v = value(rng);
    return values;
}

}  // namespace

int cmd_numpart(const NumpartConfig& config) {
    const auto start = Clock::now();
    NumberSet set;
    if (!config.input_path.empty()) {
        set.values = read_values_file(config.input_path);
    } else if (config.generate_n > 0) {
        set.values = generate_values(config.generate_n, config.max_value, config.solver.seed);
    } else {
        throw std::invalid_argument("numpart needs --input FILE or --generate N");
    }
    set.validate();

    const Budget budget = resolve_budget(config.solver, {8, 25000}, {16, 200000});
    auto model = build_number_partition(set);

    Schedule sched = suggest_schedule(model, {}, probe_bits(model.num_vars(), config.solver.seed),
                                      budget.steps, config.solver.seed);
    // Integer instances need to freeze near unit-scale deltas; the offset
    // escape does the late-stage polishing from there.
    if (config.solver.t_start > 0.0) sched.t_start = config.solver.t_start;
    sched.t_end = config.solver.t_end > 0.0 ? config.solver.t_end : 2.0;
    if (sched.t_end > sched.t_start) sched.t_end = sched.t_start;

    AnnealParams params;
    params.restarts = budget.restarts;
    params.seed = config.solver.seed;
    params.threads = config.solver.threads;
    params.time_limit_sec = config.solver.time_limit_sec;
    params.engine =
        config.solver.baseline_sa ? EngineKind::sequential_sa : EngineKind::parallel_trial;
    const double offset_inc = config.solver.offset_inc >= 0.0 ? config.solver.offset_inc
                                                              : default_offset_increment(model);
    params.offset_increment = offset_inc;

    auto result = anneal(model, {}, sched, params);
    const auto decode = decode_number_partition(set, result.best_bits);
    const double seconds = seconds_since(start);

    RunReport report;
    report.body["schema_version"] = kReportSchemaVersion;
    report.body["command"] = "numpart";
    ordered_json cfg;
    if (!config.input_path.empty()) {
        cfg["input"] = config.input_path;
    } else {
        cfg["generate"] = config.generate_n;
        cfg["max_value"] = config.max_value;
    }
    cfg["expect_optimal"] = config.expect_optimal;
    report.body["config"] = cfg;
    ordered_json r;
    r["n"] = static_cast<long long>(set.values.size());
    r["c"] = set.total();
    r["sum_a"] = decode.sum_a;
    r["sum_b"] = decode.sum_b;
    r["d"] = decode.d;
    r["best_energy"] = result.best_total_energy;
    r["bits"] = bits_string(result.best_bits);
    r["time_limit_hit"] = result.time_limit_hit;
    r["restarts"] = restart_table(result);
    report.body["results"] = ordered_json::array({r});
    report.body["solver"] = solver_echo(config.solver, budget, sched, offset_inc);
    report.timing["wall_sec_total"] = seconds;
    report.timing["per_result_sec"] = ordered_json::array({seconds});
    write_report(report, config.output);

    if (config.expect_optimal && decode.d > 1) return kExitExpectationUnmet;
    return kExitOk;
}

int cmd_graphpart(const GraphpartConfig& config) {
    const auto start = Clock::now();
    auto loaded = load_graph(config.input);
    const Budget budget = resolve_budget(config.solver, {8, 20000}, {32, 150000});
    auto run = solve_partition(loaded.graph, config.k, config.gamma, config.lambda, config.onehot,
                               config.solver, budget);

    RunReport report;
    report.body["schema_version"] = kReportSchemaVersion;
    report.body["command"] = "graphpart";
    ordered_json cfg;
    cfg["graph"] = loaded.source;
    cfg["k"] = config.k;
    cfg["gamma"] = config.gamma;
    cfg["lambda"] = config.lambda;
    cfg["onehot"] = config.onehot;
    report.body["config"] = cfg;
    ordered_json gstats;
    const auto stats = graph_stats(loaded.graph);
    gstats["n"] = stats.n;
    gstats["edges"] = stats.edge_count;
    gstats["total_weight_2m"] = stats.total_weight_2m;
    if (!loaded.bus_ids.empty()) gstats["bus_ids"] = loaded.bus_ids;
    report.body["graph"] = gstats;
    report.body["results"] = ordered_json::array(
        {partition_result_json(loaded.graph, loaded.bus_ids, config.k, config.gamma, run)});
    report.body["solver"] = solver_echo(config.solver, budget, run.schedule, run.offset_inc);
    report.timing["wall_sec_total"] = seconds_since(start);
    report.timing["per_result_sec"] = ordered_json::array({run.seconds});
    write_report(report, config.output);

    return run.decode.feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep_k(const SweepConfig& config) {
    const auto start = Clock::now();
    if (config.k_min < 1 || config.k_max < config.k_min) {
        throw std::invalid_argument("need 1 <= --k-min <= --k-max");
    }
    auto loaded = load_graph(config.input);
    const Budget budget = resolve_budget(config.solver, {8, 20000}, {32, 150000});

    ordered_json results = ordered_json::array();
    ordered_json per_sec = ordered_json::array();
    int argmax_k = -1;
    double max_q = 0.0;
    bool any_feasible = false;
    for (int k = config.k_min; k <= config.k_max; ++k) {
        auto run = solve_partition(loaded.graph, k, config.gamma, config.lambda, config.onehot,
                                   config.solver, budget);
        results.push_back(partition_result_json(loaded.graph, loaded.bus_ids, k, config.gamma, run));
        per_sec.push_back(run.seconds);
        if (run.decode.feasible) {
            const double q = modularity(loaded.graph, run.decode.assignment, config.gamma);
            if (!any_feasible || q > max_q) {
                any_feasible = true;
                max_q = q;
                argmax_k = k;
            }
        }
    }

    RunReport report;
    report.body["schema_version"] = kReportSchemaVersion;
    report.body["command"] = "sweepk";
    ordered_json cfg;
    cfg["graph"] = loaded.source;
    cfg["k_min"] = config.k_min;
    cfg["k_max"] = config.k_max;
    cfg["gamma"] = config.gamma;
    cfg["lambda"] = config.lambda;
    cfg["onehot"] = config.onehot;
    report.body["config"] = cfg;
    ordered_json summary;
    summary["argmax_k"] = any_feasible ? ordered_json(argmax_k) : ordered_json(nullptr);
    summary["max_modularity"] = any_feasible ? ordered_json(max_q) : ordered_json(nullptr);
    report.body["summary"] = summary;
    report.body["results"] = results;
    // The schedule is re-derived per K, so echo only the shared knobs.
    ordered_json solver;
    solver["engine"] = config.solver.baseline_sa ? "sequential_sa" : "parallel_trial";
    solver["seed"] = config.solver.seed;
    solver["restarts"] = budget.restarts;
    solver["steps"] = budget.steps;
    report.body["solver"] = solver;
    report.timing["wall_sec_total"] = seconds_since(start);
    report.timing["per_result_sec"] = per_sec;
    write_report(report, config.output);

    return any_feasible ? kExitOk : kExitInfeasible;
}

}  // namespace qubopart::cli
