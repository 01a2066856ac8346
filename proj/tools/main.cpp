#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "cli_commands.hpp"

namespace {

using namespace qubopart::cli;

void add_solver_options(CLI::App* cmd, SolverOptions& opt) {
    cmd->add_option("--restarts", opt.restarts, "Independent annealing runs");
    cmd->add_option("--steps", opt.steps, "Monte Carlo steps per run");
    cmd->add_option("--t-start", opt.t_start, "Initial temperature (default: probe-derived)");
    cmd->add_option("--t-end", opt.t_end, "Final temperature");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--offset-inc", opt.offset_inc,
                    "Escape offset growth per rejected step (default: problem-scaled)");
    cmd->add_option_function<double>(
        "--time-limit-sec", [&opt](double v) { opt.time_limit_sec = v; },
        "Wall-clock cap per run");
    cmd->add_flag("--baseline-sa", opt.baseline_sa, "Use the sequential Metropolis baseline");
    cmd->add_option("--threads", opt.threads, "Worker threads for restarts");
    cmd->add_option("--preset", opt.preset, "Budget preset: quick | paper")
        ->check(CLI::IsMember({"quick", "paper"}));
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Report format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out.out_path, "Write the report to a file instead of stdout");
}

void add_graph_input(CLI::App* cmd, GraphInput& input) {
    auto* edges = cmd->add_option("--edges", input.edges_path, "Edge list file (u v [w])");
    auto* electrical =
        cmd->add_option("--electrical", input.electrical_path,
                        "Line CSV (from_bus,to_bus,r_ohm,x_ohm), weights 1/|r+jx|");
    auto* builtin = cmd->add_option("--builtin", input.builtin, "Bundled graph: karate");
    edges->excludes(electrical)->excludes(builtin);
    electrical->excludes(builtin);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QUBO annealing toolkit: number partitioning and modularity graph partitioning"};
    app.require_subcommand(1);

    NumpartConfig numpart;
    auto* np = app.add_subcommand("numpart", "Two-way partition of a set of positive integers");
    np->add_option("--input", numpart.input_path, "File with one integer per line");
    np->add_option("--generate", numpart.generate_n, "Generate N random integers instead");
    np->add_option("--max-value", numpart.max_value, "Upper bound for generated integers");
    np->add_flag("--expect-optimal", numpart.expect_optimal,
                 "Exit 2 unless the final difference is 0 or 1");
    add_solver_options(np, numpart.solver);
    add_output_options(np, numpart.output);

    GraphpartConfig graphpart;
    auto* gp = app.add_subcommand("graphpart", "Modularity-maximizing partition into K groups");
    add_graph_input(gp, graphpart.input);
    gp->add_option("--k", graphpart.k, "Number of groups")->required();
    gp->add_option("--gamma", graphpart.gamma, "Modularity resolution parameter");
    gp->add_option("--lambda", graphpart.lambda, "Nonempty-group inequality weight");
    gp->add_option("--onehot", graphpart.onehot, "One-hot handling: moves | penalty")
        ->check(CLI::IsMember({"moves", "penalty"}));
    add_solver_options(gp, graphpart.solver);
    add_output_options(gp, graphpart.output);

    SweepConfig sweep;
    auto* sw = app.add_subcommand("sweepk", "Solve for every K in a range and report the argmax");
    add_graph_input(sw, sweep.input);
    sw->add_option("--k-min", sweep.k_min, "Smallest K")->required();
    sw->add_option("--k-max", sweep.k_max, "Largest K")->required();
    sw->add_option("--gamma", sweep.gamma, "Modularity resolution parameter");
    sw->add_option("--lambda", sweep.lambda, "Nonempty-group inequality weight");
    sw->add_option("--onehot", sweep.onehot, "One-hot handling: moves | penalty")
        ->check(CLI::IsMember({"moves", "penalty"}));
    add_solver_options(sw, sweep.solver);
    add_output_options(sw, sweep.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (np->parsed()) return cmd_numpart(numpart);
        if (gp->parsed()) return cmd_graphpart(graphpart);
        return cmd_sweep_k(sweep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
