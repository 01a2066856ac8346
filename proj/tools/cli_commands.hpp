#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qubopart::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitExpectationUnmet = 2;
inline constexpr int kExitInfeasible = 3;

struct SolverOptions {
    int restarts = -1;       // -1: take the preset default
    long long steps = -1;    // -1: take the preset default
    double t_start = -1.0;   // <= 0: derive from probe flips
    double t_end = -1.0;     // <= 0: derive from t_start
    std::uint64_t seed = 0;
    double offset_inc = -1.0;  // < 0: automatic problem scale
    std::optional<double> time_limit_sec;
    bool baseline_sa = false;
    int threads = 1;
    std::string preset = "quick";
};

struct OutputOptions {
    std::string format = "json";
    std::string out_path;  // empty: stdout
};

struct NumpartConfig {
    std::string input_path;  // empty: use the generator
    long long generate_n = 0;
    long long max_value = 10000;
    bool expect_optimal = false;
    SolverOptions solver;
    OutputOptions output;
};

struct GraphInput {
    std::string edges_path;
    std::string electrical_path;
    std::string builtin;
};

struct GraphpartConfig {
    GraphInput input;
    int k = 2;
    double gamma = 1.0;
    double lambda = 1.0;
    std::string onehot = "moves";  // moves | penalty
    SolverOptions solver;
    OutputOptions output;
};

struct SweepConfig {
    GraphInput input;
    int k_min = 2;
    int k_max = 8;
    double gamma = 1.0;
    double lambda = 1.0;
    std::string onehot = "moves";
    SolverOptions solver;
    OutputOptions output;
};

int cmd_numpart(const NumpartConfig& config);
int cmd_graphpart(const GraphpartConfig& config);
int cmd_sweep_k(const SweepConfig& config);

}  // namespace qubopart::cli
