#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qubopart/anneal.hpp"
#include "qubopart/graph.hpp"
#include "qubopart/qubo.hpp"

namespace qubopart {

/// Multiset of positive integers to split into two subsets with minimal sum
/// difference.
struct NumberSet {
    std::vector<long long> values;

    long long total() const;
    /// Throws std::invalid_argument on an empty set or a value < 1.
    void validate() const;
};

/// QUBO whose energy at any assignment equals the squared subset-sum
/// difference D^2 exactly: linear[i] = 4*S_i*(S_i - c), stored pair
/// coefficient 4*S_i*S_j, offset c^2.
QuboModel build_number_partition(const NumberSet& s);

struct NumberPartitionDecode {
    long long sum_a = 0;
    long long sum_b = 0;
    long long d = 0;  // |sum_b - sum_a|
};

NumberPartitionDecode decode_number_partition(const NumberSet& s,
                                              std::span<const std::uint8_t> bits);

struct PartitionAssignment {
    std::vector<int> group_of;
    int k = 1;
};

/// Dense symmetric modularity matrix B with
///   B[i][j] = (A_ij - gamma * k_i * k_j / 2m) / 2m,
/// normalized so that -sum over same-group pairs of B equals the negative
/// modularity directly. Rows sum to zero at gamma = 1.
struct ModularityMatrix {
    int n = 0;
    double two_m = 0.0;
    std::vector<double> b;  // row-major n*n

    double at(int i, int j) const {
        return b[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j)];
    }
};

/// Throws std::invalid_argument on a graph with zero total weight.
ModularityMatrix modularity_matrix(const Graph& g, double gamma = 1.0);

/// Weighted modularity of an assignment (diagonal terms included, both pair
/// orders counted). Empty trailing groups contribute nothing.
double modularity(const Graph& g, const PartitionAssignment& assign, double gamma = 1.0);

struct PartitionProblem {
    Graph graph;
    int k = 2;
    double gamma = 1.0;
    /// Quadratic one-hot penalty weight used only by penalty mode; negative
    /// selects 2 * max_i sum_j |B[i][j]|.
    double one_hot_penalty = -1.0;
    /// Weight of each nonempty-group inequality sum_i x_ik >= 1.
    double nonempty_lambda = 1.0;
};

struct GraphPartitionQubo {
    QuboModel model;
    std::vector<InequalityConstraint> constraints;
    OneHotBlocks blocks;
};

/// Encodes modularity maximization over K groups: variable (node i, group k)
/// sits at flat index i*K + k; the model energy of any feasible one-hot state
/// equals minus the modularity of the decoded assignment. The K nonempty
/// hinges come back as separated constraints; the model itself carries no
/// one-hot penalty (see add_one_hot_penalty for penalty mode).
GraphPartitionQubo build_graph_partition(const PartitionProblem& problem);

/// Expands penalty * sum_blocks (sum_slots x - 1)^2 into a copy of the model,
/// for running one-hot feasibility as a soft penalty instead of structured
/// moves.
QuboModel add_one_hot_penalty(const QuboModel& model, const OneHotBlocks& blocks, double penalty);

double default_one_hot_penalty(const ModularityMatrix& b);

struct PartitionDecodeReport {
    bool feasible = false;
    PartitionAssignment assignment;  // valid only when feasible
    int zero_hot_blocks = 0;
    int multi_hot_blocks = 0;
};

/// Reads an n*k one-hot encoding back into a group assignment, or reports the
/// violating block counts.
PartitionDecodeReport decode_partition(std::span<const std::uint8_t> bits, int n, int k);

struct BoundaryStats {
    std::optional<double> boundary_mean;
    std::optional<double> interior_mean;
    std::size_t boundary_count = 0;
    std::size_t interior_count = 0;
};

/// Mean edge weight across group boundaries vs. inside groups.
BoundaryStats boundary_weight_stats(const Graph& g, const PartitionAssignment& assign);

}  // namespace qubopart
