#include "qubopart/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qubopart {

long long NumberSet::total() const {
    long long c = 0;
    for (long long v : values) c += v;
    return c;
}

void NumberSet::validate() const {
    if (values.empty()) throw std::invalid_argument("number set must not be empty");
    for (long long v : values) {
        if (v < 1) throw std::invalid_argument("number set values must be >= 1");
    }
}

QuboModel build_number_partition(const NumberSet& s) {
    s.validate();
    const int n = static_cast<int>(s.values.size());
    const double c = static_cast<double>(s.total());
    std::vector<LinTerm> lin;
    lin.reserve(static_cast<std::size_t>(n));
    std::vector<QuadTerm> quad;
    quad.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        const double si = static_cast<double>(s.values[static_cast<std::size_t>(i)]);
        lin.push_back({i, 4.0 * si * (si - c)});
        for (int j = i + 1; j < n; ++j) {
            quad.push_back({i, j, 4.0 * si * static_cast<double>(s.values[static_cast<std::size_t>(j)])});
        }
    }
    return build_model(n, quad, lin, c * c);
}

NumberPartitionDecode decode_number_partition(const NumberSet& s,
                                              std::span<const std::uint8_t> bits) {
    if (bits.size() != s.values.size()) {
        throw std::invalid_argument("bit vector length does not match the number set");
    }
    NumberPartitionDecode out;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out.sum_a += s.values[i];
    }
    out.sum_b = s.total() - out.sum_a;
    out.d = std::llabs(out.sum_b - out.sum_a);
    return out;
}

ModularityMatrix modularity_matrix(const Graph& g, double gamma) {
    const double two_m = g.total_weight_2m();
    if (!(two_m > 0.0)) {
        throw std::invalid_argument("modularity requires a graph with positive total weight");
    }
    ModularityMatrix m;
    m.n = g.num_nodes();
    m.two_m = two_m;
    const std::size_t n = static_cast<std::size_t>(m.n);
    m.b.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double ki = g.weighted_degree(static_cast<int>(i));
        for (std::size_t j = 0; j < n; ++j) {
            m.b[i * n + j] =
                -gamma * ki * g.weighted_degree(static_cast<int>(j)) / (two_m * two_m);
        }
    }
    for (const auto& e : g.edges()) {
        m.b[static_cast<std::size_t>(e.u) * n + static_cast<std::size_t>(e.v)] += e.w / two_m;
        m.b[static_cast<std::size_t>(e.v) * n + static_cast<std::size_t>(e.u)] += e.w / two_m;
    }
    return m;
}

double modularity(const Graph& g, const PartitionAssignment& assign, double gamma) {
    if (static_cast<int>(assign.group_of.size()) != g.num_nodes()) {
        throw std::invalid_argument("assignment does not cover all nodes");
    }
    const double two_m = g.total_weight_2m();
    if (!(two_m > 0.0)) {
        throw std::invalid_argument("modularity requires a graph with positive total weight");
    }
    for (int gidx : assign.group_of) {
        if (gidx < 0 || gidx >= assign.k) throw std::invalid_argument("group index out of range");
    }
    const int k = assign.k;
    // Q = sum_{edges inside} 2w/2m - gamma * sum_groups (sum of degrees)^2/(2m)^2
    double q = 0.0;
    for (const auto& e : g.edges()) {
        if (assign.group_of[static_cast<std::size_t>(e.u)] ==
            assign.group_of[static_cast<std::size_t>(e.v)]) {
            q += 2.0 * e.w / two_m;
        }
    }
    std::vector<double> group_degree(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < g.num_nodes(); ++i) {
        group_degree[static_cast<std::size_t>(assign.group_of[static_cast<std::size_t>(i)])] +=
            g.weighted_degree(i);
    }
    for (double d : group_degree) q -= gamma * d * d / (two_m * two_m);
    return q;
}

GraphPartitionQubo build_graph_partition(const PartitionProblem& problem) {
    if (problem.k < 1) throw std::invalid_argument("group count must be >= 1");
    if (!(problem.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (problem.nonempty_lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    const ModularityMatrix b = modularity_matrix(problem.graph, problem.gamma);
    const int n = problem.graph.num_nodes();
    const int k = problem.k;

    GraphPartitionQubo out;
    out.blocks = {n, k};
    std::vector<QuadTerm> quad;
    quad.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n) *
                 static_cast<std::size_t>(n - 1) / 2);
    std::vector<LinTerm> lin;
    lin.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) {
        for (int g = 0; g < k; ++g) {
            lin.push_back({out.blocks.var(i, g), -b.at(i, i)});
        }
        for (int j = i + 1; j < n; ++j) {
            const double w = -b.at(i, j);
            if (w == 0.0) continue;
            for (int g = 0; g < k; ++g) {
                quad.push_back({out.blocks.var(i, g), out.blocks.var(j, g), w});
            }
        }
    }
    out.model = build_model(n * k, quad, lin, 0.0);
    out.constraints.reserve(static_cast<std::size_t>(k));
    for (int g = 0; g < k; ++g) {
        InequalityConstraint c;
        c.terms.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) c.terms.push_back({out.blocks.var(i, g), 1});
        c.bound = 1;
        c.lambda = problem.nonempty_lambda;
        out.constraints.push_back(std::move(c));
    }
    return out;
}

QuboModel add_one_hot_penalty(const QuboModel& model, const OneHotBlocks& blocks, double penalty) {
    if (blocks.num_vars() != model.num_vars()) {
        throw std::invalid_argument("block structure does not cover the model variables");
    }
    if (!(penalty >= 0.0)) throw std::invalid_argument("penalty must be >= 0");
    // (sum_t x_t - 1)^2 = 2*sum_{t<u} x_t x_u - sum_t x_t + 1
    std::vector<QuadTerm> quad = model.pairs();
    std::vector<LinTerm> lin;
    lin.reserve(static_cast<std::size_t>(model.num_vars()));
    for (int i = 0; i < model.num_vars(); ++i) lin.push_back({i, model.linear(i)});
    double offset = model.offset();
    for (int b = 0; b < blocks.num_blocks; ++b) {
        for (int t = 0; t < blocks.block_size; ++t) {
            lin.push_back({blocks.var(b, t), -penalty});
            for (int u = t + 1; u < blocks.block_size; ++u) {
                quad.push_back({blocks.var(b, t), blocks.var(b, u), penalty});
            }
        }
        offset += penalty;
    }
    return build_model(model.num_vars(), quad, lin, offset);
}

double default_one_hot_penalty(const ModularityMatrix& b) {
    double max_row = 0.0;
    for (int i = 0; i < b.n; ++i) {
        double row = 0.0;
        for (int j = 0; j < b.n; ++j) row += std::abs(b.at(i, j));
        max_row = std::max(max_row, row);
    }
    return 2.0 * max_row;
}

PartitionDecodeReport decode_partition(std::span<const std::uint8_t> bits, int n, int k) {
    if (static_cast<std::size_t>(n) * static_cast<std::size_t>(k) != bits.size()) {
        throw std::invalid_argument("bit vector length does not match n*k");
    }
    PartitionDecodeReport rep;
    rep.assignment.k = k;
    rep.assignment.group_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int count = 0;
        int slot = -1;
        for (int g = 0; g < k; ++g) {
            if (bits[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) +
                     static_cast<std::size_t>(g)]) {
                ++count;
                slot = g;
            }
        }
        if (count == 0) ++rep.zero_hot_blocks;
        if (count > 1) ++rep.multi_hot_blocks;
        rep.assignment.group_of[static_cast<std::size_t>(i)] = slot;
    }
    rep.feasible = rep.zero_hot_blocks == 0 && rep.multi_hot_blocks == 0;
    return rep;
}

BoundaryStats boundary_weight_stats(const Graph& g, const PartitionAssignment& assign) {
    if (static_cast<int>(assign.group_of.size()) != g.num_nodes()) {
        throw std::invalid_argument("assignment does not cover all nodes");
    }
    BoundaryStats s;
    double boundary_sum = 0.0;
    double interior_sum = 0.0;
    for (const auto& e : g.edges()) {
        if (assign.group_of[static_cast<std::size_t>(e.u)] ==
            assign.group_of[static_cast<std::size_t>(e.v)]) {
            interior_sum += e.w;
            ++s.interior_count;
        } else {
            boundary_sum += e.w;
            ++s.boundary_count;
        }
    }
    if (s.boundary_count > 0) s.boundary_mean = boundary_sum / static_cast<double>(s.boundary_count);
    if (s.interior_count > 0) s.interior_mean = interior_sum / static_cast<double>(s.interior_count);
    return s;
}

}  // namespace qubopart
