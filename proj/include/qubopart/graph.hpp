#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qubopart {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

/// Weighted undirected simple graph. Edges are normalized to u < v and kept
/// sorted; weighted degrees and the total weight 2m = sum_i k_i are cached at
/// construction. Immutable afterwards.
class Graph {
  public:
    Graph() = default;

    /// Throws std::invalid_argument on self-loops, duplicate pairs,
    /// out-of-range endpoints or non-positive/non-finite weights.
    Graph(int n, std::vector<Edge> edges);

    int num_nodes() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    double weighted_degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& weighted_degrees() const { return degrees_; }
    double total_weight_2m() const { return two_m_; }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> degrees_;
    double two_m_ = 0.0;
};

/// Parses whitespace-separated "u v [w]" lines (w defaults to 1.0); '#'
/// starts a comment line. Node count is 1 + max id; duplicate undirected
/// edges are merged by summing their weights. Reports the offending line
/// number on errors (malformed line, self-loop, non-positive weight).
Graph load_edge_list(std::istream& in);

/// Writes edges as "u v w" with round-trip-exact weights.
void write_edge_list(const Graph& g, std::ostream& out);

struct ElectricalLine {
    long long from_bus = 0;
    long long to_bus = 0;
    double r = 0.0;
    double x = 0.0;
};

struct ElectricalNetwork {
    Graph graph;
    /// Original bus id of each node index (dense remap, first-appearance order).
    std::vector<long long> bus_ids;
};

/// Parses CSV with header "from_bus,to_bus,r_ohm,x_ohm". Edge weight is the
/// inverse impedance magnitude 1/sqrt(r^2 + x^2). Parallel lines between the
/// same bus pair are excluded by keeping the first occurrence. Throws on
/// r = x = 0, self-loops and malformed rows.
ElectricalNetwork load_electrical_lines(std::istream& in);

/// Zachary's karate club network with the original interaction-strength
/// weights: 34 nodes, 78 edges. Identical to the bundled data/karate.edges.
Graph karate_club();

struct GraphStats {
    int n = 0;
    std::size_t edge_count = 0;
    double total_weight_2m = 0.0;
    double min_weight = 0.0;
    double max_weight = 0.0;
    double mean_weight = 0.0;
};

GraphStats graph_stats(const Graph& g);

}  // namespace qubopart
