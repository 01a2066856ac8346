#include "qubopart/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qubopart {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("negative node count");
    for (auto& e : edges_) {
        if (e.u == e.v) {
            throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        }
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (!(e.w > 0.0) || !std::isfinite(e.w)) {
            throw std::invalid_argument("edge weight must be positive and finite");
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
            throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                                        std::to_string(edges_[i].v) + ")");
        }
    }
    degrees_.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : edges_) {
        degrees_[static_cast<std::size_t>(e.u)] += e.w;
        degrees_[static_cast<std::size_t>(e.v)] += e.w;
        two_m_ += 2.0 * e.w;
    }
}

Graph load_edge_list(std::istream& in) {
    std::map<std::pair<int, int>, double> merged;
    int max_id = -1;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        double w = 1.0;
        if (!(ls >> v)) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected \"u v [w]\"");
        }
        ls >> w;
        std::string rest;
        if (ls >> rest) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": trailing tokens");
        }
        if (u < 0 || v < 0) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": negative node id");
        }
        if (u == v) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) + ": self-loop");
        }
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": non-positive weight");
        }
        auto a = static_cast<int>(std::min(u, v));
        auto b = static_cast<int>(std::max(u, v));
        merged[{a, b}] += w;
        max_id = std::max(max_id, b);
    }
    std::vector<Edge> edges;
    edges.reserve(merged.size());
    for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
    return Graph(max_id + 1, std::move(edges));
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out.precision(17);
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << e.w << '\n';
    }
}

ElectricalNetwork load_electrical_lines(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("electrical CSV: empty input");
    }
    // Tolerate a UTF-8 BOM and trailing carriage return in the header.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != "from_bus,to_bus,r_ohm,x_ohm") {
        throw std::runtime_error("electrical CSV: expected header from_bus,to_bus,r_ohm,x_ohm");
    }

    ElectricalNetwork net;
    std::map<long long, int> index_of;
    std::map<std::pair<int, int>, double> first_weight;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        ElectricalLine rec;
        char c1, c2, c3;
        if (!(ls >> rec.from_bus >> c1 >> rec.to_bus >> c2 >> rec.r >> c3 >> rec.x) ||
            c1 != ',' || c2 != ',' || c3 != ',') {
            throw std::runtime_error("electrical CSV line " + std::to_string(line_no) +
                                     ": malformed row");
        }
        if (rec.from_bus == rec.to_bus) {
            throw std::runtime_error("electrical CSV line " + std::to_string(line_no) +
                                     ": self-loop");
        }
        if (rec.r == 0.0 && rec.x == 0.0) {
            throw std::runtime_error("electrical CSV line " + std::to_string(line_no) +
                                     ": r and x both zero (infinite weight)");
        }
        if (rec.r < 0.0 || !std::isfinite(rec.r) || !std::isfinite(rec.x)) {
            throw std::runtime_error("electrical CSV line " + std::to_string(line_no) +
                                     ": invalid impedance");
        }
        for (long long bus : {rec.from_bus, rec.to_bus}) {
            if (index_of.find(bus) == index_of.end()) {
                index_of[bus] = static_cast<int>(net.bus_ids.size());
                net.bus_ids.push_back(bus);
            }
        }
        int a = index_of[rec.from_bus];
        int b = index_of[rec.to_bus];
        if (a > b) std::swap(a, b);
        // Parallel lines between the same pair: keep the first occurrence.
        first_weight.emplace(std::pair(a, b), 1.0 / std::hypot(rec.r, rec.x));
    }
    std::vector<Edge> edges;
    edges.reserve(first_weight.size());
    for (const auto& [key, w] : first_weight) edges.push_back({key.first, key.second, w});
    net.graph = Graph(static_cast<int>(net.bus_ids.size()), std::move(edges));
    return net;
}

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.n = g.num_nodes();
    s.edge_count = g.edges().size();
    s.total_weight_2m = g.total_weight_2m();
    if (!g.edges().empty()) {
        double sum = 0.0;
        s.min_weight = g.edges().front().w;
        s.max_weight = s.min_weight;
        for (const auto& e : g.edges()) {
            sum += e.w;
            s.min_weight = std::min(s.min_weight, e.w);
            s.max_weight = std::max(s.max_weight, e.w);
        }
        s.mean_weight = sum / static_cast<double>(s.edge_count);
    }
    return s;
}

}  // namespace qubopart
