#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qubopart/graph.hpp"
#include "qubopart/problems.hpp"

using namespace qubopart;

namespace {

std::ifstream open_data(const std::string& name) {
    std::ifstream in(std::string(QUBOPART_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    return in;
}

}  // namespace

TEST_CASE("load_edge_list parses unweighted lines with default weight 1") {
    std::istringstream in("0 1\n1 2\n");
    auto g = load_edge_list(in);
    CHECK(g.num_nodes() == 3);
    CHECK(g.edges().size() == 2);
    CHECK(g.weighted_degree(0) == 1.0);
    CHECK(g.weighted_degree(1) == 2.0);
    CHECK(g.weighted_degree(2) == 1.0);
}

TEST_CASE("load_edge_list merges duplicate undirected edges by summing") {
    std::istringstream in("0 1 2.5\n1 0 0.5\n");
    auto g = load_edge_list(in);
    CHECK(g.edges().size() == 1);
    CHECK(g.edges()[0].w == 3.0);
}

TEST_CASE("load_edge_list skips comments and blank lines") {
    std::istringstream in("# header\n0 1 2.0  # inline\n\n2 3\n");
    auto g = load_edge_list(in);
    CHECK(g.num_nodes() == 4);
    CHECK(g.edges().size() == 2);
}

TEST_CASE("load_edge_list reports the offending line") {
    SUBCASE("self-loop") {
        std::istringstream in("0 1\n0 0 1.0\n");
        CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 2"), std::runtime_error);
    }
    SUBCASE("malformed line") {
        std::istringstream in("0\n");
        CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
    }
    SUBCASE("non-positive weight") {
        std::istringstream in("0 1 0.0\n");
        CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
    }
    SUBCASE("negative id") {
        std::istringstream in("-1 1\n");
        CHECK_THROWS_AS(load_edge_list(in), std::runtime_error);
    }
}

TEST_CASE("edge list round-trips exactly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    std::vector<Edge> edges;
    for (int i = 0; i < 12; ++i) {
        for (int j = i + 1; j < 12; ++j) {
            if (rng() % 3 == 0) edges.push_back({i, j, w(rng)});
        }
    }
    edges.push_back({0, 11, 1.0 / 3.0});
    Graph g(12, edges);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    auto g2 = load_edge_list(in);
    REQUIRE(g2.num_nodes() == g.num_nodes());
    REQUIRE(g2.edges().size() == g.edges().size());
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        CHECK(g2.edges()[i].u == g.edges()[i].u);
        CHECK(g2.edges()[i].v == g.edges()[i].v);
        CHECK(g2.edges()[i].w == g.edges()[i].w);
    }
}

TEST_CASE("degree identity holds for loaded graphs") {
    std::istringstream in("0 1 0.5\n1 2 1.5\n0 2 2.0\n");
    auto g = load_edge_list(in);
    double degree_sum = 0.0;
    for (int i = 0; i < g.num_nodes(); ++i) degree_sum += g.weighted_degree(i);
    CHECK(degree_sum == g.total_weight_2m());
    CHECK(g.total_weight_2m() == 8.0);
}

TEST_CASE("Graph constructor rejects invalid edges") {
    CHECK_THROWS_AS(Graph(2, {{0, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1, 1.0}, {1, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 3, 1.0}}), std::invalid_argument);
}

TEST_CASE("load_electrical_lines computes inverse impedance weights") {
    std::istringstream in("from_bus,to_bus,r_ohm,x_ohm\n1,2,3.0,4.0\n");
    auto net = load_electrical_lines(in);
    CHECK(net.graph.num_nodes() == 2);
    REQUIRE(net.graph.edges().size() == 1);
    CHECK(net.graph.edges()[0].w == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(net.bus_ids == std::vector<long long>{1, 2});
}

TEST_CASE("load_electrical_lines keeps the first of parallel lines") {
    std::istringstream in("from_bus,to_bus,r_ohm,x_ohm\n1,2,3.0,4.0\n2,1,1.0,0.0\n");
    auto net = load_electrical_lines(in);
    REQUIRE(net.graph.edges().size() == 1);
    CHECK(net.graph.edges()[0].w == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("load_electrical_lines rejects bad rows") {
    SUBCASE("zero impedance") {
        std::istringstream in("from_bus,to_bus,r_ohm,x_ohm\n1,2,0.0,0.0\n");
        CHECK_THROWS_AS(load_electrical_lines(in), std::runtime_error);
    }
    SUBCASE("bad header") {
        std::istringstream in("a,b,r,x\n1,2,1.0,1.0\n");
        CHECK_THROWS_AS(load_electrical_lines(in), std::runtime_error);
    }
    SUBCASE("malformed row") {
        std::istringstream in("from_bus,to_bus,r_ohm,x_ohm\n1;2;1.0;1.0\n");
        CHECK_THROWS_AS(load_electrical_lines(in), std::runtime_error);
    }
}

TEST_CASE("bus ids are remapped densely in first-appearance order") {
    std::istringstream in("from_bus,to_bus,r_ohm,x_ohm\n10,5,1.0,0.0\n5,77,0.0,2.0\n");
    auto net = load_electrical_lines(in);
    CHECK(net.bus_ids == std::vector<long long>{10, 5, 77});
    CHECK(net.graph.num_nodes() == 3);
}

TEST_CASE("karate_club returns the bundled weighted network") {
    auto g = karate_club();
    CHECK(g.num_nodes() == 34);
    CHECK(g.edges().size() == 78);
    for (const auto& e : g.edges()) CHECK(e.w >= 1.0);
    PartitionAssignment one_group{std::vector<int>(34, 0), 1};
    CHECK(modularity(g, one_group, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("karate_club matches data/karate.edges") {
    auto bundled = karate_club();
    auto in = open_data("karate.edges");
    auto from_file = load_edge_list(in);
    REQUIRE(from_file.num_nodes() == bundled.num_nodes());
    REQUIRE(from_file.edges().size() == bundled.edges().size());
    for (std::size_t i = 0; i < bundled.edges().size(); ++i) {
        CHECK(from_file.edges()[i].u == bundled.edges()[i].u);
        CHECK(from_file.edges()[i].v == bundled.edges()[i].v);
        CHECK(from_file.edges()[i].w == bundled.edges()[i].w);
    }
}

TEST_CASE("bundled 33-bus data loads as a 33-node tree") {
    auto in = open_data("ieee33_lines.csv");
    auto net = load_electrical_lines(in);
    CHECK(net.graph.num_nodes() == 33);
    CHECK(net.graph.edges().size() == 32);
    for (const auto& e : net.graph.edges()) {
        CHECK(e.w > 0.0);
        CHECK(std::isfinite(e.w));
    }
}

TEST_CASE("bundled 118-bus data loads with parallel circuits excluded") {
    auto in = open_data("ieee118_lines.csv");
    auto net = load_electrical_lines(in);
    CHECK(net.graph.num_nodes() == 118);
    CHECK(net.graph.edges().size() == 179);
    for (const auto& e : net.graph.edges()) CHECK(e.w > 0.0);
}

TEST_CASE("graph_stats summarizes weights") {
    SUBCASE("edgeless graph") {
        Graph g(3, {});
        auto s = graph_stats(g);
        CHECK(s.total_weight_2m == 0.0);
        CHECK(s.edge_count == 0);
    }
    SUBCASE("unit triangle") {
        Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
        auto s = graph_stats(g);
        CHECK(s.total_weight_2m == 6.0);
        CHECK(s.mean_weight == 1.0);
        CHECK(s.min_weight == 1.0);
        CHECK(s.max_weight == 1.0);
    }
}
