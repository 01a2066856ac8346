#include "qubopart/graph.hpp"

#include <sstream>

namespace qubopart {

namespace {

// 34 members, 78 ties; weights are shared interaction contexts (Zachary 1977).
const char* const kKarateEdges =
    "0 1 4\n"
    "0 2 5\n"
    "0 3 3\n"
    "0 4 3\n"
    "0 5 3\n"
    "0 6 3\n"
    "0 7 2\n"
    "0 8 2\n"
    "0 10 2\n"
    "0 11 3\n"
    "0 12 1\n"
    "0 13 3\n"
    "0 17 2\n"
    "0 19 2\n"
    "0 21 2\n"
    "0 31 2\n"
    "1 2 6\n"
    "1 3 3\n"
    "1 7 4\n"
    "1 13 5\n"
    "1 17 1\n"
    "1 19 2\n"
    "1 21 2\n"
    "1 30 2\n"
    "2 3 3\n"
    "2 7 4\n"
    "2 8 5\n"
    "2 9 1\n"
    "2 13 3\n"
    "2 27 2\n"
    "2 28 2\n"
    "2 32 2\n"
    "3 7 3\n"
    "3 12 3\n"
    "3 13 3\n"
    "4 6 2\n"
    "4 10 3\n"
    "5 6 5\n"
    "5 10 3\n"
    "5 16 3\n"
    "6 16 3\n"
    "8 30 3\n"
    "8 32 3\n"
    "8 33 4\n"
    "9 33 2\n"
    "13 33 3\n"
    "14 32 3\n"
    "14 33 2\n"
    "15 32 3\n"
    "15 33 1\n"
    "18 32 1\n"
    "18 33 2\n"
    "19 33 1\n"
    "20 32 3\n"
    "20 33 1\n"
    "22 32 2\n"
    "22 33 3\n"
    "23 25 5\n"
    "23 27 3\n"
    "23 29 4\n"
    "23 32 5\n"
    "23 33 4\n"
    "24 25 2\n"
    "24 27 3\n"
    "24 31 2\n"
    "25 31 7\n"
    "26 29 4\n"
    "26 33 2\n"
    "27 33 4\n"
    "28 31 2\n"
    "28 33 2\n"
    "29 32 4\n"
    "29 33 2\n"
    "30 32 3\n"
    "30 33 3\n"
    "31 32 4\n"
    "31 33 4\n"
    "32 33 5\n";

}  // namespace

Graph karate_club() {
    std::istringstream in(kKarateEdges);
    return load_edge_list(in);
}

}  // namespace qubopart
