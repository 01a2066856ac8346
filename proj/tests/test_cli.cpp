// End-to-end checks against the built CLI binary.
// Usage: test_cli <path-to-qubopart> <data-dir>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qubopart/graph.hpp"
#include "qubopart/problems.hpp"

using nlohmann::json;

namespace {

int g_failures = 0;

#define EXPECT(cond)                                                          \
    do {                                                                      \
        if (!(cond)) {                                                        \
            ++g_failures;                                                     \
            std::cerr << "FAILED " << __FILE__ << ":" << __LINE__ << ": "     \
                      << #cond << "\n";                                       \
        }                                                                     \
    } while (0)

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << cmd << "\n";
        std::exit(1);
    }
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json strip_timing(const std::string& text) {
    json j = json::parse(text);
    j.erase("timing");
    return j;
}

std::string deterministic_dump(const std::string& text) {
    json j = json::parse(text);
    j.erase("timing");
    return j.dump();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: test_cli <qubopart-binary> <data-dir>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const std::string data = argv[2];

    {
        std::ofstream f("cli_numbers.txt");
        f << "2\n3\n5\n";
    }
    {
        std::ofstream f("cli_pair.edges");
        f << "0 1 1.0\n";
    }

    // numpart on a file with a perfect split: D = 0, exit 0 with the gate on.
    {
        auto r = run(bin + " numpart --input cli_numbers.txt --expect-optimal --seed 3"
                           " --restarts 2 --steps 500");
        EXPECT(r.exit_code == 0);
        json j = json::parse(r.out);
        EXPECT(j["schema_version"] == 1);
        const auto& res = j["results"][0];
        EXPECT(res["d"] == 0);
        EXPECT(res["sum_a"] == 5);
        EXPECT(res["sum_b"] == 5);
        EXPECT(res["best_energy"] == 0.0);
        // Self-consistency: recompute D from the emitted bits and input.
        qubopart::NumberSet s{{2, 3, 5}};
        std::vector<std::uint8_t> bits;
        for (char c : res["bits"].get<std::string>()) bits.push_back(c == '1');
        auto dec = qubopart::decode_number_partition(s, bits);
        EXPECT(dec.d == res["d"].get<long long>());
    }

    // One element: D equals that element; 1 is accepted by the gate.
    {
        std::ofstream f("cli_single.txt");
        f << "1\n";
        f.close();
        auto r = run(bin + " numpart --input cli_single.txt --expect-optimal --steps 50");
        EXPECT(r.exit_code == 0);
        EXPECT(json::parse(r.out)["results"][0]["d"] == 1);
    }

    // Generated instance under the default budget reaches D <= 1.
    {
        auto r = run(bin + " numpart --generate 200 --max-value 10000 --seed 7"
                           " --expect-optimal --threads 2");
        EXPECT(r.exit_code == 0);
        json j = json::parse(r.out);
        EXPECT(j["results"][0]["d"].get<long long>() <= 1);
        EXPECT(j["config"]["generate"] == 200);
    }

    // Expectation gate: {2} can never split better than D = 2 -> exit 2.
    {
        std::ofstream f("cli_two.txt");
        f << "2\n";
        f.close();
        auto r = run(bin + " numpart --input cli_two.txt --expect-optimal --steps 50");
        EXPECT(r.exit_code == 2);
        EXPECT(json::parse(r.out)["results"][0]["d"] == 2);
    }

    // Usage / IO errors exit 1.
    {
        auto r = run(bin + " numpart --input does_not_exist.txt");
        EXPECT(r.exit_code == 1);
        r = run(bin + " graphpart --k 2");
        EXPECT(r.exit_code == 1);
        r = run(bin + " nonsense");
        EXPECT(r.exit_code == 1);
    }

    // Deterministic report bytes for a fixed seed (timing stripped).
    {
        const std::string cmd = bin + " graphpart --builtin karate --k 4 --seed 11"
                                      " --restarts 3 --steps 2000 --threads 2";
        auto a = run(cmd);
        auto b = run(cmd);
        EXPECT(a.exit_code == 0);
        EXPECT(deterministic_dump(a.out) == deterministic_dump(b.out));
    }

    // graphpart report is self-consistent: modularity recomputable from the
    // emitted assignment and the input graph.
    {
        auto r = run(bin + " graphpart --builtin karate --k 4 --seed 5 --restarts 4"
                           " --steps 4000");
        EXPECT(r.exit_code == 0);
        json j = strip_timing(r.out);
        const auto& res = j["results"][0];
        EXPECT(res["feasible"] == true);
        auto g = qubopart::karate_club();
        qubopart::PartitionAssignment assign;
        assign.k = 4;
        assign.group_of.assign(g.num_nodes(), 0);
        for (auto& [key, group] : res["assignment"].items()) {
            assign.group_of[std::stoi(key)] = group.get<int>();
        }
        const double q = qubopart::modularity(g, assign, 1.0);
        EXPECT(std::abs(q - res["modularity"].get<double>()) < 1e-9);
    }

    // K = 1 on a two-node graph: trivial partition, modularity 0.
    {
        auto r = run(bin + " graphpart --edges cli_pair.edges --k 1 --steps 100");
        EXPECT(r.exit_code == 0);
        json j = json::parse(r.out);
        EXPECT(std::abs(j["results"][0]["modularity"].get<double>()) < 1e-12);
    }

    // Penalty mode with a one-step budget cannot repair an infeasible start:
    // the report flags the violating blocks and the exit code is 3.
    {
        auto r = run(bin + " graphpart --edges cli_pair.edges --k 2 --onehot penalty"
                           " --steps 1 --restarts 1 --t-start 100 --seed 0");
        EXPECT(r.exit_code == 3);
        json j = json::parse(r.out);
        EXPECT(j["results"][0]["feasible"] == false);
        EXPECT(j["results"][0]["modularity"].is_null());
        EXPECT(j["results"][0]["zero_hot_blocks"].get<int>() +
                   j["results"][0]["multi_hot_blocks"].get<int>() >
               0);
    }

    // Electrical input keys the assignment by original bus id.
    {
        auto r = run(bin + " graphpart --electrical " + data +
                     "/ieee33_lines.csv --k 2 --steps 2000 --seed 1");
        EXPECT(r.exit_code == 0);
        json j = json::parse(r.out);
        EXPECT(j["results"][0]["assignment"].contains("33"));
        EXPECT(!j["results"][0]["assignment"].contains("0"));
    }

    // sweepk: CSV table shape and JSON argmax bookkeeping.
    {
        auto r = run(bin + " sweepk --builtin karate --k-min 2 --k-max 3 --steps 1500"
                           " --seed 9 --format csv");
        EXPECT(r.exit_code == 0);
        std::istringstream lines(r.out);
        std::string header;
        std::getline(lines, header);
        EXPECT(header == "k,modularity,best_energy,feasible,seconds");
        int rows = 0;
        std::string row;
        while (std::getline(lines, row)) {
            if (!row.empty()) ++rows;
        }
        EXPECT(rows == 2);

        auto rj = run(bin + " sweepk --builtin karate --k-min 2 --k-max 3 --steps 1500"
                            " --seed 9");
        json j = json::parse(rj.out);
        EXPECT(j["summary"].contains("argmax_k"));
        double best = -1e9;
        int argmax = -1;
        for (const auto& row_json : j["results"]) {
            if (row_json["feasible"].get<bool>() &&
                row_json["modularity"].get<double>() > best) {
                best = row_json["modularity"].get<double>();
                argmax = row_json["k"].get<int>();
            }
        }
        EXPECT(j["summary"]["argmax_k"].get<int>() == argmax);
    }

    // --out writes the same JSON to a file.
    {
        auto r = run(bin + " numpart --input cli_numbers.txt --seed 3 --steps 200"
                           " --out cli_report.json");
        EXPECT(r.exit_code == 0);
        std::ifstream f("cli_report.json");
        EXPECT(f.good());
        json j = json::parse(f);
        EXPECT(j["command"] == "numpart");
    }

    if (g_failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << g_failures << " failures\n";
    return 1;
}
