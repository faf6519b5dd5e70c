#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output;  // stdout and stderr interleaved
};

RunResult run_raw(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

RunResult run_cli(const std::string& args) {
    return run_raw(std::string(DGS_CLI_PATH) + " " + args + " 2>&1");
}

class Fixture {
public:
    Fixture() {
        dir_ = fs::temp_directory_path() / ("dgs_cli_tests_" + std::to_string(getpid()));
        fs::create_directories(dir_);
        write("cycle3.json", R"({"n":3,"edges":[[1,2],[2,3],[3,1]]})");
        write("cycle5.json", R"({"n":5,"edges":[[1,2],[2,3],[3,4],[4,5],[5,1]]})");
        write("path3.json", R"({"n":3,"edges":[[1,2],[2,3]]})");
        write("broken.json", R"({"n":3,)");
        write("selfloop.json", R"({"n":3,"edges":[[1,1]]})");
        write("power32.json", R"({"type":"power","n":3,"k":2})");
        std::string edges11 = "[";
        for (int p = 1; p <= 11; ++p) {
            if (p > 1) edges11 += ',';
            edges11 += "[" + std::to_string(p) + "," + std::to_string(p % 11 + 1) + "]";
        }
        edges11 += "]";
        write("cycle11.json", R"({"n":11,"edges":)" + edges11 + "}");
    }
    ~Fixture() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(dir_ / name);
        out << content;
    }
    fs::path dir_;
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

}  // namespace

TEST_CASE("value prints the documented table") {
    const auto r = run_cli("value --graph " + fixture().path("cycle3.json") +
                           " --game '{\"type\":\"power\",\"n\":3,\"k\":2}' --engine dp");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "engine             dp\n"
          "permutation_count  3\n"
          "player  allocation\n"
          "1       3\n"
          "2       3\n"
          "3       3\n");
}

TEST_CASE("value adds fractions when the allocation is not integral") {
    const auto r = run_cli("value --graph " + fixture().path("cycle3.json") +
                           " --game '{\"type\":\"power\",\"n\":3,\"k\":0}' --engine enum");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1       0.333333  (1/3)\n") != std::string::npos);
}

TEST_CASE("value emits the documented JSON and it round-trips") {
    const auto r = run_cli("value --graph " + fixture().path("cycle3.json") +
                           " --game " + fixture().path("power32.json") +
                           " --engine dp --output json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["engine"] == "dp");
    CHECK(doc["permutation_count"] == 3);
    const auto allocation = doc["allocation"].get<std::vector<double>>();
    REQUIRE(allocation.size() == 3);
    double sum = 0.0;
    for (double x : allocation) sum += x;
    CHECK(std::abs(sum - 9.0) <= 1e-9 * 9.0);  // v(N) = 3^2
}

TEST_CASE("inline games and game files are interchangeable") {
    const std::string base = "value --graph " + fixture().path("cycle3.json") +
                             " --engine dp --output json --game ";
    const auto inline_game = run_cli(base + "'{\"type\":\"power\",\"n\":3,\"k\":2}'");
    const auto file_game = run_cli(base + fixture().path("power32.json"));
    CHECK(inline_game.exit_code == 0);
    CHECK(inline_game.output == file_game.output);
}

TEST_CASE("permutations lists the published 3-cycle set in order") {
    const auto r = run_cli("permutations --graph " + fixture().path("cycle3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output == "[1,3,2]\n[2,1,3]\n[3,2,1]\n");

    const auto j = run_cli("permutations --graph " + fixture().path("cycle3.json") +
                           " --output json");
    const auto doc = nlohmann::json::parse(j.output);
    CHECK(doc["permutation_count"] == 3);
    CHECK(doc["permutations"][0] == nlohmann::json::parse("[1,3,2]"));
}

TEST_CASE("count prints the exact number") {
    const auto r = run_cli("count --graph " + fixture().path("cycle5.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output == "5\n");

    const auto j = run_cli("count --graph " + fixture().path("cycle5.json") +
                           " --output json");
    CHECK(j.output == "{\"permutation_count\":5}\n");
}

TEST_CASE("check reports a verdict with exit 0 either way") {
    const auto bad = run_cli("check --graph " + fixture().path("cycle3.json") +
                             " --perm 1,2,3");
    CHECK(bad.exit_code == 0);
    CHECK(bad.output == "inconsistent\n");

    const auto good = run_cli("check --graph " + fixture().path("cycle3.json") +
                              " --perm 1,3,2 --output json");
    CHECK(good.exit_code == 0);
    CHECK(good.output == "{\"perm\":[1,3,2],\"consistent\":true}\n");
}

TEST_CASE("validation problems exit 1 with a diagnostic") {
    CHECK(run_cli("value --graph /does/not/exist.json --game '{\"type\":\"power\",\"n\":3,\"k\":2}'")
              .exit_code == 1);

    const auto broken = run_cli("count --graph " + fixture().path("broken.json"));
    CHECK(broken.exit_code == 1);
    CHECK(broken.output.find("graph") != std::string::npos);

    const auto loop = run_cli("count --graph " + fixture().path("selfloop.json"));
    CHECK(loop.exit_code == 1);
    CHECK(loop.output.find("self-loop") != std::string::npos);

    const auto mismatch = run_cli("value --graph " + fixture().path("cycle3.json") +
                                  " --game '{\"type\":\"power\",\"n\":4,\"k\":2}'");
    CHECK(mismatch.exit_code == 1);

    const auto badperm = run_cli("check --graph " + fixture().path("cycle3.json") +
                                 " --perm 1,2,x");
    CHECK(badperm.exit_code == 1);

    const auto badengine = run_cli("value --graph " + fixture().path("cycle3.json") +
                                   " --game " + fixture().path("power32.json") +
                                   " --engine magic");
    CHECK(badengine.exit_code == 1);

    const auto notcycle = run_cli("value --graph " + fixture().path("path3.json") +
                                  " --game " + fixture().path("power32.json") +
                                  " --engine closed-form");
    CHECK(notcycle.exit_code == 1);
    CHECK(notcycle.output.find("single directed cycle") != std::string::npos);
}

TEST_CASE("guards exit 2 and name the override") {
    const auto guarded = run_cli("permutations --graph " + fixture().path("cycle11.json"));
    CHECK(guarded.exit_code == 2);
    CHECK(guarded.output.find("--force") != std::string::npos);

    const auto forced = run_cli("permutations --graph " + fixture().path("cycle11.json") +
                                " --force");
    CHECK(forced.exit_code == 0);
    CHECK(forced.output.find("[1,11,10,9,8,7,6,5,4,3,2]\n") == 0);

    const auto enum_guarded = run_cli("value --graph " + fixture().path("cycle11.json") +
                                      " --game '{\"type\":\"power\",\"n\":11,\"k\":1}'"
                                      " --engine enum");
    CHECK(enum_guarded.exit_code == 2);
    CHECK(enum_guarded.output.find("--force") != std::string::npos);
}

TEST_CASE("self-check passes when the engines agree") {
    const auto r = run_cli("value --graph " + fixture().path("cycle5.json") +
                           " --game '{\"type\":\"power\",\"n\":5,\"k\":3}'"
                           " --engine dp --self-check --output json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["permutation_count"] == 5);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    const std::string cmd = "value --graph " + fixture().path("cycle5.json") +
                            " --game '{\"type\":\"power\",\"n\":5,\"k\":4}'"
                            " --engine dp --output json";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    // the thread cap must not change the numbers
    const auto capped = run_raw("env DIGRAPH_SHAPLEY_THREADS=3 " + std::string(DGS_CLI_PATH) +
                                " " + cmd + " 2>&1");
    CHECK(capped.output == first.output);
}
