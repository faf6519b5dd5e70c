#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <dgs/errors.hpp>
#include <dgs/json_io.hpp>
#include <dgs/permutations.hpp>
#include <dgs/shapley.hpp>

namespace {

using dgs::CharacteristicFunction;
using dgs::Digraph;
using dgs::Engine;
using dgs::EntryOrder;
using dgs::ShapleyOutcome;

unsigned thread_cap_from_env() {
    const char* raw = std::getenv("DIGRAPH_SHAPLEY_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(raw, &end, 10);
    if (*end != '\0' || parsed > 1024) {
        throw dgs::validation_error(
            "DIGRAPH_SHAPLEY_THREADS must be a small nonnegative integer, got \"" +
            std::string(raw) + "\"");
    }
    return static_cast<unsigned>(parsed);
}

// --game takes a path, or inline JSON starting with '{'.
CharacteristicFunction load_game(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return dgs::parse_game_json(arg);
    return dgs::load_game_file(arg);
}

std::string decimal6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Reduced fraction, or "" when it reduces to an integer (the decimal column
// is already exact then).
std::string fraction(std::int64_t numerator, std::uint64_t denominator) {
    const std::uint64_t magnitude =
        numerator < 0 ? static_cast<std::uint64_t>(-(numerator + 1)) + 1
                      : static_cast<std::uint64_t>(numerator);
    const std::uint64_t g = std::gcd(magnitude, denominator);
    const std::uint64_t den = denominator / g;
    if (den == 1) return "";
    const std::uint64_t num = magnitude / g;
    return (numerator < 0 ? "-" : "") + std::to_string(num) + "/" + std::to_string(den);
}

ShapleyOutcome run_engine(const std::string& engine, const CharacteristicFunction& v,
                          const Digraph& g, bool force, unsigned threads) {
    if (engine == "enum") return dgs::shapley_enumeration(v, g, force);
    if (engine == "dp") return dgs::shapley_subset_dp(v, g, threads);
    if (engine == "closed-form") return dgs::shapley_closed_form(v, g);
    if (engine == "oracle") return dgs::shapley_oracle(v, g, force);
    // auto: subset DP beyond small n
    if (g.player_count() > 8) return dgs::shapley_subset_dp(v, g, threads);
    return dgs::shapley_enumeration(v, g, force);
}

void assert_engines_agree(const ShapleyOutcome& a, const ShapleyOutcome& b) {
    if (a.permutation_count != b.permutation_count) {
        throw dgs::internal_error(
            "self-check: " + std::string(dgs::engine_name(a.engine)) + " counted " +
            std::to_string(a.permutation_count) + " permutations but " +
            dgs::engine_name(b.engine) + " counted " + std::to_string(b.permutation_count));
    }
    for (std::size_t i = 0; i < a.allocation.size(); ++i) {
        const double scale =
            std::max({1.0, std::abs(a.allocation[i]), std::abs(b.allocation[i])});
        if (std::abs(a.allocation[i] - b.allocation[i]) > 1e-9 * scale) {
            throw dgs::internal_error(
                "self-check: engines disagree on player " + std::to_string(i + 1) + ": " +
                dgs::engine_name(a.engine) + " says " + decimal6(a.allocation[i]) + ", " +
                dgs::engine_name(b.engine) + " says " + decimal6(b.allocation[i]));
        }
    }
}

void print_outcome_table(const ShapleyOutcome& out) {
    std::printf("engine             %s\n", dgs::engine_name(out.engine));
    std::printf("permutation_count  %llu\n",
                static_cast<unsigned long long>(out.permutation_count));
    std::printf("player  allocation\n");
    for (std::size_t i = 0; i < out.allocation.size(); ++i) {
        std::string line = decimal6(out.allocation[i]);
        if (out.exact_numerators) {
            const std::string frac =
                fraction((*out.exact_numerators)[i], out.permutation_count);
            if (!frac.empty()) line += "  (" + frac + ")";
        }
        std::printf("%-6zu  %s\n", i + 1, line.c_str());
    }
}

std::string sequence_brackets(std::span<const dgs::PlayerId> seq) {
    std::string line = "[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) line += ',';
        line += std::to_string(seq[i]);
    }
    line += ']';
    return line;
}

std::vector<int> parse_perm_flag(const std::string& text) {
    std::vector<int> seq;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        try {
            std::size_t used = 0;
            const std::string token = text.substr(pos, comma - pos);
            const int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            seq.push_back(value);
        } catch (const std::exception&) {
            throw dgs::validation_error("perm: \"" + text +
                                        "\" is not a comma-separated player list");
        }
        pos = comma + 1;
    }
    return seq;
}

struct Options {
    std::string graph_path;
    std::string game_arg;
    std::string engine = "auto";
    std::string output = "table";
    std::string perm;
    bool self_check = false;
    bool force = false;
};

int run_value(const Options& opt) {
    const Digraph g = dgs::load_graph_file(opt.graph_path);
    const CharacteristicFunction v = load_game(opt.game_arg);
    const unsigned threads = thread_cap_from_env();

    const ShapleyOutcome out = run_engine(opt.engine, v, g, opt.force, threads);
    if (opt.self_check) {
        // pit the result against a structurally different engine
        const ShapleyOutcome other =
            out.engine == Engine::SubsetDp
                ? dgs::shapley_enumeration(v, g, opt.force)
                : dgs::shapley_subset_dp(v, g, threads);
        assert_engines_agree(out, other);
    }

    if (opt.output == "json") {
        std::printf("%s\n", dgs::outcome_to_json(out).c_str());
    } else {
        print_outcome_table(out);
    }
    return 0;
}

int run_permutations(const Options& opt) {
    const Digraph g = dgs::load_graph_file(opt.graph_path);
    if (g.player_count() > dgs::kEnumerationGuard && !opt.force) {
        throw dgs::guard_error("listing permutations is guarded at n <= " +
                               std::to_string(dgs::kEnumerationGuard) + ", got n = " +
                               std::to_string(g.player_count()) +
                               "; use --force to override");
    }
    if (opt.output == "json") {
        nlohmann::ordered_json doc;
        doc["n"] = g.player_count();
        auto perms = nlohmann::ordered_json::array();
        dgs::for_each_consistent(g, [&](std::span<const dgs::PlayerId> seq) {
            perms.push_back(std::vector<int>(seq.begin(), seq.end()));
        });
        doc["permutation_count"] = perms.size();
        doc["permutations"] = std::move(perms);
        std::printf("%s\n", doc.dump().c_str());
    } else {
        dgs::for_each_consistent(g, [&](std::span<const dgs::PlayerId> seq) {
            std::printf("%s\n", sequence_brackets(seq).c_str());
        });
    }
    return 0;
}

int run_count(const Options& opt) {
    const Digraph g = dgs::load_graph_file(opt.graph_path);
    const std::uint64_t count = dgs::count_consistent(g);
    if (opt.output == "json") {
        nlohmann::ordered_json doc;
        doc["permutation_count"] = count;
        std::printf("%s\n", doc.dump().c_str());
    } else {
        std::printf("%llu\n", static_cast<unsigned long long>(count));
    }
    return 0;
}

int run_check(const Options& opt) {
    const Digraph g = dgs::load_graph_file(opt.graph_path);
    const EntryOrder order = EntryOrder::make(parse_perm_flag(opt.perm));
    if (order.player_count() != g.player_count()) {
        throw dgs::validation_error("perm: expected " + std::to_string(g.player_count()) +
                                    " players, got " + std::to_string(order.player_count()));
    }
    const bool verdict = dgs::is_consistent(g, order);
    if (opt.output == "json") {
        nlohmann::ordered_json doc;
        doc["perm"] = std::vector<int>(order.sequence().begin(), order.sequence().end());
        doc["consistent"] = verdict;
        std::printf("%s\n", doc.dump().c_str());
    } else {
        std::printf("%s\n", verdict ? "consistent" : "inconsistent");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shapley values of digraph-restricted cooperative TU games"};
    app.require_subcommand(1);

    Options opt;

    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", opt.graph_path, "graph JSON file")->required();
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", opt.output, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    CLI::App* value = app.add_subcommand("value", "compute the Shapley value");
    add_graph(value);
    value->add_option("--game", opt.game_arg, "game JSON file or inline JSON")->required();
    value->add_option("--engine", opt.engine, "auto, enum, dp, closed-form or oracle")
        ->check(CLI::IsMember({"auto", "enum", "dp", "closed-form", "oracle"}));
    add_output(value);
    value->add_flag("--self-check", opt.self_check,
                    "run a second engine and require agreement");
    value->add_flag("--force", opt.force, "override the factorial-cost guards");

    CLI::App* permutations =
        app.add_subcommand("permutations", "list all consistent entry orders");
    add_graph(permutations);
    add_output(permutations);
    permutations->add_flag("--force", opt.force, "override the listing guard");

    CLI::App* count = app.add_subcommand("count", "count the consistent entry orders");
    add_graph(count);
    add_output(count);

    CLI::App* check = app.add_subcommand("check", "test one entry order for consistency");
    add_graph(check);
    check->add_option("--perm", opt.perm, "entry order, e.g. 3,2,1")->required();
    add_output(check);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(value)) return run_value(opt);
        if (app.got_subcommand(permutations)) return run_permutations(opt);
        if (app.got_subcommand(count)) return run_count(opt);
        return run_check(opt);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const dgs::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const dgs::guard_error& e) {
        std::cerr << "guard: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << '\n';
        return 3;
    }
}
