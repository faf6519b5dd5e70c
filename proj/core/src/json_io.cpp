#include "dgs/json_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dgs/errors.hpp"

namespace dgs {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string(what) + ": " + e.what());
    }
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw validation_error(std::string(what) + ": cannot read file \"" + path + "\"");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

const json& require_field(const json& obj, const char* key, const char* what) {
    if (!obj.is_object()) {
        throw validation_error(std::string(what) + ": top-level value must be an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw validation_error(std::string(what) + ": missing field \"" + key + "\"");
    }
    return *it;
}

int require_int(const json& obj, const char* key, const char* what) {
    const json& field = require_field(obj, key, what);
    // bound through int64 first: get<int>() would silently wrap huge values
    if (!field.is_number_integer() || field.get<std::int64_t>() < INT32_MIN ||
        field.get<std::int64_t>() > INT32_MAX) {
        throw validation_error(std::string(what) + ": field \"" + key +
                               "\" must be an integer");
    }
    return field.get<int>();
}

double number_or_throw(const json& value, const std::string& where, const char* what) {
    if (!value.is_number()) {
        throw validation_error(std::string(what) + ": " + where + " must be a number");
    }
    return value.get<double>();
}

// Comma-separated strictly ascending player list, e.g. "1,3"; "" is the
// empty coalition.
Coalition parse_coalition_key(const std::string& key, int n) {
    Coalition members;
    int last = 0;
    std::size_t pos = 0;
    while (pos < key.size()) {
        std::size_t comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        int player = 0;
        auto [end, ec] = std::from_chars(key.data() + pos, key.data() + comma, player);
        if (ec != std::errc{} || end != key.data() + comma) {
            throw validation_error("game: values key \"" + key + "\" is not a player list");
        }
        if (player < 1 || player > n) {
            throw validation_error("game: values key \"" + key + "\" has player " +
                                   std::to_string(player) + " outside [1," +
                                   std::to_string(n) + "]");
        }
        if (player <= last) {
            throw validation_error("game: values key \"" + key +
                                   "\" must list players in strictly ascending order");
        }
        members = members.with(player);
        last = player;
        pos = comma + 1;
    }
    return members;
}

CharacteristicFunction parse_explicit_game(const json& doc, int n) {
    const json& values = require_field(doc, "values", "game");
    if (!values.is_object()) {
        throw validation_error("game: field \"values\" must be an object");
    }
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> table(size, 0.0);
    std::vector<bool> seen(size, false);
    seen[0] = true;  // the empty coalition defaults to 0
    for (const auto& [key, value] : values.items()) {
        const Coalition members = parse_coalition_key(key, n);
        const double payoff = number_or_throw(value, "values[\"" + key + "\"]", "game");
        if (members.empty() && payoff != 0.0) {
            throw validation_error("game: values[\"\"] must be 0");
        }
        table[members.mask()] = payoff;
        seen[members.mask()] = true;
    }
    for (std::size_t mask = 1; mask < size; ++mask) {
        if (!seen[mask]) {
            throw validation_error(
                "game: values is missing coalition \"" +
                coalition_key(Coalition::from_mask(static_cast<std::uint32_t>(mask))) + "\"");
        }
    }
    return CharacteristicFunction::explicit_table(n, std::move(table));
}

int checked_player_count(const json& doc, const char* what) {
    const int n = require_int(doc, "n", what);
    if (n < 1 || n > kMaxPlayers) {
        throw validation_error(std::string(what) + ": field \"n\" must be in [1," +
                               std::to_string(kMaxPlayers) + "], got " + std::to_string(n));
    }
    return n;
}

}  // namespace

Digraph parse_graph_json(const std::string& text) {
    const json doc = parse_text(text, "graph");
    const int n = checked_player_count(doc, "graph");
    const json& edges = require_field(doc, "edges", "graph");
    if (!edges.is_array()) {
        throw validation_error("graph: field \"edges\" must be an array");
    }
    std::vector<std::pair<PlayerId, PlayerId>> pairs;
    pairs.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const json& edge = edges[i];
        const auto in_range = [](const json& endpoint) {
            return endpoint.is_number_integer() && endpoint.get<std::int64_t>() >= INT32_MIN &&
                   endpoint.get<std::int64_t>() <= INT32_MAX;
        };
        if (!edge.is_array() || edge.size() != 2 || !in_range(edge[0]) || !in_range(edge[1])) {
            throw validation_error("graph: edges[" + std::to_string(i) +
                                   "] must be a pair of player ids");
        }
        pairs.emplace_back(edge[0].get<int>(), edge[1].get<int>());
    }
    return Digraph::make(n, pairs);
}

Digraph load_graph_file(const std::string& path) {
    return parse_graph_json(read_file(path, "graph"));
}

CharacteristicFunction parse_game_json(const std::string& text) {
    const json doc = parse_text(text, "game");
    const json& type = require_field(doc, "type", "game");
    if (!type.is_string()) {
        throw validation_error("game: field \"type\" must be a string");
    }
    const std::string kind = type.get<std::string>();
    const int n = checked_player_count(doc, "game");
    if (kind == "power") {
        const int k = require_int(doc, "k", "game");
        return CharacteristicFunction::power(n, k);
    }
    if (kind == "symmetric") {
        const json& f = require_field(doc, "f", "game");
        if (!f.is_array()) {
            throw validation_error("game: field \"f\" must be an array");
        }
        std::vector<double> by_size;
        by_size.reserve(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            by_size.push_back(number_or_throw(f[i], "f[" + std::to_string(i) + "]", "game"));
        }
        return CharacteristicFunction::symmetric(n, std::move(by_size));
    }
    if (kind == "explicit") {
        return parse_explicit_game(doc, n);
    }
    throw validation_error("game: unknown type \"" + kind +
                           "\" (expected power, symmetric or explicit)");
}

CharacteristicFunction load_game_file(const std::string& path) {
    return parse_game_json(read_file(path, "game"));
}

std::string coalition_key(Coalition S) {
    std::string out;
    for (PlayerId p : S) {
        if (!out.empty()) out += ',';
        out += std::to_string(p);
    }
    return out;
}

std::string outcome_to_json(const ShapleyOutcome& outcome) {
    ordered_json doc;
    doc["engine"] = engine_name(outcome.engine);
    doc["permutation_count"] = outcome.permutation_count;
    doc["allocation"] = outcome.allocation;
    return doc.dump();
}

}  // namespace dgs
