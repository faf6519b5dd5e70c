#pragma once

#include <string>

#include "dgs/digraph.hpp"
#include "dgs/game.hpp"
#include "dgs/shapley.hpp"

namespace dgs {

// Graph files look like {"n": 3, "edges": [[1,2],[2,3],[3,1]]} with 1-based
// endpoints; the order of the edge list is irrelevant.
Digraph parse_graph_json(const std::string& text);
Digraph load_graph_file(const std::string& path);

// Game files come in three shapes:
//   {"type":"power","n":3,"k":2}
//   {"type":"symmetric","n":3,"f":[0,1,4,9]}
//   {"type":"explicit","n":2,"values":{"":0,"1":1,"2":2,"1,2":5}}
// Explicit keys are comma-separated ascending player lists; every nonempty
// coalition must be present; the ""-key may be omitted and defaults to 0.
CharacteristicFunction parse_game_json(const std::string& text);
CharacteristicFunction load_game_file(const std::string& path);

// Ascending member list, e.g. "1,3"; the empty coalition renders as "".
std::string coalition_key(Coalition S);

// {"engine":"dp","permutation_count":3,"allocation":[3.0,3.0,3.0]};
// allocation index p-1 belongs to player p. Always decimal.
std::string outcome_to_json(const ShapleyOutcome& outcome);

}  // namespace dgs
