#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "dgs/coalition.hpp"

namespace dgs {

class SubgraphView;

// Directed graph on players 1..n. No self-loops, no parallel edges,
// n <= kMaxPlayers. Immutable after construction; every query is pure and
// safe for concurrent readers.
//
// Reachability queries are relative to a coalition S: only paths whose
// vertices all lie in S count. Dominance follows the one-way-reachability
// definition: i dominates j within S iff i reaches j but j does not reach i.
class Digraph {
public:
    static Digraph make(int n, const std::vector<std::pair<PlayerId, PlayerId>>& edges);

    int player_count() const { return n_; }
    Coalition players() const { return Coalition::all(n_); }

    bool has_edge(PlayerId from, PlayerId to) const;
    Coalition out_neighbors(PlayerId p) const;
    Coalition in_neighbors(PlayerId p) const;
    std::vector<std::pair<PlayerId, PlayerId>> edges() const;

    /// Players of S \ {i} reachable from i by a directed path inside S.
    Coalition successors(Coalition S, PlayerId i) const;
    /// successors(S, i) plus i itself.
    Coalition closed_successors(Coalition S, PlayerId i) const;
    /// Players of S \ {i} from which i is reachable by a directed path inside S.
    Coalition predecessors(Coalition S, PlayerId i) const;

    /// True iff i reaches j within S and j does not reach i. Requires
    /// i, j in S and i != j.
    bool dominates(Coalition S, PlayerId i, PlayerId j) const;
    /// True iff some member of S dominates i within S.
    bool is_dominated(Coalition S, PlayerId i) const;
    /// Members of S dominated by nobody in S. Nonempty for nonempty S: every
    /// source strongly connected component of the restriction contributes.
    Coalition undominated(Coalition S) const;

    SubgraphView restricted_to(Coalition S) const;

    /// True iff the graph is exactly one directed cycle through all players
    /// (every in- and out-degree is 1 and the edges form a single cycle).
    bool is_single_cycle() const;

private:
    Digraph() = default;

    int n_ = 0;
    std::array<std::uint32_t, kMaxPlayers> out_{};  // out_[p-1]: direct out-neighbors of p
    std::array<std::uint32_t, kMaxPlayers> in_{};
};

// Induced subgraph on a coalition: the members keep their base-graph labels,
// and an edge survives iff both endpoints are members.
class SubgraphView {
public:
    SubgraphView(const Digraph& base, Coalition players)
        : base_(&base), players_(players) {}

    Coalition players() const { return players_; }
    int player_count() const { return players_.size(); }

    bool has_edge(PlayerId from, PlayerId to) const {
        return players_.contains(from) && players_.contains(to) && base_->has_edge(from, to);
    }
    Coalition out_neighbors(PlayerId p) const {
        return players_.contains(p) ? base_->out_neighbors(p) & players_ : Coalition{};
    }
    std::vector<std::pair<PlayerId, PlayerId>> edges() const;

    const Digraph& base() const { return *base_; }

private:
    const Digraph* base_;
    Coalition players_;
};

}  // namespace dgs
