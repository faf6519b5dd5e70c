#include "dgs/digraph.hpp"

#include <bit>
#include <string>

#include "dgs/errors.hpp"

namespace dgs {
namespace {

std::string pair_str(PlayerId a, PlayerId b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void require_member(Coalition S, PlayerId i, const char* role) {
    if (i < 1 || i > kMaxPlayers || !S.contains(i)) {
        throw validation_error(std::string(role) + " player " + std::to_string(i) +
                               " is not a member of " + S.to_string());
    }
}

}  // namespace

Digraph Digraph::make(int n, const std::vector<std::pair<PlayerId, PlayerId>>& edges) {
    if (n < 1 || n > kMaxPlayers) {
        throw validation_error("digraph: n must be in [1," + std::to_string(kMaxPlayers) +
                               "], got " + std::to_string(n));
    }
    Digraph g;
    g.n_ = n;
    for (auto [from, to] : edges) {
        if (from < 1 || from > n || to < 1 || to > n) {
            throw validation_error("digraph: edge " + pair_str(from, to) +
                                   " has an endpoint outside [1," + std::to_string(n) + "]");
        }
        if (from == to) {
            throw validation_error("digraph: self-loop " + pair_str(from, to) +
                                   " is not allowed");
        }
        // duplicate pairs collapse to one edge
        g.out_[from - 1] |= Coalition::single(to).mask();
        g.in_[to - 1] |= Coalition::single(from).mask();
    }
    return g;
}

bool Digraph::has_edge(PlayerId from, PlayerId to) const {
    return from >= 1 && from <= n_ && to >= 1 && to <= n_ &&
           ((out_[from - 1] >> (to - 1)) & 1u);
}

Coalition Digraph::out_neighbors(PlayerId p) const {
    require_member(players(), p, "digraph");
    return Coalition::from_mask(out_[p - 1]);
}

Coalition Digraph::in_neighbors(PlayerId p) const {
    require_member(players(), p, "digraph");
    return Coalition::from_mask(in_[p - 1]);
}

std::vector<std::pair<PlayerId, PlayerId>> Digraph::edges() const {
    std::vector<std::pair<PlayerId, PlayerId>> out;
    for (PlayerId p = 1; p <= n_; ++p) {
        for (PlayerId q : Coalition::from_mask(out_[p - 1])) {
            out.emplace_back(p, q);
        }
    }
    return out;
}

// Word-parallel frontier expansion over the adjacency masks in `adj`,
// confined to `inside`. Returns everything reachable from `start` by a path
// of length >= 1 (which may include `start` itself when it lies on a cycle).
static std::uint32_t expand(const std::array<std::uint32_t, kMaxPlayers>& adj,
                            std::uint32_t inside, PlayerId start) {
    std::uint32_t reach = 0;
    std::uint32_t frontier = adj[start - 1] & inside;
    while (frontier != 0) {
        reach |= frontier;
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
            next |= adj[std::countr_zero(f)];
        }
        frontier = next & inside & ~reach;
    }
    return reach;
}

Coalition Digraph::successors(Coalition S, PlayerId i) const {
    require_member(S, i, "successors:");
    return Coalition::from_mask(expand(out_, S.mask(), i)).without(i);
}

Coalition Digraph::closed_successors(Coalition S, PlayerId i) const {
    return successors(S, i).with(i);
}

Coalition Digraph::predecessors(Coalition S, PlayerId i) const {
    require_member(S, i, "predecessors:");
    return Coalition::from_mask(expand(in_, S.mask(), i)).without(i);
}

bool Digraph::dominates(Coalition S, PlayerId i, PlayerId j) const {
    require_member(S, i, "dominates:");
    require_member(S, j, "dominates:");
    if (i == j) throw validation_error("dominates: players must be distinct");
    Coalition from_i = successors(S, i);
    if (!from_i.contains(j)) return false;
    return !successors(S, j).contains(i);
}

bool Digraph::is_dominated(Coalition S, PlayerId i) const {
    require_member(S, i, "is_dominated:");
    std::uint32_t fwd = expand(out_, S.mask(), i);
    std::uint32_t back = expand(in_, S.mask(), i);
    // someone reaches i without being reached back
    return (back & ~fwd & ~Coalition::single(i).mask()) != 0;
}

Coalition Digraph::undominated(Coalition S) const {
    if (S.empty()) throw validation_error("undominated: coalition is empty");
    const std::uint32_t inside = S.mask();

    // Transitive closure of the restriction (Warshall on bitmask rows).
    std::array<std::uint32_t, kMaxPlayers> reach{};
    for (PlayerId p : S) reach[p - 1] = out_[p - 1] & inside;
    for (PlayerId k : S) {
        const std::uint32_t row_k = reach[k - 1];
        const std::uint32_t kbit = Coalition::single(k).mask();
        for (PlayerId p : S) {
            if (reach[p - 1] & kbit) reach[p - 1] |= row_k;
        }
    }

    std::uint32_t result = 0;
    for (PlayerId i : S) {
        const std::uint32_t ibit = Coalition::single(i).mask();
        std::uint32_t reached_by = 0;
        for (PlayerId j : S) {
            if (reach[j - 1] & ibit) reached_by |= Coalition::single(j).mask();
        }
        if ((reached_by & ~reach[i - 1] & ~ibit) == 0) result |= ibit;
    }
    return Coalition::from_mask(result);
}

SubgraphView Digraph::restricted_to(Coalition S) const {
    return SubgraphView(*this, S);
}

bool Digraph::is_single_cycle() const {
    if (n_ < 2) return false;
    for (PlayerId p = 1; p <= n_; ++p) {
        if (std::popcount(out_[p - 1]) != 1 || std::popcount(in_[p - 1]) != 1) return false;
    }
    // degrees all 1 means the edges are a union of disjoint cycles; single
    // cycle iff the one through player 1 has length n
    PlayerId at = std::countr_zero(out_[0]) + 1;
    int length = 1;
    while (at != 1) {
        at = std::countr_zero(out_[at - 1]) + 1;
        ++length;
    }
    return length == n_;
}

std::vector<std::pair<PlayerId, PlayerId>> SubgraphView::edges() const {
    std::vector<std::pair<PlayerId, PlayerId>> out;
    for (PlayerId p : players_) {
        for (PlayerId q : out_neighbors(p)) {
            out.emplace_back(p, q);
        }
    }
    return out;
}

}  // namespace dgs
