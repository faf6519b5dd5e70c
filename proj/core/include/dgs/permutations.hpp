#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dgs/coalition.hpp"
#include "dgs/digraph.hpp"
#include "dgs/game.hpp"

namespace dgs {

// A permutation of players 1..n given as the sequence in which they enter:
// sequence()[t-1] is the player entering at step t.
class EntryOrder {
public:
    // Validates that `sequence` is a permutation of 1..sequence.size().
    static EntryOrder make(std::vector<PlayerId> sequence);

    int player_count() const { return static_cast<int>(seq_.size()); }
    std::span<const PlayerId> sequence() const { return seq_; }
    PlayerId at_step(int t) const { return seq_[t - 1]; }  // t in [1, n]
    int position(PlayerId p) const { return pos_[p - 1]; }  // 1-based

    friend bool operator==(const EntryOrder&, const EntryOrder&) = default;

private:
    EntryOrder() = default;
    std::vector<PlayerId> seq_;
    std::vector<int> pos_;
};

// Players entering strictly before i, and the same set with i added.
struct PrefixSets {
    Coalition before;
    Coalition with_player;
};

PrefixSets prefix_sets(const EntryOrder& order, PlayerId i);

// True iff every entering player is undominated among the players already
// entered plus itself; equivalently, no earlier entrant dominates the
// entering player within the restriction to the entered-so-far set.
bool is_consistent(const Digraph& g, const EntryOrder& order);

// Visits every consistent entry order exactly once, in lexicographic order
// of sequences. The span is only valid during the call.
void for_each_consistent(const Digraph& g,
                         const std::function<void(std::span<const PlayerId>)>& visit);

// Materialized variant of for_each_consistent. The result is never empty.
std::vector<EntryOrder> enumerate_consistent(const Digraph& g);

// Exact number of consistent entry orders, by dynamic programming over
// coalition masks; equals enumerate_consistent(g).size() without touching
// individual permutations.
std::uint64_t count_consistent(const Digraph& g);

// Component i-1 is v(entered-up-to-i) - v(entered-before-i); the components
// always sum to v(N) (telescoping).
std::vector<double> marginal_vector(const CharacteristicFunction& v, const EntryOrder& order);

namespace detail {

// undominated(restrict(g, S)).mask() for every nonempty subset mask S; entry
// 0 is unused. Shared by the counting DP and the Shapley subset DP.
std::vector<std::uint32_t> undominated_table(const Digraph& g);

// Checked accumulation for exact permutation counts.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace detail

}  // namespace dgs
