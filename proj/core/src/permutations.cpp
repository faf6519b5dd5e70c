#include "dgs/permutations.hpp"

#include <string>

#include "dgs/errors.hpp"

namespace dgs {

EntryOrder EntryOrder::make(std::vector<PlayerId> sequence) {
    const int n = static_cast<int>(sequence.size());
    if (n < 1 || n > kMaxPlayers) {
        throw validation_error("entry order: length must be in [1," +
                               std::to_string(kMaxPlayers) + "], got " + std::to_string(n));
    }
    EntryOrder order;
    order.pos_.assign(n, 0);
    for (int t = 1; t <= n; ++t) {
        const PlayerId p = sequence[t - 1];
        if (p < 1 || p > n) {
            throw validation_error("entry order: player " + std::to_string(p) +
                                   " outside [1," + std::to_string(n) + "]");
        }
        if (order.pos_[p - 1] != 0) {
            throw validation_error("entry order: player " + std::to_string(p) +
                                   " appears twice");
        }
        order.pos_[p - 1] = t;
    }
    order.seq_ = std::move(sequence);
    return order;
}

PrefixSets prefix_sets(const EntryOrder& order, PlayerId i) {
    if (i < 1 || i > order.player_count()) {
        throw validation_error("prefix_sets: player " + std::to_string(i) +
                               " outside [1," + std::to_string(order.player_count()) + "]");
    }
    Coalition before;
    for (int t = 1; t < order.position(i); ++t) {
        before = before.with(order.at_step(t));
    }
    return PrefixSets{before, before.with(i)};
}

bool is_consistent(const Digraph& g, const EntryOrder& order) {
    if (order.player_count() != g.player_count()) {
        throw validation_error("is_consistent: order has " +
                               std::to_string(order.player_count()) + " players, graph has " +
                               std::to_string(g.player_count()));
    }
    Coalition entered;
    for (PlayerId p : order.sequence()) {
        entered = entered.with(p);
        if (g.is_dominated(entered, p)) return false;
    }
    return true;
}

namespace {

struct Backtracker {
    const Digraph& g;
    const std::function<void(std::span<const PlayerId>)>& visit;
    int n;
    std::vector<PlayerId> prefix;

    void extend(Coalition entered) {
        if (static_cast<int>(prefix.size()) == n) {
            visit(prefix);
            return;
        }
        // candidates ascending keeps the stream lexicographic
        for (PlayerId p : g.players() - entered) {
            const Coalition next = entered.with(p);
            if (!g.is_dominated(next, p)) {
                prefix.push_back(p);
                extend(next);
                prefix.pop_back();
            }
        }
    }
};

}  // namespace

void for_each_consistent(const Digraph& g,
                         const std::function<void(std::span<const PlayerId>)>& visit) {
    Backtracker bt{g, visit, g.player_count(), {}};
    bt.prefix.reserve(bt.n);
    bt.extend(Coalition{});
}

std::vector<EntryOrder> enumerate_consistent(const Digraph& g) {
    std::vector<EntryOrder> out;
    for_each_consistent(g, [&](std::span<const PlayerId> seq) {
        out.push_back(EntryOrder::make({seq.begin(), seq.end()}));
    });
    return out;
}

namespace detail {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t sum = 0;
    if (__builtin_add_overflow(a, b, &sum)) {
        throw internal_error("permutation count overflowed 64 bits");
    }
    return sum;
}

std::vector<std::uint32_t> undominated_table(const Digraph& g) {
    const std::size_t size = std::size_t{1} << g.player_count();
    std::vector<std::uint32_t> table(size, 0);
    for (std::uint32_t s = 1; s < size; ++s) {
        table[s] = g.undominated(Coalition::from_mask(s)).mask();
    }
    return table;
}

}  // namespace detail

std::uint64_t count_consistent(const Digraph& g) {
    const std::vector<std::uint32_t> undom = detail::undominated_table(g);
    const std::size_t size = std::size_t{1} << g.player_count();

    // counts[S]: orderings of S whose every step enters an undominated player
    std::vector<std::uint64_t> counts(size, 0);
    counts[0] = 1;
    for (std::uint32_t s = 1; s < size; ++s) {
        std::uint64_t total = 0;
        for (std::uint32_t u = undom[s]; u != 0; u &= u - 1) {
            total = detail::checked_add(total, counts[s & ~(u & -u)]);
        }
        counts[s] = total;
    }
    return counts[size - 1];
}

std::vector<double> marginal_vector(const CharacteristicFunction& v, const EntryOrder& order) {
    if (v.player_count() != order.player_count()) {
        throw validation_error("marginal_vector: game has " +
                               std::to_string(v.player_count()) + " players, order has " +
                               std::to_string(order.player_count()));
    }
    std::vector<double> out(order.player_count());
    Coalition entered;
    double before = 0.0;  // v(empty)
    for (PlayerId p : order.sequence()) {
        entered = entered.with(p);
        const double after = v.value(entered);
        out[p - 1] = after - before;
        before = after;
    }
    return out;
}

}  // namespace dgs
