#include "dgs/shapley.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "dgs/errors.hpp"
#include "dgs/permutations.hpp"

namespace dgs {
namespace {

using Int128 = __int128;

void check_dimensions(const CharacteristicFunction& v, const Digraph& g) {
    if (v.player_count() != g.player_count()) {
        throw validation_error("shapley: game has " + std::to_string(v.player_count()) +
                               " players, graph has " + std::to_string(g.player_count()));
    }
}

// Integer marginal sums for the exact-fraction path. Weights can approach
// 20!, so terms are accumulated in 128 bits; any overflow or out-of-range
// numerator just disables the path.
struct ExactSums {
    std::vector<Int128> totals;
    bool valid;

    ExactSums(int n, bool enabled) : totals(enabled ? n : 0, 0), valid(enabled) {}

    void add(int index, Int128 term) {
        if (__builtin_add_overflow(totals[index], term, &totals[index])) valid = false;
    }

    void merge(const ExactSums& other) {
        if (!valid) return;
        if (!other.valid) {
            valid = false;
            return;
        }
        for (std::size_t i = 0; i < totals.size(); ++i) add(static_cast<int>(i), other.totals[i]);
    }
};

// When the exact sums survived, replace the floating allocation with the
// exactly divided one and publish the numerators.
void finalize_exact(ShapleyOutcome& out, const ExactSums& sums) {
    if (!sums.valid || sums.totals.empty()) return;
    constexpr Int128 kMax = std::numeric_limits<std::int64_t>::max();
    constexpr Int128 kMin = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> numerators(sums.totals.size());
    for (std::size_t i = 0; i < sums.totals.size(); ++i) {
        if (sums.totals[i] > kMax || sums.totals[i] < kMin) return;
        numerators[i] = static_cast<std::int64_t>(sums.totals[i]);
    }
    const long double count = static_cast<long double>(out.permutation_count);
    for (std::size_t i = 0; i < numerators.size(); ++i) {
        out.allocation[i] = static_cast<double>(static_cast<long double>(numerators[i]) / count);
    }
    out.exact_numerators = std::move(numerators);
}

unsigned resolve_threads(unsigned requested, int n) {
    if (requested != 0) return std::min(requested, 64u);
    if (n < 14) return 1;  // spawning costs more than the whole DP below this
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp(hw, 1u, 8u);
}

// Applies fn(block_index, lo, hi) over fixed-width index blocks of
// [begin, end). Block boundaries depend only on `begin` and `width`, never on
// the thread count, so callers can reduce per-block results in a fixed order.
template <typename Fn>
void for_blocks(std::size_t begin, std::size_t end, std::size_t width, unsigned threads,
                Fn&& fn) {
    if (begin >= end) return;
    const std::size_t blocks = (end - begin + width - 1) / width;
    auto run_block = [&](std::size_t b) {
        const std::size_t lo = begin + b * width;
        fn(b, lo, std::min(lo + width, end));
    };
    if (threads <= 1 || blocks <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::min<std::size_t>(threads, blocks);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                        run_block(b);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Enumeration: return "enum";
        case Engine::SubsetDp: return "dp";
        case Engine::ClosedForm: return "closed-form";
        case Engine::Oracle: return "oracle";
    }
    return "?";
}

ShapleyOutcome shapley_enumeration(const CharacteristicFunction& v, const Digraph& g,
                                   bool force) {
    check_dimensions(v, g);
    const int n = g.player_count();
    if (n > kEnumerationGuard && !force) {
        throw guard_error("enumeration engine is guarded at n <= " +
                          std::to_string(kEnumerationGuard) + ", got n = " + std::to_string(n) +
                          "; use --force to override");
    }
    std::vector<double> sums(n, 0.0);
    ExactSums exact(n, v.integer_valued());
    std::uint64_t count = 0;
    for_each_consistent(g, [&](std::span<const PlayerId> seq) {
        ++count;
        Coalition entered;
        double before = 0.0;
        for (PlayerId p : seq) {
            entered = entered.with(p);
            const double after = v.value(entered);
            const double dv = after - before;
            sums[p - 1] += dv;
            if (exact.valid) exact.add(p - 1, static_cast<Int128>(std::llround(dv)));
            before = after;
        }
    });
    if (count == 0) throw internal_error("enumeration found no consistent order");

    ShapleyOutcome out;
    out.engine = Engine::Enumeration;
    out.permutation_count = count;
    out.allocation.resize(n);
    for (int i = 0; i < n; ++i) out.allocation[i] = sums[i] / static_cast<double>(count);
    finalize_exact(out, exact);
    return out;
}

ShapleyOutcome shapley_subset_dp(const CharacteristicFunction& v, const Digraph& g,
                                 unsigned max_threads) {
    check_dimensions(v, g);
    const int n = g.player_count();
    const std::size_t size = std::size_t{1} << n;
    const std::uint32_t full = static_cast<std::uint32_t>(size - 1);
    const unsigned threads = resolve_threads(max_threads, n);
    constexpr std::size_t kBlock = 4096;

    // masks sorted by popcount, ascending within each layer
    std::vector<std::uint32_t> by_layer(size);
    std::array<std::size_t, kMaxPlayers + 2> offset{};
    {
        std::array<std::size_t, kMaxPlayers + 1> cursor{};
        for (std::size_t s = 0; s < size; ++s) {
            ++cursor[std::popcount(static_cast<std::uint32_t>(s))];
        }
        for (int k = 0; k <= n; ++k) offset[k + 1] = offset[k] + cursor[k];
        for (int k = 0; k <= n; ++k) cursor[k] = offset[k];
        for (std::size_t s = 0; s < size; ++s) {
            by_layer[cursor[std::popcount(static_cast<std::uint32_t>(s))]++] =
                static_cast<std::uint32_t>(s);
        }
    }

    std::vector<std::uint32_t> undom(size, 0);
    std::vector<std::uint64_t> prefix_count(size, 0);  // ways to enter exactly S
    std::vector<std::uint64_t> suffix_count(size, 0);  // ways to finish after entering S
    prefix_count[0] = 1;
    suffix_count[full] = 1;

    for (int k = 1; k <= n; ++k) {
        for_blocks(offset[k], offset[k + 1], kBlock, threads,
                   [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const std::uint32_t s = by_layer[idx];
                const std::uint32_t u = g.undominated(Coalition::from_mask(s)).mask();
                undom[s] = u;
                std::uint64_t total = 0;
                for (std::uint32_t rest = u; rest != 0; rest &= rest - 1) {
                    total = detail::checked_add(total, prefix_count[s & ~(rest & (0u - rest))]);
                }
                prefix_count[s] = total;
            }
        });
    }

    for (int k = n - 1; k >= 0; --k) {
        for_blocks(offset[k], offset[k + 1], kBlock, threads,
                   [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const std::uint32_t s = by_layer[idx];
                std::uint64_t total = 0;
                for (std::uint32_t rest = full & ~s; rest != 0; rest &= rest - 1) {
                    const std::uint32_t bit = rest & (0u - rest);
                    const std::uint32_t grown = s | bit;
                    if (undom[grown] & bit) {
                        total = detail::checked_add(total, suffix_count[grown]);
                    }
                }
                suffix_count[s] = total;
            }
        });
    }

    const std::uint64_t count = prefix_count[full];
    if (count == 0) throw internal_error("subset DP produced a zero permutation count");
    if (suffix_count[0] != count) {
        throw internal_error("subset DP count identity violated: c(N) != d(empty)");
    }

    // Weighted marginal accumulation. Per-block partial sums are reduced in
    // block order afterwards, which pins the floating-point result for every
    // thread count.
    const std::size_t blocks = (size - 1 + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> partial(blocks);
    std::vector<ExactSums> exact_partial(blocks, ExactSums(n, v.integer_valued()));
    const long double inv_count = 1.0L / static_cast<long double>(count);

    for_blocks(1, size, kBlock, threads, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        auto& acc = partial[b];
        acc.assign(n, 0.0);
        auto& exact = exact_partial[b];
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const std::uint32_t s = static_cast<std::uint32_t>(idx);
            const std::uint64_t ways_out = suffix_count[s];
            if (ways_out == 0) continue;
            const double value_with = v.value(Coalition::from_mask(s));
            for (std::uint32_t rest = undom[s]; rest != 0; rest &= rest - 1) {
                const std::uint32_t bit = rest & (0u - rest);
                const std::uint64_t ways_in = prefix_count[s & ~bit];
                if (ways_in == 0) continue;
                const int player_index = std::countr_zero(bit);
                const Int128 weight = static_cast<Int128>(ways_in) * ways_out;
                const double dv = value_with - v.value(Coalition::from_mask(s & ~bit));
                acc[player_index] +=
                    static_cast<double>(static_cast<long double>(weight) * inv_count) * dv;
                if (exact.valid) {
                    exact.add(player_index, weight * static_cast<Int128>(std::llround(dv)));
                }
            }
        }
    });

    ShapleyOutcome out;
    out.engine = Engine::SubsetDp;
    out.permutation_count = count;
    out.allocation.assign(n, 0.0);
    ExactSums exact(n, v.integer_valued());
    for (std::size_t b = 0; b < blocks; ++b) {
        if (!partial[b].empty()) {
            for (int i = 0; i < n; ++i) out.allocation[i] += partial[b][i];
        }
        exact.merge(exact_partial[b]);
    }
    finalize_exact(out, exact);
    return out;
}

std::vector<double> shapley_cycle_closed_form(std::span<const double> size_values, int n) {
    if (n < 2 || n > kMaxPlayers) {
        throw validation_error("closed form: n must be in [2," + std::to_string(kMaxPlayers) +
                               "], got " + std::to_string(n));
    }
    if (size_values.size() != static_cast<std::size_t>(n) + 1) {
        throw validation_error("closed form: f needs " + std::to_string(n + 1) +
                               " entries, got " + std::to_string(size_values.size()));
    }
    if (size_values[0] != 0.0) {
        throw validation_error("closed form: f(0) must be 0");
    }
    return std::vector<double>(n, size_values[n] / n);
}

ShapleyOutcome shapley_closed_form(const CharacteristicFunction& v, const Digraph& g) {
    check_dimensions(v, g);
    if (v.kind() == GameKind::Explicit) {
        throw validation_error(
            "closed-form engine requires a symmetric or power game, got an explicit table");
    }
    if (!g.is_single_cycle()) {
        throw validation_error("closed-form engine requires a single directed cycle graph");
    }
    const int n = g.player_count();
    ShapleyOutcome out;
    out.engine = Engine::ClosedForm;
    out.allocation = shapley_cycle_closed_form(v.size_values(), n);
    out.permutation_count = static_cast<std::uint64_t>(n);  // one order per starting player
    if (v.integer_valued()) {
        const double grand = v.size_values()[n];
        ExactSums exact(n, true);
        for (int i = 0; i < n; ++i) exact.add(i, static_cast<Int128>(std::llround(grand)));
        finalize_exact(out, exact);
    }
    return out;
}

ShapleyOutcome shapley_oracle(const CharacteristicFunction& v, const Digraph& g, bool force) {
    check_dimensions(v, g);
    const int n = g.player_count();
    if (n > kOracleGuard && !force) {
        throw guard_error("oracle engine is guarded at n <= " + std::to_string(kOracleGuard) +
                          ", got n = " + std::to_string(n) + "; use --force to override");
    }
    std::vector<PlayerId> seq(n);
    std::iota(seq.begin(), seq.end(), 1);
    std::vector<double> sums(n, 0.0);
    ExactSums exact(n, v.integer_valued());
    std::uint64_t count = 0;
    do {
        const EntryOrder order = EntryOrder::make(seq);
        if (!is_consistent(g, order)) continue;
        ++count;
        const std::vector<double> marginals = marginal_vector(v, order);
        for (int i = 0; i < n; ++i) {
            sums[i] += marginals[i];
            if (exact.valid) exact.add(i, static_cast<Int128>(std::llround(marginals[i])));
        }
    } while (std::next_permutation(seq.begin(), seq.end()));
    if (count == 0) throw internal_error("oracle found no consistent order");

    ShapleyOutcome out;
    out.engine = Engine::Oracle;
    out.permutation_count = count;
    out.allocation.resize(n);
    for (int i = 0; i < n; ++i) out.allocation[i] = sums[i] / static_cast<double>(count);
    finalize_exact(out, exact);
    return out;
}

ShapleyOutcome shapley_auto(const CharacteristicFunction& v, const Digraph& g) {
    return g.player_count() > 8 ? shapley_subset_dp(v, g) : shapley_enumeration(v, g);
}

}  // namespace dgs
