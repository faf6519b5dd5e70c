#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgs/digraph.hpp"
#include "dgs/game.hpp"

namespace dgs {

enum class Engine {
    Enumeration,  // average marginal vectors over the backtracked stream
    SubsetDp,     // prefix/suffix counting over coalition masks
    ClosedForm,   // single directed cycle + size-symmetric game only
    Oracle,       // filter all n! orders; independent reference
};

const char* engine_name(Engine e);

// Listing or averaging individual permutations is factorial; beyond this the
// caller must opt in explicitly.
inline constexpr int kEnumerationGuard = 10;
inline constexpr int kOracleGuard = 8;

struct ShapleyOutcome {
    std::vector<double> allocation;  // index p-1 holds player p's share
    std::uint64_t permutation_count = 0;
    Engine engine = Engine::SubsetDp;
    // Present when the game is integer valued and the sums stayed in range:
    // allocation[i] == exact_numerators[i] / permutation_count exactly.
    std::optional<std::vector<std::int64_t>> exact_numerators;
};

// Averages marginal vectors over the enumerated consistent orders.
// Guarded at n <= kEnumerationGuard unless force is set.
ShapleyOutcome shapley_enumeration(const CharacteristicFunction& v, const Digraph& g,
                                   bool force = false);

// Same allocation and count as shapley_enumeration without visiting
// individual permutations: consistent orders are counted by prefix set
// (how many ways to enter exactly S) and by suffix (how many ways to finish
// from S), and each coalition's marginal is weighted by the product.
// max_threads caps the worker threads (0 = implementation default); results
// are bitwise identical for every thread count.
ShapleyOutcome shapley_subset_dp(const CharacteristicFunction& v, const Digraph& g,
                                 unsigned max_threads = 0);

// The constant vector size_values[n] / n, n times. Preconditions:
// size_values has n+1 entries, size_values[0] == 0, and the graph in
// question is a single directed cycle.
std::vector<double> shapley_cycle_closed_form(std::span<const double> size_values, int n);

// Checked front end for shapley_cycle_closed_form: verifies the graph really
// is one directed cycle and the game is size-symmetric, else refuses (no
// silent fallback).
ShapleyOutcome shapley_closed_form(const CharacteristicFunction& v, const Digraph& g);

// Generates all n! entry orders, keeps the consistent ones, averages their
// marginal vectors. Reference implementation: shares no traversal code with
// the engines above. Guarded at n <= kOracleGuard unless force is set.
ShapleyOutcome shapley_oracle(const CharacteristicFunction& v, const Digraph& g,
                              bool force = false);

// Subset DP for n > 8, enumeration otherwise.
ShapleyOutcome shapley_auto(const CharacteristicFunction& v, const Digraph& g);

}  // namespace dgs
