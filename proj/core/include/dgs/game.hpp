#pragma once

#include <vector>

#include "dgs/coalition.hpp"

namespace dgs {

enum class GameKind {
    Explicit,   // one value per coalition mask
    Symmetric,  // value depends only on coalition size
    Power,      // value is |S|^k
};

// A transferable-utility characteristic function v: 2^N -> R with v(empty)=0.
// Immutable after construction; value() is pure.
//
// Payoffs are double precision throughout. Power games store the per-size
// table eagerly so Power and the equivalent Symmetric game return bitwise
// identical values.
class CharacteristicFunction {
public:
    // `values` indexed by coalition mask, length exactly 2^n, values[0] == 0.
    static CharacteristicFunction explicit_table(int n, std::vector<double> values);
    // `by_size` indexed by coalition size, length n+1, by_size[0] == 0.
    static CharacteristicFunction symmetric(int n, std::vector<double> by_size);
    // v(S) = |S|^k for nonempty S and v(empty) = 0, also for k = 0.
    static CharacteristicFunction power(int n, int exponent);

    int player_count() const { return n_; }
    GameKind kind() const { return kind_; }

    // Requires S within the player set; no range check on the hot path.
    double value(Coalition S) const {
        if (S.empty()) return 0.0;
        return kind_ == GameKind::Explicit ? table_[S.mask()] : by_size_[S.size()];
    }
    double grand_value() const { return value(Coalition::all(n_)); }

    // True when every coalition value is an integer that doubles represent
    // exactly; enables the exact-fraction output path.
    bool integer_valued() const { return integer_valued_; }

    // Size-indexed values f[0..n]; only for Symmetric and Power games.
    const std::vector<double>& size_values() const;
    // Only for Power games.
    int exponent() const;

private:
    CharacteristicFunction(int n, GameKind kind) : n_(n), kind_(kind) {}

    int n_;
    GameKind kind_;
    std::vector<double> table_;    // Explicit
    std::vector<double> by_size_;  // Symmetric, Power
    int exponent_ = -1;            // Power
    bool integer_valued_ = false;
};

}  // namespace dgs
