#include "dgs/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgs/errors.hpp"

namespace dgs {
namespace {

void check_player_count(int n, const char* what) {
    if (n < 1 || n > kMaxPlayers) {
        throw validation_error(std::string(what) + ": n must be in [1," +
                               std::to_string(kMaxPlayers) + "], got " + std::to_string(n));
    }
}

// Exact while the running product stays below 2^53; saturates gracefully for
// huge exponents.
double int_pow(int base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool exactly_integral(const std::vector<double>& xs) {
    // 2^52: keeps single differences of table entries exactly representable
    constexpr double kExactLimit = 4503599627370496.0;
    return std::all_of(xs.begin(), xs.end(), [](double x) {
        return std::isfinite(x) && std::nearbyint(x) == x && std::fabs(x) <= kExactLimit;
    });
}

}  // namespace

CharacteristicFunction CharacteristicFunction::explicit_table(int n, std::vector<double> values) {
    check_player_count(n, "explicit game");
    const std::size_t want = std::size_t{1} << n;
    if (values.size() != want) {
        throw validation_error("explicit game: table for n=" + std::to_string(n) +
                               " needs " + std::to_string(want) + " entries, got " +
                               std::to_string(values.size()));
    }
    if (values[0] != 0.0) {
        throw validation_error("explicit game: v(empty) must be 0");
    }
    CharacteristicFunction v(n, GameKind::Explicit);
    v.integer_valued_ = exactly_integral(values);
    v.table_ = std::move(values);
    return v;
}

CharacteristicFunction CharacteristicFunction::symmetric(int n, std::vector<double> by_size) {
    check_player_count(n, "symmetric game");
    if (by_size.size() != static_cast<std::size_t>(n) + 1) {
        throw validation_error("symmetric game: f for n=" + std::to_string(n) + " needs " +
                               std::to_string(n + 1) + " entries, got " +
                               std::to_string(by_size.size()));
    }
    if (by_size[0] != 0.0) {
        throw validation_error("symmetric game: f(0) must be 0");
    }
    CharacteristicFunction v(n, GameKind::Symmetric);
    v.integer_valued_ = exactly_integral(by_size);
    v.by_size_ = std::move(by_size);
    return v;
}

CharacteristicFunction CharacteristicFunction::power(int n, int exponent) {
    check_player_count(n, "power game");
    if (exponent < 0) {
        throw validation_error("power game: k must be nonnegative, got " +
                               std::to_string(exponent));
    }
    CharacteristicFunction v(n, GameKind::Power);
    v.exponent_ = exponent;
    v.by_size_.resize(n + 1);
    v.by_size_[0] = 0.0;  // v(empty) = 0 even for k = 0
    for (int s = 1; s <= n; ++s) v.by_size_[s] = int_pow(s, exponent);
    v.integer_valued_ = exactly_integral(v.by_size_);
    return v;
}

const std::vector<double>& CharacteristicFunction::size_values() const {
    if (kind_ == GameKind::Explicit) {
        throw validation_error("size_values: explicit games have no per-size table");
    }
    return by_size_;
}

int CharacteristicFunction::exponent() const {
    if (kind_ != GameKind::Power) {
        throw validation_error("exponent: only power games have one");
    }
    return exponent_;
}

}  // namespace dgs
