#pragma once

#include <bit>
#include <cstdint>
#include <iterator>
#include <string>

namespace dgs {

// Players carry 1-based labels 1..n.
using PlayerId = int;

// Masks fit 32 bits, explicit tables fit 2^20 entries, and permutation
// counts fit 64 bits (20! < 2^63).
inline constexpr int kMaxPlayers = 20;

// A set of players packed into a bitmask: bit p-1 is set iff player p is a
// member. The universal currency of the API; cardinality is popcount.
class Coalition {
public:
    constexpr Coalition() = default;

    static constexpr Coalition from_mask(std::uint32_t mask) { return Coalition{mask}; }
    static constexpr Coalition single(PlayerId p) {
        return Coalition{std::uint32_t{1} << (p - 1)};
    }
    static constexpr Coalition all(int n) {
        return Coalition{n <= 0 ? 0u : (std::uint32_t{1} << n) - 1u};
    }

    constexpr std::uint32_t mask() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }

    constexpr bool contains(PlayerId p) const { return (bits_ >> (p - 1)) & 1u; }
    constexpr bool is_subset_of(Coalition other) const { return (bits_ & ~other.bits_) == 0; }

    constexpr Coalition with(PlayerId p) const { return Coalition{bits_ | bit(p)}; }
    constexpr Coalition without(PlayerId p) const { return Coalition{bits_ & ~bit(p)}; }

    friend constexpr Coalition operator|(Coalition a, Coalition b) {
        return Coalition{a.bits_ | b.bits_};
    }
    friend constexpr Coalition operator&(Coalition a, Coalition b) {
        return Coalition{a.bits_ & b.bits_};
    }
    // Set difference.
    friend constexpr Coalition operator-(Coalition a, Coalition b) {
        return Coalition{a.bits_ & ~b.bits_};
    }
    friend constexpr bool operator==(Coalition a, Coalition b) = default;

    // Iterates members in increasing player order.
    class iterator {
    public:
        using value_type = PlayerId;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        constexpr iterator() = default;
        explicit constexpr iterator(std::uint32_t rest) : rest_(rest) {}

        constexpr PlayerId operator*() const { return std::countr_zero(rest_) + 1; }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr iterator operator++(int) {
            iterator old = *this;
            ++*this;
            return old;
        }
        friend constexpr bool operator==(iterator a, iterator b) = default;

    private:
        std::uint32_t rest_ = 0;
    };

    constexpr iterator begin() const { return iterator{bits_}; }
    constexpr iterator end() const { return iterator{0}; }

    // Renders as "{1,3}"; the empty coalition is "{}".
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (PlayerId p : *this) {
            if (!first) out += ',';
            out += std::to_string(p);
            first = false;
        }
        out += '}';
        return out;
    }

private:
    explicit constexpr Coalition(std::uint32_t bits) : bits_(bits) {}
    static constexpr std::uint32_t bit(PlayerId p) { return std::uint32_t{1} << (p - 1); }

    std::uint32_t bits_ = 0;
};

}  // namespace dgs
