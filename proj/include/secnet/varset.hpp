#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace secnet {

inline constexpr int kMaxGround = 16;

// A subset of the ground variables {0,...,n-1}, n <= 16, stored as a bit
// mask. Bit i set means variable i is a member. Comparison, union and
// subset tests are exact bit operations, so the representation is
// canonical by construction.
struct VarSet {
    std::uint32_t mask = 0;

    constexpr VarSet() = default;
    constexpr explicit VarSet(std::uint32_t m) : mask(m) {}

    static VarSet of(std::initializer_list<int> members)
    {
        VarSet s;
        for (int i : members)
            s = s.with(i);
        return s;
    }

    static constexpr VarSet single(int i) { return VarSet(1u << i); }

    static constexpr VarSet full(int n) { return VarSet((1u << n) - 1u); }

    constexpr bool empty() const { return mask == 0; }
    constexpr bool contains(int i) const { return (mask >> i) & 1u; }
    constexpr bool subset_of(VarSet o) const { return (mask & o.mask) == mask; }
    int count() const { return __builtin_popcount(mask); }

    VarSet with(int i) const
    {
        if (i < 0 || i >= kMaxGround)
            throw std::invalid_argument("variable index out of range");
        return VarSet(mask | (1u << i));
    }

    constexpr VarSet operator|(VarSet o) const { return VarSet(mask | o.mask); }
    constexpr VarSet operator&(VarSet o) const { return VarSet(mask & o.mask); }
    // Set difference.
    constexpr VarSet operator-(VarSet o) const { return VarSet(mask & ~o.mask); }

    auto operator<=>(const VarSet&) const = default;

    // True when every member lies inside a ground set of size n.
    constexpr bool within_ground(int n) const
    {
        return (mask >> n) == 0;
    }
};

} // namespace secnet
