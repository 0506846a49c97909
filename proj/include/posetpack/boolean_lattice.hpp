#pragma once

// Subsets of [n] as machine words, set families in canonical order, convex
// hulls, incomparability, and exact maximal-chain counting.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "posetpack/error.hpp"

namespace posetpack {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxGround = 62;
inline constexpr int kMaxChainCountGround = 24;
inline constexpr int kMaxHullSpan = 26;

using Mask = std::uint64_t;

// ---------------------------------------------------------------------------
// Word-level primitives.  Bit i-1 of a mask is ground element i.

namespace bits {

inline int size(Mask a) { return std::popcount(a); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline bool comparable(Mask a, Mask b) { return subset(a, b) || subset(b, a); }
inline Mask full(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Canonical order: by cardinality, then colex.  Among equal-size sets colex
/// coincides with numeric order of the masks.
inline bool canonical_less(Mask a, Mask b) {
    int sa = size(a), sb = size(b);
    return sa != sb ? sa < sb : a < b;
}

inline void canonical_sort(std::vector<Mask>& v) {
    std::sort(v.begin(), v.end(), canonical_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Scatter the low bits of `compressed` onto the set bits of `positions`.
inline Mask deposit(Mask compressed, Mask positions) {
    Mask out = 0;
    while (compressed != 0 && positions != 0) {
        Mask low = positions & (~positions + 1);
        if (compressed & 1U) out |= low;
        compressed >>= 1;
        positions &= positions - 1;
    }
    return out;
}

/// Visits every k-subset of `universe` in colex order.  `fn` returns false to
/// stop; the function returns false iff it was stopped.
template <class Fn>
bool for_each_subset_of_size(Mask universe, int k, Fn&& fn) {
    const int r = size(universe);
    if (k < 0 || k > r) return true;
    if (k == 0) return fn(Mask{0});
    Mask c = (Mask{1} << k) - 1;
    const Mask limit = r >= 64 ? 0 : (Mask{1} << r);
    while (true) {
        if (!fn(deposit(c, universe))) return false;
        // Gosper's hack: next integer with the same popcount.
        Mask lowest = c & (~c + 1);
        Mask ripple = c + lowest;
        if (ripple == 0) return true;
        c = (((ripple ^ c) >> 2) / lowest) | ripple;
        if (limit != 0 && c >= limit) return true;
    }
}

/// Visits every subset of `universe` in canonical order.
template <class Fn>
bool for_each_subset(Mask universe, Fn&& fn) {
    for (int k = 0; k <= size(universe); ++k)
        if (!for_each_subset_of_size(universe, k, fn)) return false;
    return true;
}

inline std::vector<Mask> extremal(std::span<const Mask> family, bool minimal) {
    std::vector<Mask> out;
    for (Mask a : family) {
        bool dominated = false;
        for (Mask b : family)
            if (b != a && (minimal ? subset(b, a) : subset(a, b))) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(a);
    }
    return out;
}
inline std::vector<Mask> minimal_members(std::span<const Mask> f) { return extremal(f, true); }
inline std::vector<Mask> maximal_members(std::span<const Mask> f) { return extremal(f, false); }

/// Convex hull as a canonical mask list.
inline std::vector<Mask> hull(std::span<const Mask> family) {
    std::vector<Mask> out;
    auto lo = minimal_members(family);
    auto hi = maximal_members(family);
    for (Mask a : lo)
        for (Mask c : hi) {
            if (!subset(a, c)) continue;
            Mask gap = c & ~a;
            if (size(gap) > kMaxHullSpan)
                throw CapExceeded("convex hull spans more than 2^" + std::to_string(kMaxHullSpan) +
                                  " sets");
            // All submasks of the gap.
            Mask s = gap;
            while (true) {
                out.push_back(a | s);
                if (s == 0) break;
                s = (s - 1) & gap;
            }
        }
    canonical_sort(out);
    return out;
}

/// min(|hull(family)|, cap).  Stops early once the cap is certain.
inline std::size_t hull_size_capped(std::span<const Mask> family, std::size_t cap) {
    auto lo = minimal_members(family);
    auto hi = maximal_members(family);
    for (Mask a : lo)
        for (Mask c : hi)
            if (subset(a, c)) {
                int d = size(c & ~a);
                if (d >= 63 || (std::size_t{1} << d) >= cap) return cap;
            }
    auto h = hull(family);
    return std::min(h.size(), cap);
}

}  // namespace bits

// ---------------------------------------------------------------------------

class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(int n) : n_(n) {
        if (n < 0) throw InvalidInput("ground set size must be non-negative");
        if (n > kMaxGround)
            throw CapExceeded("ground set size " + std::to_string(n) + " exceeds the cap of " +
                              std::to_string(kMaxGround));
    }
    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] Mask full() const { return bits::full(n_); }
    friend bool operator==(GroundSet, GroundSet) = default;

private:
    int n_ = 0;
};

inline void require_same_ground(GroundSet a, GroundSet b) {
    if (a != b)
        throw InvalidInput("ground sets differ (n=" + std::to_string(a.n()) + " vs n=" +
                           std::to_string(b.n()) + ")");
}

/// A subset of [n].  Serializes as a sorted 1-based index list.
class Subset {
public:
    Subset() = default;
    Subset(GroundSet ground, Mask bits) : ground_(ground), bits_(bits) {
        if ((bits & ~ground.full()) != 0)
            throw InvalidInput("subset has elements beyond n=" + std::to_string(ground.n()));
    }
    static Subset from_indices(GroundSet ground, std::span<const int> indices) {
        Mask m = 0;
        for (int i : indices) {
            if (i < 1 || i > ground.n())
                throw InvalidInput("subset index " + std::to_string(i) + " outside [1," +
                                   std::to_string(ground.n()) + "]");
            m |= Mask{1} << (i - 1);
        }
        return {ground, m};
    }
    static Subset from_indices(GroundSet ground, std::initializer_list<int> indices) {
        return from_indices(ground, std::span<const int>(indices.begin(), indices.size()));
    }

    [[nodiscard]] GroundSet ground() const { return ground_; }
    [[nodiscard]] Mask bits() const { return bits_; }
    [[nodiscard]] int size() const { return bits::size(bits_); }
    [[nodiscard]] std::vector<int> indices() const {
        std::vector<int> out;
        for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
        return out;
    }
    [[nodiscard]] bool subset_of(const Subset& other) const {
        require_same_ground(ground_, other.ground_);
        return bits::subset(bits_, other.bits_);
    }

    friend bool operator==(const Subset&, const Subset&) = default;

private:
    GroundSet ground_;
    Mask bits_ = 0;
};

/// Distinct subsets of a common ground set, kept in canonical order.
class SetFamily {
public:
    SetFamily() = default;
    explicit SetFamily(GroundSet ground, std::vector<Mask> members = {})
        : ground_(ground), members_(std::move(members)) {
        for (Mask m : members_)
            if ((m & ~ground.full()) != 0)
                throw InvalidInput("family member has elements beyond n=" + std::to_string(ground.n()));
        bits::canonical_sort(members_);
    }
    SetFamily(GroundSet ground, std::span<const Subset> members) : ground_(ground) {
        for (const auto& s : members) {
            require_same_ground(ground, s.ground());
            members_.push_back(s.bits());
        }
        bits::canonical_sort(members_);
    }

    [[nodiscard]] GroundSet ground() const { return ground_; }
    [[nodiscard]] const std::vector<Mask>& masks() const { return members_; }
    [[nodiscard]] std::vector<Subset> members() const {
        std::vector<Subset> out;
        for (Mask m : members_) out.emplace_back(ground_, m);
        return out;
    }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] bool contains(Mask m) const {
        return std::binary_search(members_.begin(), members_.end(), m, bits::canonical_less);
    }
    [[nodiscard]] bool includes(const SetFamily& other) const {
        return std::all_of(other.members_.begin(), other.members_.end(),
                           [&](Mask m) { return contains(m); });
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;
    friend bool operator<(const SetFamily& a, const SetFamily& b) {
        return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(),
                                            b.members_.end(), bits::canonical_less);
    }

private:
    GroundSet ground_;
    std::vector<Mask> members_;
};

// ---------------------------------------------------------------------------

/// a ⊆ b or b ⊆ a.  Equal sets are comparable.
inline bool comparable(const Subset& a, const Subset& b) {
    require_same_ground(a.ground(), b.ground());
    return bits::comparable(a.bits(), b.bits());
}

/// { b : a ⊆ b ⊆ c for some a, c in F }.
inline SetFamily convex_hull(const SetFamily& f) {
    if (f.empty()) throw InvalidInput("convex hull of an empty family is undefined");
    return SetFamily(f.ground(), bits::hull(f.masks()));
}

/// No member of X is comparable to a member of Y.
inline bool families_incomparable(const SetFamily& x, const SetFamily& y) {
    require_same_ground(x.ground(), y.ground());
    for (Mask a : x.masks())
        for (Mask b : y.masks())
            if (bits::comparable(a, b)) return false;
    return true;
}

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace detail {

template <class Count>
Count count_avoiding_orders(int n, std::span<const Mask> forbidden) {
    const std::size_t states = std::size_t{1} << n;
    std::vector<char> blocked(states, 0);
    for (Mask m : forbidden) blocked[m] = 1;
    std::vector<Count> ways(states, 0);
    ways[0] = blocked[0] ? 0 : 1;
    for (std::size_t s = 1; s < states; ++s) {
        if (blocked[s]) continue;
        Count total = 0;
        for (Mask rest = s; rest != 0; rest &= rest - 1) total += ways[s & ~(rest & (~rest + 1))];
        ways[s] = total;
    }
    return ways[states - 1];
}

}  // namespace detail

/// Exact number of maximal chains ∅ = C_0 ⊂ ... ⊂ C_n = [n] meeting F:
/// n! minus the insertion orders whose every prefix set avoids F.
inline BigInt count_chains_meeting(const SetFamily& f) {
    const int n = f.ground().n();
    if (n > kMaxChainCountGround)
        throw CapExceeded("chain counting supports n <= " + std::to_string(kMaxChainCountGround) +
                          " (got n=" + std::to_string(n) + ")");
    if (f.empty()) return 0;
    BigInt avoiding;
    if (n <= 20) {
        avoiding = detail::count_avoiding_orders<std::uint64_t>(n, f.masks());
    } else {
        unsigned __int128 v = detail::count_avoiding_orders<unsigned __int128>(n, f.masks());
        avoiding = BigInt(static_cast<std::uint64_t>(v >> 64));
        avoiding <<= 64;
        avoiding += static_cast<std::uint64_t>(v);
    }
    return factorial(n) - avoiding;
}

/// (t - C(t,2)/n) · ⌊n/2⌋! · ⌈n/2⌉!, exactly.  May be non-positive; callers
/// decide whether the bound applies.
inline Rational chcount_lower_bound(int t, int n) {
    if (t < 1 || n < 1) throw InvalidInput("chain bound needs t >= 1 and n >= 1");
    Rational pairs(BigInt(t) * (t - 1) / 2, BigInt(n));
    Rational coeff = Rational(t) - pairs;
    return coeff * Rational(factorial(n / 2) * factorial(n - n / 2));
}

}  // namespace posetpack
