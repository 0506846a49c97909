#pragma once

// Finite strict partial orders on at most 16 elements.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "posetpack/error.hpp"

namespace posetpack {

inline constexpr int kMaxPosetSize = 16;

/// Immutable finite poset.  Elements are indices 0..size()-1; labels are for
/// presentation only.  The relation is stored transitively closed, one
/// bitmask row per element: bit y of above_[x] is set iff x < y.
class Poset {
public:
    Poset() = default;

    [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& label(int x) const { return labels_.at(x); }

    [[nodiscard]] bool less(int x, int y) const { return ((above_[x] >> y) & 1U) != 0; }
    [[nodiscard]] bool comparable(int x, int y) const { return less(x, y) || less(y, x); }

    /// Elements strictly above / below x, as bitmasks over element indices.
    [[nodiscard]] std::uint32_t above(int x) const { return above_[x]; }
    [[nodiscard]] std::uint32_t below(int x) const {
        std::uint32_t m = 0;
        for (int y = 0; y < size(); ++y)
            if (less(y, x)) m |= 1U << y;
        return m;
    }

    [[nodiscard]] int index_of(const std::string& name) const {
        auto it = std::find(labels_.begin(), labels_.end(), name);
        if (it == labels_.end()) throw InvalidInput("unknown poset element '" + name + "'");
        return static_cast<int>(it - labels_.begin());
    }

    /// Hasse diagram: pairs (x, y) with x < y and nothing strictly between.
    [[nodiscard]] std::vector<std::pair<int, int>> covers() const {
        std::vector<std::pair<int, int>> out;
        for (int x = 0; x < size(); ++x)
            for (int y = 0; y < size(); ++y) {
                if (!less(x, y)) continue;
                bool between = (above_[x] & below(y)) != 0;
                if (!between) out.emplace_back(x, y);
            }
        return out;
    }

    /// The dual order (every relation reversed), same labels.
    [[nodiscard]] Poset dual() const {
        Poset d;
        d.labels_ = labels_;
        d.above_.assign(labels_.size(), 0);
        for (int x = 0; x < size(); ++x)
            for (int y = 0; y < size(); ++y)
                if (less(x, y)) d.above_[y] |= 1U << x;
        return d;
    }

    /// Linear extension: repeatedly take the smallest-index minimal element
    /// of what remains.  Used as the fixed assignment order by every search.
    [[nodiscard]] std::vector<int> linear_extension() const {
        std::vector<int> order;
        std::uint32_t placed = 0;
        while (static_cast<int>(order.size()) < size()) {
            for (int x = 0; x < size(); ++x) {
                if ((placed >> x) & 1U) continue;
                if ((below(x) & ~placed) == 0) {
                    order.push_back(x);
                    placed |= 1U << x;
                    break;
                }
            }
        }
        return order;
    }

    friend bool operator==(const Poset&, const Poset&) = default;

    /// Builds from labels plus cover (or any generating) pairs and closes
    /// transitively.  Rejects duplicate or unknown labels and cycles.
    static Poset from_relations(std::vector<std::string> labels,
                                const std::vector<std::pair<int, int>>& pairs);

    static Poset from_cover_relations(
        std::vector<std::string> labels,
        const std::vector<std::pair<std::string, std::string>>& covers) {
        std::map<std::string, int> index;
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            if (!index.emplace(labels[i], i).second)
                throw InvalidInput("duplicate poset element '" + labels[i] + "'");
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [lo, hi] : covers) {
            auto a = index.find(lo);
            auto b = index.find(hi);
            if (a == index.end()) throw InvalidInput("cover references unknown element '" + lo + "'");
            if (b == index.end()) throw InvalidInput("cover references unknown element '" + hi + "'");
            pairs.emplace_back(a->second, b->second);
        }
        return from_relations(std::move(labels), pairs);
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::uint32_t> above_;
};

namespace detail {

// Depth-first search for a directed cycle in the generating pairs; returns
// the cycle as a vertex list with the first vertex repeated at the end.
inline std::vector<int> find_cycle(int size, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::vector<int>> adj(size);
    for (auto [a, b] : pairs) adj[a].push_back(b);
    std::vector<int> state(size, 0), parent(size, -1);
    std::vector<int> cycle;
    auto dfs = [&](auto&& self, int v) -> bool {
        state[v] = 1;
        for (int w : adj[v]) {
            if (state[w] == 1) {
                cycle.push_back(w);
                for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
                cycle.push_back(w);
                std::reverse(cycle.begin(), cycle.end());
                return true;
            }
            if (state[w] == 0) {
                parent[w] = v;
                if (self(self, w)) return true;
            }
        }
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < size; ++v)
        if (state[v] == 0 && dfs(dfs, v)) return cycle;
    return {};
}

}  // namespace detail

inline Poset Poset::from_relations(std::vector<std::string> labels,
                                   const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(labels.size());
    if (n > kMaxPosetSize)
        throw CapExceeded("poset has " + std::to_string(n) + " elements; at most " +
                          std::to_string(kMaxPosetSize) + " are supported");
    {
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) throw InvalidInput("duplicate poset element '" + *dup + "'");
    }
    for (auto [a, b] : pairs)
        if (a < 0 || a >= n || b < 0 || b >= n) throw InvalidInput("relation references unknown element");

    auto cycle = detail::find_cycle(n, pairs);
    if (!cycle.empty()) {
        std::string msg = "relations contain a cycle: ";
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) msg += " < ";
            msg += labels[cycle[i]];
        }
        throw InvalidInput(msg);
    }

    Poset p;
    p.labels_ = std::move(labels);
    p.above_.assign(n, 0);
    for (auto [a, b] : pairs) p.above_[a] |= 1U << b;
    // Warshall on bit rows.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if ((p.above_[i] >> k) & 1U) p.above_[i] |= p.above_[k];
    return p;
}

/// Number of elements in a longest chain, minus one.
inline int height(const Poset& p) {
    std::vector<int> longest(p.size(), 0);
    int best = 0;
    for (int x : p.linear_extension()) {
        for (int y = 0; y < p.size(); ++y)
            if (p.less(y, x)) longest[x] = std::max(longest[x], longest[y] + 1);
        best = std::max(best, longest[x]);
    }
    return p.size() == 0 ? 0 : best;
}

/// Total order x1 < x2 < ... < x_length.
inline Poset chain_poset(int length) {
    if (length < 1) throw InvalidInput("chain length must be at least 1");
    if (length > kMaxPosetSize)
        throw CapExceeded("chain length " + std::to_string(length) + " exceeds the poset cap");
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < length; ++i) {
        labels.push_back("x" + std::to_string(i + 1));
        if (i > 0) pairs.emplace_back(i - 1, i);
    }
    return Poset::from_relations(std::move(labels), pairs);
}

enum class ForkDirection { up, down };

/// V_k (one minimum below k pairwise unrelated elements) or its dual
/// Lambda_k.  k = 0 is the one-element poset.
inline Poset fork_poset(int k, ForkDirection direction) {
    if (k < 0) throw InvalidInput("fork arity must be non-negative");
    if (k + 1 > kMaxPosetSize)
        throw CapExceeded("fork with " + std::to_string(k + 1) + " elements exceeds the poset cap");
    std::vector<std::string> labels{"a"};
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= k; ++i) {
        labels.push_back(k == 2 ? std::string(1, static_cast<char>('a' + i)) : "b" + std::to_string(i));
        if (direction == ForkDirection::up)
            pairs.emplace_back(0, i);
        else
            pairs.emplace_back(i, 0);
    }
    return Poset::from_relations(std::move(labels), pairs);
}

inline Poset single_poset() { return Poset::from_relations({"a"}, {}); }
inline Poset v_poset() { return fork_poset(2, ForkDirection::up); }

/// a < b < c and a < d < c with b, d unrelated: B_2 as a poset.
inline Poset diamond_poset() {
    return Poset::from_cover_relations({"a", "b", "c", "d"},
                                       {{"a", "b"}, {"b", "c"}, {"a", "d"}, {"d", "c"}});
}

}  // namespace posetpack
