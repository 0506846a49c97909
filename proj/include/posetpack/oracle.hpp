#pragma once

// Desk-scale ground truth: exact M_j(P, n) by exhaustive packing search, the
// chain-counting upper bound, and the Bollobás set-pair inequality.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/embedding.hpp"
#include "posetpack/packing.hpp"
#include "posetpack/poset.hpp"

namespace posetpack {

struct ImageBudget {
    int max_n = 6;
    int max_poset = 5;
    std::size_t max_images = 200000;
};

/// A distinct copy image together with the first embedding that produced it.
struct CopyImage {
    SetFamily image;
    std::vector<Mask> embedding;
};

/// All distinct images of valid embeddings, canonical order.  Embeddings that
/// differ by an automorphism of P collapse to one image.
inline std::vector<CopyImage> enumerate_copy_images(const Poset& p, int n, EmbeddingKind kind,
                                                    const ImageBudget& budget = {}) {
    if (n > budget.max_n)
        throw CapExceeded("exact search is limited to n <= " + std::to_string(budget.max_n) + " (got n=" +
                          std::to_string(n) + ")");
    if (p.size() > budget.max_poset)
        throw CapExceeded("exact search is limited to posets with <= " + std::to_string(budget.max_poset) +
                          " elements (got " + std::to_string(p.size()) + ")");
    GroundSet ground(n);
    std::map<std::vector<Mask>, std::vector<Mask>, std::less<>> seen;
    bool overflow = false;
    auto key_less = [](const std::vector<Mask>& a, const std::vector<Mask>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), bits::canonical_less);
    };
    for_each_embedding(p, n, kind, [&](const Embedding& e) {
        std::vector<Mask> key = e.images;
        bits::canonical_sort(key);
        seen.try_emplace(std::move(key), e.images);
        if (seen.size() > budget.max_images) {
            overflow = true;
            return false;
        }
        return true;
    });
    if (overflow) {
        double estimate = std::pow(std::ldexp(1.0, n), p.size());
        throw CapExceeded("more than " + std::to_string(budget.max_images) +
                          " distinct images (rough upper estimate " + std::to_string(estimate) + ")");
    }
    std::vector<CopyImage> out;
    out.reserve(seen.size());
    for (auto& [key, emb] : seen) out.push_back({SetFamily(ground, key), emb});
    std::sort(out.begin(), out.end(), [&](const CopyImage& a, const CopyImage& b) {
        return key_less(a.image.masks(), b.image.masks());
    });
    return out;
}

// ---------------------------------------------------------------------------
// Bitset graphs and maximum independent set.

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    [[nodiscard]] bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    [[nodiscard]] std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    [[nodiscard]] bool none() const {
        return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
    }
    /// Lowest set index, or size() if none.
    [[nodiscard]] std::size_t first() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
        return n_;
    }
    [[nodiscard]] std::size_t size() const { return n_; }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bitset& subtract(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            for (std::uint64_t w = w_[k]; w; w &= w - 1) fn(k * 64 + std::countr_zero(w));
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Undirected simple graph on 0..size-1 as adjacency bitsets.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n, Bitset(n)) {}
    void add_edge(std::size_t a, std::size_t b) {
        if (a == b) return;
        adj_[a].set(b);
        adj_[b].set(a);
    }
    [[nodiscard]] bool adjacent(std::size_t a, std::size_t b) const { return adj_[a].test(b); }
    [[nodiscard]] const Bitset& neighbours(std::size_t v) const { return adj_[v]; }
    [[nodiscard]] std::size_t size() const { return adj_.size(); }
    [[nodiscard]] std::size_t degree(std::size_t v) const { return adj_[v].count(); }

private:
    std::vector<Bitset> adj_;
};

/// Copy images as nodes; an edge joins two images that are NOT incomparable.
struct ConflictGraph {
    std::vector<CopyImage> nodes;
    Graph conflicts;
};

inline ConflictGraph build_conflict_graph(std::vector<CopyImage> nodes) {
    ConflictGraph g{std::move(nodes), Graph()};
    const std::size_t k = g.nodes.size();
    g.conflicts = Graph(k);
    std::vector<std::vector<Mask>> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        lo[i] = bits::minimal_members(g.nodes[i].image.masks());
        hi[i] = bits::maximal_members(g.nodes[i].image.masks());
    }
    auto below = [&](std::size_t i, std::size_t j) {
        for (Mask a : lo[i])
            for (Mask b : hi[j])
                if (bits::subset(a, b)) return true;
        return false;
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (below(i, j) || below(j, i)) g.conflicts.add_edge(i, j);
    return g;
}

struct SearchBudget {
    std::uint64_t node_cap = 50'000'000;
    std::chrono::milliseconds time_cap{600'000};
};

struct IndependentSetOptions {
    /// Optional per-vertex weights with a capacity: any independent set has
    /// total weight at most `capacity`.  Used as an extra bound.
    std::vector<std::uint64_t> weights;
    std::uint64_t capacity = 0;
    /// Stop as soon as a set of this size is found (a proven upper bound).
    std::optional<std::size_t> known_upper;
    SearchBudget budget;
};

struct IndependentSetResult {
    std::vector<std::size_t> vertices;  // in original vertex numbering, ascending search order
    std::uint64_t nodes = 0;
};

/// Exact maximum independent set by branch and bound.  Vertices are explored
/// in descending degree (ties by index); branches include before excluding,
/// so the returned set is the lexicographically least maximum set in that
/// order.  Bounds: greedy clique cover, optional weight capacity.
inline IndependentSetResult max_independent_set(const Graph& g, const IndependentSetOptions& opt = {}) {
    const std::size_t v = g.size();
    std::vector<std::size_t> order(v);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> deg(v);
    for (std::size_t i = 0; i < v; ++i) deg[i] = g.degree(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });

    // Relabel to search positions.
    std::vector<Bitset> adj(v, Bitset(v));
    for (std::size_t a = 0; a < v; ++a)
        for (std::size_t b = 0; b < v; ++b)
            if (g.adjacent(order[a], order[b])) adj[a].set(b);

    const bool weighted = !opt.weights.empty();
    std::vector<std::size_t> by_weight;
    std::vector<std::uint64_t> weight(v, 0);
    if (weighted) {
        for (std::size_t a = 0; a < v; ++a) weight[a] = opt.weights[order[a]];
        by_weight.resize(v);
        std::iota(by_weight.begin(), by_weight.end(), 0);
        std::stable_sort(by_weight.begin(), by_weight.end(),
                         [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });
    }

    // Greedy seed: smallest degree first.
    std::size_t target = 0;
    {
        std::vector<std::size_t> asc(order.rbegin(), order.rend());
        Bitset blocked(v);
        for (std::size_t orig : asc) {
            std::size_t a = static_cast<std::size_t>(std::find(order.begin(), order.end(), orig) - order.begin());
            if (blocked.test(a)) continue;
            ++target;
            blocked.set(a);
            adj[a].for_each([&](std::size_t b) { blocked.set(b); });
        }
    }

    IndependentSetResult result;
    std::vector<std::size_t> current, best;
    std::uint64_t used_weight = 0;
    bool done = false;
    const auto start = std::chrono::steady_clock::now();

    auto clique_cover_bound = [&](const Bitset& cand) {
        Bitset rest = cand;
        std::size_t classes = 0;
        while (!rest.none()) {
            ++classes;
            Bitset pool = rest;
            while (!pool.none()) {
                std::size_t u = pool.first();
                rest.reset(u);
                pool.reset(u);
                pool &= adj[u];
            }
        }
        return classes;
    };
    auto weight_bound = [&](const Bitset& cand) {
        std::uint64_t room = opt.capacity - used_weight;
        std::size_t fits = 0;
        for (std::size_t a : by_weight) {
            if (!cand.test(a)) continue;
            if (weight[a] > room) break;
            room -= weight[a];
            ++fits;
        }
        return fits;
    };

    auto dfs = [&](auto&& self, Bitset cand) -> void {
        if (done) return;
        if (++result.nodes > opt.budget.node_cap ||
            ((result.nodes & 1023) == 0 && std::chrono::steady_clock::now() - start > opt.budget.time_cap)) {
            std::optional<long long> lower;
            if (!best.empty()) lower = static_cast<long long>(best.size());
            std::optional<long long> upper;
            if (opt.known_upper) upper = static_cast<long long>(*opt.known_upper);
            throw BudgetExceeded("independent set search exceeded its budget after " +
                                     std::to_string(result.nodes) + " nodes",
                                 lower, upper);
        }
        if (cand.none()) {
            if (current.size() >= target) {
                best = current;
                target = current.size() + 1;
                if (opt.known_upper && best.size() >= *opt.known_upper) done = true;
            }
            return;
        }
        std::size_t bound = cand.count();
        if (current.size() + bound < target) return;
        if (weighted) bound = std::min(bound, weight_bound(cand));
        if (current.size() + bound < target) return;
        bound = std::min(bound, clique_cover_bound(cand));
        if (current.size() + bound < target) return;

        std::size_t a = cand.first();
        if (!weighted || weight[a] <= opt.capacity - used_weight) {
            Bitset with = cand;
            with.reset(a);
            with.subtract(adj[a]);
            current.push_back(a);
            used_weight += weighted ? weight[a] : 0;
            self(self, std::move(with));
            used_weight -= weighted ? weight[a] : 0;
            current.pop_back();
        }
        cand.reset(a);
        self(self, std::move(cand));
    };

    Bitset all(v);
    for (std::size_t a = 0; a < v; ++a) all.set(a);
    if (v > 0) dfs(dfs, all);
    for (std::size_t a : best) result.vertices.push_back(order[a]);
    return result;
}

/// Exhaustive reference: tries every vertex subset.  Only for tiny graphs.
inline std::size_t naive_max_independent_set(const Graph& g) {
    const std::size_t v = g.size();
    if (v > 24) throw CapExceeded("naive independent set is limited to 24 vertices");
    std::size_t best = 0;
    for (std::uint32_t s = 0; s < (1U << v); ++s) {
        bool ok = true;
        for (std::size_t a = 0; a < v && ok; ++a)
            if ((s >> a) & 1U)
                for (std::size_t b = a + 1; b < v; ++b)
                    if (((s >> b) & 1U) && g.adjacent(a, b)) {
                        ok = false;
                        break;
                    }
        if (ok) best = std::max<std::size_t>(best, std::popcount(s));
    }
    return best;
}

// ---------------------------------------------------------------------------

/// ⌊n! / chcount_lower_bound(t, n)⌋, or nullopt when that bound is not
/// positive.  Inherits the closed form's weakness at small n, so the exact
/// search never stops on it.
inline std::optional<BigInt> upper_bound_estimate(int t, int n) {
    Rational per_copy = chcount_lower_bound(t, n);
    if (per_copy <= 0) return std::nullopt;
    Rational q = Rational(factorial(n)) / per_copy;
    return BigInt(boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q));
}

struct PackingResult {
    std::size_t value = 0;  // M_j(P, n)
    PackingFamily witness;
    std::size_t images = 0;
    int min_hull_size = 0;                  // smallest hull among all images
    std::optional<BigInt> chain_bound;      // upper_bound_estimate(min_hull_size, n)
    std::uint64_t search_nodes = 0;
};

/// Exact maximum number of pairwise incomparable copies.  Counts distinct
/// images: two copies with the same image share sets and so conflict.
inline PackingResult max_incomparable_packing(const Poset& p, int n, EmbeddingKind kind,
                                              const ImageBudget& image_budget = {},
                                              const SearchBudget& search_budget = {}) {
    auto images = enumerate_copy_images(p, n, kind, image_budget);
    PackingResult out;
    out.images = images.size();
    out.witness.ground = GroundSet(n);
    out.witness.kind = kind;
    out.witness.poset = std::make_shared<const Poset>(p);
    if (images.empty()) return out;

    IndependentSetOptions opt;
    opt.budget = search_budget;
    std::size_t min_hull = std::numeric_limits<std::size_t>::max();
    if (n <= 20) {
        opt.capacity = factorial(n).convert_to<std::uint64_t>();
        std::uint64_t lightest = std::numeric_limits<std::uint64_t>::max();
        for (const auto& img : images) {
            auto hull = convex_hull(img.image);
            min_hull = std::min(min_hull, hull.size());
            opt.weights.push_back(count_chains_meeting(hull).convert_to<std::uint64_t>());
            lightest = std::min(lightest, opt.weights.back());
        }
        // Exact per-hull chain counts: hulls of incomparable copies share no chain.
        if (lightest > 0) opt.known_upper = std::min<std::size_t>(opt.capacity / lightest, images.size());
    } else {
        for (const auto& img : images) min_hull = std::min(min_hull, convex_hull(img.image).size());
    }
    out.min_hull_size = static_cast<int>(min_hull);
    out.chain_bound = upper_bound_estimate(out.min_hull_size, std::max(n, 1));

    auto graph = build_conflict_graph(std::move(images));
    auto mis = max_independent_set(graph.conflicts, opt);
    out.search_nodes = mis.nodes;
    out.value = mis.vertices.size();
    auto chosen = mis.vertices;
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t idx : chosen) out.witness.copies.push_back(graph.nodes[idx].embedding);
    return out;
}

// ---------------------------------------------------------------------------

struct SetPairSystem {
    GroundSet ground;
    std::vector<std::pair<Mask, Mask>> pairs;  // (A_i, B_i)
};

struct BollobasResult {
    Rational sum;
    std::vector<std::size_t> overlapping_pairs;                  // A_i ∩ B_i ≠ ∅
    std::optional<std::pair<std::size_t, std::size_t>> disjoint_cross;  // A_i ∩ B_j = ∅, i ≠ j
    std::optional<bool> holds;  // sum <= 1; unset when the hypotheses fail
};

/// Σ 1 / C(|A_i|+|B_i|, |A_i|), after checking both hypotheses.
inline BollobasResult bollobas_check(const SetPairSystem& sys) {
    BollobasResult r;
    for (std::size_t i = 0; i < sys.pairs.size(); ++i) {
        auto [a, b] = sys.pairs[i];
        if (a & b) r.overlapping_pairs.push_back(i);
        r.sum += Rational(BigInt(1), binomial(bits::size(a) + bits::size(b), bits::size(a)));
    }
    for (std::size_t i = 0; i < sys.pairs.size() && !r.disjoint_cross; ++i)
        for (std::size_t j = 0; j < sys.pairs.size(); ++j)
            if (i != j && (sys.pairs[i].first & sys.pairs[j].second) == 0) {
                r.disjoint_cross = std::pair{i, j};
                break;
            }
    if (r.overlapping_pairs.empty() && !r.disjoint_cross) r.holds = r.sum <= 1;
    return r;
}

/// (complement of the top set, bottom set) for every copy; each copy must
/// have a unique ⊆-least and ⊆-greatest set.
inline SetPairSystem set_pairs_from_family(const PackingFamily& fam) {
    SetPairSystem sys{fam.ground, {}};
    for (const auto& copy : fam.copies) {
        auto lo = bits::minimal_members(copy);
        auto hi = bits::maximal_members(copy);
        if (lo.size() != 1 || hi.size() != 1)
            throw InvalidInput("set pairs need copies with a unique least and greatest set");
        sys.pairs.emplace_back(fam.ground.full() & ~hi.front(), lo.front());
    }
    return sys;
}

}  // namespace posetpack
