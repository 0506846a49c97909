#pragma once

// Weak and induced embeddings of a poset into B_n: validity, exhaustive
// enumeration, minimal convex hull size t_j(P), thin/slim classification.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/poset.hpp"

namespace posetpack {

enum class EmbeddingKind { weak, induced };

inline const char* to_string(EmbeddingKind k) { return k == EmbeddingKind::weak ? "weak" : "induced"; }

inline EmbeddingKind parse_kind(const std::string& s) {
    if (s == "weak") return EmbeddingKind::weak;
    if (s == "induced") return EmbeddingKind::induced;
    throw InvalidInput("embedding kind must be 'weak' or 'induced', got '" + s + "'");
}

/// One copy of a poset in B_n.  `images[x]` is the set assigned to element x.
struct Embedding {
    std::shared_ptr<const Poset> poset;
    GroundSet ground;
    std::vector<Mask> images;
    EmbeddingKind kind = EmbeddingKind::weak;

    [[nodiscard]] Subset at(int x) const { return {ground, images.at(x)}; }
    [[nodiscard]] SetFamily image() const { return SetFamily(ground, images); }

    friend bool operator==(const Embedding& a, const Embedding& b) {
        return a.ground == b.ground && a.images == b.images && a.kind == b.kind &&
               (a.poset == b.poset || (a.poset && b.poset && *a.poset == *b.poset));
    }
};

/// Injective, order-preserving, and (for induced) order-reflecting.
inline bool is_valid_embedding(const Poset& p, std::span<const Mask> images, EmbeddingKind kind) {
    if (static_cast<int>(images.size()) != p.size()) return false;
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) {
            if (x == y) continue;
            if (images[x] == images[y]) return false;
            bool contained = bits::subset(images[x], images[y]);
            if (p.less(x, y) && !contained) return false;
            if (kind == EmbeddingKind::induced && contained && !p.less(x, y)) return false;
        }
    return true;
}

inline bool is_valid_embedding(const Embedding& e) {
    for (Mask m : e.images)
        if ((m & ~e.ground.full()) != 0) return false;
    return e.poset && is_valid_embedding(*e.poset, e.images, e.kind);
}

namespace detail {

// Backtracking over a fixed linear extension.  Candidates for each element
// are supersets of the union of its predecessors' images, in canonical
// order.  With `canonical_first` the first element may only take {1..s}.
// `prune(assigned)` sees masks in assignment order; `visit(images)` sees
// them indexed by element.  Either returning true / false respectively
// stops the whole search.
template <class Visit, class Prune>
class EmbeddingSearch {
public:
    EmbeddingSearch(const Poset& p, int n, EmbeddingKind kind, bool canonical_first, Visit& visit,
                    Prune& prune)
        : p_(p), n_(n), kind_(kind), canonical_first_(canonical_first), visit_(visit), prune_(prune),
          order_(p.linear_extension()), images_(p.size(), 0) {}

    bool run() {
        if (p_.size() == 0) return visit_(std::span<const Mask>(images_));
        return step(0);
    }

private:
    bool accept(int x, Mask cand) const {
        for (int d = 0; d < static_cast<int>(assigned_.size()); ++d) {
            int y = order_[d];
            Mask img = assigned_[d];
            if (img == cand) return false;
            if (kind_ == EmbeddingKind::induced && !p_.less(y, x) && bits::comparable(img, cand))
                return false;
        }
        return true;
    }

    bool place(int depth, int x, Mask cand) {
        if (!accept(x, cand)) return true;
        images_[x] = cand;
        assigned_.push_back(cand);
        bool keep_going = true;
        if (!prune_(std::span<const Mask>(assigned_))) {
            keep_going = depth + 1 == p_.size() ? visit_(std::span<const Mask>(images_)) : step(depth + 1);
        }
        assigned_.pop_back();
        return keep_going;
    }

    bool step(int depth) {
        const int x = order_[depth];
        if (depth == 0 && canonical_first_) {
            for (int s = 0; s <= n_; ++s)
                if (!place(depth, x, bits::full(s))) return false;
            return true;
        }
        Mask required = 0;
        for (int d = 0; d < depth; ++d)
            if (p_.less(order_[d], x)) required |= assigned_[d];
        const Mask free = bits::full(n_) & ~required;
        for (int extra = 0; extra <= bits::size(free); ++extra) {
            bool more = bits::for_each_subset_of_size(free, extra, [&](Mask add) {
                return place(depth, x, required | add);
            });
            if (!more) return false;
        }
        return true;
    }

    const Poset& p_;
    int n_;
    EmbeddingKind kind_;
    bool canonical_first_;
    Visit& visit_;
    Prune& prune_;
    std::vector<int> order_;
    std::vector<Mask> images_;
    std::vector<Mask> assigned_;
};

template <class Visit, class Prune>
bool search_embeddings(const Poset& p, int n, EmbeddingKind kind, bool canonical_first, Visit&& visit,
                       Prune&& prune) {
    EmbeddingSearch<std::remove_reference_t<Visit>, std::remove_reference_t<Prune>> s(
        p, n, kind, canonical_first, visit, prune);
    return s.run();
}

}  // namespace detail

/// Streams every valid embedding of the given kind into B_n exactly once,
/// in deterministic order.  `fn(const Embedding&)` returns false to stop.
template <class Fn>
void for_each_embedding(const Poset& p, int n, EmbeddingKind kind, Fn&& fn) {
    GroundSet ground(n);
    auto shared = std::make_shared<const Poset>(p);
    detail::search_embeddings(
        p, n, kind, false,
        [&](std::span<const Mask> images) {
            Embedding e{shared, ground, {images.begin(), images.end()}, kind};
            return fn(static_cast<const Embedding&>(e));
        },
        [](std::span<const Mask>) { return false; });
}

inline std::vector<Embedding> enumerate_embeddings(const Poset& p, int n, EmbeddingKind kind,
                                                   std::optional<std::size_t> limit = std::nullopt) {
    std::vector<Embedding> out;
    if (limit && *limit == 0) return out;
    for_each_embedding(p, n, kind, [&](const Embedding& e) {
        out.push_back(e);
        return !limit || out.size() < *limit;
    });
    return out;
}

struct MinHullResult {
    int value = 0;  // t_j(P), certified for ambient sizes up to m_max
    Embedding witness;
    int ambient_m = 0;
    int m_max = 0;
};

inline int default_m_max(const Poset& p) { return 2 * p.size(); }

/// Minimum of |conv(image)| over embeddings of `kind` into B_m for
/// height(P) <= m <= m_max.  Ties go to the smallest m and then the first
/// embedding in search order.
inline MinHullResult min_hull(const Poset& p, EmbeddingKind kind, std::optional<int> m_max_opt = std::nullopt) {
    const int h = height(p);
    const int m_max = m_max_opt.value_or(default_m_max(p));
    if (m_max < h)
        throw InvalidInput("m_max=" + std::to_string(m_max) + " is below the poset height " + std::to_string(h));
    (void)GroundSet(m_max);  // cap check

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::size_t best = kNone;
    std::vector<Mask> best_images;
    int best_m = -1;
    const std::size_t floor = static_cast<std::size_t>(p.size());

    for (int m = h; m <= m_max && best != floor; ++m) {
        detail::search_embeddings(
            p, m, kind, true,
            [&](std::span<const Mask> images) {
                std::size_t s = bits::hull_size_capped(images, best);
                if (s < best) {
                    best = s;
                    best_images.assign(images.begin(), images.end());
                    best_m = m;
                }
                return best != floor;
            },
            [&](std::span<const Mask> assigned) {
                return best != kNone && bits::hull_size_capped(assigned, best) >= best;
            });
    }
    if (best == kNone)
        throw InvalidInput("no " + std::string(to_string(kind)) + " embedding exists into B_m for m <= " +
                           std::to_string(m_max));
    MinHullResult r;
    r.value = static_cast<int>(best);
    r.witness = Embedding{std::make_shared<const Poset>(p), GroundSet(best_m), best_images, kind};
    r.ambient_m = best_m;
    r.m_max = m_max;
    return r;
}

/// First embedding (in enumeration order) of `kind` into B_height(P), if any.
inline std::optional<Embedding> height_witness(const Poset& p, EmbeddingKind kind) {
    auto found = enumerate_embeddings(p, height(p), kind, 1);
    if (found.empty()) return std::nullopt;
    return found.front();
}

inline bool is_thin(const Poset& p) { return height_witness(p, EmbeddingKind::weak).has_value(); }
inline bool is_slim(const Poset& p) { return height_witness(p, EmbeddingKind::induced).has_value(); }

}  // namespace posetpack
