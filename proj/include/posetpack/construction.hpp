#pragma once

// Explicit incomparable families: the code-ordered system of good functions,
// the layered lower-bound packing, path and thin families, and the V-family.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/embedding.hpp"
#include "posetpack/labeling.hpp"
#include "posetpack/packing.hpp"
#include "posetpack/poset.hpp"

namespace posetpack {

struct OrderedCopyOptions {
    Rational epsilon_prime{1, 4};
    std::optional<int> m_max;
    /// Lower limit on the block count k.  The smallest admissible k is used
    /// unless this forces more blocks.
    int min_blocks = 1;
    /// Copies are kept in memory up to this many; beyond it only the lazy
    /// stream is available.
    std::size_t eager_limit = std::size_t{1} << 20;
};

/// Copies f_1..f_K of P in B_N, N = k·m, sorted by code so that a set of a
/// later copy is never contained in a set of an earlier one.
struct OrderedCopySystem {
    std::shared_ptr<const Poset> poset;
    EmbeddingKind kind = EmbeddingKind::weak;
    Embedding base;  // hull size t on B_m
    int t = 0;
    int base_m = 0;
    int blocks = 0;  // k
    int ground = 0;  // N
    LatticeLabeling labeling;
    BigInt count;            // K from the block sum
    Rational closed_form;    // (2^N / t)(1 - (1 - t/2^m)^k)
    Rational guarantee;      // 2^N (1 - ε′) / t
    Rational epsilon_prime;
    bool materialized = false;
    std::vector<std::vector<Mask>> copies;
    std::vector<std::vector<std::uint32_t>> codes;

    [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> interval() const { return labeling.interval(); }

    /// Streams (code, images) in increasing code order.  `fn` returns false
    /// to stop.
    template <class Fn>
    void for_each_copy(Fn&& fn) const {
        const auto [p, last] = labeling.interval();
        const std::uint32_t labels = labeling.label_count();
        std::vector<std::uint32_t> code(blocks, 0);
        std::vector<Mask> images(base.images.size(), 0);
        auto emit = [&](int special) {
            for (std::size_t x = 0; x < images.size(); ++x) {
                Mask g = 0;
                for (int r = 0; r < blocks; ++r) {
                    Mask local = r == special ? base.images[x] : labeling.subset_with_rank(code[r]);
                    g |= local << (r * base_m);
                }
                images[x] = g;
            }
            return fn(static_cast<const std::vector<std::uint32_t>&>(code),
                      static_cast<const std::vector<Mask>&>(images));
        };
        auto rec = [&](auto&& self, int r, int special) -> bool {
            if (r == blocks) return special < 0 || emit(special);
            for (std::uint32_t label = 1; label <= labels; ++label) {
                bool in_interval = label >= p && label <= last;
                if (special < 0) {
                    if (in_interval && label != p) continue;
                    code[r] = label;
                    if (!self(self, r + 1, label == p ? r : -1)) return false;
                } else {
                    code[r] = label;
                    if (!self(self, r + 1, special)) return false;
                }
            }
            return true;
        };
        rec(rec, 0, -1);
    }
};

inline Rational rational_power(const Rational& q, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= q;
    return r;
}

inline Rational parse_rational(const std::string& text) {
    try {
        // cpp_int reads a leading 0 as octal and 0x as hex; accept decimal only.
        auto integer = [&](std::string d) {
            bool neg = !d.empty() && d.front() == '-';
            if (neg) d.erase(0, 1);
            if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos)
                throw InvalidInput("malformed number '" + text + "'");
            d.erase(0, std::min(d.find_first_not_of('0'), d.size() - 1));
            BigInt v(d);
            return neg ? BigInt(-v) : v;
        };
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            BigInt num = integer(text.substr(0, slash));
            BigInt den = integer(text.substr(slash + 1));
            if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(integer(text));
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rational(integer(text.substr(0, dot) + text.substr(dot + 1)), den);
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("malformed rational '" + text + "'");
    }
}

inline void require_open_unit(const Rational& e, const char* name) {
    if (e <= 0 || e >= 1) throw InvalidInput(std::string(name) + " must lie strictly between 0 and 1");
}

/// Good-function system over k blocks of a minimal-hull base embedding.
inline OrderedCopySystem build_ordered_copies(const Poset& p, EmbeddingKind kind, const OrderedCopyOptions& opt = {}) {
    require_open_unit(opt.epsilon_prime, "epsilon'");
    if (opt.min_blocks < 1) throw InvalidInput("min_blocks must be at least 1");
    auto hull = min_hull(p, kind, opt.m_max);

    OrderedCopySystem sys;
    sys.poset = std::make_shared<const Poset>(p);
    sys.kind = kind;
    sys.t = hull.value;
    // B_0 admits no block structure; the one-element witness {∅} is lifted
    // into B_1, which leaves its hull unchanged.
    sys.base_m = std::max(hull.ambient_m, 1);
    sys.base = Embedding{sys.poset, GroundSet(sys.base_m), hull.witness.images, kind};
    sys.epsilon_prime = opt.epsilon_prime;

    const BigInt lattice = BigInt(1) << sys.base_m;
    const Rational shrink = Rational(1) - Rational(BigInt(sys.t), lattice);
    int k = opt.min_blocks;
    while (rational_power(shrink, k) > opt.epsilon_prime) ++k;
    sys.blocks = k;
    sys.ground = k * sys.base_m;
    if (sys.ground > kMaxGround)
        throw CapExceeded("ordered copies need N=" + std::to_string(sys.ground) + " > " + std::to_string(kMaxGround));
    sys.labeling = hull_interval_labeling(sys.base);

    BigInt sum = 0;
    const BigInt outside = lattice - sys.t;
    for (int i = 1; i <= k; ++i) sum += boost::multiprecision::pow(outside, i - 1) * boost::multiprecision::pow(lattice, k - i);
    sys.count = sum;
    const BigInt full = BigInt(1) << sys.ground;
    sys.closed_form = Rational(full, BigInt(sys.t)) * (Rational(1) - rational_power(shrink, k));
    sys.guarantee = Rational(full, BigInt(sys.t)) * (Rational(1) - opt.epsilon_prime);

    if (sys.count <= opt.eager_limit) {
        sys.materialized = true;
        sys.for_each_copy([&](const std::vector<std::uint32_t>& code, const std::vector<Mask>& images) {
            sys.codes.push_back(code);
            sys.copies.push_back(images);
            return true;
        });
    }
    return sys;
}

/// First pair i1 < i2 (in list order) where some set of copy i2 is contained
/// in (or equal to) some set of copy i1.
inline std::optional<std::pair<std::size_t, std::size_t>> find_order_violation(
    const std::vector<std::vector<Mask>>& copies) {
    for (std::size_t i = 0; i < copies.size(); ++i)
        for (std::size_t j = i + 1; j < copies.size(); ++j)
            for (Mask a : copies[i])
                for (Mask b : copies[j])
                    if (bits::subset(b, a)) return std::pair{i, j};
    return std::nullopt;
}

struct LowerBoundFamily {
    PackingFamily family;
    OrderedCopySystem system;
    int layer_top = 0;     // ⌊(n−N)/2⌋
    BigInt expected_size;  // Σ_{i=1}^{K} C(n−N, ⌊(n−N)/2⌋ − i)
    Rational target;       // (1−ε)/t · C(n, ⌊n/2⌋)
    bool meets_target = false;
};

struct LowerBoundOptions {
    Rational epsilon{1, 2};
    std::optional<int> m_max;
    int min_blocks = 1;
};

/// Layered packing in B_n: block part from the ordered system on the first N
/// positions, a layer T of Q = {N+1..n} selecting which copy f_i to use.
inline LowerBoundFamily build_incomparable_family(const Poset& p, EmbeddingKind kind, int n,
                                                  const LowerBoundOptions& opt = {}) {
    require_open_unit(opt.epsilon, "epsilon");
    GroundSet ground(n);
    OrderedCopyOptions sys_opt;
    sys_opt.epsilon_prime = opt.epsilon / 2;
    sys_opt.m_max = opt.m_max;
    sys_opt.min_blocks = opt.min_blocks;
    sys_opt.eager_limit = kMaxGround;
    auto sys = build_ordered_copies(p, kind, sys_opt);

    const int big_n = sys.ground;
    if (sys.count > kMaxGround)
        throw CapExceeded("K=" + sys.count.str() + " exceeds what any ground set up to n=" +
                          std::to_string(kMaxGround) + " can layer");
    const int count = sys.count.convert_to<int>();
    const int minimal_n = big_n + 2 * count;
    if (n < minimal_n)
        throw InvalidInput("n=" + std::to_string(n) + " is too small for N=" + std::to_string(big_n) +
                           ", K=" + std::to_string(count) + "; the smallest feasible n is " +
                           std::to_string(minimal_n));

    LowerBoundFamily out;
    out.layer_top = (n - big_n) / 2;
    out.family.ground = ground;
    out.family.kind = kind;
    out.family.poset = sys.poset;

    const Mask q = ground.full() & ~bits::full(big_n);
    for (int i = 1; i <= count; ++i) {
        const auto& block = sys.copies[i - 1];
        bits::for_each_subset_of_size(q, out.layer_top - i, [&](Mask t) {
            std::vector<Mask> copy(block.size());
            for (std::size_t x = 0; x < block.size(); ++x) copy[x] = t | block[x];
            out.family.copies.push_back(std::move(copy));
            return true;
        });
        out.expected_size += binomial(n - big_n, out.layer_top - i);
    }
    out.target = (Rational(1) - opt.epsilon) / sys.t * Rational(binomial(n, n / 2));
    out.meets_target = Rational(BigInt(out.family.size())) >= out.target;
    out.system = std::move(sys);
    return out;
}

inline BigInt path_family_size(int h, int n) { return binomial(n - h, (n - h) / 2); }

/// Chains G ⊂ {1}∪G ⊂ ... ⊂ {1..h}∪G for every G ⊆ {h+1..n} of size ⌊(n−h)/2⌋.
inline PackingFamily path_family(int h, int n) {
    if (h < 0) throw InvalidInput("h must be non-negative");
    if (n < h) throw InvalidInput("path family needs n >= h");
    GroundSet ground(n);
    PackingFamily fam;
    fam.ground = ground;
    fam.kind = EmbeddingKind::weak;
    fam.poset = std::make_shared<const Poset>(chain_poset(h + 1));
    const Mask upper = ground.full() & ~bits::full(h);
    bits::for_each_subset_of_size(upper, (n - h) / 2, [&](Mask g) {
        std::vector<Mask> copy;
        for (int j = 0; j <= h; ++j) copy.push_back(bits::full(j) | g);
        fam.copies.push_back(std::move(copy));
        return true;
    });
    return fam;
}

/// A thin (weak) or slim (induced) poset placed into the interval
/// [G, {1..h}∪G] of every path-family copy.
inline PackingFamily thin_family(const Poset& p, int n, EmbeddingKind kind = EmbeddingKind::weak) {
    const int h = height(p);
    if (n < h) throw InvalidInput("thin family needs n >= height(P)");
    auto witness = height_witness(p, kind);
    if (!witness)
        throw InvalidInput(std::string("poset is not ") + (kind == EmbeddingKind::weak ? "thin" : "slim"));
    GroundSet ground(n);
    PackingFamily fam;
    fam.ground = ground;
    fam.kind = kind;
    fam.poset = std::make_shared<const Poset>(p);
    const Mask upper = ground.full() & ~bits::full(h);
    bits::for_each_subset_of_size(upper, (n - h) / 2, [&](Mask g) {
        std::vector<Mask> copy;
        for (Mask w : witness->images) copy.push_back(w | g);
        fam.copies.push_back(std::move(copy));
        return true;
    });
    return fam;
}

/// Σ_{i=1}^{⌊(n+2)/4⌋} C(n−2i, ⌈n/2⌉−2i+1).
inline BigInt v_conjecture_sum(int n) {
    BigInt total = 0;
    for (int i = 1; i <= (n + 2) / 4; ++i) total += binomial(n - 2 * i, (n + 1) / 2 - 2 * i + 1);
    return total;
}

/// Union of the families P_i: base F ∪ {n−2i+3..n}, adding n−2i+1 or n−2i+2
/// for the two upper elements.  For i = 1 the fixed tail is empty.
inline PackingFamily v_family(int n) {
    if (n < 2) throw InvalidInput("V-family needs n >= 2");
    GroundSet ground(n);
    PackingFamily fam;
    fam.ground = ground;
    fam.kind = EmbeddingKind::weak;
    fam.poset = std::make_shared<const Poset>(v_poset());
    auto bit = [](int element) { return Mask{1} << (element - 1); };
    for (int i = 1; i <= (n + 2) / 4; ++i) {
        const Mask tail = ground.full() & ~bits::full(n - 2 * i + 2);
        const int f_size = (n + 1) / 2 - 2 * i + 1;
        bits::for_each_subset_of_size(bits::full(n - 2 * i), f_size, [&](Mask f) {
            const Mask base = f | tail;
            fam.copies.push_back({base, base | bit(n - 2 * i + 1), base | bit(n - 2 * i + 2)});
            return true;
        });
    }
    return fam;
}

}  // namespace posetpack
