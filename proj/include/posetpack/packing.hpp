#pragma once

// Families of poset copies and their verification: per-copy validity,
// pairwise image incomparability, pairwise hull incomparability.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/embedding.hpp"
#include "posetpack/poset.hpp"

namespace posetpack {

/// A list of copies of one poset in B_n.  copies[i][x] is the set assigned
/// to element x by copy i.  Construction order is preserved.
struct PackingFamily {
    GroundSet ground;
    EmbeddingKind kind = EmbeddingKind::weak;
    std::shared_ptr<const Poset> poset;
    std::vector<std::vector<Mask>> copies;

    [[nodiscard]] std::size_t size() const { return copies.size(); }
    [[nodiscard]] Embedding copy(std::size_t i) const { return {poset, ground, copies.at(i), kind}; }
    [[nodiscard]] SetFamily image(std::size_t i) const { return SetFamily(ground, copies.at(i)); }
};

struct ConflictPair {
    std::size_t first = 0;   // copy indices, first < second
    std::size_t second = 0;
    Mask from_first = 0;     // a comparable pair of members
    Mask from_second = 0;
    friend bool operator==(const ConflictPair&, const ConflictPair&) = default;
};

enum class ImageCheck { automatic, pairwise, sweep };

struct VerifyOptions {
    ImageCheck image_check = ImageCheck::automatic;
    bool check_hulls = true;
};

struct VerificationReport {
    std::size_t copies = 0;
    std::vector<std::size_t> invalid_copies;
    std::optional<ConflictPair> image_conflict;
    bool hulls_checked = false;
    std::optional<ConflictPair> hull_conflict;
    std::string image_method;
    std::uint64_t image_comparisons = 0;
    std::uint64_t hull_comparisons = 0;

    [[nodiscard]] bool pass() const {
        return invalid_copies.empty() && !image_conflict && !hull_conflict;
    }
};

namespace detail {

// First comparable member pair between two families, if any.
inline std::optional<std::pair<Mask, Mask>> comparable_members(std::span<const Mask> x, std::span<const Mask> y,
                                                               std::uint64_t& comparisons) {
    for (Mask a : x)
        for (Mask b : y) {
            ++comparisons;
            if (bits::comparable(a, b)) return std::pair{a, b};
        }
    return std::nullopt;
}

// Pairwise route.  A member of X lies below a member of Y iff a minimal
// member of X lies below a maximal member of Y, so only extremal members are
// compared.  Scans pairs in lexicographic order; the first hit is the least.
inline std::optional<ConflictPair> pairwise_image_conflict(const PackingFamily& fam, std::uint64_t& comparisons) {
    const std::size_t k = fam.size();
    std::vector<std::vector<Mask>> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        lo[i] = bits::minimal_members(fam.copies[i]);
        hi[i] = bits::maximal_members(fam.copies[i]);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            for (Mask a : lo[i])
                for (Mask b : hi[j]) {
                    ++comparisons;
                    if (bits::subset(a, b)) return ConflictPair{i, j, a, b};
                }
            for (Mask b : lo[j])
                for (Mask a : hi[i]) {
                    ++comparisons;
                    if (bits::subset(b, a)) return ConflictPair{i, j, a, b};
                }
        }
    return std::nullopt;
}

// Sweep route.  For every S in B_n keep the two smallest copy indices owning
// a maximal member ⊇ S (superset-sum transform), then look up each minimal
// member.  Returns the lexicographically least conflicting pair.
inline std::optional<ConflictPair> sweep_image_conflict(const PackingFamily& fam, std::uint64_t& lookups) {
    const int n = fam.ground.n();
    constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();
    using Slot = std::array<std::uint32_t, 2>;
    std::vector<Slot> owners(std::size_t{1} << n, Slot{kEmpty, kEmpty});
    auto insert = [](Slot& s, std::uint32_t id) {
        if (id == s[0] || id == s[1]) return;
        if (id < s[0]) {
            s[1] = s[0];
            s[0] = id;
        } else if (id < s[1]) {
            s[1] = id;
        }
    };
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (Mask top : bits::maximal_members(fam.copies[i])) insert(owners[top], static_cast<std::uint32_t>(i));
    for (int b = 0; b < n; ++b) {
        const Mask bit = Mask{1} << b;
        for (Mask s = 0; s < (Mask{1} << n); ++s)
            if (!(s & bit)) {
                const Slot up = owners[s | bit];
                if (up[0] != kEmpty) insert(owners[s], up[0]);
                if (up[1] != kEmpty) insert(owners[s], up[1]);
            }
    }
    std::optional<std::pair<std::size_t, std::size_t>> least;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (Mask bottom : bits::minimal_members(fam.copies[i])) {
            ++lookups;
            const Slot& s = owners[bottom];
            std::uint32_t other = s[0] != i ? s[0] : s[1];
            if (other == kEmpty) continue;
            std::pair<std::size_t, std::size_t> p{std::min<std::size_t>(i, other), std::max<std::size_t>(i, other)};
            if (!least || p < *least) least = p;
        }
    if (!least) return std::nullopt;
    std::uint64_t scratch = 0;
    auto hit = comparable_members(fam.copies[least->first], fam.copies[least->second], scratch);
    return ConflictPair{least->first, least->second, hit->first, hit->second};
}

}  // namespace detail

inline constexpr int kMaxSweepGround = 22;

/// Full check of a packing.  The hull pass compares every pair of hull
/// members directly and shares no code path with the image pass.
inline VerificationReport verify_packing(const PackingFamily& fam, const VerifyOptions& opt = {}) {
    VerificationReport r;
    r.copies = fam.size();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        bool valid = fam.poset != nullptr;
        for (Mask m : fam.copies[i])
            if ((m & ~fam.ground.full()) != 0) valid = false;
        if (valid) valid = is_valid_embedding(*fam.poset, fam.copies[i], fam.kind);
        if (!valid) r.invalid_copies.push_back(i);
    }

    ImageCheck method = opt.image_check;
    if (method == ImageCheck::automatic) {
        const int n = fam.ground.n();
        const double pairs = 0.5 * static_cast<double>(fam.size()) * static_cast<double>(fam.size());
        const double sweep_work = n <= kMaxSweepGround ? static_cast<double>(n + 1) * std::ldexp(1.0, n) : 1e300;
        method = pairs > sweep_work ? ImageCheck::sweep : ImageCheck::pairwise;
    }
    if (method == ImageCheck::sweep) {
        if (fam.ground.n() > kMaxSweepGround)
            throw CapExceeded("sweep verification supports n <= " + std::to_string(kMaxSweepGround));
        r.image_method = "sweep";
        r.image_conflict = detail::sweep_image_conflict(fam, r.image_comparisons);
    } else {
        r.image_method = "pairwise";
        r.image_conflict = detail::pairwise_image_conflict(fam, r.image_comparisons);
    }

    if (opt.check_hulls) {
        r.hulls_checked = true;
        std::vector<std::vector<Mask>> hulls;
        hulls.reserve(fam.size());
        for (const auto& c : fam.copies) hulls.push_back(c.empty() ? std::vector<Mask>{} : bits::hull(c));
        for (std::size_t i = 0; i < hulls.size() && !r.hull_conflict; ++i)
            for (std::size_t j = i + 1; j < hulls.size(); ++j)
                if (auto hit = detail::comparable_members(hulls[i], hulls[j], r.hull_comparisons)) {
                    r.hull_conflict = ConflictPair{i, j, hit->first, hit->second};
                    break;
                }
    }
    return r;
}

}  // namespace posetpack
