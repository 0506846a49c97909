#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "posetpack/boolean_lattice.hpp"
#include "posetpack/embedding.hpp"

namespace posetpack {

inline constexpr int kMaxLabelingGround = 24;

/// A numbering of B_m by 1..2^m that extends inclusion and gives the convex
/// hull of one embedding's image a contiguous block [first, last].
class LatticeLabeling {
public:
    LatticeLabeling() = default;
    LatticeLabeling(int m, std::vector<std::uint32_t> rank_of, std::pair<std::uint32_t, std::uint32_t> interval)
        : m_(m), rank_of_(std::move(rank_of)), interval_(interval) {
        subset_of_.resize(rank_of_.size());
        for (std::size_t s = 0; s < rank_of_.size(); ++s) subset_of_[rank_of_[s] - 1] = s;
    }

    [[nodiscard]] int m() const { return m_; }
    [[nodiscard]] std::uint32_t rank(Mask s) const { return rank_of_.at(s); }
    /// Inverse of rank(); labels are 1-based.
    [[nodiscard]] Mask subset_with_rank(std::uint32_t label) const { return subset_of_.at(label - 1); }
    [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> interval() const { return interval_; }
    [[nodiscard]] bool in_interval(std::uint32_t label) const {
        return label >= interval_.first && label <= interval_.second;
    }
    [[nodiscard]] std::uint32_t label_count() const { return static_cast<std::uint32_t>(rank_of_.size()); }

private:
    int m_ = 0;
    std::vector<std::uint32_t> rank_of_;  // indexed by mask
    std::vector<Mask> subset_of_;         // indexed by label - 1
    std::pair<std::uint32_t, std::uint32_t> interval_{1, 1};
};

/// Three-group numbering.  Group 1: sets strictly inside some image set that
/// contain no image set.  Group 2: the hull.  Group 3: everything else.
/// Inside a group, canonical (size, colex) order.
inline LatticeLabeling hull_interval_labeling(const Embedding& f) {
    const int m = f.ground.n();
    if (m > kMaxLabelingGround)
        throw CapExceeded("labeling needs a 2^m table; m=" + std::to_string(m) + " exceeds " +
                          std::to_string(kMaxLabelingGround));
    const auto hull = bits::hull(f.images);
    std::vector<char> in_hull(std::size_t{1} << m, 0);
    for (Mask s : hull) in_hull[s] = 1;

    std::vector<Mask> groups[3];
    bits::for_each_subset(bits::full(m), [&](Mask b) {
        if (in_hull[b]) {
            groups[1].push_back(b);
            return true;
        }
        bool under_image = false;
        for (Mask c : f.images)
            if (bits::subset(b, c)) under_image = true;
        groups[under_image ? 0 : 2].push_back(b);
        return true;
    });

    std::vector<std::uint32_t> rank_of(std::size_t{1} << m, 0);
    std::uint32_t next = 1;
    for (auto& g : groups)
        for (Mask s : g) rank_of[s] = next++;
    const auto first = static_cast<std::uint32_t>(groups[0].size() + 1);
    const auto last = static_cast<std::uint32_t>(groups[0].size() + groups[1].size());
    return {m, std::move(rank_of), {first, last}};
}

}  // namespace posetpack
