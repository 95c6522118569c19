#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace ca3sim {

/// A binary spatial code over the DG population: the set of input indices
/// that fire together.
struct Pattern {
    std::set<std::uint32_t> active;
    std::uint32_t n = 0;  // population size

    void validate() const;
    std::size_t size() const { return active.size(); }
};

/// A cue is a subset of some stored pattern's indices. The subset relation
/// is the harness's business; here only bounds are enforced.
struct Cue {
    std::set<std::uint32_t> active;

    void validate(std::uint32_t n) const;
};

/// count pairwise-disjoint patterns of the given size over n inputs.
/// seed == 0 gives contiguous blocks {0..size-1}, {size..2*size-1}, ...;
/// any other seed deals the indices from a seeded shuffle. Deterministic.
std::vector<Pattern> generate_orthogonal_patterns(std::uint32_t n, std::uint32_t size,
                                                  std::uint32_t count, std::uint64_t seed);

/// Symmetric matrix of pairwise intersection sizes, zero diagonal by
/// convention; self-overlaps (= pattern sizes) are reported separately.
struct OverlapMatrix {
    std::vector<std::vector<std::uint32_t>> pairwise;
    std::vector<std::uint32_t> self_overlap;

    bool orthogonal() const;
};

OverlapMatrix overlap_matrix(const std::vector<Pattern>& patterns);

}  // namespace ca3sim
