#include "ca3sim/memory/patterns.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ca3sim {

void Pattern::validate() const {
    if (active.empty()) throw std::invalid_argument("pattern has no active indices");
    if (!active.empty() && *active.rbegin() >= n)
        throw std::invalid_argument("pattern index out of range");
}

void Cue::validate(std::uint32_t n) const {
    if (active.empty()) throw std::invalid_argument("cue is empty");
    if (*active.rbegin() >= n) throw std::invalid_argument("cue index out of range");
}

std::vector<Pattern> generate_orthogonal_patterns(std::uint32_t n, std::uint32_t size,
                                                  std::uint32_t count, std::uint64_t seed) {
    if (size == 0 || count == 0) throw std::invalid_argument("pattern size/count must be > 0");
    if (static_cast<std::uint64_t>(size) * count > n)
        throw std::invalid_argument("orthogonal patterns infeasible: count*size > n");
    std::vector<std::uint32_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(indices.begin(), indices.end(), rng);
    }
    std::vector<Pattern> out;
    for (std::uint32_t k = 0; k < count; ++k) {
        Pattern p;
        p.n = n;
        for (std::uint32_t i = 0; i < size; ++i) p.active.insert(indices[k * size + i]);
        out.push_back(std::move(p));
    }
    return out;
}

OverlapMatrix overlap_matrix(const std::vector<Pattern>& patterns) {
    const std::size_t m = patterns.size();
    OverlapMatrix out;
    out.pairwise.assign(m, std::vector<std::uint32_t>(m, 0));
    out.self_overlap.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.self_overlap[i] = static_cast<std::uint32_t>(patterns[i].active.size());
        for (std::size_t j = i + 1; j < m; ++j) {
            std::vector<std::uint32_t> common;
            std::set_intersection(patterns[i].active.begin(), patterns[i].active.end(),
                                  patterns[j].active.begin(), patterns[j].active.end(),
                                  std::back_inserter(common));
            out.pairwise[i][j] = out.pairwise[j][i] = static_cast<std::uint32_t>(common.size());
        }
    }
    return out;
}

bool OverlapMatrix::orthogonal() const {
    for (std::size_t i = 0; i < pairwise.size(); ++i)
        for (std::size_t j = 0; j < pairwise.size(); ++j)
            if (i != j && pairwise[i][j] != 0) return false;
    return true;
}

}  // namespace ca3sim
