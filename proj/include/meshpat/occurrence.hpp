#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "meshpat/mesh.hpp"
#include "meshpat/permutation.hpp"

namespace meshpat {

// Strictly increasing 1-based positions selecting an occurrence.
struct Occurrence {
    std::vector<int> indices;
    bool operator==(const Occurrence&) const = default;
};

bool is_occurrence(const Permutation& p, std::span<const int> indices, const MeshPattern& q);

int count_occurrences(std::span<const int> values, const MeshPattern& q);
inline int count_occurrences(const Permutation& p, const MeshPattern& q) {
    return count_occurrences(p.values(), q);
}

std::vector<Occurrence> list_occurrences(std::span<const int> values, const MeshPattern& q);
inline std::vector<Occurrence> list_occurrences(const Permutation& p, const MeshPattern& q) {
    return list_occurrences(p.values(), q);
}

// Counts for two patterns of equal length in one pass over the k-subsets.
std::pair<int, int> joint_counts(std::span<const int> values, const MeshPattern& q1,
                                 const MeshPattern& q2);
inline std::pair<int, int> joint_counts(const Permutation& p, const MeshPattern& q1,
                                        const MeshPattern& q2) {
    return joint_counts(p.values(), q1, q2);
}

}  // namespace meshpat
