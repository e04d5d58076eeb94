#include "meshpat/occurrence.hpp"

#include <array>
#include <stdexcept>

namespace meshpat {

namespace {

struct Compiled {
    int k;
    std::uint32_t bits;
    std::array<int, kMaxPatternLength> tau;      // 1-based ranks per pattern position
    std::array<int, kMaxPatternLength> tau_inv;  // pattern position holding rank r+1
};

Compiled compile(const MeshPattern& q) {
    Compiled c{q.k(), q.bits(), {}, {}};
    for (int i = 0; i < q.k(); ++i) {
        c.tau[i] = q.tau().values()[i];
        c.tau_inv[c.tau[i] - 1] = i;
    }
    return c;
}

bool order_matches(std::span<const int> v, const int* idx, const Compiled& c) {
    for (int a = 0; a < c.k; ++a)
        for (int b = a + 1; b < c.k; ++b)
            if ((v[idx[a]] < v[idx[b]]) != (c.tau[a] < c.tau[b])) return false;
    return true;
}

// Bitmask of boxes holding at least one non-selected element; stops early
// once a box in `stop` is hit.
std::uint32_t occupied(std::span<const int> v, const int* idx, const Compiled& c, std::uint32_t stop) {
    std::array<int, kMaxPatternLength> sorted{};
    for (int r = 0; r < c.k; ++r) sorted[r] = v[idx[c.tau_inv[r]]];
    std::uint32_t mask = 0;
    int col = 0;
    const int n = static_cast<int>(v.size());
    for (int j = 0; j < n; ++j) {
        if (col < c.k && idx[col] == j) {
            ++col;
            continue;
        }
        int row = 0;
        while (row < c.k && sorted[row] < v[j]) ++row;
        mask |= 1u << (col * (c.k + 1) + row);
        if (mask & stop) break;
    }
    return mask;
}

bool passes(std::span<const int> v, const int* idx, const Compiled& c) {
    return order_matches(v, idx, c) && (occupied(v, idx, c, c.bits) & c.bits) == 0;
}

// Lexicographic k-subsets of [0,n).
template <class F>
void for_each_subset(int n, int k, F&& f) {
    if (k > n) return;
    std::array<int, kMaxPatternLength> idx{};
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx.data());
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

bool is_occurrence(const Permutation& p, std::span<const int> indices, const MeshPattern& q) {
    if (static_cast<int>(indices.size()) != q.k())
        throw std::invalid_argument("index set has " + std::to_string(indices.size()) +
                                    " entries, pattern length is " + std::to_string(q.k()));
    std::array<int, kMaxPatternLength> idx{};
    for (int i = 0; i < q.k(); ++i) {
        if (indices[i] < 1 || indices[i] > p.n() || (i > 0 && indices[i] <= indices[i - 1]))
            throw std::invalid_argument("indices must be strictly increasing within 1..n");
        idx[i] = indices[i] - 1;
    }
    return passes(p.values(), idx.data(), compile(q));
}

int count_occurrences(std::span<const int> values, const MeshPattern& q) {
    const Compiled c = compile(q);
    int count = 0;
    if (c.k == 0) return 0;
    for_each_subset(static_cast<int>(values.size()), c.k, [&](const int* idx) {
        if (passes(values, idx, c)) ++count;
    });
    return count;
}

std::vector<Occurrence> list_occurrences(std::span<const int> values, const MeshPattern& q) {
    const Compiled c = compile(q);
    std::vector<Occurrence> out;
    if (c.k == 0) return out;
    for_each_subset(static_cast<int>(values.size()), c.k, [&](const int* idx) {
        if (!passes(values, idx, c)) return;
        Occurrence o;
        for (int i = 0; i < c.k; ++i) o.indices.push_back(idx[i] + 1);
        out.push_back(std::move(o));
    });
    return out;
}

std::pair<int, int> joint_counts(std::span<const int> values, const MeshPattern& q1,
                                 const MeshPattern& q2) {
    if (q1.k() != q2.k())
        throw std::invalid_argument("joint_counts needs patterns of equal length");
    const Compiled c1 = compile(q1);
    const Compiled c2 = compile(q2);
    std::pair<int, int> counts{0, 0};
    if (c1.k == 0) return counts;
    for_each_subset(static_cast<int>(values.size()), c1.k, [&](const int* idx) {
        const bool m1 = order_matches(values, idx, c1);
        const bool m2 = order_matches(values, idx, c2);
        if (!m1 && !m2) return;
        const std::uint32_t want = (m1 ? c1.bits : 0u) | (m2 ? c2.bits : 0u);
        // Early stop is only safe when a single pattern is being tested.
        const std::uint32_t stop = (m1 && m2) ? 0u : want;
        const std::uint32_t mask = occupied(values, idx, m1 ? c1 : c2, stop);
        if (m1 && (mask & c1.bits) == 0) ++counts.first;
        if (m2 && (mask & c2.bits) == 0) ++counts.second;
    });
    return counts;
}

}  // namespace meshpat
