#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshpat/mesh.hpp"

namespace meshpat {

struct JointDistribution {
    int n = 0;
    // (k, l) -> number of n-permutations with k occurrences of q1 and l of q2
    std::map<std::pair<int, int>, std::uint64_t> counts;

    std::uint64_t at(int k, int l) const;
    std::uint64_t total() const;
    JointDistribution transposed() const;
    bool operator==(const JointDistribution&) const = default;
};

struct SweepOptions {
    int jobs = 1;
    int limit = kDefaultMaxN;
};

JointDistribution joint_distribution(const MeshPattern& q1, const MeshPattern& q2, int n,
                                     const SweepOptions& opts = {});

// A cell where the two sides of an equivalence test disagree. For the joint
// test left/right are counts(k,l) and counts(l,k); for equidistribution they
// are the q1 and q2 marginals at k (l unused); for Wilf equivalence the
// avoidance counts (k = l = 0).
struct Witness {
    int n = 0;
    int k = 0;
    int l = 0;
    std::uint64_t left = 0;
    std::uint64_t right = 0;
};

struct EquivalenceReport {
    bool verdict = true;
    int n_max = 0;
    std::optional<Witness> first_failure;
    std::vector<JointDistribution> distributions;  // n = 1..n_max
};

EquivalenceReport is_jointly_equidistributed(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                             const SweepOptions& opts = {});
EquivalenceReport is_equidistributed(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                     const SweepOptions& opts = {});
EquivalenceReport is_wilf_equivalent(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                     const SweepOptions& opts = {});

// Smallest (k,l) with counts(k,l) != counts(l,k), if any.
std::optional<Witness> first_asymmetry(const JointDistribution& d);

bool compare_distributions(const JointDistribution& d1, const JointDistribution& d2);

// {"n":N,"counts":[[k,l,c],...]} sorted by (k,l)
std::string to_json(const JointDistribution& d);
// header "n,k,l,count"
std::string to_csv(const std::vector<JointDistribution>& ds);

}  // namespace meshpat
