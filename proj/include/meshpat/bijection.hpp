#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshpat/distribution.hpp"
#include "meshpat/mesh.hpp"
#include "meshpat/permutation.hpp"

namespace meshpat {

// Every map below is a product of transpositions of entries. When `steps` is
// non-null the permutation reached after each transposition is appended.
using Steps = std::vector<Permutation>;
using PermMap = std::function<Permutation(const Permutation&, Steps*)>;

// The length-2 pair (12, R), (21, R) with R = {(0,1),(0,2),(1,1),(1,2)}.
MeshPattern box_pair_p1();
MeshPattern box_pair_p2();

// Repeatedly swaps the unique occurrence whose second element is the current
// target, targets taken right to left among the involved elements.
Permutation swap_chain(const Permutation& pi, const MeshPattern& p1, const MeshPattern& p2,
                       Steps* steps = nullptr);

// swap_chain conjugated by the square symmetry that carries the box pair onto
// (p1, p2) in either order. Throws when no symmetry does.
PermMap chain_map_for(const MeshPattern& p1, const MeshPattern& p2);

Permutation blockwise_complement(const Permutation& pi, Steps* steps = nullptr);
Permutation blockwise_reverse(const Permutation& pi, Steps* steps = nullptr);
// Complement or reverse restricted to the prefix set A = {pi_i > pi_1 : i >= 2}.
Permutation prefix_complement(const Permutation& pi, Steps* steps = nullptr);
Permutation prefix_reverse(const Permutation& pi, Steps* steps = nullptr);
// Chain map of the extracted length-2 pair applied inside each band A_i.
Permutation swap_chain_blockwise(const Permutation& pi, const MeshPattern& q1, const MeshPattern& q2,
                                 Steps* steps = nullptr);

enum class SwapScope { Global, FirstElement };

// Indices (0-based, in occurrence order) of the two elements a and b swapped.
struct SwapLocator {
    int first = 1;
    int second = 2;
};

// Swaps a and b of the unique occurrence when the counts are (1,0) or (0,1).
// FirstElement scope applies the rule separately to the occurrences sharing
// each first element. Throws when a group holds two occurrences of a pattern.
Permutation single_swap_map(const Permutation& pi, const MeshPattern& q1, const MeshPattern& q2,
                            SwapLocator locator, SwapScope scope = SwapScope::Global,
                            Steps* steps = nullptr);

enum class MapKind {
    SwapChain,
    PrefixComplement,
    PrefixReverse,
    PrefixSwapChain,
    BlockwiseComplement,
    BlockwiseReverse,
    BlockwiseSwapChain,
    SingleSwap,
};

std::string to_string(MapKind k);
MapKind parse_map_kind(const std::string& s);

struct MapSpec {
    MapKind kind = MapKind::SingleSwap;
    SwapScope scope = SwapScope::Global;
    SwapLocator locator;
    bool via_inverse = false;
};

// Map for the pair (q1, q2). With via_inverse the map is pi -> f(pi^-1)^-1
// where f is built for the inverse patterns.
PermMap make_map(const MapSpec& spec, const MeshPattern& q1, const MeshPattern& q2);

struct TraceStep {
    int step;
    int a;  // values swapped, in position order before the swap
    int b;
    Permutation result;
};

std::vector<TraceStep> to_trace(const Permutation& start, const Steps& steps);
std::string trace_json(const std::vector<TraceStep>& trace);

struct BijectionReport {
    enum class Failure { None, MapError, NotPermutation, CountsNotSwapped, NotInjective };
    bool ok = true;
    int n = 0;
    Failure failure = Failure::None;
    Permutation input;
    Permutation image;
    std::pair<int, int> counts_before{0, 0};
    std::pair<int, int> counts_after{0, 0};
    std::string message;
};

BijectionReport verify_bijection(const PermMap& map, const MeshPattern& q1, const MeshPattern& q2, int n,
                                 const SweepOptions& opts = {});

struct ReductionReport {
    bool ok = true;
    int n_checked = 0;
    std::optional<Permutation> witness;
    std::string message;
};

// For X1 pairs: occurrences of q_i are exactly pi_1 followed by occurrences of
// p_i inside the standardized prefix set A.
ReductionReport verify_reduction(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                 const SweepOptions& opts = {});

}  // namespace meshpat
