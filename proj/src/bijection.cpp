#include "meshpat/bijection.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "meshpat/occurrence.hpp"
#include "meshpat/parallel.hpp"

namespace meshpat {

MeshPattern box_pair_p1() { return MeshPattern::parse("12:(0,1)(0,2)(1,1)(1,2)"); }
MeshPattern box_pair_p2() { return MeshPattern::parse("21:(0,1)(0,2)(1,1)(1,2)"); }

namespace {

void record(Steps* steps, const std::vector<int>& v) {
    if (steps) steps->push_back(unchecked_permutation(v));
}

std::vector<int> to_vector(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

// pi -> s(inner(s^-1(pi)))
Permutation conjugated(const Permutation& pi, const Symmetry& s, const PermMap& inner, Steps* steps) {
    Steps inner_steps;
    Permutation out = s.apply(inner(s.apply_inverse(pi), steps ? &inner_steps : nullptr));
    if (steps)
        for (const auto& st : inner_steps) steps->push_back(s.apply(st));
    return out;
}

// Applies inner to the standardized subsequence at `positions` (1-based,
// increasing) and writes the result back onto the same positions and values.
Permutation on_subsequence(const Permutation& cur, const std::vector<int>& positions, const PermMap& inner,
                           Steps* steps) {
    if (positions.size() < 2) return cur;
    std::vector<int> vals;
    for (int pos : positions) vals.push_back(cur.at(pos));
    std::vector<int> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    auto embed = [&](const Permutation& t) {
        std::vector<int> v = to_vector(cur);
        for (std::size_t i = 0; i < positions.size(); ++i) v[positions[i] - 1] = sorted[t.at(static_cast<int>(i) + 1) - 1];
        return unchecked_permutation(std::move(v));
    };
    Steps inner_steps;
    Permutation out = embed(inner(standardize(vals), steps ? &inner_steps : nullptr));
    if (steps)
        for (const auto& st : inner_steps) steps->push_back(embed(st));
    return out;
}

std::vector<int> positions_of(const std::vector<Element>& block) {
    std::vector<int> out;
    for (const auto& e : block) out.push_back(e.pos);
    return out;
}

Permutation complement_by_swaps(const Permutation& sigma, Steps* steps) {
    std::vector<int> v = to_vector(sigma);
    const int m = sigma.n();
    std::vector<int> where(m + 1);
    for (int i = 0; i < m; ++i) where[v[i]] = i;
    for (int r = 1; r <= m / 2; ++r) {
        const int s = m + 1 - r;
        std::swap(v[where[r]], v[where[s]]);
        std::swap(where[r], where[s]);
        record(steps, v);
    }
    return unchecked_permutation(std::move(v));
}

Permutation reverse_by_swaps(const Permutation& sigma, Steps* steps) {
    std::vector<int> v = to_vector(sigma);
    const int m = sigma.n();
    for (int i = 0; i < m / 2; ++i) {
        std::swap(v[i], v[m - 1 - i]);
        record(steps, v);
    }
    return unchecked_permutation(std::move(v));
}

Permutation per_band(const Permutation& pi, const PermMap& inner, Steps* steps) {
    Permutation cur = pi;
    for (const auto& band : decompose(pi).bands) cur = on_subsequence(cur, positions_of(band), inner, steps);
    return cur;
}

Permutation per_column_block(const Permutation& pi, const PermMap& inner, Steps* steps) {
    Permutation cur = pi;
    for (const auto& block : decompose(pi).column_blocks)
        cur = on_subsequence(cur, positions_of(block), inner, steps);
    return cur;
}

Permutation on_prefix_set(const Permutation& pi, const PermMap& inner, Steps* steps) {
    if (pi.n() == 0) return pi;
    return on_subsequence(pi, positions_of(decompose(pi).prefix_above), inner, steps);
}

std::pair<MeshPattern, MeshPattern> extracted_pair(const MeshPattern& q1, const MeshPattern& q2,
                                                   std::optional<ShadingType> required) {
    auto c1 = classify_type(q1);
    auto c2 = classify_type(q2);
    if (!c1 || !c2 || c1->type != c2->type || (required && c1->type != *required))
        throw std::invalid_argument("pair " + q1.to_literal() + " / " + q2.to_literal() +
                                    " does not classify as the expected form");
    return {c1->p, c2->p};
}

}  // namespace

Permutation swap_chain(const Permutation& pi, const MeshPattern& p1, const MeshPattern& p2, Steps* steps) {
    if (p1.k() != 2 || p2.k() != 2) throw std::invalid_argument("swap_chain needs length-2 patterns");
    std::vector<int> v = to_vector(pi);
    auto occurrences = [&]() {
        std::vector<std::pair<int, int>> out;
        for (const auto* q : {&p1, &p2})
            for (const auto& o : list_occurrences(std::span<const int>(v), *q))
                out.push_back({o.indices[0], o.indices[1]});
        return out;
    };
    auto involved = [](const std::vector<std::pair<int, int>>& occ) {
        std::vector<int> pos;
        for (auto [a, b] : occ) {
            pos.push_back(a);
            pos.push_back(b);
        }
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        return pos;
    };
    const int t = static_cast<int>(involved(occurrences()).size());
    for (int j = 1; j <= t - 1; ++j) {
        const auto occ = occurrences();
        const auto inv = involved(occ);
        if (static_cast<int>(inv.size()) != t)
            throw std::logic_error("swap_chain: involved set changed size on " +
                                   unchecked_permutation(v).to_string());
        const int target = inv[t - j];
        std::vector<std::pair<int, int>> hits;
        for (auto o : occ)
            if (o.second == target) hits.push_back(o);
        if (hits.size() != 1)
            throw std::logic_error("swap_chain: " + std::to_string(hits.size()) +
                                   " occurrences end at position " + std::to_string(target) + " of " +
                                   unchecked_permutation(v).to_string());
        std::swap(v[hits[0].first - 1], v[hits[0].second - 1]);
        record(steps, v);
    }
    return unchecked_permutation(std::move(v));
}

PermMap chain_map_for(const MeshPattern& p1, const MeshPattern& p2) {
    const MeshPattern b1 = box_pair_p1();
    const MeshPattern b2 = box_pair_p2();
    for (const Symmetry& s : Symmetry::all()) {
        const MeshPattern s1 = s.apply(b1);
        const MeshPattern s2 = s.apply(b2);
        if ((s1 == p1 && s2 == p2) || (s1 == p2 && s2 == p1)) {
            return [s, b1, b2](const Permutation& pi, Steps* steps) {
                return conjugated(
                    pi, s, [&](const Permutation& x, Steps* st) { return swap_chain(x, b1, b2, st); }, steps);
            };
        }
    }
    throw std::invalid_argument("no symmetry carries the box pair onto " + p1.to_literal() + " / " +
                                p2.to_literal());
}

Permutation blockwise_complement(const Permutation& pi, Steps* steps) {
    return per_band(pi, complement_by_swaps, steps);
}

Permutation blockwise_reverse(const Permutation& pi, Steps* steps) {
    return per_column_block(pi, reverse_by_swaps, steps);
}

Permutation prefix_complement(const Permutation& pi, Steps* steps) {
    return on_prefix_set(pi, complement_by_swaps, steps);
}

Permutation prefix_reverse(const Permutation& pi, Steps* steps) {
    return on_prefix_set(pi, reverse_by_swaps, steps);
}

Permutation swap_chain_blockwise(const Permutation& pi, const MeshPattern& q1, const MeshPattern& q2,
                                 Steps* steps) {
    auto [p1, p2] = extracted_pair(q1, q2, std::nullopt);
    return per_band(pi, chain_map_for(p1, p2), steps);
}

Permutation single_swap_map(const Permutation& pi, const MeshPattern& q1, const MeshPattern& q2,
                            SwapLocator locator, SwapScope scope, Steps* steps) {
    if (locator.first < 0 || locator.second < 0 || locator.first >= q1.k() || locator.second >= q1.k() ||
        locator.first == locator.second)
        throw std::invalid_argument("swap locator outside the pattern");
    const auto o1 = list_occurrences(pi, q1);
    const auto o2 = list_occurrences(pi, q2);
    // group key: first element for FirstElement scope, a single group otherwise
    std::map<int, std::pair<std::vector<Occurrence>, std::vector<Occurrence>>> groups;
    for (const auto& o : o1) groups[scope == SwapScope::Global ? 0 : o.indices[0]].first.push_back(o);
    for (const auto& o : o2) groups[scope == SwapScope::Global ? 0 : o.indices[0]].second.push_back(o);
    std::vector<int> v = to_vector(pi);
    std::vector<char> used(pi.n() + 1, 0);
    for (const auto& [key, g] : groups) {
        if (g.first.size() > 1 || g.second.size() > 1)
            throw std::logic_error("single_swap_map: more than one occurrence of a pattern in " + pi.to_string());
        if (g.first.size() + g.second.size() != 1) continue;
        const Occurrence& o = g.first.empty() ? g.second[0] : g.first[0];
        const int i = o.indices[locator.first];
        const int j = o.indices[locator.second];
        if (used[i] || used[j])
            throw std::logic_error("single_swap_map: overlapping swaps in " + pi.to_string());
        used[i] = used[j] = 1;
        std::swap(v[i - 1], v[j - 1]);
        record(steps, v);
    }
    return unchecked_permutation(std::move(v));
}

std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::SwapChain: return "swap_chain";
        case MapKind::PrefixComplement: return "prefix_complement";
        case MapKind::PrefixReverse: return "prefix_reverse";
        case MapKind::PrefixSwapChain: return "prefix_swap_chain";
        case MapKind::BlockwiseComplement: return "blockwise_complement";
        case MapKind::BlockwiseReverse: return "blockwise_reverse";
        case MapKind::BlockwiseSwapChain: return "blockwise_swap_chain";
        case MapKind::SingleSwap: return "single_swap";
    }
    return "?";
}

MapKind parse_map_kind(const std::string& s) {
    for (MapKind k : {MapKind::SwapChain, MapKind::PrefixComplement, MapKind::PrefixReverse,
                      MapKind::PrefixSwapChain, MapKind::BlockwiseComplement, MapKind::BlockwiseReverse,
                      MapKind::BlockwiseSwapChain, MapKind::SingleSwap})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown map kind '" + s + "'");
}

namespace {

PermMap base_map(const MapSpec& spec, const MeshPattern& q1, const MeshPattern& q2) {
    switch (spec.kind) {
        case MapKind::SwapChain: return chain_map_for(q1, q2);
        case MapKind::PrefixComplement:
            return [](const Permutation& pi, Steps* st) { return prefix_complement(pi, st); };
        case MapKind::PrefixReverse:
            return [](const Permutation& pi, Steps* st) { return prefix_reverse(pi, st); };
        case MapKind::PrefixSwapChain: {
            auto [p1, p2] = extracted_pair(q1, q2, ShadingType::X1);
            PermMap g = chain_map_for(p1, p2);
            return [g](const Permutation& pi, Steps* st) { return on_prefix_set(pi, g, st); };
        }
        case MapKind::BlockwiseComplement:
            return [](const Permutation& pi, Steps* st) { return blockwise_complement(pi, st); };
        case MapKind::BlockwiseReverse:
            return [](const Permutation& pi, Steps* st) { return blockwise_reverse(pi, st); };
        case MapKind::BlockwiseSwapChain: {
            auto [p1, p2] = extracted_pair(q1, q2, std::nullopt);
            PermMap g = chain_map_for(p1, p2);
            return [g](const Permutation& pi, Steps* st) { return per_band(pi, g, st); };
        }
        case MapKind::SingleSwap:
            return [q1, q2, spec](const Permutation& pi, Steps* st) {
                return single_swap_map(pi, q1, q2, spec.locator, spec.scope, st);
            };
    }
    throw std::invalid_argument("unhandled map kind");
}

}  // namespace

PermMap make_map(const MapSpec& spec, const MeshPattern& q1, const MeshPattern& q2) {
    if (!spec.via_inverse) return base_map(spec, q1, q2);
    PermMap inner = base_map(spec, mesh_inverse(q1), mesh_inverse(q2));
    return [inner](const Permutation& pi, Steps* st) {
        return conjugated(pi, Symmetry{true, false, false}, inner, st);
    };
}

std::vector<TraceStep> to_trace(const Permutation& start, const Steps& steps) {
    std::vector<TraceStep> out;
    Permutation prev = start;
    for (const auto& cur : steps) {
        std::vector<int> diff;
        for (int i = 1; i <= prev.n(); ++i)
            if (prev.at(i) != cur.at(i)) diff.push_back(i);
        if (diff.size() != 2)
            throw std::logic_error("trace step from " + prev.to_string() + " to " + cur.to_string() +
                                   " is not a single transposition");
        out.push_back({static_cast<int>(out.size()) + 1, prev.at(diff[0]), prev.at(diff[1]), cur});
        prev = cur;
    }
    return out;
}

std::string trace_json(const std::vector<TraceStep>& trace) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) os << ',';
        os << "{\"step\":" << trace[i].step << ",\"swap\":[" << trace[i].a << ',' << trace[i].b
           << "],\"result\":\"" << trace[i].result.to_string() << "\"}";
    }
    os << ']';
    return os.str();
}

BijectionReport verify_bijection(const PermMap& map, const MeshPattern& q1, const MeshPattern& q2, int n,
                                 const SweepOptions& opts) {
    using Failure = BijectionReport::Failure;
    check_enumeration_limit(n, opts.limit);
    const std::uint64_t total = factorial(n);
    std::vector<std::uint64_t> image_rank(total);
    std::vector<std::optional<BijectionReport>> failures(chunk_count(total));
    parallel_chunks(total, opts.jobs, [&](std::size_t chunk, std::uint64_t b, std::uint64_t e) {
        LexRange range(n, b, e);
        while (range.next()) {
            BijectionReport r;
            r.n = n;
            r.input = unchecked_permutation({range.current().begin(), range.current().end()});
            r.counts_before = joint_counts(r.input, q1, q2);
            try {
                r.image = map(r.input, nullptr);
            } catch (const std::exception& ex) {
                r.ok = false;
                r.failure = Failure::MapError;
                r.message = ex.what();
                failures[chunk] = r;
                return;
            }
            try {
                if (r.image.n() != n) throw std::invalid_argument("length changed");
                Permutation::from_one_line(r.image.values());
            } catch (const std::exception& ex) {
                r.ok = false;
                r.failure = Failure::NotPermutation;
                r.message = ex.what();
                failures[chunk] = r;
                return;
            }
            r.counts_after = joint_counts(r.image, q1, q2);
            if (r.counts_after != std::pair{r.counts_before.second, r.counts_before.first}) {
                r.ok = false;
                r.failure = Failure::CountsNotSwapped;
                failures[chunk] = r;
                return;
            }
            image_rank[range.rank()] = lex_rank(r.image);
        }
    });
    for (const auto& f : failures)
        if (f) return *f;
    std::vector<std::int64_t> preimage(total, -1);
    for (std::uint64_t r = 0; r < total; ++r) {
        const std::uint64_t img = image_rank[r];
        if (preimage[img] >= 0) {
            BijectionReport rep;
            rep.ok = false;
            rep.n = n;
            rep.failure = Failure::NotInjective;
            rep.input = lex_unrank(n, r);
            rep.image = lex_unrank(n, img);
            rep.message = "also the image of " + lex_unrank(n, static_cast<std::uint64_t>(preimage[img])).to_string();
            return rep;
        }
        preimage[img] = static_cast<std::int64_t>(r);
    }
    BijectionReport ok;
    ok.n = n;
    return ok;
}

ReductionReport verify_reduction(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                 const SweepOptions& opts) {
    auto [p1, p2] = extracted_pair(q1, q2, ShadingType::X1);
    ReductionReport rep;
    for (int n = 1; n <= n_max; ++n) {
        check_enumeration_limit(n, opts.limit);
        const std::uint64_t total = factorial(n);
        std::vector<std::optional<ReductionReport>> failures(chunk_count(total));
        parallel_chunks(total, opts.jobs, [&](std::size_t chunk, std::uint64_t b, std::uint64_t e) {
            LexRange range(n, b, e);
            while (range.next()) {
                const Permutation pi = unchecked_permutation({range.current().begin(), range.current().end()});
                const auto above = decompose(pi).prefix_above;
                std::vector<int> vals;
                for (const auto& el : above) vals.push_back(el.value);
                const Permutation sigma = standardize(vals);
                for (const auto& [q, p] : {std::pair{&q1, &p1}, std::pair{&q2, &p2}}) {
                    std::vector<Occurrence> lifted;
                    for (const auto& o : list_occurrences(sigma, *p))
                        lifted.push_back({{1, above[o.indices[0] - 1].pos, above[o.indices[1] - 1].pos}});
                    if (lifted != list_occurrences(pi, *q)) {
                        failures[chunk] = ReductionReport{false, n, pi,
                                                          "occurrences of " + q->to_literal() +
                                                              " differ from lifted occurrences of " +
                                                              p->to_literal()};
                        return;
                    }
                }
            }
        });
        for (const auto& f : failures)
            if (f) return *f;
        rep.n_checked = n;
    }
    return rep;
}

}  // namespace meshpat
