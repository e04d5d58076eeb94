#include "meshpat/distribution.hpp"

#include <sstream>
#include <stdexcept>

#include "meshpat/occurrence.hpp"
#include "meshpat/parallel.hpp"

namespace meshpat {

std::uint64_t JointDistribution::at(int k, int l) const {
    auto it = counts.find({k, l});
    return it == counts.end() ? 0 : it->second;
}

std::uint64_t JointDistribution::total() const {
    std::uint64_t s = 0;
    for (const auto& [key, c] : counts) s += c;
    return s;
}

JointDistribution JointDistribution::transposed() const {
    JointDistribution t{n, {}};
    for (const auto& [key, c] : counts) t.counts[{key.second, key.first}] = c;
    return t;
}

namespace {

int binomial_small(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

}  // namespace

JointDistribution joint_distribution(const MeshPattern& q1, const MeshPattern& q2, int n,
                                     const SweepOptions& opts) {
    if (q1.k() != q2.k()) throw std::invalid_argument("joint_distribution needs patterns of equal length");
    check_enumeration_limit(n, opts.limit);
    const int width = binomial_small(n, q1.k()) + 1;
    const std::uint64_t total = factorial(n);
    std::vector<std::vector<std::uint64_t>> partial(chunk_count(total));
    parallel_chunks(total, opts.jobs, [&](std::size_t chunk, std::uint64_t b, std::uint64_t e) {
        std::vector<std::uint64_t> cells(static_cast<std::size_t>(width) * width, 0);
        LexRange range(n, b, e);
        while (range.next()) {
            auto [k, l] = joint_counts(range.current(), q1, q2);
            ++cells[static_cast<std::size_t>(k) * width + l];
        }
        partial[chunk] = std::move(cells);
    });
    JointDistribution d{n, {}};
    std::vector<std::uint64_t> merged(static_cast<std::size_t>(width) * width, 0);
    for (const auto& cells : partial)
        for (std::size_t i = 0; i < cells.size(); ++i) merged[i] += cells[i];
    for (int k = 0; k < width; ++k)
        for (int l = 0; l < width; ++l)
            if (auto c = merged[static_cast<std::size_t>(k) * width + l]) d.counts[{k, l}] = c;
    return d;
}

std::optional<Witness> first_asymmetry(const JointDistribution& d) {
    for (const auto& [key, c] : d.counts) {
        const std::uint64_t other = d.at(key.second, key.first);
        if (c != other) return Witness{d.n, key.first, key.second, c, other};
    }
    return std::nullopt;
}

namespace {

template <class Check>
EquivalenceReport sweep_report(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                               const SweepOptions& opts, Check check) {
    EquivalenceReport r;
    r.n_max = n_max;
    for (int n = 1; n <= n_max; ++n) {
        r.distributions.push_back(joint_distribution(q1, q2, n, opts));
        if (auto w = check(r.distributions.back())) {
            r.verdict = false;
            r.first_failure = w;
            break;
        }
    }
    return r;
}

}  // namespace

EquivalenceReport is_jointly_equidistributed(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                             const SweepOptions& opts) {
    return sweep_report(q1, q2, n_max, opts, first_asymmetry);
}

EquivalenceReport is_equidistributed(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                     const SweepOptions& opts) {
    return sweep_report(q1, q2, n_max, opts, [](const JointDistribution& d) -> std::optional<Witness> {
        std::map<int, std::uint64_t> m1, m2;
        for (const auto& [key, c] : d.counts) {
            m1[key.first] += c;
            m2[key.second] += c;
        }
        std::map<int, std::pair<std::uint64_t, std::uint64_t>> both;
        for (auto [k, c] : m1) both[k].first = c;
        for (auto [k, c] : m2) both[k].second = c;
        for (auto [k, lr] : both)
            if (lr.first != lr.second) return Witness{d.n, k, 0, lr.first, lr.second};
        return std::nullopt;
    });
}

EquivalenceReport is_wilf_equivalent(const MeshPattern& q1, const MeshPattern& q2, int n_max,
                                     const SweepOptions& opts) {
    return sweep_report(q1, q2, n_max, opts, [](const JointDistribution& d) -> std::optional<Witness> {
        std::uint64_t a1 = 0, a2 = 0;
        for (const auto& [key, c] : d.counts) {
            if (key.first == 0) a1 += c;
            if (key.second == 0) a2 += c;
        }
        if (a1 != a2) return Witness{d.n, 0, 0, a1, a2};
        return std::nullopt;
    });
}

bool compare_distributions(const JointDistribution& d1, const JointDistribution& d2) {
    if (d1.n != d2.n)
        throw std::invalid_argument("distributions for different n (" + std::to_string(d1.n) + " vs " +
                                    std::to_string(d2.n) + ")");
    return d1.counts == d2.counts;
}

std::string to_json(const JointDistribution& d) {
    std::ostringstream os;
    os << "{\"n\":" << d.n << ",\"counts\":[";
    bool first = true;
    for (const auto& [key, c] : d.counts) {
        if (!first) os << ',';
        first = false;
        os << '[' << key.first << ',' << key.second << ',' << c << ']';
    }
    os << "]}";
    return os.str();
}

std::string to_csv(const std::vector<JointDistribution>& ds) {
    std::ostringstream os;
    os << "n,k,l,count\n";
    for (const auto& d : ds)
        for (const auto& [key, c] : d.counts) os << d.n << ',' << key.first << ',' << key.second << ',' << c << '\n';
    return os.str();
}

}  // namespace meshpat
