#include "meshpat/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace meshpat {

namespace {

void validate(std::span<const int> seq) {
    const int n = static_cast<int>(seq.size());
    std::vector<char> seen(n + 1, 0);
    for (int v : seq) {
        if (v < 1 || v > n)
            throw PermutationError(PermErrc::OutOfRange,
                                   "value " + std::to_string(v) + " outside 1.." + std::to_string(n));
        if (seen[v])
            throw PermutationError(PermErrc::DuplicateValue, "duplicate value " + std::to_string(v));
        seen[v] = 1;
    }
}

}  // namespace

Permutation unchecked_permutation(std::vector<int> v) { return Permutation(std::move(v)); }

Permutation Permutation::from_one_line(std::span<const int> seq) {
    validate(seq);
    return Permutation(std::vector<int>(seq.begin(), seq.end()));
}

Permutation Permutation::from_one_line(std::initializer_list<int> seq) {
    return from_one_line(std::span<const int>(seq.begin(), seq.size()));
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<int> v;
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view tok = text.substr(start, end - start);
            int x = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
                throw PermutationError(PermErrc::BadToken, "bad permutation token '" + std::string(tok) + "'");
            v.push_back(x);
            start = end + 1;
        }
    } else {
        for (char c : text) {
            if (c < '1' || c > '9')
                throw PermutationError(PermErrc::BadToken, std::string("bad permutation token '") + c + "'");
            v.push_back(c - '0');
        }
    }
    return from_one_line(v);
}

std::string Permutation::to_string() const {
    std::string s;
    const bool digits = n() <= 9;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (!digits && i > 0) s += ',';
        s += std::to_string(v_[i]);
    }
    return s;
}

Permutation reverse(const Permutation& p) {
    std::vector<int> v(p.values().rbegin(), p.values().rend());
    return unchecked_permutation(std::move(v));
}

Permutation complement(const Permutation& p) {
    std::vector<int> v(p.values().begin(), p.values().end());
    for (int& x : v) x = p.n() + 1 - x;
    return unchecked_permutation(std::move(v));
}

Permutation inverse(const Permutation& p) {
    std::vector<int> v(p.n());
    for (int i = 1; i <= p.n(); ++i) v[p.at(i) - 1] = i;
    return unchecked_permutation(std::move(v));
}

Permutation standardize(std::span<const int> values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    std::vector<int> out(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && values[order[r]] == values[order[r - 1]])
            throw PermutationError(PermErrc::DuplicateValue,
                                   "duplicate value " + std::to_string(values[order[r]]));
        out[order[r]] = static_cast<int>(r) + 1;
    }
    return unchecked_permutation(std::move(out));
}

Decomposition decompose(const Permutation& p) {
    Decomposition d;
    const int n = p.n();
    if (n == 0) return d;
    // band index of each minimum's value range, column index by position
    std::vector<int> min_index_at_pos(n + 1, -1);
    int cur_min = n + 1;
    for (int i = 1; i <= n; ++i) {
        if (p.at(i) < cur_min) {
            cur_min = p.at(i);
            min_index_at_pos[i] = static_cast<int>(d.minima.size());
            d.minima.push_back({i, p.at(i)});
        }
    }
    const int t = static_cast<int>(d.minima.size());
    d.bands.resize(t);
    d.column_blocks.resize(t);
    int column = -1;
    for (int i = 1; i <= n; ++i) {
        const int v = p.at(i);
        if (min_index_at_pos[i] >= 0) {
            column = min_index_at_pos[i];
            continue;
        }
        d.column_blocks[column].push_back({i, v});
        // minima values decrease, so the band is the first minimum below v
        int band = 0;
        while (d.minima[band].value > v) ++band;
        d.bands[band].push_back({i, v});
    }
    for (int i = 2; i <= n; ++i) {
        if (p.at(i) > p.at(1))
            d.prefix_above.push_back({i, p.at(i)});
        else
            d.prefix_below.push_back({i, p.at(i)});
    }
    return d;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t lex_rank(const Permutation& p) {
    const int n = p.n();
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller_after = 0;
        for (int j = i + 1; j < n; ++j)
            if (p.values()[j] < p.values()[i]) ++smaller_after;
        rank += smaller_after * factorial(n - 1 - i);
    }
    return rank;
}

Permutation lex_unrank(int n, std::uint64_t rank) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> out;
    out.reserve(n);
    for (int i = n - 1; i >= 0; --i) {
        const std::uint64_t f = factorial(i);
        const auto idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return unchecked_permutation(std::move(out));
}

void check_enumeration_limit(int n, int limit) {
    if (n < 0 || n > std::min(limit, kHardMaxN))
        throw PermutationError(PermErrc::LimitExceeded,
                               "n=" + std::to_string(n) + " above enumeration limit " +
                                   std::to_string(std::min(limit, kHardMaxN)));
}

LexRange::LexRange(int n, std::uint64_t first, std::uint64_t last) : rank_(first), last_(last) {
    if (first < last) {
        auto p = lex_unrank(n, first);
        cur_.assign(p.values().begin(), p.values().end());
    }
}

bool LexRange::next() {
    if (rank_ >= last_) return false;
    if (started_) std::next_permutation(cur_.begin(), cur_.end());
    started_ = true;
    ++rank_;
    return true;
}

std::vector<Permutation> enumerate_sn(int n, int limit) {
    check_enumeration_limit(n, limit);
    std::vector<Permutation> out;
    out.reserve(factorial(n));
    LexRange range(n, 0, factorial(n));
    while (range.next())
        out.push_back(unchecked_permutation({range.current().begin(), range.current().end()}));
    return out;
}

void for_each_permutation(int n, const std::function<void(std::span<const int>)>& fn, int limit) {
    check_enumeration_limit(n, limit);
    LexRange range(n, 0, factorial(n));
    while (range.next()) fn(range.current());
}

}  // namespace meshpat
