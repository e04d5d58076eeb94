#include "meshpat/forms.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

namespace meshpat {

namespace {

BigCount mul(BigCount a, BigCount b) {
    BigCount r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit overflow in closed form");
    return r;
}

BigCount add(BigCount a, BigCount b) {
    BigCount r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit overflow in closed form");
    return r;
}

using Table = std::array<std::array<BigCount, kStirlingMax + 1>, kStirlingMax + 1>;

const Table& stirling_table() {
    static const Table table = [] {
        Table t{};
        t[0][0] = 1;
        for (int n = 1; n <= kStirlingMax; ++n)
            for (int k = 1; k <= n; ++k)
                t[n][k] = add(mul(static_cast<BigCount>(n - 1), t[n - 1][k]), t[n - 1][k - 1]);
        return t;
    }();
    return table;
}

std::uint64_t narrow(BigCount x) {
    if (x > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("count exceeds 64 bits");
    return static_cast<std::uint64_t>(x);
}

}  // namespace

std::string to_string(BigCount x) {
    if (x == 0) return "0";
    std::string s;
    while (x > 0) {
        s += static_cast<char>('0' + static_cast<int>(x % 10));
        x /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

BigCount stirling(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (n > kStirlingMax) throw std::out_of_range("Stirling table holds n <= " + std::to_string(kStirlingMax));
    return stirling_table()[n][k];
}

BigCount binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigCount r = 1;
    for (int i = 1; i <= k; ++i) r = mul(r, static_cast<BigCount>(n - k + i)) / i;
    return r;
}

BigCount big_factorial(int n) {
    BigCount f = 1;
    for (int i = 2; i <= n; ++i) f = mul(f, static_cast<BigCount>(i));
    return f;
}

BigCount h_closed(int n, int k, int l) {
    if (n < 1) throw std::invalid_argument("h_closed needs n >= 1");
    return mul(binomial(k + l, k), stirling(n - 1, k + l));
}

BigCount t_closed(int n, int k, int l) {
    if (n < 2) throw std::invalid_argument("t_closed needs n >= 2");
    if (k == 0 && l == 0) return mul(2, big_factorial(n - 1));
    BigCount sum = 0;
    for (int i = 2; i <= n - 1; ++i) {
        // (n-1)!/i! as an integer product
        BigCount ratio = 1;
        for (int j = i + 1; j <= n - 1; ++j) ratio = mul(ratio, static_cast<BigCount>(j));
        sum = add(sum, mul(ratio, stirling(i - 1, k + l)));
    }
    return mul(binomial(k + l, k), sum);
}

namespace {

template <class F>
JointDistribution closed_distribution(int n, F f) {
    JointDistribution d{n, {}};
    for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= n; ++l)
            if (BigCount c = f(n, k, l)) d.counts[{k, l}] = narrow(c);
    return d;
}

JointDistribution three_term(const JointDistribution& prev, int n) {
    JointDistribution d{n, {}};
    const auto scale = static_cast<std::uint64_t>(n - 2);
    for (const auto& [key, c] : prev.counts) {
        if (scale) d.counts[key] += scale * c;
        d.counts[{key.first + 1, key.second}] += c;
        d.counts[{key.first, key.second + 1}] += c;
    }
    return d;
}

void drop_zeros(JointDistribution& d) {
    std::erase_if(d.counts, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

JointDistribution h_closed_distribution(int n) { return closed_distribution(n, h_closed); }

JointDistribution t_closed_distribution(int n) { return closed_distribution(n, t_closed); }

JointDistribution h_recurrence_step(const JointDistribution& prev) {
    JointDistribution d = three_term(prev, prev.n + 1);
    drop_zeros(d);
    return d;
}

JointDistribution t_recurrence_x4_step(const JointDistribution& prev, int n) {
    if (n < 3) throw std::invalid_argument("t_recurrence_x4_step needs n >= 3");
    if (prev.n != n - 1) throw std::invalid_argument("previous distribution is not at n-1");
    JointDistribution d = three_term(prev, n);
    const std::uint64_t f = factorial(n - 2);
    d.counts[{0, 0}] += 2 * f;
    for (auto key : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (d.counts[key] < f)
            throw std::logic_error("negative cell (" + std::to_string(key.first) + "," +
                                   std::to_string(key.second) + ") in recurrence step");
        d.counts[key] -= f;
    }
    drop_zeros(d);
    return d;
}

bool chu_vandermonde_check(int n, int k, int l) {
    if (n < 1) throw std::invalid_argument("chu_vandermonde_check needs n >= 1");
    BigCount lhs = 0;
    for (int i = 0; i <= n - 1; ++i)
        lhs = add(lhs, mul(mul(binomial(n - 1, i), stirling(i, l)), stirling(n - 1 - i, k)));
    return lhs == h_closed(n, k, l);
}

}  // namespace meshpat
