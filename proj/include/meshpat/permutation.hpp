#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meshpat {

// Largest n accepted by enumerate_sn and the sweeps built on it.
inline constexpr int kDefaultMaxN = 10;
inline constexpr int kHardMaxN = 12;

enum class PermErrc { DuplicateValue, OutOfRange, BadToken, LimitExceeded };

class PermutationError : public std::invalid_argument {
public:
    PermutationError(PermErrc code, const std::string& what)
        : std::invalid_argument(what), code_(code) {}
    PermErrc code() const { return code_; }

private:
    PermErrc code_;
};

// One-line notation of a bijection of [n]. Positions and values are 1-based
// through at(); values() exposes the raw 0-based storage.
class Permutation {
public:
    Permutation() = default;

    static Permutation from_one_line(std::span<const int> seq);
    static Permutation from_one_line(std::initializer_list<int> seq);
    static Permutation identity(int n);
    // Digits for n <= 9, comma-separated otherwise.
    static Permutation parse(std::string_view text);

    int n() const { return static_cast<int>(v_.size()); }
    int at(int pos) const { return v_[pos - 1]; }
    std::span<const int> values() const { return v_; }

    std::string to_string() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    explicit Permutation(std::vector<int> v) : v_(std::move(v)) {}
    std::vector<int> v_;
    friend Permutation unchecked_permutation(std::vector<int> v);
};

// Builds a Permutation without validation; callers guarantee a bijection.
Permutation unchecked_permutation(std::vector<int> v);

Permutation reverse(const Permutation& p);
Permutation complement(const Permutation& p);
Permutation inverse(const Permutation& p);

// Rank reduction of distinct values.
Permutation standardize(std::span<const int> values);

struct Element {
    int pos;
    int value;
    bool operator==(const Element&) const = default;
};

struct Decomposition {
    std::vector<Element> minima;                    // x_1 > x_2 > ... > x_t
    std::vector<std::vector<Element>> bands;        // A_i, in position order
    std::vector<std::vector<Element>> column_blocks; // C_j, in position order
    std::vector<Element> prefix_above;              // A: after position 1, value > pi_1
    std::vector<Element> prefix_below;              // B: after position 1, value < pi_1
};

Decomposition decompose(const Permutation& p);

std::uint64_t factorial(int n);

// Lexicographic rank and its inverse.
std::uint64_t lex_rank(const Permutation& p);
Permutation lex_unrank(int n, std::uint64_t rank);

void check_enumeration_limit(int n, int limit = kDefaultMaxN);

// Walks S_n in lexicographic order over ranks [first, last).
class LexRange {
public:
    LexRange(int n, std::uint64_t first, std::uint64_t last);
    // Advances to the next permutation; false once the range is exhausted.
    bool next();
    std::span<const int> current() const { return cur_; }
    std::uint64_t rank() const { return rank_ - 1; }

private:
    std::vector<int> cur_;
    std::uint64_t rank_;
    std::uint64_t last_;
    bool started_ = false;
};

// All of S_n in lexicographic order.
std::vector<Permutation> enumerate_sn(int n, int limit = kDefaultMaxN);
void for_each_permutation(int n, const std::function<void(std::span<const int>)>& fn,
                          int limit = kDefaultMaxN);

}  // namespace meshpat
