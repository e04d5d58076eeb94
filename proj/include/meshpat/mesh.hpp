#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meshpat/permutation.hpp"

namespace meshpat {

inline constexpr int kMaxPatternLength = 4;

struct Box {
    int a;
    int b;
    bool operator==(const Box&) const = default;
    auto operator<=>(const Box&) const = default;
};

class PatternParseError : public std::invalid_argument {
public:
    PatternParseError(const std::string& token, const std::string& what)
        : std::invalid_argument(what), token_(token) {}
    const std::string& token() const { return token_; }

private:
    std::string token_;
};

// Shading stored as a bitset over the (k+1)^2 boxes, box (a,b) at bit a*(k+1)+b.
class MeshPattern {
public:
    MeshPattern() = default;
    MeshPattern(Permutation tau, const std::vector<Box>& shading);

    // "<tau>:<boxes>", e.g. "132:(0,0)(1,1)(1,2)(3,1)"; empty shading "132:".
    static MeshPattern parse(std::string_view literal);

    int k() const { return tau_.n(); }
    const Permutation& tau() const { return tau_; }
    std::uint32_t bits() const { return bits_; }
    bool shaded(int a, int b) const { return (bits_ >> bit_index(a, b)) & 1u; }
    int bit_index(int a, int b) const { return a * (k() + 1) + b; }
    std::vector<Box> shading() const;  // sorted by (a,b)

    std::string to_literal() const;

    bool operator==(const MeshPattern&) const = default;

private:
    Permutation tau_;
    std::uint32_t bits_ = 0;
};

MeshPattern mesh_reverse(const MeshPattern& q);
MeshPattern mesh_complement(const MeshPattern& q);
MeshPattern mesh_inverse(const MeshPattern& q);

bool is_minus_antipodal(const MeshPattern& q);
bool is_symmetric_shading(const MeshPattern& q);

// Element of the dihedral group of the square acting on permutations and
// patterns: first inverse (if inv), then reverse, then complement.
struct Symmetry {
    bool inv = false;
    bool rev = false;
    bool comp = false;

    static std::array<Symmetry, 8> all();
    Permutation apply(const Permutation& p) const;
    Permutation apply_inverse(const Permutation& p) const;
    MeshPattern apply(const MeshPattern& q) const;
    MeshPattern apply_inverse(const MeshPattern& q) const;
    std::string name() const;
};

enum class ShadingType { X1, X2, X3, X4, Y1, Y2, Y3, Y4, X1_3box, Y1_3box };

inline constexpr std::array<ShadingType, 10> kAllShadingTypes = {
    ShadingType::X1, ShadingType::X2, ShadingType::X3, ShadingType::X4, ShadingType::Y1,
    ShadingType::Y2, ShadingType::Y3, ShadingType::Y4, ShadingType::X1_3box, ShadingType::Y1_3box};

std::string to_string(ShadingType t);
ShadingType parse_shading_type(std::string_view s);
bool is_y_form(ShadingType t);
// Fixed frame boxes of a length-3 form.
std::vector<Box> frame(ShadingType t);

// Inserts the length-2 pattern p into the frame: tau = 1 followed by p.tau+1,
// shading = frame plus (a+1,b+1) for each shaded box of p.
MeshPattern instantiate(ShadingType t, const MeshPattern& p);

struct Classification {
    ShadingType type;
    MeshPattern p;
};

// Inverse of instantiate; none when the row-0/column-0 boxes match no frame.
std::optional<Classification> classify_type(const MeshPattern& q);

}  // namespace meshpat
