#include "meshpat/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace meshpat {

MeshPattern::MeshPattern(Permutation tau, const std::vector<Box>& shading) : tau_(std::move(tau)) {
    if (k() > kMaxPatternLength)
        throw std::invalid_argument("pattern length " + std::to_string(k()) + " exceeds " +
                                    std::to_string(kMaxPatternLength));
    for (const Box& bx : shading) {
        if (bx.a < 0 || bx.a > k() || bx.b < 0 || bx.b > k())
            throw std::invalid_argument("box (" + std::to_string(bx.a) + "," + std::to_string(bx.b) +
                                        ") outside [0," + std::to_string(k()) + "]^2");
        const std::uint32_t bit = 1u << bit_index(bx.a, bx.b);
        if (bits_ & bit)
            throw std::invalid_argument("duplicate box (" + std::to_string(bx.a) + "," +
                                        std::to_string(bx.b) + ")");
        bits_ |= bit;
    }
}

std::vector<Box> MeshPattern::shading() const {
    std::vector<Box> out;
    for (int a = 0; a <= k(); ++a)
        for (int b = 0; b <= k(); ++b)
            if (shaded(a, b)) out.push_back({a, b});
    return out;
}

MeshPattern MeshPattern::parse(std::string_view literal) {
    const auto colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw PatternParseError(std::string(literal), "pattern literal '" + std::string(literal) +
                                                          "' lacks ':' separator");
    const std::string_view tau_text = literal.substr(0, colon);
    Permutation tau;
    try {
        tau = Permutation::parse(tau_text);
    } catch (const PermutationError& e) {
        throw PatternParseError(std::string(tau_text), std::string("bad pattern '") +
                                                           std::string(tau_text) + "': " + e.what());
    }
    if (tau.n() > kMaxPatternLength)
        throw PatternParseError(std::string(tau_text), "pattern '" + std::string(tau_text) +
                                                           "' longer than " +
                                                           std::to_string(kMaxPatternLength));
    std::vector<Box> boxes;
    std::string_view rest = literal.substr(colon + 1);
    while (!rest.empty()) {
        const auto close = rest.find(')');
        const std::string_view tok = rest.substr(0, close == std::string_view::npos ? rest.size() : close + 1);
        auto bad = [&]() {
            return PatternParseError(std::string(tok), "bad box token '" + std::string(tok) + "'");
        };
        if (close == std::string_view::npos || tok.size() != 5 || tok[0] != '(' || tok[2] != ',' ||
            tok[4] != ')' || tok[1] < '0' || tok[1] > '9' || tok[3] < '0' || tok[3] > '9')
            throw bad();
        const Box bx{tok[1] - '0', tok[3] - '0'};
        if (bx.a > tau.n() || bx.b > tau.n()) throw bad();
        if (std::find(boxes.begin(), boxes.end(), bx) != boxes.end())
            throw PatternParseError(std::string(tok), "duplicate box token '" + std::string(tok) + "'");
        boxes.push_back(bx);
        rest.remove_prefix(tok.size());
    }
    return MeshPattern(std::move(tau), boxes);
}

std::string MeshPattern::to_literal() const {
    std::string s;
    for (int v : tau_.values()) s += std::to_string(v);
    s += ':';
    for (const Box& bx : shading()) s += "(" + std::to_string(bx.a) + "," + std::to_string(bx.b) + ")";
    return s;
}

namespace {

template <class F>
MeshPattern map_boxes(const MeshPattern& q, Permutation tau, F f) {
    std::vector<Box> boxes;
    for (const Box& bx : q.shading()) boxes.push_back(f(bx));
    return MeshPattern(std::move(tau), boxes);
}

}  // namespace

MeshPattern mesh_reverse(const MeshPattern& q) {
    const int k = q.k();
    return map_boxes(q, reverse(q.tau()), [k](Box bx) { return Box{k - bx.a, bx.b}; });
}

MeshPattern mesh_complement(const MeshPattern& q) {
    const int k = q.k();
    return map_boxes(q, complement(q.tau()), [k](Box bx) { return Box{bx.a, k - bx.b}; });
}

MeshPattern mesh_inverse(const MeshPattern& q) {
    return map_boxes(q, inverse(q.tau()), [](Box bx) { return Box{bx.b, bx.a}; });
}

bool is_minus_antipodal(const MeshPattern& q) {
    for (int i = 0; i <= q.k(); ++i)
        for (int j = i + 1; j <= q.k(); ++j)
            if (q.shaded(i, j) == q.shaded(j, i)) return false;
    return true;
}

bool is_symmetric_shading(const MeshPattern& q) {
    for (int i = 0; i <= q.k(); ++i)
        for (int j = i + 1; j <= q.k(); ++j)
            if (q.shaded(i, j) != q.shaded(j, i)) return false;
    return true;
}

std::array<Symmetry, 8> Symmetry::all() {
    std::array<Symmetry, 8> out{};
    for (int m = 0; m < 8; ++m) out[m] = Symmetry{(m & 4) != 0, (m & 2) != 0, (m & 1) != 0};
    return out;
}

Permutation Symmetry::apply(const Permutation& p) const {
    Permutation x = inv ? inverse(p) : p;
    if (rev) x = reverse(x);
    if (comp) x = complement(x);
    return x;
}

Permutation Symmetry::apply_inverse(const Permutation& p) const {
    Permutation x = comp ? complement(p) : p;
    if (rev) x = reverse(x);
    if (inv) x = inverse(x);
    return x;
}

MeshPattern Symmetry::apply(const MeshPattern& q) const {
    MeshPattern x = inv ? mesh_inverse(q) : q;
    if (rev) x = mesh_reverse(x);
    if (comp) x = mesh_complement(x);
    return x;
}

MeshPattern Symmetry::apply_inverse(const MeshPattern& q) const {
    MeshPattern x = comp ? mesh_complement(q) : q;
    if (rev) x = mesh_reverse(x);
    if (inv) x = mesh_inverse(x);
    return x;
}

std::string Symmetry::name() const {
    std::string s;
    if (inv) s += 'i';
    if (rev) s += 'r';
    if (comp) s += 'c';
    return s.empty() ? "id" : s;
}

std::string to_string(ShadingType t) {
    switch (t) {
        case ShadingType::X1: return "X1";
        case ShadingType::X2: return "X2";
        case ShadingType::X3: return "X3";
        case ShadingType::X4: return "X4";
        case ShadingType::Y1: return "Y1";
        case ShadingType::Y2: return "Y2";
        case ShadingType::Y3: return "Y3";
        case ShadingType::Y4: return "Y4";
        case ShadingType::X1_3box: return "X1_3box";
        case ShadingType::Y1_3box: return "Y1_3box";
    }
    return "?";
}

ShadingType parse_shading_type(std::string_view s) {
    for (ShadingType t : kAllShadingTypes)
        if (to_string(t) == s) return t;
    throw std::invalid_argument("unknown shading type '" + std::string(s) + "'");
}

bool is_y_form(ShadingType t) {
    switch (t) {
        case ShadingType::Y1:
        case ShadingType::Y2:
        case ShadingType::Y3:
        case ShadingType::Y4:
        case ShadingType::Y1_3box: return true;
        default: return false;
    }
}

namespace {

std::vector<Box> x_frame(ShadingType t) {
    switch (t) {
        case ShadingType::X1:
        case ShadingType::Y1: return {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
        case ShadingType::X2:
        case ShadingType::Y2: return {{0, 0}, {0, 1}, {0, 2}, {3, 0}};
        case ShadingType::X3:
        case ShadingType::Y3: return {{0, 0}, {0, 1}, {0, 3}, {2, 0}};
        case ShadingType::X4:
        case ShadingType::Y4: return {{0, 0}, {0, 1}, {2, 0}, {3, 0}};
        case ShadingType::X1_3box:
        case ShadingType::Y1_3box: return {{0, 0}, {0, 1}, {0, 2}};
    }
    return {};
}

}  // namespace

std::vector<Box> frame(ShadingType t) {
    std::vector<Box> f = x_frame(t);
    if (is_y_form(t))
        for (Box& bx : f) std::swap(bx.a, bx.b);
    std::sort(f.begin(), f.end());
    return f;
}

MeshPattern instantiate(ShadingType t, const MeshPattern& p) {
    if (p.k() != 2)
        throw std::invalid_argument("instantiate needs a length-2 pattern, got length " +
                                    std::to_string(p.k()));
    std::vector<int> tau{1, p.tau().at(1) + 1, p.tau().at(2) + 1};
    std::vector<Box> boxes = frame(t);
    for (const Box& bx : p.shading()) boxes.push_back({bx.a + 1, bx.b + 1});
    return MeshPattern(Permutation::from_one_line(tau), boxes);
}

std::optional<Classification> classify_type(const MeshPattern& q) {
    if (q.k() != 3 || q.tau().at(1) != 1) return std::nullopt;
    std::vector<Box> edge;
    std::vector<Box> inner;
    for (const Box& bx : q.shading()) (bx.a == 0 || bx.b == 0 ? edge : inner).push_back(bx);
    std::optional<Classification> found;
    for (ShadingType t : kAllShadingTypes) {
        if (frame(t) != edge) continue;
        std::vector<Box> pb;
        for (const Box& bx : inner) pb.push_back({bx.a - 1, bx.b - 1});
        const int t2[2] = {q.tau().at(2) - 1, q.tau().at(3) - 1};
        MeshPattern p(Permutation::from_one_line({t2[0], t2[1]}), pb);
        if (found)
            throw std::logic_error("shading matches both " + to_string(found->type) + " and " +
                                   to_string(t));
        found = Classification{t, p};
    }
    return found;
}

}  // namespace meshpat
