#include <set>

#include "doctest.h"
#include "meshpat/mesh.hpp"

using namespace meshpat;

namespace {

MeshPattern M(const char* s) { return MeshPattern::parse(s); }

const char* kX1_17 = "123:(0,0)(0,1)(0,2)(0,3)(2,1)(2,2)(3,1)(3,2)";

// All length-2 patterns with all 2^9 shadings.
std::vector<MeshPattern> all_length2() {
    std::vector<MeshPattern> out;
    for (const char* tau : {"12", "21"})
        for (std::uint32_t bits = 0; bits < 512; ++bits) {
            std::vector<Box> boxes;
            for (int a = 0; a <= 2; ++a)
                for (int b = 0; b <= 2; ++b)
                    if ((bits >> (a * 3 + b)) & 1u) boxes.push_back({a, b});
            out.emplace_back(Permutation::parse(tau), boxes);
        }
    return out;
}

}  // namespace

TEST_CASE("literal parsing and printing") {
    const MeshPattern q = M("132:(0,0)(1,1)(1,2)(3,1)");
    CHECK(q.k() == 3);
    CHECK(q.tau() == Permutation::parse("132"));
    CHECK(q.shaded(3, 1));
    CHECK_FALSE(q.shaded(1, 3));
    CHECK(q.bits() == ((1u << 0) | (1u << 5) | (1u << 6) | (1u << 13)));
    CHECK(q.to_literal() == "132:(0,0)(1,1)(1,2)(3,1)");
    CHECK(M("132:").shading().empty());
    CHECK(M("132:(3,1)(0,0)").to_literal() == "132:(0,0)(3,1)");
}

TEST_CASE("literal errors name the offending token") {
    auto token_of = [](const char* lit) -> std::string {
        try {
            MeshPattern::parse(lit);
        } catch (const PatternParseError& e) {
            return e.token();
        }
        return "<no error>";
    };
    CHECK(token_of("132:(0,0)(9,1)") == "(9,1)");
    CHECK(token_of("132:(0,0)(0,0)") == "(0,0)");
    CHECK(token_of("132:(0,0") != "<no error>");
    CHECK(token_of("122:(0,0)") != "<no error>");
    CHECK(token_of("132") != "<no error>");
    CHECK(token_of("12345:") != "<no error>");
}

TEST_CASE("symmetry chain on (213, {(0,1),(1,3),(2,2)})") {
    const MeshPattern q = M("213:(0,1)(1,3)(2,2)");
    const MeshPattern c = mesh_complement(q);
    CHECK(c == M("231:(0,2)(1,0)(2,1)"));
    const MeshPattern rc = mesh_reverse(c);
    CHECK(rc == M("132:(1,1)(2,0)(3,2)"));
    CHECK(mesh_inverse(rc) == M("132:(1,1)(0,2)(2,3)"));
}

TEST_CASE("r, c, i are involutions and match the permutation operations") {
    for (const auto& q : all_length2()) {
        REQUIRE(mesh_reverse(mesh_reverse(q)) == q);
        REQUIRE(mesh_complement(mesh_complement(q)) == q);
        REQUIRE(mesh_inverse(mesh_inverse(q)) == q);
        REQUIRE(mesh_reverse(q).tau() == reverse(q.tau()));
        REQUIRE(mesh_complement(q).tau() == complement(q.tau()));
        REQUIRE(mesh_inverse(q).tau() == inverse(q.tau()));
        if (is_minus_antipodal(q)) REQUIRE(is_minus_antipodal(mesh_inverse(q)));
    }
}

TEST_CASE("dihedral group elements") {
    const MeshPattern q = M("132:(0,0)(1,1)(1,2)(3,1)");
    const Permutation p = Permutation::parse("24513");
    std::set<std::string> names;
    for (const Symmetry& s : Symmetry::all()) {
        names.insert(s.name());
        CHECK(s.apply_inverse(s.apply(q)) == q);
        CHECK(s.apply_inverse(s.apply(p)) == p);
        CHECK(s.apply(q).tau() == s.apply(q.tau()));
    }
    CHECK(names.size() == 8);
    const Symmetry irc{true, true, true};
    CHECK(irc.apply(q) == mesh_complement(mesh_reverse(mesh_inverse(q))));
}

TEST_CASE("minus antipodal and symmetric shadings") {
    CHECK(is_minus_antipodal(M(kX1_17)));
    CHECK(is_minus_antipodal(M("1:(0,1)")));
    CHECK_FALSE(is_minus_antipodal(M("1:")));
    CHECK(is_symmetric_shading(M("12:(0,1)(1,0)")));
    CHECK_FALSE(is_symmetric_shading(M(kX1_17)));
    CHECK(is_symmetric_shading(M("12:")));
}

TEST_CASE("instantiate") {
    const MeshPattern p1 = M("12:(1,0)(1,1)(2,0)(2,1)");
    const MeshPattern p2 = M("21:(1,0)(1,1)(2,0)(2,1)");
    CHECK(instantiate(ShadingType::X1, p1) == M(kX1_17));
    CHECK(instantiate(ShadingType::X1, p2) == M("132:(0,0)(0,1)(0,2)(0,3)(2,1)(2,2)(3,1)(3,2)"));
    CHECK(instantiate(ShadingType::Y1, M("12:(0,1)(0,2)(1,1)(1,2)")) ==
          M("123:(0,0)(1,0)(2,0)(3,0)(1,2)(1,3)(2,2)(2,3)"));
    CHECK(instantiate(ShadingType::X2, M("12:")) == M("123:(0,0)(0,1)(0,2)(3,0)"));
    CHECK(instantiate(ShadingType::X1_3box, M("12:")) == M("123:(0,0)(0,1)(0,2)"));
    CHECK_THROWS(instantiate(ShadingType::X1, M("123:")));
}

TEST_CASE("Y frames are inverse images of X frames") {
    const std::pair<ShadingType, ShadingType> pairs[] = {{ShadingType::X1, ShadingType::Y1},
                                                         {ShadingType::X2, ShadingType::Y2},
                                                         {ShadingType::X3, ShadingType::Y3},
                                                         {ShadingType::X4, ShadingType::Y4},
                                                         {ShadingType::X1_3box, ShadingType::Y1_3box}};
    const Permutation t123 = Permutation::parse("123");
    for (auto [x, y] : pairs) {
        CHECK(mesh_inverse(MeshPattern(t123, frame(x))) == MeshPattern(t123, frame(y)));
        CHECK(is_y_form(y));
        CHECK_FALSE(is_y_form(x));
        CHECK(parse_shading_type(to_string(x)) == x);
        CHECK(parse_shading_type(to_string(y)) == y);
    }
}

TEST_CASE("classify_type") {
    const auto c = classify_type(M(kX1_17));
    REQUIRE(c);
    CHECK(c->type == ShadingType::X1);
    CHECK(c->p == M("12:(1,0)(1,1)(2,0)(2,1)"));
    CHECK_FALSE(classify_type(M("123:(0,1)(0,2)(1,1)(1,2)(2,2)(3,0)(3,1)(3,2)(3,3)")));
    CHECK_FALSE(classify_type(M("123:")));
}

TEST_CASE("instantiate then classify is the identity") {
    for (ShadingType t : kAllShadingTypes) {
        for (const auto& p : all_length2()) {
            const MeshPattern q = instantiate(t, p);
            const auto c = classify_type(q);
            REQUIRE(c);
            REQUIRE(c->type == t);
            REQUIRE(c->p == p);
        }
    }
}
