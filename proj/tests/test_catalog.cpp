#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "meshpat/catalog.hpp"

using namespace meshpat;
namespace fs = std::filesystem;

namespace {

const Catalog& catalog() {
    static const Catalog cat = load_catalog();
    return cat;
}

// Copies the data directory so individual files can be corrupted.
struct ScratchCatalog {
    fs::path dir;
    ScratchCatalog() {
        dir = fs::temp_directory_path() / ("meshpat_catalog_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        for (const auto& f : fs::directory_iterator(default_catalog_dir())) fs::copy(f.path(), dir / f.path().filename());
    }
    ~ScratchCatalog() { fs::remove_all(dir); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
};

}  // namespace

TEST_CASE("catalog counts") {
    const Catalog& cat = catalog();
    CHECK(cat.count(Status::Proved) == 112);
    CHECK(cat.count(Status::Conjectured) == 14);
    CHECK(cat.count(Status::Extended) == 562);
    CHECK(cat.extended_generated == 562);
    CHECK(cat.extended_distinct == 558);
    const int per_table[] = {44, 34, 18, 12, 4, 14, 562};
    for (int t = 2; t <= 8; ++t) CHECK(cat.select(t).size() == static_cast<std::size_t>(per_table[t - 2]));
}

TEST_CASE("catalog entries") {
    const PairEntry* e = catalog().find("X1_17");
    REQUIRE(e);
    CHECK(e->q1 == MeshPattern::parse("123:(0,0)(0,1)(0,2)(0,3)(2,1)(2,2)(3,1)(3,2)"));
    CHECK(e->q2 == MeshPattern::parse("132:(0,0)(0,1)(0,2)(0,3)(2,1)(2,2)(3,1)(3,2)"));
    CHECK(e->status == Status::Proved);
    CHECK(e->technique == "swap");
    CHECK(e->map);
    CHECK(e->has_check("closed_form_t"));

    const PairEntry* p117 = catalog().find("P117");
    REQUIRE(p117);
    CHECK(p117->status == Status::Conjectured);
    CHECK_FALSE(p117->map);

    const PairEntry* t8 = catalog().find("T8_X1_p001");
    REQUIRE(t8);
    CHECK(t8->template_type == ShadingType::X1);
    CHECK(t8->q1 == instantiate(ShadingType::X1, *t8->p));
    CHECK(catalog().find("nope") == nullptr);
}

TEST_CASE("transcription lint is clean") {
    const auto issues = lint_catalog(catalog());
    for (const auto& i : issues) MESSAGE(i);
    CHECK(issues.empty());
}

TEST_CASE("lint reports corrupted transcriptions") {
    Catalog cat = catalog();
    for (auto& e : cat.entries)
        if (e.id == "Y1_3") e.q1 = MeshPattern(e.q1.tau(), {{0, 0}, {1, 0}});
    const auto issues = lint_catalog(cat);
    CHECK_FALSE(issues.empty());
    bool named = false;
    for (const auto& i : issues) named |= i.find("Y1_3") != std::string::npos;
    CHECK(named);
}

TEST_CASE("malformed catalog files are rejected") {
    ScratchCatalog s;
    CHECK_NOTHROW(load_catalog(s.dir.string()));
    SUBCASE("duplicate id") {
        s.write("table6.json", R"({"entries":[
          {"id":"P113","table":6,"status":"proved","technique":"open","shading":[[0,0]]},
          {"id":"P113","table":6,"status":"proved","technique":"open","shading":[[0,0]]}]})");
        CHECK_THROWS_AS(load_catalog(s.dir.string()), CatalogError);
    }
    SUBCASE("bad json") {
        s.write("table7.json", "{");
        CHECK_THROWS_AS(load_catalog(s.dir.string()), CatalogError);
    }
    SUBCASE("box outside the grid") {
        s.write("table6.json", R"({"entries":[{"id":"P113","table":6,"status":"proved","technique":"open","shading":[[4,0]]}]})");
        CHECK_THROWS_AS(load_catalog(s.dir.string()), CatalogError);
    }
    SUBCASE("unknown status") {
        s.write("table6.json", R"({"entries":[{"id":"P113","table":6,"status":"maybe","technique":"open","shading":[]}]})");
        CHECK_THROWS_AS(load_catalog(s.dir.string()), CatalogError);
    }
    SUBCASE("missing file") {
        fs::remove(s.dir / "table8.json");
        CHECK_THROWS_AS(load_catalog(s.dir.string()), CatalogError);
    }
}

TEST_CASE("minus antipodal shadings") {
    const auto all = minus_antipodal_shadings();
    CHECK(all.size() == 1024);
    CHECK(std::set<std::uint32_t>(all.begin(), all.end()).size() == 1024);
    const Permutation t123 = Permutation::parse("123");
    for (auto bits : all) REQUIRE(is_minus_antipodal(pattern_from_bits(t123, bits)));
    std::vector<Box> lower;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j < i; ++j) lower.push_back({i, j});
    CHECK(std::binary_search(all.begin(), all.end(), MeshPattern(t123, lower).bits()));
}

TEST_CASE("discovery recall and monotonicity") {
    const DiscoveryResult r7 = discover_candidates(7);
    const DiscoveryResult r5 = discover_candidates(5, {3, kDefaultMaxN});
    CHECK(r7.tested == 1024);
    const std::set<std::uint32_t> s7(r7.passing.begin(), r7.passing.end());
    const std::set<std::uint32_t> s5(r5.passing.begin(), r5.passing.end());
    CHECK(std::includes(s5.begin(), s5.end(), s7.begin(), s7.end()));
    for (const auto& e : catalog().entries)
        if (e.status != Status::Extended) CHECK_MESSAGE(s7.count(e.q1.bits()), e.id);
    CHECK(r7.passing.size() >= 126);
    std::size_t grouped = 0;
    for (const auto& o : r7.orbits) grouped += o.size();
    CHECK(grouped == r7.passing.size());
    const DiscoveryResult r7p = discover_candidates(7, {4, kDefaultMaxN});
    CHECK(r7p.passing == r7.passing);
    CHECK(r7p.orbits == r7.orbits);
}

TEST_CASE("proved and conjectured entries are jointly equidistributed at small n") {
    for (const auto& e : catalog().entries) {
        if (e.status == Status::Extended) continue;
        CHECK_MESSAGE(is_jointly_equidistributed(e.q1, e.q2, 6).verdict, e.id);
    }
}
