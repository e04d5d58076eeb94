#include "meshpat/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"
#include "meshpat/parallel.hpp"

#ifndef MESHPAT_DATA_DIR
#define MESHPAT_DATA_DIR "data/catalog"
#endif

namespace meshpat {

using nlohmann::json;

std::string to_string(Status s) {
    switch (s) {
        case Status::Proved: return "proved";
        case Status::Conjectured: return "conjectured";
        case Status::Extended: return "extended";
    }
    return "?";
}

bool PairEntry::has_check(const std::string& c) const {
    return std::find(checks.begin(), checks.end(), c) != checks.end();
}

const PairEntry* Catalog::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<const PairEntry*> Catalog::select(int table) const {
    std::vector<const PairEntry*> out;
    for (const auto& e : entries)
        if (e.table == table) out.push_back(&e);
    return out;
}

int Catalog::count(Status s) const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [s](const PairEntry& e) { return e.status == s; }));
}

std::string default_catalog_dir() {
    if (const char* env = std::getenv("MESHPAT_CATALOG_DIR")) return env;
    return MESHPAT_DATA_DIR;
}

namespace {

const Permutation& tau123() {
    static const Permutation t = Permutation::from_one_line({1, 2, 3});
    return t;
}

const Permutation& tau132() {
    static const Permutation t = Permutation::from_one_line({1, 3, 2});
    return t;
}

Status parse_status(const std::string& s) {
    if (s == "proved") return Status::Proved;
    if (s == "conjectured") return Status::Conjectured;
    if (s == "extended") return Status::Extended;
    throw CatalogError("unknown status '" + s + "'");
}

MapSpec parse_map(const json& j) {
    MapSpec m;
    m.kind = parse_map_kind(j.at("kind").get<std::string>());
    const std::string scope = j.value("scope", "global");
    if (scope == "global")
        m.scope = SwapScope::Global;
    else if (scope == "first_element")
        m.scope = SwapScope::FirstElement;
    else
        throw CatalogError("unknown swap scope '" + scope + "'");
    if (j.contains("locator")) {
        const auto loc = j.at("locator").get<std::vector<int>>();
        if (loc.size() != 2) throw CatalogError("locator needs two indices");
        m.locator = {loc[0], loc[1]};
    }
    m.via_inverse = j.value("via_inverse", false);
    return m;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw CatalogError(path + ": " + e.what());
    }
}

PairEntry parse_entry(const json& j) {
    PairEntry e;
    e.id = j.at("id").get<std::string>();
    e.table = j.at("table").get<int>();
    e.status = parse_status(j.at("status").get<std::string>());
    e.technique = j.at("technique").get<std::string>();
    std::vector<Box> boxes;
    for (const auto& b : j.at("shading")) boxes.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
    e.q1 = MeshPattern(tau123(), boxes);
    e.q2 = MeshPattern(tau132(), boxes);
    if (j.contains("map")) e.map = parse_map(j.at("map"));
    if (j.contains("checks")) e.checks = j.at("checks").get<std::vector<std::string>>();
    e.note = j.value("note", "");
    return e;
}

std::string padded(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", i);
    return buf;
}

}  // namespace

Catalog load_catalog(const std::string& dir) {
    Catalog cat;
    for (int table = 2; table <= 7; ++table) {
        const std::string path = dir + "/table" + std::to_string(table) + ".json";
        const json doc = read_json(path);
        for (const auto& j : doc.at("entries")) {
            try {
                cat.entries.push_back(parse_entry(j));
            } catch (const std::exception& ex) {
                throw CatalogError(path + ": entry " + j.value("id", std::string("?")) + ": " + ex.what());
            }
            if (cat.entries.back().table != table)
                throw CatalogError(path + ": entry " + cat.entries.back().id + " claims table " +
                                   std::to_string(cat.entries.back().table));
        }
    }
    const std::string path8 = dir + "/table8.json";
    const json doc8 = read_json(path8);
    std::set<std::uint32_t> distinct;
    int row_index = 0;
    for (const auto& row : doc8.at("rows")) {
        ++row_index;
        const auto templates = row.at("templates").get<std::vector<std::string>>();
        const auto p_list = row.at("p_list").get<std::vector<std::string>>();
        for (const auto& tname : templates) {
            const ShadingType t = parse_shading_type(tname);
            for (std::size_t i = 0; i < p_list.size(); ++i) {
                MeshPattern p;
                try {
                    p = MeshPattern::parse(p_list[i]);
                } catch (const std::exception& ex) {
                    throw CatalogError(path8 + ": row " + std::to_string(row_index) + ": " + ex.what());
                }
                PairEntry e;
                e.id = "T8_" + tname + "_p" + padded(static_cast<int>(i) + 1);
                e.table = 8;
                e.status = Status::Extended;
                e.technique = "open";
                e.q1 = instantiate(t, p);
                e.q2 = MeshPattern(tau132(), e.q1.shading());
                e.template_type = t;
                e.p = p;
                e.row = row_index;
                distinct.insert(e.q1.bits());
                cat.entries.push_back(std::move(e));
                ++cat.extended_generated;
            }
        }
    }
    cat.extended_distinct = static_cast<int>(distinct.size());
    std::set<std::string> ids;
    for (const auto& e : cat.entries)
        if (!ids.insert(e.id).second) throw CatalogError("duplicate id " + e.id);
    return cat;
}

namespace {

std::optional<ShadingType> type_from_id(const std::string& id) {
    if (id.size() < 3 || (id[0] != 'X' && id[0] != 'Y') || id[2] != '_') return std::nullopt;
    return parse_shading_type(id.substr(0, 2));
}

}  // namespace

std::vector<std::string> lint_catalog(const Catalog& cat) {
    std::vector<std::string> issues;
    if (cat.count(Status::Proved) != 112)
        issues.push_back("proved count " + std::to_string(cat.count(Status::Proved)) + " != 112");
    if (cat.count(Status::Conjectured) != 14)
        issues.push_back("conjectured count " + std::to_string(cat.count(Status::Conjectured)) + " != 14");
    if (cat.extended_generated != 562)
        issues.push_back("generated extended count " + std::to_string(cat.extended_generated) + " != 562");
    for (const auto& e : cat.entries) {
        if (e.q1.tau() != tau123() || e.q2.tau() != tau132() || e.q1.bits() != e.q2.bits())
            issues.push_back(e.id + ": patterns are not 123/132 with a shared shading");
        const bool ma = is_minus_antipodal(e.q1);
        const bool sym = is_symmetric_shading(e.q1);
        if (e.status != Status::Extended && !ma) issues.push_back(e.id + ": shading is not minus antipodal");
        if (e.status == Status::Extended && ma && sym)
            issues.push_back(e.id + ": shading is both minus antipodal and symmetric");
        const auto expected = e.template_type ? e.template_type : type_from_id(e.id);
        if (expected) {
            const auto c = classify_type(e.q1);
            if (!c || c->type != *expected)
                issues.push_back(e.id + ": does not classify as " + to_string(*expected));
            else if (instantiate(c->type, c->p) != e.q1)
                issues.push_back(e.id + ": instantiation round trip differs");
            else if (e.p && c->p != *e.p)
                issues.push_back(e.id + ": recovered p differs from the listed one");
        }
        if (e.id[0] == 'X' && e.status != Status::Extended) {
            const std::string partner = "Y" + e.id.substr(1);
            const PairEntry* y = cat.find(partner);
            if (!y)
                issues.push_back(e.id + ": no partner " + partner);
            else if (mesh_inverse(e.q1) != y->q1 || mesh_inverse(e.q2) != y->q2)
                issues.push_back(e.id + ": " + partner + " is not its inverse image");
        }
        if (e.map) {
            try {
                make_map(*e.map, e.q1, e.q2);
            } catch (const std::exception& ex) {
                issues.push_back(e.id + ": map does not build: " + ex.what());
            }
        }
        if ((e.status == Status::Proved) != (e.table >= 2 && e.table <= 6) ||
            (e.status == Status::Conjectured) != (e.table == 7))
            issues.push_back(e.id + ": status does not match table " + std::to_string(e.table));
    }
    return issues;
}

MeshPattern pattern_from_bits(const Permutation& tau, std::uint32_t bits) {
    std::vector<Box> boxes;
    const int k = tau.n();
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b)
            if ((bits >> (a * (k + 1) + b)) & 1u) boxes.push_back({a, b});
    return MeshPattern(tau, boxes);
}

std::vector<std::uint32_t> minus_antipodal_shadings() {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) pairs.push_back({i, j});
    auto bit = [](int a, int b) { return 1u << (a * 4 + b); };
    std::vector<std::uint32_t> out;
    for (std::uint32_t choice = 0; choice < (1u << pairs.size()); ++choice) {
        std::uint32_t off = 0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            off |= (choice >> p) & 1u ? bit(i, j) : bit(j, i);
        }
        for (std::uint32_t diag = 0; diag < 16; ++diag) {
            std::uint32_t bits = off;
            for (int d = 0; d <= 3; ++d)
                if ((diag >> d) & 1u) bits |= bit(d, d);
            out.push_back(bits);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

DiscoveryResult discover_candidates(int n_max, const SweepOptions& opts) {
    const auto shadings = minus_antipodal_shadings();
    std::vector<char> pass(shadings.size(), 0);
    SweepOptions serial = opts;
    serial.jobs = 1;
    parallel_for(shadings.size(), opts.jobs, [&](std::size_t i) {
        const MeshPattern q1 = pattern_from_bits(tau123(), shadings[i]);
        const MeshPattern q2 = pattern_from_bits(tau132(), shadings[i]);
        for (int n = 1; n <= n_max; ++n)
            if (first_asymmetry(joint_distribution(q1, q2, n, serial))) return;
        pass[i] = 1;
    });
    DiscoveryResult r;
    r.n_max = n_max;
    r.tested = static_cast<int>(shadings.size());
    for (std::size_t i = 0; i < shadings.size(); ++i)
        if (pass[i]) r.passing.push_back(shadings[i]);
    std::set<std::uint32_t> seen;
    for (std::uint32_t bits : r.passing) {
        if (seen.count(bits)) continue;
        const std::uint32_t inv = mesh_inverse(pattern_from_bits(tau123(), bits)).bits();
        std::vector<std::uint32_t> orbit{bits};
        if (inv != bits && std::binary_search(r.passing.begin(), r.passing.end(), inv)) orbit.push_back(inv);
        std::sort(orbit.begin(), orbit.end());
        for (auto b : orbit) seen.insert(b);
        r.orbits.push_back(orbit);
    }
    return r;
}

}  // namespace meshpat
