#include "cli.hpp"

#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "meshpat/bijection.hpp"
#include "meshpat/catalog.hpp"
#include "meshpat/distribution.hpp"
#include "meshpat/forms.hpp"
#include "meshpat/occurrence.hpp"
#include "meshpat/parallel.hpp"

namespace meshpat {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string verdict_label(bool pass, Status status) {
    if (!pass) return "counterexample";
    return status == Status::Conjectured ? "supported-at-depth" : "verified-at-depth";
}

std::string witness_text(const Witness& w) {
    std::ostringstream os;
    os << "n=" << w.n << ": counts(" << w.k << "," << w.l << ")=" << w.left << " but counts(" << w.l << "," << w.k
       << ")=" << w.right;
    return os.str();
}

json witness_json(const Witness& w) {
    return {{"n", w.n}, {"k", w.k}, {"l", w.l}, {"count_kl", w.left}, {"count_lk", w.right}};
}

std::vector<int> parse_tables(const std::string& spec) {
    std::set<int> out;
    std::stringstream ss(spec);
    std::string part;
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size() || v < 2 || v > 8) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError("bad table selector '" + s + "' (tables 2..8)");
        }
    };
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.insert(number(part));
        } else {
            const int a = number(part.substr(0, dots));
            const int b = number(part.substr(dots + 2));
            if (a > b) throw UsageError("empty table range '" + part + "'");
            for (int t = a; t <= b; ++t) out.insert(t);
        }
    }
    if (out.empty()) throw UsageError("no tables selected");
    return {out.begin(), out.end()};
}

Catalog load(const std::string& dir) {
    try {
        return load_catalog(dir.empty() ? default_catalog_dir() : dir);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

struct EntryCheck {
    bool jd_pass = true;
    std::optional<Witness> witness;
    std::string map = "-";
    std::string forms = "-";
    std::vector<std::string> details;

    bool ok() const { return jd_pass && map != "FAIL" && forms != "FAIL"; }
};

// Closed-form and recurrence oracles attached to an entry, compared against
// the brute-force distributions n = 1..n_max.
void run_form_checks(const PairEntry& e, const std::vector<JointDistribution>& ds, int n_max,
                     const SweepOptions& opts, EntryCheck& out) {
    bool any = false;
    bool ok = true;
    auto fail = [&](const std::string& msg) {
        ok = false;
        out.details.push_back(msg);
    };
    if (e.has_check("closed_form_t")) {
        any = true;
        for (const auto& d : ds)
            if (d.n >= 2 && !compare_distributions(d, t_closed_distribution(d.n)))
                fail("closed form T differs at n=" + std::to_string(d.n));
    }
    if (e.has_check("wilf_t00")) {
        any = true;
        for (const auto& d : ds)
            if (d.n >= 2 && d.at(0, 0) != 2 * factorial(d.n - 1))
                fail("T(0,0) != 2(n-1)! at n=" + std::to_string(d.n));
    }
    if (e.has_check("x4_recurrence")) {
        any = true;
        JointDistribution t{2, {{{0, 0}, 2}}};
        for (const auto& d : ds) {
            if (d.n < 3) continue;
            t = t_recurrence_x4_step(t, d.n);
            if (!compare_distributions(d, t)) fail("recurrence differs at n=" + std::to_string(d.n));
        }
    }
    if (e.has_check("reduction")) {
        any = true;
        const auto r = verify_reduction(e.q1, e.q2, n_max, opts);
        if (!r.ok) fail("reduction fails at " + (r.witness ? r.witness->to_string() : std::string("?")) + ": " + r.message);
    }
    if (any) out.forms = ok ? "ok" : "FAIL";
}

EntryCheck check_entry(const PairEntry& e, int n_max, const SweepOptions& opts) {
    EntryCheck c;
    const auto rep = is_jointly_equidistributed(e.q1, e.q2, n_max, opts);
    c.jd_pass = rep.verdict;
    c.witness = rep.first_failure;
    if (c.witness) c.details.push_back(witness_text(*c.witness));
    if (e.map) {
        const auto br = verify_bijection(make_map(*e.map, e.q1, e.q2), e.q1, e.q2, n_max, opts);
        c.map = br.ok ? "ok" : "FAIL";
        if (!br.ok)
            c.details.push_back("map fails on " + br.input.to_string() + " -> " + br.image.to_string() + " " +
                                br.message);
    }
    run_form_checks(e, rep.distributions, n_max, opts, c);
    return c;
}

int cmd_count(const std::string& pattern, const std::string& perm, std::ostream& out) {
    MeshPattern q;
    Permutation p;
    try {
        q = MeshPattern::parse(pattern);
    } catch (const PatternParseError& e) {
        throw UsageError(std::string(e.what()));
    }
    try {
        p = Permutation::parse(perm);
    } catch (const PermutationError& e) {
        throw UsageError("bad permutation '" + perm + "': " + e.what());
    }
    out << count_occurrences(p, q) << '\n';
    return kExitOk;
}

int cmd_check_pair(const std::vector<std::string>& targets, int n_max, const std::string& format,
                   const std::string& catalog_dir, const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    std::string id = "custom";
    Status status = Status::Proved;
    MeshPattern q1, q2;
    std::optional<PairEntry> entry;
    if (targets.size() == 1) {
        const Catalog cat = load(catalog_dir);
        const PairEntry* e = cat.find(targets[0]);
        if (!e) throw UsageError("unknown pair id '" + targets[0] + "'");
        entry = *e;
        id = e->id;
        status = e->status;
        q1 = e->q1;
        q2 = e->q2;
    } else if (targets.size() == 2) {
        try {
            q1 = MeshPattern::parse(targets[0]);
            q2 = MeshPattern::parse(targets[1]);
        } catch (const PatternParseError& e) {
            throw UsageError(e.what());
        }
        if (q1.k() != q2.k()) throw UsageError("patterns must have equal length");
    } else {
        throw UsageError("check-pair takes a pair id or two pattern literals");
    }
    check_enumeration_limit(n_max, opts.limit);
    const auto rep = is_jointly_equidistributed(q1, q2, n_max, opts);
    const std::string verdict = verdict_label(rep.verdict, status);
    if (format == "json") {
        json j;
        j["id"] = id;
        if (entry) j["status"] = to_string(status);
        j["q1"] = q1.to_literal();
        j["q2"] = q2.to_literal();
        j["nmax"] = n_max;
        j["distributions"] = json::array();
        for (const auto& d : rep.distributions) j["distributions"].push_back(json::parse(to_json(d)));
        j["verdict"] = verdict;
        if (rep.first_failure) j["witness"] = witness_json(*rep.first_failure);
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << to_csv(rep.distributions);
        err << "verdict: " << verdict;
        if (rep.first_failure) err << " " << witness_text(*rep.first_failure);
        err << '\n';
    } else {
        out << "pair " << id;
        if (entry) out << " (" << to_string(status) << ", " << entry->technique << ")";
        out << "\nq1 " << q1.to_literal() << "\nq2 " << q2.to_literal() << '\n';
        for (const auto& d : rep.distributions) out << to_json(d) << '\n';
        out << "verdict: " << verdict << " (n <= " << n_max << ")";
        if (rep.first_failure) out << "; first witness " << witness_text(*rep.first_failure);
        out << '\n';
    }
    return rep.verdict ? kExitOk : kExitCounterexample;
}

int cmd_verify_tables(const std::string& tables_spec, int n_max, const std::string& format,
                      const std::string& catalog_dir, const SweepOptions& opts, std::ostream& out) {
    const auto tables = parse_tables(tables_spec);
    check_enumeration_limit(n_max, opts.limit);
    const Catalog cat = load(catalog_dir);
    int failures = 0;
    json rows = json::array();
    std::ostringstream text;
    for (int t : tables) {
        const auto entries = cat.select(t);
        int passed = 0;
        for (const PairEntry* e : entries) {
            const EntryCheck c = check_entry(*e, n_max, opts);
            const std::string jd = verdict_label(c.jd_pass, e->status);
            if (c.ok())
                ++passed;
            else
                ++failures;
            if (format == "json") {
                json r{{"id", e->id}, {"table", t}, {"status", to_string(e->status)}, {"technique", e->technique},
                       {"jd", jd}, {"map", c.map}, {"forms", c.forms}, {"pass", c.ok()}};
                if (c.witness) r["witness"] = witness_json(*c.witness);
                if (!c.details.empty()) r["details"] = c.details;
                rows.push_back(r);
            } else {
                text << std::left << std::setw(16) << e->id << std::setw(13) << to_string(e->status) << std::setw(13)
                     << e->technique << std::setw(20) << jd << "map=" << std::setw(6) << c.map << "forms=" << std::setw(6)
                     << c.forms << (c.ok() ? "PASS" : "FAIL");
                for (const auto& d : c.details) text << "  [" << d << "]";
                text << '\n';
            }
        }
        if (format != "json") {
            text << "table " << t << ": " << passed << "/" << entries.size() << " pass";
            if (t == 8)
                text << " (" << cat.extended_generated << " generated entries, " << cat.extended_distinct
                     << " distinct shadings)";
            text << '\n';
        }
    }
    if (format == "json") {
        json j{{"nmax", n_max}, {"entries", rows}, {"failures", failures}};
        if (std::find(tables.begin(), tables.end(), 8) != tables.end())
            j["table8"] = {{"generated", cat.extended_generated}, {"distinct_shadings", cat.extended_distinct}};
        out << j.dump() << '\n';
    } else {
        out << text.str() << (failures == 0 ? "all pass" : std::to_string(failures) + " failing entries")
            << " at nmax=" << n_max << '\n';
    }
    return failures == 0 ? kExitOk : kExitCounterexample;
}

std::string shading_literal(std::uint32_t bits) {
    const std::string lit = pattern_from_bits(Permutation::from_one_line({1, 2, 3}), bits).to_literal();
    return lit.substr(lit.find(':') + 1);
}

int cmd_discover(int n_max, const std::string& format, const std::string& catalog_dir, const SweepOptions& opts,
                 std::ostream& out) {
    if (n_max < 1) throw UsageError("--nmax must be positive");
    check_enumeration_limit(n_max, opts.limit);
    const Catalog cat = load(catalog_dir);
    const DiscoveryResult r = discover_candidates(n_max, opts);
    std::map<std::uint32_t, std::vector<std::string>> listed;
    int listed_entries = 0;
    for (const auto& e : cat.entries)
        if (e.status != Status::Extended) {
            listed[e.q1.bits()].push_back(e.id);
            ++listed_entries;
        }
    const std::set<std::uint32_t> passing(r.passing.begin(), r.passing.end());
    std::vector<std::string> missing;
    for (const auto& [bits, ids] : listed)
        if (!passing.count(bits))
            for (const auto& id : ids) missing.push_back(id);
    std::vector<std::uint32_t> unlisted;
    for (auto bits : r.passing)
        if (!listed.count(bits)) unlisted.push_back(bits);
    if (format == "json") {
        json j;
        j["nmax"] = n_max;
        j["tested"] = r.tested;
        j["passing"] = json::array();
        for (auto b : r.passing) {
            json row{{"shading", shading_literal(b)}};
            if (listed.count(b)) row["catalog"] = listed.at(b);
            j["passing"].push_back(row);
        }
        j["inverse_orbits"] = json::array();
        for (const auto& o : r.orbits) {
            json g = json::array();
            for (auto b : o) g.push_back(shading_literal(b));
            j["inverse_orbits"].push_back(g);
        }
        j["catalog_entries"] = listed_entries;
        j["catalog_distinct_shadings"] = listed.size();
        j["catalog_missing"] = missing;
        j["unlisted_empirical_candidates"] = json::array();
        for (auto b : unlisted) j["unlisted_empirical_candidates"].push_back(shading_literal(b));
        out << j.dump() << '\n';
    } else {
        out << "tested " << r.tested << " minus-antipodal shadings at nmax=" << n_max << '\n';
        out << "passing: " << r.passing.size() << " shadings in " << r.orbits.size() << " inverse orbits\n";
        for (auto b : r.passing) {
            out << "  " << shading_literal(b);
            if (listed.count(b)) {
                out << "  ";
                for (std::size_t i = 0; i < listed.at(b).size(); ++i) out << (i ? "," : "") << listed.at(b)[i];
            }
            out << '\n';
        }
        out << "catalog: " << listed_entries << " proved/conjectured entries, " << listed.size()
            << " distinct shadings; missing from result: " << missing.size() << '\n';
        for (const auto& id : missing) out << "  missing " << id << '\n';
        out << "unlisted empirical candidates: " << unlisted.size() << '\n';
        for (auto b : unlisted) out << "  " << shading_literal(b) << '\n';
    }
    return missing.empty() ? kExitOk : kExitCounterexample;
}

int cmd_bijection_trace(const std::string& id, const std::string& perm, const std::string& catalog_dir,
                        std::ostream& out, std::ostream& err) {
    Permutation pi;
    try {
        pi = Permutation::parse(perm);
    } catch (const PermutationError& e) {
        throw UsageError("bad permutation '" + perm + "': " + e.what());
    }
    PermMap map;
    if (id == "box2") {
        map = make_map(MapSpec{MapKind::SwapChain, SwapScope::Global, {}, false}, box_pair_p1(), box_pair_p2());
    } else {
        const Catalog cat = load(catalog_dir);
        const PairEntry* e = cat.find(id);
        if (!e) throw UsageError("unknown pair id '" + id + "'");
        if (!e->map) throw UsageError("pair " + id + " has no registered map");
        map = make_map(*e->map, e->q1, e->q2);
    }
    Steps steps;
    try {
        map(pi, &steps);
    } catch (const std::logic_error& e) {
        err << "map precondition violated: " << e.what() << '\n';
        return kExitCounterexample;
    }
    out << trace_json(to_trace(pi, steps)) << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mesh pattern occurrence counting and joint-equidistribution checks"};
    app.require_subcommand(1);
    std::string catalog_dir;
    app.add_option("--catalog", catalog_dir, "Catalog data directory");

    int jobs = 0;
    int limit = kDefaultMaxN;
    auto add_parallel = [&](CLI::App* sub) {
        sub->add_option("--jobs", jobs, "Worker threads (default: $MESHPAT_JOBS or hardware concurrency)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--limit", limit, "Largest n accepted for sweeps")->check(CLI::Range(1, kHardMaxN));
    };

    std::string pattern, perm;
    auto* count = app.add_subcommand("count", "Count occurrences of a mesh pattern in a permutation");
    count->add_option("pattern", pattern, "Pattern literal, e.g. 132:(0,0)(1,1)")->required();
    count->add_option("permutation", perm, "Permutation, e.g. 24513")->required();

    std::vector<std::string> targets;
    int nmax_pair = 7;
    std::string format = "text";
    auto* check = app.add_subcommand("check-pair", "Joint distributions and verdict for one pair");
    check->add_option("pair", targets, "Catalog id, or two pattern literals")->required()->expected(1, 2);
    check->add_option("--nmax", nmax_pair, "Largest n checked");
    check->add_option("--format", format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
    add_parallel(check);

    std::string tables = "2..8";
    int nmax_tables = 6;
    auto* verify = app.add_subcommand("verify-tables", "Verify catalog tables");
    verify->add_option("--tables", tables, "Table selector, e.g. 2..8 or 2,3,7");
    verify->add_option("--nmax", nmax_tables, "Largest n checked");
    verify->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    add_parallel(verify);

    int nmax_discover = 7;
    auto* discover = app.add_subcommand("discover", "Search all minus-antipodal shadings for joint equidistribution");
    discover->add_option("--nmax", nmax_discover, "Largest n checked");
    discover->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
    add_parallel(discover);

    std::string trace_id, trace_perm;
    auto* trace = app.add_subcommand("bijection-trace", "Swap sequence of a pair's registered map");
    trace->add_option("pair", trace_id, "Catalog id, or box2 for the length-2 swap-chain pair")->required();
    trace->add_option("permutation", trace_perm, "Permutation")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const SweepOptions opts{jobs > 0 ? jobs : default_jobs(), limit};
    try {
        if (count->parsed()) return cmd_count(pattern, perm, out);
        if (check->parsed()) return cmd_check_pair(targets, nmax_pair, format, catalog_dir, opts, out, err);
        if (verify->parsed()) return cmd_verify_tables(tables, nmax_tables, format, catalog_dir, opts, out);
        if (discover->parsed()) return cmd_discover(nmax_discover, format, catalog_dir, opts, out);
        if (trace->parsed()) return cmd_bijection_trace(trace_id, trace_perm, catalog_dir, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PermutationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace meshpat
