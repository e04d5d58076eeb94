#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "meshpat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = meshpat::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count") {
    const Run worked = run({"count", "132:(0,0)(1,1)(1,2)(3,1)", "24513"});
    CHECK(worked.code == 0);
    CHECK(worked.out == "1\n");
    CHECK(run({"count", "12:", "21"}).out == "0\n");
    CHECK(run({"count", "123:", "123"}).out == "1\n");
    CHECK(run({"count", "123:", "10,9,8,7,6,5,4,3,2,1"}).out == "0\n");
}

TEST_CASE("parse errors exit 2 and name the token") {
    const Run bad = run({"count", "132:(0,0)(9,1)", "24513"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("(9,1)") != std::string::npos);
    const Run perm = run({"count", "132:", "2451"});
    CHECK(perm.code == 2);
    CHECK(perm.err.find("2451") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count", "132:"}).code == 2);
    CHECK(run({"check-pair", "X1_19", "--nmax", "13"}).code == 2);
    CHECK(run({"check-pair", "X1_19", "--nmax", "11"}).code == 2);
}

TEST_CASE("check-pair") {
    const Run proved = run({"check-pair", "X1_19", "--nmax", "7"});
    CHECK(proved.code == 0);
    CHECK(proved.out.find("verdict: verified-at-depth") != std::string::npos);

    const Run conj = run({"check-pair", "P117", "--nmax", "7"});
    CHECK(conj.code == 0);
    CHECK(conj.out.find("supported-at-depth") != std::string::npos);
    CHECK(conj.out.find("proved") == std::string::npos);

    const Run classical = run({"check-pair", "123:", "132:", "--nmax", "6", "--format", "json"});
    CHECK(classical.code == 1);
    const json j = json::parse(classical.out);
    CHECK(j["verdict"] == "counterexample");
    CHECK(j["witness"]["n"] == 4);
    CHECK(j["distributions"].size() == 4);
    CHECK(j["witness"]["count_kl"] != j["witness"]["count_lk"]);

    const Run csv = run({"check-pair", "X1_17", "--nmax", "3", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("n,k,l,count\n1,0,0,1\n", 0) == 0);
    CHECK(csv.out.find("3,0,0,4\n") != std::string::npos);

    CHECK(run({"check-pair", "X9_99"}).code == 2);
    CHECK(run({"check-pair", "12:", "132:"}).code == 2);
}

TEST_CASE("verify-tables") {
    const Run t7 = run({"verify-tables", "--tables", "7", "--nmax", "6"});
    CHECK(t7.code == 0);
    CHECK(t7.out.find("table 7: 14/14 pass") != std::string::npos);
    CHECK(t7.out.find("all pass") != std::string::npos);

    const Run t2 = run({"verify-tables", "--tables", "2", "--nmax", "5", "--format", "json"});
    const json j = json::parse(t2.out);
    CHECK(j["entries"].size() == 44);
    int failing = 0;
    for (const auto& e : j["entries"]) {
        CHECK(e["jd"] == "verified-at-depth");
        if (!e["pass"].get<bool>()) {
            ++failing;
            CHECK(e["technique"] == "single-swap");
            CHECK(e["map"] == "FAIL");
        }
    }
    CHECK(j["failures"] == failing);
    CHECK(t2.code == (failing == 0 ? 0 : 1));

    CHECK(run({"verify-tables", "--tables", "9"}).code == 2);
    CHECK(run({"verify-tables", "--tables", "5..3"}).code == 2);
}

TEST_CASE("--jobs does not change reports") {
    const Run one = run({"verify-tables", "--tables", "4,6", "--nmax", "6", "--jobs", "1"});
    const Run many = run({"verify-tables", "--tables", "4,6", "--nmax", "6", "--jobs", "3"});
    CHECK(one.out == many.out);
    CHECK(one.code == many.code);
    CHECK(run({"discover", "--nmax", "6", "--jobs", "1"}).out == run({"discover", "--nmax", "6", "--jobs", "4"}).out);
}

TEST_CASE("discover") {
    const Run d = run({"discover", "--nmax", "6", "--format", "json"});
    CHECK(d.code == 0);
    const json j = json::parse(d.out);
    CHECK(j["tested"] == 1024);
    CHECK(j["catalog_missing"].empty());
    CHECK(j["catalog_distinct_shadings"] == 126);
    CHECK(j["passing"].size() >= 126);
}

TEST_CASE("bijection-trace") {
    const Run box = run({"bijection-trace", "box2", "263518497"});
    CHECK(box.code == 0);
    const json steps = json::parse(box.out);
    REQUIRE(steps.size() == 5);
    CHECK(steps[0]["swap"] == json::array({8, 9}));
    CHECK(steps[4]["result"] == "325916487");

    CHECK(run({"bijection-trace", "box2", "1"}).out == "[]\n");
    const Run x2_10 = run({"bijection-trace", "X2_10", "1234"});
    CHECK(x2_10.code == 0);
    CHECK(json::parse(x2_10.out).size() == 1);
    CHECK(run({"bijection-trace", "P117", "123"}).code == 2);
    CHECK(run({"bijection-trace", "X1_17", "12x"}).code == 2);
}
