#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "k3pq/serialize.hpp"
#include "k3pq/tables.hpp"

namespace {

using k3pq::Json;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(K3PQ_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<Json> lines(const std::string& s) {
    std::vector<Json> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) out.push_back(Json::parse(line));
    return out;
}

bool has_k2(const std::vector<Json>& recs, long k2) {
    for (const auto& r : recs)
        if (r.at("K2") == k2) return true;
    return false;
}

bool contains_curve(const std::string& out, const k3pq::CurveAction& want) {
    for (const auto& line : lines(out))
        if (k3pq::canonical_key(k3pq::curve_from_json(line).action) == k3pq::canonical_key(want)) return true;
    return false;
}

}  // namespace

TEST_CASE("curves") {
    auto r = run("curves --order 3 --max-branch-points 6");
    CHECK(r.code == 0);
    auto recs = lines(r.out);
    CHECK(recs.size() == 4);
    CHECK(contains_curve(r.out, k3pq::curve_from_table_counts(k3pq::GroupSpec(3, false), {0, 6})));

    r = run("curves --order 5 --branch-points 3");
    CHECK(r.code == 0);
    CHECK(contains_curve(r.out, k3pq::dp_curve(k3pq::GroupSpec(5, false))));

    CHECK(run("curves --order 6 --branch-points 99").code == 2);
    CHECK(run("curves --order 4 --branch-points 3").code == 2);
    CHECK(run("curves --order 3").code == 2);
    CHECK(run("curves --order 3 --branch-points 3 --max-branch-points 4").code == 2);
    CHECK(run("curves --order 3 --branch-points 3 --format xml").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("classify") {
    auto r = run("classify --order 5 --t1 5 --t2 3");
    CHECK(r.code == 0);
    CHECK(has_k2(lines(r.out), -12));
    r = run("classify --order 6 --t1 12 --t2 3");
    CHECK(r.code == 0);
    CHECK(has_k2(lines(r.out), -36));
    r = run("classify --order 3 --t1 3 --t2 3");
    CHECK(r.code == 0);
    CHECK(has_k2(lines(r.out), 0));
    CHECK(run("classify --order 3 --t1 2 --t2 3").code == 2);
    CHECK(run("classify --order 3 --t1 3").code == 2);
}

TEST_CASE("k3") {
    auto r = run("k3 --order 5 --t1 5 --t2 3");
    CHECK(r.code == 0);
    bool found = false;
    for (const auto& rec : lines(r.out)) {
        CHECK(rec.at("candidate").at("k3_candidate") == true);
        if (rec.at("candidate").at("K2") == -12) {
            found = true;
            CHECK(rec.at("verdict").at("is_k3") == true);
            CHECK(rec.at("verdict").at("fixed_locus") == Json::parse("[7,0,1]"));
        }
    }
    CHECK(found);
}

TEST_CASE("verify") {
    auto r = run("verify --table 1 --rows p=3");
    CHECK(r.code == 0);
    auto recs = lines(r.out);
    REQUIRE(recs.size() == 5);
    CHECK(recs.back().at("summary").at("matched") == 4);

    r = run("verify --table 2 --rows p=3");
    CHECK(r.code == 1);
    std::vector<long> k2;
    for (const auto& rec : lines(r.out)) {
        if (rec.contains("summary")) continue;
        for (const auto& c : rec.at("cells"))
            if (c.at("cell") == "K2") {
                CHECK(c.at("status") == "match");
                k2.push_back(std::stol(c.at("derived").get<std::string>()));
            }
    }
    CHECK(k2 == std::vector<long>{-36, -31, -26, -21, -24, -16, -19, -21, -11, -14, -16, -7, -11, -3, -9, -2, -6, 0});

    CHECK(run("verify --table 1").code == 0);
    CHECK(run("verify --table 3").code == 2);
    CHECK(run("verify --table 1 --rows q=3").code == 2);
    CHECK(run("verify --table 1 --tables-dir /nonexistent").code == 2);
}

TEST_CASE("tsv and output file") {
    auto r = run("verify --table 1 --rows p=5 --format tsv");
    CHECK(r.code == 0);
    CHECK(r.out.find("×5/") != std::string::npos);
    CHECK(r.out.find("summary\t3 rows") != std::string::npos);
    std::string path = "k3pq_cli_test_out.jsonl";
    CHECK(run("k3 --order 5 --t1 5 --t2 3 --out " + path).out.empty());
    FILE* f = fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    fclose(f);
    std::remove(path.c_str());
}

TEST_CASE("output is identical across --jobs") {
    for (const char* args : {"curves --order 6 --max-branch-points 8", "classify --order 6 --t1 8 --t2 3",
                             "k3 --order 7 --t1 4 --t2 3", "verify --table 2"}) {
        auto one = run(std::string(args) + " --jobs 1");
        for (int j : {2, 5, 16}) {
            auto many = run(std::string(args) + " --jobs " + std::to_string(j));
            CHECK(many.code == one.code);
            CHECK(many.out == one.out);
        }
        CHECK(run(args).out == one.out);
    }
}
