#include <algorithm>

#include "doctest.h"
#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "k3pq/surfaces.hpp"
#include "k3pq/tables.hpp"

using namespace k3pq;

namespace {

GroupSpec P(long p) { return GroupSpec(p, false); }
GroupSpec D(long p) { return GroupSpec(p, true); }

CurveRecord table_curve(GroupSpec g, std::vector<long> a) { return make_record(curve_from_table_counts(g, a)); }
CurveRecord dp(GroupSpec g) { return make_record(dp_curve(g)); }

std::vector<SingularityType> types(const SurfacePair& sp) { return singularity_types(singularity_multiset(sp)); }

bool has_key(const std::vector<Candidate>& cs, const PairKey& k) {
    return std::any_of(cs.begin(), cs.end(), [&](const Candidate& c) { return c.key == k; });
}

SurfacePair swapped(const SurfacePair& sp) {
    long t = mod_inverse(sp.twist, sp.order());
    return SurfacePair{sp.second, sp.first, t};
}

}  // namespace

TEST_CASE("pairing condition") {
    auto d3 = dp(P(3));
    auto pairs = pair_admissible(d3, d3);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].twist == 2);
    CHECK_FALSE(pair_admissible(table_curve(P(3), {0, 6}), d3).empty());
    CHECK_THROWS_AS(pair_admissible(d3, dp(P(5))), std::invalid_argument);
}

TEST_CASE("example with two quotients of D3 x D3") {
    auto d3 = dp(P(3));
    SurfacePair x1{d3, d3, 1}, x2{d3, d3, 2};
    CHECK(types(x1) == std::vector<SingularityType>{{9, 3, 1}});
    CHECK(types(x2) == std::vector<SingularityType>{{9, 3, 2}});
    auto h1 = hodge_numbers(x1, singularity_multiset(x1));
    auto h2 = hodge_numbers(x2, singularity_multiset(x2));
    CHECK(h1.h11 == 13);
    CHECK(h2.h11 == 20);
    CHECK(h1.pg == 0);
    CHECK(h2.pg == 1);
    CHECK(h1.q == 0);
    auto i1 = surface_invariants(x1, singularity_multiset(x1));
    auto i2 = surface_invariants(x2, singularity_multiset(x2));
    CHECK(i1.K2 == Rational(-3));
    CHECK(i1.chi == Rational(1));
    CHECK(i2.K2 == Rational(0));
    CHECK(i2.chi == Rational(2));
    CHECK(i2.moduli_dim == 0);
}

TEST_CASE("order five example") {
    SurfacePair sp{table_curve(P(5), {0, 0, 0, 5}), dp(P(5)), 1};
    CHECK(types(sp) == std::vector<SingularityType>{{10, 5, 1}, {5, 5, 3}});
    auto inv = surface_invariants(sp, singularity_multiset(sp));
    CHECK(inv.K2 == Rational(-12));
    CHECK(inv.euler == Rational(36));
    CHECK(inv.chi == Rational(2));
    CHECK(inv.h11 == 32);
    CHECK(inv.pg == 1);
    CHECK(inv.moduli_dim == 2);
}

TEST_CASE("maximal order six row") {
    SurfacePair sp{table_curve(D(3), {0, 12, 0, 0, 0}), dp(D(3)), 1};
    CHECK(types(sp) == std::vector<SingularityType>{{12, 6, 1}, {12, 3, 1}, {12, 2, 1}});
    auto inv = surface_invariants(sp, singularity_multiset(sp));
    CHECK(inv.K2 == Rational(-36));
    CHECK(inv.euler == Rational(60));
    CHECK(inv.chi == Rational(2));
    CHECK(inv.pg == 1);
    CHECK(moduli_dimension(sp) == 9);
}

TEST_CASE("first and fourth rows of the order three table") {
    SurfacePair r1{table_curve(P(3), {0, 6}), dp(P(3)), 1};
    CHECK(moduli_dimension(r1) == 3);
    CHECK(types(r1) == std::vector<SingularityType>{{18, 3, 1}});
    auto i1 = surface_invariants(r1, singularity_multiset(r1));
    CHECK(i1.K2 == Rational(-6));
    SurfacePair r4{table_curve(P(3), {3, 0}), dp(P(3)), 1};
    auto i4 = surface_invariants(r4, singularity_multiset(r4));
    CHECK(i4.K2 == Rational(0));
    CHECK(i4.chi == Rational(2));
    CHECK(i4.g1 == 1);
    CHECK(i4.g2 == 1);
    CHECK(moduli_dimension(r4) == 0);
}

TEST_CASE("floor of the h11 formula") {
    auto d3 = dp(P(3));
    SurfacePair sp{d3, d3, 2};
    CHECK(hodge_numbers(sp, {}).h11 == 2);
}

TEST_CASE("scans contain the table examples") {
    auto s6 = scan({D(3), 12, 3, true});
    SurfacePair r1{table_curve(D(3), {0, 12, 0, 0, 0}), dp(D(3)), 1};
    CHECK(has_key(s6, pair_key(r1)));
    auto s5 = scan({P(5), 5, 3, true});
    SurfacePair ex{table_curve(P(5), {0, 0, 0, 5}), dp(P(5)), 1};
    CHECK(has_key(s5, pair_key(ex)));
    auto s3 = scan({P(3), 3, 3, true});
    SurfacePair r4{table_curve(P(3), {3, 0}), dp(P(3)), 1};
    CHECK(has_key(s3, pair_key(r4)));
    for (const auto& c : s3) {
        if (c.key != pair_key(r4)) continue;
        CHECK(c.invariants.K2 == Rational(0));
    }
}

TEST_CASE("full scan of order three") {
    auto all = full_scan(P(3));
    std::vector<PairKey> k3;
    for (const auto& c : all)
        if (c.k3_candidate) k3.push_back(c.key);
    std::vector<PairKey> want;
    for (auto a : std::vector<std::vector<long>>{{0, 6}, {1, 4}, {2, 2}, {3, 0}})
        want.push_back(pair_key(SurfacePair{table_curve(P(3), a), dp(P(3)), 1}));
    std::sort(want.begin(), want.end());
    CHECK(k3 == want);
}

TEST_CASE("scan bounds") {
    CHECK_THROWS_AS(scan({P(3), 2, 3, true}), BoundError);
    CHECK_THROWS_AS(scan({P(3), 7, 3, true}), BoundError);
    CHECK_THROWS_AS(scan({D(3), 13, 3, true}), BoundError);
    CHECK_THROWS_AS(scan({D(3), 20, 6, false}), BoundError);
    CHECK_THROWS_AS(full_scan(D(3)), BoundError);
}

TEST_CASE("properties over scanned candidates") {
    std::vector<ScanRequest> reqs;
    for (long p : {3L, 5L, 7L})
        for (long t1 = 3; t1 <= 6; ++t1) reqs.push_back({P(p), t1, 3, true});
    for (long t1 = 3; t1 <= 12; ++t1) reqs.push_back({D(3), t1, 3, true});
    for (long t1 = 3; t1 <= 6; ++t1) reqs.push_back({D(5), t1, 3, true});
    reqs.push_back({D(3), 6, 4, false});
    long seen = 0;
    for (const auto& req : reqs) {
        for (const auto& c : scan(req)) {
            ++seen;
            const auto& inv = c.invariants;
            CHECK(Rational(12) * inv.chi == inv.K2 + inv.euler);
            CHECK(inv.euler == Rational(2 - 4 * inv.q + 2 * inv.pg + inv.h11));
            CHECK(inv.pg == 1);
            CHECK(inv.q == 0);
            if (!req.group.doubled) CHECK((inv.chi == Rational(2)) == (inv.K2 + inv.euler == Rational(24)));
            // Swapping the factors inverts each oriented type.
            auto sw = swapped(c.pair);
            auto sc = make_candidate(sw);
            CHECK(sc.key == c.key);
            CHECK(sc.invariants.K2 == inv.K2);
            CHECK(sc.invariants.euler == inv.euler);
            CHECK(sc.invariants.chi == inv.chi);
            CHECK(sc.invariants.h11 == inv.h11);
            std::vector<SingularityType> inverted;
            for (const auto& s : c.singularities)
                inverted.push_back({s.count, s.d, mod_inverse(s.q, s.d)});
            std::vector<SingularityRecord> recs;
            for (const auto& s : inverted) recs.push_back({s.d, s.q, s.count, {}, {}});
            CHECK(singularity_types(sc.singularities) == singularity_types(recs));
            // Simultaneous relabelling of the generator.
            for (long u : units(c.pair.order())) {
                SurfacePair tw{make_record(c.pair.first.action.twisted(u)), make_record(c.pair.second.action.twisted(u)),
                               c.pair.twist};
                auto tc = make_candidate(tw);
                CHECK(tc.key == c.key);
                CHECK(tc.invariants.h11 == inv.h11);
                CHECK(tc.invariants.pg == inv.pg);
                CHECK(singularity_types(tc.singularities) == singularity_types(c.singularities));
            }
        }
    }
    CHECK(seen > 50);
}

TEST_CASE("zero-count pre-filter loses nothing") {
    for (long n : {3L, 5L, 6L, 7L, 10L}) {
        auto g = GroupSpec::from_order(n);
        auto curves = enumerate_curves({g, 3, 5, true, true});
        for (const auto& a : curves)
            for (const auto& b : curves) {
                long direct = 0;
                for (long t : units(n)) direct += hodge_condition(a.profile, b.profile.twisted(t));
                CHECK(static_cast<long>(pair_admissible(a, b).size()) == direct);
            }
    }
}
