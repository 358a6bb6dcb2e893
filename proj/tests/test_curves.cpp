#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "k3pq/curves.hpp"
#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "oracles.hpp"

using namespace k3pq;
using k3pq::oracle::superelliptic_profile;

namespace {

GroupSpec P(long p) { return GroupSpec(p, false); }
GroupSpec D(long p) { return GroupSpec(p, true); }

// n = p curve from counts a_i of points with local action zeta_p^i.
CurveAction from_a(long p, const std::vector<long>& a) {
    std::vector<BranchClass> cls;
    for (long i = 1; i < p; ++i)
        if (a[i - 1] > 0) cls.push_back({{p, i}, 0, a[i - 1]});
    return CurveAction::from_ramification_counts(P(p), cls);
}

}  // namespace

TEST_CASE("group spec validation") {
    CHECK(GroupSpec::from_order(6).doubled);
    CHECK(GroupSpec::from_order(7).prime == 7);
    CHECK_THROWS_AS(GroupSpec::from_order(9), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec::from_order(46), std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec(23, false), std::invalid_argument);
    CHECK_THROWS_AS(CurveAction(P(3), {{3, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(CurveAction(D(3), {{4, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(CurveAction::from_ramification_counts(D(3), {{{3, 1}, 0, 3}}), AdmissibilityError);
}

TEST_CASE("genus") {
    CHECK(genus(from_a(3, {0, 6})) == 4);
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) CHECK(genus(dp_curve(P(p))) == (p - 1) / 2);
    CurveAction row2 = CurveAction::from_ramification_counts(D(3), {{{6, 1}, 0, 10}, {{3, 1}, 0, 2}});
    CHECK(genus(row2) == 22);
    CHECK_THROWS_AS(genus(CurveAction(P(3), {{3, 1}})), AdmissibilityError);
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(from_a(3, {0, 6})));
    auto bad = is_admissible(from_a(3, {1, 0}));
    CHECK_FALSE(bad);
    CHECK(bad.failure.find("3 branch points") != std::string::npos);
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
        auto dp = dp_curve(P(p));
        CHECK(is_admissible(dp));
        auto xi = dp.spherical_exponents();
        CHECK(xi == std::vector<long>{2, p - 1, p - 1});
        CHECK(is_admissible(dp_curve(D(p))));
    }
    CHECK_FALSE(is_admissible(from_a(5, {1, 1, 1, 0})));
    // Only even exponents: generates the index-2 subgroup.
    auto sub = CurveAction::from_exponents(D(3), {2, 2, 2});
    CHECK_FALSE(is_admissible(sub));
    CHECK(is_admissible(sub).failure.find("generation") != std::string::npos);
    CHECK_THROWS_AS(eigenspace_profile(sub), AdmissibilityError);
}

TEST_CASE("eigenspace profiles") {
    CHECK(eigenspace_profile(from_a(3, {0, 6})).dims == std::vector<long>{3, 1});
    CHECK(eigenspace_profile(dp_curve(P(5))).dims == std::vector<long>{1, 1, 0, 0});
    CHECK(eigenspace_profile(from_a(5, {0, 0, 0, 5})).dims == std::vector<long>{3, 2, 1, 0});
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
        auto prof = eigenspace_profile(dp_curve(P(p)));
        for (long s = 1; s < p; ++s) CHECK(prof.alpha(s) == (s <= (p - 1) / 2 ? 1 : 0));
    }
    // tau_3 on D_3: one eigenvector, eigenvalue -zeta_3 = zeta_6^5.
    auto t3 = eigenspace_profile(dp_curve(D(3)));
    CHECK(t3.dims == std::vector<long>{0, 0, 0, 0, 1});
    // Twelve order-6 points, local action -zeta_3^2.
    auto big = CurveAction::from_ramification_counts(D(3), {{{6, 1}, 0, 12}});
    CHECK(eigenspace_profile(big).dims == std::vector<long>{1, 3, 5, 7, 9});
}

TEST_CASE("lefschetz") {
    auto d5 = dp_curve(P(5));
    auto prof = eigenspace_profile(d5);
    CHECK(lefschetz_check(d5, prof));
    for (long i = 0; i < 4; ++i) {
        auto bad = prof;
        bad.dims[i] += 1;
        CHECK_FALSE(lefschetz_check(d5, bad));
    }
    auto swapped = prof;
    std::reverse(swapped.dims.begin(), swapped.dims.end());
    CHECK_FALSE(lefschetz_check(d5, swapped));
    auto d3 = dp_curve(D(3));
    CHECK(lefschetz_check(d3, eigenspace_profile(d3)));
}

TEST_CASE("genus bounds") {
    CHECK(max_genus_bound(P(3), false).g_max == 4);
    CHECK(max_genus_bound(P(3), false).r_max == 6);
    CHECK(max_genus_bound(P(5), false).g_max == 16);
    CHECK(max_genus_bound(P(5), false).r_max == 10);
    CHECK(max_genus_bound(D(3), true).g_max == 25);
    CHECK(max_genus_bound(D(3), true).r_max == 12);
    CHECK_THROWS_AS(max_genus_bound(D(3), false), BoundError);
}

TEST_CASE("canonicalize") {
    auto d3 = CurveAction::from_exponents(P(3), {2, 2, 2});
    CHECK(canonical_key(d3) == std::vector<long>{1, 1, 1});
    auto c = canonicalize(d3);
    CHECK(canonicalize(c) == c);
    auto a = CurveAction::from_exponents(P(5), {4, 4, 2});
    auto b = CurveAction::from_exponents(P(5), {3, 3, 4});
    CHECK(canonicalize(a) == canonicalize(b));
    CHECK(canonical_key(a) == std::vector<long>{1, 1, 3});
}

TEST_CASE("intermediate quotients") {
    auto big = eigenspace_profile(CurveAction::from_ramification_counts(D(3), {{{6, 1}, 0, 12}}));
    CHECK(intermediate_quotient_genus(big, 1) == 0);
    CHECK(intermediate_quotient_genus(big, 2) == 5);
    CHECK(intermediate_quotient_genus(big, 6) == 25);
    CHECK(intermediate_quotient_genus(eigenspace_profile(dp_curve(D(3))), 2) == 0);
    CHECK_THROWS_AS(intermediate_quotient_genus(big, 4), std::invalid_argument);
}

TEST_CASE("enumeration p=3 full range") {
    auto recs = enumerate_curves({P(3), 3, 6, true, true});
    REQUIRE(recs.size() == 4);
    std::set<std::vector<long>> got, want;
    for (const auto& r : recs) got.insert(r.action.spherical_exponents());
    for (auto a : std::vector<std::vector<long>>{{0, 6}, {1, 4}, {2, 2}, {3, 0}})
        want.insert(canonical_key(from_a(3, a)));
    CHECK(got == want);
    long gmax = 0;
    for (const auto& r : recs) gmax = std::max(gmax, r.genus);
    CHECK(gmax == 4);
}

TEST_CASE("enumeration contains D_p") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
        auto recs = enumerate_curves({P(p), 3, 3, true, true});
        auto key = canonical_key(dp_curve(P(p)));
        bool found = std::any_of(recs.begin(), recs.end(),
                                 [&](const CurveRecord& r) { return r.action.spherical_exponents() == key; });
        CHECK(found);
        auto recs2 = enumerate_curves({D(p), 3, 3, true, true});
        auto key2 = canonical_key(dp_curve(D(p)));
        CHECK(std::any_of(recs2.begin(), recs2.end(),
                          [&](const CurveRecord& r) { return r.action.spherical_exponents() == key2; }));
    }
}

TEST_CASE("enumeration p=5 r=3 brute force") {
    std::set<std::vector<long>> classes;
    for (long a = 1; a < 5; ++a)
        for (long b = 1; b < 5; ++b)
            for (long c = 1; c < 5; ++c) {
                if ((a + b + c) % 5) continue;
                std::vector<long> best;
                for (long t = 1; t < 5; ++t) {
                    std::vector<long> v{a * t % 5, b * t % 5, c * t % 5};
                    std::sort(v.begin(), v.end());
                    if (best.empty() || v < best) best = v;
                }
                classes.insert(best);
            }
    auto recs = enumerate_curves({P(5), 3, 3, false, true});
    CHECK(recs.size() == classes.size());
}

TEST_CASE("dim1 generator agrees with the unrestricted enumeration") {
    struct Case {
        GroupSpec g;
        long lo, hi;
        bool prim;
    };
    for (auto c : {Case{P(3), 3, 6, true}, Case{P(5), 3, 7, true}, Case{P(7), 3, 6, true}, Case{D(3), 3, 7, true},
                   Case{D(3), 3, 7, false}, Case{D(5), 3, 5, false}, Case{D(5), 3, 5, true}}) {
        auto fast = enumerate_curves({c.g, c.lo, c.hi, true, c.prim});
        auto all = enumerate_curves({c.g, c.lo, c.hi, false, c.prim});
        std::vector<std::vector<long>> a, b;
        for (const auto& r : fast) a.push_back(r.action.spherical_exponents());
        for (const auto& r : all)
            if (has_dim1_eigenspace(r.profile, c.g.doubled && c.prim)) b.push_back(r.action.spherical_exponents());
        CHECK(a == b);
    }
}

TEST_CASE("enumeration bounds") {
    CHECK_THROWS_AS(enumerate_curves({P(3), 3, 7, true, true}), BoundError);
    CHECK_THROWS_AS(enumerate_curves({D(3), 3, 99, true, true}), BoundError);
    CHECK_THROWS_AS(enumerate_curves({D(3), 3, 23, true, false}), BoundError);
    CHECK_THROWS_AS(enumerate_curves({P(3), 2, 4, true, true}), BoundError);
    CHECK_THROWS_AS(enumerate_curves({P(5), 5, 4, true, true}), BoundError);
}

TEST_CASE("maximal genus for n = 6 primitive") {
    auto recs = enumerate_curves({D(3), 3, 12, true, true});
    long gmax = 0;
    for (const auto& r : recs) gmax = std::max(gmax, r.genus);
    CHECK(gmax == 25);
}

TEST_CASE("properties over every enumerated curve with p <= 7") {
    std::vector<EnumerationRequest> reqs = {
        {P(3), 3, 6, false, true}, {P(5), 3, 10, true, true}, {P(7), 3, 14, true, true},
        {P(5), 3, 6, false, true}, {P(7), 3, 5, false, true}, {D(3), 3, 12, true, true},
        {D(3), 3, 8, false, true}, {D(5), 3, 10, true, true}, {D(7), 3, 6, true, true},
        {D(3), 3, 9, true, false}};
    long checked = 0;
    for (const auto& req : reqs) {
        auto recs = enumerate_curves(req);
        long bound = (req.group.doubled && !req.primitive_only) ? -1 : max_genus_bound(req.group, req.primitive_only).g_max;
        for (const auto& r : recs) {
            ++checked;
            CHECK(lefschetz_check(r.action, r.profile));
            CHECK(r.profile.genus() == genus(r.action));
            CHECK(canonicalize(r.action) == r.action);
            if (req.require_dim1 && bound >= 0) CHECK(r.genus <= bound);
            for (long t : units(r.action.order())) {
                CHECK(canonicalize(r.action.twisted(t)) == r.action);
                CHECK(eigenspace_profile(r.action.twisted(t)) == r.profile.twisted(t));
            }
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("monodromy condition agrees with integrality of the top eigenspace formula") {
    for (long p : {3L, 5L, 7L}) {
        // All count vectors with at most 4 points in total.
        std::vector<long> a(p - 1, 0);
        long agree = 0;
        std::function<void(long, long)> rec = [&](long i, long left) {
            if (i == p - 1) {
                long eq2 = 0, eq7 = 0;
                for (long l = 1; l < p; ++l) {
                    eq2 += mod_inverse(l, p) * a[l - 1];
                    eq7 += a[l - 1] * mod(mod_inverse(l, p) * (p - 1), p);
                }
                CHECK((eq2 % p == 0) == (eq7 % p == 0));
                ++agree;
                return;
            }
            for (long c = 0; c <= left; ++c) {
                a[i] = c;
                rec(i + 1, left - c);
            }
            a[i] = 0;
        };
        rec(0, 4);
        CHECK(agree > 0);
    }
}

TEST_CASE("profile matches the prime-order closed form") {
    for (long p : {3L, 5L, 7L}) {
        for (const auto& r : enumerate_curves({P(p), 3, 2 * p, true, true})) {
            std::vector<long> a(p, 0);
            for (const auto& b : r.action.base_points()) a[b.theta] += 1;
            for (long rr = 1; rr < p; ++rr) {
                long total = 0;
                for (long l = 1; l < p; ++l) total += a[l] * mod(mod_inverse(l, p) * (p - rr), p);
                CHECK(total % p == 0);
                CHECK(r.profile.alpha(p - rr) == -1 + total / p);
            }
        }
    }
}

TEST_CASE("superelliptic differential basis oracle") {
    for (long n : {3L, 5L, 6L, 10L}) {
        auto g = GroupSpec::from_order(n);
        for (const auto& r : enumerate_curves({g, 3, 3, false, true})) {
            CHECK(superelliptic_profile(r.action) == r.profile.dims);
            for (long t : units(n)) {
                auto tw = r.action.twisted(t);
                CHECK(superelliptic_profile(tw) == eigenspace_profile(tw).dims);
            }
        }
    }
}
