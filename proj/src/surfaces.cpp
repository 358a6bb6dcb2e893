#include "k3pq/surfaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "k3pq/parallel.hpp"
#include "k3pq/singularity.hpp"

namespace k3pq {

bool hodge_condition(const EigenspaceProfile& a, const EigenspaceProfile& b) {
    long n = a.order, pg = 0;
    for (long s = 1; s < n; ++s) pg += a.alpha(s) * b.alpha(n - s);
    return pg == 1;
}

namespace {

long zero_count(const EigenspaceProfile& a) { return std::count(a.dims.begin(), a.dims.end(), 0L); }

}  // namespace

std::vector<SurfacePair> pair_admissible(const CurveRecord& a, const CurveRecord& b) {
    if (!(a.action.group() == b.action.group())) throw std::invalid_argument("pair_admissible: group mismatch");
    std::vector<SurfacePair> out;
    long n = a.action.order();
    if (zero_count(a.profile) + zero_count(b.profile) < n - 2) return out;
    for (long t : units(n))
        if (hodge_condition(a.profile, b.profile.twisted(t))) out.push_back(SurfacePair{a, b, t});
    return out;
}

SingularityType local_singularity(long h, long theta1, long k, long theta2) {
    long d = std::gcd(h, k);
    if (d < 2) throw std::invalid_argument("local_singularity: stabilizers meet trivially");
    // The common stabilizer generator is the (h/d)-th resp. (k/d)-th power of
    // the factor generators, so it rotates by zeta_d^theta on each side.
    long i = mod(theta1, d), j = mod(theta2, d);
    return SingularityType{1, d, mod(i * mod_inverse(j, d), d)};
}

std::vector<SingularityRecord> singularity_multiset(const SurfacePair& pair) {
    long n = pair.order();
    std::vector<SingularityRecord> out;
    for (const auto& c1 : pair.first.action.classes()) {
        for (const auto& c2 : pair.glued_second().classes()) {
            long d = std::gcd(c1.point.m, c2.point.m);
            if (d < 2) continue;
            auto t = local_singularity(c1.point.m, c1.point.theta, c2.point.m, c2.point.theta);
            long num = c1.ramification_count * c2.ramification_count * d;
            if (num % n != 0) throw InvariantViolation("fractional singular point count");
            out.push_back(SingularityRecord{d, t.q, num / n, c1.point, c2.point});
        }
    }
    return out;
}

std::vector<SingularityType> singularity_types(const std::vector<SingularityRecord>& sings) {
    std::map<std::pair<long, long>, long> agg;
    for (const auto& s : sings) agg[{s.d, s.q}] += s.count;
    std::vector<SingularityType> out;
    for (const auto& [k, c] : agg) out.push_back(SingularityType{c, k.first, k.second});
    std::sort(out.begin(), out.end(), [](const SingularityType& a, const SingularityType& b) {
        if (a.d != b.d) return a.d > b.d;
        return a.q < b.q;
    });
    return out;
}

SurfaceInvariants chern_invariants(const SurfacePair& pair, const std::vector<SingularityRecord>& sings) {
    SurfaceInvariants inv;
    long n = pair.order();
    inv.g1 = pair.first.genus;
    inv.g2 = pair.second.genus;
    Rational base(8 * (inv.g1 - 1) * (inv.g2 - 1), n);
    inv.K2 = base;
    inv.euler = base / Rational(2);
    for (const auto& s : sings) {
        auto si = singularity_invariants(s.d, s.q);
        inv.K2 += Rational(s.count) * si.h;
        inv.euler += Rational(s.count) * si.e;
    }
    inv.chi = (inv.K2 + inv.euler) / Rational(12);
    if (!inv.K2.is_integer() || !inv.euler.is_integer() || !inv.chi.is_integer())
        throw InvariantViolation("non-integral invariants K2 = " + inv.K2.str() + ", e = " + inv.euler.str());
    return inv;
}

HodgeNumbers hodge_numbers(const SurfacePair& pair, const std::vector<SingularityRecord>& sings) {
    const auto& a = pair.first.profile;
    auto b = pair.glued_second_profile();
    long n = pair.order();
    HodgeNumbers h;
    long same = 0;
    for (long s = 1; s < n; ++s) {
        h.pg += a.alpha(s) * b.alpha(n - s);
        same += a.alpha(s) * b.alpha(s);
    }
    h.q = a.alpha(n) + b.alpha(n);
    h.h11 = 2 * (1 + same);
    for (const auto& s : sings) h.h11 += s.count * singularity_invariants(s.d, s.q).k;
    return h;
}

long moduli_dimension(const SurfacePair& pair) {
    long r1 = pair.first.action.num_base_points(), r2 = pair.second.action.num_base_points();
    if (r1 < 3 || r2 < 3) throw std::invalid_argument("moduli_dimension: fewer than 3 branch points");
    return r1 + r2 - 6;
}

SurfaceInvariants surface_invariants(const SurfacePair& pair, const std::vector<SingularityRecord>& sings) {
    auto inv = chern_invariants(pair, sings);
    auto h = hodge_numbers(pair, sings);
    inv.pg = h.pg;
    inv.q = h.q;
    inv.h11 = h.h11;
    inv.moduli_dim = moduli_dimension(pair);
    if (inv.euler != Rational(2 - 4 * h.q + 2 * h.pg + h.h11))
        throw InvariantViolation("Betti numbers disagree with the Euler number");
    return inv;
}

PairKey pair_key(const SurfacePair& pair) {
    long n = pair.order();
    auto xa = pair.first.action.spherical_exponents();
    auto xb = pair.glued_second().spherical_exponents();
    PairKey best;
    bool have = false;
    for (long u : units(n)) {
        std::vector<long> a, b;
        for (long x : xa) a.push_back(mod(u * x, n));
        for (long x : xb) b.push_back(mod(u * x, n));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (auto cand : {PairKey{a, b}, PairKey{b, a}}) {
            if (!have || cand < best) best = cand;
            have = true;
        }
    }
    return best;
}

Candidate make_candidate(const SurfacePair& pair) {
    Candidate c{pair, singularity_multiset(pair), {}, false, pair_key(pair)};
    c.invariants = surface_invariants(pair, c.singularities);
    c.k3_candidate = c.invariants.chi == Rational(2);
    return c;
}

namespace {

void validate(const ScanRequest& req) {
    if (req.t1 < 3 || req.t2 < 3) throw BoundError("scan: both curves need at least 3 branch points");
    if (req.group.doubled && !req.primitive_only) {
        if (req.t1 + req.t2 > kNonPrimitiveTotalCap)
            throw BoundError("scan: t1 + t2 may not exceed " + std::to_string(kNonPrimitiveTotalCap));
        return;
    }
    long cap = max_genus_bound(req.group, req.primitive_only).r_max;
    if (req.t1 > cap || req.t2 > cap)
        throw BoundError("scan: branch point counts are bounded by " + std::to_string(cap));
}

bool candidate_order(const Candidate& a, const Candidate& b) {
    auto ka = std::make_tuple(std::cref(a.key), a.pair.first.action.spherical_exponents(),
                              a.pair.second.action.spherical_exponents(), a.pair.twist);
    auto kb = std::make_tuple(std::cref(b.key), b.pair.first.action.spherical_exponents(),
                              b.pair.second.action.spherical_exponents(), b.pair.twist);
    return ka < kb;
}

std::vector<Candidate> finish(std::vector<Candidate> all) {
    std::sort(all.begin(), all.end(), candidate_order);
    std::vector<Candidate> out;
    for (auto& c : all)
        if (out.empty() || out.back().key != c.key) out.push_back(std::move(c));
    return out;
}

std::vector<Candidate> pair_lists(const std::vector<CurveRecord>& l1, const std::vector<CurveRecord>& l2,
                                  bool parallel) {
    const long total = static_cast<long>(l1.size() * l2.size());
    std::vector<std::vector<Candidate>> found(total);
    auto body = [&](long idx) {
        const auto& a = l1[idx / l2.size()];
        const auto& b = l2[idx % l2.size()];
        for (const auto& sp : pair_admissible(a, b)) found[idx].push_back(make_candidate(sp));
    };
    if (parallel)
        parallel_for(total, body);
    else
        for (long i = 0; i < total; ++i) body(i);
    std::vector<Candidate> all;
    for (auto& v : found)
        for (auto& c : v) all.push_back(std::move(c));
    return finish(std::move(all));
}

std::vector<Candidate> run_scan(const ScanRequest& req, bool parallel) {
    validate(req);
    auto list = [&](long r) {
        EnumerationRequest e{req.group, r, r, true, req.primitive_only};
        return parallel ? enumerate_curves(e) : enumerate_curves_serial(e);
    };
    return pair_lists(list(req.t1), list(req.t2), parallel);
}

std::vector<Candidate> run_full_scan(const GroupSpec& group, bool parallel) {
    if (group.doubled) throw BoundError("full_scan is defined for prime order only");
    auto bound = max_genus_bound(group, true);
    EnumerationRequest e{group, 3, bound.r_max, true, true};
    auto curves = parallel ? enumerate_curves(e) : enumerate_curves_serial(e);
    return pair_lists(curves, curves, parallel);
}

}  // namespace

std::vector<Candidate> scan(const ScanRequest& req) { return run_scan(req, true); }
std::vector<Candidate> scan_serial(const ScanRequest& req) { return run_scan(req, false); }
std::vector<Candidate> full_scan(const GroupSpec& group) { return run_full_scan(group, true); }
std::vector<Candidate> full_scan_serial(const GroupSpec& group) { return run_full_scan(group, false); }

}  // namespace k3pq
