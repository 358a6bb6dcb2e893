#include "k3pq/curves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <gmpxx.h>

#include "k3pq/cyclotomic.hpp"
#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "k3pq/parallel.hpp"

namespace k3pq {

GroupSpec::GroupSpec(long p, bool twice) : prime(p), doubled(twice) {
    if (p < 3 || p > 19 || !is_prime(p))
        throw std::invalid_argument("GroupSpec: p must be an odd prime <= 19, got " + std::to_string(p));
}

GroupSpec GroupSpec::from_order(long n) {
    if (n >= 3 && n <= 19 && is_prime(n)) return GroupSpec(n, false);
    if (n % 2 == 0 && n / 2 >= 3 && n / 2 <= 19 && is_prime(n / 2)) return GroupSpec(n / 2, true);
    throw std::invalid_argument("group order must be p or 2p for an odd prime p <= 19, got " + std::to_string(n));
}

namespace {

void check_branch_point(long n, const BranchPoint& b) {
    if (b.m < 2 || n % b.m != 0)
        throw std::invalid_argument("branch point: stabilizer order " + std::to_string(b.m) + " does not divide " +
                                    std::to_string(n));
    if (b.theta < 1 || b.theta >= b.m || std::gcd(b.theta, b.m) != 1)
        throw std::invalid_argument("branch point: rotation " + std::to_string(b.theta) + " is not a unit mod " +
                                    std::to_string(b.m));
}

}  // namespace

long spherical_exponent(long n, const BranchPoint& b) {
    check_branch_point(n, b);
    return mod((n / b.m) * mod_inverse(b.theta, b.m), n);
}

BranchPoint branch_point_from_exponent(long n, long xi) {
    xi = mod(xi, n);
    if (xi == 0) throw std::invalid_argument("spherical exponent 0 is not a branch point");
    long m = n / std::gcd(xi, n);
    return BranchPoint{m, mod_inverse(xi / (n / m), m)};
}

CurveAction::CurveAction(GroupSpec group, std::vector<BranchPoint> base) : group_(group), base_(std::move(base)) {
    for (const auto& b : base_) check_branch_point(group_.order(), b);
    std::sort(base_.begin(), base_.end());
}

CurveAction CurveAction::from_ramification_counts(GroupSpec group, const std::vector<BranchClass>& classes) {
    long n = group.order();
    std::vector<BranchPoint> base;
    for (const auto& c : classes) {
        check_branch_point(n, c.point);
        long orbit = n / c.point.m;
        if (c.ramification_count < 0 || c.ramification_count % orbit != 0)
            throw AdmissibilityError("ramification count " + std::to_string(c.ramification_count) +
                                     " for stabilizer order " + std::to_string(c.point.m) +
                                     " is not a multiple of the orbit size " + std::to_string(orbit));
        for (long i = 0; i < c.ramification_count / orbit; ++i) base.push_back(c.point);
    }
    return CurveAction(group, std::move(base));
}

CurveAction CurveAction::from_exponents(GroupSpec group, const std::vector<long>& xi) {
    std::vector<BranchPoint> base;
    for (long x : xi) base.push_back(branch_point_from_exponent(group.order(), x));
    return CurveAction(group, std::move(base));
}

std::vector<BranchClass> CurveAction::classes() const {
    std::vector<BranchClass> out;
    for (const auto& b : base_) {
        if (out.empty() || !(out.back().point == b)) out.push_back(BranchClass{b, 0, 0});
        out.back().base_count += 1;
        out.back().ramification_count += order() / b.m;
    }
    return out;
}

std::vector<long> CurveAction::spherical_exponents() const {
    std::vector<long> xi;
    for (const auto& b : base_) xi.push_back(spherical_exponent(order(), b));
    std::sort(xi.begin(), xi.end());
    return xi;
}

CurveAction CurveAction::twisted(long t) const {
    long n = order();
    if (std::gcd(mod(t, n), n) != 1) throw std::invalid_argument("twist must be a unit mod n");
    std::vector<BranchPoint> base;
    for (const auto& b : base_) base.push_back(BranchPoint{b.m, mod(b.theta * t, b.m)});
    return CurveAction(group_, std::move(base));
}

Admissibility is_admissible(const CurveAction& action) {
    long n = action.order();
    if (action.num_base_points() < 3) return {false, "fewer than 3 branch points"};
    long sum = 0, g = n;
    for (long x : action.spherical_exponents()) {
        sum += x;
        g = std::gcd(g, x);
    }
    if (sum % n != 0) return {false, "monodromy: exponent sum " + std::to_string(sum) + " not divisible by " +
                                         std::to_string(n)};
    if (g != 1) return {false, "generation: exponents generate a proper subgroup"};
    return {true, ""};
}

long genus(const CurveAction& action) {
    long n = action.order();
    long twice = -2 * n + 2;  // 2g
    for (const auto& b : action.base_points()) twice += n - n / b.m;
    if (twice < 0 || twice % 2 != 0)
        throw AdmissibilityError("Riemann-Hurwitz gives no integral genus (2g = " + std::to_string(twice) + ")");
    return twice / 2;
}

long EigenspaceProfile::alpha(long s) const {
    s = mod(s, order);
    if (s == 0) return 0;
    return dims.at(s - 1);
}

long EigenspaceProfile::genus() const { return std::accumulate(dims.begin(), dims.end(), 0L); }

EigenspaceProfile EigenspaceProfile::twisted(long t) const {
    EigenspaceProfile out{order, std::vector<long>(dims.size(), 0)};
    for (long s = 1; s < order; ++s) out.dims[mod(s * t, order) - 1] = dims[s - 1];
    return out;
}

EigenspaceProfile eigenspace_profile(const CurveAction& action) {
    if (auto a = is_admissible(action); !a) throw AdmissibilityError("eigenspace_profile: " + a.failure);
    long n = action.order();
    auto xi = action.spherical_exponents();
    EigenspaceProfile prof{n, {}};
    for (long s = 1; s < n; ++s) {
        long total = 0;
        for (long x : xi) total += mod(s * x, n);
        if (total % n != 0) throw InvariantViolation("eigenspace dimension is not integral");
        long a = total / n - 1;
        if (a < 0) throw InvariantViolation("negative eigenspace dimension");
        prof.dims.push_back(a);
    }
    if (prof.genus() != genus(action)) throw InvariantViolation("eigenspace dimensions do not sum to the genus");
    return prof;
}

bool lefschetz_holds(const CurveAction& action, const EigenspaceProfile& profile, long k) {
    long n = action.order();
    long p = action.group().prime;
    if (profile.order != n || static_cast<long>(profile.dims.size()) != n - 1) return false;
    Cyclotomic lhs(p, Rational(1));
    for (long s = 1; s < n; ++s)
        lhs -= Cyclotomic::root_of_unity(p, n, k * s) * Rational(profile.alpha(s));
    Cyclotomic rhs(p);
    for (const auto& b : action.base_points()) {
        long orbit = n / b.m;
        if (k % orbit != 0) continue;
        long t = k / orbit;
        Cyclotomic local = Cyclotomic::root_of_unity(p, n, orbit * b.theta * t);
        Cyclotomic denom = Cyclotomic(p, Rational(1)) - local;
        rhs += denom.inverse() * Rational(orbit);
    }
    return lhs == rhs;
}

bool lefschetz_check(const CurveAction& action, const EigenspaceProfile& profile) {
    for (long k = 1; k < action.order(); ++k)
        if (!lefschetz_holds(action, profile, k)) return false;
    return true;
}

GenusBound max_genus_bound(const GroupSpec& group, bool primitive_only) {
    long p = group.prime;
    if (!group.doubled) return {(p - 1) * (p - 1), 2 * p};
    if (!primitive_only)
        throw BoundError("no genus bound for order 2p without the primitive eigenvalue constraint; "
                         "supply an explicit branch point cap (total at most 25)");
    return {(2 * p - 1) * (2 * p - 1), 4 * p};
}

std::vector<long> canonical_key(const CurveAction& action) {
    long n = action.order();
    auto xi = action.spherical_exponents();
    std::vector<long> best;
    for (long t : units(n)) {
        std::vector<long> cand;
        for (long x : xi) cand.push_back(mod(t * x, n));
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
}

CurveAction canonicalize(const CurveAction& action) {
    return CurveAction::from_exponents(action.group(), canonical_key(action));
}

long intermediate_quotient_genus(const EigenspaceProfile& profile, long m) {
    long n = profile.order;
    if (m < 1 || n % m != 0)
        throw std::invalid_argument("intermediate_quotient_genus: " + std::to_string(m) + " does not divide " +
                                    std::to_string(n));
    long g = 0;
    for (long s = 1; s < n; ++s)
        if ((s * m) % n == 0) g += profile.alpha(s);
    return g;
}

CurveRecord make_record(const CurveAction& action) {
    auto prof = eigenspace_profile(action);
    return CurveRecord{action, prof, prof.genus()};
}

bool has_dim1_eigenspace(const EigenspaceProfile& profile, bool primitive_only) {
    for (long s = 1; s < profile.order; ++s)
        if (profile.alpha(s) == 1 && (!primitive_only || std::gcd(s, profile.order) == 1)) return true;
    return false;
}

CurveAction dp_curve(const GroupSpec& group) {
    long p = group.prime;
    if (!group.doubled) return CurveAction(group, {{p, p - 1}, {p, p - 1}, {p, (p + 1) / 2}});
    return CurveAction(group, {{2 * p, 1}, {p, p - 2}, {2, 1}});
}

namespace {

using Multiset = std::vector<long>;

const mpz_class kMaxCandidates = 20000000;

// C(kinds + size - 1, size)
mpz_class multichoose(long kinds, long size) {
    mpz_class c;
    if (kinds <= 0) return size == 0 ? 1 : 0;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(kinds - 1 + size), static_cast<unsigned long>(size));
    return c;
}

void guard(const mpz_class& estimate) {
    if (estimate > kMaxCandidates)
        throw BoundError("enumeration search space too large (" + estimate.get_str() +
                         " candidates); narrow the branch point range");
}

// All nonincreasing sequences of `parts` values from `values` (sorted) summing to target.
void partitions(long target, long parts, long max_part, long min_part, Multiset& cur,
                const std::function<void(const Multiset&)>& emit) {
    if (parts == 0) {
        if (target == 0) emit(cur);
        return;
    }
    if (target < parts * min_part || target > parts * max_part) return;
    for (long v = std::min(max_part, target); v >= min_part; --v) {
        cur.push_back(v);
        partitions(target - v, parts - 1, v, min_part, cur, emit);
        cur.pop_back();
    }
}

// Nondecreasing multisets of size k drawn from values.
void multisets(const std::vector<long>& values, size_t start, long k, Multiset& cur,
               const std::function<void(const Multiset&)>& emit) {
    if (k == 0) {
        emit(cur);
        return;
    }
    for (size_t i = start; i < values.size(); ++i) {
        cur.push_back(values[i]);
        multisets(values, i, k - 1, cur, emit);
        cur.pop_back();
    }
}

// Exponent multisets that cover every curve class meeting the request.
std::vector<Multiset> candidates(const EnumerationRequest& req) {
    long n = req.group.order();
    long p = req.group.prime;
    std::vector<Multiset> out;
    auto push = [&](const Multiset& m) {
        Multiset s = m;
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    };
    if (!req.require_dim1) {
        mpz_class est = 0;
        for (long r = req.min_r; r <= req.max_r; ++r) est += multichoose(n - 1, r);
        guard(est);
        std::vector<long> values;
        for (long v = 1; v < n; ++v) values.push_back(v);
        Multiset cur;
        for (long r = req.min_r; r <= req.max_r; ++r) multisets(values, 0, r, cur, push);
        return out;
    }
    // Up to twist a dimension-one eigenspace for a unit s sits at s = 1, which
    // forces the exponents to sum to exactly 2n.
    Multiset cur;
    for (long r = req.min_r; r <= req.max_r; ++r) partitions(2 * n, r, n - 1, 1, cur, push);
    if (!req.group.doubled || req.primitive_only) return out;

    // Eigenvalue -1: exactly four odd exponents.
    std::vector<long> odd, even;
    for (long v = 1; v < n; ++v) (v % 2 ? odd : even).push_back(v);
    mpz_class est = 0;
    for (long r = std::max(req.min_r, 4L); r <= req.max_r; ++r)
        est += multichoose(static_cast<long>(odd.size()), 4) * multichoose(static_cast<long>(even.size()), r - 4);
    guard(est);
    for (long r = std::max(req.min_r, 4L); r <= req.max_r; ++r) {
        Multiset a;
        multisets(odd, 0, 4, a, [&](const Multiset& o) {
            Multiset b;
            multisets(even, 0, r - 4, b, [&](const Multiset& e) {
                Multiset all = o;
                all.insert(all.end(), e.begin(), e.end());
                push(all);
            });
        });
    }

    // Eigenvalue of order p: up to twist s = 2, so the residues mod p of the
    // exponents prime to p sum to 2p; order-2 points are free.
    for (long j = 1; j <= std::min(2 * p, req.max_r); ++j) {
        Multiset res;
        partitions(2 * p, j, p - 1, 1, res, [&](const Multiset& parts) {
            std::map<long, long> mult;
            for (long v : parts) mult[v] += 1;
            std::vector<std::pair<long, long>> groups(mult.begin(), mult.end());
            Multiset lifted;
            std::function<void(size_t)> lift = [&](size_t gi) {
                if (gi == groups.size()) {
                    for (long k = std::max(0L, req.min_r - j); j + k <= req.max_r; ++k) {
                        Multiset all = lifted;
                        all.insert(all.end(), k, p);
                        push(all);
                    }
                    return;
                }
                auto [v, c] = groups[gi];
                for (long up = 0; up <= c; ++up) {
                    size_t mark = lifted.size();
                    lifted.insert(lifted.end(), c - up, v);
                    lifted.insert(lifted.end(), up, v + p);
                    lift(gi + 1);
                    lifted.resize(mark);
                }
            };
            lift(0);
        });
    }
    return out;
}

void validate(const EnumerationRequest& req) {
    if (req.min_r < 3) throw BoundError("at least 3 branch points are required");
    if (req.max_r < req.min_r) throw BoundError("empty branch point range");
    long cap = req.group.doubled && !req.primitive_only ? kNonPrimitiveTotalCap - 3
                                                        : max_genus_bound(req.group, req.primitive_only).r_max;
    if (req.max_r > cap)
        throw BoundError("branch point count " + std::to_string(req.max_r) + " exceeds the bound " +
                         std::to_string(cap) + " for order " + std::to_string(req.group.order()));
}

// Canonical key of an admissible candidate, or empty.
Multiset classify_candidate(const GroupSpec& group, const Multiset& xi) {
    long n = group.order();
    long sum = 0, g = n;
    for (long x : xi) {
        sum += x;
        g = std::gcd(g, x);
    }
    if (xi.size() < 3 || sum % n != 0 || g != 1) return {};
    return canonical_key(CurveAction::from_exponents(group, xi));
}

bool keep(const EnumerationRequest& req, const CurveRecord& rec) {
    long r = rec.action.num_base_points();
    if (r < req.min_r || r > req.max_r) return false;
    if (req.require_dim1 && !has_dim1_eigenspace(rec.profile, req.group.doubled && req.primitive_only)) return false;
    return true;
}

}  // namespace

std::vector<CurveRecord> enumerate_curves_serial(const EnumerationRequest& req) {
    validate(req);
    std::set<Multiset> keys;
    for (const auto& c : candidates(req)) {
        auto key = classify_candidate(req.group, c);
        if (!key.empty()) keys.insert(key);
    }
    std::vector<CurveRecord> out;
    for (const auto& key : keys) {
        auto rec = make_record(CurveAction::from_exponents(req.group, key));
        if (keep(req, rec)) out.push_back(std::move(rec));
    }
    return out;
}

std::vector<CurveRecord> enumerate_curves(const EnumerationRequest& req) {
    validate(req);
    auto cands = candidates(req);
    const long total = static_cast<long>(cands.size());
    std::vector<Multiset> keys(cands.size());
    parallel_for(total, [&](long i) { keys[i] = classify_candidate(req.group, cands[i]); });
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (!keys.empty() && keys.front().empty()) keys.erase(keys.begin());

    const long nk = static_cast<long>(keys.size());
    std::vector<std::optional<CurveRecord>> recs(keys.size());
    parallel_for(nk, [&](long i) {
        auto rec = make_record(CurveAction::from_exponents(req.group, keys[i]));
        if (keep(req, rec)) recs[i] = std::move(rec);
    });
    std::vector<CurveRecord> out;
    for (auto& r : recs)
        if (r) out.push_back(std::move(*r));
    return out;
}

}  // namespace k3pq
