#include "k3pq/minimal_model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "k3pq/cyclotomic.hpp"
#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "k3pq/singularity.hpp"

namespace k3pq {

namespace {

using Vec = std::pair<Rational, Rational>;

Rational frac(const Rational& r) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.numerator().get_mpz_t(), r.denominator().get_mpz_t());
    return r - Rational(fl, 1);
}

// Whether x lies in the subgroup of Q generated by gens.
bool in_rational_span(const Rational& x, const std::vector<Rational>& gens) {
    mpz_class L = x.denominator();
    for (const auto& g : gens) L = lcm(L, g.denominator());
    mpz_class G = 0;
    for (const auto& g : gens) G = gcd(G, mpz_class(g.numerator() * (L / g.denominator())));
    mpz_class xv = x.numerator() * (L / x.denominator());
    if (G == 0) return xv == 0;
    return xv % G == 0;
}

// Smallest j in [0, n) with (n/h) | j and (n/k) | (j + c).
std::optional<long> lift_exponent(long n, long h, long k, long c) {
    for (long j = 0; j < n; j += n / h)
        if (mod(j + c, n / k) == 0) return j;
    return std::nullopt;
}

}  // namespace

std::vector<std::pair<long, long>> CurveConfiguration::neighbors(long id) const {
    std::vector<std::pair<long, long>> out;
    for (long v = 0; v < static_cast<long>(nodes.size()); ++v)
        if (v != id && alive[v] && inter[id][v] != 0) out.emplace_back(v, inter[id][v]);
    return out;
}

Rational central_self_intersection(const std::vector<std::pair<long, long>>& strings) {
    Rational s(0);
    for (const auto& [q, d] : strings) s -= Rational(q, d);
    if (!s.is_integer())
        throw std::invalid_argument("central component self-intersection " + s.str() + " is not an integer");
    return s;
}

long automorphism_power(const GroupSpec& group) { return group.doubled ? 2 : 1; }

std::vector<Vec> resolution_rays(long d, long i, long j) {
    long q = mod(i * mod_inverse(j, d), d);
    auto chain = continued_fraction(d, q);
    std::vector<Vec> rays{{Rational(1), Rational(0)}, {Rational(q, d), Rational(1, d)}};
    for (long b : chain) {
        const Vec& cur = rays[rays.size() - 1];
        const Vec& prev = rays[rays.size() - 2];
        rays.push_back({Rational(b) * cur.first - prev.first, Rational(b) * cur.second - prev.second});
    }
    if (!(rays.back() == Vec{Rational(0), Rational(1)}))
        throw InvariantViolation("resolution rays do not end at the second axis");
    return rays;
}

bool ray_fixed(const Vec& v, const Vec& t, long d, long i, long j) {
    const auto& [a, b] = v;
    Rational phi_t = b * t.first - a * t.second;
    std::vector<Rational> gens{b, -a, b * Rational(i, d) - a * Rational(j, d)};
    return in_rational_span(phi_t, gens);
}

CurveConfiguration build_configuration(const Candidate& cand) {
    const auto& pair = cand.pair;
    const long n = pair.order();
    const long c = automorphism_power(pair.first.action.group());
    const auto base1 = pair.first.action.base_points();
    const auto glued = pair.glued_second();
    const auto base2 = glued.base_points();
    const auto prof1 = pair.first.profile;
    const auto prof2 = pair.glued_second_profile();

    CurveConfiguration cfg;
    cfg.order = n;
    cfg.g1 = pair.first.genus;
    cfg.g2 = pair.second.genus;

    struct PendingChain {
        long i, j, point;
        std::vector<long> b;
        bool invariant;
        std::vector<bool> fixed;  // per ray, including both ends
    };
    std::vector<PendingChain> chains;
    std::vector<std::vector<std::pair<long, long>>> strings1(base1.size()), strings2(base2.size());
    std::vector<bool> fixed1(base1.size()), fixed2(base2.size());
    for (size_t i = 0; i < base1.size(); ++i) fixed1[i] = c % (n / base1[i].m) == 0;
    for (size_t j = 0; j < base2.size(); ++j) fixed2[j] = c % (n / base2[j].m) == 0;

    struct SmoothMeeting {
        long i, j, mult;
        bool isolated;
    };
    std::vector<SmoothMeeting> meetings;

    for (size_t i = 0; i < base1.size(); ++i) {
        for (size_t j = 0; j < base2.size(); ++j) {
            long h = base1[i].m, k = base2[j].m, d = std::gcd(h, k);
            auto lift = lift_exponent(n, h, k, c);
            if (d == 1) {
                bool iso = lift && !fixed1[i] && !fixed2[j];
                meetings.push_back({static_cast<long>(i), static_cast<long>(j), n / (h * k), iso});
                continue;
            }
            long ti = mod(base1[i].theta, d), tj = mod(base2[j].theta, d);
            long q = mod(ti * mod_inverse(tj, d), d);
            long qp = mod_inverse(q, d);
            long points = n * d / (h * k);
            auto rays = resolution_rays(d, ti, tj);
            std::vector<bool> fixed(rays.size(), false);
            if (lift) {
                Vec t{frac(Rational(base1[i].theta * *lift, n)), frac(Rational(base2[j].theta * (*lift + c), n))};
                for (size_t r = 0; r < rays.size(); ++r) fixed[r] = ray_fixed(rays[r], t, d, ti, tj);
                if (fixed.front() != fixed1[i] || fixed.back() != fixed2[j])
                    throw InvariantViolation("local and global fixedness of a central component disagree");
            }
            auto chain = continued_fraction(d, q);
            for (long pt = 0; pt < points; ++pt) {
                strings1[i].push_back({q, d});
                strings2[j].push_back({qp, d});
                chains.push_back({static_cast<long>(i), static_cast<long>(j), pt, chain, lift.has_value(), fixed});
            }
        }
    }

    // Ids: first-factor centrals, then exceptional curves, then second-factor centrals.
    long total_exc = 0;
    for (const auto& ch : chains) total_exc += static_cast<long>(ch.b.size());
    const long N = static_cast<long>(base1.size() + base2.size()) + total_exc;
    cfg.nodes.resize(N);
    cfg.inter.assign(N, std::vector<long>(N, 0));
    auto c1 = [&](long i) { return i; };
    auto c2 = [&](long j) { return static_cast<long>(base1.size()) + total_exc + j; };
    for (size_t i = 0; i < base1.size(); ++i) {
        auto& nd = cfg.nodes[c1(i)];
        nd.id = c1(i);
        nd.kind = NodeKind::Central1;
        nd.base1 = static_cast<long>(i);
        nd.self_int = central_self_intersection(strings1[i]).to_long();
        nd.genus = nd.arith_genus = intermediate_quotient_genus(prof2, n / base1[i].m);
        nd.general_fiber2 = n / base1[i].m;
        nd.invariant = true;
        nd.pointwise_fixed = fixed1[i];
    }
    for (size_t j = 0; j < base2.size(); ++j) {
        auto& nd = cfg.nodes[c2(j)];
        nd.id = c2(j);
        nd.kind = NodeKind::Central2;
        nd.base2 = static_cast<long>(j);
        nd.self_int = central_self_intersection(strings2[j]).to_long();
        nd.genus = nd.arith_genus = intermediate_quotient_genus(prof1, n / base2[j].m);
        nd.general_fiber1 = n / base2[j].m;
        nd.invariant = true;
        nd.pointwise_fixed = fixed2[j];
    }
    long next = static_cast<long>(base1.size());
    for (const auto& ch : chains) {
        std::vector<long> ids{c1(ch.i)};
        for (size_t l = 0; l < ch.b.size(); ++l) {
            auto& nd = cfg.nodes[next];
            nd.id = next;
            nd.kind = NodeKind::Exceptional;
            nd.base1 = ch.i;
            nd.base2 = ch.j;
            nd.point = ch.point;
            nd.chain_index = static_cast<long>(l);
            nd.self_int = -ch.b[l];
            nd.invariant = ch.invariant;
            nd.pointwise_fixed = ch.invariant && ch.fixed[l + 1];
            ids.push_back(next++);
        }
        ids.push_back(c2(ch.j));
        for (size_t l = 0; l + 1 < ids.size(); ++l) {
            cfg.inter[ids[l]][ids[l + 1]] += 1;
            cfg.inter[ids[l + 1]][ids[l]] += 1;
            if (ch.invariant && !ch.fixed[l] && !ch.fixed[l + 1]) cfg.isolated_points.emplace_back(ids[l], ids[l + 1]);
        }
    }
    for (const auto& m : meetings) {
        cfg.inter[c1(m.i)][c2(m.j)] += m.mult;
        cfg.inter[c2(m.j)][c1(m.i)] += m.mult;
        if (m.isolated)
            for (long k = 0; k < m.mult; ++k) cfg.isolated_points.emplace_back(c1(m.i), c2(m.j));
    }
    for (long v = 0; v < N; ++v) {
        const auto& nd = cfg.nodes[v];
        if (nd.kind != NodeKind::Exceptional) continue;
        long m1 = 0, m2 = 0;
        for (long w = 0; w < N; ++w) {
            if (!cfg.inter[v][w]) continue;
            if (cfg.nodes[w].kind == NodeKind::Central1) m1 += cfg.inter[v][w];
            if (cfg.nodes[w].kind == NodeKind::Central2) m2 += cfg.inter[v][w];
        }
        if (m1 != (nd.chain_index == 0 ? 1 : 0) || m2 > 1)
            throw InvariantViolation("exceptional curve " + std::to_string(v) + " is attached inconsistently");
    }
    cfg.original = cfg.inter;
    cfg.alive.assign(N, true);
    cfg.total_transform.assign(N, std::vector<long>(N, 0));
    for (long v = 0; v < N; ++v) cfg.total_transform[v][v] = 1;
    cfg.exceptional_divisor.assign(N, 0);
    cfg.K2_current = cand.invariants.K2.to_long();
    cfg.euler_current = cand.invariants.euler.to_long();
    cfg.h11_current = cand.invariants.h11;
    return cfg;
}

ContractionResult contract_to_minimal(CurveConfiguration cfg, const Rational& K2) {
    ContractionResult res;
    const long limit = -K2.to_long();
    const long N = static_cast<long>(cfg.nodes.size());
    for (;;) {
        long pick = -1;
        for (long v = 0; v < N && pick < 0; ++v)
            if (cfg.alive[v] && cfg.nodes[v].arith_genus == 0 && cfg.nodes[v].self_int == -1) pick = v;
        if (pick < 0) break;
        if (res.count + 1 > limit) {
            res.undetermined = true;
            res.reason = "more (-1)-curves than -K^2 allows (curve " + std::to_string(pick) + ")";
            break;
        }
        auto nb = cfg.neighbors(pick);
        for (size_t x = 0; x < nb.size(); ++x) {
            auto [u, a] = nb[x];
            cfg.nodes[u].self_int += a * a;
            cfg.nodes[u].arith_genus += a * (a - 1) / 2;
            for (long e = 0; e < N; ++e) cfg.total_transform[u][e] += a * cfg.total_transform[pick][e];
            for (size_t y = x + 1; y < nb.size(); ++y) {
                auto [w, b] = nb[y];
                cfg.inter[u][w] += a * b;
                cfg.inter[w][u] += a * b;
            }
        }
        for (long e = 0; e < N; ++e) cfg.exceptional_divisor[e] += cfg.total_transform[pick][e];
        for (long u = 0; u < N; ++u) cfg.inter[pick][u] = cfg.inter[u][pick] = 0;
        cfg.alive[pick] = false;
        cfg.log.push_back(ContractionEvent{pick, nb});
        cfg.K2_current += 1;
        cfg.euler_current -= 1;
        cfg.h11_current -= 1;
        res.count += 1;
    }
    res.config = std::move(cfg);
    return res;
}

K3Verdict k3_verdict(const Candidate& cand, const ContractionResult& res) {
    K3Verdict v;
    v.contractions = res.count;
    const auto& inv = cand.invariants;
    if (inv.pg != 1) v.reasons.push_back("pg = " + std::to_string(inv.pg));
    if (inv.q != 0) v.reasons.push_back("q = " + std::to_string(inv.q));
    if (inv.chi != Rational(2)) v.reasons.push_back("chi = " + inv.chi.str());
    if (!v.reasons.empty()) {
        v.status = VerdictStatus::NotK3;
        return v;
    }
    if (res.undetermined) v.reasons.push_back(res.reason);
    const auto& cfg = res.config;
    const long N = static_cast<long>(cfg.nodes.size());
    if (Rational(res.count) != -inv.K2)
        v.reasons.push_back("contracted " + std::to_string(res.count) + " curves but -K^2 = " + (-inv.K2).str());
    for (long u = 0; u < N; ++u) {
        if (!cfg.alive[u]) continue;
        const auto& nd = cfg.nodes[u];
        if (nd.arith_genus == 0 && nd.self_int == -1) v.reasons.push_back("(-1)-curve " + std::to_string(u) + " remains");
        if (nd.self_int != 2 * nd.arith_genus - 2)
            v.reasons.push_back("adjunction fails on curve " + std::to_string(u) + " (self-intersection " +
                                std::to_string(nd.self_int) + ", arithmetic genus " +
                                std::to_string(nd.arith_genus) + ")");
    }
    if (cfg.euler_current != 24) v.reasons.push_back("Euler number of the contracted surface is " +
                                                     std::to_string(cfg.euler_current));
    if (cfg.h11_current != 20) v.reasons.push_back("h11 of the contracted surface is " + std::to_string(cfg.h11_current));
    // The canonical class minus the exceptional divisor must vanish on both fiber classes.
    long f1 = 2 * cfg.g2 - 2, f2 = 2 * cfg.g1 - 2;
    for (long u = 0; u < N; ++u) {
        f1 -= cfg.exceptional_divisor[u] * cfg.nodes[u].general_fiber1;
        f2 -= cfg.exceptional_divisor[u] * cfg.nodes[u].general_fiber2;
    }
    if (f1 != 0 || f2 != 0) v.reasons.push_back("K - E is not numerically trivial on the fibers");
    v.status = v.reasons.empty() ? VerdictStatus::K3 : VerdictStatus::Undetermined;
    return v;
}

FixedLocus fixed_locus(const ContractionResult& res) {
    const auto& cfg = res.config;
    const long N = static_cast<long>(cfg.nodes.size());
    FixedLocus fl;
    for (long u = 0; u < N; ++u) {
        if (!cfg.alive[u] || !cfg.nodes[u].pointwise_fixed) continue;
        fl.num_curves += 1;
        const auto& nd = cfg.nodes[u];
        if (nd.arith_genus != nd.genus) {
            fl.verified = false;
            fl.unverified_reason = "fixed curve " + std::to_string(u) + " became singular";
        }
        fl.top_genus = std::max(fl.top_genus.value_or(0), nd.genus);
        fl.euler += 2 - 2 * nd.genus;
    }
    for (const auto& [a, b] : cfg.isolated_points)
        if (cfg.alive[a] && cfg.alive[b]) fl.n_points += 1;
    // Each connected set of contracted curves becomes one point.
    std::vector<long> comp(N, -1);
    for (long s = 0; s < N; ++s) {
        if (cfg.alive[s] || comp[s] >= 0) continue;
        std::vector<long> stack{s}, members;
        comp[s] = s;
        while (!stack.empty()) {
            long u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (long w = 0; w < N; ++w)
                if (!cfg.alive[w] && comp[w] < 0 && cfg.original[u][w] > 0) {
                    comp[w] = s;
                    stack.push_back(w);
                }
        }
        bool invariant = false, on_fixed_curve = false;
        for (long u : members) {
            invariant = invariant || cfg.nodes[u].invariant;
            for (long w = 0; w < N; ++w)
                if (cfg.alive[w] && cfg.nodes[w].pointwise_fixed && cfg.original[u][w] > 0) on_fixed_curve = true;
        }
        if (invariant && !on_fixed_curve) fl.n_points += 1;
    }
    fl.euler += fl.n_points;
    return fl;
}

long topological_lefschetz_number(const Candidate& cand, const ContractionResult& res) {
    const auto& pair = cand.pair;
    const auto& group = pair.first.action.group();
    const long n = pair.order();
    const long e = mod(automorphism_power(group) * mod_inverse(pair.twist, n), n);
    const auto prof1 = pair.first.profile;
    const auto prof2 = pair.glued_second_profile();
    // Invariant classes of H^1 x H^1 pair the s and n-s eigenspaces.
    Cyclotomic tr(group.prime, Rational(4));
    for (long s = 1; s < n; ++s) {
        long a = prof1.alpha(s) + prof1.alpha(n - s);
        long u = n - s;
        long b = prof2.alpha(u) + prof2.alpha(n - u);
        if (a * b != 0) tr += Cyclotomic::root_of_unity(group.prime, n, mod(e * u, n)) * Rational(a * b);
    }
    const auto& cfg = res.config;
    for (size_t v = 0; v < cfg.nodes.size(); ++v) {
        const auto& nd = cfg.nodes[v];
        long w = nd.invariant ? 1 : 0;
        if (nd.kind == NodeKind::Exceptional) tr += Cyclotomic(group.prime, Rational(w));
        if (!cfg.alive[v]) tr -= Cyclotomic(group.prime, Rational(w));
    }
    const auto& c = tr.coefficients();
    for (size_t k = 1; k < c.size(); ++k)
        if (!c[k].is_zero()) throw InvariantViolation("trace on the second cohomology is not rational");
    return c[0].to_long();
}

K3Report run_k3_pipeline(const Candidate& cand) {
    K3Report rep;
    const auto& inv = cand.invariants;
    if (inv.pg != 1 || inv.q != 0 || inv.chi != Rational(2)) {
        rep.verdict = k3_verdict(cand, ContractionResult{});
        return rep;
    }
    auto res = contract_to_minimal(build_configuration(cand), inv.K2);
    rep.verdict = k3_verdict(cand, res);
    if (rep.verdict.status == VerdictStatus::K3) rep.fixed = fixed_locus(res);
    return rep;
}

}  // namespace k3pq
