#include "k3pq/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "k3pq/parallel.hpp"

namespace k3pq {

std::string status_name(CellStatus s) {
    switch (s) {
        case CellStatus::Match: return "match";
        case CellStatus::Mismatch: return "mismatch";
        case CellStatus::Quarantined: return "quarantined";
        case CellStatus::Unverified: return "unverified";
    }
    return "?";
}

std::string status_name(RowStatus s) {
    switch (s) {
        case RowStatus::Matched: return "matched";
        case RowStatus::Mismatch: return "mismatch";
        case RowStatus::Unverified: return "unverified";
        case RowStatus::Quarantined: return "quarantined";
    }
    return "?";
}

std::vector<SingularityType> unoriented_types(const std::vector<SingularityType>& types) {
    std::map<std::pair<long, long>, long> merged;
    for (const auto& t : types) {
        long q = t.q;
        if (t.d > 1 && std::gcd(t.q, t.d) == 1) q = std::min(t.q, mod_inverse(t.q, t.d));
        merged[{t.d, q}] += t.count;
    }
    std::vector<SingularityType> out;
    for (const auto& [k, c] : merged) out.push_back({c, k.first, k.second});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(b.d, a.q, a.count) < std::tie(a.d, b.q, b.count);
    });
    return out;
}

namespace {

std::vector<SingularityType> sorted_oriented(std::vector<SingularityType> t) {
    std::map<std::pair<long, long>, long> merged;
    for (const auto& s : t) merged[{s.d, s.q}] += s.count;
    t.clear();
    for (const auto& [k, c] : merged) t.push_back({c, k.first, k.second});
    return t;
}

std::set<std::pair<long, long>> support(const std::vector<SingularityType>& t) {
    std::set<std::pair<long, long>> out;
    for (const auto& s : unoriented_types(t)) out.insert({s.d, s.q});
    return out;
}

std::string join(const std::vector<long>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::vector<long> sorted(std::vector<long> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// The surface as (C1 x D_p) with the table generator on D_p, if the second
// factor (after gluing) is D_p up to a power of the generator.
std::optional<CurveRecord> first_factor_against_dp(const Candidate& cand) {
    const auto& group = cand.pair.first.action.group();
    const long n = group.order();
    const auto dp = dp_curve(group).spherical_exponents();
    const auto glued = cand.pair.glued_second();
    for (long v : units(n))
        if (glued.twisted(v).spherical_exponents() == dp) return make_record(cand.pair.first.action.twisted(v));
    return std::nullopt;
}

struct Option {
    Candidate cand;
    CurveRecord c1;
    K3Report report;
};

struct Scored {
    std::vector<CellCheck> cells;
    long mismatches = 0;
    bool support_differs = false;
};

bool quarantined(const std::vector<CellIssue>& issues, TableCell c) {
    return std::any_of(issues.begin(), issues.end(), [&](const CellIssue& i) { return i.cell == c; });
}

Scored evaluate(int table, const TableRow& row, const std::vector<CellIssue>& issues, const Option& opt) {
    Scored sc;
    const GroupSpec group(row.p, table == 2);
    auto add = [&](TableCell cell, bool equal, std::string printed, std::string derived, std::string note = "") {
        CellCheck c{cell, CellStatus::Match, std::move(printed), std::move(derived), std::move(note)};
        if (quarantined(issues, cell))
            c.status = CellStatus::Quarantined;
        else if (!equal)
            c.status = CellStatus::Mismatch;
        if (c.status == CellStatus::Mismatch) sc.mismatches += 1;
        sc.cells.push_back(std::move(c));
    };

    add(TableCell::G1, row.g1 == opt.c1.genus, std::to_string(row.g1), std::to_string(opt.c1.genus));

    auto alpha = table_alpha(opt.c1.profile, group);
    add(TableCell::Alpha, sorted(row.alpha) == sorted(alpha), join(row.alpha), join(alpha),
        row.alpha == alpha ? "positional order agrees" : "positional order differs");

    auto counts = table_counts(opt.c1.action);
    add(TableCell::BranchCounts, row.a == counts, join(row.a), join(counts));

    auto derived_types = singularity_types(opt.cand.singularities);
    bool oriented = sorted_oriented(row.singularities) == sorted_oriented(derived_types);
    bool same_support = support(row.singularities) == support(derived_types);
    sc.support_differs = !same_support;
    std::string note = oriented ? "oriented types agree" : "types agree up to orientation";
    if (quarantined(issues, TableCell::Singularities))
        note = same_support ? "distinct types agree" : "distinct types differ";
    add(TableCell::Singularities, unoriented_types(row.singularities) == unoriented_types(derived_types),
        format_singularities(row.singularities), format_singularities(derived_types), note);

    const auto& inv = opt.cand.invariants;
    add(TableCell::K2, inv.K2 == Rational(row.K2), std::to_string(row.K2), inv.K2.str());
    add(TableCell::M, inv.moduli_dim == row.m, std::to_string(row.m), std::to_string(inv.moduli_dim));

    const auto& verdict = opt.report.verdict;
    bool is_k3 = verdict.status == VerdictStatus::K3;
    std::string vnote;
    for (const auto& r : verdict.reasons) vnote += (vnote.empty() ? "" : "; ") + r;
    add(TableCell::Verdict, is_k3, "K3",
        is_k3 ? "K3" : (verdict.status == VerdictStatus::NotK3 ? "not K3" : "undetermined"), vnote);

    const auto& pf = row.fixed_locus;
    std::string printed_fl = format_fixed_locus(pf.n_points, pf.top_genus, pf.num_curves);
    if (opt.report.fixed) {
        const auto& f = *opt.report.fixed;
        FixedLocusValue dv{f.n_points, f.top_genus, f.num_curves};
        add(TableCell::FixedLocus, dv == pf, printed_fl, format_fixed_locus(f.n_points, f.top_genus, f.num_curves),
            f.verified ? "" : f.unverified_reason);
        auto& last = sc.cells.back();
        if (!f.verified && last.status != CellStatus::Quarantined) {
            if (last.status == CellStatus::Mismatch) sc.mismatches -= 1;
            last.status = CellStatus::Unverified;
        }
    } else {
        add(TableCell::FixedLocus, false, printed_fl, "none");
    }
    return sc;
}

RowStatus row_status(const std::vector<CellCheck>& cells) {
    auto has = [&](CellStatus s) {
        return std::any_of(cells.begin(), cells.end(), [&](const CellCheck& c) { return c.status == s; });
    };
    if (has(CellStatus::Mismatch)) return RowStatus::Mismatch;
    if (has(CellStatus::Unverified)) return RowStatus::Unverified;
    if (has(CellStatus::Quarantined)) return RowStatus::Quarantined;
    return RowStatus::Matched;
}

Option make_option(const Candidate& cand, const CurveRecord& c1) {
    return Option{cand, c1, run_k3_pipeline(cand)};
}

}  // namespace

std::string format_singularities(const std::vector<SingularityType>& types) {
    std::ostringstream os;
    for (size_t i = 0; i < types.size(); ++i)
        os << (i ? " " : "") << types[i].count << "×" << types[i].d << "/" << types[i].q;
    return os.str();
}

std::string format_fixed_locus(const std::optional<long>& n, const std::optional<long>& g,
                               const std::optional<long>& k) {
    auto f = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string("-"); };
    return "(" + f(n) + "," + f(g) + "," + f(k) + ")";
}

RowReport verify_row(int table, const TableRow& row) {
    RowReport rep;
    rep.table = table;
    rep.index = row.index;
    rep.p = row.p;
    rep.issues = consistency_issues(table, row);
    const GroupSpec group(row.p, table == 2);
    const CurveRecord dp = make_record(dp_curve(group));

    std::vector<Option> options;
    if (!quarantined(rep.issues, TableCell::BranchCounts)) {
        rep.method = "branch_counts";
        CurveRecord c1 = make_record(curve_from_table_counts(group, row.a));
        for (const auto& pair : pair_admissible(c1, dp)) options.push_back(make_option(make_candidate(pair), c1));
    } else {
        rep.method = "search";
        try {
            for (const auto& cand : scan(ScanRequest{group, row.m + 3, 3, false})) {
                if (!cand.k3_candidate) continue;
                // Either factor may play the part of D_p.
                Candidate swapped = make_candidate(
                    SurfacePair{cand.pair.second, cand.pair.first, mod_inverse(cand.pair.twist, group.order())});
                for (const Candidate* c : std::initializer_list<const Candidate*>{&cand, &swapped})
                    if (auto c1 = first_factor_against_dp(*c)) {
                        SurfacePair normal{*c1, dp, 1};
                        options.push_back(make_option(make_candidate(normal), *c1));
                    }
            }
        } catch (const BoundError& e) {
            rep.issues.push_back({TableCell::BranchCounts, std::string("search: ") + e.what()});
        }
    }

    std::optional<size_t> best;
    std::optional<Scored> best_score;
    for (size_t i = 0; i < options.size(); ++i) {
        auto sc = evaluate(table, row, rep.issues, options[i]);
        if (!best_score || std::tie(sc.mismatches, sc.support_differs) <
                               std::tie(best_score->mismatches, best_score->support_differs)) {
            best = i;
            best_score = std::move(sc);
        }
    }
    if (!best) {
        rep.cells.push_back({TableCell::Verdict, CellStatus::Mismatch, "K3", "none",
                             "no surface with pg = 1 and q = 0 was found"});
        rep.status = RowStatus::Mismatch;
        return rep;
    }
    rep.cells = best_score->cells;
    rep.twist = options[*best].cand.pair.twist;
    rep.candidate = options[*best].cand;
    rep.report = options[*best].report;
    rep.status = row_status(rep.cells);
    return rep;
}

namespace {

std::vector<const TableRow*> selected_rows(const TableFixture& fixture, const std::vector<long>& primes) {
    std::vector<const TableRow*> rows;
    for (const auto& r : fixture.rows)
        if (primes.empty() || std::find(primes.begin(), primes.end(), r.p) != primes.end()) rows.push_back(&r);
    return rows;
}

}  // namespace

std::vector<RowReport> verify_rows(const TableFixture& fixture, const std::vector<long>& primes) {
    auto rows = selected_rows(fixture, primes);
    std::vector<RowReport> out(rows.size());
    parallel_for(static_cast<long>(rows.size()), [&](long i) { out[i] = verify_row(fixture.table, *rows[i]); });
    return out;
}

std::vector<RowReport> verify_rows_serial(const TableFixture& fixture, const std::vector<long>& primes) {
    std::vector<RowReport> out;
    for (const auto* r : selected_rows(fixture, primes)) out.push_back(verify_row(fixture.table, *r));
    return out;
}

VerifySummary summarize(const std::vector<RowReport>& reports) {
    VerifySummary s;
    for (const auto& r : reports) {
        switch (r.status) {
            case RowStatus::Matched: ++s.matched; break;
            case RowStatus::Mismatch: ++s.mismatched; break;
            case RowStatus::Unverified: ++s.unverified; break;
            case RowStatus::Quarantined: ++s.quarantined; break;
        }
    }
    return s;
}

}  // namespace k3pq
