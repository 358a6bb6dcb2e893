#include "k3pq/tables.hpp"

#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"
#include "k3pq/singularity.hpp"

namespace k3pq {

namespace {

// Branch point listed at table position i (1-based).
BranchPoint table_point(const GroupSpec& group, long i) {
    long p = group.prime;
    if (!group.doubled) return BranchPoint{p, i};
    if (i <= p - 1) return BranchPoint{2 * p, mod(p + 2 * i, 2 * p)};
    if (i <= 2 * p - 2) return BranchPoint{p, i - (p - 1)};
    return BranchPoint{2, 1};
}

}  // namespace

CurveAction curve_from_table_counts(const GroupSpec& group, const std::vector<long>& a) {
    long n = group.order();
    if (static_cast<long>(a.size()) != n - 1)
        throw std::invalid_argument("branch count vector must have " + std::to_string(n - 1) + " entries");
    std::vector<BranchClass> cls;
    for (long i = 1; i < n; ++i)
        if (a[i - 1] != 0) cls.push_back(BranchClass{table_point(group, i), 0, a[i - 1]});
    return CurveAction::from_ramification_counts(group, cls);
}

std::vector<long> table_counts(const CurveAction& action) {
    const auto& group = action.group();
    long n = group.order();
    std::vector<long> a(n - 1, 0);
    for (const auto& c : action.classes())
        for (long i = 1; i < n; ++i)
            if (table_point(group, i) == c.point) a[i - 1] += c.ramification_count;
    return a;
}

long table_position_exponent(const GroupSpec& group, long i) {
    long p = group.prime;
    if (!group.doubled) return mod(i, p);
    return mod(i * (p + 2), 2 * p);
}

std::vector<long> table_alpha(const EigenspaceProfile& profile, const GroupSpec& group) {
    std::vector<long> out;
    for (long i = 1; i < group.order(); ++i) out.push_back(profile.alpha(table_position_exponent(group, i)));
    return out;
}

TableFixture load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table fixture " + path);
    nlohmann::json j;
    in >> j;
    TableFixture t;
    t.table = j.at("table").get<int>();
    long index = 0;
    for (const auto& r : j.at("rows")) {
        TableRow row;
        row.index = ++index;
        row.p = r.at("p").get<long>();
        row.g1 = r.at("g1").get<long>();
        row.alpha = r.at("alpha_multiset").get<std::vector<long>>();
        row.a = r.at("branch_counts").get<std::vector<long>>();
        for (const auto& s : r.at("singularities")) {
            auto v = s.get<std::vector<long>>();
            if (v.size() != 3) throw std::runtime_error("singularity entries are [count, d, q]");
            row.singularities.push_back(SingularityType{v[0], v[1], v[2]});
        }
        row.K2 = r.at("K2").get<long>();
        const auto& fl = r.at("fixed_locus");
        row.fixed_locus.n_points = fl.at(0).get<long>();
        if (!fl.at(1).is_null()) row.fixed_locus.top_genus = fl.at(1).get<long>();
        row.fixed_locus.num_curves = fl.at(2).get<long>();
        row.m = r.at("m").get<long>();
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<CellIssue> consistency_issues(int table, const TableRow& row) {
    std::vector<CellIssue> issues;
    GroupSpec group;
    try {
        group = GroupSpec(row.p, table == 2);
    } catch (const std::exception& e) {
        return {{TableCell::BranchCounts, e.what()}};
    }
    long n = group.order();
    long g2 = (row.p - 1) / 2;
    if (static_cast<long>(row.alpha.size()) != n - 1)
        issues.push_back({TableCell::Alpha, "alpha has " + std::to_string(row.alpha.size()) + " entries, expected " +
                                                std::to_string(n - 1)});
    else if (std::accumulate(row.alpha.begin(), row.alpha.end(), 0L) != row.g1)
        issues.push_back({TableCell::Alpha, "alpha does not sum to g(C1)"});
    try {
        auto c = curve_from_table_counts(group, row.a);
        if (auto ad = is_admissible(c); !ad)
            issues.push_back({TableCell::BranchCounts, "branch counts: " + ad.failure});
        else if (genus(c) != row.g1)
            issues.push_back({TableCell::BranchCounts,
                              "Riemann-Hurwitz genus " + std::to_string(genus(c)) + " differs from g(C1)"});
        else if (row.m != c.num_base_points() - 3)
            issues.push_back({TableCell::M, "m differs from branch point count"});
    } catch (const std::exception& e) {
        issues.push_back({TableCell::BranchCounts, std::string("branch counts: ") + e.what()});
    }
    Rational K2(8 * (row.g1 - 1) * (g2 - 1), n), e(4 * (row.g1 - 1) * (g2 - 1), n);
    bool types_ok = true;
    for (const auto& s : row.singularities) {
        if (s.d < 2 || n % s.d != 0 || s.q <= 0 || s.q >= s.d || std::gcd(s.q, s.d) != 1 || s.count <= 0) {
            issues.push_back({TableCell::Singularities,
                              "invalid singularity type " + std::to_string(s.q) + "/" + std::to_string(s.d)});
            types_ok = false;
            continue;
        }
        auto si = singularity_invariants(s.d, s.q);
        K2 += Rational(s.count) * si.h;
        e += Rational(s.count) * si.e;
    }
    if (types_ok) {
        if (K2 != Rational(row.K2))
            issues.push_back({TableCell::Singularities, "K2 from singularities is " + K2.str()});
        if (K2 + e != Rational(24))
            issues.push_back({TableCell::Singularities,
                              "Noether: chi from singularities is " + ((K2 + e) / Rational(12)).str()});
    }
    if ((row.fixed_locus.num_curves == 0) != !row.fixed_locus.top_genus.has_value())
        issues.push_back({TableCell::FixedLocus, "fixed locus genus/curve count mismatch"});
    return issues;
}

std::vector<std::string> consistency_failures(int table, const TableRow& row) {
    std::vector<std::string> out;
    for (const auto& i : consistency_issues(table, row)) out.push_back(i.message);
    return out;
}

std::string cell_name(TableCell c) {
    switch (c) {
        case TableCell::G1: return "g1";
        case TableCell::Alpha: return "alpha";
        case TableCell::BranchCounts: return "branch_counts";
        case TableCell::Singularities: return "singularities";
        case TableCell::K2: return "K2";
        case TableCell::FixedLocus: return "fixed_locus";
        case TableCell::M: return "m";
        case TableCell::Verdict: return "verdict";
    }
    return "?";
}

}  // namespace k3pq
