#include "k3pq/serialize.hpp"

#include <sstream>
#include <stdexcept>

#include "k3pq/errors.hpp"
#include "k3pq/modular.hpp"

namespace k3pq {

Json rational_to_json(const Rational& r) {
    if (r.is_integer()) return Json(r.to_long());
    return Json(r.str());
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("malformed rational");
        q.canonicalize();
        return Rational(q);
    }
    throw std::invalid_argument("rational must be an integer or an \"a/b\" string");
}

Json curve_to_json(const CurveRecord& rec) {
    Json branch = Json::array();
    for (const auto& c : rec.action.classes())
        branch.push_back({c.point.m, c.point.theta, c.ramification_count});
    Json alpha = Json::array();
    for (long s = 1; s < rec.profile.order; ++s) alpha.push_back(rec.profile.alpha(s));
    return Json{{"order", rec.action.order()}, {"branch", branch}, {"genus", rec.genus}, {"alpha", alpha}};
}

CurveRecord curve_from_json(const Json& j) {
    auto group = GroupSpec::from_order(j.at("order").get<long>());
    std::vector<BranchClass> classes;
    for (const auto& b : j.at("branch")) {
        if (b.size() != 3) throw std::invalid_argument("branch entries are [m, theta, count]");
        classes.push_back(BranchClass{BranchPoint{b[0].get<long>(), b[1].get<long>()}, 0, b[2].get<long>()});
    }
    auto rec = make_record(CurveAction::from_ramification_counts(group, classes));
    if (j.contains("genus") && j.at("genus").get<long>() != rec.genus)
        throw InvariantViolation("stored genus disagrees with Riemann-Hurwitz");
    if (j.contains("alpha")) {
        auto alpha = j.at("alpha").get<std::vector<long>>();
        for (long s = 1; s < rec.profile.order; ++s)
            if (static_cast<long>(alpha.size()) != rec.profile.order - 1 || alpha[s - 1] != rec.profile.alpha(s))
                throw InvariantViolation("stored eigenspace dimensions disagree with the branch data");
    }
    return rec;
}

Json candidate_to_json(const Candidate& cand) {
    Json sings = Json::array();
    for (const auto& s : singularity_types(cand.singularities)) sings.push_back({s.count, s.d, s.q});
    const auto& inv = cand.invariants;
    Json j{{"order", cand.pair.order()},
           {"curve1", curve_to_json(cand.pair.first)},
           {"curve2", curve_to_json(cand.pair.second)},
           {"twist", cand.pair.twist},
           {"singularities", sings},
           {"K2", rational_to_json(inv.K2)},
           {"euler", rational_to_json(inv.euler)},
           {"chi", rational_to_json(inv.chi)},
           {"pg", inv.pg},
           {"q", inv.q},
           {"h11", inv.h11},
           {"moduli_dim", inv.moduli_dim},
           {"k3_candidate", cand.k3_candidate}};
    if (inv.g1 <= 1 || inv.g2 <= 1)
        j["notes"] = Json::array({"K2 uses the product formula although a factor has genus at most 1"});
    return j;
}

Candidate candidate_from_json(const Json& j) {
    SurfacePair pair{curve_from_json(j.at("curve1")), curve_from_json(j.at("curve2")), j.at("twist").get<long>()};
    if (pair.first.action.group() != pair.second.action.group())
        throw std::invalid_argument("curves have different orders");
    if (std::gcd(pair.twist, pair.order()) != 1) throw std::invalid_argument("twist must be a unit");
    auto cand = make_candidate(pair);
    Json again = candidate_to_json(cand);
    for (const char* key : {"order", "singularities", "K2", "euler", "chi", "pg", "q", "h11", "moduli_dim"})
        if (j.contains(key) && j.at(key) != again.at(key))
            throw InvariantViolation(std::string("stored ") + key + " disagrees with the recomputed value");
    return cand;
}

Json verdict_to_json(const K3Report& report) {
    const auto& v = report.verdict;
    Json fl = nullptr;
    if (report.fixed) {
        const auto& f = *report.fixed;
        fl = Json::array({f.n_points, f.top_genus ? Json(*f.top_genus) : Json(nullptr), f.num_curves});
    }
    Json j{{"is_k3", v.status == VerdictStatus::K3}, {"contractions", v.contractions}, {"fixed_locus", fl}};
    if (v.status == VerdictStatus::Undetermined) {
        std::string reason;
        for (const auto& r : v.reasons) reason += (reason.empty() ? "" : "; ") + r;
        j["undetermined_reason"] = reason.empty() ? "undetermined" : reason;
    }
    if (report.fixed && !report.fixed->verified) j["fixed_locus_unverified"] = report.fixed->unverified_reason;
    return j;
}

Json row_report_to_json(const RowReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        Json cj{{"cell", cell_name(c.cell)}, {"status", status_name(c.status)}, {"printed", c.printed},
                {"derived", c.derived}};
        if (!c.note.empty()) cj["note"] = c.note;
        cells.push_back(cj);
    }
    Json issues = Json::array();
    for (const auto& i : r.issues) issues.push_back({{"cell", cell_name(i.cell)}, {"message", i.message}});
    Json j{{"table", r.table}, {"row", r.index},      {"p", r.p},         {"status", status_name(r.status)},
           {"method", r.method}, {"twist", r.twist}, {"cells", cells}, {"issues", issues}};
    if (r.report) j["verdict"] = verdict_to_json(*r.report);
    return j;
}

namespace {

std::string join_longs(const std::vector<long>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string branch_field(const CurveRecord& rec) {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : rec.action.classes()) {
        os << (first ? "" : ",") << c.point.m << ":" << c.point.theta << "x" << c.ramification_count;
        first = false;
    }
    return os.str();
}

std::string sing_fields(const Candidate& cand) {
    std::string out;
    for (const auto& s : singularity_types(cand.singularities))
        out += "\t" + std::to_string(s.count) + "×" + std::to_string(s.d) + "/" + std::to_string(s.q);
    return out;
}

}  // namespace

std::string curve_to_tsv(const CurveRecord& rec) {
    std::vector<long> alpha;
    for (long s = 1; s < rec.profile.order; ++s) alpha.push_back(rec.profile.alpha(s));
    return std::to_string(rec.action.order()) + "\t" + std::to_string(rec.genus) + "\t" + branch_field(rec) + "\t" +
           join_longs(alpha);
}

std::string candidate_to_tsv(const Candidate& cand) {
    const auto& inv = cand.invariants;
    std::ostringstream os;
    os << cand.pair.order() << "\t" << branch_field(cand.pair.first) << "\t" << branch_field(cand.pair.second) << "\t"
       << cand.pair.twist << "\t" << inv.K2.str() << "\t" << inv.euler.str() << "\t" << inv.chi.str() << "\t" << inv.pg
       << "\t" << inv.q << "\t" << inv.h11 << "\t" << inv.moduli_dim << "\t" << (cand.k3_candidate ? 1 : 0)
       << sing_fields(cand);
    return os.str();
}

std::string verdict_to_tsv(const Candidate& cand, const K3Report& report) {
    std::ostringstream os;
    os << cand.pair.order() << "\t" << branch_field(cand.pair.first) << "\t" << branch_field(cand.pair.second) << "\t"
       << cand.pair.twist << "\t" << cand.invariants.K2.str() << "\t";
    switch (report.verdict.status) {
        case VerdictStatus::K3: os << "K3"; break;
        case VerdictStatus::NotK3: os << "not-K3"; break;
        case VerdictStatus::Undetermined: os << "undetermined"; break;
    }
    os << "\t" << report.verdict.contractions << "\t";
    if (report.fixed) {
        const auto& f = *report.fixed;
        os << format_fixed_locus(f.n_points, f.top_genus, f.num_curves);
    } else {
        os << "-";
    }
    os << sing_fields(cand);
    return os.str();
}

std::string row_report_to_tsv(const RowReport& r) {
    std::ostringstream os;
    os << r.table << "\t" << r.index << "\t" << r.p << "\t" << status_name(r.status) << "\t" << r.method << "\t"
       << r.twist;
    for (const auto& c : r.cells)
        if (c.status != CellStatus::Match)
            os << "\t" << cell_name(c.cell) << "=" << status_name(c.status) << ":" << c.printed << "->" << c.derived;
    return os.str();
}

}  // namespace k3pq
