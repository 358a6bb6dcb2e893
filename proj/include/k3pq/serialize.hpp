#pragma once

#include <string>

#include "json.hpp"

#include "k3pq/curves.hpp"
#include "k3pq/minimal_model.hpp"
#include "k3pq/surfaces.hpp"
#include "k3pq/verify.hpp"

namespace k3pq {

using Json = nlohmann::ordered_json;

// Integers stay integers; other values become "a/b" strings.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"order", "branch": [[m, theta, count]], "genus", "alpha"}; count is the
// number of ramification points of that type.
Json curve_to_json(const CurveRecord& rec);
// Throws AdmissibilityError or std::invalid_argument on bad input.
CurveRecord curve_from_json(const Json& j);

// {"order", "curve1", "curve2", "twist", "singularities", "K2", "euler", "chi",
//  "pg", "q", "h11", "moduli_dim", "k3_candidate", "notes"?}
Json candidate_to_json(const Candidate& cand);
// Rebuilds from curve1, curve2 and twist; throws InvariantViolation when the
// stored invariants disagree with the recomputed ones.
Candidate candidate_from_json(const Json& j);

// {"is_k3", "contractions", "fixed_locus": [n, g|null, kplus1], "undetermined_reason"?}
Json verdict_to_json(const K3Report& report);

Json row_report_to_json(const RowReport& report);

std::string curve_to_tsv(const CurveRecord& rec);
std::string candidate_to_tsv(const Candidate& cand);
std::string verdict_to_tsv(const Candidate& cand, const K3Report& report);
std::string row_report_to_tsv(const RowReport& report);

}  // namespace k3pq
