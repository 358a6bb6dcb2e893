#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3pq/minimal_model.hpp"
#include "k3pq/tables.hpp"

namespace k3pq {

enum class CellStatus { Match, Mismatch, Quarantined, Unverified };
enum class RowStatus { Matched, Mismatch, Unverified, Quarantined };

std::string status_name(CellStatus s);
std::string status_name(RowStatus s);

struct CellCheck {
    TableCell cell;
    CellStatus status = CellStatus::Match;
    std::string printed;
    std::string derived;
    std::string note;
};

struct RowReport {
    int table = 1;
    long index = 0;
    long p = 0;
    // "branch_counts" when C1 is rebuilt from the printed vector, "search" otherwise.
    std::string method;
    long twist = 0;  // 0 when no surface was selected
    RowStatus status = RowStatus::Matched;
    std::vector<CellCheck> cells;
    std::vector<CellIssue> issues;
    std::optional<Candidate> candidate;
    std::optional<K3Report> report;
};

// Singularity multiset up to isomorphism: 1/d(1,q) and 1/d(1,q^-1) are identified.
std::vector<SingularityType> unoriented_types(const std::vector<SingularityType>& types);

std::string format_singularities(const std::vector<SingularityType>& types);
std::string format_fixed_locus(const std::optional<long>& n, const std::optional<long>& g, const std::optional<long>& k);

// Compare one printed row with the pipeline. The second curve is D_p with the
// table's generator; every twist with pg = 1 and q = 0 is tried. Rows whose
// branch counts fail the consistency gate are matched by a restricted search.
RowReport verify_row(int table, const TableRow& row);

struct VerifySummary {
    long matched = 0;
    long mismatched = 0;
    long unverified = 0;
    long quarantined = 0;
};

std::vector<RowReport> verify_rows(const TableFixture& fixture, const std::vector<long>& primes);
std::vector<RowReport> verify_rows_serial(const TableFixture& fixture, const std::vector<long>& primes);
VerifySummary summarize(const std::vector<RowReport>& reports);

}  // namespace k3pq
