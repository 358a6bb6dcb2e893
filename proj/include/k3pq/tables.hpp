#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3pq/curves.hpp"
#include "k3pq/surfaces.hpp"

namespace k3pq {

// Table branch-count vectors. Order p: a_i counts points with local action
// zeta_p^i. Order 2p: positions 1..p-1 count order-2p points acting by
// -zeta_p^i, positions p..2p-2 count order-p points acting by zeta_p^(i-p+1),
// position 2p-1 counts order-2 points.
CurveAction curve_from_table_counts(const GroupSpec& group, const std::vector<long>& a);
std::vector<long> table_counts(const CurveAction& action);

// Eigenvalue exponent s listed at table position i (1-based): zeta_p^i for
// order p, (-zeta_p)^i for order 2p.
long table_position_exponent(const GroupSpec& group, long i);
std::vector<long> table_alpha(const EigenspaceProfile& profile, const GroupSpec& group);

struct FixedLocusValue {
    long n_points = 0;
    std::optional<long> top_genus;
    long num_curves = 0;
    friend bool operator==(const FixedLocusValue&, const FixedLocusValue&) = default;
};

struct TableRow {
    long index = 0;  // 1-based row number within the table
    long p = 0;
    long g1 = 0;
    std::vector<long> alpha;
    std::vector<long> a;
    std::vector<SingularityType> singularities;
    long K2 = 0;
    FixedLocusValue fixed_locus;
    long m = 0;
};

struct TableFixture {
    int table = 1;
    std::vector<TableRow> rows;
};

TableFixture load_table(const std::string& path);

enum class TableCell { G1, Alpha, BranchCounts, Singularities, K2, FixedLocus, M, Verdict };
std::string cell_name(TableCell c);

struct CellIssue {
    TableCell cell;
    std::string message;
};

// Internal consistency of the printed row, blamed on individual cells; empty when clean.
std::vector<CellIssue> consistency_issues(int table, const TableRow& row);
std::vector<std::string> consistency_failures(int table, const TableRow& row);

}  // namespace k3pq
