#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace k3pq {

struct GroupSpec {
    long prime = 3;
    bool doubled = false;

    GroupSpec() = default;
    GroupSpec(long p, bool twice);
    // n must be p or 2p for an odd prime p <= 19.
    static GroupSpec from_order(long n);
    long order() const { return doubled ? 2 * prime : prime; }
    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Stabilizer order m and local rotation: g^(n/m) acts near the point as zeta_m^theta.
struct BranchPoint {
    long m = 0;
    long theta = 0;
    friend auto operator<=>(const BranchPoint&, const BranchPoint&) = default;
};

struct BranchClass {
    BranchPoint point;
    long base_count = 0;
    long ramification_count = 0;  // base_count * n / m
};

class CurveAction {
public:
    // One entry per base branch point.
    CurveAction(GroupSpec group, std::vector<BranchPoint> base);
    // Counts are numbers of ramification points on C; each must be a multiple of n/m.
    static CurveAction from_ramification_counts(GroupSpec group, const std::vector<BranchClass>& classes);
    static CurveAction from_exponents(GroupSpec group, const std::vector<long>& xi);

    const GroupSpec& group() const { return group_; }
    long order() const { return group_.order(); }
    const std::vector<BranchPoint>& base_points() const { return base_; }
    long num_base_points() const { return static_cast<long>(base_.size()); }
    std::vector<BranchClass> classes() const;
    // Sorted spherical exponents xi_j = (n/m) * theta^-1 mod n.
    std::vector<long> spherical_exponents() const;
    // Action of g^t, t a unit mod n.
    CurveAction twisted(long t) const;

    friend bool operator==(const CurveAction&, const CurveAction&) = default;

private:
    GroupSpec group_;
    std::vector<BranchPoint> base_;
};

long spherical_exponent(long n, const BranchPoint& b);
BranchPoint branch_point_from_exponent(long n, long xi);

struct Admissibility {
    bool ok = false;
    std::string failure;  // first failed condition, empty when ok
    explicit operator bool() const { return ok; }
};

Admissibility is_admissible(const CurveAction& action);

// Throws AdmissibilityError when Riemann-Hurwitz gives no valid genus.
long genus(const CurveAction& action);

struct EigenspaceProfile {
    long order = 0;
    std::vector<long> dims;  // dims[s-1] is the dimension for eigenvalue zeta_n^s

    long alpha(long s) const;
    long genus() const;
    // Profile of g^t: the zeta^s eigenspace of g is the zeta^(st) eigenspace of g^t.
    EigenspaceProfile twisted(long t) const;
    friend bool operator==(const EigenspaceProfile&, const EigenspaceProfile&) = default;
};

EigenspaceProfile eigenspace_profile(const CurveAction& action);

// Holomorphic Lefschetz identity at a single power g^k, evaluated exactly.
bool lefschetz_holds(const CurveAction& action, const EigenspaceProfile& profile, long k);
bool lefschetz_check(const CurveAction& action, const EigenspaceProfile& profile);

struct GenusBound {
    long g_max = 0;
    long r_max = 0;
};

GenusBound max_genus_bound(const GroupSpec& group, bool primitive_only);

// Largest number of base branch points one curve may have in the
// non-primitive 2p mode, where the two factors together are capped.
inline constexpr long kNonPrimitiveTotalCap = 25;

CurveAction canonicalize(const CurveAction& action);
std::vector<long> canonical_key(const CurveAction& action);

// Genus of C / <g^m> for m | n.
long intermediate_quotient_genus(const EigenspaceProfile& profile, long m);

struct CurveRecord {
    CurveAction action;
    EigenspaceProfile profile;
    long genus = 0;
};

CurveRecord make_record(const CurveAction& action);

// True when some eigenvalue zeta_n^s has dimension 1 (of exact order n if primitive_only).
bool has_dim1_eigenspace(const EigenspaceProfile& profile, bool primitive_only);

struct EnumerationRequest {
    GroupSpec group;
    long min_r = 3;
    long max_r = 3;
    bool require_dim1 = true;
    bool primitive_only = true;
};

// Sorted by canonical key, one record per equivalence class.
std::vector<CurveRecord> enumerate_curves(const EnumerationRequest& req);
std::vector<CurveRecord> enumerate_curves_serial(const EnumerationRequest& req);

// The rigid curve D_p with delta_p (n = p) or tau_p (n = 2p).
CurveAction dp_curve(const GroupSpec& group);

}  // namespace k3pq
