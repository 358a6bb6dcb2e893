#pragma once

#include <utility>
#include <vector>

#include "k3pq/curves.hpp"
#include "k3pq/rational.hpp"

namespace k3pq {

// (C1 x C2) / <g1 x g2^twist>
struct SurfacePair {
    CurveRecord first;
    CurveRecord second;
    long twist = 1;

    long order() const { return first.action.order(); }
    CurveAction glued_second() const { return second.action.twisted(twist); }
    EigenspaceProfile glued_second_profile() const { return second.profile.twisted(twist); }
};

// Geometric genus 1 and irregularity 0 at the given twist.
bool hodge_condition(const EigenspaceProfile& a, const EigenspaceProfile& b_glued);

// One pair per twist giving pg = 1, q = 0.
std::vector<SurfacePair> pair_admissible(const CurveRecord& a, const CurveRecord& b);

struct SingularityType {
    long count = 0;
    long d = 0;
    long q = 0;
    friend auto operator<=>(const SingularityType&, const SingularityType&) = default;
};

// Singular points 1/d(1,q) coming from one pair of branch point classes.
struct SingularityRecord {
    long d = 0;
    long q = 0;
    long count = 0;
    BranchPoint first_class;
    BranchPoint second_class;
};

// Oriented type at a point whose stabilizers have orders h and k with
// rotations theta1, theta2; d = gcd(h, k) must exceed 1.
SingularityType local_singularity(long h, long theta1, long k, long theta2);

std::vector<SingularityRecord> singularity_multiset(const SurfacePair& pair);
// Merged by (d, q), sorted.
std::vector<SingularityType> singularity_types(const std::vector<SingularityRecord>& sings);

struct SurfaceInvariants {
    long g1 = 0;
    long g2 = 0;
    Rational K2;
    Rational euler;
    Rational chi;
    long pg = 0;
    long q = 0;
    long h11 = 0;
    long moduli_dim = 0;
};

struct HodgeNumbers {
    long pg = 0;
    long q = 0;
    long h11 = 0;
};

// Fills g1, g2, K2, euler, chi; throws InvariantViolation unless all are integers.
SurfaceInvariants chern_invariants(const SurfacePair& pair, const std::vector<SingularityRecord>& sings);
HodgeNumbers hodge_numbers(const SurfacePair& pair, const std::vector<SingularityRecord>& sings);
long moduli_dimension(const SurfacePair& pair);
SurfaceInvariants surface_invariants(const SurfacePair& pair, const std::vector<SingularityRecord>& sings);

// Exponent multisets of both factors, minimized over simultaneous twists and swap.
using PairKey = std::pair<std::vector<long>, std::vector<long>>;
PairKey pair_key(const SurfacePair& pair);

struct Candidate {
    SurfacePair pair;
    std::vector<SingularityRecord> singularities;
    SurfaceInvariants invariants;
    bool k3_candidate = false;
    PairKey key;
};

Candidate make_candidate(const SurfacePair& pair);

struct ScanRequest {
    GroupSpec group;
    long t1 = 3;
    long t2 = 3;
    bool primitive_only = true;
};

// Every pg = 1, q = 0 pair of curves with t1 and t2 branch points, one per
// equivalence class, sorted by pair key.
std::vector<Candidate> scan(const ScanRequest& req);
std::vector<Candidate> scan_serial(const ScanRequest& req);

// All branch point counts allowed by the genus bound; n = p only.
std::vector<Candidate> full_scan(const GroupSpec& group);
std::vector<Candidate> full_scan_serial(const GroupSpec& group);

}  // namespace k3pq
