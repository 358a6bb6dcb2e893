#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3pq/rational.hpp"
#include "k3pq/surfaces.hpp"

namespace k3pq {

enum class NodeKind { Central1, Central2, Exceptional };

struct CurveNode {
    long id = 0;
    NodeKind kind = NodeKind::Exceptional;
    long self_int = 0;
    long genus = 0;        // geometric genus
    long arith_genus = 0;  // grows when contractions create singular points
    long base1 = -1;       // branch point index on C1 (Central1, Exceptional)
    long base2 = -1;       // branch point index on C2 (Central2, Exceptional)
    long point = -1;       // singular point index (Exceptional)
    long chain_index = -1; // position from the C1 side (Exceptional)
    long general_fiber1 = 0;  // intersection with a general fiber of the projection to C1/G
    long general_fiber2 = 0;  // intersection with a general fiber of the projection to C2/G
    bool invariant = false;        // mapped to itself by the order-p automorphism
    bool pointwise_fixed = false;
};

struct ContractionEvent {
    long node = 0;
    std::vector<std::pair<long, long>> neighbors;  // (id, multiplicity)
};

struct CurveConfiguration {
    long order = 0;
    long g1 = 0;
    long g2 = 0;
    std::vector<CurveNode> nodes;
    std::vector<std::vector<long>> inter;     // current intersection numbers off the diagonal
    std::vector<std::vector<long>> original;  // intersection numbers on the resolution
    std::vector<bool> alive;
    // Isolated fixed points on the resolution, each recorded by the two curves through it.
    std::vector<std::pair<long, long>> isolated_points;
    // Pullback to the resolution of each current curve, as coefficients on the original nodes.
    std::vector<std::vector<long>> total_transform;
    std::vector<long> exceptional_divisor;  // accumulated over contractions
    std::vector<ContractionEvent> log;
    long K2_current = 0;
    long euler_current = 0;
    long h11_current = 0;

    long intersection(long a, long b) const { return inter[a][b]; }
    std::vector<std::pair<long, long>> neighbors(long id) const;
};

// Self-intersection of a central component meeting strings of the given
// oriented types (q, d); throws std::invalid_argument unless integral.
Rational central_self_intersection(const std::vector<std::pair<long, long>>& strings);

// Generator power c with sigma = id x g2^c of order p.
long automorphism_power(const GroupSpec& group);

CurveConfiguration build_configuration(const Candidate& cand);

struct ContractionResult {
    CurveConfiguration config;
    long count = 0;
    bool undetermined = false;
    std::string reason;
};

ContractionResult contract_to_minimal(CurveConfiguration config, const Rational& K2);

enum class VerdictStatus { K3, NotK3, Undetermined };

struct FixedLocus {
    long n_points = 0;
    std::optional<long> top_genus;
    long num_curves = 0;
    long euler = 0;  // topological Euler number of the fixed set
    bool verified = true;
    std::string unverified_reason;
};

struct K3Verdict {
    VerdictStatus status = VerdictStatus::Undetermined;
    long contractions = 0;
    std::vector<std::string> reasons;  // failed conditions
};

K3Verdict k3_verdict(const Candidate& cand, const ContractionResult& result);

FixedLocus fixed_locus(const ContractionResult& result);

// 2 + trace of the automorphism on H^2 of the minimal model, computed exactly
// from the eigenspace profiles and the invariant curves of the configuration.
long topological_lefschetz_number(const Candidate& cand, const ContractionResult& result);

struct K3Report {
    K3Verdict verdict;
    std::optional<FixedLocus> fixed;
};

K3Report run_k3_pipeline(const Candidate& cand);

// Rays of the resolution of the singularity with weights (i/d, j/d), from
// the C1-side central (1,0) to the C2-side central (0,1).
std::vector<std::pair<Rational, Rational>> resolution_rays(long d, long i, long j);

// Whether the divisor of ray v is pointwise fixed by the torus element t.
bool ray_fixed(const std::pair<Rational, Rational>& v, const std::pair<Rational, Rational>& t, long d, long i, long j);

}  // namespace k3pq
