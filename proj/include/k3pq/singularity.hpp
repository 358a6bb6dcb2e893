#pragma once

#include <vector>

#include "k3pq/rational.hpp"

namespace k3pq {

// Hirzebruch-Jung expansion n/q = [b_1, ..., b_r], every b_i >= 2.
// Requires 0 < q < n and gcd(n, q) = 1, otherwise std::invalid_argument.
std::vector<long> continued_fraction(long n, long q);

// Correction terms of a cyclic quotient singularity 1/n(1,q):
// h enters K^2, e enters the topological Euler number,
// k is the number of exceptional curves (contribution to h^{1,1}).
struct SingularityInvariants {
    long n = 0;
    long q = 0;
    long q_prime = 0;  // q * q' = 1 mod n
    std::vector<long> chain;
    Rational h;
    Rational e;
    long k = 0;
};

SingularityInvariants singularity_invariants(long n, long q);

}  // namespace k3pq
