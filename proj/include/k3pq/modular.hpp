#pragma once

#include <cstdint>
#include <vector>

namespace k3pq {

// Representative of a mod m in [0, m). m > 0.
long mod(long a, long m);

long gcd(long a, long b);

// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1 or m < 1.
long mod_inverse(long a, long m);

// Units of Z/m in increasing order.
std::vector<long> units(long m);

std::vector<long> divisors(long n);

bool is_prime(long n);

}  // namespace k3pq
