#include "k3pq/modular.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace k3pq {

long mod(long a, long m) {
    if (m <= 0) throw std::domain_error("mod: modulus must be positive");
    long r = a % m;
    return r < 0 ? r + m : r;
}

long gcd(long a, long b) { return std::gcd(a, b); }

long mod_inverse(long a, long m) {
    if (m < 1) throw std::domain_error("mod_inverse: modulus must be positive");
    long r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        long t = r0 / r1;
        long r = r0 - t * r1;
        r0 = r1; r1 = r;
        long s = s0 - t * s1;
        s0 = s1; s1 = s;
    }
    if (r0 != 1 && m != 1)
        throw std::domain_error("mod_inverse: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return mod(s0, m);
}

std::vector<long> units(long m) {
    std::vector<long> out;
    for (long a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1) out.push_back(a);
    if (m == 1) out.push_back(0);
    return out;
}

std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace k3pq
