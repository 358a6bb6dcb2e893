#include "k3pq/singularity.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "k3pq/modular.hpp"

namespace k3pq {

std::vector<long> continued_fraction(long n, long q) {
    if (n < 2 || q <= 0 || q >= n || std::gcd(n, q) != 1)
        throw std::invalid_argument("continued_fraction: need 0 < q < n coprime, got " + std::to_string(n) +
                                    "/" + std::to_string(q));
    std::vector<long> out;
    long a = n, b = q;
    while (b != 0) {
        long c = (a + b - 1) / b;  // ceiling
        out.push_back(c);
        long r = c * b - a;
        a = b;
        b = r;
    }
    return out;
}

SingularityInvariants singularity_invariants(long n, long q) {
    SingularityInvariants s;
    s.n = n;
    s.q = q;
    s.chain = continued_fraction(n, q);
    s.q_prime = mod_inverse(q, n);
    long excess = 0;
    for (long b : s.chain) excess += b - 2;
    s.k = static_cast<long>(s.chain.size());
    s.h = Rational(2) - Rational(2 + q + s.q_prime, n) - Rational(excess);
    s.e = Rational(s.k + 1) - Rational(1, n);
    return s;
}

}  // namespace k3pq
