#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "k3pq/rational.hpp"

namespace k3pq {

// Element of Q(zeta_p) for an odd prime p, stored in the power basis
// 1, zeta, ..., zeta^(p-2). zeta_{2p} is represented as -zeta_p^((p+1)/2).
class Cyclotomic {
public:
    explicit Cyclotomic(long p);
    Cyclotomic(long p, const Rational& c);

    // zeta_p^e
    static Cyclotomic zeta(long p, long e);
    // zeta_n^e for n in {p, 2p}
    static Cyclotomic root_of_unity(long p, long n, long e);

    long prime() const { return p_; }
    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const;
    // Throws std::domain_error on zero.
    Cyclotomic inverse() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& b) { return a *= b; }
    friend Cyclotomic operator*(const Rational& b, Cyclotomic a) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    Cyclotomic operator-() const;
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    std::string str() const;

private:
    void check_same(const Cyclotomic& o) const;
    long p_;
    std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& z);

}  // namespace k3pq
