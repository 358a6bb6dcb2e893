#include "k3pq/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "k3pq/modular.hpp"

namespace k3pq {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// a = q*b + r
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

// Reduce modulo x^p - 1 and then modulo the p-th cyclotomic polynomial.
std::vector<Rational> reduce(long p, const Poly& a) {
    std::vector<Rational> r(p, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i % p] += a[i];
    Rational top = r[p - 1];
    r.pop_back();
    for (auto& c : r) c -= top;
    return r;
}

}  // namespace

Cyclotomic::Cyclotomic(long p) : p_(p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("Cyclotomic: p must be an odd prime");
    c_.assign(p - 1, Rational(0));
}

Cyclotomic::Cyclotomic(long p, const Rational& c) : Cyclotomic(p) { c_[0] = c; }

Cyclotomic Cyclotomic::zeta(long p, long e) {
    Cyclotomic z(p);
    Poly a(mod(e, p) + 1, Rational(0));
    a.back() = Rational(1);
    z.c_ = reduce(p, a);
    return z;
}

Cyclotomic Cyclotomic::root_of_unity(long p, long n, long e) {
    if (n == p) return zeta(p, e);
    if (n != 2 * p) throw std::invalid_argument("root_of_unity: order must be p or 2p");
    long k = mod(e, n);
    Cyclotomic z = zeta(p, k * ((p + 1) / 2));
    return (k % 2 == 1) ? -z : z;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

void Cyclotomic::check_same(const Cyclotomic& o) const {
    if (o.p_ != p_) throw std::invalid_argument("Cyclotomic: mismatched fields");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    check_same(o);
    c_ = reduce(p_, mul(c_, o.c_));
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& c : c_) c *= r;
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic z(*this);
    for (auto& c : z.c_) c = -c;
    return z;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
    Poly phi(p_, Rational(1));
    Poly a = c_;
    trim(a);
    // Invariant: s_i * a == r_i (mod phi)
    Poly r0 = phi, r1 = a, s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        Poly s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant because phi is irreducible.
    if (r0.size() != 1) throw std::logic_error("Cyclotomic: gcd with cyclotomic polynomial is not constant");
    Rational inv_c = Rational(1) / r0[0];
    for (auto& c : s0) c *= inv_c;
    Cyclotomic z(p_);
    z.c_ = reduce(p_, s0);
    return z;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i];
        if (i > 0) os << "*z^" << i;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& z) { return os << z.str(); }

}  // namespace k3pq
