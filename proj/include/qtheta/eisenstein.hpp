#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "qtheta/errors.hpp"

namespace qtheta {

// Arbitrary-precision rational integer. GMP guarantees exactness; nothing in
// the engine ever converts a coefficient to floating point.
using Int = mpz_class;

// An Eisenstein integer a + b*w, where w is a primitive cube root of unity
// (w^2 + w + 1 = 0). This is the coefficient ring for every series in the
// engine: twists by q -> w^j q^{1/3} multiply coefficients by powers of w,
// and the {1, w} basis keeps those twists coefficient-local.
class Eisenstein {
public:
    Eisenstein() : a_(0), b_(0) {}
    Eisenstein(long v) : a_(v), b_(0) {}  // NOLINT: implicit on purpose
    Eisenstein(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {}

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational_integer() const { return b_ == 0; }

    // norm(a + b w) = a^2 - ab + b^2 >= 0, zero only at the origin.
    Int norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
    bool is_unit() const { return norm() == 1; }

    // Complex conjugation, the ring automorphism w -> w^2 = -1 - w.
    Eisenstein conj() const { return Eisenstein(a_ - b_, -b_); }

    Eisenstein operator-() const { return Eisenstein(-a_, -b_); }

    friend Eisenstein operator+(const Eisenstein& u, const Eisenstein& v) {
        return Eisenstein(u.a_ + v.a_, u.b_ + v.b_);
    }
    friend Eisenstein operator-(const Eisenstein& u, const Eisenstein& v) {
        return Eisenstein(u.a_ - v.a_, u.b_ - v.b_);
    }
    // (a1 + b1 w)(a2 + b2 w) with w^2 reduced to -1 - w.
    friend Eisenstein operator*(const Eisenstein& u, const Eisenstein& v) {
        return Eisenstein(u.a_ * v.a_ - u.b_ * v.b_,
                          u.a_ * v.b_ + u.b_ * v.a_ - u.b_ * v.b_);
    }
    Eisenstein& operator+=(const Eisenstein& v) {
        a_ += v.a_;
        b_ += v.b_;
        return *this;
    }
    Eisenstein& operator-=(const Eisenstein& v) {
        a_ -= v.a_;
        b_ -= v.b_;
        return *this;
    }
    Eisenstein& operator*=(const Eisenstein& v) {
        *this = *this * v;
        return *this;
    }

    friend bool operator==(const Eisenstein& u, const Eisenstein& v) {
        return u.a_ == v.a_ && u.b_ == v.b_;
    }
    friend bool operator!=(const Eisenstein& u, const Eisenstein& v) { return !(u == v); }

    // w^(n mod 3); exact period 3 for any integer n, negative included.
    static Eisenstein omega_pow(long long n);

    // Exact quotient u/v in Z[w]; throws NotDivisible if none exists.
    // Computed as u * conj(v) with a per-component divisibility check by
    // norm(v), so no rational intermediates appear.
    static Eisenstein div_exact(const Eisenstein& u, const Eisenstein& v);

    // "a", "-3", "w", "1+2w", "-1-w", ... (decimal, arbitrary precision).
    std::string str() const;

private:
    Int a_, b_;
};

std::ostream& operator<<(std::ostream& os, const Eisenstein& e);

inline Eisenstein omega() { return Eisenstein(Int(0), Int(1)); }

// w - w^2 = 1 + 2w, the element the Ramanujan combinations divide by;
// its square is -3.
inline Eisenstein omega_minus_omega2() { return Eisenstein(Int(1), Int(2)); }

}  // namespace qtheta
