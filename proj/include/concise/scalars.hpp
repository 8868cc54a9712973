#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace concise {

// Exact base scalars: arbitrary-precision rationals and prime fields Z/p.
// No floating point anywhere in this library.

using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline long characteristic(const Rational&) { return 0; }

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Element of F_p with runtime modulus. A default-constructed value is the
// zero of a yet-unknown field; it picks up the modulus from the first
// operand it meets.
struct Zp {
    long long v = 0;
    long long p = 0;

    Zp() = default;
    Zp(long long value, long long prime) : v(value), p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("modulus is not prime");
        normalize();
    }

    void normalize() {
        if (p) {
            v %= p;
            if (v < 0) v += p;
        }
    }

    static long long common(long long a, long long b) {
        if (a && b && a != b) throw std::logic_error("mixed F_p moduli");
        return a ? a : b;
    }

    friend Zp operator+(const Zp& a, const Zp& b) {
        long long p = common(a.p, b.p);
        Zp r; r.p = p; r.v = a.v + b.v; r.normalize(); return r;
    }
    friend Zp operator-(const Zp& a, const Zp& b) {
        long long p = common(a.p, b.p);
        Zp r; r.p = p; r.v = a.v - b.v; r.normalize(); return r;
    }
    friend Zp operator*(const Zp& a, const Zp& b) {
        long long p = common(a.p, b.p);
        Zp r; r.p = p; r.v = a.v * b.v; r.normalize(); return r;
    }
    Zp operator-() const { Zp r; r.p = p; r.v = -v; r.normalize(); return r; }

    Zp inverse() const {
        if (v == 0) throw std::domain_error("division by zero in F_p");
        // extended Euclid
        long long a = v, m = p, x0 = 1, x1 = 0;
        while (m) {
            long long q = a / m;
            a -= q * m; std::swap(a, m);
            x0 -= q * x1; std::swap(x0, x1);
        }
        Zp r; r.p = p; r.v = x0; r.normalize(); return r;
    }
    friend Zp operator/(const Zp& a, const Zp& b) {
        Zp bi = b; bi.p = common(a.p, b.p);
        return a * bi.inverse();
    }
    Zp& operator+=(const Zp& o) { *this = *this + o; return *this; }
    Zp& operator-=(const Zp& o) { *this = *this - o; return *this; }
    Zp& operator*=(const Zp& o) { *this = *this * o; return *this; }
    Zp& operator/=(const Zp& o) { *this = *this / o; return *this; }

    friend bool operator==(const Zp& a, const Zp& b) {
        common(a.p, b.p);
        return a.v == b.v;
    }
    friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }
};

inline bool is_zero(const Zp& z) { return z.v == 0; }
inline Zp zero_like(const Zp& z) { Zp r; r.p = z.p; return r; }
inline Zp one_like(const Zp& z) { Zp r; r.p = z.p; r.v = z.p ? 1 : 0; if (!z.p) throw std::logic_error("one of unknown F_p"); return r; }
inline long characteristic(const Zp& z) { return static_cast<long>(z.p); }
inline std::string to_string(const Zp& z) { return std::to_string(z.v); }

inline Zp zp_from_string(const std::string& s, long long p) {
    size_t pos = 0;
    long long val = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed F_p scalar: '" + s + "'");
    return Zp(val, p);
}

// Field descriptor as it appears in tensor documents.
struct ScalarField {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    long long p = 0;

    static ScalarField rationals() { return {}; }
    static ScalarField prime(long long p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField modulus must be prime");
        ScalarField f; f.kind = Kind::PrimeField; f.p = p; return f;
    }
    bool operator==(const ScalarField&) const = default;
};

} // namespace concise
