#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "concise/scalars.hpp"

namespace concise {

// Dense univariate polynomial over an exact field K, used as the building
// block for rational functions in the deformation parameter.
template <class K>
struct Poly {
    std::vector<K> c; // c[i] is the coefficient of s^i; no trailing zeros

    Poly() = default;
    explicit Poly(K k) {
        if (!is_zero(k)) c.push_back(std::move(k));
    }

    static Poly monomial(K k, int e) {
        Poly p;
        if (!is_zero(k)) {
            p.c.assign(e + 1, zero_like(k));
            p.c[e] = std::move(k);
        }
        return p;
    }

    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    // Order of vanishing at s = 0; nullopt for the zero polynomial.
    std::optional<int> ord() const {
        for (size_t i = 0; i < c.size(); ++i)
            if (!is_zero(c[i])) return static_cast<int>(i);
        return std::nullopt;
    }

    K at(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size()))
            return c.empty() ? K{} : zero_like(c.front());
        return c[i];
    }

    K leading() const { assert(!zero()); return c.back(); }

    K eval0() const { return c.empty() ? K{} : c.front(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), zero_like(b.c.back()));
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), zero_like(b.c.back()));
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly{};
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.c.front()));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const K& k, const Poly& b) { return Poly(k) * b; }
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (!(a.c[i] == b.c[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Quotient and remainder by a nonzero divisor.
    static std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
        assert(!b.zero());
        Poly q;
        if (a.degree() >= b.degree())
            q.c.assign(a.degree() - b.degree() + 1, zero_like(b.leading()));
        while (!a.zero() && a.degree() >= b.degree()) {
            K f = a.leading() / b.leading();
            int sh = a.degree() - b.degree();
            q.c[sh] = f;
            for (size_t i = 0; i < b.c.size(); ++i)
                a.c[i + sh] -= f * b.c[i];
            a.trim();
        }
        q.trim();
        return {q, a};
    }

    static Poly gcd(Poly a, Poly b) {
        if (a.zero() || b.zero()) {
            Poly r = a.zero() ? std::move(b) : std::move(a);
            if (!r.zero()) {
                K lead = r.leading();
                for (auto& x : r.c) x = x / lead;
            }
            return r;
        }
        if (a.degree() == 0 || b.degree() == 0) return Poly(one_like(a.leading()));
        if constexpr (std::is_same_v<K, Rational>) return gcd_primitive_prs(a, b);
        else {
            while (!b.zero()) {
                auto [q, r] = divmod(a, b);
                (void)q;
                a = std::move(b);
                b = std::move(r);
            }
            K lead = a.leading();
            for (auto& x : a.c) x = x / lead;
            return a;
        }
    }

    // Primitive pseudo-remainder sequence over Z[x]; avoids the coefficient
    // blowup of plain Euclid on rational coefficients.
    static Poly gcd_primitive_prs(const Poly& pa, const Poly& pb) requires std::is_same_v<K, Rational> {
        auto to_int = [](const Poly& p) {
            mpz_class lcm_den(1);
            for (const auto& x : p.c) lcm_den = ::lcm(lcm_den, x.get_den());
            std::vector<mpz_class> v;
            v.reserve(p.c.size());
            for (const auto& x : p.c) {
                mpq_class q = x * Rational(lcm_den);
                v.push_back(q.get_num());
            }
            return v;
        };
        auto content = [](const std::vector<mpz_class>& v) {
            mpz_class g(0);
            for (const auto& x : v) g = ::gcd(g, x);
            return g;
        };
        auto primitive = [&](std::vector<mpz_class>& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
            if (v.empty()) return;
            mpz_class g = content(v);
            if (g != 0 && g != 1)
                for (auto& x : v) x /= g;
        };
        // pseudo-remainder: lc(b)^(da-db+1) * a mod b
        auto prem = [](std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
            int db = static_cast<int>(b.size()) - 1;
            const mpz_class& lb = b.back();
            while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
                int da = static_cast<int>(a.size()) - 1;
                mpz_class la = a.back();
                for (auto& x : a) x *= lb;
                int sh = da - db;
                for (int i = 0; i <= db; ++i) a[i + sh] -= la * b[i];
                while (!a.empty() && a.back() == 0) a.pop_back();
            }
            return a;
        };
        std::vector<mpz_class> a = to_int(pa), b = to_int(pb);
        primitive(a);
        primitive(b);
        // modular coprimality fast path: if the images modulo a prime that
        // preserves both leading coefficients are coprime, so are a and b
        if (coprime_mod_p(a, b)) return Poly(Rational(1));
        if (static_cast<int>(a.size()) < static_cast<int>(b.size())) std::swap(a, b);
        while (!b.empty()) {
            std::vector<mpz_class> r = prem(a, b);
            primitive(r);
            a = std::move(b);
            b = std::move(r);
        }
        Poly g;
        g.c.reserve(a.size());
        mpz_class lead = a.back();
        for (const auto& x : a) g.c.push_back(Rational(mpq_class(x) / mpq_class(lead)));
        g.trim();
        return g;
    }

    static bool coprime_mod_p(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        static const unsigned long primes[] = {2147483647ul, 2147483629ul, 2147483587ul};
        for (unsigned long p : primes) {
            if (mpz_fdiv_ui(a.back().get_mpz_t(), p) == 0) continue;
            if (mpz_fdiv_ui(b.back().get_mpz_t(), p) == 0) continue;
            auto mod_image = [&](const std::vector<mpz_class>& v) {
                std::vector<unsigned long long> w(v.size());
                for (size_t i = 0; i < v.size(); ++i) {
                    unsigned long r = mpz_fdiv_ui(v[i].get_mpz_t(), p);
                    w[i] = r;
                }
                while (!w.empty() && w.back() == 0) w.pop_back();
                return w;
            };
            auto mulmod = [&](unsigned long long x, unsigned long long y) {
                return static_cast<unsigned long long>(
                    static_cast<unsigned __int128>(x) * y % p);
            };
            auto powmod = [&](unsigned long long x, unsigned long long e) {
                unsigned long long r = 1;
                while (e) {
                    if (e & 1) r = mulmod(r, x);
                    x = mulmod(x, x);
                    e >>= 1;
                }
                return r;
            };
            std::vector<unsigned long long> x = mod_image(a), y = mod_image(b);
            while (!y.empty()) {
                // x mod y over F_p
                unsigned long long inv = powmod(y.back(), p - 2);
                while (x.size() >= y.size()) {
                    unsigned long long f = mulmod(x.back(), inv);
                    size_t sh = x.size() - y.size();
                    for (size_t i = 0; i < y.size(); ++i) {
                        unsigned long long sub = mulmod(f, y[i]);
                        x[i + sh] = (x[i + sh] + p - sub) % p;
                    }
                    while (!x.empty() && x.back() == 0) x.pop_back();
                    if (x.empty()) break;
                }
                std::swap(x, y);
            }
            // gcd image is x; coprime iff the image is a nonzero constant
            return x.size() == 1;
        }
        return false; // no usable prime; fall back to the exact sequence
    }

    Poly derivative() const {
        Poly r;
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1, zero_like(c.front()));
        for (size_t i = 1; i < c.size(); ++i) {
            K k = c[i];
            for (size_t j = 1; j < i; ++j) k += c[i];
            r.c[i - 1] = k;
        }
        r.trim();
        return r;
    }

    // Substitute s -> s^m (exponent stretch).
    Poly stretch(int m) const {
        assert(m >= 1);
        if (zero() || m == 1) return *this;
        Poly r;
        r.c.assign((c.size() - 1) * m + 1, zero_like(c.front()));
        for (size_t i = 0; i < c.size(); ++i) r.c[i * m] = c[i];
        return r;
    }

    // Inverse of stretch: substitute s^m -> s, requiring all exponents divisible by m.
    Poly compress(int m) const {
        assert(m >= 1);
        if (zero() || m == 1) return *this;
        Poly r;
        r.c.assign((c.size() - 1) / m + 1, zero_like(c.front()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (is_zero(c[i])) continue;
            assert(i % m == 0);
            r.c[i / m] = c[i];
        }
        return r;
    }

    // Divide by s^k (all low coefficients must vanish).
    Poly shift_down(int k) const {
        if (zero()) return *this;
        assert(ord().value_or(0) >= k);
        Poly r;
        r.c.assign(c.begin() + k, c.end());
        return r;
    }
};

template <class K>
inline bool is_zero(const Poly<K>& p) { return p.zero(); }
template <class K>
inline Poly<K> zero_like(const Poly<K>&) { return Poly<K>{}; }

} // namespace concise
