#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>

#include "concise/poly.hpp"

namespace concise {

struct NegativeValuation : std::runtime_error {
    NegativeValuation() : std::runtime_error("limit at t=0 of an element with negative valuation") {}
};

// Exact rational number a/b used for valuations; +infinity encoded as nullopt
// at the call sites that need it.
struct Valuation {
    long long num = 0;
    long long den = 1;

    Valuation() = default;
    Valuation(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::logic_error("valuation denominator zero");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend auto operator<=>(const Valuation& a, const Valuation& b) {
        return a.num * b.den <=> b.num * a.den;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        return Valuation(a.num * b.den + b.num * a.den, a.den * b.den);
    }
};

// Element of k(t^(1/N)): a reduced fraction of polynomials in s with the
// convention t = s^N. Values are canonical: gcd(num, den) = 1, den monic,
// and N minimal for the exponents that actually occur.
template <class K>
struct RatFunc {
    Poly<K> num;
    Poly<K> den;          // monic, nonzero (empty den means 1 for the zero value)
    long long N = 1;      // exponent denominator: t = s^N

    // Invariant: the zero element has empty num and empty den; every nonzero
    // element has a nonzero monic den.
    RatFunc() = default;
    explicit RatFunc(K k) : num(Poly<K>(std::move(k))) {
        if (!num.zero()) den = Poly<K>(one_like(num.c.back()));
    }
    RatFunc(Poly<K> n, Poly<K> d, long long N_ = 1) : num(std::move(n)), den(std::move(d)), N(N_) {
        reduce();
    }

    struct reduced_tag {};
    // fraction already known to be gcd-reduced
    RatFunc(Poly<K> n, Poly<K> d, long long N_, reduced_tag)
        : num(std::move(n)), den(std::move(d)), N(N_) {
        if (num.zero()) {
            den.c.clear();
            N = 1;
            return;
        }
        if (den.zero()) throw std::logic_error("zero denominator");
        normalize_monic_and_N();
    }

    void normalize_monic_and_N() {
        K lead = den.leading();
        if (!(lead == one_like(lead))) {
            for (auto& x : num.c) x = x / lead;
            for (auto& x : den.c) x = x / lead;
        }
        if (N > 1) {
            long long g2 = N;
            auto fold = [&](const Poly<K>& p) {
                for (size_t i = 0; i < p.c.size() && g2 > 1; ++i)
                    if (!is_zero(p.c[i])) g2 = std::gcd(g2, static_cast<long long>(i));
            };
            fold(num);
            fold(den);
            if (g2 > 1) {
                num = num.compress(static_cast<int>(g2));
                den = den.compress(static_cast<int>(g2));
                N /= g2;
            }
        }
    }

    static RatFunc scalar(K k) { return RatFunc(std::move(k)); }
    // t^(a/b): exponent denominator b, numerator exponent a (may be negative).
    static RatFunc t_power(const K& one, long long a, long long b = 1) {
        RatFunc r;
        r.N = b;
        if (a >= 0) {
            r.num = Poly<K>::monomial(one, static_cast<int>(a));
            r.den = Poly<K>(one);
        } else {
            r.num = Poly<K>(one);
            r.den = Poly<K>::monomial(one, static_cast<int>(-a));
        }
        r.reduce();
        return r;
    }

    bool zero() const { return num.zero(); }

    void reduce() {
        if (num.zero()) {
            den.c.clear();
            N = 1;
            return;
        }
        if (den.zero()) throw std::logic_error("zero denominator");
        Poly<K> g = Poly<K>::gcd(num, den);
        if (g.degree() > 0) {
            num = Poly<K>::divmod(num, g).first;
            den = Poly<K>::divmod(den, g).first;
        }
        normalize_monic_and_N();
    }

    K one_of() const {
        if (!num.zero()) return one_like(num.c[num.ord().value()]);
        if (!den.zero()) return one_like(den.leading());
        return K{}; // unknown context; only reachable for default zero over Zp
    }

    // stretch without re-canonicalising (used to put two elements over a
    // common exponent denominator before arithmetic)
    void stretch_raw(int m) {
        if (m == 1) return;
        num = num.stretch(m);
        den = den.zero() ? den : den.stretch(m);
        N *= m;
    }

    // Rescale exponents: multiply the exponent denominator by m (t = s^(N*m)).
    // The value is unchanged; reducedness and monicity survive the stretch.
    RatFunc rescaled(int m) const {
        RatFunc r = *this;
        r.stretch_raw(m);
        return r;
    }

    static void unify(RatFunc& a, RatFunc& b) {
        if (a.N == b.N) return;
        long long l = std::lcm(a.N, b.N);
        a.stretch_raw(static_cast<int>(l / a.N));
        b.stretch_raw(static_cast<int>(l / b.N));
    }

    // Valuation at t = 0 (in t units); nullopt encodes +infinity (the zero element).
    std::optional<Valuation> valuation() const {
        if (zero()) return std::nullopt;
        long long on = num.ord().value();
        long long od = den.zero() ? 0 : den.ord().value();
        return Valuation(on - od, N);
    }

    bool nonnegative_valuation() const {
        auto v = valuation();
        return !v || *v >= Valuation(0, 1);
    }

    // Constant term of the expansion at t = 0; requires valuation >= 0.
    K limit0() const {
        if (zero()) return K{};
        auto v = valuation().value();
        if (v < Valuation(0, 1)) throw NegativeValuation();
        // reduced form: if valuation >= 0 then ord(den) = 0
        return num.at(0) / den.at(0);
    }

    // Sums and products use gcd-reduced cross terms so the result needs at
    // most one small gcd instead of a full reduction of the raw fraction.
    friend RatFunc operator+(RatFunc a, RatFunc b) {
        if (a.zero()) return b;
        if (b.zero()) return a;
        unify(a, b);
        if (a.den == b.den) {
            RatFunc r;
            r.N = a.N;
            r.num = a.num + b.num;
            if (r.num.zero()) return RatFunc{};
            r.den = a.den;
            Poly<K> g = Poly<K>::gcd(r.num, r.den);
            if (g.degree() > 0) {
                r.num = Poly<K>::divmod(r.num, g).first;
                r.den = Poly<K>::divmod(r.den, g).first;
            }
            r.normalize_monic_and_N();
            return r;
        }
        Poly<K> g = Poly<K>::gcd(a.den, b.den);
        if (g.degree() == 0)
            return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den, a.N, reduced_tag{});
        Poly<K> bd = Poly<K>::divmod(b.den, g).first;
        Poly<K> ad = Poly<K>::divmod(a.den, g).first;
        Poly<K> num = a.num * bd + b.num * ad;
        if (num.zero()) return RatFunc{};
        Poly<K> g2 = Poly<K>::gcd(num, g);
        Poly<K> den = ad * b.den;
        if (g2.degree() > 0) {
            num = Poly<K>::divmod(num, g2).first;
            den = Poly<K>::divmod(den, g2).first;
        }
        RatFunc r;
        r.num = std::move(num);
        r.den = std::move(den);
        r.N = a.N;
        r.normalize_monic_and_N();
        return r;
    }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return std::move(a) + (-b); }
    RatFunc operator-() const { RatFunc r = *this; r.num = -r.num; return r; }
    friend RatFunc operator*(RatFunc a, RatFunc b) {
        if (a.zero() || b.zero()) return RatFunc{};
        unify(a, b);
        Poly<K> g1 = Poly<K>::gcd(a.num, b.den);
        if (g1.degree() > 0) {
            a.num = Poly<K>::divmod(a.num, g1).first;
            b.den = Poly<K>::divmod(b.den, g1).first;
        }
        Poly<K> g2 = Poly<K>::gcd(b.num, a.den);
        if (g2.degree() > 0) {
            b.num = Poly<K>::divmod(b.num, g2).first;
            a.den = Poly<K>::divmod(a.den, g2).first;
        }
        return RatFunc(a.num * b.num, a.den * b.den, a.N, reduced_tag{});
    }
    friend RatFunc operator/(RatFunc a, RatFunc b) {
        if (b.zero()) throw std::domain_error("division by zero rational function");
        if (a.zero()) return RatFunc{};
        unify(a, b);
        Poly<K> g1 = Poly<K>::gcd(a.num, b.num);
        if (g1.degree() > 0) {
            a.num = Poly<K>::divmod(a.num, g1).first;
            b.num = Poly<K>::divmod(b.num, g1).first;
        }
        Poly<K> g2 = Poly<K>::gcd(b.den, a.den);
        if (g2.degree() > 0) {
            b.den = Poly<K>::divmod(b.den, g2).first;
            a.den = Poly<K>::divmod(a.den, g2).first;
        }
        return RatFunc(a.num * b.den, a.den * b.num, a.N, reduced_tag{});
    }
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        if (a.zero() || b.zero()) return a.zero() && b.zero();
        if (a.N != b.N) { // compare values over a common exponent denominator
            RatFunc x = a, y = b;
            unify(x, y);
            return x.num == y.num && x.den == y.den;
        }
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
};

template <class K>
inline bool is_zero(const RatFunc<K>& r) { return r.zero(); }
template <class K>
inline RatFunc<K> zero_like(const RatFunc<K>&) { return RatFunc<K>{}; }
template <class K>
inline RatFunc<K> one_like(const RatFunc<K>& r) { return RatFunc<K>(r.one_of()); }
template <class K>
inline long characteristic(const RatFunc<K>& r) { return characteristic(r.one_of()); }

// Entrywise helpers shared by tensors over series entries.
template <class K>
std::optional<Valuation> valuation(const RatFunc<K>& x) { return x.valuation(); }

} // namespace concise
