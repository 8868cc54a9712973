#include "concise/algebra.hpp"

#include <cctype>
#include <map>
#include <set>

namespace concise {

namespace {

struct Term {
    Rational coef;
    std::vector<int> exp;
};

struct Parser {
    const std::string& s;
    size_t pos = 0;
    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument("algebra presentation: expected '" + std::string(1, c) +
                                        "' near position " + std::to_string(pos));
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw std::invalid_argument("algebra presentation: identifier expected");
        return s.substr(start, pos - start);
    }
    long long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("algebra presentation: integer expected");
        return std::stoll(s.substr(start, pos - start));
    }
};

// grlex comparison on exponent vectors
bool grlex_less(const std::vector<int>& a, const std::vector<int>& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a < b;
}

struct RewriteRule {
    std::vector<int> lhs;   // monomial being rewritten
    Rational coef;          // rhs coefficient (0 for monomial rules)
    std::vector<int> rhs;
};

bool divides(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// reduce c * x^e to a combination of standard monomials; returns {} if it
// reduces to zero
std::map<std::vector<int>, Rational> reduce(const std::vector<RewriteRule>& rules,
                                            std::vector<int> e, Rational c) {
    std::map<std::vector<int>, Rational> out;
    std::vector<std::pair<std::vector<int>, Rational>> work{{std::move(e), std::move(c)}};
    while (!work.empty()) {
        auto [exp, coef] = work.back();
        work.pop_back();
        if (is_zero(coef)) continue;
        bool rewritten = false;
        for (const auto& rule : rules) {
            if (!divides(rule.lhs, exp)) continue;
            if (is_zero(rule.coef)) { rewritten = true; break; } // monomial rule: term dies
            std::vector<int> e2 = exp;
            for (size_t i = 0; i < e2.size(); ++i) e2[i] = e2[i] - rule.lhs[i] + rule.rhs[i];
            work.emplace_back(std::move(e2), coef * rule.coef);
            rewritten = true;
            break;
        }
        if (rewritten) continue;
        out[exp] += coef;
        if (is_zero(out[exp])) out.erase(exp);
    }
    return out;
}

} // namespace

FiniteAlgebra<Rational> parse_algebra(const std::string& presentation) {
    Parser p(presentation);
    std::string field = p.ident();
    if (field != "k" && field != "Q")
        throw std::invalid_argument("algebra presentation must start with k[...] or Q[...]");
    p.expect('[');
    std::vector<std::string> vars;
    for (;;) {
        vars.push_back(p.ident());
        if (!p.eat(',')) break;
    }
    p.expect(']');
    p.expect('/');
    p.expect('(');
    const int nv = static_cast<int>(vars.size());
    auto var_index = [&](const std::string& name) {
        for (int i = 0; i < nv; ++i)
            if (vars[i] == name) return i;
        throw std::invalid_argument("algebra presentation: unknown variable " + name);
    };

    auto parse_monomial = [&](Term& t) {
        // [int] ['*' var[^int]]* or var[^int]['*'...]
        p.skip_ws();
        bool any = false;
        for (;;) {
            p.skip_ws();
            if (p.pos < p.s.size() && std::isdigit(static_cast<unsigned char>(p.s[p.pos]))) {
                long long num = p.integer();
                if (p.eat('/')) {
                    long long den = p.integer();
                    t.coef *= Rational(static_cast<long>(num), static_cast<long>(den));
                } else
                    t.coef *= Rational(static_cast<long>(num));
                any = true;
            } else if (p.pos < p.s.size() &&
                       std::isalpha(static_cast<unsigned char>(p.s[p.pos]))) {
                std::string name = p.ident();
                int e = 1;
                if (p.eat('^')) e = static_cast<int>(p.integer());
                t.exp[var_index(name)] += e;
                any = true;
            } else
                break;
            if (!p.eat('*')) break;
        }
        if (!any) throw std::invalid_argument("algebra presentation: empty term");
    };

    std::vector<RewriteRule> rules;
    for (;;) {
        // one generator: term (('+'|'-') term)*
        std::vector<Term> terms;
        bool neg = p.eat('-');
        Term t0{Rational(neg ? -1 : 1), std::vector<int>(nv, 0)};
        parse_monomial(t0);
        terms.push_back(std::move(t0));
        for (;;) {
            p.skip_ws();
            if (p.eat('+')) {
                Term t{Rational(1), std::vector<int>(nv, 0)};
                parse_monomial(t);
                terms.push_back(std::move(t));
            } else if (p.eat('-')) {
                Term t{Rational(-1), std::vector<int>(nv, 0)};
                parse_monomial(t);
                terms.push_back(std::move(t));
            } else
                break;
        }
        if (terms.size() > 2)
            throw std::invalid_argument("only monomial and binomial generators are supported");
        RewriteRule rule;
        if (terms.size() == 1) {
            rule.lhs = terms[0].exp;
            rule.coef = Rational(0);
            rule.rhs.assign(nv, 0);
        } else {
            const Term* big = &terms[0];
            const Term* small = &terms[1];
            if (grlex_less(big->exp, small->exp)) std::swap(big, small);
            if (big->exp == small->exp)
                throw std::invalid_argument("binomial generator with equal monomials");
            rule.lhs = big->exp;
            rule.coef = -small->coef / big->coef;
            rule.rhs = small->exp;
        }
        rules.push_back(std::move(rule));
        if (!p.eat(',')) break;
    }
    p.expect(')');

    // standard monomials: not divisible by any rule lhs; breadth-first by degree
    std::vector<std::vector<int>> basis;
    std::vector<std::vector<int>> frontier{std::vector<int>(nv, 0)};
    std::set<std::vector<int>> seen{frontier[0]};
    const size_t cap = 4096;
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& e : frontier) {
            bool standard = true;
            for (const auto& rule : rules)
                if (divides(rule.lhs, e)) { standard = false; break; }
            if (!standard) continue;
            basis.push_back(e);
            if (basis.size() > cap)
                throw std::invalid_argument("quotient is not finite-dimensional (or exceeds the cap)");
            for (int i = 0; i < nv; ++i) {
                std::vector<int> e2 = e;
                e2[i] += 1;
                if (seen.insert(e2).second) next.push_back(std::move(e2));
            }
        }
        frontier = std::move(next);
    }
    std::sort(basis.begin(), basis.end(), grlex_less);
    const int m = static_cast<int>(basis.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < m; ++i) index[basis[i]] = i;

    std::vector<Rational> cs(static_cast<size_t>(m) * m * m, Rational(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<int> prod(nv);
            for (int v = 0; v < nv; ++v) prod[v] = basis[i][v] + basis[j][v];
            auto red = reduce(rules, prod, Rational(1));
            for (const auto& [e, c] : red) {
                auto it = index.find(e);
                if (it == index.end())
                    throw std::invalid_argument(
                        "reduction left the monomial basis; generators are not Groebner-complete");
                cs[(static_cast<size_t>(i) * m + j) * m + it->second] = c;
            }
        }
    std::vector<Rational> unit(m, Rational(0));
    unit[index.at(std::vector<int>(nv, 0))] = Rational(1);
    return FiniteAlgebra<Rational>(m, std::move(cs), std::move(unit));
}

} // namespace concise
