#include "concise/pencil.hpp"

#include <sstream>

namespace concise {

namespace {

std::string poly_string(const Poly<Rational>& p, const std::string& var) {
    if (p.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (is_zero(p.c[i])) continue;
        Rational c = p.c[i];
        std::string sign = sgn(c) < 0 ? "-" : (first ? "" : "+");
        Rational abs = sgn(c) < 0 ? Rational(-c) : c;
        os << sign;
        if (i == 0 || !(abs == Rational(1))) os << abs.get_str();
        if (i > 0) {
            if (!(abs == Rational(1))) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

template <class R, class Fmt>
std::string pencil_impl(const Tensor<R>& t, Fmt&& fmt) {
    if (t.order() != 3 || t.format != std::vector<int>(3, 1))
        throw ShapeMismatch("pencil rendering expects an order-3 Segre tensor");
    std::ostringstream os;
    for (int j = 0; j < t.dims[1]; ++j) {
        os << "[ ";
        for (int k = 0; k < t.dims[2]; ++k) {
            std::string cell;
            for (int i = 0; i < t.dims[0]; ++i) {
                const R& v = t.at({i, j, k});
                if (is_zero(v)) continue;
                std::string coef = fmt(v);
                std::string term;
                if (coef == "1") term = "x" + std::to_string(i + 1);
                else if (coef == "-1") term = "-x" + std::to_string(i + 1);
                else term = "(" + coef + ")*x" + std::to_string(i + 1);
                if (!cell.empty() && term[0] != '-') cell += "+";
                cell += term;
            }
            if (cell.empty()) cell = "0";
            os << cell;
            if (k + 1 < t.dims[2]) os << ", ";
        }
        os << " ]\n";
    }
    return os.str();
}

} // namespace

std::string to_string(const RatFunc<Rational>& x) {
    if (x.zero()) return "0";
    std::string var = x.N == 1 ? "t" : ("t^(1/" + std::to_string(x.N) + ")");
    std::string num = poly_string(x.num, var);
    if (x.den.degree() == 0) return num;
    return "(" + num + ")/(" + poly_string(x.den, var) + ")";
}

std::string pencil_string(const Tensor<Rational>& t) {
    return pencil_impl(t, [](const Rational& v) { return v.get_str(); });
}

std::string pencil_string(const Tensor<RatFunc<Rational>>& t) {
    return pencil_impl(t, [](const RatFunc<Rational>& v) { return to_string(v); });
}

} // namespace concise
