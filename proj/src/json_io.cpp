#include "concise/json_io.hpp"

#include <fstream>

namespace concise {

namespace {

Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
        if (j.is_string()) return rational_from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what(), where);
    }
    throw SchemaError("expected an integer or a rational string", where);
}

Zp zp_from_json(const json& j, long long p, const std::string& where) {
    try {
        if (j.is_number_integer()) return Zp(j.get<long long>(), p);
        if (j.is_string()) return zp_from_string(j.get<std::string>(), p);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what(), where);
    }
    throw SchemaError("expected an integer scalar", where);
}

template <class K, class FromJson>
Poly<K> poly_from_json(const json& j, const std::string& where, FromJson&& leaf) {
    if (!j.is_array()) throw SchemaError("expected an array of [exp, coeff] pairs", where);
    Poly<K> p;
    for (size_t i = 0; i < j.size(); ++i) {
        const json& term = j[i];
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
            throw SchemaError("expected [exp, coeff]", where + "/" + std::to_string(i));
        int e = term[0].get<int>();
        if (e < 0) throw SchemaError("negative exponent", where + "/" + std::to_string(i));
        K c = leaf(term[1], where + "/" + std::to_string(i) + "/1");
        p = p + Poly<K>::monomial(c, e);
    }
    return p;
}

template <class K, class ToJson>
json poly_to_json(const Poly<K>& p, ToJson&& leaf) {
    json arr = json::array();
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (is_zero(p.c[i])) continue;
        arr.push_back(json::array({static_cast<int>(i), leaf(p.c[i])}));
    }
    return arr;
}

template <class K, class FromJson>
RatFunc<K> series_from_json(const json& j, const std::string& where, const K& one, FromJson&& leaf) {
    if (!j.is_object()) {
        // plain scalar shorthand
        K c = leaf(j, where);
        return RatFunc<K>(c);
    }
    if (!j.contains("num")) throw SchemaError("series needs a num field", where);
    Poly<K> num = poly_from_json<K>(j["num"], where + "/num", leaf);
    Poly<K> den(one);
    if (j.contains("den")) den = poly_from_json<K>(j["den"], where + "/den", leaf);
    long long n = 1;
    if (j.contains("N")) {
        if (!j["N"].is_number_integer() || j["N"].get<long long>() < 1)
            throw SchemaError("N must be a positive integer", where + "/N");
        n = j["N"].get<long long>();
    }
    if (den.zero()) throw SchemaError("zero denominator", where + "/den");
    return RatFunc<K>(std::move(num), std::move(den), n);
}

} // namespace

json serialize_series(const RatFunc<Rational>& x) {
    json j;
    j["num"] = poly_to_json(x.num, [](const Rational& c) { return c.get_str(); });
    j["den"] = x.den.zero() ? json::array({json::array({0, "1"})})
                            : poly_to_json(x.den, [](const Rational& c) { return c.get_str(); });
    j["N"] = x.N;
    return j;
}

json serialize_series(const RatFunc<Zp>& x) {
    json j;
    j["num"] = poly_to_json(x.num, [](const Zp& c) { return std::to_string(c.v); });
    j["den"] = x.den.zero() ? json::array({json::array({0, "1"})})
                            : poly_to_json(x.den, [](const Zp& c) { return std::to_string(c.v); });
    j["N"] = x.N;
    return j;
}

RatFunc<Rational> parse_series_q(const json& j, const std::string& where) {
    return series_from_json<Rational>(j, where, Rational(1), rational_from_json);
}

RatFunc<Zp> parse_series_fp(const json& j, long long p, const std::string& where) {
    return series_from_json<Zp>(j, where, Zp(1, p),
                                [p](const json& leaf, const std::string& w) {
                                    return zp_from_json(leaf, p, w);
                                });
}

TensorDocument parse_tensor(const json& doc) {
    if (!doc.is_object()) throw SchemaError("tensor document must be an object", "/");
    if (!doc.contains("dims") || !doc["dims"].is_array())
        throw SchemaError("dims array required", "/dims");
    std::vector<int> dims;
    for (size_t i = 0; i < doc["dims"].size(); ++i) {
        const json& d = doc["dims"][i];
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw SchemaError("dims must be positive integers", "/dims/" + std::to_string(i));
        dims.push_back(d.get<int>());
    }
    if (dims.empty()) throw SchemaError("at least one coordinate required", "/dims");
    std::vector<int> format(dims.size(), 1);
    if (doc.contains("format")) {
        if (!doc["format"].is_array() || doc["format"].size() != dims.size())
            throw SchemaError("format must match dims in length", "/format");
        for (size_t i = 0; i < format.size(); ++i) {
            if (!doc["format"][i].is_number_integer() || doc["format"][i].get<int>() < 1)
                throw SchemaError("format entries must be positive", "/format/" + std::to_string(i));
            format[i] = doc["format"][i].get<int>();
        }
    }
    // a lone coordinate is allowed only as a symmetric power (a polynomial)
    if (dims.size() == 1 && format[0] < 2)
        throw SchemaError("at least two coordinates required", "/dims");
    ScalarField field = ScalarField::rationals();
    if (doc.contains("field")) {
        const json& f = doc["field"];
        if (f.is_string() && f.get<std::string>() == "Q") field = ScalarField::rationals();
        else if (f.is_object() && f.contains("Fp")) {
            if (!f["Fp"].is_number_integer()) throw SchemaError("Fp must be an integer", "/field/Fp");
            field = ScalarField::prime(f["Fp"].get<long long>());
        } else
            throw SchemaError("field must be \"Q\" or {\"Fp\": p}", "/field");
    }
    bool series = false;
    if (doc.contains("entries"))
        for (const json& e : doc["entries"])
            if (e.contains("value") && e["value"].is_object()) series = true;

    auto fill = [&](auto& tensor, auto&& leaf) {
        std::set<std::vector<int>> used;
        if (!doc.contains("entries")) return;
        if (!doc["entries"].is_array()) throw SchemaError("entries must be an array", "/entries");
        for (size_t i = 0; i < doc["entries"].size(); ++i) {
            const json& e = doc["entries"][i];
            std::string where = "/entries/" + std::to_string(i);
            if (!e.is_object() || !e.contains("index") || !e.contains("value"))
                throw SchemaError("entry needs index and value", where);
            std::vector<int> idx;
            for (const json& x : e["index"]) {
                if (!x.is_number_integer()) throw SchemaError("index must be integers", where + "/index");
                idx.push_back(x.get<int>());
            }
            auto sd = tensor.slot_dims();
            if (idx.size() != sd.size()) throw SchemaError("index arity mismatch", where + "/index");
            for (size_t k = 0; k < idx.size(); ++k)
                if (idx[k] < 0 || idx[k] >= sd[k])
                    throw SchemaError("index out of range", where + "/index");
            if (!used.insert(idx).second) throw SchemaError("duplicate index", where + "/index");
            tensor.at(idx) = leaf(e["value"], where + "/value");
        }
    };

    TensorDocument out;
    out.field = field;
    if (field.kind == ScalarField::Kind::Rationals && !series) {
        Tensor<Rational> t(dims, format);
        fill(t, rational_from_json);
        if (!t.format_symmetry_holds()) throw SchemaError("entries violate the declared symmetry", "/entries");
        out.tensor = std::move(t);
    } else if (field.kind == ScalarField::Kind::Rationals) {
        Tensor<RatFunc<Rational>> t(dims, format);
        fill(t, [](const json& v, const std::string& w) { return parse_series_q(v, w); });
        if (!t.format_symmetry_holds()) throw SchemaError("entries violate the declared symmetry", "/entries");
        out.tensor = std::move(t);
    } else if (!series) {
        Tensor<Zp> t(dims, format);
        fill(t, [&](const json& v, const std::string& w) { return zp_from_json(v, field.p, w); });
        if (!t.format_symmetry_holds()) throw SchemaError("entries violate the declared symmetry", "/entries");
        out.tensor = std::move(t);
    } else {
        Tensor<RatFunc<Zp>> t(dims, format);
        fill(t, [&](const json& v, const std::string& w) { return parse_series_fp(v, field.p, w); });
        if (!t.format_symmetry_holds()) throw SchemaError("entries violate the declared symmetry", "/entries");
        out.tensor = std::move(t);
    }
    return out;
}

namespace {

template <class R, class Leaf>
json tensor_to_json(const Tensor<R>& t, const ScalarField& field, Leaf&& leaf) {
    json doc;
    doc["dims"] = t.dims;
    bool nontrivial_format = false;
    for (int nu : t.format) nontrivial_format = nontrivial_format || nu != 1;
    if (nontrivial_format) doc["format"] = t.format;
    if (field.kind == ScalarField::Kind::Rationals) doc["field"] = "Q";
    else doc["field"] = json{{"Fp", field.p}};
    json entries = json::array();
    detail::for_each_index(t, [&](const std::vector<int>& idx) {
        const R& v = t.at(idx);
        if (is_zero(v)) return;
        entries.push_back(json{{"index", idx}, {"value", leaf(v)}});
    });
    doc["entries"] = std::move(entries);
    return doc;
}

} // namespace

json serialize_tensor(const TensorDocument& doc) {
    return std::visit(
        [&](const auto& t) -> json {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, Tensor<Rational>>) {
                return tensor_to_json(t, doc.field, [](const Rational& v) { return json(v.get_str()); });
            } else if constexpr (std::is_same_v<T, Tensor<Zp>>) {
                return tensor_to_json(t, doc.field, [](const Zp& v) { return json(v.v); });
            } else if constexpr (std::is_same_v<T, Tensor<RatFunc<Rational>>>) {
                return tensor_to_json(t, doc.field,
                                      [](const RatFunc<Rational>& v) { return serialize_series(v); });
            } else {
                return tensor_to_json(t, doc.field,
                                      [](const RatFunc<Zp>& v) { return serialize_series(v); });
            }
        },
        doc.tensor);
}

json serialize_matrix(const Matrix<Rational>& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m(r, c).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json serialize_matrix(const Matrix<RatFunc<Rational>>& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(serialize_series(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix<Rational> parse_matrix_q(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw SchemaError("matrix must be an array of rows", where);
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Matrix<Rational> m(rows, cols, Rational(0));
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw SchemaError("ragged matrix", where);
        for (int c = 0; c < cols; ++c)
            m(r, c) = rational_from_json(j[r][c], where + "/" + std::to_string(r) + "/" + std::to_string(c));
    }
    return m;
}

Matrix<RatFunc<Rational>> parse_matrix_qt(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw SchemaError("matrix must be an array of rows", where);
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Matrix<RatFunc<Rational>> m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw SchemaError("ragged matrix", where);
        for (int c = 0; c < cols; ++c)
            m(r, c) = parse_series_q(j[r][c], where + "/" + std::to_string(r) + "/" + std::to_string(c));
    }
    return m;
}

json serialize_certificate(const UnresCertificate<Rational>& cert) {
    json j;
    TensorDocument in{ScalarField::rationals(), cert.input_t};
    TensorDocument un{ScalarField::rationals(), cert.unrestriction_t};
    TensorDocument lim{ScalarField::rationals(), cert.limit};
    j["input"] = serialize_tensor(in);
    std::vector<int> order1;
    for (int x : cert.order) order1.push_back(x + 1);
    j["order"] = order1;
    j["unrestriction_t"] = serialize_tensor(un);
    j["limit"] = serialize_tensor(lim);
    json maps = json::array();
    for (const auto& m : cert.maps_t) maps.push_back(serialize_matrix(m));
    j["maps_t"] = std::move(maps);
    json mapsl = json::array();
    for (const auto& m : cert.maps_limit) mapsl.push_back(serialize_matrix(m));
    j["maps_limit"] = std::move(mapsl);
    j["minor_choices"] = cert.minor_choices;
    return j;
}

FiniteAlgebra<Rational> parse_algebra_json(const json& j) {
    if (j.is_string()) return parse_algebra(j.get<std::string>());
    if (!j.is_object()) throw SchemaError("algebra must be an object or a presentation string", "/");
    if (j.contains("presentation")) return parse_algebra(j["presentation"].get<std::string>());
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw SchemaError("algebra needs a dim", "/dim");
    int m = j["dim"].get<int>();
    if (!j.contains("mult") || !j["mult"].is_array() ||
        j["mult"].size() != static_cast<size_t>(m) * m * m)
        throw SchemaError("mult must be a flat array of dim^3 scalars", "/mult");
    std::vector<Rational> cs;
    for (size_t i = 0; i < j["mult"].size(); ++i)
        cs.push_back(rational_from_json(j["mult"][i], "/mult/" + std::to_string(i)));
    std::vector<Rational> unit(m, Rational(0));
    if (j.contains("unit")) {
        if (!j["unit"].is_array() || j["unit"].size() != static_cast<size_t>(m))
            throw SchemaError("unit must have dim entries", "/unit");
        for (int i = 0; i < m; ++i) unit[i] = rational_from_json(j["unit"][i], "/unit/" + std::to_string(i));
    } else
        unit[0] = Rational(1);
    try {
        return FiniteAlgebra<Rational>(m, std::move(cs), std::move(unit));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what(), "/mult");
    }
}

json serialize_algebra(const FiniteAlgebra<Rational>& alg) {
    json j;
    j["dim"] = alg.dim;
    json mult = json::array();
    for (const auto& c : alg.structure) mult.push_back(c.get_str());
    j["mult"] = std::move(mult);
    json unit = json::array();
    for (const auto& c : alg.unit) unit.push_back(c.get_str());
    j["unit"] = std::move(unit);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace concise
