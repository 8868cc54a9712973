#pragma once

#include <variant>

#include <json.hpp>

#include "concise/algebra.hpp"
#include "concise/unres_segre.hpp"

namespace concise {

using nlohmann::json;

struct SchemaError : std::runtime_error {
    std::string pointer;
    SchemaError(const std::string& what, std::string where)
        : std::runtime_error(what + " at " + where), pointer(std::move(where)) {}
};

using AnyTensor = std::variant<Tensor<Rational>, Tensor<Zp>, Tensor<RatFunc<Rational>>, Tensor<RatFunc<Zp>>>;

struct TensorDocument {
    ScalarField field;
    AnyTensor tensor;

    bool has_series_entries() const {
        return std::holds_alternative<Tensor<RatFunc<Rational>>>(tensor) ||
               std::holds_alternative<Tensor<RatFunc<Zp>>>(tensor);
    }
};

TensorDocument parse_tensor(const json& doc);
json serialize_tensor(const TensorDocument& doc);

json serialize_series(const RatFunc<Rational>& x);
json serialize_series(const RatFunc<Zp>& x);
RatFunc<Rational> parse_series_q(const json& j, const std::string& where);
RatFunc<Zp> parse_series_fp(const json& j, long long p, const std::string& where);

json serialize_matrix(const Matrix<Rational>& m);
json serialize_matrix(const Matrix<RatFunc<Rational>>& m);
Matrix<Rational> parse_matrix_q(const json& j, const std::string& where);
Matrix<RatFunc<Rational>> parse_matrix_qt(const json& j, const std::string& where);

json serialize_certificate(const UnresCertificate<Rational>& cert);

FiniteAlgebra<Rational> parse_algebra_json(const json& j);
json serialize_algebra(const FiniteAlgebra<Rational>& alg);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

} // namespace concise
