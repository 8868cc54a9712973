#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "concise/cli.hpp"
#include "concise/examples.hpp"
#include "concise/json_io.hpp"
#include "concise/repro.hpp"

using namespace concise;

namespace {

int run(int (*fn)(int, char**), std::vector<std::string> args) {
    std::vector<char*> argv;
    static std::vector<std::string> keep;
    keep = std::move(args);
    for (auto& s : keep) argv.push_back(s.data());
    return fn(static_cast<int>(argv.size()), argv.data());
}

std::string fixture(const std::string& name) {
    return std::string(CONCISE_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("tensor documents round trip") {
    TensorDocument doc{ScalarField::rationals(), order_matters_degeneration().tensor};
    json j = serialize_tensor(doc);
    TensorDocument back = parse_tensor(j);
    REQUIRE(std::holds_alternative<Tensor<RatFunc<Rational>>>(back.tensor));
    CHECK(std::get<Tensor<RatFunc<Rational>>>(back.tensor) == order_matters_degeneration().tensor);
    // canonical re-serialisation is stable
    CHECK(serialize_tensor(back) == j);
    // constant rational tensor
    TensorDocument cdoc{ScalarField::rationals(), wedge_tensor()};
    json cj = serialize_tensor(cdoc);
    TensorDocument cback = parse_tensor(cj);
    CHECK(std::get<Tensor<Rational>>(cback.tensor) == wedge_tensor());
    // prime field tensor
    Tensor<Zp> zt({2, 2});
    zt.at({0, 1}) = Zp(4, 5);
    TensorDocument zdoc{ScalarField::prime(5), zt};
    TensorDocument zback = parse_tensor(serialize_tensor(zdoc));
    CHECK(std::get<Tensor<Zp>>(zback.tensor) == zt);
}

TEST_CASE("schema errors carry JSON pointer paths") {
    json bad = {{"dims", {2, 2, 2}},
                {"entries", {{{"index", {0, 0, 5}}, {"value", "1"}}}}};
    try {
        parse_tensor(bad);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.pointer == "/entries/0/index");
    }
    json dup = {{"dims", {2, 2}},
                {"entries",
                 {{{"index", {0, 0}}, {"value", "1"}}, {{"index", {0, 0}}, {"value", "2"}}}}};
    CHECK_THROWS_AS(parse_tensor(dup), SchemaError);
    json malformed = {{"dims", {2, 2}}, {"entries", {{{"index", {0, 0}}, {"value", "x/y"}}}}};
    CHECK_THROWS_AS(parse_tensor(malformed), SchemaError);
    // empty entries list gives the zero tensor
    json zero = {{"dims", {2, 2}}, {"entries", json::array()}};
    CHECK(std::get<Tensor<Rational>>(parse_tensor(zero).tensor).is_zero_tensor());
}

TEST_CASE("unres segre CLI on the shipped order_matters fixture") {
    std::string out = "/tmp/concise_cli_cert.json";
    CHECK(run(cli_unres, {"unres", "segre", "--input", fixture("order_matters.json"),
                          "--order", "3,1,2", "--out", out}) == 0);
    json j = load_json_file(out);
    CHECK(j["restriction_identity"] == true);
    CHECK(j["limit_concise"] == json::array({true, true, true}));
    TensorDocument lim = parse_tensor(j["limit"]);
    CHECK(std::get<Tensor<Rational>>(lim.tensor) == pencil_kxk_limit());
    std::remove(out.c_str());
}

TEST_CASE("analyze CLI reports the wedge unrestriction") {
    std::string out = "/tmp/concise_cli_analyze.json";
    CHECK(run(cli_analyze, {"analyze", "--input", fixture("wedge_unres.json"), "--out", out}) == 0);
    json j = load_json_file(out);
    CHECK(j["concise"] == json::array({true, true, true}));
    CHECK(j["centroid_dim"] == 5);
    CHECK(j["minimal_border_rank"] == true);
    std::remove(out.c_str());
}

TEST_CASE("sigma2 CLI: motive and small census") {
    std::string out = "/tmp/concise_cli_sigma2.json";
    CHECK(run(cli_sigma2, {"sigma2", "motive", "-d", "4", "--via", "bb", "--out", out}) == 0);
    json j = load_json_file(out);
    CHECK(j["euler_characteristic"] == 208);
    CHECK(run(cli_sigma2, {"sigma2", "count", "-d", "3", "-p", "2", "--out", out}) == 0);
    j = load_json_file(out);
    CHECK(j["sigma2_points"] == 255);
    CHECK(j["sigma2_matches"] == true);
    CHECK(j["csigma2_matches"] == true);
    std::remove(out.c_str());
}

TEST_CASE("algebra CLI quotient flow") {
    std::string apath = "/tmp/concise_cli_algebra.json";
    save_json_file(apath, json{{"presentation", "k[e]/(e^3)"}});
    std::string out = "/tmp/concise_cli_quot.json";
    CHECK(run(cli_algebra, {"algebra", "quotient", "--input", apath, "--eps", "0,1,0",
                            "--out", out}) == 0);
    json j = load_json_file(out);
    CHECK(j["quotient"]["dim"] == 2);
    CHECK(run(cli_algebra, {"algebra", "gorenstein", "--input", apath, "--out", out}) == 0);
    j = load_json_file(out);
    CHECK(j["gorenstein"] == true);
    std::remove(apath.c_str());
    std::remove(out.c_str());
}

TEST_CASE("repro CLI exit code reflects the assertions") {
    CHECK(run(cli_repro, {"repro", "order_matters"}) == 0);
    CHECK(run(cli_repro, {"repro", "definitely_not_an_example"}) == 2);
}

TEST_CASE("every shipped reproduction passes") {
    for (const auto& name : repro_names()) {
        ReproReport rep = run_reproduction(name);
        INFO(rep.to_json().dump(2));
        CHECK(rep.pass());
    }
}
