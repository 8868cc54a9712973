#include "concise/cli.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "concise/analysis.hpp"
#include "concise/census.hpp"
#include "concise/json_io.hpp"
#include "concise/pencil.hpp"
#include "concise/repro.hpp"
#include "concise/unres_veronese.hpp"

namespace concise {

namespace {

std::vector<int> parse_order(const std::string& s, int d) {
    std::vector<int> order;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok) - 1);
    if (static_cast<int>(order.size()) != d)
        throw std::invalid_argument("order must list every coordinate once");
    return order;
}

Degeneration<Rational> as_degeneration(const TensorDocument& doc) {
    if (std::holds_alternative<Tensor<RatFunc<Rational>>>(doc.tensor))
        return Degeneration<Rational>(std::get<Tensor<RatFunc<Rational>>>(doc.tensor));
    if (std::holds_alternative<Tensor<Rational>>(doc.tensor)) {
        const auto& t = std::get<Tensor<Rational>>(doc.tensor);
        Tensor<RatFunc<Rational>> out;
        out.dims = t.dims;
        out.format = t.format;
        for (const auto& x : t.data) out.data.emplace_back(x);
        return Degeneration<Rational>(std::move(out));
    }
    throw std::invalid_argument("this command needs a rational tensor document");
}

Tensor<Rational> as_rational_tensor(const TensorDocument& doc) {
    if (std::holds_alternative<Tensor<Rational>>(doc.tensor))
        return std::get<Tensor<Rational>>(doc.tensor);
    throw std::invalid_argument("this command needs a constant tensor over Q");
}

Functional<Rational> parse_functional(const std::string& s) {
    Functional<Rational> eps;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) eps.push_back(rational_from_string(tok));
    return eps;
}

json certificate_report(const UnresCertificate<Rational>& cert) {
    json j = serialize_certificate(cert);
    j["restriction_identity"] = certificate_restriction_identity(cert);
    std::vector<bool> conc;
    for (int i = 0; i < cert.limit.order(); ++i) conc.push_back(is_concise(cert.limit, i));
    j["limit_concise"] = conc;
    if (cert.limit.order() == 3 && cert.limit.format == std::vector<int>{1, 1, 1})
        j["limit_pencil"] = pencil_string(cert.limit);
    return j;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int cli_unres(int argc, char** argv) {
    CLI::App app{"unrestriction algorithms for tensor degenerations"};
    app.require_subcommand(1);

    std::string input, out, order_str, format_str;
    bool alternate = false;

    auto* segre = app.add_subcommand("segre", "Segre-format unrestriction via minimal-valuation minors");
    segre->add_option("--input", input, "tensor document")->required();
    segre->add_option("--order", order_str, "coordinate order, e.g. 1,2,3");
    segre->add_option("--out", out, "certificate output path");
    segre->add_flag("--alternate-minors", alternate, "prefer a non-canonical minimal minor");

    auto* veronese = app.add_subcommand("veronese", "symmetric unrestriction of a polynomial degeneration");
    veronese->add_option("--input", input, "symmetric tensor document")->required();
    veronese->add_option("--format", format_str, "symmetric degree (single group)");
    veronese->add_option("--out", out, "output path");

    auto* partial = app.add_subcommand("partial", "partially symmetric unrestriction");
    partial->add_option("--input", input, "tensor document")->required();
    partial->add_option("--format", format_str, "expected format, e.g. 2,1,1");
    partial->add_option("--order", order_str, "coordinate order");
    partial->add_option("--out", out, "certificate output path");

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() {
        TensorDocument doc = parse_tensor(load_json_file(input));
        if (segre->parsed()) {
            Degeneration<Rational> d = as_degeneration(doc);
            std::vector<int> order;
            if (!order_str.empty()) order = parse_order(order_str, d.tensor.order());
            UnresStepOptions opts;
            opts.prefer_alternate = alternate;
            auto cert = unres_full(d, order, opts);
            json rep = certificate_report(cert);
            if (!out.empty()) save_json_file(out, rep);
            else std::cout << rep.dump(2) << "\n";
            return 0;
        }
        if (veronese->parsed()) {
            Degeneration<Rational> d = as_degeneration(doc);
            if (d.tensor.order() != 1)
                throw std::invalid_argument("veronese expects a single symmetric group");
            int nu = d.tensor.format[0];
            if (!format_str.empty() && std::stoi(format_str) != nu)
                throw std::invalid_argument("--format disagrees with the document format");
            int m = d.tensor.dims[0];
            MPoly<RatFunc<Rational>> f = symmetric_tensor_to_poly(d.tensor, RatFunc<Rational>(Rational(1)));
            auto res = unrestrict_symmetric(f, m, nu);
            json rep;
            Tensor<Rational> lt = poly_to_symmetric_tensor(res.limit, m, nu, Rational(1));
            TensorDocument ld{ScalarField::rationals(), lt};
            rep["limit"] = serialize_tensor(ld);
            rep["phi_t"] = serialize_matrix(res.phi);
            if (!out.empty()) save_json_file(out, rep);
            else std::cout << rep.dump(2) << "\n";
            return 0;
        }
        // partial
        Degeneration<Rational> d = as_degeneration(doc);
        if (!format_str.empty()) {
            std::vector<int> fmt;
            std::stringstream ss(format_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) fmt.push_back(std::stoi(tok));
            if (fmt != d.tensor.format)
                throw std::invalid_argument("--format disagrees with the document format");
        }
        std::vector<int> order;
        if (!order_str.empty()) order = parse_order(order_str, d.tensor.order());
        auto cert = unrestrict_partial(d, order);
        json rep = serialize_certificate(cert);
        rep["restriction_identity"] = certificate_restriction_identity(cert);
        std::vector<bool> conc;
        for (int i = 0; i < cert.limit.order(); ++i) conc.push_back(is_concise(cert.limit, i));
        rep["limit_concise"] = conc;
        if (!out.empty()) save_json_file(out, rep);
        else std::cout << rep.dump(2) << "\n";
        return 0;
    });
}

int cli_analyze(int argc, char** argv) {
    CLI::App app{"border-rank diagnostics for a concise tensor"};
    std::string input, out;
    app.add_option("--input", input, "tensor document")->required();
    app.add_option("--out", out, "report output path");
    CLI11_PARSE(app, argc, argv);

    return guarded([&]() {
        Tensor<Rational> t = as_rational_tensor(parse_tensor(load_json_file(input)));
        json rep;
        std::vector<bool> conc;
        for (int i = 0; i < t.order(); ++i) conc.push_back(is_concise(t, i));
        rep["concise"] = conc;
        bool all_concise = true;
        for (bool b : conc) all_concise = all_concise && b;
        bool square = true;
        for (int x : t.dims) square = square && x == t.dims[0];
        if (all_concise && square) {
            Centroid<Rational> cen = centroid(t);
            rep["centroid_dim"] = cen.dim;
            // nilpotents exist iff the trace form of the centroid algebra is degenerate
            Matrix<Rational> tf(cen.dim, cen.dim, Rational(0));
            for (int i = 0; i < cen.dim; ++i)
                for (int j = 0; j < cen.dim; ++j) {
                    auto prod = cen.algebra.multiply(cen.algebra.basis_vector(i),
                                                     cen.algebra.basis_vector(j));
                    Matrix<Rational> mm = cen.algebra.mult_matrix(prod);
                    Rational tr(0);
                    for (int k = 0; k < cen.dim; ++k) tr += mm(k, k);
                    tf(i, j) = tr;
                }
            rep["centroid_nilpotent"] = rank_gauss(tf) < cen.dim;
            const int m = t.dims[0];
            auto report = minimal_border_rank_report(t);
            if (report.decided) rep["minimal_border_rank"] = report.minimal;
            else {
                rep["centroid_abundant"] = report.centroid_abundant;
                rep["minimal_border_rank"] = nullptr;
                rep["note"] = "m > 5: centroid abundance is reported as a necessary condition only";
            }
            if (cen.dim == m) {
                std::vector<bool> onegen;
                bool all = true;
                for (int i = 0; i < t.order(); ++i) {
                    bool g = one_generic_witness(t, cen, i).has_value();
                    onegen.push_back(g);
                    all = all && g;
                }
                rep["one_generic"] = onegen;
                if (all) {
                    auto rec = recover_structure(t);
                    rep["recovered_algebra"] = serialize_algebra(rec.algebra);
                    json epsj = json::array();
                    for (const auto& c : rec.eps) epsj.push_back(c.get_str());
                    rep["recovered_eps"] = std::move(epsj);
                }
            }
        }
        if (!out.empty()) save_json_file(out, rep);
        else std::cout << rep.dump(2) << "\n";
        return 0;
    });
}

int cli_algebra(int argc, char** argv) {
    CLI::App app{"finite commutative algebras by structure constants"};
    app.require_subcommand(1);
    std::string input, eps_str, out;
    int order = 3;

    auto* mult = app.add_subcommand("mult", "iterated multiplication tensor");
    mult->add_option("--input", input, "algebra document or presentation")->required();
    mult->add_option("--order", order, "tensor order d");
    mult->add_option("--out", out, "output path");

    auto* eval = app.add_subcommand("eval", "evaluation tensor of (A, eps)");
    eval->add_option("--input", input)->required();
    eval->add_option("--eps", eps_str, "functional coordinates, e.g. 0,0,1")->required();
    eval->add_option("--order", order, "tensor order d");
    eval->add_option("--out", out, "output path");

    auto* gor = app.add_subcommand("gorenstein", "decide Gorenstein and emit a dual generator");
    gor->add_option("--input", input)->required();
    gor->add_option("--out", out, "output path");

    auto* quot = app.add_subcommand("quotient", "Gorenstein quotient by a functional");
    quot->add_option("--input", input)->required();
    quot->add_option("--eps", eps_str)->required();
    quot->add_option("--out", out, "output path");

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() {
        json aj;
        try {
            aj = load_json_file(input);
        } catch (const std::exception&) {
            aj = json(input); // allow a presentation string directly
        }
        FiniteAlgebra<Rational> alg = parse_algebra_json(aj);
        json rep;
        if (mult->parsed()) {
            Tensor<Rational> t = multiplication_tensor(alg, order);
            TensorDocument doc{ScalarField::rationals(), t};
            rep = serialize_tensor(doc);
        } else if (eval->parsed()) {
            Tensor<Rational> t = evaluation_tensor(alg, parse_functional(eps_str), order);
            TensorDocument doc{ScalarField::rationals(), t};
            rep = serialize_tensor(doc);
        } else if (gor->parsed()) {
            auto w = is_gorenstein(alg);
            rep["gorenstein"] = w.has_value();
            if (w) {
                json epsj = json::array();
                for (const auto& c : *w) epsj.push_back(c.get_str());
                rep["dual_generator"] = std::move(epsj);
            }
        } else {
            auto q = gorenstein_quotient(alg, parse_functional(eps_str));
            rep["quotient"] = serialize_algebra(q.quotient);
            json epsj = json::array();
            for (const auto& c : q.eps) epsj.push_back(c.get_str());
            rep["eps"] = std::move(epsj);
            rep["projection"] = serialize_matrix(q.projection);
        }
        if (!out.empty()) save_json_file(out, rep);
        else std::cout << rep.dump(2) << "\n";
        return 0;
    });
}

int cli_cactus(int argc, char** argv) {
    CLI::App app{"cactus-rank certificates from regular restrictions"};
    app.require_subcommand(1);
    std::string algebra_path, eps_str, maps_path, input, out;
    int order = 3;

    auto* build = app.add_subcommand("build", "restrict an evaluation tensor along regular maps");
    build->add_option("--algebra", algebra_path)->required();
    build->add_option("--eps", eps_str)->required();
    build->add_option("--maps", maps_path, "JSON array of matrices phi_i")->required();
    build->add_option("--order", order, "tensor order d");
    build->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "verify a certificate against a tensor");
    verify->add_option("--algebra", algebra_path)->required();
    verify->add_option("--eps", eps_str)->required();
    verify->add_option("--maps", maps_path)->required();
    verify->add_option("--input", input, "tensor document to certify")->required();
    verify->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() {
        FiniteAlgebra<Rational> alg = parse_algebra_json(load_json_file(algebra_path));
        CactusCertificate<Rational> cert;
        cert.algebra = alg;
        cert.eps = parse_functional(eps_str);
        json mj = load_json_file(maps_path);
        for (size_t i = 0; i < mj.size(); ++i)
            cert.maps.push_back(parse_matrix_q(mj[i], "/" + std::to_string(i)));
        json rep;
        if (build->parsed()) {
            Tensor<Rational> t = build_cactus_tensor(cert, order);
            TensorDocument doc{ScalarField::rationals(), t};
            rep = serialize_tensor(doc);
            rep["cactus_rank_bound"] = alg.dim;
        } else {
            Tensor<Rational> t = as_rational_tensor(parse_tensor(load_json_file(input)));
            auto v = verify_cactus_certificate(t, cert);
            rep["matches"] = v.matches;
            rep["regular"] = v.regular;
            rep["cactus_rank_bound"] = v.cactus_rank_bound;
            if (!(v.matches && v.regular)) {
                if (!out.empty()) save_json_file(out, rep);
                else std::cout << rep.dump(2) << "\n";
                return 1;
            }
        }
        if (!out.empty()) save_json_file(out, rep);
        else std::cout << rep.dump(2) << "\n";
        return 0;
    });
}

int cli_sigma2(int argc, char** argv) {
    CLI::App app{"second concise secant: fixed points, motives, finite-field census"};
    app.require_subcommand(1);
    int d = 4;
    long long p = 2;
    int threads = 0;
    bool serial = false, allow_large = false;
    std::string via = "formula", input, out;

    auto* fixed = app.add_subcommand("fixed-points", "torus fixed points");
    fixed->add_option("-d,--factors", d, "number of tensor factors")->required();
    fixed->add_option("--out", out);

    auto* motive = app.add_subcommand("motive", "motive polynomial of the concise secant");
    motive->add_option("-d,--factors", d)->required();
    motive->add_option("--via", via, "bb or formula");
    motive->add_option("--out", out);

    auto* count = app.add_subcommand("count", "finite-field point census");
    count->add_option("-d,--factors", d)->required();
    count->add_option("-p,--prime", p)->required();
    count->add_option("--threads", threads, "scan thread count");
    count->add_flag("--serial", serial, "use the serial reference scan");
    count->add_flag("--allow-large", allow_large, "lift the desk-scale guard");
    count->add_option("--out", out);

    auto* classify = app.add_subcommand("classify", "normal form of a border rank <= 2 tensor");
    classify->add_option("--input", input)->required();
    classify->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    return guarded([&]() {
        json rep;
        if (fixed->parsed()) {
            auto pts = enumerate_fixed_points(d);
            rep["d"] = d;
            rep["count"] = pts.size();
            rep["count_formula"] = fixed_point_count_formula(d);
            json arr = json::array();
            for (const auto& fp : pts) {
                json e;
                std::string base;
                for (int i = 0; i < d; ++i) base += (fp.base & (1u << i)) ? 'y' : 'x';
                e["base"] = base;
                e["height"] = fp.height;
                if (fp.height == 1) {
                    std::vector<int> one_based;
                    for (int i : fp.I) one_based.push_back(i + 1);
                    e["I"] = one_based;
                } else {
                    e["j"] = fp.j + 1;
                    e["type"] = fp.type;
                }
                arr.push_back(std::move(e));
            }
            rep["fixed_points"] = std::move(arr);
        } else if (motive->parsed()) {
            MotivePoly mp = via == "bb" ? bb_motive(d) : csigma2_motive_formula(d);
            rep["d"] = d;
            rep["via"] = via;
            rep["csigma2"] = mp.c;
            rep["sigma2"] = sigma2_motive_formula(d).c;
            rep["euler_characteristic"] = mp.eval(1);
        } else if (count->parsed()) {
            CensusOptions opts;
            opts.threads = threads;
            opts.allow_large = allow_large;
            CensusResult res = serial ? census_scan_serial(d, p, opts) : census_scan(d, p, opts);
            rep["d"] = d;
            rep["p"] = p;
            rep["sigma2_points"] = res.sigma2;
            rep["csigma2_points"] = res.csigma2;
            rep["strata"] = {{"rank_one", res.rank_one},
                             {"concise_two", res.concise_two},
                             {"concise_three_plus", res.concise_three_plus}};
            rep["sigma2_formula"] = sigma2_motive_formula(d).eval(p);
            rep["csigma2_formula"] = csigma2_motive_formula(d).eval(p);
            rep["sigma2_matches"] = rep["sigma2_points"] == rep["sigma2_formula"];
            rep["csigma2_matches"] = rep["csigma2_points"] == rep["csigma2_formula"];
            rep["concise_on_exactly_one_seen"] = res.saw_exactly_one;
            if (!rep["sigma2_matches"].get<bool>() || !rep["csigma2_matches"].get<bool>())
                rep["discrepancy"] = "census disagrees with the motive evaluation; see strata";
        } else {
            Tensor<Rational> t = as_rational_tensor(parse_tensor(load_json_file(input)));
            auto nf = classify_rank2(t);
            rep["border_rank_at_most_2"] = nf.has_value();
            if (nf) {
                rep["kind"] = nf->kind == NormalForm2::Kind::B ? "B" : "C";
                std::vector<int> one_based;
                for (int i : nf->I) one_based.push_back(i + 1);
                rep["concise_on"] = one_based;
                rep["discriminant"] = nf->discriminant.get_str();
                rep["split_over_base"] = nf->split_over_base;
            }
        }
        if (!out.empty()) save_json_file(out, rep);
        else std::cout << rep.dump(2) << "\n";
        return 0;
    });
}

int cli_repro(int argc, char** argv) {
    CLI::App app{"reproduce the worked examples and report the assertions"};
    std::string name = "all", out;
    app.add_option("name", name, "example name or 'all'");
    app.add_option("--out", out);
    CLI11_PARSE(app, argc, argv);

    return guarded([&]() {
        std::vector<std::string> names =
            name == "all" ? repro_names() : std::vector<std::string>{name};
        json arr = json::array();
        bool all_pass = true;
        for (const auto& n : names) {
            ReproReport rep = run_reproduction(n);
            all_pass = all_pass && rep.pass();
            arr.push_back(rep.to_json());
        }
        json rep;
        rep["reports"] = std::move(arr);
        rep["pass"] = all_pass;
        if (!out.empty()) save_json_file(out, rep);
        else std::cout << rep.dump(2) << "\n";
        return all_pass ? 0 : 1;
    });
}

} // namespace concise
