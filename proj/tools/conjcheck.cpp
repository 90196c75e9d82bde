// conjcheck CLI: theorem checks, proof replay and ad-hoc Steenrod
// computations with deterministic text/JSON reports for CI use.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conjcheck/json_io.hpp"
#include "conjcheck/models.hpp"
#include "conjcheck/replay.hpp"
#include "conjcheck/steenrod.hpp"
#include "conjcheck/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelRequest {
    conjcheck::ModelKind kind = conjcheck::ModelKind::Projective;
    unsigned n = 0;
    std::vector<conjcheck::SphereFactor> factors;
    unsigned truncation_from_file = 0;
};

std::vector<conjcheck::SphereFactor> parse_factor_list(const std::string& text)
{
    std::vector<conjcheck::SphereFactor> out;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        const auto comma = pair.find(',');
        if (comma == std::string::npos)
            throw UsageError("bad sphere factor '" + pair + "' (expected d,f)");
        try {
            out.push_back({static_cast<unsigned>(std::stoul(pair.substr(0, comma))),
                           static_cast<unsigned>(std::stoul(pair.substr(comma + 1)))});
        } catch (const std::exception&) {
            throw UsageError("bad sphere factor '" + pair + "'");
        }
    }
    if (out.empty())
        throw UsageError("empty sphere factor list");
    return out;
}

ModelRequest parse_model_request(const std::string& spec)
{
    ModelRequest req;
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        conjcheck::ojson j;
        in >> j;
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "projective") {
            req.kind = conjcheck::ModelKind::Projective;
            req.n = j.at("n").get<unsigned>();
        } else if (kind == "spheres") {
            req.kind = conjcheck::ModelKind::Spheres;
            for (const auto& p : j.at("factors"))
                req.factors.push_back({p.at(0).get<unsigned>(), p.at(1).get<unsigned>()});
        } else {
            throw UsageError("model file: unknown kind '" + kind + "'");
        }
        if (j.contains("truncation"))
            req.truncation_from_file = j.at("truncation").get<unsigned>();
        return req;
    }
    if (spec == "tau") {
        req.kind = conjcheck::ModelKind::Spheres;
        req.factors = {{2, 2}, {4, 1}};
        return req;
    }
    if (spec == "tau-tilde") {
        req.kind = conjcheck::ModelKind::Spheres;
        req.factors = {{2, 1}, {4, 2}};
        return req;
    }
    if (spec.rfind("projective:", 0) == 0) {
        req.kind = conjcheck::ModelKind::Projective;
        try {
            req.n = static_cast<unsigned>(std::stoul(spec.substr(11)));
        } catch (const std::exception&) {
            throw UsageError("bad model '" + spec + "' (expected projective:<n>)");
        }
        return req;
    }
    if (spec.rfind("spheres:", 0) == 0) {
        req.kind = conjcheck::ModelKind::Spheres;
        req.factors = parse_factor_list(spec.substr(8));
        return req;
    }
    throw UsageError("model '" + spec +
                     "' is neither a file nor one of: projective:<n>, spheres:<d,f;...>, tau, tau-tilde");
}

struct Output {
    std::string format = "text";
    conjcheck::ojson json;
    std::vector<std::string> text_lines;
    bool all_pass = true;

    void add_report(const conjcheck::VerificationReport& rep)
    {
        all_pass = all_pass && rep.passed();
        if (!json.contains("reports"))
            json["reports"] = conjcheck::ojson::array();
        json["reports"].push_back(conjcheck::report_to_json(rep));
        text_lines.push_back(rep.to_text());
    }

    int flush(std::ostream& os) const
    {
        if (format == "json") {
            os << json.dump(2) << "\n";
        } else {
            for (const auto& line : text_lines)
                os << line << "\n";
        }
        return all_pass ? kExitPass : kExitMathFail;
    }
};

unsigned default_max_degree(const ModelRequest& req)
{
    if (req.kind == conjcheck::ModelKind::Projective)
        return 2 * (req.n + 3);
    unsigned top = 0;
    for (const auto& f : req.factors)
        top += f.ambient;
    return top;
}

conjcheck::ConjugationModel build_model(const ModelRequest& req, unsigned max_degree, unsigned truncation)
{
    unsigned D = truncation;
    if (D == 0)
        D = req.truncation_from_file;
    if (D == 0)
        D = 2 * (max_degree + (req.kind == conjcheck::ModelKind::Projective
                                   ? req.n
                                   : static_cast<unsigned>(req.factors.size())));
    const unsigned needed = 2 * max_degree;  // total squares double the degree
    if (D < needed)
        throw UsageError("truncation degree " + std::to_string(D) + " is below the required " +
                         std::to_string(needed) + " for max degree " + std::to_string(max_degree));
    if (req.kind == conjcheck::ModelKind::Projective)
        return conjcheck::projective_model(req.n, D);
    return conjcheck::sphere_product_model(req.factors, D);
}

std::vector<conjcheck::Generator> parse_ring_spec(const std::string& text)
{
    std::vector<conjcheck::Generator> gens;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::vector<std::string> parts;
        std::stringstream ps(item);
        std::string p;
        while (std::getline(ps, p, ':'))
            parts.push_back(p);
        if (parts.size() < 2 || parts.size() > 3)
            throw UsageError("bad ring generator '" + item + "' (expected name:degree[:nilpotency])");
        try {
            conjcheck::Generator g;
            g.name = parts[0];
            g.degree = static_cast<unsigned>(std::stoul(parts[1]));
            g.nilpotency = parts.size() == 3 ? static_cast<unsigned>(std::stoul(parts[2])) : 0;
            gens.push_back(std::move(g));
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("bad ring generator '" + item + "'");
        }
    }
    if (gens.empty())
        throw UsageError("empty ring spec");
    return gens;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"conjcheck: exact F2 verification of conjugation-space cohomology identities"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text or json")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "run theorem checkers");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* v_all = verify->add_subcommand("all", "full battery: theorems, injectivity, replay, counterexample");
    v_all->fallthrough();

    std::string model_spec = "projective:2";
    unsigned opt_max_degree = 0;
    unsigned opt_truncation = 0;
    const char* theorem_names[] = {"thm1", "thm2", "corollary"};
    std::vector<CLI::App*> theorem_cmds;
    for (const char* name : theorem_names) {
        auto* c = verify->add_subcommand(name, std::string("check ") + name + " on one model");
        c->add_option("--model", model_spec, "model file or builtin (projective:<n>, spheres:<d,f;..>, tau, tau-tilde)")
            ->capture_default_str();
        c->add_option("--max-degree", opt_max_degree, "largest class degree to check (0 = model default)");
        c->add_option("--truncation", opt_truncation, "working truncation degree (0 = auto)");
        c->fallthrough();
        theorem_cmds.push_back(c);
    }

    unsigned inj_n = 0, inj_max_degree = 0;
    bool inj_max_degree_set = false;
    auto* v_inj = verify->add_subcommand("injectivity", "evaluation-matrix rank check on (RP^inf)^n");
    v_inj->add_option("--n", inj_n, "number of projective factors")->required();
    v_inj->add_option("--max-degree", inj_max_degree, "largest algebra degree (default n)")
        ->each([&inj_max_degree_set](const std::string&) { inj_max_degree_set = true; });
    v_inj->fallthrough();

    // replay
    auto* replay = app.add_subcommand("replay", "re-derive the coefficient recursions");
    replay->require_subcommand(1);
    replay->fallthrough();
    unsigned lemma_n = 0;
    auto* r_lemma = replay->add_subcommand("lemma", "derive a_i and b_l and verify them");
    r_lemma->add_option("--n", lemma_n, "half-degree of the class")->required();
    r_lemma->fallthrough();

    unsigned dec_n = 0, dec_k = 0, dec_trunc = 0;
    std::string dec_class;
    auto* r_dec = replay->add_subcommand("decompose", "expand Sq^{2k}(r_G sigma x) over section images");
    r_dec->add_option("--n", dec_n, "number of projective factors")->required();
    r_dec->add_option("--k", dec_k, "half the square degree")->required();
    r_dec->add_option("--class", dec_class, "class x in v1..vn (default v1*...*vn)");
    r_dec->add_option("--truncation", dec_trunc, "working truncation degree (0 = auto)");
    r_dec->fallthrough();

    // counterexample
    std::string ce_spec = "2,2;4,1";
    auto* ce = app.add_subcommand("counterexample", "exhaustive section search on a sphere model");
    ce->add_option("--spec", ce_spec, "sphere factors d,f;d,f")->capture_default_str();
    ce->fallthrough();

    // sq
    auto* sq = app.add_subcommand("sq", "ad-hoc Steenrod algebra computations");
    sq->require_subcommand(1);
    sq->fallthrough();
    std::string sq_elem;
    auto* sq_norm = sq->add_subcommand("normalize", "Adem normal form of an element");
    sq_norm->add_option("element", sq_elem, "e.g. \"Sq^2 Sq^2\"")->required();
    sq_norm->fallthrough();

    std::string apply_elem, apply_poly, apply_ring;
    unsigned apply_trunc = 64;
    auto* sq_apply = sq->add_subcommand("apply", "act on a homogeneous polynomial");
    sq_apply->add_option("element", apply_elem, "Steenrod element")->required();
    sq_apply->add_option("poly", apply_poly, "polynomial, e.g. \"t1*t2\"")->required();
    sq_apply->add_option("--ring", apply_ring, "generators name:degree[:nilpotency],...")->required();
    sq_apply->add_option("--truncation", apply_trunc, "working truncation degree")->capture_default_str();
    sq_apply->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (const char* env = std::getenv("CONJCHECK_FORMAT"); env != nullptr && *env != '\0')
        format = env;
    if (format != "text" && format != "json") {
        std::cerr << "conjcheck: unknown format '" << format << "' (use text or json)\n";
        return kExitUsage;
    }

    Output out;
    out.format = format;

    try {
        if (v_all->parsed()) {
            for (unsigned n = 1; n <= 3; ++n) {
                const ModelRequest req{conjcheck::ModelKind::Projective, n, {}, 0};
                const unsigned md = default_max_degree(req);
                const auto model = build_model(req, md, 0);
                out.add_report(conjcheck::verify_theorem1(model, md));
                out.add_report(conjcheck::verify_theorem2(model, md));
                out.add_report(conjcheck::verify_corollary(model, md));
            }
            {
                const ModelRequest req{conjcheck::ModelKind::Spheres, 0, {{2, 1}, {4, 2}}, 0};
                const unsigned md = default_max_degree(req);
                const auto model = build_model(req, md, 0);
                out.add_report(conjcheck::verify_theorem1(model, md));
                out.add_report(conjcheck::verify_theorem2(model, md));
                out.add_report(conjcheck::verify_corollary(model, md));
            }
            for (unsigned n = 1; n <= 5; ++n)
                out.add_report(conjcheck::injectivity_report(n, n));
            for (unsigned n = 1; n <= 6; ++n)
                out.add_report(conjcheck::verify_lemma(n).report);
            out.add_report(conjcheck::counterexample_report(
                conjcheck::sphere_product_model({{2, 2}, {4, 1}})));
        } else if (theorem_cmds[0]->parsed() || theorem_cmds[1]->parsed() || theorem_cmds[2]->parsed()) {
            const ModelRequest req = parse_model_request(model_spec);
            const unsigned md = opt_max_degree ? opt_max_degree : default_max_degree(req);
            const auto model = build_model(req, md, opt_truncation);
            if (theorem_cmds[0]->parsed())
                out.add_report(conjcheck::verify_theorem1(model, md));
            else if (theorem_cmds[1]->parsed())
                out.add_report(conjcheck::verify_theorem2(model, md));
            else
                out.add_report(conjcheck::verify_corollary(model, md));
        } else if (v_inj->parsed()) {
            const unsigned md = inj_max_degree_set ? inj_max_degree : inj_n;
            if (md > inj_n)
                throw UsageError("injectivity: --max-degree must be <= --n");
            out.add_report(conjcheck::injectivity_report(inj_n, md));
        } else if (r_lemma->parsed()) {
            if (lemma_n == 0 || lemma_n > 16)
                throw UsageError("replay lemma: --n must be in 1..16");
            const auto replay_out = conjcheck::verify_lemma(lemma_n);
            out.add_report(replay_out.report);
            out.json["ledger"] = conjcheck::ledger_to_json(replay_out.ledger);
            if (format == "text") {
                for (const auto& e : replay_out.ledger.a) {
                    std::string k = e.k_used ? std::to_string(*e.k_used) : "-";
                    out.text_lines.push_back("  a_" + std::to_string(e.i) + " (k=" + k + "): " +
                                             conjcheck::to_string(e.raw) + "  ->  " +
                                             conjcheck::to_string(e.normal));
                }
                for (const auto& e : replay_out.ledger.b)
                    out.text_lines.push_back("  b_" + std::to_string(e.l) + " (k=" + std::to_string(e.k_used) +
                                             "): " + conjcheck::to_string(e.raw) + "  ->  " +
                                             conjcheck::to_string(e.normal));
            }
        } else if (r_dec->parsed()) {
            if (dec_n == 0)
                throw UsageError("replay decompose: --n must be positive");
            unsigned D = dec_trunc ? dec_trunc : 2 * (dec_n + dec_k) + 16;
            auto model = conjcheck::projective_model(dec_n, D);
            conjcheck::GradedPolynomial x =
                dec_class.empty() ? [&] {
                    auto p = conjcheck::GradedPolynomial::one(model.xring);
                    for (unsigned i = 0; i < dec_n; ++i)
                        p = p * conjcheck::GradedPolynomial::generator(model.xring, i);
                    return p;
                }()
                                  : conjcheck::parse_polynomial(model.xring, dec_class);
            if (x.is_zero() || !x.homogeneous() || *x.degree() % 2 != 0)
                throw UsageError("replay decompose: class must be homogeneous of even degree");
            const unsigned needed = 2 * (*x.degree() / 2 + dec_k);
            if (needed > D) {
                if (dec_trunc)
                    throw UsageError("truncation degree " + std::to_string(D) + " is below the required " +
                                     std::to_string(needed));
                D = needed;
                model = conjcheck::projective_model(dec_n, D);
                x = dec_class.empty() ? [&] {
                    auto p = conjcheck::GradedPolynomial::one(model.xring);
                    for (unsigned i = 0; i < dec_n; ++i)
                        p = p * conjcheck::GradedPolynomial::generator(model.xring, i);
                    return p;
                }()
                                      : conjcheck::parse_polynomial(model.xring, dec_class);
            }
            const auto dec = conjcheck::decompose_sq_sigma(model, x, dec_k);
            conjcheck::ojson j;
            j["n"] = dec_n;
            j["k"] = dec_k;
            j["class"] = conjcheck::to_string(x);
            j["xtilde"] = conjcheck::ojson::array();
            for (unsigned l = 0; l < dec.xtilde.size(); ++l)
                j["xtilde"].push_back(conjcheck::ojson{{"l", l}, {"value", conjcheck::to_string(dec.xtilde[l])}});
            j["sq2k_of_class"] = conjcheck::to_string(dec.sq2k_x);
            j["negative_part_zero"] = dec.negative_part_zero;
            out.json = j;
            out.text_lines.push_back("decompose Sq^" + std::to_string(2 * dec_k) + "(r_G sigma(" +
                                     conjcheck::to_string(x) + ")) over projective n=" + std::to_string(dec_n));
            for (unsigned l = 0; l < dec.xtilde.size(); ++l)
                out.text_lines.push_back("  x~_" + std::to_string(l) + " = " +
                                         conjcheck::to_string(dec.xtilde[l]));
            out.text_lines.push_back("  top coefficient equals Sq^" + std::to_string(2 * dec_k) +
                                     "(x): " + conjcheck::to_string(dec.sq2k_x));
        } else if (ce->parsed()) {
            const auto model = conjcheck::sphere_product_model(parse_factor_list(ce_spec));
            out.add_report(conjcheck::counterexample_report(model));
        } else if (sq_norm->parsed()) {
            const auto e = conjcheck::parse_steenrod(sq_elem);
            const auto n = conjcheck::adem_normalize(e);
            out.json["result"] = conjcheck::to_string(n);
            out.text_lines.push_back(conjcheck::to_string(n));
        } else if (sq_apply->parsed()) {
            const auto ring = conjcheck::make_ring(parse_ring_spec(apply_ring), apply_trunc);
            const auto e = conjcheck::parse_steenrod(apply_elem);
            const auto p = conjcheck::parse_polynomial(ring, apply_poly);
            if (!p.is_zero() && !p.homogeneous())
                throw UsageError("sq apply: the polynomial must be homogeneous");
            const auto result = conjcheck::act(e, p);
            out.json["result"] = conjcheck::to_string(result);
            if (result.truncated())
                out.json["truncated"] = true;
            out.text_lines.push_back(conjcheck::to_string(result) +
                                     (result.truncated() ? "  (truncation touched; raise --truncation)" : ""));
        }
    } catch (const UsageError& e) {
        std::cerr << "conjcheck: " << e.what() << "\n";
        return kExitUsage;
    } catch (const conjcheck::ParseError& e) {
        std::cerr << "conjcheck: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "conjcheck: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        // mathematical failures surfaced as exceptions (NotInSpan etc.)
        std::cerr << "conjcheck: " << e.what() << "\n";
        return kExitMathFail;
    }

    return out.flush(std::cout);
}
