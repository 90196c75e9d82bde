#pragma once

#include <json.hpp>

#include "models.hpp"
#include "replay.hpp"
#include "report.hpp"

namespace conjcheck {

using ojson = nlohmann::ordered_json;

inline ojson report_to_json(const VerificationReport& rep)
{
    ojson j;
    j["subject"] = rep.subject;
    j["model"] = rep.model;
    j["scope"] = ojson{{"max_degree", rep.max_degree}, {"classes", rep.classes_checked}};
    j["verdict"] = verdict_name(rep.verdict);
    j["witnesses"] = ojson::array();
    for (const auto& w : rep.witnesses)
        j["witnesses"].push_back(ojson{{"class", w.klass}, {"expected", w.expected}, {"actual", w.actual}});
    j["skipped_degrees"] = rep.skipped_degrees;
    j["notes"] = rep.notes;
    return j;
}

inline ojson model_to_json(const ConjugationModel& m)
{
    ojson j;
    if (m.kind == ModelKind::Projective) {
        j["kind"] = "projective";
        j["n"] = m.projective_n;
    } else {
        j["kind"] = "spheres";
        ojson factors = ojson::array();
        for (const auto& [d, f] : m.sphere_factors)
            factors.push_back(ojson::array({d, f}));
        j["factors"] = factors;
    }
    j["truncation"] = m.xring->truncation();
    return j;
}

inline ConjugationModel model_from_json(const ojson& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "projective") {
        const unsigned n = j.at("n").get<unsigned>();
        const unsigned trunc = j.contains("truncation") ? j.at("truncation").get<unsigned>() : 6 * n + 12;
        return projective_model(n, trunc);
    }
    if (kind == "spheres") {
        std::vector<SphereFactor> factors;
        for (const auto& p : j.at("factors"))
            factors.push_back({p.at(0).get<unsigned>(), p.at(1).get<unsigned>()});
        const unsigned trunc = j.contains("truncation") ? j.at("truncation").get<unsigned>() : 0;
        return sphere_product_model(factors, trunc);
    }
    throw ParseError("model kind must be 'projective' or 'spheres', got '" + kind + "'");
}

inline ojson ledger_to_json(const CoefficientLedger& led)
{
    ojson j;
    j["n"] = led.n;
    j["a"] = ojson::array();
    for (const auto& e : led.a) {
        ojson item;
        item["i"] = e.i;
        if (e.k_used)
            item["k_used"] = *e.k_used;
        else
            item["k_used"] = nullptr;
        item["raw_expression"] = to_string(e.raw);
        item["normal_form"] = to_string(e.normal);
        item["verified"] = e.verified;
        j["a"].push_back(std::move(item));
    }
    j["b"] = ojson::array();
    for (const auto& e : led.b) {
        ojson item;
        item["l"] = e.l;
        item["k_used"] = e.k_used;
        item["raw_expression"] = to_string(e.raw);
        item["normal_form"] = to_string(e.normal);
        item["verified"] = e.verified;
        j["b"].push_back(std::move(item));
    }
    return j;
}

}  // namespace conjcheck
