#pragma once

// JSON shapes for verdicts and reports.  Field names are part of the CLI
// contract; keep them in sync with report.schema.json.

#include <json.hpp>

#include "felab/embed.hpp"
#include "felab/filters.hpp"
#include "felab/natset.hpp"
#include "felab/rational.hpp"
#include "felab/structure.hpp"

namespace felab {

using json = nlohmann::json;

inline json to_json(const Rational& r) {
    return json{{"num", r.num}, {"den", r.den}, {"value", r.str()}};
}

inline json to_json(const Verdict3& v) {
    json j{{"status", truth_name(v.truth)}};
    if (v.witness) j["witness"] = *v.witness;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline json to_json(const FeCertificate& c) {
    if (const auto* u = std::get_if<UniformShift>(&c))
        return json{{"type", "uniform_shift"}, {"k", u->k}};
    if (const auto* s = std::get_if<ClosureShift>(&c))
        return json{{"type", "closure_shift"}, {"k", s->k}};
    const auto& pw = std::get<PrefixWitnesses>(c);
    json pairs = json::array();
    for (auto [n, k] : pw.pairs) pairs.push_back(json{{"n", n}, {"k", k}});
    return json{{"type", "prefix_witnesses"}, {"pairs", pairs}};
}

inline json to_json(const FeRefutation& r) {
    json j{{"finite_part", r.finite_part.finite_elements()}};
    if (const auto* rp = std::get_if<ResidueProof>(&r.exhaustiveness)) {
        json v = json::array();
        for (auto [k, e] : rp->violations) v.push_back(json{{"k", k}, {"element", e}});
        j["exhaustiveness"] = json{{"type", "residue_proof"},
                                   {"shift_bound", rp->shift_bound},
                                   {"violations", v}};
    } else {
        j["exhaustiveness"] = json{{"type", "bounded_domain"},
                                   {"bound", std::get<BoundedDomain>(r.exhaustiveness).bound}};
    }
    return j;
}

inline json to_json(const FeVerdict& v) {
    json j;
    switch (v.status) {
        case FeVerdict::Status::Embeds: j["status"] = "embeds"; break;
        case FeVerdict::Status::Refuted: j["status"] = "refuted"; break;
        default: j["status"] = "unknown"; break;
    }
    if (v.certificate) j["certificate"] = to_json(*v.certificate);
    if (v.refutation) j["refutation"] = to_json(*v.refutation);
    if (v.horizon)
        j["horizon"] = json{{"n_max", v.horizon->n_max},
                            {"k_max", v.horizon->k_max},
                            {"note", v.horizon->note}};
    return j;
}

inline json to_json(const ProperFeReport& r) {
    json j{{"fe", to_json(r.fe)}, {"proper", truth_name(r.proper)}};
    if (r.tail_witness) j["tail_witness"] = *r.tail_witness;
    if (r.uniform_shift) j["uniform_shift"] = *r.uniform_shift;
    return j;
}

inline json to_json(const BPrimeResult& r) {
    json j{{"bprime", r.bprime.finite_elements()},
           {"shifts", r.shifts},
           {"n_max", r.n_max}};
    if (r.exhausted)
        j["witness_exhausted"] = json{{"n", r.exhausted->first}, {"k_cap", r.exhausted->second}};
    return j;
}

inline json to_json(const DensityReport& r) {
    json j;
    if (r.natural_density) j["natural_density"] = to_json(*r.natural_density);
    if (r.banach_upper) j["banach_upper"] = to_json(*r.banach_upper);
    json ds = json::array();
    for (const auto& [n, q] : r.density_samples) ds.push_back(json{{"n", n}, {"ratio", to_json(q)}});
    j["density_samples"] = ds;
    json bs = json::array();
    for (const auto& [len, q] : r.banach_samples)
        bs.push_back(json{{"window", len}, {"best_ratio", to_json(q)}});
    j["banach_samples"] = bs;
    return j;
}

inline json to_json(const StructureReport& r) {
    return json{{"thick", to_json(r.thick)},
                {"syndetic", to_json(r.syndetic)},
                {"piecewise_syndetic", to_json(r.piecewise_syndetic)},
                {"max_run_seen", r.max_run_seen},
                {"max_gap_seen", r.max_gap_seen},
                {"horizon", r.horizon}};
}

inline json to_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"name", c.name},
                              {"passed", c.passed},
                              {"applicable", c.applicable},
                              {"detail", c.detail}});
    return json{{"vacuous", r.vacuous}, {"checks", checks}, {"all_passed", r.all_passed()}};
}

inline json to_json(const RichnessVerdict& r) {
    json j{{"status", to_json(r.status)}};
    if (r.member) j["member"] = *r.member;
    if (r.fe) j["fe"] = to_json(*r.fe);
    return j;
}

inline json to_json(const SumMemberReport& r) {
    json inner = json::array();
    for (const auto& iw : r.inner)
        inner.push_back(json{{"k", iw.k}, {"membership", to_json(iw.verdict)}});
    return json{{"verdict", to_json(r.verdict)}, {"method", r.method}, {"inner", inner}};
}

inline json to_json(const LeftSumReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je{{"target", e.target}, {"holds", truth_name(e.holds)}, {"note", e.note}};
        if (e.member) je["member"] = *e.member;
        if (e.shift) je["shift"] = *e.shift;
        if (e.cross_check) je["cross_check"] = to_json(*e.cross_check);
        entries.push_back(je);
    }
    return json{{"entries", entries}, {"all_hold", r.all_hold()}};
}

inline json to_json(const RegularityReport& r) {
    json pieces = json::array();
    for (const auto& p : r.pieces)
        pieces.push_back(json{{"piece", p.piece}, {"rich", to_json(p.rich)}});
    return json{{"whole", to_json(r.whole)}, {"pieces", pieces}, {"regularity_gap", r.gap}};
}

}  // namespace felab
