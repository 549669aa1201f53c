#pragma once

#include <sstream>

#include "suites.hpp"

namespace sdclab {

struct Report {
    std::string suite;
    json config;
    json corpus;  // ring names and digests
    json cases = json::array();
    json summary;
    bool consistent = true;
};

template <class F>
json config_json(const Context<F>& ctx) {
    return json{{"field", ctx.field.spec().name()}, {"window", ctx.window}, {"seed", ctx.seed}, {"version", kVersion}};
}

template <class F>
json corpus_digests(const Corpus<F>& c) {
    json j = json::array();
    for (const auto& r : c.rings) j.push_back(json{{"name", r.name}, {"digest", r.ring->digest.hex()}});
    return j;
}

inline json check_json(const Check& c) {
    json j{{"name", c.name}, {"group", c.group}, {"role", role_name(c.role)}};
    const json v = to_json(c.verdict);
    for (auto it = v.begin(); it != v.end(); ++it) j[it.key()] = it.value();
    return j;
}

template <class F>
Report run_suite(const std::string& id, Context<F>& ctx, const Corpus<F>& corpus) {
    SuiteEnv<F> env{ctx, corpus};
    Report rep;
    rep.suite = id;
    rep.config = config_json(ctx);
    rep.corpus = corpus_digests(corpus);
    int n_cases = 0, n_bad = 0, decisive = 0, undetermined = 0;
    for (auto& cr : run_suite_cases(id, env)) {
        json conds = json::array();
        for (const auto& c : cr.checks) {
            conds.push_back(check_json(c));
            (c.verdict.decisive() ? decisive : undetermined)++;
        }
        auto viol = case_violations(cr.checks);
        const bool ok = viol.empty();
        json cj{{"ring", cr.ring}, {"inputs", cr.inputs}, {"conditions", conds}, {"consistent", ok}};
        if (!ok) cj["violations"] = viol;
        if (!cr.extra.is_null())
            for (const auto& [k, v] : cr.extra.items()) cj[k] = v;
        rep.cases.push_back(std::move(cj));
        ++n_cases;
        if (!ok) ++n_bad;
    }
    rep.consistent = n_bad == 0;
    rep.summary = json{{"cases", n_cases},
                       {"inconsistent_cases", n_bad},
                       {"decisive_conditions", decisive},
                       {"undetermined_conditions", undetermined}};
    return rep;
}

template <class F>
Report search_questions(const std::string& question, Context<F>& ctx, const Corpus<F>& corpus) {
    SuiteEnv<F> env{ctx, corpus};
    Report rep;
    rep.suite = "search:" + question;
    rep.config = config_json(ctx);
    rep.corpus = corpus_digests(corpus);
    json parts = json::array();
    int hits = 0, scanned = 0, skipped = 0;
    for (const auto& q : question_parts(question)) {
        auto res = search_part(q, env);
        json cands = json::array();
        int part_hits = 0;
        for (const auto& sc : res.cases) {
            ++scanned;
            if (!sc.hypothesis.is_holds()) ++skipped;
            if (!sc.hit()) continue;
            ++part_hits;
            cands.push_back(json{{"ring", sc.ring},
                                 {"inputs", sc.inputs},
                                 {"hypothesis", to_json(sc.hypothesis)},
                                 {"conclusion", to_json(sc.conclusion)},
                                 {"caveat", "candidate only: verdicts are computed inside a finite window"}});
        }
        hits += part_hits;
        json pj{{"question", q},
                {"pairs_scanned", res.cases.size()},
                {"hypothesis_not_decisively_holding", 0},
                {"excluded", res.excluded},
                {"candidates", cands}};
        int nh = 0;
        for (const auto& sc : res.cases) nh += sc.hypothesis.is_holds() ? 0 : 1;
        pj["hypothesis_not_decisively_holding"] = nh;
        pj["result"] = part_hits == 0 ? "no counterexample found at this window"
                                      : "candidate counterexample found (not a disproof)";
        parts.push_back(std::move(pj));
    }
    rep.cases = parts;
    rep.summary = json{{"pairs_scanned", scanned}, {"pairs_skipped", skipped}, {"candidates", hits}};
    return rep;
}

inline json report_json(const Report& r) {
    return json{{"suite", r.suite},
                {"config", r.config},
                {"corpus", r.corpus},
                {"cases", r.cases},
                {"summary", r.summary},
                {"consistent", r.consistent}};
}

inline std::string report_markdown(const Report& r) {
    std::ostringstream o;
    o << "# " << r.suite << "\n\n";
    o << "field " << r.config.value("field", std::string{}) << ", window " << r.config.value("window", 0) << ", seed "
      << r.config.value("seed", 0) << "\n\n";
    if (r.suite.rfind("search:", 0) == 0) {
        o << "| question | pairs | candidates | result |\n|---|---|---|---|\n";
        for (const auto& p : r.cases)
            o << "| " << p["question"].get<std::string>() << " | " << p["pairs_scanned"] << " | "
              << p["candidates"].size() << " | " << p["result"].get<std::string>() << " |\n";
        return o.str();
    }
    o << "cases: " << r.summary.value("cases", 0) << ", inconsistent: " << r.summary.value("inconsistent_cases", 0)
      << ", undetermined conditions: " << r.summary.value("undetermined_conditions", 0) << "\n\n";
    o << "| ring | inputs | conditions | consistent |\n|---|---|---|---|\n";
    for (const auto& c : r.cases) {
        std::string inputs;
        for (const auto& [k, v] : c["inputs"].items())
            if (v.is_object() && v.contains("name")) inputs += (inputs.empty() ? "" : ", ") + k + "=" + v["name"].get<std::string>();
        std::string conds;
        for (const auto& k : c["conditions"]) {
            const auto v = k["verdict"].get<std::string>();
            conds += v == "holds" ? "H" : v == "fails" ? "F" : "?";
        }
        o << "| " << c["ring"].get<std::string>() << " | " << inputs << " | " << conds << " | "
          << (c["consistent"].get<bool>() ? "yes" : "NO") << " |\n";
    }
    return o.str();
}

inline std::string emit_report(const Report& r, const std::string& format) {
    if (format == "json") return report_json(r).dump(2) + "\n";
    if (format == "markdown" || format == "md") return report_markdown(r);
    throw InputError("unknown format '" + format + "' (json or markdown)");
}

}  // namespace sdclab
