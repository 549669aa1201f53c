#pragma once

#include "io.hpp"

namespace sdclab {

inline constexpr const char* kVersion = "sdclab 1.0.0";

// A complex together with the document that rebuilds it.
template <class F>
struct Named {
    std::string name;
    json doc;
    PObj<F> obj;
};

template <class F>
struct CorpusRing {
    std::string name;
    json doc;
    ProdPtr<F> ring;
    std::vector<Named<F>> candidates;  // semidualizing by construction
    std::vector<Named<F>> objects;     // test complexes for sampled classes and X-arguments

    bool local() const { return ring->size() == 1; }
    const Named<F>& candidate(const std::string& n) const {
        for (const auto& c : candidates)
            if (c.name == n) return c;
        throw InputError("no candidate '" + n + "' over " + name);
    }
};

template <class F>
struct Corpus {
    FieldSpec field;
    std::vector<CorpusRing<F>> rings;

    const CorpusRing<F>& ring(const std::string& n) const {
        for (const auto& r : rings)
            if (r.name == n) return r;
        throw InputError("corpus has no ring '" + n + "'");
    }
};

template <class F>
Named<F> named(const CorpusRing<F>& r, std::string name, json doc) {
    Library<F> lib;
    auto o = complex_from_json(r.ring, doc, lib);
    return Named<F>{std::move(name), std::move(doc), std::move(o)};
}

template <class F>
CorpusRing<F> corpus_ring(const F& f, std::string name, json doc) {
    CorpusRing<F> r;
    r.name = std::move(name);
    doc["name"] = r.name;
    r.ring = algebra_from_json(f, doc);
    r.doc = std::move(doc);
    return r;
}

inline json bdoc(const char* b, int shift = 0) {
    json j{{"build", b}};
    if (shift != 0) j["shift"] = shift;
    return j;
}

inline json mix_doc(std::vector<json> parts) {
    return json{{"build", "component_mix"}, {"parts", std::move(parts)}};
}

// Rings k, k[x]/(x^2), k[x]/(x^3), k[x,y]/(x^2,xy,y^2), k[x,y]/(x^2,y^2) and the product
// k[x]/(x^2) x k[x,y]/(x^2,xy,y^2), with R, D, shifts and componentwise mixtures as candidates.
template <class F>
Corpus<F> standard_corpus(const F& f) {
    Corpus<F> c;
    c.field = f.spec();
    const json x2 = monomial_ring_doc({"x"}, {"x^2"});
    const json m2 = monomial_ring_doc({"x", "y"}, {"x^2", "x*y", "y^2"});
    const std::vector<std::pair<std::string, std::vector<json>>> rings = {
        {"k", {monomial_ring_doc({"x"}, {"x"})}},
        {"x2", {x2}},
        {"x3", {monomial_ring_doc({"x"}, {"x^3"})}},
        {"m2", {m2}},
        {"ci", {monomial_ring_doc({"x", "y"}, {"x^2", "y^2"})}},
        {"prod", {x2, m2}},
    };
    for (const auto& [name, comps] : rings) {
        auto r = corpus_ring(f, name, algebra_doc(c.field, comps));
        if (r.local()) {
            r.candidates.push_back(named(r, "R", bdoc("ring")));
            r.candidates.push_back(named(r, "D", bdoc("dual")));
            r.candidates.push_back(named(r, "S1D", bdoc("dual", 1)));
            r.objects.push_back(named(r, "R", bdoc("ring")));
            r.objects.push_back(named(r, "D", bdoc("dual")));
            r.objects.push_back(named(r, "k", bdoc("residue")));
            r.objects.push_back(named(r, "S1k", bdoc("residue", 1)));
            if (r.ring->comps[0]->dim > 1) {
                r.objects.push_back(named(r, "m", bdoc("maximal_ideal")));
                r.objects.push_back(named(r, "m_dual", json{{"build", "matlis_dual"}, {"of", bdoc("maximal_ideal")}}));
            }
        } else {
            r.candidates.push_back(named(r, "R", bdoc("ring")));
            r.candidates.push_back(named(r, "D", bdoc("dual")));
            r.candidates.push_back(named(r, "R1+S2D2", mix_doc({bdoc("ring"), bdoc("dual", 2)})));
            r.candidates.push_back(named(r, "D1+S1R2", mix_doc({bdoc("dual"), bdoc("ring", 1)})));
            r.objects.push_back(named(r, "R", bdoc("ring")));
            r.objects.push_back(named(r, "D", bdoc("dual")));
            r.objects.push_back(named(r, "k", bdoc("residue")));
            r.objects.push_back(named(r, "R1+S2D2", mix_doc({bdoc("ring"), bdoc("dual", 2)})));
            r.objects.push_back(named(r, "k1+R2", mix_doc({bdoc("residue"), bdoc("ring")})));
        }
        c.rings.push_back(std::move(r));
    }
    return c;
}

// The ring and complex of the product example: B = R1 + Sigma^m D2 with m = 2.
template <class F>
CorpusRing<F> local_example_ring(const F& f, int m = 2) {
    auto r = corpus_ring(f, "prod",
                         algebra_doc(f.spec(), {monomial_ring_doc({"x"}, {"x^2"}),
                                                monomial_ring_doc({"x", "y"}, {"x^2", "x*y", "y^2"})}));
    r.candidates.push_back(named(r, "R", bdoc("ring")));
    r.candidates.push_back(named(r, "B", mix_doc({bdoc("ring"), bdoc("dual", m)})));
    return r;
}

// Named complexes declared in a ring document under "complexes", plus R, D, k and m.
template <class F>
Library<F> ring_library(const ProdPtr<F>& ring, const json& doc) {
    Library<F> lib;
    lib.emplace("R", p_ring(ring));
    lib.emplace("D", p_dual(ring));
    lib.emplace("E", p_dual(ring));
    lib.emplace("k", p_residue(ring));
    lib.emplace("m", complex_from_json(ring, bdoc("maximal_ideal")));
    if (doc.contains("complexes")) {
        const auto& cs = doc.at("complexes");
        if (!cs.is_object()) throw InputError("algebra: \"complexes\" must be an object");
        for (auto it = cs.begin(); it != cs.end(); ++it) lib.insert_or_assign(it.key(), complex_from_json(ring, it.value(), lib));
    }
    return lib;
}

// Corpus document: {"field"?, "window"?, "seed"?, "rings": [{"name", "algebra", "candidates": {name: doc},
// "objects": {name: doc}}]}. Candidates are checked to be semidualizing by the caller when needed.
inline FieldSpec corpus_field(const json& doc, const FieldSpec& fallback) {
    if (doc.contains("field")) return field_from_json(doc.at("field"));
    for (const auto& r : doc.value("rings", json::array()))
        if (r.contains("algebra") && r.at("algebra").contains("field")) return field_from_json(r.at("algebra").at("field"));
    return fallback;
}

template <class F>
Corpus<F> corpus_from_json(const F& f, const json& doc) {
    if (!doc.is_object() || !doc.contains("rings") || !doc.at("rings").is_array())
        throw InputError("corpus: expected {\"rings\": [...]}");
    if (doc.contains("window") && doc.at("window").get<int>() < 4) throw InputError("corpus: window must be at least 4");
    Corpus<F> c;
    c.field = f.spec();
    for (const auto& rj : doc.at("rings")) {
        if (!rj.contains("name") || !rj.contains("algebra")) throw InputError("corpus: each ring needs name and algebra");
        auto r = corpus_ring(f, rj.at("name").get<std::string>(), rj.at("algebra"));
        auto lib = ring_library(r.ring, r.doc);
        auto add = [&](const char* key, std::vector<Named<F>>& into) {
            if (!rj.contains(key)) return;
            for (auto it = rj.at(key).begin(); it != rj.at(key).end(); ++it)
                into.push_back(Named<F>{it.key(), it.value(), complex_from_json(r.ring, it.value(), lib)});
        };
        add("candidates", r.candidates);
        add("objects", r.objects);
        c.rings.push_back(std::move(r));
    }
    return c;
}

template <class F>
json corpus_to_json(const Corpus<F>& c) {
    json rings = json::array();
    for (const auto& r : c.rings) {
        json cands = json::array(), objs = json::array();
        for (const auto& x : r.candidates) cands.push_back(json{{"name", x.name}, {"doc", x.doc}});
        for (const auto& x : r.objects) objs.push_back(json{{"name", x.name}, {"doc", x.doc}});
        rings.push_back(json{{"name", r.name},
                             {"digest", r.ring->digest.hex()},
                             {"gorenstein", is_gorenstein(*r.ring)},
                             {"dim_k", r.ring->dim()},
                             {"doc", r.doc},
                             {"candidates", cands},
                             {"objects", objs}});
    }
    return json{{"field", c.field.name()}, {"rings", rings}};
}

}  // namespace sdclab
