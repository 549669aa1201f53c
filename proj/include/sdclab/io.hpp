#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "product.hpp"
#include "resolution.hpp"

namespace sdclab {

// Malformed or inconsistent input documents.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Fields

inline FieldSpec parse_field_name(const std::string& s) {
    if (s == "q" || s == "Q" || s == "QQ") return FieldSpec::rationals();
    std::string digits = s;
    for (const char* pre : {"fp:", "Fp:", "F_", "f_", "F", "p"})
        if (digits.rfind(pre, 0) == 0) {
            digits = digits.substr(std::string(pre).size());
            break;
        }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
        throw InputError("unknown field '" + s + "' (use q or a prime such as 32003)");
    const auto p = std::stoull(digits);
    if (p >= (1ULL << 31)) throw InputError("field: prime too large");
    try {
        return FieldSpec::prime(static_cast<std::uint32_t>(p));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline FieldSpec field_from_json(const json& j) {
    if (j.is_string()) return parse_field_name(j.get<std::string>());
    if (j.is_number_integer()) return parse_field_name(std::to_string(j.get<long long>()));
    if (!j.is_object() || !j.contains("kind")) throw InputError("field: expected {\"kind\": \"Q\" | \"Fp\", ...}");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "Q") return FieldSpec::rationals();
    if (kind == "Fp") {
        if (!j.contains("p") || !j.at("p").is_number_integer()) throw InputError("field: Fp needs an integer p");
        const auto p = j.at("p").get<long long>();
        if (p < 2 || p >= (1LL << 31)) throw InputError("field: p out of range");
        try {
            return FieldSpec::prime(static_cast<std::uint32_t>(p));
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("field: ") + e.what());
        }
    }
    throw InputError("field: unknown kind '" + kind + "'");
}

inline json field_to_json(const FieldSpec& s) {
    if (s.is_rational()) return json{{"kind", "Q"}};
    return json{{"kind", "Fp"}, {"p", s.p}};
}

// "q", "Q", "fp:7", "F_7", "32003"

template <class F>
typename F::Elem elem_from_json(const F& f, const json& v) {
    try {
        if (v.is_number_integer()) return f.from_rational(mpq_class(v.get<long>()));
        if (v.is_string()) return f.from_rational(parse_rational(v.get<std::string>()));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    } catch (const std::domain_error& e) {
        throw InputError(e.what());
    }
    throw InputError("expected a number or a rational string, got " + v.dump());
}

template <class F>
json elem_to_json(const F& f, const typename F::Elem& x) {
    return f.to_string(x);
}

// Dense row lists <-> sparse matrices.
template <class F>
SparseMat<F> matrix_from_json(const F& f, const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw InputError(what + ": expected " + std::to_string(rows) + " rows");
    SparseMat<F> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw InputError(what + ": row " + std::to_string(i) + " should have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            auto x = elem_from_json(f, row[c]);
            if (!f.is_zero(x)) m.col[c].emplace_back(i, x);
        }
    }
    return m;
}

template <class F>
json matrix_to_json(const F& f, const SparseMat<F>& m) {
    auto d = m.to_dense(f);
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (int c = 0; c < m.cols; ++c) r.push_back(elem_to_json(f, d(i, c)));
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Algebra documents

template <class F>
AlgPtr<F> local_from_json(const F& f, const json& c) {
    if (!c.is_object() || !c.contains("kind")) throw InputError("component: missing kind");
    const auto kind = c.at("kind").get<std::string>();
    const std::string label = c.value("name", std::string{});
    try {
        if (kind == "monomial_quotient") {
            auto vars = c.at("vars").get<std::vector<std::string>>();
            auto rels = c.at("relations").get<std::vector<std::string>>();
            return monomial_quotient(f, vars, rels, label);
        }
        if (kind == "structure_constants") {
            const int dim = c.at("dim").get<int>();
            const int one = c.at("one").get<int>();
            auto mideal = c.at("mideal").get<std::vector<int>>();
            const auto& mj = c.at("mult");
            if (dim <= 0 || !mj.is_array() || static_cast<int>(mj.size()) != dim)
                throw InputError("structure_constants: mult must be dim x dim x dim");
            std::vector<std::vector<SVec<F>>> mult(dim, std::vector<SVec<F>>(dim));
            for (int i = 0; i < dim; ++i) {
                if (!mj[i].is_array() || static_cast<int>(mj[i].size()) != dim)
                    throw InputError("structure_constants: mult must be dim x dim x dim");
                for (int k = 0; k < dim; ++k) {
                    const auto& v = mj[i][k];
                    if (!v.is_array() || static_cast<int>(v.size()) != dim)
                        throw InputError("structure_constants: mult must be dim x dim x dim");
                    for (int t = 0; t < dim; ++t) {
                        auto x = elem_from_json(f, v[t]);
                        if (!f.is_zero(x)) mult[i][k].emplace_back(t, x);
                    }
                }
            }
            std::vector<std::string> names;
            if (c.contains("names")) names = c.at("names").get<std::vector<std::string>>();
            auto a = LocalAlgebra<F>::make(f, dim, one, std::move(mideal), std::move(mult), std::move(names), label);
            validate(*a);
            return a;
        }
    } catch (const AlgebraError&) {
        throw;
    } catch (const InputError&) {
        throw;
    } catch (const json::exception& e) {
        throw InputError(std::string("component: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("component: ") + e.what());
    }
    throw InputError("component: unknown kind '" + kind + "'");
}

// The field comes from the document; a caller-supplied field must agree with it.
inline FieldSpec algebra_field(const json& doc, const std::optional<FieldSpec>& fallback) {
    if (doc.contains("field")) return field_from_json(doc.at("field"));
    if (fallback) return *fallback;
    throw InputError("algebra: no field given");
}

template <class F>
ProdPtr<F> algebra_from_json(const F& f, const json& doc) {
    if (!doc.is_object() || !doc.contains("components") || !doc.at("components").is_array() ||
        doc.at("components").empty())
        throw InputError("algebra: expected a non-empty \"components\" array");
    if (doc.contains("field") && !(field_from_json(doc.at("field")) == f.spec()))
        throw InputError("algebra: document field differs from the requested field");
    std::vector<AlgPtr<F>> comps;
    for (const auto& c : doc.at("components")) comps.push_back(local_from_json(f, c));
    return ProductAlgebra<F>::make(std::move(comps), doc.value("name", std::string{}));
}

inline json monomial_ring_doc(const std::vector<std::string>& vars, const std::vector<std::string>& rels) {
    return json{{"kind", "monomial_quotient"}, {"vars", vars}, {"relations", rels}};
}

inline json algebra_doc(const FieldSpec& s, std::vector<json> comps, const std::string& name = {}) {
    json j;
    if (!name.empty()) j["name"] = name;
    j["field"] = field_to_json(s);
    j["components"] = std::move(comps);
    return j;
}

// ---------------------------------------------------------------------------
// Complex documents

// Named complexes that "ref" builders may point to.
template <class F>
using Library = std::map<std::string, PObj<F>>;

template <class F>
LObj<F> explicit_local_complex(const AlgPtr<F>& a, const json& doc) {
    const F& f = a->field;
    Complex<F> c(a);
    if (!doc.contains("terms") || !doc.at("terms").is_object()) throw InputError("complex: explicit form needs \"terms\"");
    std::map<int, FMod<F>> terms;
    for (const auto& kv : doc.at("terms").items()) {
        const std::string key = kv.key();
        const json& t = kv.value();
        int n = 0;
        try {
            n = std::stoi(key);
        } catch (const std::exception&) {
            throw InputError("complex: degree '" + key + "' is not an integer");
        }
        const int dim = t.at("dim").get<int>();
        if (dim < 0) throw InputError("complex: negative dimension");
        FMod<F> m(a);
        if (t.contains("free")) {
            m = FMod<F>::free(a, t.at("free").get<int>());
            if (m.dim() != dim) throw InputError("complex: free rank does not match dim");
        } else if (dim > 0) {
            const auto& act = t.at("action");
            if (!act.is_array() || static_cast<int>(act.size()) != a->dim)
                throw InputError("complex: action needs one matrix per algebra basis element");
            std::vector<SparseMat<F>> mats;
            for (int b = 0; b < a->dim; ++b)
                mats.push_back(matrix_from_json(f, act[b], dim, dim, "action of basis element " + std::to_string(b)));
            // Module axioms: the unit acts as the identity and e_i e_j acts as the product.
            if (!add(f, mats[a->unit], SparseMat<F>::identity(f, dim), f.neg(f.one())).is_zero())
                throw InputError("complex: unit does not act as the identity in degree " + key);
            for (int i = 0; i < a->dim; ++i)
                for (int j = 0; j < a->dim; ++j) {
                    SparseMat<F> rhs(dim, dim);
                    for (const auto& [t2, v] : a->mult[i][j]) rhs = add(f, rhs, mats[t2], v);
                    if (!add(f, multiply(f, mats[i], mats[j]), rhs, f.neg(f.one())).is_zero())
                        throw InputError("complex: action is not a module structure in degree " + key);
                }
            m = FMod<F>::of_atom(a, make_atom(f, dim, std::move(mats)));
        }
        terms.emplace(n, std::move(m));
    }
    for (auto& [n, m] : terms) c.set_term(n, m);
    if (doc.contains("diff")) {
        for (const auto& kv : doc.at("diff").items()) {
            const std::string key = kv.key();
            const json& mj = kv.value();
            int n = 0;
            try {
                n = std::stoi(key);
            } catch (const std::exception&) {
                throw InputError("complex: degree '" + key + "' is not an integer");
            }
            if (!terms.count(n) || !terms.count(n - 1))
                throw InputError("complex: differential " + key + " between missing terms");
            auto d = matrix_from_json(f, mj, terms.at(n - 1).dim(), terms.at(n).dim(), "differential " + key);
            for (int b = 0; b < a->dim; ++b)
                if (!add(f, multiply(f, d, terms.at(n).act(b)), multiply(f, terms.at(n - 1).act(b), d), f.neg(f.one()))
                         .is_zero())
                    throw InputError("complex: differential " + key + " is not linear over the algebra");
            c.set_diff(n, d);
        }
    }
    if (!is_complex(c)) throw InputError("complex: d o d is not zero");
    c.trim();
    return make_obj(std::move(c));
}

template <class F>
json explicit_local_doc(const Complex<F>& c) {
    const F& f = c.alg->field;
    json terms = json::object(), diff = json::object();
    if (!c.empty())
        for (int n = c.lo; n <= c.hi(); ++n) {
            const auto& m = c.term(n);
            if (m.dim() == 0) continue;
            json t;
            t["dim"] = m.dim();
            const int fr = m.free_rank();
            if (fr > 0) {
                t["free"] = fr;
            } else {
                json act = json::array();
                for (int b = 0; b < c.alg->dim; ++b) act.push_back(matrix_to_json(f, m.act(b)));
                t["action"] = std::move(act);
            }
            terms[std::to_string(n)] = std::move(t);
            if (auto d = c.diff_ptr(n); d && c.dim(n - 1) > 0) diff[std::to_string(n)] = matrix_to_json(f, *d);
        }
    return json{{"terms", terms}, {"diff", diff}};
}

template <class F>
json explicit_doc(const PObj<F>& x) {
    if (x.size() == 1) return explicit_local_doc(*x[0]);
    json parts = json::array();
    for (const auto& p : x.parts) parts.push_back(explicit_local_doc(*p));
    return json{{"build", "component_mix"}, {"parts", parts}};
}

template <class F>
PObj<F> complex_from_json(const ProdPtr<F>& ring, const json& doc, const Library<F>& lib = {});

// Builder forms evaluated componentwise.
template <class F>
PObj<F> build_from_json(const ProdPtr<F>& ring, const json& doc, const Library<F>& lib) {
    const auto b = doc.at("build").get<std::string>();
    auto shift_of = [&](const PObj<F>& x) {
        if (!doc.contains("shift")) return x;
        const auto& s = doc.at("shift");
        if (s.is_array()) return p_shift(x, s.get<ShiftVector>());
        return p_shift(x, s.get<int>());
    };
    auto sub = [&](const char* key) {
        if (!doc.contains(key)) throw InputError(std::string("complex: builder '") + b + "' needs \"" + key + "\"");
        return complex_from_json(ring, doc.at(key), lib);
    };
    if (b == "ring") return shift_of(p_ring(ring));
    if (b == "dual" || b == "injective_hull") return shift_of(p_dual(ring));
    if (b == "residue") return shift_of(p_residue(ring));
    if (b == "maximal_ideal")
        return shift_of(pmap<F>(ring, [](int, const AlgPtr<F>& a) { return make_obj(module_complex(maximal_ideal(a))); }));
    if (b == "free") {
        const int r = doc.at("rank").get<int>();
        return shift_of(pmap<F>(ring, [&](int, const AlgPtr<F>& a) { return make_obj(module_complex(FMod<F>::free(a, r))); }));
    }
    if (b == "matlis_dual") return shift_of(p_matlis_dual(sub("of")));
    if (b == "shift") {
        if (!doc.contains("by")) throw InputError("complex: shift needs \"by\"");
        auto x = sub("of");
        const auto& by = doc.at("by");
        return by.is_array() ? p_shift(x, by.get<ShiftVector>()) : p_shift(x, by.get<int>());
    }
    if (b == "sum") {
        const auto& of = doc.at("of");
        if (!of.is_array() || of.empty()) throw InputError("complex: sum needs a non-empty \"of\" array");
        PObj<F> acc = complex_from_json(ring, of[0], lib);
        for (size_t i = 1; i < of.size(); ++i) acc = p_sum(acc, complex_from_json(ring, of[i], lib));
        return shift_of(acc);
    }
    if (b == "syzygy") {
        const int n = doc.at("n").get<int>();
        if (n < 0) throw InputError("complex: syzygy index must be nonnegative");
        auto x = sub("of");
        return shift_of(pmap<F>(ring, [&](int i, const AlgPtr<F>& a) {
            Resolution<F> r(x[i].cx);
            const int deg = r.start + n;
            r.extend_to(deg + 1);
            // Omega^n = coker(P_{n+1} -> P_n), placed in degree 0.
            Complex<F> two(a);
            two.set_term(0, FMod<F>::free(a, r.b(deg)));
            two.set_term(1, FMod<F>::free(a, r.b(deg + 1)));
            two.set_diff(1, r.differential(deg + 1));
            if (two.dim(0) == 0) return make_obj(Complex<F>(a));
            return make_obj(module_complex(FMod<F>::of_atom(a, homology_at(two, 0).atom)));
        }));
    }
    if (b == "component_mix") {
        const auto& parts = doc.at("parts");
        if (!parts.is_array() || static_cast<int>(parts.size()) != ring->size())
            throw InputError("complex: component_mix needs one part per ring component");
        PObj<F> out{ring, {}};
        for (int i = 0; i < ring->size(); ++i) {
            auto local = ProductAlgebra<F>::make({ring->comps[i]});
            auto p = complex_from_json(local, parts[i], Library<F>{});
            out.parts.push_back(p[0]);
        }
        return shift_of(out);
    }
    if (b == "ref") {
        const auto name = doc.at("name").get<std::string>();
        auto it = lib.find(name);
        if (it == lib.end()) throw InputError("complex: unknown reference '" + name + "'");
        return shift_of(it->second);
    }
    throw InputError("complex: unknown builder '" + b + "'");
}

template <class F>
PObj<F> complex_from_json(const ProdPtr<F>& ring, const json& doc, const Library<F>& lib) {
    try {
        if (doc.is_string()) return build_from_json(ring, json{{"build", "ref"}, {"name", doc.get<std::string>()}}, lib);
        if (!doc.is_object()) throw InputError("complex: expected an object");
        if (doc.contains("build")) return build_from_json(ring, doc, lib);
        if (ring->size() != 1) throw InputError("complex: explicit form needs a local ring (use component_mix)");
        return PObj<F>{ring, {explicit_local_complex(ring->comps[0], doc)}};
    } catch (const json::exception& e) {
        throw InputError(std::string("complex: ") + e.what());
    }
}

}  // namespace sdclab
