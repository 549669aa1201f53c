#pragma once

#include "product.hpp"

namespace sdclab {

// Exact recognition of Sigma^n R and Sigma^n D on one component: x ~ Sigma^n R iff its minimal
// resolution is a single copy of R in degree n; x ~ Sigma^n D iff the Matlis dual is Sigma^-n R.
struct Recognition {
    std::optional<int> ring_shift;
    std::optional<int> dual_shift;
    bool any() const { return ring_shift || dual_shift; }
    std::string label() const {
        if (ring_shift) return "Sigma^" + std::to_string(*ring_shift) + " R";
        if (dual_shift) return "Sigma^" + std::to_string(*dual_shift) + " D";
        return "other";
    }
};

template <class F>
std::optional<int> free_rank_one_degree(Context<F>& ctx, const LObj<F>& x) {
    if (acyclic(ctx, x) || !x->exact_ends()) return std::nullopt;
    auto P = resolve(ctx, x, x->hi() + 1);
    if (!P->terminated) return std::nullopt;
    std::optional<int> deg;
    for (int n = P->start; n <= P->top(); ++n) {
        if (P->b(n) == 0) continue;
        if (P->b(n) != 1 || deg) return std::nullopt;
        deg = n;
    }
    return deg;
}

template <class F>
Recognition recognize(Context<F>& ctx, const LObj<F>& x) {
    Recognition r;
    r.ring_shift = free_rank_one_degree(ctx, x);
    if (auto d = free_rank_one_degree(ctx, make_obj(matlis_dual(*x)))) r.dual_shift = -*d;
    return r;
}

// ---------------------------------------------------------------------------
// Tilting

struct TiltResult {
    bool tilting = false;
    ShiftVector shift;  // valid when tilting
    json witness;       // failing component when not tilting
};

template <class F>
TiltResult is_tilting(Context<F>& ctx, const PObj<F>& c) {
    TiltResult r;
    bool all_zero = true;
    for (const auto& p : c.parts) all_zero = all_zero && acyclic(ctx, p);
    if (all_zero) throw PreconditionError("is_tilting: zero complex");
    for (int i = 0; i < c.size(); ++i) {
        json w;
        w["component"] = i + 1;
        if (acyclic(ctx, c[i])) {
            w["reason"] = "complex is zero on this component";
            r.witness = w;
            return r;
        }
        auto pd = pd_info(ctx, c[i]);
        if (!pd.finite) {
            w["reason"] = "projective dimension is infinite";
            r.witness = w;
            return r;
        }
        auto P = resolve(ctx, c[i], c[i]->hi() + 1);
        std::vector<int> betti;
        for (int n = P->start; n <= P->top(); ++n) betti.push_back(P->b(n));
        while (!betti.empty() && betti.back() == 0) betti.pop_back();
        auto deg = free_rank_one_degree(ctx, c[i]);
        if (!deg) {
            w["reason"] = "minimal free resolution is not a single copy of the ring";
            w["betti_start"] = P->start;
            w["betti"] = betti;
            r.witness = w;
            return r;
        }
        r.shift.push_back(*deg);
    }
    r.tilting = true;
    return r;
}

// ---------------------------------------------------------------------------
// Semidualizing and dualizing

template <class F>
void require_nonzero_components(Context<F>& ctx, const PObj<F>& c, const char* op) {
    for (int i = 0; i < c.size(); ++i)
        if (acyclic(ctx, c[i]))
            throw PreconditionError(std::string(op) + ": complex is zero on component " + std::to_string(i + 1));
}

template <class F>
Verdict semidualizing_component(Context<F>& ctx, const LObj<F>& c) {
    if (ctx.recognize) {
        auto rec = recognize(ctx, c);
        if (rec.any()) {
            Verdict v = Verdict::holds("recognized as " + rec.label());
            if (c->assumed) v.with_window(ctx.window);
            return v;
        }
    }
    auto v = is_quasi_iso(ctx, homothety(ctx, c));
    if (v.is_fails()) v.reason = "homothety: " + v.reason;
    else if (v.is_holds()) v.reason = "homothety is a quasi-isomorphism in the window";
    return v;
}

template <class F>
Verdict is_semidualizing(Context<F>& ctx, const PObj<F>& c) {
    require_nonzero_components(ctx, c, "is_semidualizing");
    return componentwise<F>(c, [&](int i) { return semidualizing_component(ctx, c[i]); }, "semidualizing");
}

template <class F>
Verdict finite_id_component(Context<F>& ctx, const LObj<F>& c) {
    auto d = id_info(ctx, c);
    Verdict v = d.finite ? Verdict::holds("injective dimension is finite")
                         : Verdict::fails("injective dimension is infinite");
    if (d.assumed) v.with_window(ctx.window);
    return v;
}

template <class F>
Verdict is_dualizing(Context<F>& ctx, const PObj<F>& c) {
    require_nonzero_components(ctx, c, "is_dualizing");
    return componentwise<F>(
        c,
        [&](int i) {
            return all_of({semidualizing_component(ctx, c[i]), finite_id_component(ctx, c[i])}, "dualizing");
        },
        "dualizing");
}

// Semidualizing as a precondition: a Fails verdict is a caller error.
template <class F>
void require_semidualizing(Context<F>& ctx, const PObj<F>& c, const char* op) {
    auto v = is_semidualizing(ctx, c);
    if (v.is_fails()) throw PreconditionError(std::string(op) + ": C is not semidualizing (" + v.reason + ")");
}

// ---------------------------------------------------------------------------
// Reflexivity and Foxby classes

inline Verdict clause(Verdict v, const char* name) {
    if (v.is_fails()) {
        json w;
        w["clause"] = name;
        if (!v.witness.is_null()) w["detail"] = v.witness;
        v.witness = std::move(w);
        v.reason = std::string(name) + ": " + v.reason;
    }
    return v;
}

template <class F>
Verdict map_verdict(Context<F>& ctx, const MapResult<F>& m, const char* bounded_clause, const char* map_clause) {
    if (!m.status.is_holds()) return clause(m.status, bounded_clause);
    auto q = is_quasi_iso(ctx, *m.map);
    if (q.is_holds() && m.status.evidence == Evidence::Window) q = weaken(q, m.status);
    if (q.is_fails() && m.status.evidence == Evidence::Window) q.with_window(ctx.window);
    return clause(q, map_clause);
}

template <class F>
Verdict reflexive_component(Context<F>& ctx, const LObj<F>& x, const LObj<F>& c) {
    return map_verdict(ctx, biduality(ctx, x, c), "ext_vanishing", "biduality");
}

template <class F>
Verdict is_reflexive(Context<F>& ctx, const PObj<F>& x, const PObj<F>& c) {
    check_same_ring(x, c);
    require_semidualizing(ctx, c, "is_reflexive");
    return componentwise<F>(x, [&](int i) { return reflexive_component(ctx, x[i], c[i]); }, "C-reflexive");
}

template <class F>
Verdict in_bass(Context<F>& ctx, const PObj<F>& x, const PObj<F>& c) {
    check_same_ring(x, c);
    require_semidualizing(ctx, c, "in_bass");
    return componentwise<F>(
        x, [&](int i) { return map_verdict(ctx, bass_evaluation(ctx, c[i], x[i]), "rhom_bounded", "evaluation"); },
        "in the Bass class");
}

template <class F>
Verdict in_auslander(Context<F>& ctx, const PObj<F>& x, const PObj<F>& c) {
    check_same_ring(x, c);
    require_semidualizing(ctx, c, "in_auslander");
    return componentwise<F>(
        x, [&](int i) { return map_verdict(ctx, auslander_unit(ctx, c[i], x[i]), "tensor_bounded", "unit"); },
        "in the Auslander class");
}

// ---------------------------------------------------------------------------
// Derived Picard group: over a product of local rings it is Z^components, acting by shifts.

template <class F>
PObj<F> dpic_act(const ShiftVector& p, const PObj<F>& c) {
    return p_shift(c, p);
}

enum class DpicOp { Add, Sub };

inline ShiftVector dpic_op(const ShiftVector& p, const ShiftVector& q, DpicOp op) {
    if (p.size() != q.size()) throw PreconditionError("dpic_op: shift vectors have different lengths");
    ShiftVector r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = op == DpicOp::Add ? p[i] + q[i] : p[i] - q[i];
    return r;
}

// The tilting complex attached to a shift vector.
template <class F>
PObj<F> dpic_element(const ProdPtr<F>& r, const ShiftVector& p) {
    return p_shift(p_ring(r), p);
}

// ---------------------------------------------------------------------------
// The relation B ~ C: Ext^n(B, C) = 0 for n >> 0 and B, C agree up to shift on every component.
// On success shift[i] is the p_i with Sigma^{p_i} B_i ~ C_i.

struct ApproxResult {
    Verdict verdict;
    std::optional<ShiftVector> shift;
};

template <class F>
ApproxResult approx_equiv(Context<F>& ctx, const PObj<F>& b, const PObj<F>& c) {
    check_same_ring(b, c);
    require_semidualizing(ctx, b, "approx_equiv");
    require_semidualizing(ctx, c, "approx_equiv");
    ApproxResult r;
    std::vector<Verdict> vs;
    ShiftVector s;
    for (int i = 0; i < b.size(); ++i) {
        auto bounded = assume_bounded(ctx, rhom(ctx, b[i], c[i]));
        auto [iso, by] = derived_iso_shift(ctx, b[i], c[i]);
        vs.push_back(tag_component(
            all_of({clause(bounded.status, "ext_vanishing"), clause(iso, "shift_isomorphism")}, "equivalent"), i,
            b.size()));
        s.push_back(by);
    }
    r.verdict = all_of(vs, "equivalent up to a shift on every component");
    if (r.verdict.is_holds()) {
        r.shift = s;
        r.verdict.witness = json{{"shift", s}};
    }
    return r;
}

}  // namespace sdclab
