#pragma once

#include <stdexcept>

#include "derived.hpp"

namespace sdclab {

// Raised when an operation is called outside its domain (as opposed to a predicate failing).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A complex over a product of local algebras, one local complex per component.
template <class F>
struct PObj {
    ProdPtr<F> ring;
    std::vector<LObj<F>> parts;

    int size() const { return static_cast<int>(parts.size()); }
    const LObj<F>& operator[](int i) const { return parts[i]; }
    Digest digest() const {
        Hasher h;
        h.str("pobj").digest(ring->digest);
        for (const auto& p : parts) h.digest(p.id);
        return h.done();
    }
};

using ShiftVector = std::vector<int>;

template <class F>
PObj<F> pmap(const ProdPtr<F>& ring, const std::function<LObj<F>(int, const AlgPtr<F>&)>& fn) {
    PObj<F> o{ring, {}};
    for (int i = 0; i < ring->size(); ++i) o.parts.push_back(fn(i, ring->comps[i]));
    return o;
}

template <class F>
PObj<F> p_ring(const ProdPtr<F>& r, int s = 0) {
    return pmap<F>(r, [&](int, const AlgPtr<F>& a) { return ring_obj(a, s); });
}
template <class F>
PObj<F> p_dual(const ProdPtr<F>& r, int s = 0) {
    return pmap<F>(r, [&](int, const AlgPtr<F>& a) { return dual_obj(a, s); });
}
template <class F>
PObj<F> p_residue(const ProdPtr<F>& r, int s = 0) {
    return pmap<F>(r, [&](int, const AlgPtr<F>& a) { return residue_obj(a, s); });
}

template <class F>
void check_same_ring(const PObj<F>& a, const PObj<F>& b) {
    if (a.ring->digest != b.ring->digest) throw PreconditionError("complexes live over different rings");
}

template <class F>
PObj<F> p_shift(const PObj<F>& x, const ShiftVector& s) {
    if (static_cast<int>(s.size()) != x.size()) throw PreconditionError("shift vector has wrong length");
    return pmap<F>(x.ring, [&](int i, const AlgPtr<F>&) { return s[i] == 0 ? x[i] : make_obj(shift(*x[i], s[i])); });
}
template <class F>
PObj<F> p_shift(const PObj<F>& x, int s) {
    return p_shift(x, ShiftVector(x.size(), s));
}

template <class F>
PObj<F> p_sum(const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    return pmap<F>(x.ring, [&](int i, const AlgPtr<F>&) { return make_obj(direct_sum(*x[i], *y[i])); });
}

template <class F>
PObj<F> p_matlis_dual(const PObj<F>& x) {
    return pmap<F>(x.ring, [&](int i, const AlgPtr<F>&) { return make_obj(matlis_dual(*x[i])); });
}

template <class F>
PObj<F> p_rhom(Context<F>& ctx, const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    return pmap<F>(x.ring, [&](int i, const AlgPtr<F>&) { return rhom(ctx, x[i], y[i]); });
}

template <class F>
PObj<F> p_ltensor(Context<F>& ctx, const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    return pmap<F>(x.ring, [&](int i, const AlgPtr<F>&) { return ltensor(ctx, x[i], y[i]); });
}

// Attaches the (1-based) component to a component verdict.
inline Verdict tag_component(Verdict v, int i, int n) {
    if (n == 1) return v;
    json w;
    w["component"] = i + 1;
    if (!v.witness.is_null()) w["detail"] = v.witness;
    v.witness = std::move(w);
    v.reason = "component " + std::to_string(i + 1) + ": " + v.reason;
    return v;
}

// Conjunction of per-component verdicts.
template <class F>
Verdict componentwise(const PObj<F>& x, const std::function<Verdict(int)>& fn, const std::string& holds_reason) {
    std::vector<Verdict> vs;
    for (int i = 0; i < x.size(); ++i) vs.push_back(tag_component(fn(i), i, x.size()));
    return all_of(vs, holds_reason);
}

// Tables over a product: Ext^n(X, Y) is the sum over components. Below a component's
// first degree its contribution is zero; beyond its trusted edge the sum is absent.
inline DimTable sum_tables(const std::vector<DimTable>& ts) {
    DimTable t;
    if (ts.empty()) return t;
    t.lo = ts[0].lo;
    t.hi = ts[0].hi;
    for (const auto& s : ts) {
        t.lo = std::min(t.lo, s.lo);
        t.hi = std::min(t.hi, s.hi);
        t.assumed = t.assumed || s.assumed;
    }
    for (int n = t.lo; n <= t.hi; ++n) {
        int d = 0;
        for (const auto& s : ts)
            if (n >= s.lo) d += *s.at(n);
        t.dims.push_back(d);
    }
    return t;
}

template <class F>
DimTable p_ext_table(Context<F>& ctx, const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    std::vector<DimTable> ts;
    for (int i = 0; i < x.size(); ++i) ts.push_back(ext_table(ctx, x[i], y[i]));
    return sum_tables(ts);
}

template <class F>
DimTable p_tor_table(Context<F>& ctx, const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    std::vector<DimTable> ts;
    for (int i = 0; i < x.size(); ++i) ts.push_back(tor_table(ctx, x[i], y[i]));
    return sum_tables(ts);
}

// pd over a product is the largest component value; any infinite component makes it infinite.
template <class F>
DimInfo combine_dims(const std::vector<DimInfo>& ds) {
    DimInfo r;
    r.zero = true;
    r.finite = true;
    bool first = true;
    for (const auto& d : ds) {
        r.assumed = r.assumed || d.assumed;
        if (d.zero) continue;
        r.zero = false;
        r.finite = r.finite && d.finite;
        if (first || d.absolute > r.absolute) r.absolute = d.absolute;
        if (first || d.normalized > r.normalized) r.normalized = d.normalized;
        first = false;
    }
    return r;
}

template <class F>
DimInfo p_pd(Context<F>& ctx, const PObj<F>& x) {
    std::vector<DimInfo> ds;
    for (const auto& p : x.parts) ds.push_back(pd_info(ctx, p));
    return combine_dims<F>(ds);
}

template <class F>
DimInfo p_id(Context<F>& ctx, const PObj<F>& x) {
    std::vector<DimInfo> ds;
    for (const auto& p : x.parts) ds.push_back(id_info(ctx, p));
    return combine_dims<F>(ds);
}

template <class F>
Verdict p_derived_iso(Context<F>& ctx, const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    return componentwise<F>(x, [&](int i) { return derived_iso(ctx, x[i], y[i]); }, "isomorphic on every component");
}

// depth is only defined over a local ring.
template <class F>
std::optional<int> p_depth(Context<F>& ctx, const PObj<F>& x) {
    if (x.size() != 1) throw PreconditionError("depth is defined over a local ring only");
    return depth(ctx, x[0]);
}

// Window boundedness of every component; obj is present when every component passed.
template <class F>
struct PBounded {
    Verdict status;
    std::optional<PObj<F>> obj;
};

template <class F>
PBounded<F> p_assume_bounded(Context<F>& ctx, const PObj<F>& x) {
    PBounded<F> r;
    std::vector<Verdict> vs;
    PObj<F> out{x.ring, {}};
    bool ok = true;
    for (int i = 0; i < x.size(); ++i) {
        auto b = assume_bounded(ctx, x[i]);
        vs.push_back(tag_component(b.status, i, x.size()));
        if (b.status.is_holds()) out.parts.push_back(*b.obj);
        else ok = false;
    }
    r.status = all_of(vs, "bounded on every component");
    if (ok) r.obj = std::move(out);
    return r;
}

}  // namespace sdclab
