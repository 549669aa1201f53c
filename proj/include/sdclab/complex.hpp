#pragma once

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "module.hpp"

namespace sdclab {

// Defect bounds: a represented complex may differ from the complex it stands for by
// a complex concentrated in degrees <= dlo (low end) or >= dhi (high end). Homology
// is trusted on [dlo + 2, dhi - 2].
inline constexpr int kNoLow = INT_MIN / 4;
inline constexpr int kNoHigh = INT_MAX / 4;
inline constexpr int kNoTrust = INT_MAX / 8;

// Chain complex of modules over a local algebra, homological indexing, d: C_n -> C_{n-1}.
template <class F>
class Complex {
public:
    AlgPtr<F> alg;
    int lo = 0;
    std::vector<FMod<F>> terms;    // terms[i] sits in degree lo + i
    std::vector<SparseMat<F>> d;   // d[i]: terms[i] -> terms[i-1]; d[0] maps to zero
    int dlo = kNoLow, dhi = kNoHigh;
    bool assumed = false;          // stands in for a complex under a window assumption

    Complex() = default;
    explicit Complex(AlgPtr<F> a) : alg(std::move(a)) {}

    bool empty() const { return terms.empty(); }
    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    bool has(int n) const { return !terms.empty() && n >= lo && n <= hi(); }
    int dim(int n) const { return has(n) ? terms[n - lo].dim() : 0; }
    const FMod<F>& term(int n) const { return terms.at(n - lo); }
    FMod<F> term_or_zero(int n) const { return has(n) ? term(n) : FMod<F>::zero(alg); }
    // Differential out of degree n as a dim(n-1) x dim(n) matrix.
    SparseMat<F> diff(int n) const {
        if (!has(n)) return SparseMat<F>(dim(n - 1), 0);
        if (!has(n - 1)) return SparseMat<F>(0, dim(n));
        return d[n - lo];
    }
    const SparseMat<F>* diff_ptr(int n) const { return has(n) && has(n - 1) ? &d[n - lo] : nullptr; }

    bool exact_ends() const { return dlo == kNoLow && dhi == kNoHigh; }
    int trust_lo() const { return dlo == kNoLow ? INT_MIN / 2 : dlo + 2; }
    int trust_hi() const { return dhi == kNoHigh ? INT_MAX / 2 : dhi - 2; }
    bool trusted(int n) const { return n >= trust_lo() && n <= trust_hi(); }
    void mark_untrusted() { dlo = kNoTrust; }

    // Extend the stored range so that degree n exists (with zero modules).
    void ensure(int n) {
        if (terms.empty()) {
            lo = n;
            terms.push_back(FMod<F>::zero(alg));
            d.emplace_back(0, 0);
            return;
        }
        while (n < lo) {
            terms.insert(terms.begin(), FMod<F>::zero(alg));
            d.insert(d.begin(), SparseMat<F>(0, 0));
            --lo;
            d[1] = SparseMat<F>(0, terms[1].dim());
        }
        while (n > hi()) {
            terms.push_back(FMod<F>::zero(alg));
            d.emplace_back(terms[terms.size() - 2].dim(), 0);
        }
    }
    void set_term(int n, FMod<F> m) {
        ensure(n);
        int dm = m.dim();
        terms[n - lo] = std::move(m);
        d[n - lo] = SparseMat<F>(has(n - 1) ? dim(n - 1) : 0, dm);
        if (has(n + 1)) d[n + 1 - lo] = SparseMat<F>(dm, dim(n + 1));
    }
    void set_diff(int n, SparseMat<F> m) {
        if (!has(n) || !has(n - 1)) {
            if (m.is_zero()) return;
            throw std::invalid_argument("set_diff outside the complex");
        }
        if (m.rows != dim(n - 1) || m.cols != dim(n)) throw std::invalid_argument("differential has wrong shape");
        d[n - lo] = std::move(m);
    }
    // Drop zero modules at both ends.
    void trim() {
        while (!terms.empty() && terms.back().dim() == 0) { terms.pop_back(); d.pop_back(); }
        size_t k = 0;
        while (k < terms.size() && terms[k].dim() == 0) ++k;
        if (k > 0) {
            terms.erase(terms.begin(), terms.begin() + k);
            d.erase(d.begin(), d.begin() + k);
            lo += static_cast<int>(k);
            if (!terms.empty()) d[0] = SparseMat<F>(0, terms[0].dim());
        }
    }
    size_t total_dim() const {
        size_t s = 0;
        for (const auto& t : terms) s += t.dim();
        return s;
    }
    Digest digest() const {
        const F& f = alg->field;
        Hasher h;
        h.str("complex").digest(alg->digest).i64(lo).i64(dlo).i64(dhi).i64(assumed);
        for (size_t i = 0; i < terms.size(); ++i) {
            h.digest(terms[i].digest());
            for (int j = 0; j < d[i].cols; ++j) {
                h.i64(-1 - j);
                for (const auto& [r, v] : d[i].col[j]) h.i64(r).elem(f, v);
            }
        }
        return h.done();
    }
};

template <class F>
using CPtr = std::shared_ptr<const Complex<F>>;

template <class F>
Complex<F> module_complex(const FMod<F>& m, int degree = 0) {
    Complex<F> c(m.alg);
    if (m.dim() > 0) c.set_term(degree, m);
    return c;
}

template <class F>
bool is_complex(const Complex<F>& c) {
    const F& f = c.alg->field;
    for (int n = c.lo + 1; n < c.hi(); ++n) {
        auto a = c.diff_ptr(n), b = c.diff_ptr(n + 1);
        if (a && b && !multiply(f, *a, *b).is_zero()) return false;
    }
    return true;
}

// (Sigma^i X)_n = X_{n-i}, differential multiplied by (-1)^i.
template <class F>
Complex<F> shift(const Complex<F>& x, int i) {
    Complex<F> s = x;
    s.lo += i;
    if (i % 2 != 0)
        for (auto& m : s.d) m = scale(x.alg->field, m, x.alg->field.neg(x.alg->field.one()));
    if (s.dlo != kNoLow && s.dlo != kNoTrust) s.dlo += i;
    if (s.dhi != kNoHigh) s.dhi += i;
    return s;
}

template <class F>
void merge_defects(Complex<F>& r, const Complex<F>& a, const Complex<F>& b) {
    r.dlo = std::max(a.dlo, b.dlo);
    r.dhi = std::min(a.dhi, b.dhi);
    r.assumed = a.assumed || b.assumed;
}

template <class F>
Complex<F> direct_sum(const Complex<F>& x, const Complex<F>& y) {
    const F& f = x.alg->field;
    Complex<F> s(x.alg);
    if (x.empty() && y.empty()) { merge_defects(s, x, y); return s; }
    int lo = x.empty() ? y.lo : (y.empty() ? x.lo : std::min(x.lo, y.lo));
    int hi = x.empty() ? y.hi() : (y.empty() ? x.hi() : std::max(x.hi(), y.hi()));
    for (int n = lo; n <= hi; ++n) s.set_term(n, direct_sum(x.term_or_zero(n), y.term_or_zero(n)));
    for (int n = lo + 1; n <= hi; ++n) {
        SparseMat<F> m(s.dim(n - 1), s.dim(n));
        if (auto a = x.diff_ptr(n)) place(m, *a, 0, 0);
        if (auto b = y.diff_ptr(n)) place(m, *b, x.dim(n - 1), x.dim(n));
        s.set_diff(n, std::move(m));
    }
    (void)f;
    merge_defects(s, x, y);
    return s;
}

// ---------------------------------------------------------------------------
// Homology

template <class F>
struct HomologyProfile {
    int lo = 0, hi = -1;                  // range of stored degrees
    std::vector<int> dims;                // dims[n - lo]
    std::vector<std::optional<FMod<F>>> modules;
    int trust_lo = INT_MIN / 2, trust_hi = INT_MAX / 2;

    bool trusted(int n) const { return n >= trust_lo && n <= trust_hi; }
    int dim(int n) const { return (n < lo || n > hi) ? 0 : dims[n - lo]; }
    // Trusted nonzero degrees.
    std::vector<int> support() const {
        std::vector<int> s;
        for (int n = lo; n <= hi; ++n)
            if (trusted(n) && dims[n - lo] > 0) s.push_back(n);
        return s;
    }
    std::optional<int> inf() const {
        auto s = support();
        if (s.empty()) return std::nullopt;
        return s.front();
    }
    std::optional<int> sup() const {
        auto s = support();
        if (s.empty()) return std::nullopt;
        return s.back();
    }
    std::optional<int> amp() const {
        auto a = inf(), b = sup();
        if (!a) return std::nullopt;
        return *b - *a;
    }
    bool all_trusted_zero() const { return support().empty(); }
};

template <class F>
int homology_dim(const Complex<F>& x, int n) {
    if (!x.has(n)) return 0;
    const F& f = x.alg->field;
    int r_out = x.diff_ptr(n) ? rank(f, *x.diff_ptr(n)) : 0;
    int r_in = x.diff_ptr(n + 1) ? rank(f, *x.diff_ptr(n + 1)) : 0;
    return x.dim(n) - r_out - r_in;
}

template <class F>
HomologyProfile<F> homology_dims(const Complex<F>& x) {
    HomologyProfile<F> h;
    h.trust_lo = x.trust_lo();
    h.trust_hi = x.trust_hi();
    if (x.empty()) return h;
    const F& f = x.alg->field;
    h.lo = x.lo;
    h.hi = x.hi();
    std::vector<int> r(x.terms.size() + 1, 0);  // r[i] = rank of d into degree lo+i-1 from lo+i
    for (int n = x.lo + 1; n <= x.hi(); ++n)
        if (auto m = x.diff_ptr(n)) r[n - x.lo] = rank(f, *m);
    for (int n = x.lo; n <= x.hi(); ++n) {
        int out = r[n - x.lo];
        int in = n + 1 <= x.hi() ? r[n + 1 - x.lo] : 0;
        h.dims.push_back(x.dim(n) - out - in);
    }
    h.modules.resize(h.dims.size());
    return h;
}

template <class F>
Subquotient<F> homology_at(const Complex<F>& x, int n) {
    const F& f = x.alg->field;
    const auto& mod = x.term(n);
    std::vector<SVec<F>> z = x.diff_ptr(n) ? kernel(f, *x.diff_ptr(n)) : unit_vectors(f, mod.dim());
    std::vector<SVec<F>> b;
    if (auto m = x.diff_ptr(n + 1)) b = m->col;
    return subquotient(mod, z, b);
}

// Homology modules in every stored degree (flagging trust as in the input).
template <class F>
HomologyProfile<F> homology(const Complex<F>& x) {
    HomologyProfile<F> h;
    h.trust_lo = x.trust_lo();
    h.trust_hi = x.trust_hi();
    if (x.empty()) return h;
    h.lo = x.lo;
    h.hi = x.hi();
    for (int n = x.lo; n <= x.hi(); ++n) {
        auto sq = homology_at(x, n);
        h.dims.push_back(sq.dim());
        h.modules.push_back(FMod<F>::of_atom(x.alg, sq.atom));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Chain maps

template <class F>
struct ChainMap {
    CPtr<F> src, dst;
    std::map<int, SparseMat<F>> maps;  // degree n: src_n -> dst_n

    SparseMat<F> at(int n) const {
        auto it = maps.find(n);
        if (it != maps.end()) return it->second;
        return SparseMat<F>(dst->dim(n), src->dim(n));
    }
};

template <class F>
bool is_chain_map(const ChainMap<F>& f) {
    const F& fld = f.src->alg->field;
    int lo = std::min(f.src->empty() ? 0 : f.src->lo, f.dst->empty() ? 0 : f.dst->lo);
    int hi = std::max(f.src->empty() ? 0 : f.src->hi(), f.dst->empty() ? 0 : f.dst->hi());
    for (int n = lo; n <= hi + 1; ++n) {
        auto l = multiply(fld, f.dst->diff(n), f.at(n));
        auto r = multiply(fld, f.at(n - 1), f.src->diff(n));
        if (!(l == r)) return false;
    }
    return true;
}

template <class F>
ChainMap<F> identity_map(const CPtr<F>& x) {
    ChainMap<F> m{x, x, {}};
    for (int n = x->lo; n <= x->hi(); ++n) m.maps[n] = SparseMat<F>::identity(x->alg->field, x->dim(n));
    return m;
}

// cone(f)_n = X_{n-1} + Y_n, d(x, y) = (-dx, f(x) + dy).
template <class F>
Complex<F> cone(const ChainMap<F>& f) {
    const auto& X = *f.src;
    const auto& Y = *f.dst;
    const F& fld = X.alg->field;
    Complex<F> c(X.alg);
    int lo = INT_MAX, hi = INT_MIN;
    if (!X.empty()) { lo = std::min(lo, X.lo + 1); hi = std::max(hi, X.hi() + 1); }
    if (!Y.empty()) { lo = std::min(lo, Y.lo); hi = std::max(hi, Y.hi()); }
    if (lo > hi) return c;
    for (int n = lo; n <= hi; ++n) c.set_term(n, direct_sum(X.term_or_zero(n - 1), Y.term_or_zero(n)));
    const auto minus = fld.neg(fld.one());
    for (int n = lo + 1; n <= hi; ++n) {
        SparseMat<F> m(c.dim(n - 1), c.dim(n));
        const int xo = X.dim(n - 2), xi = X.dim(n - 1);
        if (auto dx = X.diff_ptr(n - 1)) place(m, scale(fld, *dx, minus), 0, 0);
        if (xi > 0 && Y.dim(n - 1) > 0) place(m, f.at(n - 1), xo, 0);
        if (auto dy = Y.diff_ptr(n)) place(m, *dy, xo, xi);
        normalize_columns(fld, m);
        c.set_diff(n, std::move(m));
    }
    c.dlo = std::max(X.dlo == kNoLow ? kNoLow : X.dlo + 1, Y.dlo);
    c.dhi = std::min(X.dhi == kNoHigh ? kNoHigh : X.dhi + 1, Y.dhi);
    c.assumed = X.assumed || Y.assumed;
    return c;
}

// ---------------------------------------------------------------------------
// Defect bookkeeping for Hom and tensor of represented complexes

// Degree range and defects of a represented complex, detached from its terms.
struct Shape {
    bool empty = true;
    int lo = 0, hi = -1;
    int dlo = kNoLow, dhi = kNoHigh;
    bool assumed = false;
};

template <class F>
Shape shape_of(const Complex<F>& x) {
    return {x.empty(), x.empty() ? 0 : x.lo, x.empty() ? -1 : x.hi(), x.dlo, x.dhi, x.assumed};
}

inline bool unbounded(int v) { return v == kNoLow || v == kNoHigh; }

// True extent of the represented object; sentinels mark an unbounded end.
inline std::pair<int, int> true_extent(const Shape& x) {
    int lo = x.empty ? 0 : x.lo, hi = x.empty ? 0 : x.hi;
    return {x.dlo == kNoLow ? lo : kNoLow, x.dhi == kNoHigh ? hi : kNoHigh};
}

struct Defects {
    int dlo = kNoLow, dhi = kNoHigh;
    bool assumed = false;
};

// Defects of Hom(X, Y) built from representatives of X and Y.
inline Defects hom_defects(const Shape& x, const Shape& y) {
    int dlo = kNoLow, dhi = kNoHigh;
    bool bad = x.dlo == kNoTrust || y.dlo == kNoTrust;
    auto [ylo_t, yhi_t] = true_extent(y);
    int xlo = x.empty ? 0 : x.lo, xhi = x.empty ? 0 : x.hi;
    if (x.dhi != kNoHigh) {  // X differs in degrees >= x.dhi
        if (unbounded(yhi_t)) bad = true; else dlo = std::max(dlo, yhi_t - x.dhi);
    }
    if (x.dlo != kNoLow && x.dlo != kNoTrust) {
        if (unbounded(ylo_t)) bad = true; else dhi = std::min(dhi, ylo_t - x.dlo);
    }
    if (y.dlo != kNoLow && y.dlo != kNoTrust) dlo = std::max(dlo, y.dlo - xlo);
    if (y.dhi != kNoHigh) dhi = std::min(dhi, y.dhi - xhi);
    return {bad ? kNoTrust : dlo, dhi, x.assumed || y.assumed};
}

inline Defects tensor_defects(const Shape& x, const Shape& y) {
    int dlo = kNoLow, dhi = kNoHigh;
    bool bad = x.dlo == kNoTrust || y.dlo == kNoTrust;
    auto [ylo_t, yhi_t] = true_extent(y);
    int xlo = x.empty ? 0 : x.lo, xhi = x.empty ? 0 : x.hi;
    if (x.dhi != kNoHigh) {
        if (unbounded(ylo_t)) bad = true; else dhi = std::min(dhi, x.dhi + ylo_t);
    }
    if (x.dlo != kNoLow && x.dlo != kNoTrust) {
        if (unbounded(yhi_t)) bad = true; else dlo = std::max(dlo, x.dlo + yhi_t);
    }
    if (y.dhi != kNoHigh) dhi = std::min(dhi, y.dhi + xlo);
    if (y.dlo != kNoLow && y.dlo != kNoTrust) dlo = std::max(dlo, y.dlo + xhi);
    return {bad ? kNoTrust : dlo, dhi, x.assumed || y.assumed};
}

template <class F>
void apply_defects(Complex<F>& c, const Defects& d) {
    c.dlo = d.dlo;
    c.dhi = d.dhi;
    c.assumed = d.assumed;
}

// ---------------------------------------------------------------------------
// Total Hom complex: Hom(X,Y)_n = sum_p Hom_A(X_p, Y_{p+n}),
// (df) = d^Y f - (-1)^n f d^X.

template <class F>
struct HomComplexData {
    Complex<F> cx;
    // For degree n, the list of (p, offset, HomSpace) blocks composing the term.
    struct Block { int p; int offset; std::shared_ptr<HomSpace<F>> hs; };
    std::map<int, std::vector<Block>> blocks;
};

template <class F>
HomComplexData<F> hom_complex_data(const Complex<F>& X, const Complex<F>& Y) {
    const F& f = X.alg->field;
    HomComplexData<F> out;
    out.cx = Complex<F>(X.alg);
    if (X.empty() || Y.empty()) { apply_defects(out.cx, hom_defects(shape_of(X), shape_of(Y))); return out; }
    int lo = Y.lo - X.hi(), hi = Y.hi() - X.lo;
    std::map<std::pair<int, int>, std::shared_ptr<HomSpace<F>>> spaces;
    auto space = [&](int p, int q) {
        auto key = std::make_pair(p, q);
        auto it = spaces.find(key);
        if (it != spaces.end()) return it->second;
        auto hs = std::make_shared<HomSpace<F>>(hom_space(X.term(p), Y.term(q)));
        spaces[key] = hs;
        return hs;
    };
    for (int n = lo; n <= hi; ++n) {
        FMod<F> term(X.alg);
        int off = 0;
        for (int p = X.lo; p <= X.hi(); ++p) {
            int q = p + n;
            if (!Y.has(q) || X.dim(p) == 0 || Y.dim(q) == 0) continue;
            auto hs = space(p, q);
            if (hs->dim() == 0) continue;
            // A acts by post-composition.
            std::vector<SparseMat<F>> act;
            for (int b = 0; b < X.alg->dim; ++b) {
                SparseMat<F> m(hs->dim(), hs->dim());
                for (int t = 0; t < hs->dim(); ++t)
                    m.col[t] = hs->coords(vectorize(multiply(f, Y.term(q).act(b), hs->matrix(t))));
                act.push_back(std::move(m));
            }
            term.push({make_atom(f, hs->dim(), std::move(act)), 1});
            out.blocks[n].push_back({p, off, hs});
            off += hs->dim();
        }
        out.cx.set_term(n, std::move(term));
    }
    for (int n = lo + 1; n <= hi; ++n) {
        if (!out.cx.has(n) || !out.cx.has(n - 1)) continue;
        SparseMat<F> m(out.cx.dim(n - 1), out.cx.dim(n));
        const auto sign = (n % 2 == 0) ? f.neg(f.one()) : f.one();  // -(-1)^n
        std::map<int, const typename HomComplexData<F>::Block*> target;
        for (const auto& b : out.blocks[n - 1]) target[b.p] = &b;
        for (const auto& b : out.blocks[n]) {
            int p = b.p, q = p + n;
            for (int t = 0; t < b.hs->dim(); ++t) {
                auto phi = b.hs->matrix(t);
                SVec<F> colv;
                auto it = target.find(p);
                if (it != target.end() && Y.diff_ptr(q)) {
                    auto c = it->second->hs->coords(vectorize(multiply(f, *Y.diff_ptr(q), phi)));
                    colv = svec_axpy(f, colv, svec_shift(c, it->second->offset), f.one());
                }
                auto it2 = target.find(p + 1);
                if (it2 != target.end() && X.diff_ptr(p + 1)) {
                    auto c = it2->second->hs->coords(vectorize(multiply(f, phi, *X.diff_ptr(p + 1))));
                    colv = svec_axpy(f, colv, svec_shift(c, it2->second->offset), sign);
                }
                m.col[b.offset + t] = std::move(colv);
            }
        }
        out.cx.set_diff(n, std::move(m));
    }
    apply_defects(out.cx, hom_defects(shape_of(X), shape_of(Y)));
    return out;
}

template <class F>
Complex<F> hom_complex(const Complex<F>& X, const Complex<F>& Y) {
    return hom_complex_data(X, Y).cx;
}

// ---------------------------------------------------------------------------
// Total tensor complex: (X (x) Y)_n = sum_p X_p (x)_A Y_{n-p},
// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db.

template <class F>
struct TensorComplexData {
    Complex<F> cx;
    struct Block { int p; int offset; std::shared_ptr<TensorSpace<F>> ts; };
    std::map<int, std::vector<Block>> blocks;
};

template <class F>
TensorComplexData<F> tensor_complex_data(const Complex<F>& X, const Complex<F>& Y) {
    const F& f = X.alg->field;
    TensorComplexData<F> out;
    out.cx = Complex<F>(X.alg);
    if (X.empty() || Y.empty()) { apply_defects(out.cx, tensor_defects(shape_of(X), shape_of(Y))); return out; }
    int lo = X.lo + Y.lo, hi = X.hi() + Y.hi();
    for (int n = lo; n <= hi; ++n) {
        FMod<F> term(X.alg);
        int off = 0;
        for (int p = X.lo; p <= X.hi(); ++p) {
            int q = n - p;
            if (!Y.has(q) || X.dim(p) == 0 || Y.dim(q) == 0) continue;
            auto ts = std::make_shared<TensorSpace<F>>(tensor_space(X.term(p), Y.term(q)));
            if (ts->mod.dim() == 0) continue;
            term.append(ts->mod);
            out.blocks[n].push_back({p, off, ts});
            off += ts->mod.dim();
        }
        out.cx.set_term(n, std::move(term));
    }
    for (int n = lo + 1; n <= hi; ++n) {
        if (!out.cx.has(n) || !out.cx.has(n - 1)) continue;
        SparseMat<F> m(out.cx.dim(n - 1), out.cx.dim(n));
        std::map<int, const typename TensorComplexData<F>::Block*> target;
        for (const auto& b : out.blocks[n - 1]) target[b.p] = &b;
        for (const auto& b : out.blocks[n]) {
            int p = b.p, q = n - p;
            const int xm = b.ts->m, yn = b.ts->n;
            const auto sign = (p % 2 == 0) ? f.one() : f.neg(f.one());
            for (int t = 0; t < b.ts->mod.dim(); ++t) {
                const auto& rep = b.ts->sq.reps[t];
                SVec<F> colv;
                auto it = target.find(p - 1);
                if (it != target.end() && X.diff_ptr(p)) {
                    Accum<F> acc(f, X.dim(p - 1) * yn);
                    for (const auto& [idx, v] : rep) {
                        int i = idx / yn, j = idx % yn;
                        for (const auto& [i2, w] : X.diff_ptr(p)->col[i]) acc.add(i2 * yn + j, f.mul(v, w));
                    }
                    auto c = it->second->ts->project(acc.take());
                    colv = svec_axpy(f, colv, svec_shift(c, it->second->offset), f.one());
                }
                auto it2 = target.find(p);
                if (it2 != target.end() && Y.diff_ptr(q)) {
                    const int yn2 = Y.dim(q - 1);
                    Accum<F> acc(f, xm * yn2);
                    for (const auto& [idx, v] : rep) {
                        int i = idx / yn, j = idx % yn;
                        for (const auto& [j2, w] : Y.diff_ptr(q)->col[j]) acc.add(i * yn2 + j2, f.mul(v, w));
                    }
                    auto c = it2->second->ts->project(acc.take());
                    colv = svec_axpy(f, colv, svec_shift(c, it2->second->offset), sign);
                }
                m.col[b.offset + t] = std::move(colv);
            }
        }
        out.cx.set_diff(n, std::move(m));
    }
    apply_defects(out.cx, tensor_defects(shape_of(X), shape_of(Y)));
    return out;
}

template <class F>
Complex<F> tensor_complex(const Complex<F>& X, const Complex<F>& Y) {
    return tensor_complex_data(X, Y).cx;
}

// Matlis dual complex: (X^v)_n = (X_{-n})^v, differential -(-1)^n (d_{1-n})^T,
// i.e. Hom(X, E) with E = Hom_k(A, k) in degree 0.
template <class F>
Complex<F> matlis_dual(const Complex<F>& x) {
    const F& f = x.alg->field;
    Complex<F> d(x.alg);
    if (!x.empty()) {
        for (int n = -x.hi(); n <= -x.lo; ++n) d.set_term(n, matlis_dual(x.term(-n)));
        for (int n = -x.hi() + 1; n <= -x.lo; ++n) {
            auto t = transpose(x.diff(1 - n));
            d.set_diff(n, (n % 2 == 0) ? scale(f, t, f.neg(f.one())) : t);
        }
    }
    d.dlo = x.dhi == kNoHigh ? kNoLow : -x.dhi;
    d.dhi = (x.dlo == kNoLow || x.dlo == kNoTrust) ? kNoHigh : -x.dlo;
    if (x.dlo == kNoTrust) d.dlo = kNoTrust;
    d.assumed = x.assumed;
    return d;
}

}  // namespace sdclab
