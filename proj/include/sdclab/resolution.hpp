#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "complex.hpp"

namespace sdclab {

// Minimal free resolution P -> X of a bounded complex over a local algebra, built degree by
// degree by killing cycles of cone(P_{<n} -> X). Generator j of P_n has differential dimg and
// augmentation eimg, both in k-coordinates.
template <class F>
class Resolution {
public:
    AlgPtr<F> alg;
    CPtr<F> target;
    int start = 0;
    std::vector<int> betti;                        // betti[n - start] for computed degrees
    std::vector<std::vector<SVec<F>>> dimg, eimg;  // per computed degree, per generator
    bool terminated = false;                       // P_n = 0 for every n > top()

    explicit Resolution(CPtr<F> x) : alg(x->alg), target(std::move(x)) {
        if (!target->exact_ends()) throw std::invalid_argument("cannot resolve a truncated representative");
        if (target->empty()) {
            terminated = true;
            start = 0;
            return;
        }
        start = target->lo;
    }

    int top() const { return start + static_cast<int>(betti.size()) - 1; }
    int b(int n) const { return (n < start || n > top()) ? 0 : betti[n - start]; }
    // Highest degree with a nonzero Betti number among computed ones; start - 1 if none.
    int length() const {
        for (int n = top(); n >= start; --n)
            if (b(n) > 0) return n;
        return start - 1;
    }
    // Whether sigma_{<= N} P is all of P.
    bool complete_below(int N) const { return terminated && N >= top(); }

    void extend_to(int N) {
        while (!terminated && top() < N) step();
    }

    // Differential P_n -> P_{n-1}.
    SparseMat<F> differential(int n) const {
        if (n - 1 < start || n > top()) return SparseMat<F>(b(n - 1) * alg->dim, b(n) * alg->dim);
        return free_map(*alg, b(n - 1), dimg[n - start]);
    }
    const std::vector<SVec<F>>& gens_d(int n) const { return dimg.at(n - start); }
    const std::vector<SVec<F>>& gens_e(int n) const { return eimg.at(n - start); }

    // The brutal truncation sigma_{<= N} P as a complex.
    Complex<F> free_complex(int N) const {
        if (!terminated && top() < N) throw std::logic_error("resolution not computed far enough");
        Complex<F> c(alg);
        const int hi = std::min(N, top());
        for (int n = start; n <= hi; ++n) c.set_term(n, FMod<F>::free(alg, b(n)));
        for (int n = start + 1; n <= hi; ++n) c.set_diff(n, differential(n));
        if (!complete_below(N)) c.dhi = N + 1;
        return c;
    }

    // Augmentation sigma_{<= N} P -> X.
    ChainMap<F> augmentation(const CPtr<F>& src) const {
        ChainMap<F> m{src, target, {}};
        if (src->empty()) return m;
        const int d = alg->dim;
        for (int n = src->lo; n <= src->hi(); ++n) {
            if (b(n) == 0 || target->dim(n) == 0) continue;
            SparseMat<F> e(target->dim(n), b(n) * d);
            const auto& X = target->term(n);
            for (int i = 0; i < b(n); ++i)
                for (int c = 0; c < d; ++c) e.col[i * d + c] = apply(alg->field, X.act(c), gens_e(n)[i]);
            m.maps[n] = std::move(e);
        }
        return m;
    }

    Shape shape(int N) const {
        Shape s;
        const int hi = std::min(N, top());
        s.empty = hi < start;
        s.lo = start;
        s.hi = hi;
        s.dlo = kNoLow;
        s.dhi = complete_below(N) ? kNoHigh : N + 1;
        return s;
    }

private:
    void step() {
        const auto& X = *target;
        const F& f = alg->field;
        const int d = alg->dim;
        const int n = betti.empty() ? start : top() + 1;
        const int bp = b(n - 1), bpp = b(n - 2);
        const int pdim = bp * d, ppdim = bpp * d, xn = X.dim(n), xm = X.dim(n - 1);
        const auto minus = f.neg(f.one());

        // cone_n = P_{n-1} + X_n -> P_{n-2} + X_{n-1}, (p, x) -> (-dp, e(p) + dx).
        SparseMat<F> D(ppdim + xm, pdim + xn);
        if (bp > 0) {
            const auto& dprev = gens_d(n - 1);
            const auto& eprev = gens_e(n - 1);
            for (int i = 0; i < bp; ++i)
                for (int c = 0; c < d; ++c) {
                    auto col = svec_scale(f, free_act(*alg, c, dprev[i]), minus);
                    if (xm > 0) {
                        auto w = apply(f, X.term(n - 1).act(c), eprev[i]);
                        for (auto& e : w) col.emplace_back(e.first + ppdim, e.second);
                    }
                    D.col[i * d + c] = std::move(col);
                }
        }
        if (auto dx = X.diff_ptr(n))
            for (int u = 0; u < xn; ++u) D.col[pdim + u] = svec_shift(dx->col[u], ppdim);
        auto Z = kernel(f, D);

        FMod<F> cmod = direct_sum(FMod<F>::free(alg, bp), X.term_or_zero(n));
        Reducer<F> red(f, pdim + xn);
        if (auto dx = X.diff_ptr(n + 1))
            for (const auto& col : dx->col) red.insert(svec_shift(col, pdim));
        Accum<F> acc(f, pdim + xn);
        for (const auto& z : Z)
            for (int m : alg->mideal) red.insert(apply(f, cmod.act(m), z, acc));

        std::vector<SVec<F>> dn, en;
        for (const auto& z : Z) {
            auto r = red.reduce(z);
            if (r.empty()) continue;
            red.insert_residual(std::move(r));
            SVec<F> q, x;
            for (const auto& [i, v] : z) {
                if (i < pdim) q.emplace_back(i, f.neg(v));
                else x.emplace_back(i - pdim, v);
            }
            dn.push_back(std::move(q));
            en.push_back(std::move(x));
        }
        betti.push_back(static_cast<int>(dn.size()));
        dimg.push_back(std::move(dn));
        eimg.push_back(std::move(en));
        if (betti.back() == 0 && n >= X.hi()) terminated = true;
    }
};

// ---------------------------------------------------------------------------
// Hom(sigma_{<=N} P, Y) and sigma_{<=N} P (x) Y for a free resolution P and any complex Y.
// Degree-n terms are sums of blocks (p, i): one copy of Y_{p+n} (resp. Y_{n-p}) per
// generator i of P_p, ordered by p and then i.

struct BlockLayout {
    std::map<int, std::map<int, int>> off;  // off[n][p] = first coordinate of block (p, 0)
    bool has(int n, int p) const {
        auto it = off.find(n);
        return it != off.end() && it->second.count(p);
    }
    int at(int n, int p) const { return off.at(n).at(p); }
};

template <class F>
struct FreeFunctor {
    Complex<F> cx;
    BlockLayout layout;
    int N = 0;
};

template <class F>
FreeFunctor<F> free_hom(const Resolution<F>& P, int N, const Complex<F>& Y) {
    const auto& A = *P.alg;
    const F& f = A.field;
    const int d = A.dim;
    FreeFunctor<F> h;
    h.N = N;
    h.cx = Complex<F>(P.alg);
    auto ps = P.shape(N);
    if (!P.terminated && P.top() < N) throw std::logic_error("resolution not computed far enough");
    if (Y.empty() || ps.empty) {
        apply_defects(h.cx, hom_defects(ps, shape_of(Y)));
        return h;
    }
    const int ptop = ps.hi;
    const int lo = Y.lo - ptop, hi = Y.hi() - P.start;
    for (int n = lo; n <= hi; ++n) {
        FMod<F> term(P.alg);
        int o = 0;
        for (int p = P.start; p <= ptop; ++p) {
            const int q = p + n, bp = P.b(p), dy = Y.dim(q);
            if (bp == 0 || dy == 0) continue;
            h.layout.off[n][p] = o;
            for (int i = 0; i < bp; ++i) term.append(Y.term(q));
            o += bp * dy;
        }
        h.cx.set_term(n, std::move(term));
    }
    // For each p, the entries of d(e_j) in P_p grouped by the generator i they touch.
    struct Entry { int j, c; typename F::Elem v; };
    std::map<int, std::vector<std::vector<Entry>>> trans;
    for (int p = P.start; p < ptop; ++p) {
        auto& t = trans[p];
        t.assign(P.b(p), {});
        if (P.b(p + 1) == 0) continue;
        const auto& g = P.gens_d(p + 1);
        for (int j = 0; j < static_cast<int>(g.size()); ++j)
            for (const auto& [idx, v] : g[j]) t[idx / d].push_back({j, idx % d, v});
    }
    for (int n = lo + 1; n <= hi; ++n) {
        SparseMat<F> m(h.cx.dim(n - 1), h.cx.dim(n));
        const auto sign = (n % 2 == 0) ? f.neg(f.one()) : f.one();  // -(-1)^n
        Accum<F> acc(f, h.cx.dim(n - 1));
        if (!h.layout.off.count(n)) continue;
        for (const auto& [p, o] : h.layout.off.at(n)) {
            const int q = p + n, bp = P.b(p), dy = Y.dim(q), dyl = Y.dim(q - 1);
            const auto* dyq = Y.diff_ptr(q);
            const int oa = h.layout.has(n - 1, p) ? h.layout.at(n - 1, p) : -1;
            const int ob = h.layout.has(n - 1, p + 1) ? h.layout.at(n - 1, p + 1) : -1;
            const auto& Yq = Y.term(q);
            for (int i = 0; i < bp; ++i)
                for (int u = 0; u < dy; ++u) {
                    if (dyq && oa >= 0)
                        for (const auto& [r, v] : dyq->col[u]) acc.add(oa + i * dyl + r, v);
                    if (ob >= 0)
                        for (const auto& e : trans[p][i])
                            for (const auto& [r, v] : Yq.act(e.c).col[u])
                                acc.add(ob + e.j * dy + r, f.mul(sign, f.mul(e.v, v)));
                    m.col[o + i * dy + u] = acc.take();
                }
        }
        h.cx.set_diff(n, std::move(m));
    }
    apply_defects(h.cx, hom_defects(ps, shape_of(Y)));
    return h;
}

template <class F>
FreeFunctor<F> free_tensor(const Resolution<F>& P, int N, const Complex<F>& Y) {
    const auto& A = *P.alg;
    const F& f = A.field;
    const int d = A.dim;
    FreeFunctor<F> t;
    t.N = N;
    t.cx = Complex<F>(P.alg);
    auto ps = P.shape(N);
    if (!P.terminated && P.top() < N) throw std::logic_error("resolution not computed far enough");
    if (Y.empty() || ps.empty) {
        apply_defects(t.cx, tensor_defects(ps, shape_of(Y)));
        return t;
    }
    const int ptop = ps.hi;
    const int lo = P.start + Y.lo, hi = ptop + Y.hi();
    for (int n = lo; n <= hi; ++n) {
        FMod<F> term(P.alg);
        int o = 0;
        for (int p = P.start; p <= ptop; ++p) {
            const int q = n - p, bp = P.b(p), dy = Y.dim(q);
            if (bp == 0 || dy == 0) continue;
            t.layout.off[n][p] = o;
            for (int i = 0; i < bp; ++i) term.append(Y.term(q));
            o += bp * dy;
        }
        t.cx.set_term(n, std::move(term));
    }
    for (int n = lo + 1; n <= hi; ++n) {
        SparseMat<F> m(t.cx.dim(n - 1), t.cx.dim(n));
        Accum<F> acc(f, t.cx.dim(n - 1));
        if (!t.layout.off.count(n)) continue;
        for (const auto& [p, o] : t.layout.off.at(n)) {
            const int q = n - p, bp = P.b(p), dy = Y.dim(q), dyl = Y.dim(q - 1);
            const auto* dyq = Y.diff_ptr(q);
            const int oa = t.layout.has(n - 1, p - 1) ? t.layout.at(n - 1, p - 1) : -1;  // d(e_i) (x) u
            const int ob = t.layout.has(n - 1, p) ? t.layout.at(n - 1, p) : -1;          // e_i (x) du
            const auto sign = (p % 2 == 0) ? f.one() : f.neg(f.one());
            const auto& Yq = Y.term(q);
            for (int i = 0; i < bp; ++i) {
                const SVec<F>* di = (oa >= 0) ? &P.gens_d(p)[i] : nullptr;
                for (int u = 0; u < dy; ++u) {
                    if (di)
                        for (const auto& [idx, v] : *di)
                            for (const auto& [r, w] : Yq.act(idx % d).col[u])
                                acc.add(oa + (idx / d) * dy + r, f.mul(v, w));
                    if (dyq && ob >= 0)
                        for (const auto& [r, v] : dyq->col[u]) acc.add(ob + i * dyl + r, f.mul(sign, v));
                    m.col[o + i * dy + u] = acc.take();
                }
            }
        }
        t.cx.set_diff(n, std::move(m));
    }
    apply_defects(t.cx, tensor_defects(ps, shape_of(Y)));
    return t;
}

// ---------------------------------------------------------------------------
// Soft truncations.

template <class F>
struct Truncation {
    Complex<F> cx;
    int s = 0, t = -1;                       // kept homology range
    std::optional<Subquotient<F>> low;       // Z_s as a submodule of the original term
    std::optional<Subquotient<F>> high;      // X_t / B_t
    bool lowcut = false, highcut = false;

    // Coordinates in the truncation of a vector v of the original term in degree n
    // (v must be a cycle when n == s on a low cut).
    SVec<F> to_trunc(int n, const SVec<F>& v) const {
        if (lowcut && n == s) return low->coords(v);
        if (highcut && n == t) return high->coords(v);
        return v;
    }
    // Original-term vector of a truncation vector in degree n (not defined on a high cut).
    SVec<F> from_trunc(const F& f, int n, const SVec<F>& v) const {
        if (lowcut && n == s) {
            Accum<F> acc(f, low->red->dim());
            for (const auto& [k, x] : v) acc.add_scaled(low->reps[k], x);
            return acc.take();
        }
        if (highcut && n == t) throw std::logic_error("no lift through the quotient term");
        return v;
    }
};

// tau_{>= s} tau_{<= t} X: Z_s in degree s, X_t / B_t in degree t.
template <class F>
Truncation<F> soft_truncate(const Complex<F>& x, std::optional<int> s, std::optional<int> t) {
    const F& f = x.alg->field;
    Truncation<F> r;
    r.cx = Complex<F>(x.alg);
    if (x.empty()) return r;
    int lo = s ? std::max(*s, x.lo) : x.lo;
    int hi = t ? std::min(*t, x.hi()) : x.hi();
    r.s = lo;
    r.t = hi;
    if (lo > hi) return r;
    r.lowcut = s && *s >= x.lo;
    r.highcut = t && *t <= x.hi();
    if (r.lowcut && r.highcut && lo == hi) {
        // Single degree: the homology module.
        auto h = homology_at(x, lo);
        r.cx.set_term(lo, FMod<F>::of_atom(x.alg, h.atom));
        r.low = h;
        r.highcut = false;  // coordinates go through the homology subquotient
        return r;
    }
    std::vector<FMod<F>> terms;
    for (int n = lo; n <= hi; ++n) {
        if (r.lowcut && n == lo) {
            auto z = x.diff_ptr(n) ? kernel(f, *x.diff_ptr(n)) : unit_vectors(f, x.dim(n));
            r.low = subquotient(x.term(n), z, {});
            r.cx.set_term(n, FMod<F>::of_atom(x.alg, r.low->atom));
        } else if (r.highcut && n == hi) {
            std::vector<SVec<F>> b;
            if (auto m = x.diff_ptr(n + 1)) b = m->col;
            r.high = subquotient(x.term(n), unit_vectors(f, x.dim(n)), b);
            r.cx.set_term(n, FMod<F>::of_atom(x.alg, r.high->atom));
        } else {
            r.cx.set_term(n, x.term(n));
        }
    }
    for (int n = lo + 1; n <= hi; ++n) {
        const auto* dm = x.diff_ptr(n);
        if (!dm) continue;
        SparseMat<F> m(r.cx.dim(n - 1), r.cx.dim(n));
        for (int k = 0; k < r.cx.dim(n); ++k) {
            SVec<F> src = (r.highcut && n == hi) ? r.high->reps[k] : SVec<F>{{k, f.one()}};
            if (r.lowcut && n == lo) src = r.low->reps[k];
            m.col[k] = r.to_trunc(n - 1, apply(f, *dm, src));
        }
        r.cx.set_diff(n, std::move(m));
    }
    return r;
}

}  // namespace sdclab
