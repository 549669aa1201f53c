#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace sdclab {

template <class F>
struct Part {
    AtomPtr<F> atom;
    int mult = 1;
};

// Finite-dimensional module over a local algebra, stored as a direct sum of atoms.
template <class F>
class FMod {
public:
    AlgPtr<F> alg;
    std::vector<Part<F>> parts;

    FMod() = default;
    explicit FMod(AlgPtr<F> a) : alg(std::move(a)) {}
    FMod(AlgPtr<F> a, std::vector<Part<F>> ps) : alg(std::move(a)) {
        for (auto& p : ps) push(std::move(p));
    }

    static FMod zero(AlgPtr<F> a) { return FMod(std::move(a)); }
    static FMod free(AlgPtr<F> a, int rank) {
        FMod m(a);
        if (rank > 0) m.push({a->regular, rank});
        return m;
    }
    static FMod injective(AlgPtr<F> a, int rank) {
        FMod m(a);
        if (rank > 0) m.push({a->injective, rank});
        return m;
    }
    static FMod of_atom(AlgPtr<F> a, AtomPtr<F> atom, int mult = 1) {
        FMod m(std::move(a));
        if (atom->dim > 0 && mult > 0) m.push({std::move(atom), mult});
        return m;
    }

    int dim() const {
        int d = 0;
        for (const auto& p : parts) d += p.atom->dim * p.mult;
        return d;
    }
    bool is_zero() const { return dim() == 0; }
    // Number of free summands when every part is regular, else -1.
    int free_rank() const {
        int r = 0;
        for (const auto& p : parts) {
            if (p.atom->kind != AtomKind::Regular) return -1;
            r += p.mult;
        }
        return r;
    }

    void push(Part<F> p) {
        if (p.atom->dim == 0 || p.mult == 0) return;
        if (!parts.empty() && parts.back().atom == p.atom)
            parts.back().mult += p.mult;
        else
            parts.push_back(std::move(p));
        cache_.reset();
    }
    void append(const FMod& o) {
        for (const auto& p : o.parts) push(p);
    }

    // Block-diagonal action of algebra basis element b.
    const SparseMat<F>& act(int b) const {
        if (!cache_) {
            auto c = std::make_shared<std::vector<SparseMat<F>>>();
            const int n = dim();
            for (int e = 0; e < alg->dim; ++e) {
                SparseMat<F> m(n, n);
                int off = 0;
                for (const auto& p : parts)
                    for (int t = 0; t < p.mult; ++t) {
                        place(m, p.atom->act[e], off, off);
                        off += p.atom->dim;
                    }
                c->push_back(std::move(m));
            }
            cache_ = c;
        }
        return (*cache_)[b];
    }
    std::vector<const SparseMat<F>*> mideal_acts() const {
        std::vector<const SparseMat<F>*> v;
        for (int m : alg->mideal) v.push_back(&act(m));
        return v;
    }
    // a * v for a in A given in coordinates.
    SVec<F> act_elem(const SVec<F>& a, const SVec<F>& v) const {
        const F& f = alg->field;
        Accum<F> acc(f, dim());
        for (const auto& [b, c] : a) {
            auto w = apply(f, act(b), v);
            acc.add_scaled(w, c);
        }
        return acc.take();
    }

    Digest digest() const {
        Hasher h;
        h.str("fmod").digest(alg->digest);
        for (const auto& p : parts) h.digest(p.atom->digest).i64(p.mult);
        return h.done();
    }

private:
    mutable std::shared_ptr<std::vector<SparseMat<F>>> cache_;
};

template <class F>
FMod<F> direct_sum(const FMod<F>& a, const FMod<F>& b) {
    FMod<F> s = a;
    s.append(b);
    return s;
}

// A-linear map between modules.
template <class F>
struct ModMap {
    FMod<F> src, dst;
    SparseMat<F> mat;
};

template <class F>
bool is_linear(const ModMap<F>& m) {
    const F& f = m.src.alg->field;
    for (int b = 0; b < m.src.alg->dim; ++b) {
        auto l = multiply(f, m.dst.act(b), m.mat);
        auto r = multiply(f, m.mat, m.src.act(b));
        if (!(l == r)) return false;
    }
    return true;
}

// Free modules A^r keep copy c in coordinates [c*d, (c+1)*d), in algebra-basis order.

// e_b * v for v in a free module.
template <class F>
SVec<F> free_act(const LocalAlgebra<F>& A, int b, const SVec<F>& v) {
    const F& f = A.field;
    std::vector<std::pair<int, typename F::Elem>> out;
    for (const auto& [idx, x] : v) {
        const int cell = idx / A.dim, c = idx % A.dim;
        for (const auto& [t, w] : A.mult[b][c]) out.emplace_back(cell * A.dim + t, f.mul(x, w));
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    SVec<F> r;
    for (auto& [i, x] : out) {
        if (!r.empty() && r.back().first == i) {
            r.back().second = f.add(r.back().second, x);
            if (f.is_zero(r.back().second)) r.pop_back();
        } else if (!f.is_zero(x)) {
            r.emplace_back(i, x);
        }
    }
    return r;
}

// k-matrix of the A-linear map A^c -> A^r sending generator j to imgs[j] (k-coordinates in A^r).
template <class F>
SparseMat<F> free_map(const LocalAlgebra<F>& A, int r, const std::vector<SVec<F>>& imgs) {
    const int c = static_cast<int>(imgs.size());
    SparseMat<F> m(r * A.dim, c * A.dim);
    for (int j = 0; j < c; ++j)
        for (int b = 0; b < A.dim; ++b) m.col[j * A.dim + b] = free_act(A, b, imgs[j]);
    return m;
}

// Residue field k = A/m: the unit acts as 1, the maximal ideal as 0.
template <class F>
FMod<F> residue_field(const AlgPtr<F>& a) {
    const F& f = a->field;
    std::vector<SparseMat<F>> act;
    for (int b = 0; b < a->dim; ++b) {
        SparseMat<F> m(1, 1);
        if (b == a->unit) m.col[0] = {{0, f.one()}};
        act.push_back(std::move(m));
    }
    return FMod<F>::of_atom(a, make_atom(f, 1, std::move(act)));
}

// ---------------------------------------------------------------------------
// Invariants

template <class F>
int radical_dim(const FMod<F>& m) {
    const F& f = m.alg->field;
    Reducer<F> red(f, m.dim());
    for (const auto* a : m.mideal_acts())
        for (const auto& c : a->col) red.insert(c);
    return red.rank();
}

// Minimal number of generators, dim M/mM.
template <class F>
int num_generators(const FMod<F>& m) {
    return m.dim() - radical_dim(m);
}

template <class F>
int socle_dim(const FMod<F>& m) {
    return static_cast<int>(kernel(m.alg->field, stacked_action(m.alg->field, m.mideal_acts(), m.dim())).size());
}

template <class F>
std::vector<int> loewy_dims(const FMod<F>& m) {
    return loewy_series(m.alg->field, m.mideal_acts(), m.dim());
}

template <class F>
AtomPtr<F> dual_atom(const F& f, const AtomPtr<F>& a, const LocalAlgebra<F>& alg) {
    if (a == alg.regular) return alg.injective;
    if (a == alg.injective) return alg.regular;
    std::vector<SparseMat<F>> tr;
    for (const auto& m : a->act) tr.push_back(transpose(m));
    return make_atom(f, a->dim, std::move(tr), AtomKind::Generic);
}

// k-linear dual with contragredient action (a.phi)(m) = phi(a m).
template <class F>
FMod<F> matlis_dual(const FMod<F>& m) {
    FMod<F> d(m.alg);
    for (const auto& p : m.parts) d.push({dual_atom(m.alg->field, p.atom, *m.alg), p.mult});
    return d;
}

// Matlis dual of a map f: M -> N is the transpose N^v -> M^v.
template <class F>
ModMap<F> matlis_dual(const ModMap<F>& g) {
    return {matlis_dual(g.dst), matlis_dual(g.src), transpose(g.mat)};
}

template <class F>
bool is_free_module(const FMod<F>& m) {
    if (m.free_rank() >= 0) return true;
    int mu = num_generators(m);
    return m.dim() == mu * m.alg->dim;
}

// M ~ Hom_k(A,k)^r iff the dual is free.
template <class F>
bool is_injective_module(const FMod<F>& m) {
    return is_free_module(matlis_dual(m));
}

// ---------------------------------------------------------------------------
// Subquotients Z/B of a module, with induced action

template <class F>
struct Subquotient {
    AtomPtr<F> atom;
    std::vector<SVec<F>> reps;  // ambient representatives of the quotient basis
    std::shared_ptr<Reducer<F>> red;

    int dim() const { return atom->dim; }
    // Quotient coordinates of z (z must lie in Z).
    SVec<F> coords(const SVec<F>& z) const {
        SVec<F> combo;
        auto r = red->reduce(z, &combo);
        if (!r.empty()) throw std::logic_error("subquotient: vector outside the submodule");
        return combo;
    }
};

// Z is spanned by zgens and B by bgens; both must be submodules with B inside Z.
template <class F>
Subquotient<F> subquotient(const FMod<F>& ambient, const std::vector<SVec<F>>& zgens,
                           const std::vector<SVec<F>>& bgens) {
    const F& f = ambient.alg->field;
    const int n = ambient.dim();
    auto red = std::make_shared<Reducer<F>>(f, n, std::max<int>(1, static_cast<int>(zgens.size())));
    for (const auto& b : bgens) red->insert(b);
    std::vector<SVec<F>> reps;
    for (const auto& z : zgens) {
        SVec<F> combo;
        auto r = red->reduce(z, &combo);
        if (r.empty()) continue;
        int k = static_cast<int>(reps.size());
        reps.push_back(z);
        red->insert_residual(std::move(r), svec_axpy(f, SVec<F>{{k, f.one()}}, combo, f.neg(f.one())));
    }
    const int h = static_cast<int>(reps.size());
    std::vector<SparseMat<F>> act;
    Accum<F> acc(f, n);
    for (int b = 0; b < ambient.alg->dim; ++b) {
        SparseMat<F> m(h, h);
        for (int k = 0; k < h; ++k) {
            auto w = apply(f, ambient.act(b), reps[k], acc);
            SVec<F> combo;
            auto r = red->reduce(w, &combo);
            if (!r.empty()) throw std::logic_error("subquotient: Z is not closed under the action");
            m.col[k] = std::move(combo);
        }
        act.push_back(std::move(m));
    }
    Subquotient<F> s;
    s.atom = make_atom(f, h, std::move(act));
    s.reps = std::move(reps);
    s.red = std::move(red);
    return s;
}

template <class F>
std::vector<SVec<F>> unit_vectors(const F& f, int n) {
    std::vector<SVec<F>> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) v.push_back({{i, f.one()}});
    return v;
}

template <class F>
FMod<F> maximal_ideal(const AlgPtr<F>& a) {
    std::vector<SVec<F>> gens;
    for (int m : a->mideal) gens.push_back({{m, a->field.one()}});
    return FMod<F>::of_atom(a, subquotient(FMod<F>::free(a, 1), gens, {}).atom);
}

// ---------------------------------------------------------------------------
// Hom_A(M, N) as a k-space of dim(N) x dim(M) matrices, vectorized column-major.

template <class F>
struct HomSpace {
    int m = 0, n = 0;                 // dim M, dim N
    std::vector<SVec<F>> basis;       // each of length m*n: entry (i,j) at index j*n + i
    std::shared_ptr<Reducer<F>> red;  // coordinates in the basis

    int dim() const { return static_cast<int>(basis.size()); }
    SparseMat<F> matrix(int t) const {
        SparseMat<F> r(n, m);
        for (const auto& [idx, v] : basis[t]) r.col[idx / n].emplace_back(idx % n, v);
        return r;
    }
    SVec<F> coords(const SVec<F>& vec) const {
        SVec<F> combo;
        auto r = red->reduce(vec, &combo);
        if (!r.empty()) throw std::logic_error("hom space: map is not A-linear");
        return combo;
    }
};

template <class F>
SVec<F> vectorize(const SparseMat<F>& a) {
    SVec<F> v;
    for (int j = 0; j < a.cols; ++j)
        for (const auto& [i, x] : a.col[j]) v.emplace_back(j * a.rows + i, x);
    return v;
}

// Solve act_N(b) X = X act_M(b) for the maximal-ideal generators b.
template <class F>
HomSpace<F> hom_space(const FMod<F>& M, const FMod<F>& N, size_t budget = 4'000'000) {
    const F& f = M.alg->field;
    const int m = M.dim(), n = N.dim();
    if (static_cast<size_t>(m) * n > budget) throw std::length_error("hom space too large");
    HomSpace<F> hs;
    hs.m = m;
    hs.n = n;
    const auto& mids = M.alg->mideal;
    const int k = static_cast<int>(mids.size());
    // Unknown X(i,j) -> column j*n+i. Equation (b, i, j'): sum_t N_b(i,t) X(t,j') - sum_t X(i,t) M_b(t,j').
    SparseMat<F> sys(k * n * m, m * n);
    for (int bi = 0; bi < k; ++bi) {
        const auto& Nb = N.act(mids[bi]);
        const auto& Mb = M.act(mids[bi]);
        const int base = bi * n * m;
        for (int t = 0; t < n; ++t)
            for (int jp = 0; jp < m; ++jp)
                for (const auto& [i, v] : Nb.col[t]) sys.col[jp * n + t].emplace_back(base + jp * n + i, v);
        for (int jp = 0; jp < m; ++jp)
            for (const auto& [t, v] : Mb.col[jp])
                for (int i = 0; i < n; ++i) sys.col[t * n + i].emplace_back(base + jp * n + i, f.neg(v));
    }
    normalize_columns(f, sys);
    hs.basis = kernel(f, sys);
    hs.red = std::make_shared<Reducer<F>>(f, m * n, std::max(1, hs.dim()));
    for (int t = 0; t < hs.dim(); ++t) hs.red->insert(hs.basis[t], SVec<F>{{t, f.one()}});
    return hs;
}

// Monte Carlo search for an isomorphism M -> N among A-linear maps. Outcome codes:
// 1 = iso found (certificate returned), 0 = invariants differ, -1 = no iso found in trials.
template <class F>
struct IsoSearch {
    int outcome = -1;
    std::string reason;
    SparseMat<F> certificate;
};

template <class F>
IsoSearch<F> find_module_iso(const FMod<F>& M, const FMod<F>& N, std::uint64_t seed, int trials) {
    const F& f = M.alg->field;
    IsoSearch<F> res;
    if (M.alg->digest != N.alg->digest && M.alg != N.alg) throw std::invalid_argument("modules over different algebras");
    if (M.dim() != N.dim()) {
        res.outcome = 0;
        res.reason = "dimensions differ (" + std::to_string(M.dim()) + " vs " + std::to_string(N.dim()) + ")";
        return res;
    }
    int gm = num_generators(M), gn = num_generators(N);
    if (gm != gn) {
        res.outcome = 0;
        res.reason = "generator counts differ (" + std::to_string(gm) + " vs " + std::to_string(gn) + ")";
        return res;
    }
    if (socle_dim(M) != socle_dim(N)) {
        res.outcome = 0;
        res.reason = "socle dimensions differ";
        return res;
    }
    if (loewy_dims(M) != loewy_dims(N)) {
        res.outcome = 0;
        res.reason = "Loewy series differ";
        return res;
    }
    auto hs = hom_space(M, N);
    if (hs.dim() == 0) {
        res.outcome = M.dim() == 0 ? 1 : 0;
        res.reason = M.dim() == 0 ? "both zero" : "no nonzero homomorphisms";
        res.certificate = SparseMat<F>(0, 0);
        return res;
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Accum<F> acc(f, hs.m * hs.n);
        for (int b = 0; b < hs.dim(); ++b) acc.add_scaled(hs.basis[b], f.from_random(rng()));
        auto v = acc.take();
        SparseMat<F> mat(hs.n, hs.m);
        for (const auto& [idx, x] : v) mat.col[idx / hs.n].emplace_back(idx % hs.n, x);
        if (rank(f, mat) == M.dim()) {
            res.outcome = 1;
            res.reason = "invertible homomorphism found at trial " + std::to_string(t + 1);
            res.certificate = std::move(mat);
            return res;
        }
    }
    res.outcome = -1;
    res.reason = "no invertible homomorphism in " + std::to_string(trials) + " trials";
    return res;
}

// ---------------------------------------------------------------------------
// M (x)_A N as a quotient of M (x)_k N (index i*dim N + j for m_i (x) n_j).

template <class F>
struct TensorSpace {
    FMod<F> mod;
    Subquotient<F> sq;
    int m = 0, n = 0;
    SVec<F> project(const SVec<F>& v) const { return sq.coords(v); }
};

template <class F>
TensorSpace<F> tensor_space(const FMod<F>& M, const FMod<F>& N) {
    const F& f = M.alg->field;
    const int m = M.dim(), n = N.dim();
    // Ambient module: A acts on M (x)_k N through the left factor.
    std::vector<SparseMat<F>> act;
    for (int b = 0; b < M.alg->dim; ++b) {
        SparseMat<F> a(m * n, m * n);
        const auto& Mb = M.act(b);
        for (int i = 0; i < m; ++i)
            for (const auto& [i2, v] : Mb.col[i])
                for (int j = 0; j < n; ++j) a.col[i * n + j].emplace_back(i2 * n + j, v);
        normalize_columns(f, a);
        act.push_back(std::move(a));
    }
    FMod<F> amb = FMod<F>::of_atom(M.alg, make_atom(f, m * n, std::move(act)));
    std::vector<SVec<F>> rel;
    Accum<F> acc(f, m * n);
    for (int b : M.alg->mideal) {
        const auto& Mb = M.act(b);
        const auto& Nb = N.act(b);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                for (const auto& [i2, v] : Mb.col[i]) acc.add(i2 * n + j, v);
                for (const auto& [j2, v] : Nb.col[j]) acc.add(i * n + j2, f.neg(v));
                auto r = acc.take();
                if (!r.empty()) rel.push_back(std::move(r));
            }
    }
    TensorSpace<F> ts;
    ts.m = m;
    ts.n = n;
    ts.sq = subquotient(amb, unit_vectors(f, m * n), rel);
    ts.mod = FMod<F>::of_atom(M.alg, ts.sq.atom);
    return ts;
}

}  // namespace sdclab
