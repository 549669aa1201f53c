#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace sdclab {

// Sparse vector: strictly increasing indices, no stored zeros.
template <class F>
using SVec = std::vector<std::pair<int, typename F::Elem>>;

// Dense scratch buffer that remembers which slots were touched so clearing is cheap.
template <class F>
class Accum {
public:
    using Elem = typename F::Elem;
    Accum(const F& f, int n) : f_(f), val_(n, f.zero()), used_(n, 0) {}

    int size() const { return static_cast<int>(val_.size()); }
    void add(int i, const Elem& v) {
        if (f_.is_zero(v)) return;
        if (!used_[i]) { used_[i] = 1; touched_.push_back(i); }
        val_[i] = f_.add(val_[i], v);
    }
    void add_scaled(const SVec<F>& v, const Elem& c) {
        if (f_.is_zero(c)) return;
        for (const auto& [i, x] : v) add(i, f_.mul(c, x));
    }
    const Elem& get(int i) const { return val_[i]; }
    SVec<F> take() {
        std::sort(touched_.begin(), touched_.end());
        SVec<F> out;
        for (int i : touched_) {
            if (!f_.is_zero(val_[i])) out.emplace_back(i, val_[i]);
            val_[i] = f_.zero();
            used_[i] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    F f_;
    std::vector<Elem> val_;
    std::vector<char> used_;
    std::vector<int> touched_;
};

template <class F>
SVec<F> svec_scale(const F& f, const SVec<F>& v, const typename F::Elem& c) {
    SVec<F> out;
    if (f.is_zero(c)) return out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.emplace_back(i, f.mul(c, x));
    return out;
}

template <class F>
SVec<F> svec_axpy(const F& f, const SVec<F>& a, const SVec<F>& b, const typename F::Elem& c) {
    // a + c*b
    SVec<F> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            auto v = f.mul(c, b[j].second);
            if (!f.is_zero(v)) out.emplace_back(b[j].first, v);
            ++j;
        } else {
            auto v = f.add(a[i].second, f.mul(c, b[j].second));
            if (!f.is_zero(v)) out.emplace_back(a[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

template <class V>
V svec_shift(const V& v, int offset) {
    V out = v;
    for (auto& e : out) e.first += offset;
    return out;
}

// Column-compressed sparse matrix.
template <class F>
struct SparseMat {
    using Elem = typename F::Elem;
    int rows = 0, cols = 0;
    std::vector<SVec<F>> col;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), col(c) {}

    static SparseMat identity(const F& f, int n) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.col[i].emplace_back(i, f.one());
        return m;
    }
    static SparseMat from_dense(const Matrix<F>& d) {
        SparseMat m(d.rows(), d.cols());
        for (int j = 0; j < d.cols(); ++j)
            for (int i = 0; i < d.rows(); ++i)
                if (!d.field().is_zero(d(i, j))) m.col[j].emplace_back(i, d(i, j));
        return m;
    }
    Matrix<F> to_dense(const F& f) const {
        Matrix<F> d(f, rows, cols);
        for (int j = 0; j < cols; ++j)
            for (const auto& [i, v] : col[j]) d(i, j) = v;
        return d;
    }
    size_t nnz() const {
        size_t n = 0;
        for (const auto& c : col) n += c.size();
        return n;
    }
    bool is_zero() const { return nnz() == 0; }
    Elem at(const F& f, int i, int j) const {
        for (const auto& [r, v] : col[j])
            if (r == i) return v;
        return f.zero();
    }
    bool operator==(const SparseMat& o) const { return rows == o.rows && cols == o.cols && col == o.col; }
};

template <class F>
SVec<F> apply(const F&, const SparseMat<F>& m, const SVec<F>& v, Accum<F>& acc) {
    for (const auto& [j, x] : v) acc.add_scaled(m.col[j], x);
    return acc.take();
}

template <class F>
SVec<F> apply(const F& f, const SparseMat<F>& m, const SVec<F>& v) {
    Accum<F> acc(f, m.rows);
    return apply(f, m, v, acc);
}

// a * b
template <class F>
SparseMat<F> multiply(const F& f, const SparseMat<F>& a, const SparseMat<F>& b) {
    if (a.cols != b.rows) throw std::invalid_argument("sparse product shape mismatch");
    SparseMat<F> r(a.rows, b.cols);
    Accum<F> acc(f, a.rows);
    for (int j = 0; j < b.cols; ++j) r.col[j] = apply(f, a, b.col[j], acc);
    return r;
}

template <class F>
SparseMat<F> add(const F& f, const SparseMat<F>& a, const SparseMat<F>& b, const typename F::Elem& c) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("sparse sum shape mismatch");
    SparseMat<F> r(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) r.col[j] = svec_axpy(f, a.col[j], b.col[j], c);
    return r;
}

template <class F>
SparseMat<F> scale(const F& f, const SparseMat<F>& a, const typename F::Elem& c) {
    SparseMat<F> r(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) r.col[j] = svec_scale(f, a.col[j], c);
    return r;
}

template <class F>
SparseMat<F> transpose(const SparseMat<F>& a) {
    SparseMat<F> t(a.cols, a.rows);
    for (int j = 0; j < a.cols; ++j)
        for (const auto& [i, v] : a.col[j]) t.col[i].emplace_back(j, v);
    return t;
}

// Block diagonal placement helper: copy a into r at (row offset, col offset).
template <class F>
void place(SparseMat<F>& r, const SparseMat<F>& a, int roff, int coff) {
    for (int j = 0; j < a.cols; ++j) {
        auto& dst = r.col[coff + j];
        for (const auto& [i, v] : a.col[j]) dst.emplace_back(roff + i, v);
    }
}

// Restore sorted order after arbitrary placement into columns.
template <class F>
void normalize_columns(const F& f, SparseMat<F>& m) {
    Accum<F> acc(f, m.rows);
    for (auto& c : m.col) {
        bool sorted = true;
        for (size_t t = 1; t < c.size(); ++t)
            if (c[t - 1].first >= c[t].first) { sorted = false; break; }
        if (sorted) continue;
        for (const auto& [i, v] : c) acc.add(i, v);
        c = acc.take();
    }
}

// Incremental sparse echelon basis. Each stored vector has leading coefficient 1 at
// its smallest index; reduction eliminates leading entries in increasing index order.
// With tracking enabled, every stored vector carries the combination of inserted
// originals (in a caller-defined tag space) that produced it.
template <class F>
class Reducer {
public:
    using Elem = typename F::Elem;

    Reducer(const F& f, int n, int ntags = 0)
        : f_(f), n_(n), ntags_(ntags), piv_(n), tag_(ntags ? n : 0), has_(n, 0), acc_(f, n), inheap_(n, 0),
          tacc_(f, ntags > 0 ? ntags : 1) {}

    int dim() const { return n_; }
    int rank() const { return rank_; }
    bool has_pivot(int i) const { return has_[i]; }

    // Reduce v; returns residual (entries only at non-pivot indices). When combo is
    // given, it receives c with v = sum_k c_k * original_k + residual.
    SVec<F> reduce(const SVec<F>& v, SVec<F>* combo = nullptr) {
        std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
        for (const auto& [i, x] : v) {
            acc_.add(i, x);
            if (!inheap_[i]) { inheap_[i] = 1; heap.push(i); }
        }
        SVec<F> residual;
        while (!heap.empty()) {
            int i = heap.top();
            heap.pop();
            inheap_[i] = 0;
            Elem c = acc_.get(i);
            if (f_.is_zero(c)) continue;
            if (has_[i]) {
                for (const auto& [j, x] : piv_[i]) {
                    acc_.add(j, f_.neg(f_.mul(c, x)));
                    if (j != i && !inheap_[j]) { inheap_[j] = 1; heap.push(j); }
                }
                if (combo && ntags_) tacc_.add_scaled(tag_[i], c);
            } else {
                residual.emplace_back(i, c);
                acc_.add(i, f_.neg(c));
            }
        }
        acc_.take();
        if (combo) *combo = ntags_ ? tacc_.take() : SVec<F>{};
        return residual;
    }

    // Insert v with tag (the tag-space combination v represents). Returns true if independent.
    bool insert(const SVec<F>& v, const SVec<F>& tag = {}) {
        SVec<F> combo;
        SVec<F> r = reduce(v, ntags_ ? &combo : nullptr);
        if (r.empty()) return false;
        store(std::move(r), ntags_ ? svec_axpy(f_, tag, combo, f_.neg(f_.one())) : SVec<F>{});
        return true;
    }

    bool contains(const SVec<F>& v) { return reduce(v).empty(); }

    // Store a residual previously returned by reduce() (no re-reduction).
    void insert_residual(SVec<F> r, SVec<F> tag = {}) {
        if (!r.empty()) store(std::move(r), std::move(tag));
    }

private:
    void store(SVec<F> r, SVec<F> t) {
        int lead = r.front().first;
        Elem inv = f_.inv(r.front().second);
        if (!f_.is_one(inv)) {
            r = svec_scale(f_, r, inv);
            t = svec_scale(f_, t, inv);
        }
        piv_[lead] = std::move(r);
        if (ntags_) tag_[lead] = std::move(t);
        has_[lead] = 1;
        ++rank_;
    }

    F f_;
    int n_, ntags_;
    int rank_ = 0;
    std::vector<SVec<F>> piv_, tag_;
    std::vector<char> has_;
    Accum<F> acc_;
    std::vector<char> inheap_;
    Accum<F> tacc_;
};

template <class F>
int rank(const F& f, const SparseMat<F>& m) {
    Reducer<F> red(f, m.rows);
    for (const auto& c : m.col) red.insert(c);
    return red.rank();
}

// Basis of the right kernel: one vector per dependent column j, equal to e_j minus the
// combination of earlier columns reproducing column j.
template <class F>
std::vector<SVec<F>> kernel(const F& f, const SparseMat<F>& m) {
    Reducer<F> red(f, m.rows, std::max(1, m.cols));
    std::vector<SVec<F>> out;
    for (int j = 0; j < m.cols; ++j) {
        SVec<F> unit{{j, f.one()}};
        SVec<F> combo;
        SVec<F> r = red.reduce(m.col[j], &combo);
        SVec<F> rel = svec_axpy(f, unit, combo, f.neg(f.one()));
        if (r.empty())
            out.push_back(std::move(rel));
        else
            red.insert_residual(std::move(r), std::move(rel));
    }
    return out;
}

// Indices of a maximal independent subfamily, scanning in order.
template <class F>
std::vector<int> independent_subset(const F& f, int n, const std::vector<SVec<F>>& vs) {
    Reducer<F> red(f, n);
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
        if (red.insert(vs[i])) keep.push_back(i);
    return keep;
}

}  // namespace sdclab
