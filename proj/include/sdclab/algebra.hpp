#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hash.hpp"
#include "sparse.hpp"

namespace sdclab {

// Raised by validate() and the builders; carries one diagnostic per violated identity.
class AlgebraError : public std::invalid_argument {
public:
    explicit AlgebraError(std::vector<std::string> diags)
        : std::invalid_argument(join(diags)), diagnostics(std::move(diags)) {}
    std::vector<std::string> diagnostics;

private:
    static std::string join(const std::vector<std::string>& d) {
        std::string s = "invalid algebra:";
        for (const auto& x : d) s += "\n  " + x;
        return s;
    }
};

enum class AtomKind { Generic, Regular, Injective };

// An indecomposable-or-not building block of a module: a vector space with one
// action matrix per algebra basis element.
template <class F>
struct Atom {
    int dim = 0;
    std::vector<SparseMat<F>> act;
    AtomKind kind = AtomKind::Generic;
    Digest digest;
};

template <class F>
using AtomPtr = std::shared_ptr<const Atom<F>>;

template <class F>
AtomPtr<F> make_atom(const F& f, int dim, std::vector<SparseMat<F>> act, AtomKind kind = AtomKind::Generic) {
    auto a = std::make_shared<Atom<F>>();
    a->dim = dim;
    a->act = std::move(act);
    a->kind = kind;
    Hasher h;
    h.str("atom").i64(dim).i64(static_cast<int>(a->act.size()));
    for (const auto& m : a->act)
        for (int j = 0; j < m.cols; ++j) {
            h.i64(-1 - j);
            for (const auto& [i, v] : m.col[j]) h.i64(i).elem(f, v);
        }
    a->digest = h.done();
    return a;
}

// Finite-dimensional commutative local algebra given by structure constants.
template <class F>
class LocalAlgebra {
public:
    using Elem = typename F::Elem;

    F field;
    int dim = 0;
    int unit = 0;
    std::vector<int> mideal;
    std::vector<std::vector<SVec<F>>> mult;  // mult[i][j] = e_i * e_j
    std::vector<std::string> names;
    std::vector<SparseMat<F>> left;          // left[i] = matrix of multiplication by e_i
    AtomPtr<F> regular, injective;           // A and Hom_k(A, k)
    Digest digest;
    std::string label;

    static std::shared_ptr<const LocalAlgebra> make(F f, int dim, int unit, std::vector<int> mideal,
                                                    std::vector<std::vector<SVec<F>>> mult,
                                                    std::vector<std::string> names = {}, std::string label = {}) {
        if (dim <= 0) throw AlgebraError({"dimension must be positive"});
        if (static_cast<int>(mult.size()) != dim) throw AlgebraError({"structure constant table has wrong size"});
        for (const auto& row : mult)
            if (static_cast<int>(row.size()) != dim) throw AlgebraError({"structure constant table has wrong size"});
        if (unit < 0 || unit >= dim) throw AlgebraError({"unit index out of range"});
        for (int m : mideal)
            if (m < 0 || m >= dim) throw AlgebraError({"maximal ideal index out of range"});
        auto a = std::make_shared<LocalAlgebra>();
        a->field = f;
        a->dim = dim;
        a->unit = unit;
        a->mideal = std::move(mideal);
        a->mult = std::move(mult);
        if (names.empty())
            for (int i = 0; i < dim; ++i) names.push_back(i == unit ? "1" : "e" + std::to_string(i));
        a->names = std::move(names);
        a->label = std::move(label);
        a->left.assign(dim, SparseMat<F>(dim, dim));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a->left[i].col[j] = a->mult[i][j];
        std::vector<SparseMat<F>> tr;
        for (const auto& m : a->left) tr.push_back(transpose(m));
        a->regular = make_atom(f, dim, a->left, AtomKind::Regular);
        a->injective = make_atom(f, dim, std::move(tr), AtomKind::Injective);
        Hasher h;
        h.str("local").i64(f.spec().is_rational() ? 0 : f.spec().p).i64(dim).i64(unit);
        for (int m : a->mideal) h.i64(m);
        h.digest(a->regular->digest);
        a->digest = h.done();
        return a;
    }

    SVec<F> multiply(const SVec<F>& x, const SVec<F>& y) const {
        Accum<F> acc(field, dim);
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) acc.add_scaled(mult[i][j], field.mul(a, b));
        return acc.take();
    }
    // Coefficient of the unit; the residue map A -> k for the basis {1} u mideal.
    Elem augment(const SVec<F>& x) const {
        for (const auto& [i, a] : x)
            if (i == unit) return a;
        return field.zero();
    }
    int embedding_dim() const;  // dim m/m^2
    int socle_dim() const;
    int loewy_length() const;
};

template <class F>
using AlgPtr = std::shared_ptr<const LocalAlgebra<F>>;

// Stack the action of the maximal-ideal basis on a space of dimension n.
template <class F>
SparseMat<F> stacked_action(const F& f, const std::vector<const SparseMat<F>*>& acts, int n) {
    int k = static_cast<int>(acts.size());
    SparseMat<F> s(n * k, n);
    for (int t = 0; t < k; ++t) place(s, *acts[t], t * n, 0);
    normalize_columns(f, s);
    return s;
}

// Dimensions of m^i V for i = 0,1,... until zero, given the action matrices on V.
template <class F>
std::vector<int> loewy_series(const F& f, const std::vector<const SparseMat<F>*>& acts, int n) {
    std::vector<int> dims;
    std::vector<SVec<F>> cur;
    for (int i = 0; i < n; ++i) cur.push_back({{i, f.one()}});
    int guard = 0;
    while (!cur.empty() && guard++ <= n + 1) {
        dims.push_back(static_cast<int>(cur.size()));
        Reducer<F> red(f, n);
        std::vector<SVec<F>> next;
        Accum<F> acc(f, n);
        for (const auto* m : acts)
            for (const auto& v : cur) {
                auto w = apply(f, *m, v, acc);
                SVec<F> r = red.reduce(w);
                if (!r.empty()) {
                    next.push_back(w);
                    red.insert_residual(std::move(r));
                }
            }
        cur = std::move(next);
    }
    return dims;
}

template <class F>
std::vector<const SparseMat<F>*> mideal_actions(const LocalAlgebra<F>& a) {
    std::vector<const SparseMat<F>*> acts;
    for (int m : a.mideal) acts.push_back(&a.left[m]);
    return acts;
}

template <class F>
int LocalAlgebra<F>::embedding_dim() const {
    auto s = loewy_series(field, mideal_actions(*this), dim);
    int m1 = s.size() > 1 ? s[1] : 0, m2 = s.size() > 2 ? s[2] : 0;
    return m1 - m2;
}

template <class F>
int LocalAlgebra<F>::socle_dim() const {
    return static_cast<int>(kernel(field, stacked_action(field, mideal_actions(*this), dim)).size());
}

template <class F>
int LocalAlgebra<F>::loewy_length() const {
    return static_cast<int>(loewy_series(field, mideal_actions(*this), dim).size()) - 1;
}

// Every violated structural identity, with witnesses. Empty means valid.
template <class F>
std::vector<std::string> diagnose(const LocalAlgebra<F>& a) {
    const F& f = a.field;
    std::vector<std::string> out;
    auto vecstr = [&](const SVec<F>& v) {
        std::ostringstream os;
        os << "{";
        for (size_t t = 0; t < v.size(); ++t) os << (t ? ", " : "") << a.names[v[t].first] << ":" << f.to_string(v[t].second);
        os << "}";
        return os.str();
    };
    SVec<F> one{{a.unit, f.one()}};
    for (int i = 0; i < a.dim; ++i) {
        SVec<F> ei{{i, f.one()}};
        if (a.mult[a.unit][i] != ei || a.mult[i][a.unit] != ei)
            out.push_back("unit law fails for basis element " + a.names[i]);
    }
    for (int i = 0; i < a.dim; ++i)
        for (int j = i + 1; j < a.dim; ++j)
            if (a.mult[i][j] != a.mult[j][i])
                out.push_back("not commutative: (" + a.names[i] + ", " + a.names[j] + ")");
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) {
                SVec<F> ej{{j, f.one()}}, ek{{k, f.one()}};
                auto lhs = a.multiply(a.mult[i][j], ek);
                auto rhs = a.multiply(SVec<F>{{i, f.one()}}, a.mult[j][k]);
                if (lhs != rhs)
                    out.push_back("not associative: witness (a,b,c) = (" + a.names[i] + ", " + a.names[j] + ", " +
                                  a.names[k] + "), (ab)c = " + vecstr(lhs) + ", a(bc) = " + vecstr(rhs));
            }
    std::vector<int> sorted = a.mideal;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) out.push_back("maximal ideal basis has duplicates");
    if (std::find(sorted.begin(), sorted.end(), a.unit) != sorted.end())
        out.push_back("maximal ideal basis contains the unit");
    if (a.dim - static_cast<int>(sorted.size()) != 1)
        out.push_back("wrong codimension: dim - |mideal| = " + std::to_string(a.dim - static_cast<int>(sorted.size())) +
                      ", expected 1");
    std::vector<char> in_m(a.dim, 0);
    for (int m : sorted)
        if (m >= 0 && m < a.dim) in_m[m] = 1;
    for (int m : sorted)
        for (int i = 0; i < a.dim; ++i)
            for (const auto& [t, v] : a.mult[m][i])
                if (!in_m[t]) {
                    out.push_back("mideal is not an ideal: " + a.names[m] + " * " + a.names[i] + " = " +
                                  vecstr(a.mult[m][i]));
                    goto next_m;
                }
    next_m:
    if (out.empty()) {
        // Strictly decreasing positive dimensions give at most dim entries when m is nilpotent.
        auto s = loewy_series(f, mideal_actions(a), a.dim);
        if (static_cast<int>(s.size()) > a.dim) out.push_back("maximal ideal is not nilpotent");
    }
    return out;
}

template <class F>
void validate(const LocalAlgebra<F>& a) {
    auto d = diagnose(a);
    if (!d.empty()) throw AlgebraError(std::move(d));
}

template <class F>
class ProductAlgebra {
public:
    F field;
    std::vector<AlgPtr<F>> comps;
    Digest digest;
    std::string label;

    static std::shared_ptr<const ProductAlgebra> make(std::vector<AlgPtr<F>> comps, std::string label = {}) {
        if (comps.empty()) throw AlgebraError({"product algebra needs at least one component"});
        auto p = std::make_shared<ProductAlgebra>();
        p->field = comps[0]->field;
        for (const auto& c : comps)
            if (!(c->field == p->field)) throw AlgebraError({"components over different fields"});
        Hasher h;
        h.str("product");
        for (const auto& c : comps) h.digest(c->digest);
        p->digest = h.done();
        p->comps = std::move(comps);
        p->label = std::move(label);
        return p;
    }
    int size() const { return static_cast<int>(comps.size()); }
    int dim() const {
        int d = 0;
        for (const auto& c : comps) d += c->dim;
        return d;
    }
};

template <class F>
using ProdPtr = std::shared_ptr<const ProductAlgebra<F>>;

template <class F>
bool is_gorenstein(const LocalAlgebra<F>& a) {
    return a.socle_dim() == 1;
}

template <class F>
bool is_gorenstein(const ProductAlgebra<F>& a) {
    for (const auto& c : a.comps)
        if (!is_gorenstein(*c)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Monomial quotients k[vars]/(monomials)

using Monomial = std::vector<int>;  // exponent vector

inline Monomial parse_monomial(const std::string& text, const std::vector<std::string>& vars) {
    Monomial m(vars.size(), 0);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "1") return m;
    std::stringstream ss(s);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        if (factor.empty()) throw std::invalid_argument("malformed monomial '" + text + "'");
        std::string name = factor;
        int e = 1;
        auto caret = factor.find('^');
        if (caret != std::string::npos) {
            name = factor.substr(0, caret);
            std::string ex = factor.substr(caret + 1);
            if (ex.empty() || ex.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("malformed exponent in monomial '" + text + "'");
            e = std::stoi(ex);
        }
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw std::invalid_argument("unknown variable '" + name + "' in monomial '" + text + "'");
        m[it - vars.begin()] += e;
    }
    return m;
}

inline std::string monomial_name(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

template <class F>
AlgPtr<F> monomial_quotient(const F& f, const std::vector<std::string>& vars, const std::vector<Monomial>& gens,
                            std::string label = {}) {
    std::vector<std::string> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw AlgebraError({"duplicate variable names"});
    const size_t n = vars.size();
    std::vector<int> bound(n, -1);
    for (const auto& g : gens) {
        if (g.size() != n) throw AlgebraError({"monomial has wrong number of exponents"});
        int nz = 0, which = -1;
        for (size_t i = 0; i < n; ++i)
            if (g[i] > 0) { ++nz; which = static_cast<int>(i); }
        if (nz == 0) throw AlgebraError({"unit ideal: the constant monomial is a generator"});
        if (nz == 1 && (bound[which] < 0 || g[which] < bound[which])) bound[which] = g[which];
    }
    for (size_t i = 0; i < n; ++i)
        if (bound[i] < 0) throw AlgebraError({"ideal is not zero-dimensional: no pure power of " + vars[i]});
    auto divisible = [&](const Monomial& m) {
        for (const auto& g : gens) {
            bool d = true;
            for (size_t i = 0; i < n; ++i)
                if (m[i] < g[i]) { d = false; break; }
            if (d) return true;
        }
        return false;
    };
    std::vector<Monomial> basis;
    Monomial cur(n, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n) {
            if (!divisible(cur)) basis.push_back(cur);
            return;
        }
        for (int e = 0; e < bound[i]; ++e) {
            cur[i] = e;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    // Degree first, then lexicographically larger exponent vectors first (x before y).
    std::sort(basis.begin(), basis.end(), [](const Monomial& a, const Monomial& b) {
        int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
        return a > b;
    });
    std::map<Monomial, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    const int d = static_cast<int>(basis.size());
    std::vector<std::vector<SVec<F>>> mult(d, std::vector<SVec<F>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Monomial p(n);
            for (size_t t = 0; t < n; ++t) p[t] = basis[i][t] + basis[j][t];
            auto it = index.find(p);
            if (it != index.end()) mult[i][j] = {{it->second, f.one()}};
        }
    std::vector<int> mideal;
    std::vector<std::string> names;
    for (int i = 0; i < d; ++i) {
        names.push_back(monomial_name(basis[i], vars));
        if (i > 0) mideal.push_back(i);
    }
    auto a = LocalAlgebra<F>::make(f, d, 0, std::move(mideal), std::move(mult), std::move(names), std::move(label));
    validate(*a);
    return a;
}

template <class F>
AlgPtr<F> monomial_quotient(const F& f, const std::vector<std::string>& vars, const std::vector<std::string>& gens,
                            std::string label = {}) {
    std::vector<Monomial> ms;
    for (const auto& g : gens) ms.push_back(parse_monomial(g, vars));
    return monomial_quotient(f, vars, ms, std::move(label));
}

}  // namespace sdclab
