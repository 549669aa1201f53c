#pragma once

#include <functional>

#include "classify.hpp"
#include "corpus.hpp"

namespace sdclab {

// How a condition takes part in the consistency test of its case.
//   Equivalent: every decisive member of the group agrees.
//   Hypothesis/Conclusion: when the group's premise holds, no conclusion fails. The premise
//     is "some equivalent member holds" or "every hypothesis holds".
//   Required: must not fail.  Refuted: must not hold (a published negative outcome).
enum class Role { Equivalent, Hypothesis, Conclusion, Required, Refuted };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::Equivalent: return "equivalent";
        case Role::Hypothesis: return "hypothesis";
        case Role::Conclusion: return "conclusion";
        case Role::Required: return "required";
        default: return "refuted";
    }
}

struct Check {
    std::string name;
    std::string group;
    Role role;
    Verdict verdict;
};

struct CaseResult {
    std::string ring;
    json inputs;
    std::vector<Check> checks;
    json extra;  // optional replay material
};

inline json case_violations(const std::vector<Check>& cs) {
    json out = json::array();
    std::vector<std::string> groups;
    for (const auto& c : cs)
        if (std::find(groups.begin(), groups.end(), c.group) == groups.end()) groups.push_back(c.group);
    for (const auto& g : groups) {
        std::vector<std::string> holds, fails, hyps_failing;
        bool any_hyp = false, hyps_hold = true, equiv_holds = false;
        for (const auto& c : cs) {
            if (c.group != g) continue;
            if (c.role == Role::Equivalent && c.verdict.decisive()) {
                (c.verdict.is_holds() ? holds : fails).push_back(c.name);
                equiv_holds = equiv_holds || c.verdict.is_holds();
            }
            if (c.role == Role::Hypothesis) {
                any_hyp = true;
                hyps_hold = hyps_hold && c.verdict.is_holds();
            }
            if (c.role == Role::Required && c.verdict.is_fails())
                out.push_back(json{{"group", g}, {"kind", "required"}, {"condition", c.name}});
            if (c.role == Role::Refuted && c.verdict.is_holds())
                out.push_back(json{{"group", g}, {"kind", "refuted"}, {"condition", c.name}});
        }
        if (!holds.empty() && !fails.empty())
            out.push_back(json{{"group", g}, {"kind", "equivalence"}, {"holds", holds}, {"fails", fails}});
        const bool premise = equiv_holds || (any_hyp && hyps_hold);
        if (premise)
            for (const auto& c : cs)
                if (c.group == g && c.role == Role::Conclusion && c.verdict.is_fails())
                    out.push_back(json{{"group", g}, {"kind", "implication"}, {"condition", c.name}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Condition helpers shared by the suites.

template <class F>
PBounded<F> finite(Context<F>& ctx, const PObj<F>& x) {
    auto b = p_assume_bounded(ctx, x);
    b.status = clause(b.status, "homologically_finite");
    return b;
}

// Sequential conjunction: later parts are not evaluated once one fails.
inline Verdict conj(const std::vector<std::function<Verdict()>>& parts, const std::string& reason) {
    std::vector<Verdict> vs;
    for (const auto& p : parts) {
        vs.push_back(p());
        if (vs.back().is_fails()) break;
    }
    return all_of(vs, reason);
}

template <class F>
std::optional<int> zero_component(Context<F>& ctx, const PObj<F>& x) {
    for (int i = 0; i < x.size(); ++i)
        if (acyclic(ctx, x[i])) return i;
    return std::nullopt;
}

template <class F>
Verdict sd(Context<F>& ctx, const PObj<F>& x) {
    if (auto i = zero_component(ctx, x))
        return Verdict::fails("complex is zero on a component", json{{"component", *i + 1}});
    return is_semidualizing(ctx, x);
}

template <class F>
Verdict sd(Context<F>& ctx, const PBounded<F>& b) {
    return b.obj ? sd(ctx, *b.obj) : b.status;
}

template <class F>
Verdict dualizing(Context<F>& ctx, const PObj<F>& x) {
    if (auto i = zero_component(ctx, x))
        return Verdict::fails("complex is zero on a component", json{{"component", *i + 1}});
    return is_dualizing(ctx, x);
}

template <class F>
Verdict dualizing(Context<F>& ctx, const PBounded<F>& b) {
    return b.obj ? dualizing(ctx, *b.obj) : b.status;
}

template <class F>
Verdict reflexive(Context<F>& ctx, const PObj<F>& x, const PObj<F>& c) {
    return is_reflexive(ctx, x, c);
}

template <class F>
Verdict reflexive(Context<F>& ctx, const PBounded<F>& x, const PObj<F>& c) {
    return x.obj ? is_reflexive(ctx, *x.obj, c) : x.status;
}

template <class F>
bool any_assumed(const PObj<F>& x) {
    for (const auto& p : x.parts)
        if (p->assumed) return true;
    return false;
}

template <class F>
Verdict tilting(Context<F>& ctx, const PObj<F>& x) {
    bool all_zero = true;
    for (const auto& p : x.parts) all_zero = all_zero && acyclic(ctx, p);
    if (all_zero) return Verdict::fails("complex is zero");
    auto t = is_tilting(ctx, x);
    Verdict v = t.tilting ? Verdict::holds("tilting") : Verdict::fails("not tilting", t.witness);
    if (t.tilting) v.witness = json{{"shift", t.shift}};
    if (any_assumed(x)) v.with_window(ctx.window);
    return v;
}

template <class F>
Verdict tilting(Context<F>& ctx, const PBounded<F>& b) {
    return b.obj ? tilting(ctx, *b.obj) : b.status;
}

inline Verdict dim_verdict(const DimInfo& d, const char* what, int window) {
    Verdict v = d.finite ? Verdict::holds(std::string(what) + " is finite")
                         : Verdict::fails(std::string(what) + " is infinite");
    if (d.assumed) v.with_window(window);
    return v;
}

template <class F>
Verdict finite_pd(Context<F>& ctx, const PBounded<F>& b) {
    return b.obj ? dim_verdict(p_pd(ctx, *b.obj), "projective dimension", ctx.window) : b.status;
}

template <class F>
Verdict finite_id(Context<F>& ctx, const PBounded<F>& b) {
    return b.obj ? dim_verdict(p_id(ctx, *b.obj), "injective dimension", ctx.window) : b.status;
}

// Componentwise isomorphism up to an arbitrary shift.
template <class F>
Verdict locally_shift_iso(Context<F>& ctx, const PObj<F>& x, const PObj<F>& y) {
    check_same_ring(x, y);
    return componentwise<F>(x, [&](int i) { return derived_iso_shift(ctx, x[i], y[i]).first; },
                            "isomorphic up to shift on every component");
}

// Sampled class comparison: a decisive disagreement on a sample object refutes equality.
template <class F>
Verdict same_on_sample(const std::vector<Named<F>>& sample, const std::function<Verdict(const PObj<F>&)>& first,
                       const std::function<Verdict(const PObj<F>&)>& second) {
    std::vector<Verdict> agree;
    for (const auto& x : sample) {
        auto a = first(x.obj), b = second(x.obj);
        if (a.decisive() && b.decisive() && a.outcome != b.outcome) {
            Verdict v = Verdict::fails("classes differ on " + x.name,
                                       json{{"object", x.name}, {"first", to_json(a)}, {"second", to_json(b)}});
            if (a.evidence == Evidence::Window || b.evidence == Evidence::Window)
                v.with_window(std::max(a.bound, b.bound));
            return v;
        }
        if (!a.decisive()) agree.push_back(a);
        else if (!b.decisive()) agree.push_back(b);
        else agree.push_back(weaken(Verdict::holds("agree"), weaken(a, b)));
    }
    return all_of(agree, "classes agree on all " + std::to_string(sample.size()) + " sample objects");
}

template <class F>
Verdict all_in_sample(const std::vector<Named<F>>& sample, const std::function<Verdict(const PObj<F>&)>& member) {
    std::vector<Verdict> vs;
    for (const auto& x : sample) {
        auto v = member(x.obj);
        if (v.is_fails()) v.witness = json{{"object", x.name}, {"detail", v.witness}};
        vs.push_back(v);
    }
    return all_of(vs, "every sample object is in the class");
}

// Ext^n / Tor_n vanish for n in [a, b]. Degrees below the table are zero.
inline Verdict zero_range(const DimTable& t, int a, int b, int window) {
    if (a > b) return Verdict::holds("empty range");
    for (int n = a; n <= b; ++n) {
        if (n < t.lo) continue;
        auto d = t.at(n);
        if (!d) return Verdict::undetermined("degree " + std::to_string(n) + " is outside the window", window);
        if (*d != 0) return Verdict::fails("nonzero in degree " + std::to_string(n), json{{"degree", n}, {"dim", *d}});
    }
    Verdict v = Verdict::holds("vanishes in degrees " + std::to_string(a) + ".." + std::to_string(b));
    if (t.assumed) v.with_window(window);
    return v;
}

// Vanishing for every n > a, checked up to the end of the table.
inline Verdict zero_above(const DimTable& t, int a, int window) {
    for (int n = a + 1; n <= t.hi; ++n)
        if (n >= t.lo && *t.at(n) != 0)
            return Verdict::fails("nonzero in degree " + std::to_string(n), json{{"degree", n}, {"dim", *t.at(n)}});
    Verdict v = Verdict::holds("vanishes for " + std::to_string(a) + " < n <= " + std::to_string(t.hi));
    return v.with_window(window);
}

// Some run of len consecutive vanishing degrees n > a inside the table.
inline Verdict zero_run_above(const DimTable& t, int a, int len, int window) {
    int run = 0;
    for (int n = a + 1; n <= t.hi; ++n) {
        run = (n < t.lo || *t.at(n) == 0) ? run + 1 : 0;
        if (run >= len) {
            Verdict v = Verdict::holds("vanishes in degrees " + std::to_string(n - len + 1) + ".." + std::to_string(n));
            if (t.assumed) v.with_window(window);
            return v;
        }
    }
    return Verdict::fails("no vanishing run inside the window", json{{"after", a}, {"through", t.hi}}, Evidence::Window,
                          window);
}

template <class F>
Verdict nonzero_at(const DimTable& t, int n, int window) {
    if (n < t.lo) return Verdict::fails("zero in degree " + std::to_string(n), json{{"degree", n}, {"dim", 0}});
    auto d = t.at(n);
    if (!d) return Verdict::undetermined("degree outside the window", window);
    if (*d == 0) return Verdict::fails("zero in degree " + std::to_string(n), json{{"degree", n}, {"dim", 0}});
    return Verdict::holds("dimension " + std::to_string(*d) + " in degree " + std::to_string(n));
}

template <class F>
int h_inf(Context<F>& ctx, const LObj<F>& x) {
    return *hprof(ctx, x).inf();
}
template <class F>
int h_sup(Context<F>& ctx, const LObj<F>& x) {
    return *hprof(ctx, x).sup();
}

// Over an Artinian local ring: dim X = -inf X and depth X = -sup RHom(k, X).
template <class F>
Verdict cohen_macaulay(Context<F>& ctx, const LObj<F>& x) {
    auto dp = depth(ctx, x);
    if (!dp) return Verdict::undetermined("depth is not determined", ctx.window);
    const int dim = -h_inf(ctx, x);
    if (*dp == dim) return Verdict::holds("depth = dim = " + std::to_string(dim));
    return Verdict::fails("depth differs from dimension", json{{"depth", *dp}, {"dim", dim}});
}

template <class F>
Verdict amplitude_zero(Context<F>& ctx, const LObj<F>& x) {
    const int a = h_sup(ctx, x) - h_inf(ctx, x);
    if (a == 0) return Verdict::holds("isomorphic to a shifted module");
    return Verdict::fails("amplitude is positive", json{{"amplitude", a}});
}

// ---------------------------------------------------------------------------
// Suites

template <class F>
struct SuiteEnv {
    Context<F>& ctx;
    const Corpus<F>& corpus;
};

inline json input_of(const std::string& name, const json& doc) {
    return json{{"name", name}, {"doc", doc}};
}

template <class F>
using PairFn = std::function<std::vector<Check>(Context<F>&, const CorpusRing<F>&, const Named<F>&, const Named<F>&)>;

template <class F>
std::vector<CaseResult> over_pairs(SuiteEnv<F>& env, const char* xkey, bool x_from_objects, const PairFn<F>& fn,
                                   bool local_only = false) {
    std::vector<CaseResult> out;
    for (const auto& r : env.corpus.rings) {
        if (local_only && !r.local()) continue;
        const auto& xs = x_from_objects ? r.objects : r.candidates;
        for (const auto& x : xs)
            for (const auto& c : r.candidates) {
                CaseResult cr;
                cr.ring = r.name;
                cr.inputs = json{{xkey, input_of(x.name, x.doc)}, {"C", input_of(c.name, c.doc)}};
                cr.checks = fn(env.ctx, r, x, c);
                out.push_back(std::move(cr));
            }
    }
    return out;
}

template <class F>
std::vector<CaseResult> suite_theorem_A(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& B, const Named<F>& C) {
        auto H = finite(ctx, p_rhom(ctx, B.obj, C.obj));
        return std::vector<Check>{
            {"B is C-reflexive", "main", Role::Equivalent, reflexive(ctx, B.obj, C.obj)},
            {"RHom(B,C) is semidualizing", "main", Role::Equivalent, sd(ctx, H)},
            {"RHom(B,C) is C-reflexive", "main", Role::Equivalent, reflexive(ctx, H, C.obj)},
            {"C is in the Bass class of B", "main", Role::Equivalent, in_bass(ctx, C.obj, B.obj)},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_semidual1(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "X", true, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& X, const Named<F>& C) {
        auto H = finite(ctx, p_rhom(ctx, X.obj, C.obj));
        return std::vector<Check>{
            {"X is semidualizing and C-reflexive", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, X.obj); }, [&] { return reflexive(ctx, X.obj, C.obj); }}, "both hold")},
            {"RHom(X,C) is semidualizing and C-reflexive", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, H); }, [&] { return reflexive(ctx, H, C.obj); }}, "both hold")},
            {"RHom(X,C) is semidualizing and X is C-reflexive", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, H); }, [&] { return reflexive(ctx, X.obj, C.obj); }}, "both hold")},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_semidual5(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "X", true, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& X, const Named<F>& C) {
        auto T = finite(ctx, p_ltensor(ctx, C.obj, X.obj));
        auto refl_into_T = [&](const PObj<F>& y) {
            return [&ctx, &T, y] { return T.obj ? reflexive(ctx, y, *T.obj) : T.status; };
        };
        return std::vector<Check>{
            {"X is semidualizing and in A_C", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, X.obj); }, [&] { return in_auslander(ctx, X.obj, C.obj); }}, "both hold")},
            {"X and C(x)X are semidualizing", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, X.obj); }, [&] { return sd(ctx, T); }}, "both hold")},
            {"X is in A_C and C(x)X is semidualizing", "main", Role::Equivalent,
             conj({[&] { return in_auslander(ctx, X.obj, C.obj); }, [&] { return sd(ctx, T); }}, "both hold")},
            {"C(x)X is semidualizing and C is C(x)X-reflexive", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, T); }, refl_into_T(C.obj)}, "both hold")},
            {"C(x)X is semidualizing and X is C(x)X-reflexive", "main", Role::Equivalent,
             conj({[&] { return sd(ctx, T); }, refl_into_T(X.obj)}, "both hold")},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_semidual6(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& B, const Named<F>& C) {
        return std::vector<Check>{
            {"C(x)B is semidualizing", "main", Role::Equivalent, sd(ctx, finite(ctx, p_ltensor(ctx, C.obj, B.obj)))},
            {"B is in A_C", "main", Role::Equivalent, in_auslander(ctx, B.obj, C.obj)},
            {"C is in A_B", "main", Role::Equivalent, in_auslander(ctx, C.obj, B.obj)},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_theorem_B(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>& r, const Named<F>& B, const Named<F>& C) {
        auto H = finite(ctx, p_rhom(ctx, B.obj, C.obj));
        return std::vector<Check>{
            {"B ~ C", "main", Role::Equivalent, approx_equiv(ctx, B.obj, C.obj).verdict},
            {"RHom(B,C) is tilting", "main", Role::Equivalent, tilting(ctx, H)},
            {"pd RHom(B,C) is finite", "main", Role::Equivalent, finite_pd(ctx, H)},
            {"B and C are in each other's Bass class", "main", Role::Equivalent,
             conj({[&] { return in_bass(ctx, B.obj, C.obj); }, [&] { return in_bass(ctx, C.obj, B.obj); }},
                  "both hold")},
            {"Bass classes of B and C agree on the sample", "main", Role::Conclusion,
             same_on_sample<F>(
                 r.objects, [&](const PObj<F>& x) { return in_bass(ctx, x, B.obj); },
                 [&](const PObj<F>& x) { return in_bass(ctx, x, C.obj); })},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_picard08(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& B, const Named<F>& C) {
        auto H = finite(ctx, p_rhom(ctx, B.obj, C.obj));
        auto G = finite(ctx, p_rhom(ctx, C.obj, B.obj));
        std::vector<Check> cs{
            {"B ~ C", "main", Role::Equivalent, approx_equiv(ctx, B.obj, C.obj).verdict},
            {"B is C-reflexive and C is B-reflexive", "main", Role::Equivalent,
             conj({[&] { return reflexive(ctx, B.obj, C.obj); }, [&] { return reflexive(ctx, C.obj, B.obj); }},
                  "both hold")},
            {"Ext(B,C) vanishes eventually and B, C agree locally up to shift", "main", Role::Equivalent,
             conj({[&] { return clause(H.status, "ext_vanishing"); },
                   [&] { return locally_shift_iso(ctx, B.obj, C.obj); }},
                  "both hold")},
            {"RHom(B,C) is tilting", "main", Role::Equivalent, tilting(ctx, H)},
        };
        // The two isomorphisms are only meaningful for homologically finite RHom.
        auto iso_after = [&](const PObj<F>& target, const PBounded<F>& hom, const PObj<F>& other) {
            auto T = finite(ctx, p_ltensor(ctx, *hom.obj, other));
            return T.obj ? p_derived_iso(ctx, target, *T.obj) : T.status;
        };
        if (H.obj) cs.push_back({"C is RHom(B,C) (x) B", "main", Role::Conclusion, iso_after(C.obj, H, B.obj)});
        if (G.obj) cs.push_back({"B is RHom(C,B) (x) C", "main", Role::Conclusion, iso_after(B.obj, G, C.obj)});
        return cs;
    });
}

template <class F>
std::vector<CaseResult> suite_picard09(SuiteEnv<F>& env) {
    std::vector<CaseResult> out;
    for (const auto& r : env.corpus.rings) {
        std::vector<const Named<F>*> xs;
        for (const auto& x : r.objects) xs.push_back(&x);
        for (const auto& c : r.candidates) {
            bool dup = false;
            for (const auto& x : r.objects) dup = dup || x.name == c.name;
            if (!dup) xs.push_back(&c);
        }
        const auto R = p_ring(r.ring);
        for (const auto* x : xs) {
            CaseResult cr;
            cr.ring = r.name;
            cr.inputs = json{{"X", input_of(x->name, x->doc)}};
            cr.checks = {
                {"X is tilting", "main", Role::Equivalent, tilting(env.ctx, x->obj)},
                {"X is locally a shift of R", "main", Role::Equivalent, locally_shift_iso(env.ctx, x->obj, R)},
            };
            out.push_back(std::move(cr));
        }
    }
    return out;
}

template <class F>
std::vector<CaseResult> suite_tilt01(SuiteEnv<F>& env) {
    std::vector<CaseResult> out;
    auto& ctx = env.ctx;
    for (const auto& r : env.corpus.rings) {
        const auto R = p_ring(r.ring), E = p_dual(r.ring);
        for (const auto& c : r.candidates) {
            const auto& C = c.obj;
            CaseResult cr;
            cr.ring = r.name;
            cr.inputs = json{{"C", input_of(c.name, c.doc)}};
            cr.checks = {
                {"C is tilting", "main", Role::Equivalent, tilting(ctx, C)},
                {"R is in B_C", "main", Role::Equivalent, in_bass(ctx, R, C)},
                {"the injective hulls of the residue fields are in A_C", "main", Role::Equivalent,
                 in_auslander(ctx, E, C)},
                {"B_C contains the sample", "main", Role::Conclusion,
                 all_in_sample<F>(r.objects, [&](const PObj<F>& x) { return in_bass(ctx, x, C); })},
                {"A_C contains the sample", "main", Role::Conclusion,
                 all_in_sample<F>(r.objects, [&](const PObj<F>& x) { return in_auslander(ctx, x, C); })},
            };
            out.push_back(std::move(cr));
        }
    }
    return out;
}

template <class F>
std::vector<CaseResult> suite_sdc05(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& B, const Named<F>& C) {
        auto T = finite(ctx, p_ltensor(ctx, B.obj, C.obj));
        return std::vector<Check>{
            {"B and C are tilting", "main", Role::Equivalent,
             conj({[&] { return tilting(ctx, B.obj); }, [&] { return tilting(ctx, C.obj); }}, "both hold")},
            {"B(x)C is tilting", "main", Role::Equivalent, tilting(ctx, T)},
            {"pd B(x)C is finite", "main", Role::Equivalent, finite_pd(ctx, T)},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_sdc05p(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>& r, const Named<F>& B, const Named<F>& C) {
        return std::vector<Check>{
            {"B ~ C", "main", Role::Equivalent, approx_equiv(ctx, B.obj, C.obj).verdict},
            {"Auslander classes of B and C agree on the sample", "main", Role::Conclusion,
             same_on_sample<F>(
                 r.objects, [&](const PObj<F>& x) { return in_auslander(ctx, x, B.obj); },
                 [&](const PObj<F>& x) { return in_auslander(ctx, x, C.obj); })},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_sdc06(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>&, const Named<F>& B, const Named<F>& C) {
        auto H = finite(ctx, p_rhom(ctx, B.obj, C.obj));
        return std::vector<Check>{
            {"B is tilting and C is dualizing", "main", Role::Equivalent,
             conj({[&] { return tilting(ctx, B.obj); }, [&] { return dualizing(ctx, C.obj); }}, "both hold")},
            {"RHom(B,C) is dualizing", "main", Role::Equivalent, dualizing(ctx, H)},
            {"id RHom(B,C) is finite", "main", Role::Equivalent, finite_id(ctx, H)},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_sdc07(SuiteEnv<F>& env) {
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>& r, const Named<F>& B, const Named<F>& C) {
        auto T = finite(ctx, p_ltensor(ctx, B.obj, C.obj));
        // Dualizing complexes over the ring are the shifts of D, so the first condition
        // is B ~ RHom(C, D) up to a shift on each component.
        const auto CD = finite(ctx, p_rhom(ctx, C.obj, p_dual(r.ring)));
        return std::vector<Check>{
            {"B is RHom(C,D') for a dualizing D'", "main", Role::Equivalent,
             CD.obj ? locally_shift_iso(ctx, B.obj, *CD.obj) : CD.status},
            {"B(x)C is dualizing", "main", Role::Equivalent, dualizing(ctx, T)},
            {"id B(x)C is finite", "main", Role::Equivalent, finite_id(ctx, T)},
        };
    });
}

template <class F>
std::vector<CaseResult> suite_tpq03(SuiteEnv<F>& env) {
    for (const auto& r : env.corpus.rings) {
        bool has_dual = false;
        for (const auto& c : r.candidates) has_dual = has_dual || c.name == "D";
        if (!has_dual) throw InputError("tpq03: ring " + r.name + " has no dualizing candidate D");
    }
    return over_pairs<F>(env, "B", false, [](Context<F>& ctx, const CorpusRing<F>& r, const Named<F>& B, const Named<F>& C) {
        const auto& D = r.candidate("D").obj;
        auto T = finite(ctx, p_ltensor(ctx, B.obj, C.obj));
        // RHom(C,D) is homologically finite since D is dualizing; the bounded representative
        // keeps the outer RHom small.
        const auto CD = finite(ctx, p_rhom(ctx, C.obj, D));
        auto Hd = CD.obj ? finite(ctx, p_rhom(ctx, B.obj, *CD.obj)) : CD;
        return std::vector<Check>{
            {"Tor(B,C) vanishes eventually", "finiteness", Role::Equivalent, T.status},
            {"Ext(B, RHom(C,D)) vanishes eventually", "finiteness", Role::Equivalent, Hd.status},
            {"B(x)C is semidualizing", "semidualizing", Role::Equivalent, sd(ctx, T)},
            {"RHom(B, RHom(C,D)) is semidualizing", "semidualizing", Role::Equivalent, sd(ctx, Hd)},
        };
    });
}

// Dimension-zero instantiations. Candidates are normalized so that inf = 0.
template <class F>
PObj<F> normalized(Context<F>& ctx, const PObj<F>& x) {
    return p_shift(x, -h_inf(ctx, x[0]));
}

// Shift by the least inf over all components.
template <class F>
PObj<F> normalized_whole(Context<F>& ctx, const PObj<F>& x) {
    int i = INT_MAX;
    for (int k = 0; k < x.size(); ++k)
        if (auto v = hprof(ctx, x[k]).inf()) i = std::min(i, *v);
    return i == INT_MAX ? x : p_shift(x, -i);
}

template <class F>
std::vector<CaseResult> suite_ext01(SuiteEnv<F>& env) {
    return over_pairs<F>(
        env, "B", false,
        [](Context<F>& ctx, const CorpusRing<F>& r, const Named<F>& Bn, const Named<F>& Cn) {
            const auto B = normalized(ctx, Bn.obj), C = normalized(ctx, Cn.obj);
            const auto t = ext_table(ctx, B[0], C[0]);
            const int i = h_sup(ctx, B[0]), j = h_sup(ctx, C[0]), s0 = j;
            const int depthR = *p_depth(ctx, p_ring(r.ring)), cmd = 0 - depthR;
            std::vector<Check> cs{
                {"Ext^(sup B - sup C)(B,C) is nonzero", "nonvanishing", Role::Required, nonzero_at<F>(t, i - j, ctx.window)},
            };
            for (int s : {s0, s0 + 1}) {
                const std::string g = "module (s = sup C + " + std::to_string(s - s0) + ")";
                cs.push_back({"Ext^n(B,C) = 0 for -s < n <= dim R", g, Role::Hypothesis, zero_range(t, -s + 1, 0, ctx.window)});
                cs.push_back({"B is a module and s = sup C", g, Role::Conclusion,
                              conj({[&] { return amplitude_zero(ctx, B[0]); },
                                    [&, s] {
                                        return s == j ? Verdict::holds("s = sup C")
                                                      : Verdict::fails("s differs from sup C", json{{"s", s}, {"sup", j}});
                                    }},
                                   "both hold")});
            }
            cs.push_back({"Ext^n(B,C) = 0 for -cmd R < n <= dim R", "cohen_macaulay", Role::Hypothesis,
                          zero_range(t, -cmd + 1, 0, ctx.window)});
            cs.push_back({"C is Cohen-Macaulay", "cohen_macaulay", Role::Conclusion, cohen_macaulay(ctx, C[0])});
            return cs;
        },
        true);
}

template <class F>
std::vector<CaseResult> suite_tor01(SuiteEnv<F>& env) {
    return over_pairs<F>(
        env, "B", false,
        [](Context<F>& ctx, const CorpusRing<F>& r, const Named<F>& Bn, const Named<F>& Cn) {
            const auto B = normalized(ctx, Bn.obj), C = normalized(ctx, Cn.obj);
            const auto t = tor_table(ctx, B[0], C[0]);
            const int rB = h_sup(ctx, B[0]), j = h_inf(ctx, C[0]);
            const auto R = p_ring(r.ring);
            return std::vector<Check>{
                {"Tor_(sup B + inf C)(B,C) is nonzero", "nonvanishing", Role::Required, nonzero_at<F>(t, rB + j, ctx.window)},
                {"Tor_n(B,C) = 0 for 1 <= n <= 2 dim R", "modules", Role::Hypothesis, zero_range(t, 1, 0, ctx.window)},
                {"B and C are modules", "modules", Role::Conclusion,
                 conj({[&] { return amplitude_zero(ctx, B[0]); }, [&] { return amplitude_zero(ctx, C[0]); }}, "both hold")},
                {"B or C is Cohen-Macaulay", "cohen_macaulay", Role::Hypothesis,
                 [&] {
                     auto b = cohen_macaulay(ctx, B[0]);
                     return b.is_holds() ? b : cohen_macaulay(ctx, C[0]);
                 }()},
                {"Tor_n(B,C) = 0 for 1 <= n <= 2 dim R", "cohen_macaulay", Role::Hypothesis, zero_range(t, 1, 0, ctx.window)},
                {"R is Cohen-Macaulay", "cohen_macaulay", Role::Conclusion, cohen_macaulay(ctx, R[0])},
            };
        },
        true);
}

template <class F>
std::vector<CaseResult> suite_abs01(SuiteEnv<F>& env) {
    std::vector<CaseResult> out;
    auto& ctx = env.ctx;
    for (const auto& r : env.corpus.rings) {
        if (!r.local()) continue;
        const auto R = p_ring(r.ring), D = p_dual(r.ring);
        CaseResult cr;
        cr.ring = r.name;
        cr.inputs = json{{"D", input_of("D", bdoc("dual"))}};
        cr.checks = {
            {"Ext^n(D,R) = 0 for 1 <= n <= dim R", "main", Role::Hypothesis,
             zero_range(ext_table(ctx, D[0], R[0]), 1, 0, ctx.window)},
            {"R is Cohen-Macaulay", "main", Role::Conclusion, cohen_macaulay(ctx, R[0])},
        };
        out.push_back(std::move(cr));
    }
    return out;
}

template <class F>
std::vector<CaseResult> suite_lem0601(SuiteEnv<F>& env) {
    std::vector<CaseResult> out;
    auto& ctx = env.ctx;
    for (const auto& r : env.corpus.rings) {
        if (!r.local()) continue;
        const int cmd = 0 - *p_depth(ctx, p_ring(r.ring));
        for (const auto& c : r.candidates) {
            const auto& C = c.obj[0];
            const int amp = h_sup(ctx, C) - h_inf(ctx, C);
            CaseResult cr;
            cr.ring = r.name;
            cr.inputs = json{{"C", input_of(c.name, c.doc)}};
            cr.checks = {
                {"amp C = cmd R", "main", Role::Hypothesis,
                 amp == cmd ? Verdict::holds("amplitude equals the Cohen-Macaulay defect")
                            : Verdict::fails("amplitude differs", json{{"amp", amp}, {"cmd", cmd}})},
                // Over an Artinian local ring every nonzero module has full support.
                {"top homology of C has full support", "main", Role::Hypothesis,
                 hprof(ctx, C).dim(h_sup(ctx, C)) > 0 ? Verdict::holds("nonzero over a one-point spectrum")
                                                       : Verdict::fails("top homology vanishes")},
                {"C is Cohen-Macaulay", "main", Role::Conclusion, cohen_macaulay(ctx, C)},
            };
            out.push_back(std::move(cr));
        }
    }
    return out;
}

// B = R1 + Sigma^m D2 over R1 x R2 with R2 non-Gorenstein. Its published outcome: B is
// semidualizing, Ext^n(B,R) = 0 for 0 < n < m, Tor_n(B,B) = 0 for 0 < n < 2m, yet B is
// not R-reflexive and B (x) B is not semidualizing.
template <class F>
std::vector<CaseResult> suite_local01(SuiteEnv<F>& env, int m = 2) {
    auto& ctx = env.ctx;
    const auto r = local_example_ring(env.ctx.field, m);
    const auto& B = r.candidate("B");
    const auto R = p_ring(r.ring);
    auto BB = finite(ctx, p_ltensor(ctx, B.obj, B.obj));
    CaseResult cr;
    cr.ring = r.name;
    cr.inputs = json{{"ring", r.doc}, {"B", input_of(B.name, B.doc)}, {"m", m}};
    cr.checks = {
        {"B is semidualizing", "main", Role::Required, sd(ctx, B.obj)},
        {"Ext^n(B,R) = 0 for 1 <= n <= m-1", "main", Role::Required,
         zero_range(p_ext_table(ctx, B.obj, R), 1, m - 1, ctx.window)},
        {"Tor_n(B,B) = 0 for 1 <= n <= 2m-1", "main", Role::Required,
         zero_range(p_tor_table(ctx, B.obj, B.obj), 1, 2 * m - 1, ctx.window)},
        {"B is R-reflexive", "main", Role::Refuted, is_reflexive(ctx, B.obj, R)},
        {"B(x)B is semidualizing", "main", Role::Refuted, sd(ctx, BB)},
    };
    // Replay material: the failing component as a standalone local problem.
    json comps = r.doc.at("components");
    cr.extra = json{{"replay",
                     {{"component", 2},
                      {"ring", algebra_doc(r.ring->comps[1]->field.spec(), {comps[1]})},
                      {"X", explicit_local_doc(*B.obj[1])},
                      {"C", bdoc("ring")},
                      {"expect", "X is not C-reflexive"}}}};
    return {cr};
}

inline const std::vector<std::string>& counted_suites() {
    static const std::vector<std::string> ids = {"theorem_A", "theorem_B", "semidual1", "semidual5", "semidual6",
                                                 "picard08",  "picard09",  "tilt01",    "sdc05",     "sdc05p",
                                                 "sdc06",     "sdc07",     "tpq03"};
    return ids;
}

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> ids = [] {
        auto v = counted_suites();
        for (const char* s : {"ext01", "tor01", "abs01", "lem0601", "local01"}) v.push_back(s);
        return v;
    }();
    return ids;
}

template <class F>
std::vector<CaseResult> run_suite_cases(const std::string& id, SuiteEnv<F>& env) {
    static const std::map<std::string, std::function<std::vector<CaseResult>(SuiteEnv<F>&)>> table = {
        {"theorem_A", suite_theorem_A<F>}, {"theorem_B", suite_theorem_B<F>}, {"semidual1", suite_semidual1<F>},
        {"semidual5", suite_semidual5<F>}, {"semidual6", suite_semidual6<F>}, {"picard08", suite_picard08<F>},
        {"picard09", suite_picard09<F>},   {"tilt01", suite_tilt01<F>},       {"sdc05", suite_sdc05<F>},
        {"sdc05p", suite_sdc05p<F>},       {"sdc06", suite_sdc06<F>},         {"sdc07", suite_sdc07<F>},
        {"tpq03", suite_tpq03<F>},         {"ext01", suite_ext01<F>},         {"tor01", suite_tor01<F>},
        {"abs01", suite_abs01<F>},         {"lem0601", suite_lem0601<F>},
        {"local01", [](SuiteEnv<F>& e) { return suite_local01<F>(e); }},
        {"empty", [](SuiteEnv<F>&) { return std::vector<CaseResult>{}; }},
    };
    auto it = table.find(id);
    if (it == table.end()) throw InputError("unknown suite '" + id + "'");
    return it->second(env);
}

// ---------------------------------------------------------------------------
// Counterexample search for the open questions. A hit is a pair with a decisive Holds
// hypothesis and a decisive Fails conclusion; it is a candidate only, never a disproof.

struct SearchCase {
    std::string ring;
    json inputs;
    Verdict hypothesis, conclusion;
    bool hit() const { return hypothesis.is_holds() && conclusion.is_fails(); }
};

struct SearchResult {
    std::string question;
    std::vector<SearchCase> cases;
    std::vector<json> excluded;
};

inline std::vector<std::string> question_parts(const std::string& q) {
    if (q == "tach03") return {"tach03a", "tach03b", "tach03c"};
    if (q == "tpq02") return {"tpq02a", "tpq02b", "tpq02c"};
    if (q == "tpq01") return {"tpq01a", "tpq01b", "tpq01c"};
    static const std::vector<std::string> known = {"tach03a", "tach03b", "tach03c", "tpq02a", "tpq02b",
                                                   "tpq02c",  "tpq01a",  "tpq01b",  "tpq01c", "moretpq"};
    if (std::find(known.begin(), known.end(), q) == known.end()) throw InputError("unknown question '" + q + "'");
    return {q};
}

template <class F>
SearchResult search_part(const std::string& q, SuiteEnv<F>& env) {
    auto& ctx = env.ctx;
    SearchResult res;
    res.question = q;
    if (q == "moretpq") {
        // Needs a ring of Krull dimension at least one.
        for (const auto& r : env.corpus.rings)
            res.excluded.push_back(json{{"ring", r.name}, {"reason", "Krull dimension 0"}});
        return res;
    }
    const char fam = q.back();
    const bool local_only = fam == 'a' && q.rfind("tpq01", 0) != 0;
    for (const auto& r : env.corpus.rings) {
        if (local_only && !r.local()) {
            res.excluded.push_back(json{{"ring", r.name}, {"reason", "the question is posed over a local ring"}});
            continue;
        }
        const bool x_objects = q.rfind("tpq01", 0) == 0;
        const auto& xs = x_objects ? r.objects : r.candidates;
        for (const auto& x : xs)
            for (const auto& c : r.candidates) {
                SearchCase sc;
                sc.ring = r.name;
                sc.inputs = json{{x_objects ? "X" : "B", input_of(x.name, x.doc)}, {"C", input_of(c.name, c.doc)}};
                const bool tach = q.rfind("tach03", 0) == 0;
                // The Ext threshold sup C - inf B is not shift invariant, so both sides are taken with inf = 0.
                const auto B = tach ? normalized_whole(ctx, x.obj) : x.obj;
                const auto C = tach ? normalized_whole(ctx, c.obj) : c.obj;
                if (tach) {
                    const int a = h_sup(ctx, C[0]) - h_inf(ctx, B[0]);
                    if (fam == 'a') sc.hypothesis = zero_run_above(ext_table(ctx, B[0], C[0]), a, 1, ctx.window);
                    if (fam == 'b') {
                        // sup C - inf B of the whole complexes over the product.
                        int s = INT_MIN, i = INT_MAX;
                        for (int k = 0; k < B.size(); ++k) {
                            s = std::max(s, h_sup(ctx, C[k]));
                            i = std::min(i, h_inf(ctx, B[k]));
                        }
                        sc.hypothesis = zero_above(p_ext_table(ctx, B, C), s - i, ctx.window);
                    }
                    if (fam == 'c') sc.hypothesis = finite(ctx, p_rhom(ctx, B, C)).status;
                    sc.conclusion = sc.hypothesis.is_holds() ? is_reflexive(ctx, B, C)
                                                             : Verdict::undetermined("not evaluated", ctx.window);
                } else if (q.rfind("tpq02", 0) == 0) {
                    if (fam == 'a')
                        sc.hypothesis = zero_run_above(tor_table(ctx, B[0], C[0]), h_inf(ctx, B[0]) + h_inf(ctx, C[0]), 1,
                                                       ctx.window);
                    if (fam == 'b') {
                        int i = INT_MAX, j = INT_MAX;
                        for (int k = 0; k < B.size(); ++k) {
                            i = std::min(i, h_inf(ctx, B[k]));
                            j = std::min(j, h_inf(ctx, C[k]));
                        }
                        sc.hypothesis = zero_above(p_tor_table(ctx, B, C), i + j, ctx.window);
                    }
                    if (fam == 'c') sc.hypothesis = finite(ctx, p_ltensor(ctx, B, C)).status;
                    sc.conclusion = sc.hypothesis.is_holds() ? sd(ctx, finite(ctx, p_ltensor(ctx, B, C)))
                                                             : Verdict::undetermined("not evaluated", ctx.window);
                } else {
                    PBounded<F> Y;
                    if (fam == 'a') Y = finite(ctx, p_ltensor(ctx, C, B));
                    if (fam == 'b') Y = finite(ctx, p_rhom(ctx, C, B));
                    if (fam == 'c') Y = finite(ctx, p_rhom(ctx, B, C));
                    sc.hypothesis = sd(ctx, Y);
                    sc.conclusion = sc.hypothesis.is_holds() ? sd(ctx, B)
                                                             : Verdict::undetermined("not evaluated", ctx.window);
                }
                res.cases.push_back(std::move(sc));
            }
    }
    return res;
}

}  // namespace sdclab
