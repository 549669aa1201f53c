#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracle.hpp"
#include "sdclab/derived.hpp"

using namespace sdclab;

namespace {

template <class F>
AlgPtr<F> r1(const F& f) { return monomial_quotient(f, {"x"}, std::vector<std::string>{"x^2"}); }
template <class F>
AlgPtr<F> r2(const F& f) { return monomial_quotient(f, {"x", "y"}, std::vector<std::string>{"x^2", "x*y", "y^2"}); }
template <class F>
AlgPtr<F> ci(const F& f) { return monomial_quotient(f, {"x", "y"}, std::vector<std::string>{"x^2", "y^2"}); }
template <class F>
AlgPtr<F> r3(const F& f) { return monomial_quotient(f, {"x"}, std::vector<std::string>{"x^3"}); }

template <class F>
LObj<F> mod_obj(FMod<F> m, int s = 0) { return make_obj(module_complex(std::move(m), s)); }

template <class F>
LObj<F> mideal_obj(const AlgPtr<F>& a) { return mod_obj(maximal_ideal(a)); }
template <class F>
LObj<F> mideal_dual_obj(const AlgPtr<F>& a) { return mod_obj(matlis_dual(maximal_ideal(a))); }

// The cokernel of a random map A^s -> A^t; entries are mostly in the maximal ideal.
template <class F>
FMod<F> random_cokernel(const AlgPtr<F>& a, std::mt19937_64& rng) {
    const auto& A = *a;
    const F& f = A.field;
    int s = 1 + static_cast<int>(rng() % 2), t = 1 + static_cast<int>(rng() % 2);
    std::vector<SVec<F>> imgs;
    for (int j = 0; j < s; ++j) {
        Accum<F> acc(f, t * A.dim);
        for (int i = 0; i < t; ++i) {
            for (int m : A.mideal)
                if (rng() % 2) acc.add(i * A.dim + m, f.from_random(rng()));
            if (rng() % 6 == 0) acc.add(i * A.dim + A.unit, f.one());
        }
        imgs.push_back(acc.take());
    }
    Complex<F> c(a);
    c.set_term(0, FMod<F>::free(a, t));
    c.set_term(1, FMod<F>::free(a, s));
    c.set_diff(1, free_map(A, t, imgs));
    return FMod<F>::of_atom(a, homology_at(c, 0).atom);
}

// Two-term free complex with random entries in the maximal ideal, placed at degree deg.
template <class F>
Complex<F> random_free_piece(const AlgPtr<F>& a, std::mt19937_64& rng, int deg) {
    const auto& A = *a;
    const F& f = A.field;
    int s = 1 + static_cast<int>(rng() % 2), t = 1 + static_cast<int>(rng() % 2);
    std::vector<SVec<F>> imgs;
    for (int j = 0; j < s; ++j) {
        Accum<F> acc(f, t * A.dim);
        for (int i = 0; i < t; ++i)
            for (int m : A.mideal) acc.add(i * A.dim + m, f.from_random(rng()));
        imgs.push_back(acc.take());
    }
    Complex<F> c(a);
    c.set_term(deg, FMod<F>::free(a, t));
    c.set_term(deg + 1, FMod<F>::free(a, s));
    c.set_diff(deg + 1, free_map(A, t, imgs));
    return c;
}

template <class F>
std::vector<LObj<F>> module_zoo(const AlgPtr<F>& a) {
    return {residue_obj(a), ring_obj(a), dual_obj(a), mideal_obj(a), mideal_dual_obj(a)};
}

template <class F>
void expect_qiso(const Context<F>& ctx, const MapResult<F>& r, bool qiso) {
    ASSERT_TRUE(r.status.is_holds()) << r.status.reason;
    ASSERT_TRUE(r.map.has_value());
    EXPECT_TRUE(is_chain_map(*r.map));
    auto v = is_quasi_iso(ctx, *r.map);
    if (qiso) EXPECT_TRUE(v.is_holds()) << v.reason;
    else EXPECT_TRUE(v.is_fails()) << v.reason;
}

}  // namespace

// ---------------------------------------------------------------------------
// Resolutions

TEST(Resolution, FreeModuleTerminatesAtLengthZero) {
    Rationals q;
    auto a = r2(q);
    auto R = ring_obj(a);
    Resolution<Rationals> r(R.cx);
    r.extend_to(4);
    EXPECT_TRUE(r.terminated);
    EXPECT_EQ(r.length(), 0);
    EXPECT_EQ(r.b(0), 1);
}

TEST(Resolution, ResidueFieldOfDualNumbersHasBettiOnes) {
    Rationals q;
    auto a = r1(q);
    Resolution<Rationals> r(residue_obj(a).cx);
    r.extend_to(12);
    auto ref = oracle::residue_betti(*a, 12);
    for (int n = 0; n <= 12; ++n) {
        EXPECT_EQ(r.b(n), 1);
        EXPECT_EQ(r.b(n), ref[n]);
    }
    EXPECT_FALSE(r.terminated);
}

TEST(Resolution, ResidueFieldOfR2HasPowersOfTwo) {
    PrimeField f(32003);
    auto a = r2(f);
    Resolution<PrimeField> r(residue_obj(a).cx);
    r.extend_to(8);
    auto ref = oracle::residue_betti(*a, 8);
    for (int n = 0; n <= 8; ++n) {
        EXPECT_EQ(r.b(n), 1 << n);
        EXPECT_EQ(ref[n], 1 << n);
    }
}

TEST(Resolution, OracleAgreesOnOtherRings) {
    Rationals q;
    for (const auto& a : {ci(q), r3(q)}) {
        Resolution<Rationals> r(residue_obj(a).cx);
        r.extend_to(6);
        auto ref = oracle::residue_betti(*a, 6);
        for (int n = 0; n <= 6; ++n) EXPECT_EQ(r.b(n), ref[n]) << "degree " << n;
    }
}

TEST(Resolution, DifferentialsAreMinimalAndAugmentationIsQuasiIso) {
    PrimeField f(32003);
    std::mt19937_64 rng(5);
    Context<PrimeField> ctx(f, 8);
    for (const auto& a : {r1(f), r2(f), ci(f)}) {
        std::vector<LObj<PrimeField>> xs = module_zoo(a);
        for (int t = 0; t < 4; ++t) {
            auto c = random_free_piece(a, rng, static_cast<int>(rng() % 3) - 1);
            c = direct_sum(c, module_complex(random_cokernel(a, rng), 1));
            xs.push_back(make_obj(std::move(c)));
        }
        for (const auto& x : xs) {
            Resolution<PrimeField> r(x.cx);
            r.extend_to(x->hi() + 5);
            for (int n = r.start; n <= r.top(); ++n)
                for (const auto& v : r.dimg.at(n - r.start))
                    for (const auto& [idx, val] : v) EXPECT_NE(idx % a->dim, a->unit) << "unit entry in d_" << n;
            auto P = std::make_shared<const Complex<PrimeField>>(r.free_complex(r.top()));
            auto eps = r.augmentation(P);
            EXPECT_TRUE(is_chain_map(eps));
            EXPECT_TRUE(is_quasi_iso(ctx, eps).is_holds());
        }
    }
}

// ---------------------------------------------------------------------------
// Projective and injective dimension

TEST(Pd, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 8);
    auto a1 = r1(q);
    auto a2 = r2(q);
    auto p = pd_info(ctx, ring_obj(a2));
    EXPECT_TRUE(p.finite);
    EXPECT_EQ(p.normalized, 0);
    EXPECT_FALSE(pd_info(ctx, residue_obj(a1)).finite);
    auto s = pd_info(ctx, make_obj(module_complex(FMod<Rationals>::free(a2, 2), 3)));
    EXPECT_TRUE(s.finite);
    EXPECT_EQ(s.normalized, 0);
    EXPECT_EQ(s.absolute, 3);
    EXPECT_EQ(s.to_json(), json(0));
    EXPECT_EQ(pd_info(ctx, residue_obj(a1)).to_json(), json("infinity"));
    auto z = pd_info(ctx, make_obj(cone(identity_map(ring_obj(a1).cx))));
    EXPECT_TRUE(z.zero);
    EXPECT_EQ(z.to_json(), json("-infinity"));
}

TEST(Pd, FiniteExactlyForFreeModules) {
    PrimeField f(32003);
    std::mt19937_64 rng(17);
    Context<PrimeField> ctx(f, 8);
    int free_seen = 0, nonfree_seen = 0;
    for (const auto& a : {r1(f), r2(f), ci(f), r3(f)}) {
        for (int t = 0; t < 12; ++t) {
            auto m = random_cokernel(a, rng);
            if (m.dim() == 0) continue;
            auto d = pd_info(ctx, mod_obj(m));
            EXPECT_EQ(d.finite, is_free_module(m));
            (is_free_module(m) ? free_seen : nonfree_seen)++;
        }
    }
    EXPECT_GT(free_seen, 0);
    EXPECT_GT(nonfree_seen, 0);
}

TEST(Id, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 8);
    auto a1 = r1(q);
    auto a2 = r2(q);
    auto e = id_info(ctx, dual_obj(a2));
    EXPECT_TRUE(e.finite);
    EXPECT_EQ(e.normalized, 0);
    EXPECT_FALSE(id_info(ctx, residue_obj(a1)).finite);
    EXPECT_FALSE(id_info(ctx, ring_obj(a2)).finite);
    auto s = id_info(ctx, dual_obj(a2, -2));
    EXPECT_TRUE(s.finite);
    EXPECT_EQ(s.normalized, 0);
}

// ---------------------------------------------------------------------------
// RHom, tensor and their tables

TEST(RHom, FromRingIsIdentity) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r2(q);
    for (const auto& y : module_zoo(a)) {
        auto r = rhom(ctx, ring_obj(a), y);
        EXPECT_TRUE(derived_iso(ctx, r, y).is_holds());
    }
}

TEST(RHom, ExtOfResidueFieldOverDualNumbers) {
    Rationals q;
    Context<Rationals> ctx(q, 10);
    auto a = r1(q);
    auto k = residue_obj(a);
    auto t = ext_table(ctx, k, k);
    EXPECT_EQ(t.lo, 0);
    EXPECT_GE(t.hi, 10);
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(t.at(n), 1);
    EXPECT_FALSE(t.at(-1).has_value());
    auto h = hprof(ctx, rhom(ctx, k, k));
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(h.dim(-n), 1);
}

TEST(RHom, EndomorphismsOfInjectiveHull) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r2(q);
    auto D = dual_obj(a);
    auto t = ext_table(ctx, D, D);
    EXPECT_EQ(t.at(0), 3);
    for (int n = 1; n <= t.hi; ++n) EXPECT_EQ(t.at(n), 0) << n;
}

TEST(Tor, ResidueField) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 7);
    auto k1 = residue_obj(r1(f));
    auto t1 = tor_table(ctx, k1, k1);
    for (int n = 0; n <= 7; ++n) EXPECT_EQ(t1.at(n), 1);
    auto k2 = residue_obj(r2(f));
    auto t2 = tor_table(ctx, k2, k2);
    for (int n = 0; n <= 7; ++n) EXPECT_EQ(t2.at(n), 1 << n);
    EXPECT_FALSE(t2.at(20).has_value());
}

TEST(Tables, AcyclicArgumentGivesZeroTable) {
    Rationals q;
    Context<Rationals> ctx(q, 4);
    auto a = r1(q);
    auto z = make_obj(cone(identity_map(ring_obj(a).cx)));
    EXPECT_TRUE(ext_table(ctx, z, residue_obj(a)).all_zero());
    EXPECT_TRUE(tor_table(ctx, residue_obj(a), z).all_zero());
}

template <class F>
void check_matlis_oracle(const F& f) {
    Context<F> ctx(f, 5);
    for (const auto& a : {r1(f), r2(f), ci(f)}) {
        auto zoo = module_zoo(a);
        for (const auto& x : zoo)
            for (const auto& y : zoo) {
                auto yv = make_obj(matlis_dual(*y));
                auto e = ext_table(ctx, x, y);
                auto t = tor_table(ctx, x, yv);
                ASSERT_EQ(e.lo, t.lo);
                for (int n = e.lo; n <= std::min(e.hi, t.hi); ++n) EXPECT_EQ(e.at(n), t.at(n)) << "degree " << n;
            }
    }
}

TEST(Invariants, MatlisOracleOverRationals) { check_matlis_oracle(Rationals{}); }
TEST(Invariants, MatlisOracleOverPrimeField) { check_matlis_oracle(PrimeField(32003)); }

// Ext^n(X (x)^L Y, E) and Ext^n(X, RHom(Y, E)) agree; both equal dim Tor_n(X, Y).
TEST(Invariants, HomTensorAdjointness) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 5);
    std::mt19937_64 rng(23);
    for (const auto& a : {r1(f), r2(f), ci(f)}) {
        auto E = dual_obj(a);
        auto zoo = module_zoo(a);
        zoo.push_back(mod_obj(random_cokernel(a, rng)));
        for (const auto& x : zoo)
            for (const auto& y : {ring_obj(a), make_obj(random_free_piece(a, rng, 0))}) {
                if (acyclic(ctx, x) || acyclic(ctx, y)) continue;
                auto tor = tor_table(ctx, x, y);
                auto T = ltensor(ctx, x, y);
                auto B = assume_bounded(ctx, T);
                ASSERT_TRUE(B.status.is_holds()) << B.status.reason;
                auto lhs = ext_table(ctx, *B.obj, E);
                auto rhs = ext_table(ctx, x, rhom(ctx, y, E));
                for (int n = tor.lo; n <= tor.hi; ++n) {
                    if (lhs.at(-n)) EXPECT_EQ(*lhs.at(-n), *tor.at(n));
                    if (rhs.at(-n)) EXPECT_EQ(*rhs.at(-n), *tor.at(n));
                }
            }
    }
}

// Ext vanishes below inf X - sup Y and the first group is Hom(H_inf X, H_sup Y).
TEST(Invariants, ExtBoundaryOnRandomPairs) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 4);
    std::mt19937_64 rng(29);
    for (int t = 0; t < 24; ++t) {
        auto a = t % 3 == 0 ? r1(f) : (t % 3 == 1 ? r2(f) : ci(f));
        auto xc = direct_sum(random_free_piece(a, rng, static_cast<int>(rng() % 3) - 1),
                             module_complex(random_cokernel(a, rng), static_cast<int>(rng() % 3)));
        auto yc = module_complex(random_cokernel(a, rng), static_cast<int>(rng() % 3) - 1);
        auto x = make_obj(std::move(xc)), y = make_obj(std::move(yc));
        if (acyclic(ctx, x) || acyclic(ctx, y)) continue;
        const auto& hx = hprof(ctx, x);
        const auto& hy = hprof(ctx, y);
        const int ix = *hx.inf(), sy = *hy.sup();
        auto r = rhom(ctx, x, y);
        auto h = homology_dims(*r);
        for (int n = ix - sy - 3; n < ix - sy; ++n) EXPECT_EQ(h.dim(-n), 0);
        auto hs = hom_space(FMod<PrimeField>::of_atom(a, homology_at(*x, ix).atom), FMod<PrimeField>::of_atom(a, homology_at(*y, sy).atom));
        EXPECT_EQ(h.dim(sy - ix), hs.dim());
    }
}

// ---------------------------------------------------------------------------
// Canonical morphisms

TEST(Homothety, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r2(q);
    auto chk = [&](const LObj<Rationals>& c) {
        auto h = homothety(ctx, c);
        EXPECT_TRUE(is_chain_map(h));
        return is_quasi_iso(ctx, h);
    };
    EXPECT_TRUE(chk(ring_obj(a)).is_holds());
    EXPECT_TRUE(chk(dual_obj(a)).is_holds());
    auto k = residue_obj(a);
    EXPECT_TRUE(chk(k).is_fails());
    // H_0: R -> Hom(k, k) = k kills the maximal ideal; the kernel shows up in H_1 of the cone.
    auto h = homothety(ctx, k);
    EXPECT_EQ(homology_dims(cone(h)).dim(1), 2);
    EXPECT_TRUE(chk(dual_obj(r1(q), 2)).is_holds());
}

TEST(Biduality, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r2(q);
    auto R = ring_obj(a), D = dual_obj(a), k = residue_obj(a);
    expect_qiso(ctx, biduality(ctx, R, R), true);
    expect_qiso(ctx, biduality(ctx, D, D), true);
    expect_qiso(ctx, biduality(ctx, k, D), true);
    auto v = biduality(ctx, D, R);
    EXPECT_FALSE(v.status.is_holds() && is_quasi_iso(ctx, *v.map).is_holds());
}

TEST(Biduality, GorensteinRing) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 6);
    auto a = ci(f);
    auto R = ring_obj(a);
    for (const auto& x : module_zoo(a)) expect_qiso(ctx, biduality(ctx, x, R), true);
}

TEST(BassEvaluation, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r2(q);
    auto R = ring_obj(a), D = dual_obj(a);
    for (const auto& x : module_zoo(a)) {
        expect_qiso(ctx, bass_evaluation(ctx, R, x), true);
        expect_qiso(ctx, auslander_unit(ctx, R, x), true);
    }
    expect_qiso(ctx, bass_evaluation(ctx, D, D), true);
    expect_qiso(ctx, auslander_unit(ctx, D, R), true);
    auto g = auslander_unit(ctx, D, residue_obj(a));
    EXPECT_FALSE(g.status.is_holds() && is_quasi_iso(ctx, *g.map).is_holds());
}

TEST(BassEvaluation, ShiftedArguments) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 6);
    auto a = r1(f);
    auto D = dual_obj(a, 1);
    auto x = make_obj(module_complex(FMod<PrimeField>::injective(a, 2), -1));
    expect_qiso(ctx, bass_evaluation(ctx, D, x), true);
    auto y = make_obj(module_complex(FMod<PrimeField>::free(a, 1), 2));
    expect_qiso(ctx, auslander_unit(ctx, D, y), true);
}

TEST(Evaluation, TensorEvaluationWithFreeArgument) {
    Rationals q;
    Context<Rationals> ctx(q, 5);
    auto a = r2(q);
    auto R = ring_obj(a);
    for (const auto& y : module_zoo(a))
        for (const auto& z : module_zoo(a)) expect_qiso(ctx, tensor_evaluation(ctx, R, y, z), true);
}

TEST(Evaluation, TensorEvaluationIsChainMap) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 4);
    std::mt19937_64 rng(31);
    auto a = r2(f);
    for (int t = 0; t < 4; ++t) {
        auto x = make_obj(random_free_piece(a, rng, 0));
        auto y = mod_obj(random_cokernel(a, rng));
        auto z = residue_obj(a);
        if (acyclic(ctx, x) || acyclic(ctx, y)) continue;
        auto r = tensor_evaluation(ctx, x, y, z);
        ASSERT_TRUE(r.map.has_value());
        EXPECT_TRUE(is_chain_map(*r.map));
        // x has finite pd, so omega is a quasi-isomorphism.
        auto v = is_quasi_iso(ctx, *r.map);
        EXPECT_TRUE(v.is_holds()) << v.reason;
    }
}

TEST(Evaluation, HomEvaluationIntoInjective) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r2(q);
    auto E = dual_obj(a);
    for (const auto& x : module_zoo(a))
        for (const auto& y : module_zoo(a)) expect_qiso(ctx, hom_evaluation(ctx, x, y, E), true);
}

TEST(Evaluation, HomEvaluationWithShifts) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 6);
    auto a = ci(f);
    auto E = dual_obj(a, 1);
    auto x = residue_obj(a, -1);
    auto y = mod_obj(maximal_ideal(a), 2);
    expect_qiso(ctx, hom_evaluation(ctx, x, y, E), true);
}

// ---------------------------------------------------------------------------
// Quasi-isomorphisms and isomorphism in D(R)

TEST(QuasiIso, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r1(q);
    auto k = residue_obj(a);
    EXPECT_TRUE(is_quasi_iso(ctx, identity_map(k.cx)).is_holds());
    ChainMap<Rationals> zero{k.cx, k.cx, {}};
    auto v = is_quasi_iso(ctx, zero);
    EXPECT_TRUE(v.is_fails());
    EXPECT_TRUE(v.certified());
    auto P = resolve(ctx, k, 6);
    auto src = std::make_shared<const Complex<Rationals>>(P->free_complex(6));
    auto eps = P->augmentation(src);
    auto w = is_quasi_iso(ctx, eps);
    EXPECT_TRUE(w.is_holds());
    EXPECT_EQ(w.evidence, Evidence::Window);
}

TEST(DerivedIso, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a1 = r1(q), a2 = r2(q);
    auto k = residue_obj(a2);
    EXPECT_TRUE(derived_iso(ctx, k, make_obj(shift(*k, 0))).is_holds());
    auto v = derived_iso(ctx, ring_obj(a2), dual_obj(a2));
    EXPECT_TRUE(v.is_fails());
    EXPECT_TRUE(derived_iso(ctx, make_obj(matlis_dual(*ring_obj(a1))), ring_obj(a1)).is_holds());
    EXPECT_TRUE(derived_iso(ctx, k, residue_obj(a2, 1)).is_fails());
    auto [s, by] = derived_iso_shift(ctx, k, residue_obj(a2, 3));
    EXPECT_TRUE(s.is_holds());
    EXPECT_EQ(by, 3);
}

TEST(DerivedIso, AddingContractibleSummandIsInvisible) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 4);
    std::mt19937_64 rng(41);
    for (const auto& a : {r1(f), r2(f), ci(f)}) {
        for (int t = 0; t < 3; ++t) {
            auto x = direct_sum(random_free_piece(a, rng, 0), random_free_piece(a, rng, 2));
            auto xp = std::make_shared<const Complex<PrimeField>>(x);
            auto padded = direct_sum(x, cone(identity_map(ring_obj(a, 1).cx)));
            auto X = make_obj(std::move(x)), Y = make_obj(std::move(padded));
            auto r = derived_iso_map(ctx, X, Y);
            EXPECT_TRUE(r.verdict.is_holds()) << r.verdict.reason;
            if (r.map) EXPECT_TRUE(is_chain_map(*r.map));
            // Non-isomorphic: change the differential's homology.
            auto Z = make_obj(direct_sum(*X, module_complex(residue_field(a), 1)));
            EXPECT_TRUE(derived_iso(ctx, X, Z).is_fails());
        }
    }
}

TEST(Depth, Examples) {
    Rationals q;
    Context<Rationals> ctx(q, 6);
    auto a = r1(q);
    EXPECT_EQ(depth(ctx, ring_obj(a)), 0);
    EXPECT_EQ(depth(ctx, residue_obj(a)), 0);
    EXPECT_EQ(depth(ctx, ring_obj(a, 5)), -5);
    EXPECT_FALSE(depth(ctx, make_obj(cone(identity_map(ring_obj(a).cx)))).has_value());
}

// ---------------------------------------------------------------------------
// Window boundedness

TEST(AssumeBounded, AcceptsFinitePdAndRejectsPersistentHomology) {
    PrimeField f(32003);
    Context<PrimeField> ctx(f, 6);
    auto a = r1(f);
    auto R = ring_obj(a), k = residue_obj(a);
    // Hom(k, R) over a Gorenstein ring is concentrated in one degree.
    auto b = assume_bounded(ctx, rhom(ctx, k, R));
    EXPECT_TRUE(b.status.is_holds());
    EXPECT_EQ(b.status.evidence, Evidence::Window);
    ASSERT_TRUE(b.obj.has_value());
    EXPECT_TRUE((*b.obj)->exact_ends());
    EXPECT_TRUE(derived_iso(ctx, *b.obj, k).is_holds());
    auto c = assume_bounded(ctx, rhom(ctx, k, k));
    EXPECT_TRUE(c.status.is_fails());
    auto e = assume_bounded(ctx, R);
    EXPECT_TRUE(e.status.certified());
}

// ---------------------------------------------------------------------------
// Resolution cache

TEST(ResolutionCache, RoundTripAndGc) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("sdclab-cache-test-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    Rationals q;
    auto a = r2(q);
    auto k = residue_obj(a);
    std::vector<int> betti;
    {
        Context<Rationals> ctx(q, 4);
        ctx.cache_dir = dir;
        auto P = resolve(ctx, k, 5);
        betti = P->betti;
    }
    const Digest key = resolution_key(a->digest, k.id, 5);
    ASSERT_TRUE(fs::exists(record_path(dir, key)));
    auto before = fs::last_write_time(record_path(dir, key));
    {
        Context<Rationals> ctx(q, 4);
        ctx.cache_dir = dir;
        auto P = load_resolution(dir, key, k.cx, k.id);
        ASSERT_TRUE(P);
        EXPECT_EQ(P->betti, betti);
        auto src = std::make_shared<const Complex<Rationals>>(P->free_complex(5));
        EXPECT_TRUE(is_quasi_iso(ctx, P->augmentation(src)).is_holds());
        resolve(ctx, k, 5);
        EXPECT_EQ(fs::last_write_time(record_path(dir, key)), before);
    }
    // A record for a different complex is not accepted.
    EXPECT_FALSE(load_resolution(dir, key, ring_obj(a).cx, ring_obj(a).id));
    {
        std::ofstream(dir / "junk.json") << "{not json";
        std::ofstream(dir / "x.json.tmp") << "{}";
    }
    auto rep = cache_gc(dir);
    EXPECT_EQ(rep.kept, 1);
    EXPECT_EQ(rep.removed.size(), 2u);
    fs::remove_all(dir);
}
