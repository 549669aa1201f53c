#include <gtest/gtest.h>

#include "sdclab/module.hpp"

using namespace sdclab;

namespace {

template <class F>
AlgPtr<F> r1(const F& f) { return monomial_quotient(f, {"x"}, std::vector<std::string>{"x^2"}); }
template <class F>
AlgPtr<F> r2(const F& f) { return monomial_quotient(f, {"x", "y"}, std::vector<std::string>{"x^2", "x*y", "y^2"}); }

// Brute-force socle: elements a with m*a = 0, found by testing every basis direction.
template <class F>
int oracle_socle_dim(const LocalAlgebra<F>& a) {
    Matrix<F> sys(a.field, a.dim * static_cast<int>(a.mideal.size()), a.dim);
    for (size_t t = 0; t < a.mideal.size(); ++t)
        for (int j = 0; j < a.dim; ++j)
            for (const auto& [i, v] : a.mult[a.mideal[t]][j]) sys(static_cast<int>(t) * a.dim + i, j) = v;
    return kernel_basis(sys).cols();
}

}  // namespace

TEST(MonomialQuotient, DualNumbersHaveDimensionTwo) {
    auto a = r1(Rationals{});
    EXPECT_EQ(a->dim, 2);
    EXPECT_EQ(a->names, (std::vector<std::string>{"1", "x"}));
}

TEST(MonomialQuotient, R2HasBasisOneXY) {
    auto a = r2(Rationals{});
    EXPECT_EQ(a->dim, 3);
    EXPECT_EQ(a->names, (std::vector<std::string>{"1", "x", "y"}));
}

TEST(MonomialQuotient, FieldItself) {
    auto a = monomial_quotient(PrimeField(5), {"x"}, std::vector<std::string>{"x"});
    EXPECT_EQ(a->dim, 1);
    EXPECT_TRUE(a->mideal.empty());
}

TEST(MonomialQuotient, Errors) {
    Rationals q;
    EXPECT_THROW(monomial_quotient(q, {"x", "y"}, std::vector<std::string>{"x^2"}), AlgebraError);
    EXPECT_THROW(monomial_quotient(q, {"x", "x"}, std::vector<std::string>{"x^2"}), AlgebraError);
    EXPECT_THROW(monomial_quotient(q, {"x"}, std::vector<std::string>{"z^2"}), std::invalid_argument);
}

TEST(MonomialQuotient, CompleteIntersectionBasis) {
    auto a = monomial_quotient(Rationals{}, {"x", "y"}, std::vector<std::string>{"x^2", "y^2"});
    EXPECT_EQ(a->names, (std::vector<std::string>{"1", "x", "y", "x*y"}));
    EXPECT_TRUE(is_gorenstein(*a));
}

TEST(Validate, PlantedAssociativityViolation) {
    PrimeField f(7);
    auto good = r2(f);
    auto mult = good->mult;
    // x*x := y and x*y := x give (x*x)*y = 0 but x*(x*y) = y.
    mult[1][1] = {{2, 1}};
    mult[1][2] = {{1, 1}};
    mult[2][1] = {{1, 1}};
    auto bad = LocalAlgebra<PrimeField>::make(f, 3, 0, {1, 2}, mult, good->names);
    try {
        validate(*bad);
        FAIL() << "expected validation failure";
    } catch (const AlgebraError& e) {
        bool found = false;
        for (const auto& d : e.diagnostics)
            if (d.find("not associative: witness") != std::string::npos) found = true;
        EXPECT_TRUE(found) << e.what();
    }
}

TEST(Validate, WholeAlgebraAsIdealIsCodimensionError) {
    Rationals q;
    auto good = r1(q);
    auto bad = LocalAlgebra<Rationals>::make(q, 2, 0, {0, 1}, good->mult, good->names);
    auto d = diagnose(*bad);
    bool found = false;
    for (const auto& s : d)
        if (s.find("codimension") != std::string::npos) found = true;
    EXPECT_TRUE(found);
}

TEST(Gorenstein, Examples) {
    Rationals q;
    EXPECT_TRUE(is_gorenstein(*r1(q)));
    EXPECT_FALSE(is_gorenstein(*r2(q)));
    EXPECT_TRUE(is_gorenstein(*monomial_quotient(q, {"x"}, std::vector<std::string>{"x"})));
    auto prod = ProductAlgebra<Rationals>::make({r1(q), r2(q)});
    EXPECT_FALSE(is_gorenstein(*prod));
    EXPECT_EQ(r2(q)->socle_dim(), oracle_socle_dim(*r2(q)));
}

TEST(MatlisDual, OfFieldAndR2) {
    Rationals q;
    auto a = r2(q);
    auto D = matlis_dual(FMod<Rationals>::free(a, 1));
    EXPECT_EQ(D.dim(), 3);
    EXPECT_EQ(num_generators(D), 2);
    auto k = monomial_quotient(q, {"x"}, std::vector<std::string>{"x"});
    EXPECT_EQ(matlis_dual(FMod<Rationals>::free(k, 1)).dim(), 1);
}

TEST(MatlisDual, GorensteinDualIsFree) {
    Rationals q;
    auto a = r1(q);
    auto R = FMod<Rationals>::free(a, 1);
    auto res = find_module_iso(matlis_dual(R), R, 7, 32);
    EXPECT_EQ(res.outcome, 1) << res.reason;
    // The certificate is an invertible A-linear map.
    ModMap<Rationals> m{matlis_dual(R), R, res.certificate};
    EXPECT_TRUE(is_linear(m));
}

template <class F>
void check_algebra_laws(const F& f) {
    std::vector<AlgPtr<F>> rings = {r1(f), r2(f), monomial_quotient(f, {"x"}, std::vector<std::string>{"x^3"}),
                                    monomial_quotient(f, {"x", "y"}, std::vector<std::string>{"x^2", "y^2"}),
                                    monomial_quotient(f, {"x", "y"}, std::vector<std::string>{"x^3", "x*y", "y^2"})};
    for (const auto& a : rings) {
        EXPECT_TRUE(diagnose(*a).empty());
        auto R = FMod<F>::free(a, 1);
        auto D = matlis_dual(R);
        // Number of generators of the dualizing module equals the socle dimension (type).
        EXPECT_EQ(num_generators(D), a->socle_dim());
        // Double dual is the identity on atoms.
        auto DD = matlis_dual(D);
        EXPECT_EQ(find_module_iso(DD, R, 3, 8).outcome, 1);
        // Exactness: rank of a module map equals the rank of its dual.
        auto k = FMod<F>::of_atom(a, make_atom(f, 1, std::vector<SparseMat<F>>(a->dim, SparseMat<F>(1, 1))));
        std::vector<SparseMat<F>> kact;
        for (int b = 0; b < a->dim; ++b) {
            SparseMat<F> m(1, 1);
            if (b == a->unit) m.col[0].emplace_back(0, f.one());
            kact.push_back(m);
        }
        k = FMod<F>::of_atom(a, make_atom(f, 1, kact));
        SparseMat<F> aug(1, a->dim);
        aug.col[a->unit].emplace_back(0, f.one());
        ModMap<F> eps{R, k, aug};
        ASSERT_TRUE(is_linear(eps));
        auto deps = matlis_dual(eps);
        EXPECT_TRUE(is_linear(deps));
        EXPECT_EQ(rank(f, eps.mat), rank(f, deps.mat));
    }
}

TEST(AlgebraProperty, LawsOverQ) { check_algebra_laws(Rationals{}); }
TEST(AlgebraProperty, LawsOverF32003) { check_algebra_laws(PrimeField(32003)); }

TEST(ModuleIso, R2VersusDualFailsOnGenerators) {
    Rationals q;
    auto a = r2(q);
    auto R = FMod<Rationals>::free(a, 1);
    auto res = find_module_iso(R, matlis_dual(R), 1, 32);
    EXPECT_EQ(res.outcome, 0);
    EXPECT_NE(res.reason.find("generator counts"), std::string::npos);
}

TEST(ModuleIso, SelfIso) {
    PrimeField f(32003);
    auto a = r2(f);
    auto D = matlis_dual(FMod<PrimeField>::free(a, 2));
    EXPECT_EQ(find_module_iso(D, D, 5, 32).outcome, 1);
}

TEST(TensorSpace, ResidueTensorDual) {
    Rationals q;
    auto a = r2(q);
    auto D = matlis_dual(FMod<Rationals>::free(a, 1));
    std::vector<SparseMat<Rationals>> kact;
    for (int b = 0; b < a->dim; ++b) {
        SparseMat<Rationals> m(1, 1);
        if (b == a->unit) m.col[0].emplace_back(0, q.one());
        kact.push_back(m);
    }
    auto k = FMod<Rationals>::of_atom(a, make_atom(q, 1, kact));
    EXPECT_EQ(tensor_space(k, D).mod.dim(), 2);
    EXPECT_EQ(hom_space(FMod<Rationals>::free(a, 1), D).dim(), 3);
}
