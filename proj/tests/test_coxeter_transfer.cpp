#include "support.hpp"

#include <gtest/gtest.h>

using namespace starspec;
using starspec::testing::random_instance;

namespace {

const StarGraph& E6() { return e6_graph(); }
const QVec kDelta = to_q({1, 2, 1, 2, 1, 2, 3});

} // namespace

TEST(Coxeter, ReflectionMatricesAreInvolutions)
{
    for (Parity p : {Parity::even, Parity::odd}) {
        QMatrix R = reflection_matrix(E6(), p);
        EXPECT_EQ(R * R, QMatrix::identity(7));
    }
}

TEST(Coxeter, ElementaryMatrixIsOddAfterEven)
{
    QMatrix C = coxeter_matrix(E6());
    EXPECT_EQ(C, reflection_matrix(E6(), Parity::odd) * reflection_matrix(E6(), Parity::even));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> U(-6, 6);
    for (int i = 0; i < 20; ++i) {
        IVec x(7);
        for (auto& e : x) e = U(rng);
        QVec cx = C * to_q(x);
        EXPECT_EQ(cx, to_q(coxeter_dim(E6(), Parity::odd, coxeter_dim(E6(), Parity::even, x))));
    }
}

TEST(Coxeter, FixesDelta)
{
    EXPECT_EQ(coxeter_matrix(E6()) * kDelta, kDelta);
    for (Parity p : {Parity::even, Parity::odd}) EXPECT_EQ(reflection_matrix(E6(), p) * kDelta, kDelta);
}

TEST(Coxeter, PrintedTableAgreesAtFirstPower)
{
    EXPECT_EQ(coxeter_matrix(E6()), coxeter_table_e6(1).transpose());
}

TEST(Coxeter, PowersDriftAlongDeltaFromThePrintedTable)
{
    QMatrix C = coxeter_matrix(E6());
    QMatrix P = QMatrix::identity(7);
    QMatrix drift = outer(kDelta, to_q(defect_e6()));
    for (int k = 0; k <= 24; ++k) {
        EXPECT_EQ(P, coxeter_power_matrix_e6(k)) << "k = " << k;
        EXPECT_EQ(P - coxeter_table_e6(k).transpose(), Rational(k - 1, 6) * drift) << "k = " << k;
        P = P * C;
    }
}

TEST(Coxeter, PrintedTableIsPeriodic)
{
    for (int k = 0; k < 18; ++k) EXPECT_EQ(coxeter_table_e6(k), coxeter_table_e6(k + 6));
    EXPECT_THROW(coxeter_table_e6(-1), std::invalid_argument);
}

TEST(Coxeter, DefectVanishesOnlyOnTheDeltaLine)
{
    QVec defect = to_q(defect_e6());
    Rational s = 0;
    for (int i = 0; i < 7; ++i) s += defect[i] * kDelta[i];
    EXPECT_EQ(s, 0);
}

TEST(CoxeterChar, ReflectsDimensionAndCharacterAtOppositeParities)
{
    DimCharPair p{IVec{0, 1, 0, 1, 0, 1, 1}, to_q({1, 2, 1, 2, 1, 2, 5})};
    DimCharPair q = coxeter_char(E6(), Parity::odd, p);
    EXPECT_EQ(q.d, (IVec{1, 1, 1, 1, 1, 1, 2}));
    // even vertices in the support: -2 + 1 + 5
    EXPECT_EQ(q.f, to_q({1, 4, 1, 4, 1, 4, 5}));

    DimCharPair r{IVec{0, 1, 0, 1, 0, 1, 1}, to_q({1, 3, 1, 3, 1, 3, 4})};
    DimCharPair s = coxeter_char(E6(), Parity::even, r);
    EXPECT_EQ(s.d, (IVec{0, 0, 0, 0, 0, 0, 1}));
    // odd vertices in the support: g0 only; f(g0) -> -4 + 3 + 3 + 3
    EXPECT_EQ(s.f, to_q({1, 3, 1, 3, 1, 3, 5}));
}

TEST(CoxeterChar, DomainViolationNamesTheVertex)
{
    DimCharPair p{IVec{0, 1, 0, 1, 0, 1, 1}, to_q({1, 0, 1, 3, 1, 3, 4})};
    try {
        coxeter_char(E6(), Parity::even, p);
        FAIL() << "expected a domain error";
    } catch (const FunctorDomainError& e) {
        EXPECT_EQ(e.vertex(), 1);
        EXPECT_EQ(e.token(), Parity::even);
        EXPECT_EQ(e.value(), 0);
    }
    EXPECT_THROW(coxeter_char(E6(), Parity::even, {IVec{0, -1, 0, 0, 0, 0, 0}, kDelta}), std::invalid_argument);
}

TEST(CoxeterChar, UntouchedVerticesKeepTheirValues)
{
    // d supported on branch 1 and the root; f arbitrary elsewhere
    DimCharPair p{IVec{1, 1, 0, 0, 0, 0, 1}, to_q({2, 5, 7, 11, 13, 17, 6})};
    DimCharPair q = coxeter_char(E6(), Parity::odd, p);
    for (int g : {2, 3, 4, 5}) EXPECT_EQ(q.f[g], p.f[g]);
    for (int g : {2, 4}) EXPECT_EQ(q.d[g], p.d[g]);
}

TEST(CoxeterCharProperty, StepsAreInvolutive)
{
    std::mt19937_64 rng(17);
    auto roots = positive_real_roots(E6(), 8);
    int checked = 0;
    for (const IVec& d : roots) {
        SpectralInstance inst = random_instance({2, 2, 2}, rng);
        QVec f = char_from_chi(E6(), inst);
        for (Parity p : {Parity::even, Parity::odd}) {
            DimCharPair a{d, f};
            DimCharPair b;
            try {
                b = coxeter_char(E6(), p, a);
            } catch (const std::domain_error&) {
                continue;
            }
            DimCharPair c = coxeter_char(E6(), p, b);
            EXPECT_EQ(c, a);
            ++checked;
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(CoxeterWord, Alternating)
{
    auto w = CoxeterWord::alternating(Parity::odd, 5);
    ASSERT_EQ(w.size(), 5u);
    EXPECT_TRUE(w.alternates());
    EXPECT_EQ(w.tokens.front(), Parity::odd);
    EXPECT_EQ(w.tokens.back(), Parity::odd);
    CoxeterWord v{{Parity::odd, Parity::odd}};
    EXPECT_FALSE(v.alternates());
}

// ------------------------------------------------------------------ transfer

TEST(Transfer, SymmetricInstanceHasCharacterDelta)
{
    SpectralInstance inst{{to_q({2, 1}), to_q({2, 1}), to_q({2, 1})}, 3};
    EXPECT_EQ(char_from_chi(E6(), inst), kDelta);
    EXPECT_EQ(inst.chi(), to_q({1, 2, 1, 2, 1, 2, 3}));
}

TEST(Transfer, E6CharacterShape)
{
    // inner vertex alpha_1, outer vertex alpha_1 - alpha_2
    SpectralInstance inst{{to_q({7, 3}), to_q({5, 2}), to_q({9, 4})}, 11};
    EXPECT_EQ(char_from_chi(E6(), inst), to_q({4, 7, 3, 5, 5, 9, 11}));
}

TEST(Transfer, DeltaHasGeneralizedDimensionOnes)
{
    GeneralizedDimension n = n_from_dim(E6(), IVec{1, 2, 1, 2, 1, 2, 3});
    EXPECT_EQ(n, delta_dimension_e6());
    EXPECT_EQ(n.flat(), (IVec{1, 1, 1, 1, 1, 1, 3}));
}

TEST(Transfer, MatricesAreUnimodular)
{
    QMatrix Mf = char_matrix(E6()), Md = dim_matrix(E6());
    EXPECT_TRUE(is_unimodular(Mf));
    EXPECT_TRUE(is_unimodular(Md));
    EXPECT_TRUE(is_integer_matrix(inverse(Mf)));
    EXPECT_TRUE(is_integer_matrix(inverse(Md)));
}

TEST(Transfer, MatricesAgreeWithTheMaps)
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        SpectralInstance inst = random_instance({2, 2, 2}, rng);
        EXPECT_EQ(char_matrix(E6()) * inst.chi(), char_from_chi(E6(), inst));
    }
    IVec d{1, 3, 2, 4, 1, 2, 5};
    EXPECT_EQ(dim_matrix(E6()) * to_q(d), to_q(n_from_dim(E6(), d).flat()));
}

TEST(TransferProperty, RoundTripsOnRandomStars)
{
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> nb(1, 5), len(1, 5), cnt(0, 4);
    for (int i = 0; i < 300; ++i) {
        std::vector<int> m(nb(rng));
        for (auto& x : m) x = len(rng);
        StarGraph G(m);
        SpectralInstance inst = random_instance(m, rng);
        EXPECT_EQ(chi_from_char(G, char_from_chi(G, inst)), inst);

        GeneralizedDimension n;
        n.n0 = cnt(rng);
        for (int mb : m) {
            IVec b(mb);
            for (auto& x : b) x = cnt(rng);
            n.n.push_back(b);
        }
        IVec d = dim_from_n(G, n);
        EXPECT_EQ(n_from_dim(G, d), n);
        EXPECT_EQ(dim_matrix(G) * to_q(d), to_q(n.flat()));
        EXPECT_EQ(char_matrix(G) * inst.chi(), char_from_chi(G, inst));
        // the pairing of d with f is the trace defect
        EXPECT_EQ(parity_pairing(G, d, char_from_chi(G, inst)), trace_defect(inst, n));
    }
}

TEST(TransferProperty, GeneralMatricesAreUnimodular)
{
    for (auto m : std::vector<std::vector<int>>{{1}, {3}, {1, 3, 3}, {1, 2, 5}, {4, 1, 2, 3}})
    {
        StarGraph G(m);
        EXPECT_TRUE(is_unimodular(char_matrix(G)));
        EXPECT_TRUE(is_unimodular(dim_matrix(G)));
    }
}

TEST(Transfer, Rejections)
{
    EXPECT_THROW(char_from_chi(E6(), SpectralInstance{{to_q({1, 2}), to_q({2, 1}), to_q({2, 1})}, 3}), std::invalid_argument);
    EXPECT_THROW(char_from_chi(E6(), SpectralInstance{{to_q({2, 1}), to_q({2, 0}), to_q({2, 1})}, 3}), std::invalid_argument);
    EXPECT_THROW(char_from_chi(E6(), SpectralInstance{{to_q({2, 1}), to_q({2, 1})}, 3}), std::invalid_argument);
    // f(outer) larger than f(inner) means alpha_2 < 0
    EXPECT_THROW(chi_from_char(E6(), to_q({3, 2, 1, 2, 1, 2, 3})), std::invalid_argument);
    EXPECT_THROW(n_from_dim(E6(), IVec{2, 1, 1, 2, 1, 2, 3}), std::invalid_argument);
    EXPECT_FALSE(nondegenerate_dim(E6(), IVec{1, 2, 1, 2, 1, 3, 3}));
    EXPECT_TRUE(nondegenerate_dim(E6(), IVec{1, 2, 1, 2, 1, 2, 3}));
}

TEST(Transfer, TraceDefectOfSymmetricInstance)
{
    SpectralInstance inst{{to_q({2, 1}), to_q({2, 1}), to_q({2, 1})}, 3};
    EXPECT_EQ(trace_defect(inst, delta_dimension_e6()), 0);
    EXPECT_EQ(hyperplane(E6()).evaluate(inst), 0);
    EXPECT_TRUE(on_hyperplane(E6(), inst));
}
