#include "nrdiv/qpoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nrdiv;

namespace {

const FractionalLattice kCAx4(4, {1, 3, 1, 2});
const FractionalLattice kCD3(3, {1, 2, 2, 0});
const FractionalLattice kCD2(2, {1, 1, 0, 1});
const FractionalLattice kZ4(1, {0, 0, 0, 0});

QuasiPolynomial poly(std::initializer_list<Exponent> es) {
    QuasiPolynomial f;
    for (auto &e : es)
        f.add(e, make_rational(1));
    return f;
}

QuasiPolynomial cax4_example() {
    return poly({{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 18, 0}, {0, 0, 6, 6}, {0, 0, 0, 15}});
}

} // namespace

TEST(QPoly, MonomialWeightExamples) {
    EXPECT_EQ(monomial_weight(WeightVector({1, 3, 1, 2}, kCAx4), {2, 0, 0, 0}), make_rational(1, 2));
    EXPECT_EQ(monomial_weight(WeightVector({2, 4, 1, 3}, kCD3), {0, 0, 6, 0}), make_rational(2));
    EXPECT_EQ(monomial_weight(WeightVector({1, 1, 1, 1}, kZ4), {0, 0, 0, 0}), make_rational(0));
}

TEST(QPoly, SeriesWeightExamples) {
    EXPECT_EQ(series_weight(WeightVector({9, 11, 1, 2}, kCAx4), cax4_example()), make_rational(9, 2));
    auto cd2 = poly({{0, 0, 0, 2}, {0, 2, 1, 0}, {0, 0, 12, 0}, {6, 0, 6, 0}, {18, 0, 0, 0}});
    EXPECT_EQ(series_weight(WeightVector({1, 9, 2, 9}, kCD2), cd2), make_rational(9));
    auto u2 = poly({{0, 0, 0, 2}});
    EXPECT_EQ(series_weight(WeightVector({3, 5, 7, 11}, kCAx4), u2), make_rational(11, 2));
    EXPECT_THROW(series_weight(WeightVector({1, 1, 1, 1}, kZ4), QuasiPolynomial{}), std::invalid_argument);
}

TEST(QPoly, SemiInvariantCharacterExamples) {
    CyclicAction cax4{4, {1, 3, 1, 2}};
    EXPECT_EQ(semi_invariant_character(cax4_example(), cax4), 2);
    CyclicAction cd3{3, {1, 2, 2, 0}};
    auto fermat = poly({{0, 0, 0, 2}, {3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 6, 0}});
    EXPECT_EQ(semi_invariant_character(fermat, cd3), 0);
    auto mixed = poly({{0, 0, 1, 0}, {0, 0, 0, 1}});
    EXPECT_FALSE(semi_invariant_character(mixed, cax4).has_value());
}

TEST(QPoly, RestrictToSupportExamples) {
    auto f = poly({{2, 0, 0, 0}, {0, 0, 0, 3}});
    auto g = restrict_to_support(f, [](const Exponent &e) { return e[3] > 0; });
    EXPECT_EQ(g.support(), (std::vector<Exponent>{{0, 0, 0, 3}}));

    WeightVector w({9, 11, 1, 2}, kCAx4);
    auto phi = cax4_example();
    Rational lvl = series_weight(w, phi);
    auto face = restrict_to_support(phi, [&](const Exponent &e) { return monomial_weight(w, e) == lvl; });
    EXPECT_EQ(face, poly({{2, 0, 0, 0}, {0, 0, 18, 0}, {0, 0, 6, 6}}));

    EXPECT_TRUE(restrict_to_support(f, [](const Exponent &) { return false; }).is_zero());
}

TEST(QPoly, ZeroCoefficientsAreNotStored) {
    QuasiPolynomial f;
    f.add({1, 0, 0, 0}, make_rational(2));
    f.add({1, 0, 0, 0}, make_rational(-2));
    EXPECT_TRUE(f.is_zero());
    f.add({0, 1, 0, 0}, make_rational(0));
    EXPECT_TRUE(f.is_zero());
}

TEST(QPoly, PrintsReadably) {
    QuasiPolynomial f;
    f.add({0, 0, 0, 2}, make_rational(1));
    f.add({3, 0, 0, 0}, make_rational(-1, 2));
    f.add({1, 0, 4, 0}, Coefficient::generic("beta0"));
    EXPECT_EQ(to_string(f), "u^2 - 1/2*x^3 + @beta0*xz^4");
}

TEST(QPoly, GenericInstantiationIsDeterministic) {
    QuasiPolynomial f;
    f.add({0, 0, 0, 2}, make_rational(1));
    f.add({1, 0, 4, 0}, Coefficient::generic("beta0"));
    f.add({0, 0, 6, 0}, Coefficient::generic("delta0"));
    auto g = f, h = f;
    auto va = instantiate_generic(g, 7);
    auto vb = instantiate_generic(h, 7);
    EXPECT_EQ(g, h);
    EXPECT_EQ(va, vb);
    EXPECT_FALSE(g.has_generic());
    for (auto &[k, v] : va)
        EXPECT_NE(v, 0);
}

TEST(QPolyProperties, WeightIsAdditiveAndCharacterStable) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> ex(0, 6), wn(1, 12), n(1, 4);
    CyclicAction act{4, {1, 3, 1, 2}};
    for (int trial = 0; trial < 200; ++trial) {
        WeightVector w({wn(rng), wn(rng), wn(rng), wn(rng)}, kCAx4);
        QuasiPolynomial f, g;
        for (int k = n(rng); k > 0; --k)
            f.add({ex(rng), ex(rng), ex(rng), ex(rng)}, make_rational(1 + k));
        for (int k = n(rng); k > 0; --k)
            g.add({ex(rng), ex(rng), ex(rng), ex(rng)}, make_rational(k));
        if (f.is_zero() || g.is_zero())
            continue;
        EXPECT_EQ(series_weight(w, multiply(f, g)), series_weight(w, f) + series_weight(w, g));
        for (auto &e : f.support())
            EXPECT_LE(series_weight(w, f), monomial_weight(w, e));

        // multiplying a semi-invariant by an invariant monomial keeps its character
        QuasiPolynomial single;
        single.add({ex(rng), ex(rng), ex(rng), ex(rng)}, make_rational(1));
        QuasiPolynomial invariant;
        invariant.add({4, 0, 0, 0}, make_rational(1)); // x^4 is invariant
        EXPECT_EQ(semi_invariant_character(multiply(single, invariant), act), semi_invariant_character(single, act));
    }
}

TEST(QPolyProperties, MonomialWeightIsBilinear) {
    WeightVector a({1, 3, 1, 2}, kCAx4), b({5, 3, 9, 2}, kCAx4);
    WeightVector s({6, 6, 10, 4}, kCAx4);
    Exponent v{1, 2, 3, 4}, u{4, 0, 1, 2}, vu{5, 2, 4, 6};
    EXPECT_EQ(monomial_weight(s, v), monomial_weight(a, v) + monomial_weight(b, v));
    EXPECT_EQ(monomial_weight(a, vu), monomial_weight(a, v) + monomial_weight(a, u));
}
