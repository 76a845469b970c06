#include <gtest/gtest.h>

#include <random>

#include "cyclodense/exponents.hpp"

using namespace cyclodense;

namespace {

CoeffSeq random_seq(std::mt19937_64& rng, std::size_t max_order, int bound) {
    std::uniform_int_distribution<std::size_t> len(0, max_order);
    std::uniform_int_distribution<int> val(-bound, bound);
    std::vector<BigInt> v(len(rng));
    for (auto& x : v)
        x = val(rng);
    return CoeffSeq(std::move(v));
}

} // namespace

TEST(SolveExponents, Examples) {
    for (long long n1 : {-5, 0, 1, 7})
        EXPECT_EQ(solve_exponents(CoeffSeq{n1}), ExponentVec{-n1});
    EXPECT_EQ(solve_exponents(CoeffSeq{0, 1}), (ExponentVec{0, -1}));
    EXPECT_EQ(solve_exponents(CoeffSeq{2, 1}), (ExponentVec{-2, 2}));
    EXPECT_EQ(solve_exponents(CoeffSeq{0, 0, 0, 0}), (ExponentVec{0, 0, 0, 0}));
    EXPECT_EQ(solve_exponents(CoeffSeq{}), ExponentVec{});
    // (1 - x)^{-2} (1 - x^2)^2 expands to 1 + 2x + x^2 mod x^3.
    EXPECT_EQ(exponent_product(ExponentVec{-2, 2}), TruncSeries::from_coeffs({1, 2, 1}));
}

TEST(SolveExponents, RoundtripRandom) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 1000; ++t) {
        CoeffSeq seq = random_seq(rng, 6, 9);
        EXPECT_EQ(exponent_product(solve_exponents(seq)), ts_from_seq(seq, seq.order()));
    }
}

TEST(SolveExponents, PerturbationChangesDegreeExactlyI) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
        CoeffSeq seq = random_seq(rng, 6, 9);
        const auto k = solve_exponents(seq);
        const auto base = exponent_product(k);
        for (std::size_t i = 1; i <= k.order(); ++i) {
            for (int delta : {-1, 1}) {
                ExponentVec moved = k;
                moved.values[i - 1] += delta;
                const auto p = exponent_product(moved);
                std::size_t first = 0;
                while (first <= p.order() && p[first] == base[first])
                    ++first;
                EXPECT_EQ(first, i);
            }
        }
    }
}

TEST(SolveExponents, LargeValuesStayExact) {
    CoeffSeq seq{9, 9, 9, 9, 9, 9, 9, 9, 9, 9, 9, 9};
    auto k = solve_exponents(seq);
    EXPECT_EQ(exponent_product(k), ts_from_seq(seq, seq.order()));
}

TEST(SupportProfile, Examples) {
    auto p = support_profile(ExponentVec{0, -1});
    EXPECT_EQ(p.support, (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(p.modulus, 2);
    EXPECT_EQ(p.density, BigRational(1, 2));

    auto empty = support_profile(ExponentVec{});
    EXPECT_TRUE(empty.support.empty());
    EXPECT_EQ(empty.modulus, 1);
    EXPECT_EQ(empty.density, BigRational(1));

    auto both = support_profile(ExponentVec{-2, 2});
    EXPECT_EQ(both.support, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(both.modulus, 2);

    EXPECT_EQ(support_profile(solve_exponents(CoeffSeq{0, 0, 1})).modulus, 3);
    EXPECT_EQ(support_profile(ExponentVec{0, 0, 1, 5, 0, 1}).modulus, 12);
}
