#pragma once

#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "sequence.hpp"
#include "series.hpp"

namespace cyclodense {

/// Support A = {i : k_i != 0}, modulus l = lcm(A) (1 when empty), density 1/l.
struct SupportProfile {
    std::vector<std::uint64_t> support;
    BigInt modulus = 1;
    BigRational density = 1;

    friend bool operator==(const SupportProfile&, const SupportProfile&) = default;
};

/// The unique exponents k with prod_i (1 - x^i)^{k_i} = 1 + sum n_i x^i mod x^{r+1}.
///
/// Works degree by degree: once factors 1..i-1 are fixed, the running product
/// P has some coefficient c at x^i, and multiplying by (1 - x^i)^{c - n_i}
/// corrects that coefficient without touching lower ones.
inline ExponentVec solve_exponents(const CoeffSeq& seq) {
    const std::size_t r = seq.order();
    TruncSeries running(r);
    std::vector<BigInt> k(r);
    for (std::size_t i = 1; i <= r; ++i) {
        k[i - 1] = running[i] - seq.at(i);
        if (k[i - 1] != 0)
            running = ts_mul(running, one_minus_pow(i, k[i - 1], r));
    }
    return ExponentVec(std::move(k));
}

/// prod_i (1 - x^i)^{k_i} mod x^{r+1}, r = k.order().
inline TruncSeries exponent_product(const ExponentVec& k) {
    const std::size_t r = k.order();
    TruncSeries acc(r);
    for (std::size_t i = 1; i <= r; ++i)
        if (k.at(i) != 0)
            acc = ts_mul(acc, one_minus_pow(i, k.at(i), r));
    return acc;
}

inline SupportProfile support_profile(const ExponentVec& k) {
    SupportProfile p;
    for (std::size_t i = 1; i <= k.order(); ++i)
        if (k.at(i) != 0)
            p.support.push_back(i);
    p.modulus = lcm_all(p.support);
    p.density = BigRational(BigInt(1), p.modulus);
    return p;
}

} // namespace cyclodense
