#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "bigint.hpp"

namespace cyclodense {

/// Prescribed coefficients (n_1, ..., n_r) of x^1 .. x^r in a divisor of x^n - 1.
struct CoeffSeq {
    std::vector<BigInt> values;

    CoeffSeq() = default;
    explicit CoeffSeq(std::vector<BigInt> v) : values(std::move(v)) {}
    CoeffSeq(std::initializer_list<long long> v) {
        for (long long x : v)
            values.emplace_back(x);
    }

    std::size_t order() const { return values.size(); }
    // 1-based, matching the degree it prescribes.
    const BigInt& at(std::size_t i) const { return values.at(i - 1); }

    friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;
};

/// Exponents (k_1, ..., k_r) with prod (1 - x^i)^{k_i} = 1 + sum n_i x^i mod x^{r+1}.
struct ExponentVec {
    std::vector<BigInt> values;

    ExponentVec() = default;
    explicit ExponentVec(std::vector<BigInt> v) : values(std::move(v)) {}
    ExponentVec(std::initializer_list<long long> v) {
        for (long long x : v)
            values.emplace_back(x);
    }

    std::size_t order() const { return values.size(); }
    const BigInt& at(std::size_t i) const { return values.at(i - 1); }

    friend bool operator==(const ExponentVec&, const ExponentVec&) = default;
};

} // namespace cyclodense
