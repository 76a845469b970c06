#pragma once

// Built-in invariant battery behind `cyclodense selftest`. Sizes are kept
// small so the command finishes in a few seconds.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "engine.hpp"

namespace cyclodense {

struct SelfCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline CoeffSeq random_seq(std::mt19937_64& rng, std::size_t max_order, int bound) {
    std::uniform_int_distribution<std::size_t> len(0, max_order);
    std::uniform_int_distribution<int> val(-bound, bound);
    std::vector<BigInt> v(len(rng));
    for (auto& x : v)
        x = val(rng);
    return CoeffSeq(std::move(v));
}

} // namespace detail

inline std::vector<SelfCheck> run_selftest(const Limits& limits = {}) {
    std::vector<SelfCheck> out;
    std::mt19937_64 rng(20151109);

    {
        SelfCheck c{"mobius_sum", true, ""};
        for (std::uint64_t n = 1; n <= 1000 && c.passed; ++n) {
            int s = 0;
            for (std::uint64_t d : divisors(n))
                s += mobius(d);
            if (s != (n == 1 ? 1 : 0)) {
                c.passed = false;
                c.detail = "n=" + std::to_string(n);
            }
        }
        out.push_back(c);
    }
    {
        SelfCheck c{"cyclotomic_product_identity", true, ""};
        for (std::uint64_t n = 1; n <= 60 && c.passed; ++n) {
            IntPoly acc{1};
            for (std::uint64_t d : divisors(n))
                acc = poly_mul(acc, cyclotomic_exact(d));
            if (acc != IntPoly::x_pow_minus_one(n)) {
                c.passed = false;
                c.detail = "n=" + std::to_string(n);
            }
        }
        out.push_back(c);
    }
    {
        SelfCheck c{"exponent_roundtrip", true, ""};
        for (int t = 0; t < 200 && c.passed; ++t) {
            CoeffSeq seq = detail::random_seq(rng, 6, 9);
            if (exponent_product(solve_exponents(seq)) != ts_from_seq(seq, seq.order())) {
                c.passed = false;
                c.detail = "trial " + std::to_string(t);
            }
        }
        out.push_back(c);
    }
    {
        SelfCheck c{"oracle_equivalence", true, ""};
        for (std::uint64_t n = 1; n <= 30 && c.passed; ++n) {
            for (int a = -2; a <= 2 && c.passed; ++a) {
                for (int b = -2; b <= 2 && c.passed; ++b) {
                    CoeffSeq seq{a, b};
                    if (is_member(n, seq, limits).member != brute_member(n, seq, limits).member) {
                        c.passed = false;
                        c.detail = "n=" + std::to_string(n) + " seq=" + std::to_string(a) + "," + std::to_string(b);
                    }
                }
            }
        }
        out.push_back(c);
    }
    {
        SelfCheck c{"witness_validity", true, ""};
        for (int t = 0; t < 30 && c.passed; ++t) {
            CoeffSeq seq = detail::random_seq(rng, 3, 2);
            auto cert = find_witness(seq);
            if (!verify_witness(cert, seq, false, limits).ok || !is_member(cert.n_factors, seq, limits).member) {
                c.passed = false;
                c.detail = "trial " + std::to_string(t);
            }
        }
        out.push_back(c);
    }
    {
        SelfCheck c{"truncation_collapse", true, ""};
        for (std::size_t r = 1; r <= 4 && c.passed; ++r)
            for (std::uint64_t d = 1; d <= r && c.passed; ++d)
                if (cyclotomic_trunc(d * 11 * 13, r) != cyclotomic_trunc(d, r)) {
                    c.passed = false;
                    c.detail = "d=" + std::to_string(d) + " r=" + std::to_string(r);
                }
        out.push_back(c);
    }
    {
        SelfCheck c{"count_upper_bound", true, ""};
        const std::uint64_t cps[] = {100, 1000};
        auto table = count_members(CoeffSeq{0, 1}, 1000, cps, limits);
        for (const auto& row : table.rows)
            if (BigInt(row.count) > row.floor_x_over_l)
                c.passed = false;
        if (table.rows.back().count != 499) {
            c.passed = false;
            c.detail = "N(1000)=" + std::to_string(table.rows.back().count);
        }
        out.push_back(c);
    }
    return out;
}

} // namespace cyclodense
