#pragma once

// Explicit members of S(seq): n = l * q_1 ... q_k together with the
// cyclotomic factors of x^n - 1 that realize the prescribed coefficients.
//
// For each i in the support with k_i < 0, every fresh prime p > r gives
// prod_{d|i} phi_{dp} = (x^{ip} - 1)/(x^i - 1) = (1 - x^i)^{-1} mod x^{r+1}.
// For k_i > 0, every product pq of two fresh primes > r gives
// prod_{d|i} phi_{dpq} = prod_{d|i} delta(d) phi_d = 1 - x^i mod x^{r+1}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "limits.hpp"
#include "membership.hpp"
#include "sequence.hpp"
#include "series.hpp"

namespace cyclodense {

struct WitnessGroup {
    std::uint64_t index = 1;            // i in the support
    BigInt exponent;                    // k_i
    std::vector<std::uint64_t> labels;  // |k_i| primes (k_i < 0) or prime pairs (k_i > 0)

    friend bool operator==(const WitnessGroup&, const WitnessGroup&) = default;
};

struct WitnessCertificate {
    BigInt n = 1;
    Factorization n_factors;
    BigInt modulus = 1;
    std::vector<WitnessGroup> groups;
    std::vector<std::uint64_t> cyclotomic_indices;  // increasing

    friend bool operator==(const WitnessCertificate&, const WitnessCertificate&) = default;
};

inline WitnessCertificate find_witness(const CoeffSeq& seq) {
    const std::size_t r = seq.order();
    const ExponentVec k = solve_exponents(seq);
    const SupportProfile profile = support_profile(k);

    BigInt needed = 0;
    for (std::uint64_t i : profile.support)
        needed += k.at(i) > 0 ? BigInt(2 * k.at(i)) : BigInt(-k.at(i));
    if (needed > 10'000'000)
        throw ResourceError("witness needs " + needed.str() + " primes");
    const PrimeList primes = next_primes(r, static_cast<std::size_t>(needed));

    WitnessCertificate cert;
    cert.modulus = profile.modulus;
    std::size_t next = 0;
    std::map<std::uint64_t, unsigned> max_exp;
    for (std::uint64_t i : profile.support) {
        WitnessGroup g{i, k.at(i), {}};
        const bool pairs = g.exponent > 0;
        const auto count = static_cast<std::size_t>(boost::multiprecision::abs(g.exponent));
        for (std::size_t m = 0; m < count; ++m) {
            std::uint64_t label = primes[next++];
            if (pairs) {
                std::uint64_t q = primes[next++];
                if (label > std::numeric_limits<std::uint64_t>::max() / q)
                    throw ResourceError("witness label overflows 64 bits");
                label *= q;
            }
            g.labels.push_back(label);
            for (std::uint64_t d : divisors(i)) {
                if (label > std::numeric_limits<std::uint64_t>::max() / d)
                    throw ResourceError("cyclotomic index overflows 64 bits");
                cert.cyclotomic_indices.push_back(d * label);
            }
        }
        cert.groups.push_back(std::move(g));
    }
    std::sort(cert.cyclotomic_indices.begin(), cert.cyclotomic_indices.end());

    for (std::uint64_t idx : cert.cyclotomic_indices) {
        const auto f = factorize(idx);
        for (const auto& pp : f.parts())
            max_exp[pp.prime] = std::max(max_exp[pp.prime], pp.exponent);
    }
    std::vector<PrimePower> parts;
    for (auto [p, e] : max_exp)
        parts.push_back({p, e});
    cert.n_factors = Factorization(std::move(parts));
    cert.n = cert.n_factors.value();
    return cert;
}

enum class WitnessCheck {
    ok,
    index_not_dividing_n,
    duplicate_index,
    index_mismatch,
    bad_label,
    duplicate_label,
    series_mismatch,
    exact_division_failed,
};

inline std::string_view check_name(WitnessCheck c) {
    switch (c) {
    case WitnessCheck::ok: return "ok";
    case WitnessCheck::index_not_dividing_n: return "index_not_dividing_n";
    case WitnessCheck::duplicate_index: return "duplicate_index";
    case WitnessCheck::index_mismatch: return "index_mismatch";
    case WitnessCheck::bad_label: return "bad_label";
    case WitnessCheck::duplicate_label: return "duplicate_label";
    case WitnessCheck::series_mismatch: return "series_mismatch";
    case WitnessCheck::exact_division_failed: return "exact_division_failed";
    }
    return "unknown";
}

enum class ExactCheck { not_requested, skipped, passed, failed };

inline std::string_view exact_check_name(ExactCheck c) {
    switch (c) {
    case ExactCheck::not_requested: return "not_requested";
    case ExactCheck::skipped: return "skipped";
    case ExactCheck::passed: return "passed";
    case ExactCheck::failed: return "failed";
    }
    return "unknown";
}

struct WitnessVerdict {
    bool ok = false;
    WitnessCheck reason = WitnessCheck::ok;
    ExactCheck exact = ExactCheck::not_requested;
    std::uint64_t degree = 0;  // summed totients of the indices
};

namespace detail {

inline bool is_label_shape(std::uint64_t label, bool pair, std::size_t r) {
    const auto f = factorize(label);
    const auto parts = f.parts();
    const std::size_t want = pair ? 2 : 1;
    if (parts.size() != want)
        return false;
    return std::all_of(parts.begin(), parts.end(), [&](auto& pp) { return pp.exponent == 1 && pp.prime > r; });
}

// prod phi_idx divides x^n - 1. When n is small the division is done in one
// piece; otherwise each phi_idx is divided out of x^idx - 1, which divides
// x^n - 1 because idx | n. Distinct indices give coprime factors.
inline bool exact_divides(const WitnessCertificate& cert, const Limits& limits) {
    if (cert.n <= limits.exact_direct_max_n) {
        IntPoly product{1};
        for (std::uint64_t idx : cert.cyclotomic_indices)
            product = poly_mul(product, cyclotomic_exact(idx));
        const auto n = static_cast<std::size_t>(cert.n);
        return try_exact_div(IntPoly::x_pow_minus_one(n), product).has_value();
    }
    for (std::uint64_t idx : cert.cyclotomic_indices) {
        if (!try_exact_div(IntPoly::x_pow_minus_one(idx), cyclotomic_exact(idx)))
            return false;
        if (cert.n % idx != 0)
            return false;
    }
    return true;
}

} // namespace detail

inline WitnessVerdict verify_witness(const WitnessCertificate& cert, const CoeffSeq& seq, bool exact = false,
                                     const Limits& limits = {}) {
    const std::size_t r = seq.order();
    WitnessVerdict v;
    auto fail = [&](WitnessCheck c) {
        v.ok = false;
        v.reason = c;
        return v;
    };

    const auto& idx = cert.cyclotomic_indices;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] == 0 || cert.n % idx[i] != 0)
            return fail(WitnessCheck::index_not_dividing_n);
        for (std::size_t j = 0; j < i; ++j)
            if (idx[j] == idx[i])
                return fail(WitnessCheck::duplicate_index);
    }

    std::vector<std::uint64_t> seen_labels, expected;
    for (const auto& g : cert.groups) {
        if (g.exponent == 0 || g.index == 0 || g.index > r || boost::multiprecision::abs(g.exponent) != g.labels.size())
            return fail(WitnessCheck::bad_label);
        for (std::uint64_t label : g.labels) {
            if (!detail::is_label_shape(label, g.exponent > 0, r))
                return fail(WitnessCheck::bad_label);
            seen_labels.push_back(label);
            for (std::uint64_t d : divisors(g.index))
                expected.push_back(d * label);
        }
    }
    std::sort(seen_labels.begin(), seen_labels.end());
    if (std::adjacent_find(seen_labels.begin(), seen_labels.end()) != seen_labels.end())
        return fail(WitnessCheck::duplicate_label);
    std::vector<std::uint64_t> sorted_idx = idx;
    std::sort(expected.begin(), expected.end());
    std::sort(sorted_idx.begin(), sorted_idx.end());
    if (expected != sorted_idx)
        return fail(WitnessCheck::index_mismatch);

    std::vector<BigInt> as_big(idx.begin(), idx.end());
    if (certificate_product(as_big, r) != ts_from_seq(seq, r))
        return fail(WitnessCheck::series_mismatch);

    for (std::uint64_t i : idx)
        v.degree += totient(i);
    if (exact) {
        if (v.degree > limits.exact_degree_bound) {
            v.exact = ExactCheck::skipped;
        } else if (detail::exact_divides(cert, limits)) {
            v.exact = ExactCheck::passed;
        } else {
            v.exact = ExactCheck::failed;
            return fail(WitnessCheck::exact_division_failed);
        }
    }
    v.ok = true;
    v.reason = WitnessCheck::ok;
    return v;
}

} // namespace cyclodense
