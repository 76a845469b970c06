#pragma once

#include <cstdint>

namespace cyclodense {

/// Resource caps. Exceeding any of them raises ResourceError.
struct Limits {
    // Divisor count accepted by the subset-enumeration oracle.
    std::uint64_t max_brute_divisors = 20;
    // Distinct (group, residual) states visited by the feasibility search.
    std::uint64_t max_states = 10'000'000;
    // Divisors of the small-prime part of n enumerated by the fast oracle.
    std::uint64_t max_small_divisors = std::uint64_t{1} << 16;
    // Witness exact check runs only when the summed cyclotomic degree is at most this.
    std::uint64_t exact_degree_bound = 5000;
    // Largest n for which x^n - 1 is divided by the whole witness product at once.
    std::uint64_t exact_direct_max_n = 20000;
};

} // namespace cyclodense
