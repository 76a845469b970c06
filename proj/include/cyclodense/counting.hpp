#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "limits.hpp"
#include "membership.hpp"
#include "sequence.hpp"

namespace cyclodense {

struct CountRow {
    std::uint64_t x = 0;
    std::uint64_t count = 0;   // N(x)
    BigInt floor_x_over_l;
    BigRational ratio;         // N(x) * l / x

    friend bool operator==(const CountRow&, const CountRow&) = default;
};

struct CountTable {
    BigInt modulus = 1;
    std::uint64_t limit = 0;
    std::vector<CountRow> rows;

    friend bool operator==(const CountTable&, const CountTable&) = default;
};

namespace detail {

// Membership of l, 2l, ..., in candidate order. Workers take candidates from
// a shared counter; the reported error is the one for the smallest n.
inline std::vector<char> sweep_multiples(const CoeffSeq& seq, std::uint64_t step, std::uint64_t limit,
                                         const Limits& limits, unsigned threads) {
    const std::uint64_t total = limit / step;
    std::vector<char> member(total, 0);
    std::atomic<std::uint64_t> cursor{0};
    std::mutex err_mutex;
    std::optional<std::uint64_t> err_n;
    std::exception_ptr err;

    auto work = [&] {
        for (;;) {
            std::uint64_t i = cursor.fetch_add(1);
            if (i >= total)
                return;
            const std::uint64_t n = (i + 1) * step;
            try {
                member[i] = is_member(n, seq, limits).member ? 1 : 0;
            } catch (const Error& e) {
                std::lock_guard lock(err_mutex);
                if (!err_n || n < *err_n) {
                    err_n = n;
                    err = with_context(e, "at n=" + std::to_string(n) + ": ");
                }
            }
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work);
    }
    if (err)
        std::rethrow_exception(err);
    return member;
}

} // namespace detail

/// N(x) at each checkpoint, scanning only multiples of l.
inline CountTable count_members(const CoeffSeq& seq, std::uint64_t limit, std::span<const std::uint64_t> checkpoints,
                                const Limits& limits = {}, unsigned threads = 1) {
    if (limit < 1)
        throw DomainError("count limit must be >= 1");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > limit)
            throw DomainError("checkpoint " + std::to_string(checkpoints[i]) + " outside [1, limit]");
        if (i > 0 && checkpoints[i] < checkpoints[i - 1])
            throw DomainError("checkpoints must be sorted");
    }

    CountTable table;
    table.modulus = support_profile(solve_exponents(seq)).modulus;
    table.limit = limit;
    std::vector<char> member;
    std::uint64_t step = 0;
    if (table.modulus <= limit) {
        step = static_cast<std::uint64_t>(table.modulus);
        member = detail::sweep_multiples(seq, step, limit, limits, threads);
    }

    std::uint64_t n_count = 0;
    std::size_t scanned = 0;
    for (std::uint64_t x : checkpoints) {
        while (scanned < member.size() && (scanned + 1) * step <= x)
            n_count += member[scanned++];
        CountRow row;
        row.x = x;
        row.count = n_count;
        row.floor_x_over_l = BigInt(x) / table.modulus;
        row.ratio = BigRational(BigInt(n_count) * table.modulus, BigInt(x));
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline std::optional<std::uint64_t> smallest_member(const CoeffSeq& seq, std::uint64_t bound,
                                                    const Limits& limits = {}) {
    if (bound < 1)
        throw DomainError("bound must be >= 1");
    const BigInt l = support_profile(solve_exponents(seq)).modulus;
    if (l > bound)
        return std::nullopt;
    const auto step = static_cast<std::uint64_t>(l);
    for (std::uint64_t n = step; n <= bound; n += step) {
        if (is_member(n, seq, limits).member)
            return n;
        if (n > bound - step)
            break;
    }
    return std::nullopt;
}

} // namespace cyclodense
