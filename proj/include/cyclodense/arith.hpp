#pragma once

// Elementary number theory on machine integers: Möbius, divisors,
// totient, factorization and deterministic prime selection.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace cyclodense {

// Largest integer accepted by the trial-division factorizer.
inline constexpr std::uint64_t kFactorCap = (std::uint64_t{1} << 63) - 1;

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with primes in increasing order. The represented
/// value may exceed 64 bits (witness moduli are products of many primes).
class Factorization {
public:
    Factorization() = default;

    explicit Factorization(std::vector<PrimePower> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), [](auto& a, auto& b) { return a.prime < b.prime; });
        std::vector<PrimePower> merged;
        for (const auto& pp : parts_) {
            if (pp.exponent == 0)
                continue;
            if (pp.prime < 2)
                throw DomainError("factorization entry is not a prime: " + std::to_string(pp.prime));
            if (!merged.empty() && merged.back().prime == pp.prime)
                merged.back().exponent += pp.exponent;
            else
                merged.push_back(pp);
        }
        parts_ = std::move(merged);
    }

    std::span<const PrimePower> parts() const& { return parts_; }
    std::span<const PrimePower> parts() const&& = delete;
    bool empty() const { return parts_.empty(); }

    BigInt value() const {
        BigInt v = 1;
        for (const auto& pp : parts_)
            for (unsigned e = 0; e < pp.exponent; ++e)
                v *= pp.prime;
        return v;
    }

    /// Number of divisors, saturating at UINT64_MAX.
    std::uint64_t divisor_count() const {
        std::uint64_t c = 1;
        for (const auto& pp : parts_) {
            std::uint64_t f = pp.exponent + 1ULL;
            if (c > std::numeric_limits<std::uint64_t>::max() / f)
                return std::numeric_limits<std::uint64_t>::max();
            c *= f;
        }
        return c;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> parts_;
};

namespace detail {

// Primes below a bound, sieved on demand and grown by doubling. Results
// never depend on the current table size.
class PrimeTable {
public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    // Snapshot holding at least every prime <= limit.
    std::shared_ptr<const std::vector<std::uint64_t>> up_to(std::uint64_t limit) {
        std::lock_guard lock(mutex_);
        if (limit > bound_) {
            std::uint64_t next = std::max<std::uint64_t>(bound_ * 2, limit);
            primes_ = std::make_shared<const std::vector<std::uint64_t>>(sieve(next));
            bound_ = next;
        }
        return primes_;
    }

private:
    PrimeTable() : primes_(std::make_shared<const std::vector<std::uint64_t>>(sieve(1024))), bound_(1024) {}

    static std::vector<std::uint64_t> sieve(std::uint64_t limit) {
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint64_t> out;
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = i * i; j <= limit; j += i)
                composite[j] = true;
        }
        return out;
    }

    std::mutex mutex_;
    std::shared_ptr<const std::vector<std::uint64_t>> primes_;
    std::uint64_t bound_;
};

inline constexpr std::uint64_t kTableTrialLimit = std::uint64_t{1} << 20;

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline void require_positive(std::uint64_t n, const char* what) {
    if (n == 0)
        throw DomainError(std::string(what) + ": argument must be >= 1");
}

} // namespace detail

/// Deterministic primality by trial division.
inline bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    std::uint64_t root = detail::isqrt(n);
    auto table = detail::PrimeTable::instance().up_to(std::min(root, detail::kTableTrialLimit));
    for (std::uint64_t p : *table) {
        if (p > root)
            return true;
        if (n % p == 0)
            return n == p;
    }
    for (std::uint64_t d = table->back() + 2; d <= root; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

inline Factorization factorize(std::uint64_t n) {
    detail::require_positive(n, "factorize");
    if (n > kFactorCap)
        throw ResourceError("factorization cap exceeded: " + std::to_string(n));
    std::vector<PrimePower> parts;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            parts.push_back({p, e});
    };
    auto table = detail::PrimeTable::instance().up_to(std::min(detail::isqrt(n), detail::kTableTrialLimit));
    for (std::uint64_t p : *table) {
        if (p * p > n)
            break;
        take(p);
    }
    for (std::uint64_t d = table->back() + 2; d * d <= n; d += 2)
        take(d);
    if (n > 1)
        parts.push_back({n, 1});
    return Factorization(std::move(parts));
}

inline int mobius(std::uint64_t n) {
    detail::require_positive(n, "mobius");
    int sign = 1;
    const auto f = factorize(n);
    for (const auto& pp : f.parts()) {
        if (pp.exponent > 1)
            return 0;
        sign = -sign;
    }
    return sign;
}

inline unsigned omega(std::uint64_t n) {
    detail::require_positive(n, "omega");
    const auto f = factorize(n);
    return static_cast<unsigned>(f.parts().size());
}

inline std::uint64_t totient(std::uint64_t n) {
    detail::require_positive(n, "totient");
    std::uint64_t t = n;
    const auto f = factorize(n);
    for (const auto& pp : f.parts())
        t = t / pp.prime * (pp.prime - 1);
    return t;
}

/// Sign normalizer: -1 for d = 1, +1 otherwise.
inline int delta(std::uint64_t d) {
    detail::require_positive(d, "delta");
    return d == 1 ? -1 : 1;
}

/// All divisors of the factored value, increasing. `cap` bounds the count.
inline std::vector<std::uint64_t> divisors(const Factorization& f,
                                           std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
    if (f.divisor_count() > cap)
        throw ResourceError("divisor count " + std::to_string(f.divisor_count()) + " exceeds cap " +
                            std::to_string(cap));
    if (f.value() > std::numeric_limits<std::uint64_t>::max())
        throw ResourceError("divisor enumeration needs a 64-bit value");
    std::vector<std::uint64_t> out{1};
    for (const auto& pp : f.parts()) {
        std::size_t base = out.size();
        std::uint64_t power = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    detail::require_positive(n, "divisors");
    return divisors(factorize(n));
}

inline BigInt lcm_all(std::span<const std::uint64_t> values) {
    BigInt acc = 1;
    for (std::uint64_t v : values) {
        detail::require_positive(v, "lcm_all");
        acc = boost::multiprecision::lcm(acc, BigInt(v));
    }
    return acc;
}

inline BigInt lcm_all(std::initializer_list<std::uint64_t> values) {
    return lcm_all(std::span<const std::uint64_t>(values.begin(), values.size()));
}

/// Strictly increasing list of primes.
class PrimeList {
public:
    PrimeList() = default;
    explicit PrimeList(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            if (!is_prime(primes_[i]))
                throw DomainError("not a prime: " + std::to_string(primes_[i]));
            if (i > 0 && primes_[i] <= primes_[i - 1])
                throw DomainError("prime list must be strictly increasing");
        }
    }

    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    friend bool operator==(const PrimeList&, const PrimeList&) = default;

private:
    std::vector<std::uint64_t> primes_;
};

/// The `count` smallest primes p > lower with p not dividing coprime_to.
inline PrimeList next_primes(std::uint64_t lower, std::size_t count, std::uint64_t coprime_to = 1) {
    detail::require_positive(coprime_to, "next_primes coprime_to");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t c = lower + 1; out.size() < count; ++c) {
        if (c < lower)
            throw ResourceError("next_primes ran past 64-bit range");
        if (coprime_to % c != 0 && is_prime(c))
            out.push_back(c);
    }
    return PrimeList(std::move(out));
}

} // namespace cyclodense
