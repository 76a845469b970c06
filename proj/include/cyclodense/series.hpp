#pragma once

// Exact integer polynomials and power series truncated mod x^{r+1},
// plus cyclotomic polynomials in both forms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "sequence.hpp"

namespace cyclodense {

/// Integer power series known modulo x^{order+1}.
class TruncSeries {
public:
    /// The constant series 1 of the given order.
    explicit TruncSeries(std::size_t order = 0) : coeffs_(order + 1) { coeffs_[0] = 1; }

    static TruncSeries from_coeffs(std::vector<BigInt> coeffs) {
        if (coeffs.empty())
            throw DomainError("truncated series needs at least one coefficient");
        TruncSeries s;
        s.coeffs_ = std::move(coeffs);
        return s;
    }

    static TruncSeries from_coeffs(std::initializer_list<long long> coeffs) {
        std::vector<BigInt> v;
        for (long long c : coeffs)
            v.emplace_back(c);
        return from_coeffs(std::move(v));
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
    BigInt& operator[](std::size_t i) { return coeffs_[i]; }
    std::span<const BigInt> coeffs() const { return coeffs_; }

    bool is_one() const {
        return coeffs_[0] == 1 && std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](auto& c) { return c == 0; });
    }

    TruncSeries negated() const {
        TruncSeries s = *this;
        for (auto& c : s.coeffs_)
            c = -c;
        return s;
    }

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

private:
    std::vector<BigInt> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
    os << "[";
    for (std::size_t i = 0; i <= s.order(); ++i)
        os << (i ? "," : "") << s[i];
    return os << "] mod x^" << s.order() + 1;
}

/// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long long> coeffs) {
        for (long long c : coeffs)
            coeffs_.emplace_back(c);
        trim();
    }

    /// x^n - 1.
    static IntPoly x_pow_minus_one(std::size_t n) {
        std::vector<BigInt> c(n + 1);
        c[0] = -1;
        c[n] += 1;
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
    std::span<const BigInt> coeffs() const { return coeffs_; }
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    const BigInt& leading() const { return coeffs_.back(); }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
    os << "[";
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        os << (i ? "," : "") << p.coeffs()[i];
    return os << "]";
}

inline TruncSeries ts_from_seq(const CoeffSeq& seq, std::size_t order) {
    if (seq.order() != order)
        throw DomainError("sequence length " + std::to_string(seq.order()) + " does not match order " +
                          std::to_string(order));
    TruncSeries s(order);
    for (std::size_t i = 1; i <= order; ++i)
        s[i] = seq.at(i);
    return s;
}

inline TruncSeries ts_mul(const TruncSeries& a, const TruncSeries& b) {
    if (a.order() != b.order())
        throw DomainError("truncation order mismatch: " + std::to_string(a.order()) + " vs " +
                          std::to_string(b.order()));
    const std::size_t r = a.order();
    std::vector<BigInt> out(r + 1);
    for (std::size_t i = 0; i <= r; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j <= r; ++j)
            if (b[j] != 0)
                out[i + j] += a[i] * b[j];
    }
    return TruncSeries::from_coeffs(std::move(out));
}

inline TruncSeries ts_inv(const TruncSeries& a) {
    const BigInt& c0 = a[0];
    if (c0 != 1 && c0 != -1)
        throw DomainError("series inverse needs constant term +-1");
    const std::size_t r = a.order();
    std::vector<BigInt> b(r + 1);
    b[0] = c0;
    for (std::size_t k = 1; k <= r; ++k) {
        BigInt acc = 0;
        for (std::size_t j = 1; j <= k; ++j)
            if (a[j] != 0)
                acc += a[j] * b[k - j];
        b[k] = -c0 * acc;
    }
    return TruncSeries::from_coeffs(std::move(b));
}

/// (1 - x^i)^e mod x^{order+1} for any signed e, by the binomial series.
inline TruncSeries one_minus_pow(std::uint64_t i, const BigInt& e, std::size_t order) {
    if (i == 0)
        throw DomainError("one_minus_pow: index must be >= 1");
    TruncSeries s(order);
    if (e == 0 || i > order)
        return s;
    // e >= 0: C(e, j) (-1)^j.  e = -m < 0: C(m + j - 1, j).
    const bool negative = e < 0;
    const BigInt m = negative ? BigInt(-e) : e;
    BigInt term = 1;
    for (std::size_t j = 1; j * i <= order; ++j) {
        if (negative) {
            term = term * (m + j - 1) / j;
            s[j * i] = term;
        } else {
            term = term * (m - j + 1) / j;
            if (term == 0)
                break;
            s[j * i] = (j % 2) ? BigInt(-term) : term;
        }
    }
    return s;
}

inline TruncSeries one_minus_pow(std::uint64_t i, long long e, std::size_t order) {
    return one_minus_pow(i, BigInt(e), order);
}

inline TruncSeries truncate(const IntPoly& p, std::size_t order) {
    std::vector<BigInt> c(order + 1);
    for (std::size_t i = 0; i <= order; ++i)
        c[i] = p.coeff(i);
    return TruncSeries::from_coeffs(std::move(c));
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    auto ac = a.coeffs();
    auto bc = b.coeffs();
    std::vector<std::size_t> bnz;
    for (std::size_t j = 0; j < bc.size(); ++j)
        if (bc[j] != 0)
            bnz.push_back(j);
    std::vector<BigInt> out(ac.size() + bc.size() - 1);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0)
            continue;
        for (std::size_t j : bnz)
            out[i + j] += ac[i] * bc[j];
    }
    return IntPoly(std::move(out));
}

/// Exact quotient num / den, or nullopt when the remainder is nonzero.
/// den must have leading coefficient +-1.
inline std::optional<IntPoly> try_exact_div(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero())
        throw DomainError("division by the zero polynomial");
    const BigInt& lead = den.leading();
    if (lead != 1 && lead != -1)
        throw DomainError("divisor leading coefficient must be +-1");
    if (num.is_zero())
        return IntPoly{};
    if (num.degree() < den.degree())
        return std::nullopt;

    const auto dd = static_cast<std::size_t>(den.degree());
    auto dc = den.coeffs();
    std::vector<std::size_t> dnz;
    for (std::size_t j = 0; j < dd; ++j)
        if (dc[j] != 0)
            dnz.push_back(j);

    std::vector<BigInt> rem(num.coeffs().begin(), num.coeffs().end());
    const std::size_t qdeg = rem.size() - 1 - dd;
    std::vector<BigInt> q(qdeg + 1);
    for (std::size_t k = qdeg + 1; k-- > 0;) {
        BigInt c = rem[k + dd] * lead;
        if (c == 0)
            continue;
        for (std::size_t j : dnz)
            rem[k + j] -= c * dc[j];
        q[k] = std::move(c);
    }
    for (std::size_t j = 0; j < dd; ++j)
        if (rem[j] != 0)
            return std::nullopt;
    return IntPoly(std::move(q));
}

inline IntPoly poly_exact_div(const IntPoly& num, const IntPoly& den) {
    auto q = try_exact_div(num, den);
    if (!q)
        throw DomainError("inexact polynomial division");
    return *std::move(q);
}

/// The n-th cyclotomic polynomial, from prod_{d|n} (x^d - 1)^{mu(n/d)}.
/// Factors are applied in increasing d; a division waits until it is exact.
inline IntPoly cyclotomic_exact(std::uint64_t n) {
    const auto divs = divisors(n);
    IntPoly acc{1};
    std::vector<std::uint64_t> pending;
    auto drain = [&] {
        for (auto it = pending.begin(); it != pending.end();) {
            if (auto q = try_exact_div(acc, IntPoly::x_pow_minus_one(*it))) {
                acc = *std::move(q);
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
    };
    for (std::uint64_t d : divs) {
        int mu = mobius(n / d);
        if (mu == 1) {
            acc = poly_mul(acc, IntPoly::x_pow_minus_one(d));
            drain();
        } else if (mu == -1) {
            pending.push_back(d);
            drain();
        }
    }
    if (!pending.empty())
        throw InvariantError("cyclotomic_exact(" + std::to_string(n) + "): unresolved division");
    return acc;
}

/// delta(n) * phi_n mod x^{order+1}, i.e. prod_{d|n, d<=order} (1 - x^d)^{mu(n/d)}.
/// Constant term is always 1.
inline TruncSeries cyclotomic_trunc(std::uint64_t n, std::size_t order) {
    const Factorization f = factorize(n);
    TruncSeries acc(order);
    for (std::uint64_t d = 1; d <= order && d <= n; ++d) {
        if (n % d != 0)
            continue;
        std::uint64_t q = n / d;
        int mu = 1;
        for (const auto& pp : f.parts()) {
            unsigned e = 0;
            while (q % pp.prime == 0) {
                q /= pp.prime;
                ++e;
            }
            if (e > 1) {
                mu = 0;
                break;
            }
            if (e == 1)
                mu = -mu;
        }
        if (mu != 0)
            acc = ts_mul(acc, one_minus_pow(d, mu, order));
    }
    return acc;
}

} // namespace cyclodense
