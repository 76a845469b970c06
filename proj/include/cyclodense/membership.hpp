#pragma once

// Exact membership of n in S(n_1, ..., n_r).
//
// A divisor of x^n - 1 with constant term 1 is prod_{d in T} delta(d) phi_d
// for a subset T of the divisors of n, and mod x^{r+1} it equals
// prod_m (1 - x^m)^{l_m} with l_m = sum_{d in T, m | d} mu(d / m). Exponent
// vectors are unique, so T realizes the target iff sum_{d in T} v(d) = k,
// where v(d) is the divisor's Möbius vector and k solves the target.
//
// Write n = a_part * b_part with a_part built from primes <= r. For a
// divisor d = a * b, v(d) = mu(b) v(a) when b is squarefree and 0 otherwise,
// so every class of equal vectors has a closed-form size. The search runs
// over those classes, never over individual divisors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "arith.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "limits.hpp"
#include "sequence.hpp"
#include "series.hpp"

namespace cyclodense {

/// Contribution of one divisor d to the exponents l_1 .. l_r.
struct DivisorVector {
    std::uint64_t divisor = 1;
    std::vector<int> entries;  // entries[m-1] = mu(d/m) if m | d, else 0

    friend bool operator==(const DivisorVector&, const DivisorVector&) = default;
};

inline DivisorVector divisor_vector(std::uint64_t d, std::uint64_t n, std::size_t order) {
    detail::require_positive(d, "divisor_vector");
    detail::require_positive(n, "divisor_vector");
    if (n % d != 0)
        throw DomainError(std::to_string(d) + " does not divide " + std::to_string(n));
    DivisorVector v{d, std::vector<int>(order, 0)};
    for (std::uint64_t m = 1; m <= order && m <= d; ++m)
        if (d % m == 0)
            v.entries[m - 1] = mobius(d / m);
    return v;
}

enum class MembershipReason { divisibility_filter, infeasible, certified };

inline std::string_view reason_name(MembershipReason r) {
    switch (r) {
    case MembershipReason::divisibility_filter: return "divisibility_filter";
    case MembershipReason::infeasible: return "infeasible";
    case MembershipReason::certified: return "certified";
    }
    return "unknown";
}

struct MembershipResult {
    bool member = false;
    // Divisors of n whose normalized cyclotomic factors multiply to the target; increasing.
    std::optional<std::vector<BigInt>> certificate;
    MembershipReason reason = MembershipReason::infeasible;
};

namespace detail {

inline constexpr Wide kSizeCap = Wide{1} << 62;

// Divisors a * b of n with fixed small part a and b ranging over
// squarefree products of the large primes with a fixed parity of prime count.
struct DivisorStream {
    std::uint64_t small = 1;
    bool odd = false;
};

struct VectorClass {
    std::vector<int> w;  // canonical: first nonzero entry is +1
    Wide lo = 0, hi = 0;  // net multiplicity z ranges over [lo, hi]
    std::vector<DivisorStream> plus, minus;
};

// Number of subsets of s elements with the given parity, saturated.
inline Wide parity_count(std::size_t s, bool odd) {
    if (s == 0)
        return odd ? 0 : 1;
    if (s - 1 >= 62)
        return kSizeCap;
    return Wide{1} << (s - 1);
}

// Enumerates a * b in increasing order over squarefree b from the sorted
// primes. Each subset is reached once: from a subset ending at index j,
// either append prime j+1 or swap prime j for prime j+1.
class SubsetProducts {
public:
    SubsetProducts(const std::vector<std::uint64_t>& primes, DivisorStream stream)
        : primes_(primes), stream_(stream) {
        heap_.push({BigInt(stream.small), -1, false});
    }

    std::optional<BigInt> next() {
        while (!heap_.empty()) {
            Node top = heap_.top();
            heap_.pop();
            auto j = static_cast<std::size_t>(top.last + 1);
            if (j < primes_.size()) {
                heap_.push({top.value * primes_[j], top.last + 1, !top.odd});
                if (top.last >= 0)
                    heap_.push({top.value / primes_[top.last] * primes_[j], top.last + 1, top.odd});
            }
            if (top.odd == stream_.odd)
                return top.value;
        }
        return std::nullopt;
    }

private:
    struct Node {
        BigInt value;
        long last;
        bool odd;
        bool operator>(const Node& o) const { return value > o.value; }
    };

    const std::vector<std::uint64_t>& primes_;
    DivisorStream stream_;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> heap_;
};

// The `count` smallest divisors across a set of streams.
inline std::vector<BigInt> smallest_from(const std::vector<std::uint64_t>& primes,
                                         const std::vector<DivisorStream>& streams, Wide count) {
    std::vector<SubsetProducts> gens;
    gens.reserve(streams.size());
    using Entry = std::pair<BigInt, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (const auto& s : streams) {
        gens.emplace_back(primes, s);
        if (auto v = gens.back().next())
            heap.push({*v, gens.size() - 1});
    }
    std::vector<BigInt> out;
    while (static_cast<Wide>(out.size()) < count) {
        if (heap.empty())
            throw InvariantError("divisor class exhausted before its counted size");
        auto [v, idx] = heap.top();
        heap.pop();
        out.push_back(v);
        if (auto nv = gens[idx].next())
            heap.push({*nv, idx});
    }
    return out;
}

class FeasibilitySearch {
public:
    FeasibilitySearch(std::vector<VectorClass>& classes, std::vector<Wide> target, std::uint64_t max_states)
        : classes_(classes), target_(std::move(target)), max_states_(max_states) {
        const std::size_t g = classes_.size();
        const std::size_t r = target_.size();
        min_rest_.assign(g + 1, std::vector<Wide>(r, 0));
        max_rest_.assign(g + 1, std::vector<Wide>(r, 0));
        for (std::size_t i = g; i-- > 0;) {
            for (std::size_t j = 0; j < r; ++j) {
                Wide a = classes_[i].lo * classes_[i].w[j];
                Wide b = classes_[i].hi * classes_[i].w[j];
                min_rest_[i][j] = min_rest_[i + 1][j] + std::min(a, b);
                max_rest_[i][j] = max_rest_[i + 1][j] + std::max(a, b);
            }
        }
        choice_.assign(g, 0);
    }

    bool run() { return visit(0, target_); }
    const std::vector<Wide>& choice() const { return choice_; }
    std::uint64_t states() const { return states_; }

private:
    struct Key {
        std::size_t g;
        std::vector<Wide> residual;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::size_t h = std::hash<std::size_t>{}(k.g);
            for (Wide v : k.residual) {
                auto u = static_cast<unsigned __int128>(v);
                h ^= std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(u) ^ static_cast<std::uint64_t>(u >> 64)) +
                     0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            }
            return h;
        }
    };

    bool within_bounds(std::size_t g, const std::vector<Wide>& residual) const {
        for (std::size_t j = 0; j < residual.size(); ++j)
            if (residual[j] < min_rest_[g][j] || residual[j] > max_rest_[g][j])
                return false;
        return true;
    }

    bool visit(std::size_t g, const std::vector<Wide>& residual) {
        if (!within_bounds(g, residual))
            return false;
        if (g == classes_.size())
            return true;  // bounds at the end are all zero
        Key key{g, residual};
        if (failed_.contains(key))
            return false;
        if (++states_ > max_states_)
            throw ResourceError("feasibility search exceeded " + std::to_string(max_states_) + " states");

        const auto& cls = classes_[g];
        Wide zlo = cls.lo, zhi = cls.hi;
        for (std::size_t j = 0; j < residual.size(); ++j) {
            if (cls.w[j] == 0)
                continue;
            // residual_j - z w_j must stay inside the bounds of the remaining classes.
            Wide a = residual[j] - max_rest_[g + 1][j];
            Wide b = residual[j] - min_rest_[g + 1][j];
            if (cls.w[j] < 0) {
                Wide t = -b;
                b = -a;
                a = t;
            }
            zlo = std::max(zlo, a);
            zhi = std::min(zhi, b);
        }
        if (zlo <= zhi) {
            // Outward from the value nearest zero: small certificates first.
            Wide start = std::clamp<Wide>(0, zlo, zhi);
            std::vector<Wide> next(residual.size());
            auto attempt = [&](Wide z) {
                for (std::size_t j = 0; j < residual.size(); ++j)
                    next[j] = residual[j] - z * cls.w[j];
                if (visit(g + 1, next)) {
                    choice_[g] = z;
                    return true;
                }
                return false;
            };
            for (Wide step = 0;; ++step) {
                bool up = start + step <= zhi;
                bool down = step > 0 && start - step >= zlo;
                if (!up && !down)
                    break;
                if (up && attempt(start + step))
                    return true;
                if (down && attempt(start - step))
                    return true;
            }
        }
        failed_.insert(std::move(key));
        return false;
    }

    std::vector<VectorClass>& classes_;
    std::vector<Wide> target_;
    std::uint64_t max_states_;
    std::vector<std::vector<Wide>> min_rest_, max_rest_;
    std::vector<Wide> choice_;
    std::unordered_set<Key, KeyHash> failed_;
    std::uint64_t states_ = 0;
};

} // namespace detail

/// Decides n in S(seq) for n given by its factorization.
inline MembershipResult is_member(const Factorization& n, const CoeffSeq& seq, const Limits& limits = {}) {
    const std::size_t r = seq.order();
    const ExponentVec k = solve_exponents(seq);
    const BigInt nval = n.value();
    if (nval < 1)
        throw DomainError("is_member: n must be >= 1");

    for (std::size_t m = 1; m <= r; ++m)
        if (k.at(m) != 0 && nval % m != 0)
            return {false, std::nullopt, MembershipReason::divisibility_filter};

    std::vector<PrimePower> small_parts;
    std::vector<std::uint64_t> large;
    for (const auto& pp : n.parts()) {
        if (pp.prime <= r)
            small_parts.push_back(pp);
        else
            large.push_back(pp.prime);
    }
    const Factorization small(std::move(small_parts));
    if (small.value() > std::numeric_limits<std::uint64_t>::max())
        throw ResourceError("small-prime part of n exceeds 64 bits");
    const auto small_divs = divisors(small, limits.max_small_divisors);
    const Wide even_count = detail::parity_count(large.size(), false);
    const Wide odd_count = detail::parity_count(large.size(), true);

    std::map<std::vector<int>, detail::VectorClass> by_vector;
    for (std::uint64_t a : small_divs) {
        std::vector<int> v = divisor_vector(a, a, r).entries;
        auto first = std::find_if(v.begin(), v.end(), [](int e) { return e != 0; });
        if (first == v.end())
            continue;
        const bool flipped = *first < 0;
        if (flipped)
            for (int& e : v)
                e = -e;
        auto& cls = by_vector[v];
        cls.w = v;
        // a * (even b) carries v(a); a * (odd b) carries -v(a).
        if (!flipped) {
            cls.plus.push_back({a, false});
            cls.minus.push_back({a, true});
            cls.hi += even_count;
            cls.lo -= odd_count;
        } else {
            cls.plus.push_back({a, true});
            cls.minus.push_back({a, false});
            cls.hi += odd_count;
            cls.lo -= even_count;
        }
    }

    std::vector<detail::VectorClass> classes;
    for (auto& [v, cls] : by_vector) {
        std::erase_if(cls.plus, [&](const detail::DivisorStream& s) { return detail::parity_count(large.size(), s.odd) == 0; });
        std::erase_if(cls.minus, [&](const detail::DivisorStream& s) { return detail::parity_count(large.size(), s.odd) == 0; });
        classes.push_back(std::move(cls));
    }

    // Bound check before narrowing the target to 128 bits.
    std::vector<Wide> target(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
        Wide reach = 0;
        for (const auto& c : classes)
            if (c.w[j] != 0)
                reach += std::max(c.hi, -c.lo);
        if (boost::multiprecision::abs(k.values[j]) > to_big(reach))
            return {false, std::nullopt, MembershipReason::infeasible};
        target[j] = to_wide(k.values[j]);
    }

    // Eliminate from the highest coordinate down: the last class touching a
    // coordinate has its multiplicity forced by the residual there.
    auto leading = [](const detail::VectorClass& c) {
        std::size_t l = 0;
        for (std::size_t j = 0; j < c.w.size(); ++j)
            if (c.w[j] != 0)
                l = j;
        return l;
    };
    std::stable_sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
        std::size_t la = leading(a), lb = leading(b);
        if (la != lb)
            return la > lb;
        return (a.hi - a.lo) < (b.hi - b.lo);
    });

    detail::FeasibilitySearch search(classes, target, limits.max_states);
    if (!search.run())
        return {false, std::nullopt, MembershipReason::infeasible};

    std::vector<BigInt> cert;
    Wide total = 0;
    for (std::size_t g = 0; g < classes.size(); ++g) {
        Wide z = search.choice()[g];
        total += z < 0 ? -z : z;
        if (total > static_cast<Wide>(limits.max_states))
            throw ResourceError("certificate larger than the state cap");
        if (z > 0) {
            auto part = detail::smallest_from(large, classes[g].plus, z);
            cert.insert(cert.end(), part.begin(), part.end());
        } else if (z < 0) {
            auto part = detail::smallest_from(large, classes[g].minus, -z);
            cert.insert(cert.end(), part.begin(), part.end());
        }
    }
    std::sort(cert.begin(), cert.end());
    return {true, std::move(cert), MembershipReason::certified};
}

inline MembershipResult is_member(std::uint64_t n, const CoeffSeq& seq, const Limits& limits = {}) {
    detail::require_positive(n, "is_member");
    return is_member(factorize(n), seq, limits);
}

/// Subset-enumeration oracle. Subsets are visited in increasing bitmask
/// order (bit i = i-th smallest divisor) and the first match is returned.
inline MembershipResult brute_member(std::uint64_t n, const CoeffSeq& seq, const Limits& limits = {}) {
    detail::require_positive(n, "brute_member");
    const std::size_t r = seq.order();
    const Factorization f = factorize(n);
    if (f.divisor_count() > limits.max_brute_divisors)
        throw ResourceError("brute_member: " + std::to_string(f.divisor_count()) + " divisors exceed cap " +
                            std::to_string(limits.max_brute_divisors));
    const auto divs = divisors(f);
    std::vector<TruncSeries> factors;
    factors.reserve(divs.size());
    for (std::uint64_t d : divs)
        factors.push_back(cyclotomic_trunc(d, r));
    const TruncSeries target = ts_from_seq(seq, r);

    std::vector<bool> chosen(divs.size(), false);
    // Deciding the highest bit first, exclude before include, yields masks in increasing order.
    std::function<bool(std::size_t, const TruncSeries&)> walk = [&](std::size_t remaining, const TruncSeries& acc) {
        if (remaining == 0)
            return acc == target;
        const std::size_t i = remaining - 1;
        chosen[i] = false;
        if (walk(i, acc))
            return true;
        chosen[i] = true;
        if (walk(i, ts_mul(acc, factors[i])))
            return true;
        chosen[i] = false;
        return false;
    };
    if (!walk(divs.size(), TruncSeries(r)))
        return {false, std::nullopt, MembershipReason::infeasible};
    std::vector<BigInt> cert;
    for (std::size_t i = 0; i < divs.size(); ++i)
        if (chosen[i])
            cert.emplace_back(divs[i]);
    return {true, std::move(cert), MembershipReason::certified};
}

/// prod_{d in T} delta(d) phi_d mod x^{order+1}.
inline TruncSeries certificate_product(const std::vector<BigInt>& divisors_used, std::size_t order) {
    TruncSeries acc(order);
    for (const auto& d : divisors_used) {
        if (d < 1 || d > kFactorCap)
            throw ResourceError("certificate divisor outside the factorization range: " + d.str());
        acc = ts_mul(acc, cyclotomic_trunc(static_cast<std::uint64_t>(d), order));
    }
    return acc;
}

} // namespace cyclodense
