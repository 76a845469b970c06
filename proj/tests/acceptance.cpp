// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance <cyclodense-binary> <golden-dir> [criterion-id]

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cyclodense/engine.hpp"
#include "oracles.hpp"

using namespace cyclodense;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;

    void fail(const std::string& why) {
        if (ok)
            note = why;
        ok = false;
    }
};

CoeffSeq random_seq(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len, int lo, int hi) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<int> val(lo, hi);
    std::vector<BigInt> v(len(rng));
    for (auto& x : v)
        x = val(rng);
    return CoeffSeq(std::move(v));
}

std::string seq_text(const CoeffSeq& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        out += (i ? "," : "") + s.values[i].str();
    return out + "]";
}

Outcome exponent_suite() {
    Outcome o;
    std::mt19937_64 rng(101);
    for (int t = 0; t < 1000 && o.ok; ++t) {
        const CoeffSeq seq = random_seq(rng, 0, 6, -9, 9);
        const auto k = solve_exponents(seq);
        const auto target = ts_from_seq(seq, seq.order());
        if (exponent_product(k) != target) {
            o.fail("roundtrip " + seq_text(seq));
            break;
        }
        for (std::size_t i = 1; i <= k.order(); ++i)
            for (int d : {-1, 1}) {
                ExponentVec moved = k;
                moved.values[i - 1] += d;
                const auto p = exponent_product(moved);
                std::size_t first = 0;
                while (first <= p.order() && p[first] == target[first])
                    ++first;
                if (first != i)
                    o.fail("uniqueness " + seq_text(seq) + " i=" + std::to_string(i));
            }
    }
    if (o.ok)
        o.note = "1000 sequences";
    return o;
}

Outcome product_identity() {
    Outcome o;
    for (std::uint64_t n = 1; n <= 200; ++n) {
        IntPoly acc{1};
        for (std::uint64_t d : divisors(n))
            acc = poly_mul(acc, cyclotomic_exact(d));
        if (acc != IntPoly::x_pow_minus_one(n))
            o.fail("n=" + std::to_string(n));
    }
    if (o.ok)
        o.note = "n <= 200";
    return o;
}

Outcome truncation_grids() {
    Outcome o;
    std::size_t checks = 0;
    for (std::size_t r = 1; r <= 6; ++r) {
        for (std::uint64_t d = 1; d <= 6; ++d) {
            std::vector<std::uint64_t> ps;
            for (std::uint64_t p = r + 1; p <= 50; ++p)
                if (is_prime(p) && d % p != 0)
                    ps.push_back(p);
            for (unsigned e1 = 1; e1 <= 2; ++e1)
                for (unsigned e2 = 1; e2 <= 2; ++e2) {
                    auto value = [&](std::uint64_t a, std::uint64_t b) {
                        std::uint64_t v = d;
                        for (unsigned i = 0; i < e1; ++i) v *= a;
                        for (unsigned i = 0; i < e2; ++i) v *= b;
                        return v;
                    };
                    const auto ref = cyclotomic_trunc(value(ps[0], ps[1]), r);
                    for (std::size_t i = 0; i < ps.size(); ++i)
                        for (std::size_t j = 0; j < ps.size(); ++j) {
                            if (i == j)
                                continue;
                            ++checks;
                            if (cyclotomic_trunc(value(ps[i], ps[j]), r) != ref)
                                o.fail("replacement d=" + std::to_string(d) + " r=" + std::to_string(r));
                        }
                }
            if (d > r)
                continue;
            const auto exact = truncate(cyclotomic_exact(d), r);
            const auto want = delta(d) == 1 ? exact : exact.negated();
            for (std::size_t i = 0; i < ps.size(); ++i)
                for (std::size_t j = i + 1; j < ps.size(); ++j) {
                    ++checks;
                    if (cyclotomic_trunc(d * ps[i] * ps[j], r) != want)
                        o.fail("collapse d=" + std::to_string(d) + " r=" + std::to_string(r));
                }
        }
    }
    if (o.ok)
        o.note = std::to_string(checks) + " checks";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    std::vector<CoeffSeq> battery{CoeffSeq{}};
    for (int a = -2; a <= 2; ++a) {
        battery.push_back(CoeffSeq{a});
        for (int b = -2; b <= 2; ++b)
            battery.push_back(CoeffSeq{a, b});
    }
    std::mt19937_64 rng(404);
    for (int t = 0; t < 50; ++t)
        battery.push_back(random_seq(rng, 3, 3, -1, 1));
    std::size_t pairs = 0;
    for (std::uint64_t n = 1; n <= 60; ++n)
        for (const auto& seq : battery) {
            ++pairs;
            if (is_member(n, seq).member != brute_member(n, seq).member)
                o.fail("n=" + std::to_string(n) + " seq=" + seq_text(seq));
        }
    if (o.ok)
        o.note = std::to_string(pairs) + " pairs";
    return o;
}

Outcome witness_suite() {
    Outcome o;
    std::mt19937_64 rng(505);
    int exact_passed = 0;
    for (int t = 0; t < 200; ++t) {
        const CoeffSeq seq = random_seq(rng, 0, 4, -3, 3);
        const std::size_t r = seq.order();
        const auto cert = find_witness(seq);
        const auto v = verify_witness(cert, seq, true);
        const std::string where = " seq=" + seq_text(seq);
        if (!v.ok) {
            o.fail(std::string(check_name(v.reason)) + where);
            continue;
        }
        if (v.exact == ExactCheck::passed)
            ++exact_passed;
        else if (v.degree <= 5000)
            o.fail("exact check not run" + where);
        if (!is_member(cert.n_factors, seq).member)
            o.fail("is_member(cert.n) false" + where);
        const BigInt l = support_profile(solve_exponents(seq)).modulus;
        if (cert.n % l != 0) {
            o.fail("l does not divide n" + where);
            continue;
        }
        BigInt rest = cert.n / l;
        for (const auto& pp : cert.n_factors.parts()) {
            if (pp.prime <= r)
                continue;
            if (rest % pp.prime != 0)
                o.fail("shape" + where);
            rest /= pp.prime;
        }
        if (rest != 1)
            o.fail("n/l not squarefree over primes > r" + where);
    }
    if (o.ok)
        o.note = "200 witnesses, " + std::to_string(exact_passed) + " exact";
    return o;
}

// Structural certificates: {4} when 4 | n, {p, 2p} for odd p | n, {p} for any p | n.
bool structural_member(std::uint64_t n, const CoeffSeq& seq) {
    const std::size_t r = seq.order();
    const auto target = ts_from_seq(seq, r);
    std::vector<std::vector<BigInt>> candidates;
    if (n % 4 == 0)
        candidates.push_back({4});
    for (std::uint64_t p = 2; p <= n; ++p)
        if (n % p == 0 && is_prime(p)) {
            candidates.push_back({p});
            if (p > 2 && n % (2 * p) == 0)
                candidates.push_back({p, 2 * p});
        }
    for (const auto& c : candidates)
        if (certificate_product(c, r) == target)
            return true;
    return false;
}

Outcome exact_counts() {
    Outcome o;
    for (const CoeffSeq& seq : {CoeffSeq{0, 1}, CoeffSeq{1}}) {
        std::vector<long long> raw;
        for (const auto& v : seq.values)
            raw.push_back(static_cast<long long>(v));
        for (std::uint64_t n = 1; n <= 200; ++n) {
            const bool brute = brute_member(n, seq).member;
            if (brute != structural_member(n, seq))
                o.fail("structural mismatch n=" + std::to_string(n) + " seq=" + seq_text(seq));
            if (n <= 48 && brute != oracle::subset_member(n, raw))
                o.fail("oracle mismatch n=" + std::to_string(n) + " seq=" + seq_text(seq));
        }
    }
    const std::uint64_t cps[] = {10000};
    const auto a = count_members(CoeffSeq{0, 1}, 10000, cps).rows.back().count;
    const auto b = count_members(CoeffSeq{1}, 10000, cps).rows.back().count;
    if (a != 4999)
        o.fail("N([0,1],10^4)=" + std::to_string(a));
    if (b != 9999)
        o.fail("N([1],10^4)=" + std::to_string(b));
    if (o.ok)
        o.note = "N([0,1])=4999 N([1])=9999";
    return o;
}

Outcome density_sanity() {
    Outcome o;
    const std::uint64_t cps[] = {100, 1000, 10000};
    std::ostringstream note;
    for (const CoeffSeq& seq : {CoeffSeq{0, 1}, CoeffSeq{0, 0, 1}, CoeffSeq{2, 1}}) {
        const auto t = count_members(seq, 10000, cps, {}, std::max(1u, std::thread::hardware_concurrency()));
        for (const auto& row : t.rows)
            if (BigInt(row.count) > row.floor_x_over_l)
                o.fail("upper bound x=" + std::to_string(row.x) + " seq=" + seq_text(seq));
        const BigRational ratio = t.rows.back().ratio;
        if (ratio < BigRational(95, 100) || ratio > 1)
            o.fail("ratio out of [0.95, 1]");
        note << " " << seq_text(seq) << " N=" << t.rows.back().count << " ratio=" << boost::multiprecision::numerator(ratio)
             << "/" << boost::multiprecision::denominator(ratio);
    }
    o.note += ";" + note.str();
    return o;
}

std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    status = pclose(pipe);
    return out;
}

Outcome cli_golden(const std::string& binary, const std::filesystem::path& golden) {
    Outcome o;
    const std::vector<std::pair<std::string, std::string>> cases{
        {"exponents --seq 2,1", "exponents_2_1.txt"},
        {"witness --seq 0,1 --format json", "witness_0_1.json"},
        {"count --seq 0,1 --limit 1000 --format csv", "count_0_1_1000.csv"},
    };
    for (const auto& [args, file] : cases) {
        std::ifstream in(golden / file, std::ios::binary);
        if (!in) {
            o.fail("missing golden " + file);
            continue;
        }
        const std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        int s1 = 0, s2 = 0;
        const std::string first = capture("\"" + binary + "\" " + args, s1);
        const std::string second = capture("\"" + binary + "\" " + args, s2);
        if (s1 != 0 || s2 != 0)
            o.fail("nonzero exit: " + args);
        else if (first != second)
            o.fail("runs differ: " + args);
        else if (first != want)
            o.fail("golden mismatch: " + args);
    }
    if (o.ok)
        o.note = "3 commands x 2 runs";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3 && argc != 4) {
        std::cerr << "usage: acceptance <cyclodense-binary> <golden-dir> [criterion-id]\n";
        return 2;
    }
    const int only = argc == 4 ? std::stoi(argv[3]) : 0;
    const std::string binary = argv[1];
    const std::filesystem::path golden = argv[2];

    struct Criterion {
        int id;
        std::string name;
        double budget_s;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "exponent roundtrip and uniqueness", 10, exponent_suite},
        {2, "cyclotomic product identity", 30, product_identity},
        {3, "truncation property grids", 30, truncation_grids},
        {4, "fast membership equals subset enumeration", 120, oracle_equivalence},
        {5, "witness construction and verification", 120, witness_suite},
        {6, "exact counts", 60, exact_counts},
        {7, "density sanity", 120, density_sanity},
        {8, "cli golden determinism", 60, [&] { return cli_golden(binary, golden); }},
    };

    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only)
            continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > c.budget_s)
            o.fail("over time budget");
        if (!o.ok)
            ++failed;
        std::printf("%s [%d] %s (%.2fs / %.0fs) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.budget_s,
                    o.note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
