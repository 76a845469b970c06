#pragma once

// Command-line front end. Every invocation writes exactly one envelope to
// `out` in the chosen format; diagnostics go to `err`.
//
// JSON envelope:
//   { "command": str, "status": "ok"|"error", "inputs": {...},
//     "result": {...}            (status ok)
//     "error": {"code", "message"} (status error) }
// Integers that do not fit in int64 are emitted as decimal strings.

#include <charconv>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "engine.hpp"
#include "selftest.hpp"

namespace cyclodense::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

inline Json big_json(const BigInt& v) {
    if (fits_int64(v))
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Json big_array(const std::vector<BigInt>& vs) {
    Json a = Json::array();
    for (const auto& v : vs)
        a.push_back(big_json(v));
    return a;
}

inline std::string fraction(const BigRational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// q rounded half-up to six decimals. q >= 0.
inline std::string decimal6(const BigRational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    const BigInt scaled = (num * 2'000'000 + den) / (den * 2);
    std::string frac = BigInt(scaled % 1'000'000).str();
    return BigInt(scaled / 1'000'000).str() + "." + std::string(6 - frac.size(), '0') + frac;
}

inline CoeffSeq parse_seq(const std::string& text) {
    std::vector<BigInt> values;
    if (text.empty())
        return CoeffSeq{};
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        std::string t = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
        std::size_t digits_from = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (t.size() == digits_from || t.find_first_not_of("0123456789", digits_from) != std::string::npos)
            throw DomainError("invalid integer in sequence: '" + tok + "'");
        values.emplace_back(t[0] == '+' ? t.substr(1) : t);
    }
    if (!text.empty() && text.back() == ',')
        throw DomainError("trailing comma in sequence");
    return CoeffSeq(std::move(values));
}

inline std::uint64_t parse_positive(const std::string& text, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || v == 0)
        throw DomainError(std::string(what) + " must be a positive integer, got '" + text + "'");
    return v;
}

inline std::vector<std::uint64_t> parse_positive_list(const std::string& text, const char* what) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(parse_positive(tok, what));
    return out;
}

inline Json seq_json(const CoeffSeq& s) { return big_array(s.values); }

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_null())
        return "none";
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + scalar_text(v[i]);
        return s;
    }
    if (v.is_object()) {
        std::string s;
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            s += (first ? "" : " ") + it.key() + "=" + scalar_text(it.value());
            first = false;
        }
        return s;
    }
    return v.dump();
}

inline void render_text(const Json& env, std::ostream& out) {
    out << "command: " << env["command"].get<std::string>() << "\n";
    out << "status: " << env["status"].get<std::string>() << "\n";
    for (auto it = env["inputs"].begin(); it != env["inputs"].end(); ++it)
        out << "input." << it.key() << ": " << scalar_text(it.value()) << "\n";
    if (env.contains("error")) {
        out << "error: " << env["error"]["code"].get<std::string>() << ": "
            << env["error"]["message"].get<std::string>() << "\n";
        if (!env.contains("result"))
            return;
    }
    for (auto it = env["result"].begin(); it != env["result"].end(); ++it) {
        const Json& v = it.value();
        if (v.is_array() && !v.empty() && v[0].is_object()) {
            out << it.key() << ":\n";
            for (const auto& row : v)
                out << "  " << scalar_text(row) << "\n";
        } else {
            out << it.key() << ": " << scalar_text(v) << "\n";
        }
    }
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string csv_value(const Json& v) {
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ";" : "") + csv_value(v[i]);
        return s;
    }
    if (v.is_object())
        return csv_field(scalar_text(v));
    return csv_field(scalar_text(v));
}

inline void render_csv(const Json& env, std::ostream& out) {
    if (env.contains("error")) {
        out << "status,code,message\n";
        out << "error," << env["error"]["code"].get<std::string>() << ","
            << csv_field(env["error"]["message"].get<std::string>()) << "\n";
        return;
    }
    if (env["command"] == "count") {
        out << "x,N,floor_x_over_l,ratio_num,ratio_den\n";
        for (const auto& row : env["result"]["rows"]) {
            const std::string ratio = row["ratio"].get<std::string>();
            const auto slash = ratio.find('/');
            out << scalar_text(row["x"]) << "," << scalar_text(row["N"]) << "," << scalar_text(row["floor_x_over_l"])
                << "," << ratio.substr(0, slash) << "," << ratio.substr(slash + 1) << "\n";
        }
        return;
    }
    out << "key,value\n";
    out << "command," << env["command"].get<std::string>() << "\n";
    out << "status," << env["status"].get<std::string>() << "\n";
    for (auto it = env["result"].begin(); it != env["result"].end(); ++it)
        out << it.key() << "," << csv_value(it.value()) << "\n";
}

inline void emit(const Json& env, Format format, std::ostream& out) {
    switch (format) {
    case Format::json: out << env.dump(2) << "\n"; break;
    case Format::text: render_text(env, out); break;
    case Format::csv: render_csv(env, out); break;
    }
}

inline Json membership_json(const MembershipResult& m, bool brute) {
    Json r;
    r["member"] = m.member;
    r["reason"] = std::string(reason_name(m.reason));
    r["method"] = brute ? "brute" : "fast";
    r["certificate"] = m.certificate ? big_array(*m.certificate) : Json(nullptr);
    return r;
}

inline Json witness_json(const WitnessCertificate& c, const WitnessVerdict& v) {
    Json r;
    r["n"] = big_json(c.n);
    r["modulus"] = big_json(c.modulus);
    Json groups = Json::array();
    for (const auto& g : c.groups) {
        Json j;
        j["index"] = g.index;
        j["exponent"] = big_json(g.exponent);
        j["labels"] = g.labels;
        groups.push_back(std::move(j));
    }
    r["groups"] = std::move(groups);
    r["cyclotomic_indices"] = c.cyclotomic_indices;
    r["verified"] = v.ok;
    r["check"] = std::string(check_name(v.reason));
    r["exact_check"] = std::string(exact_check_name(v.exact));
    r["degree"] = v.degree;
    return r;
}

inline std::vector<std::uint64_t> default_checkpoints(std::uint64_t limit) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t p = 10; p < limit; p *= 10) {
        cps.push_back(p);
        if (p > std::numeric_limits<std::uint64_t>::max() / 10)
            break;
    }
    cps.push_back(limit);
    return cps;
}

} // namespace detail

/// Runs one CLI invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact density and membership for prescribed initial divisor coefficients of x^n - 1",
                 "cyclodense"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "text";
    Limits limits;
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--max-divisors", limits.max_brute_divisors, "Divisor cap for the subset-enumeration oracle");
    app.add_option("--max-states", limits.max_states, "State cap for the feasibility search");

    std::string seq_text, n_text, limit_text, checkpoints_text, trunc_text;
    bool brute = false, exact_check = false;

    auto* exponents = app.add_subcommand("exponents", "Exponent vector, support, modulus and density");
    exponents->add_option("--seq", seq_text, "Comma-separated integers n_1..n_r")->required();
    auto* density = app.add_subcommand("density", "Modulus l and density 1/l");
    density->add_option("--seq", seq_text)->required();
    auto* member = app.add_subcommand("member", "Decide whether n belongs to S(seq)");
    member->add_option("--n", n_text)->required();
    member->add_option("--seq", seq_text)->required();
    member->add_flag("--brute", brute, "Use subset enumeration instead of the feasibility search");
    auto* witness = app.add_subcommand("witness", "Construct and verify an explicit member");
    witness->add_option("--seq", seq_text)->required();
    witness->add_flag("--exact-check", exact_check, "Also check divisibility of x^n - 1 exactly");
    auto* count = app.add_subcommand("count", "Counting table N(x) at checkpoints");
    count->add_option("--seq", seq_text)->required();
    count->add_option("--limit", limit_text)->required();
    count->add_option("--checkpoints", checkpoints_text);
    auto* cyclotomic = app.add_subcommand("cyclotomic", "Cyclotomic polynomial coefficients");
    cyclotomic->add_option("--n", n_text)->required();
    cyclotomic->add_option("--trunc", trunc_text, "Truncation order r (normalized series mod x^{r+1})");
    auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant battery");

    Format format = Format::text;
    Json env;
    env["command"] = "";
    env["status"] = "ok";
    env["inputs"] = Json::object();

    auto fail = [&](ErrorCode code, const std::string& message) {
        env["status"] = "error";
        env["error"] = {{"code", std::string(error_code_name(code))}, {"message", message}};
        err << "cyclodense: " << message << "\n";
        detail::emit(env, format, out);
        return static_cast<int>(code);
    };

    std::vector<std::string> argv_store{"cyclodense"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (format_name == "json")
            format = Format::json;
        else if (format_name == "csv")
            format = Format::csv;
        for (const auto* sub : app.get_subcommands())
            env["command"] = sub->get_name();
        return fail(ErrorCode::domain, std::string("usage: ") + e.what());
    }
    format = format_name == "json" ? Format::json : format_name == "csv" ? Format::csv : Format::text;
    const CLI::App* sub = app.get_subcommands().front();
    env["command"] = sub->get_name();

    try {
        Json& in = env["inputs"];
        Json result;
        if (sub == exponents || sub == density) {
            const CoeffSeq seq = parse_seq(seq_text);
            in["seq"] = seq_json(seq);
            const ExponentVec k = solve_exponents(seq);
            const SupportProfile p = support_profile(k);
            if (sub == exponents) {
                result["exponents"] = big_array(k.values);
                result["support"] = p.support;
            }
            result["modulus"] = big_json(p.modulus);
            result["density"] = fraction(p.density);
        } else if (sub == member) {
            const std::uint64_t n = parse_positive(n_text, "--n");
            const CoeffSeq seq = parse_seq(seq_text);
            in["n"] = n;
            in["seq"] = seq_json(seq);
            in["brute"] = brute;
            result = detail::membership_json(brute ? brute_member(n, seq, limits) : is_member(n, seq, limits), brute);
        } else if (sub == witness) {
            const CoeffSeq seq = parse_seq(seq_text);
            in["seq"] = seq_json(seq);
            in["exact_check"] = exact_check;
            const WitnessCertificate cert = find_witness(seq);
            const WitnessVerdict verdict = verify_witness(cert, seq, exact_check, limits);
            result = detail::witness_json(cert, verdict);
            if (!verdict.ok)
                throw InvariantError(std::string("constructed witness failed verification: ") +
                                     std::string(check_name(verdict.reason)));
        } else if (sub == count) {
            const CoeffSeq seq = parse_seq(seq_text);
            const std::uint64_t limit = parse_positive(limit_text, "--limit");
            const auto cps = checkpoints_text.empty() ? detail::default_checkpoints(limit)
                                                      : parse_positive_list(checkpoints_text, "--checkpoints");
            in["seq"] = seq_json(seq);
            in["limit"] = limit;
            in["checkpoints"] = cps;
            const CountTable table = count_members(seq, limit, cps, limits);
            result["modulus"] = big_json(table.modulus);
            Json rows = Json::array();
            for (const auto& row : table.rows) {
                Json j;
                j["x"] = row.x;
                j["N"] = row.count;
                j["floor_x_over_l"] = big_json(row.floor_x_over_l);
                j["ratio"] = fraction(row.ratio);
                j["ratio_decimal"] = decimal6(row.ratio);
                rows.push_back(std::move(j));
            }
            result["rows"] = std::move(rows);
        } else if (sub == cyclotomic) {
            const std::uint64_t n = parse_positive(n_text, "--n");
            in["n"] = n;
            std::vector<BigInt> coeffs;
            if (trunc_text.empty()) {
                in["trunc"] = nullptr;
                auto p = cyclotomic_exact(n);
                coeffs.assign(p.coeffs().begin(), p.coeffs().end());
            } else {
                std::size_t r = 0;
                auto [ptr, ec] = std::from_chars(trunc_text.data(), trunc_text.data() + trunc_text.size(), r);
                if (ec != std::errc{} || ptr != trunc_text.data() + trunc_text.size())
                    throw DomainError("--trunc must be a nonnegative integer");
                in["trunc"] = r;
                auto s = cyclotomic_trunc(n, r);
                coeffs.assign(s.coeffs().begin(), s.coeffs().end());
            }
            result["coefficients"] = big_array(coeffs);
        } else if (sub == selftest) {
            const auto checks = run_selftest(limits);
            Json list = Json::array();
            int passed = 0;
            for (const auto& c : checks) {
                list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
                passed += c.passed ? 1 : 0;
            }
            result["checks"] = std::move(list);
            result["passed"] = passed;
            result["failed"] = static_cast<int>(checks.size()) - passed;
            env["result"] = result;
            if (passed != static_cast<int>(checks.size()))
                return fail(ErrorCode::invariant, "selftest: " + std::to_string(checks.size() - passed) + " check(s) failed");
        }
        env["result"] = std::move(result);
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const std::exception& e) {
        return fail(ErrorCode::invariant, std::string("internal error: ") + e.what());
    }
    detail::emit(env, format, out);
    return 0;
}

} // namespace cyclodense::cli
