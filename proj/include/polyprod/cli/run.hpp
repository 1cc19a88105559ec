#pragma once

// RunConfig validation and command dispatch.

#include <polyprod/cli/parse.hpp>
#include <polyprod/cli/report.hpp>
#include <polyprod/dynamics.hpp>
#include <polyprod/experiments.hpp>

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polyprod::cli {

enum class Command {
    image,
    missing_avg,
    sieve,
    fields,
    powers,
    weil,
    chebotarev,
    exceptional,
    random_model,
    binomial_check,
};

struct CommandSpec {
    Command command;
    const char* name;
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

inline const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs = {
        {Command::image, "image", {"poly", "p"}, {"N"}},
        {Command::missing_avg, "missing-avg", {"poly", "x", "N"}, {}},
        {Command::sieve, "sieve", {"poly", "d", "M", "N"}, {"H", "z"}},
        {Command::fields, "fields", {"poly", "M", "N"}, {}},
        {Command::powers, "powers", {"poly", "k", "N"}, {}},
        {Command::weil, "weil", {"poly", "l", "p", "M", "N"}, {}},
        {Command::chebotarev, "chebotarev", {"poly", "z"}, {}},
        {Command::exceptional, "exceptional", {"poly", "H", "x"}, {}},
        {Command::random_model, "random-model", {"p", "trials", "seed"}, {}},
        {Command::binomial_check, "binomial-check", {"d", "a", "k"}, {}},
    };
    return specs;
}

inline const CommandSpec& spec_for(Command c) {
    for (const auto& s : command_specs()) {
        if (s.command == c) return s;
    }
    fail(ErrorKind::internal, "unknown command");
}

inline Command command_from_name(const std::string& name) {
    for (const auto& s : command_specs()) {
        if (name == s.name) return s.command;
    }
    fail(ErrorKind::invalid_argument, "unknown command '" + name + "'");
}

/// Canonical parameter order, shared by validation, echo and JSON configs.
inline const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names = {"poly", "p", "l",      "x",    "N", "M", "H",
                                                   "z",    "d", "a",      "k",    "trials", "seed"};
    return names;
}

struct RunConfig {
    Command command = Command::image;
    std::optional<IntPoly> poly;
    std::optional<u64> p, l, x, N, M, H, z, trials, seed;
    std::optional<BigInt> d, a;
    std::vector<u64> k;  // a single power for `powers`, a list for `binomial-check`
    Format format = Format::json;
    std::optional<std::string> output;
    std::optional<unsigned> threads;

    std::set<std::string> given() const {
        std::set<std::string> g;
        if (poly) g.insert("poly");
        const std::array<std::pair<const char*, const std::optional<u64>*>, 9> nums = {{{"p", &p},
                                                                                         {"l", &l},
                                                                                         {"x", &x},
                                                                                         {"N", &N},
                                                                                         {"M", &M},
                                                                                         {"H", &H},
                                                                                         {"z", &z},
                                                                                         {"trials", &trials},
                                                                                         {"seed", &seed}}};
        for (const auto& [name, v] : nums) {
            if (v->has_value()) g.insert(name);
        }
        if (d) g.insert("d");
        if (a) g.insert("a");
        if (!k.empty()) g.insert("k");
        return g;
    }

    /// Every command accepts exactly its own parameter subset.
    void validate() const {
        const CommandSpec& s = spec_for(command);
        const std::set<std::string> g = given();
        for (const auto& name : s.required) {
            if (!g.count(name))
                fail(ErrorKind::invalid_argument, "missing required parameter '" + name + "'");
        }
        for (const auto& name : g) {
            const bool ok = std::find(s.required.begin(), s.required.end(), name) != s.required.end() ||
                            std::find(s.optional.begin(), s.optional.end(), name) != s.optional.end();
            if (!ok) fail(ErrorKind::invalid_argument, "parameter '" + name + "' not accepted");
        }
        if (command == Command::powers && k.size() != 1)
            fail(ErrorKind::invalid_argument, "k must be a single integer");
    }

    Json parameters_json() const {
        Json j = Json::object();
        for (const auto& name : parameter_names()) {
            if (name == "poly" && poly) j["poly"] = to_string(*poly);
            if (name == "d" && d) j["d"] = json_int(*d);
            if (name == "a" && a) j["a"] = json_int(*a);
            if (name == "k" && !k.empty()) {
                if (command == Command::powers) {
                    j["k"] = k.front();
                } else {
                    j["k"] = k;
                }
            }
            const std::map<std::string, const std::optional<u64>*> nums = {
                {"p", &p}, {"l", &l}, {"x", &x}, {"N", &N}, {"M", &M}, {"H", &H}, {"z", &z}, {"trials", &trials},
                {"seed", &seed}};
            auto it = nums.find(name);
            if (it != nums.end() && it->second->has_value()) j[name] = json_int(**it->second);
        }
        return j;
    }
};

namespace detail {

inline u64 json_u64(const Json& v, const std::string& name) {
    if (v.is_number_unsigned()) return v.get<u64>();
    if (v.is_number_integer() && v.get<i64>() >= 0) return static_cast<u64>(v.get<i64>());
    if (v.is_string()) {
        BigInt b;
        if (b.set_str(v.get<std::string>(), 10) == 0 && fits_u64(b)) return to_u64(b);
    }
    fail(ErrorKind::invalid_argument, "parameter '" + name + "' must be a non-negative integer");
}

inline BigInt json_bigint(const Json& v, const std::string& name) {
    if (v.is_number_integer()) return from_i64(v.get<i64>());
    if (v.is_number_unsigned()) return from_u64(v.get<u64>());
    if (v.is_string()) {
        BigInt b;
        if (b.set_str(v.get<std::string>(), 10) == 0) return b;
    }
    fail(ErrorKind::invalid_argument, "parameter '" + name + "' must be an integer");
}

}  // namespace detail

/// From {"command": ..., "parameters": {...}}; unknown keys are rejected.
/// Any emitted report is accepted as a manifest.
inline RunConfig config_from_json(const Json& j) {
    static const std::set<std::string> kTop = {"command", "parameters", "schema_version", "timestamp",
                                               "results", "error",      "warnings"};
    for (const auto& [key, value] : j.items()) {
        if (!kTop.count(key)) fail(ErrorKind::invalid_argument, "unknown config key '" + key + "'");
    }
    RunConfig cfg;
    cfg.command = command_from_name(j.at("command").get<std::string>());
    const Json params = j.value("parameters", Json::object());
    const auto& names = parameter_names();
    for (const auto& [key, v] : params.items()) {
        if (std::find(names.begin(), names.end(), key) == names.end())
            fail(ErrorKind::invalid_argument, "unknown parameter '" + key + "'");
        if (key == "poly") {
            cfg.poly = parse_polynomial(v.get<std::string>());
        } else if (key == "d") {
            cfg.d = detail::json_bigint(v, key);
        } else if (key == "a") {
            cfg.a = detail::json_bigint(v, key);
        } else if (key == "k") {
            if (v.is_array()) {
                for (const auto& e : v) cfg.k.push_back(detail::json_u64(e, key));
            } else {
                cfg.k.push_back(detail::json_u64(v, key));
            }
        } else {
            const u64 n = detail::json_u64(v, key);
            if (key == "p") cfg.p = n;
            if (key == "l") cfg.l = n;
            if (key == "x") cfg.x = n;
            if (key == "N") cfg.N = n;
            if (key == "M") cfg.M = n;
            if (key == "H") cfg.H = n;
            if (key == "z") cfg.z = n;
            if (key == "trials") cfg.trials = n;
            if (key == "seed") cfg.seed = n;
        }
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// Per-command payloads
// ---------------------------------------------------------------------------

namespace detail {

inline const double kOneMinusInvE = 1.0 - std::exp(-1.0);

inline std::string join(const std::vector<u64>& v, char sep = ' ') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

inline Json u64_array(const std::vector<u64>& v) {
    Json a = Json::array();
    for (u64 x : v) a.push_back(json_int(x));
    return a;
}

inline std::string fmt_double(double v) { return Json(v).dump(); }

inline void run_image(const RunConfig& c, ExperimentReport& r) {
    const ImageStats s = image_stats(*c.poly, *c.p);
    const std::vector<u64> missing = s.missing();
    Json j;
    j["p"] = json_int(s.p);
    j["good"] = s.good;
    j["n0"] = json_or_null(s.n0);
    j["small_prime"] = s.small_prime;
    j["G"] = json_int(s.image_size);
    j["missing_count"] = json_int(static_cast<u64>(missing.size()));
    j["missing"] = u64_array(missing);
    j["lower_bound"] = s.lower_bound;
    j["lower_bound_holds"] = s.lower_bound_holds;
    j["n0_bound_holds"] = s.n0_bound_holds;
    Json ws = Json::array();
    if (c.N) {
        if (!s.good) {
            r.warnings.push_back("collision witnesses skipped: p is bad for P");
        } else {
            for (const auto& w : collision_witnesses(*c.poly, *c.p, *c.N)) {
                ws.push_back({{"n", w.n}, {"t0", w.t0}, {"lhs_index", w.lhs_index()}, {"rhs_index", w.rhs_index()}});
            }
        }
    }
    j["witnesses"] = ws;
    if (s.good && !s.lower_bound_holds) r.warnings.push_back("image size below sqrt(p / deg P)");
    if (!s.good && !s.n0_bound_holds) r.warnings.push_back("image size exceeds n0");
    r.table.columns = {"p", "good", "n0", "G", "missing_count", "lower_bound", "missing"};
    r.table.rows.push_back({std::to_string(s.p), s.good ? "true" : "false", s.n0 ? std::to_string(*s.n0) : "",
                            std::to_string(s.image_size), std::to_string(missing.size()), fmt_double(s.lower_bound),
                            join(missing)});
    r.results = std::move(j);
}

inline void run_missing_avg(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    const MissingAverageReport m = missing_average(*c.poly, *c.x, *c.N, threads);
    Json j;
    j["x"] = json_int(m.x);
    j["N"] = json_int(m.N);
    j["prime_count"] = json_int(m.prime_count);
    j["good_primes"] = json_int(m.good_primes);
    j["bad_primes"] = json_int(m.bad_primes);
    j["missing_sum_good"] = json_int(m.missing_sum_good);
    j["missing_sum_bad"] = json_int(m.missing_sum_bad);
    j["lhs"] = m.lhs();
    j["rhs"] = m.rhs();
    j["ratio"] = json_or_null(m.ratio());
    j["violated"] = m.violated();
    j["image_fraction_good"] = m.image_fraction_good;
    j["conjectured_fraction"] = kOneMinusInvE;
    j["fraction_ratio"] = m.good_primes ? Json(m.image_fraction_good / kOneMinusInvE) : Json(nullptr);
    Json per = Json::array();
    r.table.columns = {"n", "rho_sum", "term"};
    for (u64 n = 1; n <= m.N; ++n) {
        per.push_back({{"n", n}, {"rho_sum", json_int(m.rho_sums[n - 1])}, {"term", m.rhs_term(n)}});
        r.table.rows.push_back({std::to_string(n), std::to_string(m.rho_sums[n - 1]), fmt_double(m.rhs_term(n))});
    }
    j["per_n"] = per;
    if (m.violated()) r.warnings.push_back("finite-x violation: LHS < RHS");
    r.results = std::move(j);
}

inline void run_sieve(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    SquareSieveOptions opt;
    opt.H = c.H;
    opt.z = c.z;
    opt.threads = threads;
    const SieveReport s = square_sieve(*c.poly, *c.d, *c.M, *c.N, opt);
    Json j;
    j["d"] = json_int(s.d);
    j["M"] = json_int(s.M);
    j["N"] = json_int(s.N);
    j["H"] = json_int(s.H);
    j["z"] = json_int(s.z);
    j["solutions"] = u64_array(s.solutions);
    j["s1"] = u64_array(s.s1);
    j["s2"] = u64_array(s.s2);
    j["s1_count"] = s.s1_count();
    j["s2_count"] = s.s2_count();
    j["curly_L_size"] = s.curly_L.size();
    j["curly_P_size"] = s.curly_P.size();
    j["curly_L"] = u64_array(s.curly_L);
    j["curly_P"] = u64_array(s.curly_P);
    Json checks = Json::array();
    for (const auto& ch : s.checks) {
        checks.push_back({{"n", ch.n},
                          {"partner_h", ch.partner_h},
                          {"partner_sum", ch.partner_sum},
                          {"first_full_h", json_or_null(ch.first_full_h)},
                          {"passes", ch.passes}});
    }
    j["checks"] = checks;
    j["bound_value"] = s.bound_value();
    j["s1_within_gap_bound"] = s.s1_within_gap_bound();
    j["all_checks_pass"] = s.all_checks_pass();
    if (!s.all_checks_pass()) r.warnings.push_back("full-sum identity failed for some n in S_2");
    r.table.columns = {"n", "subset", "partner_h", "partner_sum", "passes"};
    for (u64 n : s.solutions) {
        const SieveCheck* found = nullptr;
        for (const auto& ch : s.checks) {
            if (ch.n == n) found = &ch;
        }
        r.table.rows.push_back({std::to_string(n), found ? "S2" : "S1", found ? std::to_string(found->partner_h) : "",
                                found ? std::to_string(found->partner_sum) : "",
                                found ? (found->passes ? "true" : "false") : ""});
    }
    r.results = std::move(j);
}

inline void run_fields(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    const FieldCensus f = s_d_census(*c.poly, *c.M, *c.N, KernelMode::absolute, threads);
    Json j;
    j["M"] = json_int(f.M);
    j["N"] = json_int(f.N);
    j["distinct_fields"] = f.distinct_fields();
    j["max_class_size"] = f.max_class_size();
    j["bound_value"] = f.bound_value();
    j["ratio"] = json_or_null(f.ratio());
    j["kernel_bit_limit"] = kDefaultKernelBitLimit;
    Json classes = Json::array();
    r.table.columns = {"d", "d_bits", "size", "members"};
    bool omitted = false;
    for (const auto& k : f.classes) {
        Json e;
        e["d"] = k.kernel ? json_int(*k.kernel) : Json(nullptr);
        e["d_bits"] = k.kernel_bits;
        e["sign"] = k.sign;
        e["size"] = k.members.size();
        e["members"] = u64_array(k.members);
        classes.push_back(std::move(e));
        omitted = omitted || !k.kernel;
        r.table.rows.push_back({k.kernel ? k.kernel->get_str() : "", std::to_string(k.kernel_bits),
                                std::to_string(k.members.size()), join(k.members)});
    }
    j["classes"] = classes;
    if (omitted) r.warnings.push_back("kernels wider than kernel_bit_limit bits are reported as null");
    r.results = std::move(j);
}

inline void run_powers(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    const unsigned k = static_cast<unsigned>(c.k.front());
    const auto sols = find_power_solutions(*c.poly, k, *c.N, threads);
    Json j;
    j["k"] = k;
    j["N"] = json_int(*c.N);
    Json arr = Json::array();
    r.table.columns = {"n", "m"};
    for (const auto& s : sols) {
        Json factors = Json::array();
        for (const auto& [q, e] : s.root.entries) factors.push_back({json_int(q), e});
        const BigInt m = s.root.value();
        arr.push_back({{"n", s.n}, {"m", json_int(m)}, {"m_factors", factors}});
        r.table.rows.push_back({std::to_string(s.n), m.get_str()});
    }
    j["solutions"] = arr;
    r.results = std::move(j);
}

inline void run_weil(const RunConfig& c, ExperimentReport& r) {
    const WeilRatio w = weil_ratio(*c.poly, *c.l, *c.p, *c.M, *c.N);
    Json j;
    j["l"] = json_int(*c.l);
    j["p"] = json_int(*c.p);
    j["M"] = json_int(*c.M);
    j["N"] = json_int(*c.N);
    j["sum"] = json_int(w.sum);
    j["bound"] = w.bound;
    j["ratio"] = w.ratio;
    j["flagged"] = w.ratio > 1.0;
    if (w.ratio > 1.0) r.warnings.push_back("character sum exceeds the Weil bound with constant 1");
    r.table.columns = {"l", "p", "M", "N", "sum", "bound", "ratio"};
    r.table.rows.push_back({std::to_string(*c.l), std::to_string(*c.p), std::to_string(*c.M), std::to_string(*c.N),
                            std::to_string(w.sum), fmt_double(w.bound), fmt_double(w.ratio)});
    r.results = std::move(j);
}

inline void run_chebotarev(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    const DensityReport d = chebotarev_census(*c.poly, *c.z, threads);
    Json j;
    j["z"] = json_int(d.z);
    j["degree"] = d.degree;
    j["primes_total"] = json_int(d.primes_total);
    j["rootless"] = json_int(d.rootless);
    j["rootless_fraction"] = d.rootless_fraction();
    j["kappa_hat"] = json_or_null(d.kappa_hat());
    j["kappa_bound"] = json_or_null(d.kappa_bound());
    r.table.columns = {"z", "primes_total", "rootless", "rootless_fraction", "kappa_hat", "kappa_bound"};
    r.table.rows.push_back({std::to_string(d.z), std::to_string(d.primes_total), std::to_string(d.rootless),
                            fmt_double(d.rootless_fraction()), cell(j["kappa_hat"]), cell(j["kappa_bound"])});
    r.results = std::move(j);
}

inline void run_exceptional(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    const ExceptionalReport e = exceptional_prime_census(*c.poly, *c.H, *c.x, threads);
    Json j;
    j["H"] = json_int(e.H);
    j["x"] = json_int(e.x);
    j["count"] = e.count();
    Json pairs = Json::array();
    r.table.columns = {"p", "h"};
    for (const auto& [p, h] : e.pairs) {
        pairs.push_back({{"p", p}, {"h", h}});
        r.table.rows.push_back({std::to_string(p), std::to_string(h)});
    }
    j["pairs"] = pairs;
    j["degenerate"] = u64_array(e.degenerate);
    j["comparison_value"] = json_or_null(e.comparison_value());
    if (!e.degenerate.empty()) r.warnings.push_back("primes dividing every coefficient of P were skipped");
    r.results = std::move(j);
}

inline void run_random_model(const RunConfig& c, ExperimentReport& r, unsigned threads) {
    const RandomModelReport m = random_permutation_model(*c.p, *c.trials, *c.seed, threads);
    Json j;
    j["p"] = json_int(m.p);
    j["trials"] = json_int(m.trials);
    j["seed"] = json_int(m.seed);
    j["mean_image_fraction"] = m.mean_image_fraction;
    j["stddev"] = m.stddev;
    j["conjectured_fraction"] = kOneMinusInvE;
    j["fractions"] = m.fractions;
    r.table.columns = {"trial", "fraction"};
    for (std::size_t t = 0; t < m.fractions.size(); ++t)
        r.table.rows.push_back({std::to_string(t), fmt_double(m.fractions[t])});
    r.results = std::move(j);
}

inline void run_binomial(const RunConfig& c, ExperimentReport& r) {
    const u64 d = detail::json_u64(json_int(*c.d), "d");
    const BinomialShiftReport b = binomial_shift_check(d, *c.a, c.k);
    Json j;
    j["d"] = json_int(b.d);
    j["a"] = json_int(b.a);
    j["q"] = json_int(b.q);
    j["irreducible_over_Q"] = b.irreducible_over_Q;
    Json checks = Json::array();
    r.table.columns = {"k", "accepted", "rejection", "degree", "disc_mod_q", "integer_disc_mod_q", "nonzero"};
    for (const auto& ch : b.checks) {
        Json e;
        e["k"] = ch.k;
        e["accepted"] = ch.accepted;
        e["rejection"] = ch.accepted ? Json(nullptr) : Json(ch.rejection);
        e["shift_length"] = ch.shift_length;
        e["degree"] = ch.degree;
        e["disc_mod_q"] = ch.disc_mod_q;
        e["integer_disc_mod_q"] = json_or_null(ch.integer_disc_mod_q);
        e["nonzero"] = ch.nonzero;
        e["routes_agree"] = ch.routes_agree();
        if (ch.accepted && !ch.nonzero) r.warnings.push_back("k=" + std::to_string(ch.k) + ": discriminant vanishes mod q");
        if (!ch.accepted) r.warnings.push_back("k=" + std::to_string(ch.k) + " rejected: " + ch.rejection);
        r.table.rows.push_back({std::to_string(ch.k), ch.accepted ? "true" : "false", ch.rejection,
                                std::to_string(ch.degree), std::to_string(ch.disc_mod_q),
                                ch.integer_disc_mod_q ? std::to_string(*ch.integer_disc_mod_q) : "",
                                ch.nonzero ? "true" : "false"});
        checks.push_back(std::move(e));
    }
    j["checks"] = checks;
    r.results = std::move(j);
}

}  // namespace detail

/// Runs one experiment. Library errors are captured into the report's error
/// payload; the report never throws for them.
inline ExperimentReport run(const RunConfig& config) {
    ExperimentReport r;
    r.command = spec_for(config.command).name;
    r.timestamp = utc_timestamp();
    try {
        r.parameters = config.parameters_json();
        config.validate();
        const unsigned threads = resolve_threads(config.threads);
        switch (config.command) {
            case Command::image: detail::run_image(config, r); break;
            case Command::missing_avg: detail::run_missing_avg(config, r, threads); break;
            case Command::sieve: detail::run_sieve(config, r, threads); break;
            case Command::fields: detail::run_fields(config, r, threads); break;
            case Command::powers: detail::run_powers(config, r, threads); break;
            case Command::weil: detail::run_weil(config, r); break;
            case Command::chebotarev: detail::run_chebotarev(config, r, threads); break;
            case Command::exceptional: detail::run_exceptional(config, r, threads); break;
            case Command::random_model: detail::run_random_model(config, r, threads); break;
            case Command::binomial_check: detail::run_binomial(config, r); break;
        }
    } catch (const Error& e) {
        r.results.reset();
        r.table = {};
        r.error = Json{{"kind", to_string(e.kind())}, {"message", r.command + ": " + e.what()}};
    }
    return r;
}

}  // namespace polyprod::cli
