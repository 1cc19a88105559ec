// polyprod: command-line front end for the experiments.
//
//   polyprod image --poly "x^2+1" --p 7
//   polyprod random-model --p 2003 --trials 200 --seed 1 --format csv
//   polyprod replay run.json

#include <polyprod/cli/run.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

namespace {

using namespace polyprod;
using namespace polyprod::cli;

struct RawOptions {
    std::string poly, d, a;
    std::optional<u64> p, l, x, N, M, H, z, trials, seed;
    std::vector<u64> k;
};

void add_parameter(CLI::App* sub, RawOptions& raw, const std::string& name) {
    if (name == "poly") sub->add_option("--poly", raw.poly, "polynomial, e.g. \"x^2+1\" or \"coeffs:1,0,1\"");
    if (name == "p") sub->add_option("--p", raw.p, "prime modulus");
    if (name == "l") sub->add_option("--l", raw.l, "second prime");
    if (name == "x") sub->add_option("--x", raw.x, "prime bound");
    if (name == "N") sub->add_option("--N", raw.N, "window length or product length");
    if (name == "M") sub->add_option("--M", raw.M, "window offset");
    if (name == "H") sub->add_option("--H", raw.H, "shift bound");
    if (name == "z") sub->add_option("--z", raw.z, "prime scale");
    if (name == "d") sub->add_option("--d", raw.d, "integer d");
    if (name == "a") sub->add_option("--a", raw.a, "integer a");
    if (name == "trials") sub->add_option("--trials", raw.trials, "number of trials");
    if (name == "seed") sub->add_option("--seed", raw.seed, "PRNG seed");
    if (name == "k") sub->add_option("--k", raw.k, "exponent or shift multiplier(s)")->delimiter(',');
}

BigInt parse_bigint(const std::string& text, const char* name) {
    BigInt v;
    if (text.empty() || v.set_str(text, 10) != 0)
        fail(ErrorKind::invalid_argument, std::string("--") + name + " must be an integer");
    return v;
}

bool given(CLI::App* sub, const char* flag) {
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
}

RunConfig build_config(Command cmd, const RawOptions& raw, CLI::App* sub) {
    RunConfig c;
    c.command = cmd;
    if (given(sub, "--poly")) c.poly = parse_polynomial(raw.poly);
    if (given(sub, "--d")) c.d = parse_bigint(raw.d, "d");
    if (given(sub, "--a")) c.a = parse_bigint(raw.a, "a");
    c.p = raw.p;
    c.l = raw.l;
    c.x = raw.x;
    c.N = raw.N;
    c.M = raw.M;
    c.H = raw.H;
    c.z = raw.z;
    c.trials = raw.trials;
    c.seed = raw.seed;
    c.k = raw.k;
    return c;
}

ExperimentReport error_report(const std::string& command, const std::string& kind, const std::string& message) {
    ExperimentReport r;
    r.command = command;
    r.timestamp = utc_timestamp();
    r.error = Json{{"kind", kind}, {"message", message}};
    return r;
}

int write_report(const ExperimentReport& r, Format fmt, const std::string& output) {
    const std::string bytes = emit(r, fmt);
    if (output.empty() || output == "-") {
        std::cout << bytes;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open " << output << "\n";
            return 2;
        }
        out << bytes;
    }
    return r.error ? 1 : 0;
}

const std::map<std::string, std::string> kSummaries = {
    {"image", "orbit image size and missing residues mod p"},
    {"missing-avg", "averaged missing-value statistic over primes up to x"},
    {"sieve", "square-sieve count for kernel class d on a window"},
    {"fields", "group indices of a window by squarefree kernel"},
    {"powers", "indices n where the product is a perfect k-th power"},
    {"weil", "Jacobi character sum over a window against its bound"},
    {"chebotarev", "fraction of primes where P has no root"},
    {"exceptional", "primes where a shifted product is a square mod p"},
    {"random-model", "image fraction of partial products of random unit permutations"},
    {"binomial-check", "shift discriminants for x^d - a modulo a prime"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic dynamics of polynomial products modulo primes"};
    app.require_subcommand(1);

    std::string output;
    std::string format = "json";
    std::optional<unsigned> threads;
    app.add_option("-o,--output", output, "output path (default stdout)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads, "worker threads (default: POLYPROD_THREADS or all cores)");

    RawOptions raw;
    std::vector<std::pair<Command, CLI::App*>> subs;
    for (const auto& s : command_specs()) {
        CLI::App* sub = app.add_subcommand(s.name, kSummaries.at(s.name));
        sub->fallthrough();
        for (const auto& name : s.required) add_parameter(sub, raw, name);
        for (const auto& name : s.optional) add_parameter(sub, raw, name);
        subs.emplace_back(s.command, sub);
    }
    std::string manifest;
    CLI::App* replay = app.add_subcommand("replay", "rerun a saved report or config");
    replay->fallthrough();
    replay->add_option("manifest", manifest, "JSON file with command and parameters")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        const std::string name = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
        return write_report(error_report(name, "invalid_argument", e.what()), Format::json, "") == 0 ? 0 : 2;
    }

    const Format fmt = format == "csv" ? Format::csv : Format::json;
    std::string command_name;
    try {
        RunConfig cfg;
        if (replay->parsed()) {
            command_name = "replay";
            std::ifstream in(manifest);
            if (!in) fail(ErrorKind::invalid_argument, "cannot read " + manifest);
            std::stringstream buf;
            buf << in.rdbuf();
            cfg = config_from_json(Json::parse(buf.str()));
        } else {
            for (auto& [cmd, sub] : subs) {
                if (!sub->parsed()) continue;
                command_name = sub->get_name();
                cfg = build_config(cmd, raw, sub);
            }
        }
        cfg.format = fmt;
        cfg.threads = threads;
        return write_report(run(cfg), fmt, output);
    } catch (const Error& e) {
        return write_report(error_report(command_name, to_string(e.kind()), command_name + ": " + e.what()),
                            Format::json, output);
    } catch (const Json::exception& e) {
        return write_report(error_report(command_name, "parse", command_name + ": " + e.what()), Format::json,
                            output);
    }
}
