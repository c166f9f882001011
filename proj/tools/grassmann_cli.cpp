// grassmann: build, inspect, verify and simulate Grassmann codes.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 resource-guard refusal.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "grassmann/grassmann.hpp"

namespace fs = std::filesystem;
using namespace grassmann;

namespace {

constexpr int kOk = 0, kVerifyFail = 1, kUsage = 2, kResource = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodeArgs {
    unsigned q = 2;
    int l = 2, m = 4;
};

void add_code_flags(CLI::App* app, CodeArgs& a) {
    app->add_option("--q", a.q, "field size (prime power <= 256)")->required();
    app->add_option("--l", a.l, "subspace dimension")->required();
    app->add_option("--m", a.m, "ambient dimension")->required();
}

void check_code_args(const CodeArgs& a) {
    if (a.l < 1 || a.m < 1 || a.l > a.m) throw UsageError("need 1 <= l <= m (got l=" + std::to_string(a.l) + ", m=" + std::to_string(a.m) + ")");
    field_of_order(a.q);
}

/// Whole-file write through a temporary sibling so readers never see a partial file.
void write_file(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-")
        std::cout << content;
    else
        write_file(out, content);
}

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// ---- params ----------------------------------------------------------------

int cmd_params(const CodeArgs& a, const std::string& format, const std::string& out) {
    check_code_args(a);
    const CodeParams p = code_params(a.l, a.m, a.q);
    const RatioReport rr = ratio_report(a.l, a.m, a.q);
    std::ostringstream os;
    if (format == "json") {
        json levels = json::array();
        for (int i = 1; i <= a.l; ++i) levels.push_back(json{{"i", i}, {"J_i", big_json(level_count(a.l, a.m, a.q, i))}});
        json j{{"q", a.q},
               {"l", a.l},
               {"m", a.m},
               {"n", big_json(p.n)},
               {"k", big_json(p.k)},
               {"d", big_json(p.d)},
               {"J", big_json(rr.J)},
               {"levels", std::move(levels)},
               {"coverage", big_json(coverage_formula(a.l, a.m, a.q))},
               {"M", rational_text(rr.M)},
               {"J_over_d", static_cast<double>(rr.ratio)},
               {"limit_J_over_d", static_cast<double>(rr.limit)}};
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "key,value\n";
        os << "q," << a.q << "\nl," << a.l << "\nm," << a.m << "\nn," << p.n << "\nk," << p.k << "\nd," << p.d << "\nJ," << rr.J << '\n';
        for (int i = 1; i <= a.l; ++i) os << "J_" << i << ',' << level_count(a.l, a.m, a.q, i) << '\n';
        os << "coverage," << coverage_formula(a.l, a.m, a.q) << "\nM," << rational_text(rr.M) << '\n';
        os << "J_over_d," << std::setprecision(10) << static_cast<double>(rr.ratio) << '\n';
    } else {
        os << "C(" << a.l << "," << a.m << ") over GF(" << a.q << ")\n";
        os << "n = " << p.n << "\nk = " << p.k << "\nd = " << p.d << "\nJ = " << rr.J << '\n';
        for (int i = 1; i <= a.l; ++i) os << "  J_" << i << " = " << level_count(a.l, a.m, a.q, i) << '\n';
        os << "coverage = " << coverage_formula(a.l, a.m, a.q) << " of " << p.n << '\n';
        os << "M_q(l) = " << rational_text(rr.M) << '\n';
        os << "J/d = " << std::setprecision(6) << static_cast<double>(rr.ratio) << " (limit in m: "
           << static_cast<double>(rr.limit) << ")\n";
    }
    emit(out, os.str());
    return kOk;
}

// ---- build -----------------------------------------------------------------

json params_json(const GrassmannCode& code) {
    return json{{"q", code.field().size()},
                {"l", code.l()},
                {"m", code.m()},
                {"n", code.length()},
                {"k", code.dimension()},
                {"d", big_json(code.params().d)},
                {"J", big_json(orthogonal_count(code.l(), code.m(), code.field().size()))}};
}

int cmd_build(const CodeArgs& a, const std::string& out, bool checks, int level, bool verbose) {
    check_code_args(a);
    const GrassmannCode code(field_of_order(a.q), a.l, a.m);
    if (out.empty()) {
        std::cout << to_text(code.generator());
        return kOk;
    }
    fs::create_directories(out);
    const fs::path dir(out);
    write_file(dir / "generator.txt", to_text(code.generator()));
    write_file(dir / "params.json", params_json(code).dump(2) + "\n");
    {
        std::ostringstream os;
        std::vector<std::size_t> all(code.length());
        for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
        write_point_set(os, code.points(), all);
        write_file(dir / "points.txt", os.str());
    }
    if (checks) {
        const auto sets = build_all_orthogonal_sets(code, level);
        json arr = json::array();
        for (const auto& s : sets) arr.push_back(to_json(s));
        write_file(dir / "checks.json", arr.dump() + "\n");
    }
    if (verbose)
        std::cerr << "wrote " << code.dimension() << "x" << code.length() << " generator" << (checks ? " and parity checks" : "")
                  << " to " << out << '\n';
    return kOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const CodeArgs& a, const VerifyOptions& opt, const std::string& format, const std::string& out, bool verbose) {
    check_code_args(a);
    if (opt.tier < 1 || opt.tier > 3) throw UsageError("--level must be 1, 2 or 3");
    const GrassmannCode code(field_of_order(a.q), a.l, a.m);
    const auto results = run_verify(code, opt);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    std::ostringstream os;
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back(json{{"suite", r.name}, {"passed", r.passed}, {"seconds", r.seconds}, {"notes", r.notes}, {"failure_count", r.failure_count}, {"failures", r.failures}});
        os << json{{"q", a.q}, {"l", a.l}, {"m", a.m}, {"passed", ok}, {"suites", std::move(arr)}}.dump(2) << '\n';
    } else if (format == "csv") {
        os << "suite,passed,seconds,failures\n";
        for (const auto& r : results) os << r.name << ',' << (r.passed ? 1 : 0) << ',' << r.seconds << ',' << r.failure_count << '\n';
    } else {
        os << "verify C(" << a.l << "," << a.m << ") over GF(" << a.q << "), n=" << code.length() << '\n';
        for (const auto& r : results) {
            os << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(11) << r.name << std::right << std::fixed
               << std::setprecision(3) << r.seconds << " s" << std::defaultfloat << '\n';
            if (verbose || r.name == "orthogonal")
                for (const auto& n : r.notes) os << "     " << n << '\n';
            const std::size_t shown = verbose ? r.failures.size() : std::min<std::size_t>(r.failures.size(), 5);
            for (std::size_t k = 0; k < shown; ++k) os << "     ! " << r.failures[k] << '\n';
            if (r.failure_count > shown) os << "     ! ... " << r.failure_count - shown << " more\n";
        }
        os << (ok ? "all suites passed\n" : "verification FAILED\n");
    }
    emit(out, os.str());
    return ok ? kOk : kVerifyFail;
}

// ---- decode ----------------------------------------------------------------

std::vector<Fe> parse_word(const std::string& line, const Field& F, std::size_t n, std::size_t lineno) {
    std::istringstream is(line);
    std::vector<Fe> w;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw UsageError("line " + std::to_string(lineno) + ": '" + tok + "' is not a field symbol");
        if (v >= F.size())
            throw UsageError("line " + std::to_string(lineno) + ": symbol " + tok + " is outside GF(" + std::to_string(F.size()) + ")");
        w.push_back(Fe{static_cast<unsigned>(v)});
    }
    if (w.size() != n)
        throw UsageError("line " + std::to_string(lineno) + ": word has " + std::to_string(w.size()) + " symbols, code length is " +
                         std::to_string(n));
    return w;
}

std::string word_text(std::span<const Fe> w) {
    std::string s;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j) s.push_back(' ');
        s += std::to_string(w[j].value);
    }
    return s;
}

int cmd_decode(const std::string& code_dir, const std::string& in, const std::string& out, bool verbose) {
    const fs::path dir(code_dir);
    const json pj = json::parse(read_file(dir / "params.json"));
    CodeArgs a{pj.at("q").get<unsigned>(), pj.at("l").get<int>(), pj.at("m").get<int>()};
    check_code_args(a);
    const GrassmannCode code(field_of_order(a.q), a.l, a.m);
    {
        std::istringstream gs(read_file(dir / "generator.txt"));
        if (!(read_matrix(gs, code.field()) == code.generator()))
            throw UsageError("generator.txt in " + code_dir + " does not match the code described by params.json");
    }
    std::vector<OrthogonalSet> sets;
    if (fs::exists(dir / "checks.json")) {
        const json cj = json::parse(read_file(dir / "checks.json"));
        for (const auto& s : cj) sets.push_back(set_from_json(s, code.field(), code.length()));
        if (sets.size() != code.length()) throw UsageError("checks.json does not hold one set per coordinate");
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (sets[j].anchor != j) throw UsageError("checks.json sets are not ordered by anchor");
            if (!is_orthogonal_on_anchor(sets[j], code.field(), code.length()))
                throw UsageError("checks.json set " + std::to_string(j) + " is not orthogonal on its anchor");
            bool dual = true;
            sets[j].for_each_check([&](const ParityCheck& c) { dual = dual && annihilates(code.generator(), c); });
            if (!dual) throw UsageError("checks.json set " + std::to_string(j) + " holds a non-dual word");
        }
    } else {
        sets = build_all_orthogonal_sets(code);
    }
    std::size_t J = code.length();
    for (const auto& s : sets) J = std::min(J, s.size());
    const std::size_t bound = J / 2;

    std::istringstream input(in.empty() || in == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(in));
    std::ostringstream os;
    std::string line;
    std::size_t lineno = 0, words = 0, uncertified = 0;
    while (std::getline(input, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto w = parse_word(line, code.field(), code.length(), lineno);
        const DecodeResult res = majority_decode(code, sets, w);
        const auto wt = static_cast<std::size_t>(std::count_if(res.error.begin(), res.error.end(), [](Fe x) { return !x.is_zero(); }));
        const bool certified = wt <= bound && code.is_codeword(res.codeword);
        ++words;
        if (!certified) ++uncertified;
        os << word_text(res.codeword) << '\n' << word_text(res.error) << '\n';
        std::cerr << "word " << words << ": " << (certified ? "certified" : "uncertified") << ", corrected " << wt
                  << " symbols (radius " << bound << "), " << res.multiplications << " multiplications\n";
        if (verbose)
            for (const auto& v : res.votes)
                std::cerr << "  coord " << v.coordinate << ": estimate " << static_cast<unsigned>(v.estimate.value) << ", votes " << v.votes << "/" << v.checks
                          << '\n';
    }
    emit(out, os.str());
    return kOk;
}

// ---- sim -------------------------------------------------------------------

std::pair<int, int> parse_weights(const std::string& s) {
    const auto dash = s.find('-');
    try {
        std::size_t used = 0;
        if (dash == std::string::npos) {
            const int w = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {w, w};
        }
        const std::string a = s.substr(0, dash), b = s.substr(dash + 1);
        const int lo = std::stoi(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const int hi = std::stoi(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return {lo, hi};
    } catch (const std::exception&) {
        throw UsageError("--weights must be N or LO-HI, got '" + s + "'");
    }
}

/// key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream is(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

int cmd_sim(CLI::App* sub, const std::string& config, CodeArgs a, std::optional<std::uint64_t> seed, std::size_t trials,
            std::string weights, std::string format, std::string out, bool verbose) {
    if (!config.empty()) {
        for (const auto& [k, v] : read_config(config)) {
            auto from_cfg = [&](const char* flag) { return sub->get_option(flag)->count() == 0; };
            try {
                if (k == "q" && from_cfg("--q")) a.q = static_cast<unsigned>(std::stoul(v));
                else if (k == "l" && from_cfg("--l")) a.l = std::stoi(v);
                else if (k == "m" && from_cfg("--m")) a.m = std::stoi(v);
                else if (k == "seed" && from_cfg("--seed")) seed = std::stoull(v);
                else if (k == "trials" && from_cfg("--trials")) trials = std::stoul(v);
                else if (k == "weights" && from_cfg("--weights")) weights = v;
                else if (k == "format" && from_cfg("--format")) format = v;
                else if (k == "out" && from_cfg("--out")) out = v;
                else if (k != "q" && k != "l" && k != "m" && k != "seed" && k != "trials" && k != "weights" && k != "format" && k != "out")
                    throw UsageError("unknown config key '" + k + "'");
            } catch (const UsageError&) {
                throw;
            } catch (const std::exception&) {
                throw UsageError("bad value for config key '" + k + "': " + v);
            }
        }
        if (format != "json" && format != "csv" && format != "text") throw UsageError("format must be json, csv or text");
    }
    if (!seed) throw UsageError("sim needs a seed (--seed or 'seed' in the config file)");
    check_code_args(a);
    SimConfig cfg;
    cfg.q = a.q;
    cfg.l = a.l;
    cfg.m = a.m;
    cfg.seed = *seed;
    cfg.trials = trials;
    std::tie(cfg.weight_lo, cfg.weight_hi) = parse_weights(weights);
    const GrassmannCode code(field_of_order(cfg.q), cfg.l, cfg.m);
    try {
        validate(cfg, code.length());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (verbose) std::cerr << "building " << code.length() << " orthogonal sets\n";
    const auto sets = build_all_orthogonal_sets(code);
    const SimReport rep = run_sim(cfg, code, sets);
    std::ostringstream os;
    if (format == "json")
        os << to_json(rep).dump(2) << '\n';
    else if (format == "csv")
        write_sim_csv(os, rep);
    else
        write_sim_text(os, rep);
    emit(out, os.str());
    bool envelope = true;
    for (const auto& r : rep.records)
        if (static_cast<std::size_t>(r.weight) <= rep.bound && r.successes != r.trials) envelope = false;
    if (!envelope) std::cerr << "decoding failed within the guaranteed radius\n";
    return envelope ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grassmann codes: parameters, construction, verification, majority decoding and simulation"};
    app.require_subcommand(1);
    bool verbose = false;
    std::string format = "text", out;

    CodeArgs pa;
    auto* params = app.add_subcommand("params", "print n, k, d, J with its per-level breakdown, coverage and J/d");
    add_code_flags(params, pa);
    params->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    params->add_option("--out", out, "output file (default stdout)");

    CodeArgs ba;
    bool checks = false;
    int build_level = -1;
    auto* build = app.add_subcommand("build", "write the generator matrix and optionally all orthogonal parity-check sets");
    add_code_flags(build, ba);
    build->add_option("--out", out, "output directory (omit to print the generator matrix)");
    build->add_flag("--checks", checks, "also write checks.json with one orthogonal set per coordinate");
    build->add_option("--level", build_level, "highest parity-check level to build (default: all)");
    build->add_flag("--verbose", verbose, "print details");

    CodeArgs va;
    VerifyOptions vopt;
    std::uint64_t vseed = 1;
    auto* verify = app.add_subcommand("verify", "run self-check suites; exit 1 if any fails");
    add_code_flags(verify, va);
    verify->add_option("--level", vopt.tier, "suite tier: 1 geometry, 2 adds dual and paths, 3 adds parity checks and decoder")
        ->check(CLI::Range(1, 3));
    verify->add_option("--seed", vseed, "seed for sampled checks");
    verify->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    verify->add_option("--out", out, "output file (default stdout)");
    verify->add_flag("--inject-fault", vopt.inject_fault, "negative control: corrupt one generator entry");
    verify->add_flag("--verbose", verbose, "print notes for every suite");

    std::string code_dir, in;
    auto* decode = app.add_subcommand("decode", "majority-decode received words, one per line");
    decode->add_option("--code-dir", code_dir, "directory written by build")->required();
    decode->add_option("--in", in, "received words (default stdin)");
    decode->add_option("--out", out, "decoded codeword and error lines (default stdout)");
    decode->add_flag("--verbose", verbose, "print per-coordinate votes");

    CodeArgs sa;
    std::string config, weights = "0";
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1000;
    auto* sim = app.add_subcommand("sim", "Monte-Carlo decoding over an exact-weight error channel");
    sim->add_option("--config", config, "key = value file (q, l, m, seed, trials, weights, format, out)");
    sim->add_option("--q", sa.q, "field size");
    sim->add_option("--l", sa.l, "subspace dimension");
    sim->add_option("--m", sa.m, "ambient dimension");
    sim->add_option("--seed", seed, "RNG seed (required)");
    sim->add_option("--trials", trials, "trials per weight");
    sim->add_option("--weights", weights, "error weight N or range LO-HI");
    sim->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sim->add_option("--out", out, "report file (default stdout)");
    sim->add_flag("--verbose", verbose, "print progress");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*params) return cmd_params(pa, format, out);
        if (*build) return cmd_build(ba, out, checks, build_level, verbose);
        if (*verify) {
            vopt.seed = vseed;
            return cmd_verify(va, vopt, format, out, verbose);
        }
        if (*decode) return cmd_decode(code_dir, in, out, verbose);
        if (*sim) {
            if (config.empty())
                for (const char* f : {"--q", "--l", "--m"})
                    if (sim->get_option(f)->count() == 0) throw UsageError(std::string("sim needs ") + f + " or --config");
            return cmd_sim(sim, config, sa, seed, trials, weights, format, out, verbose);
        }
    } catch (const ResourceLimit& e) {
        std::cerr << "refused: " << e.what() << " (raise GRASS_MAX_POINTS to override)\n";
        return kResource;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return kVerifyFail;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
