#pragma once

// Seeded Monte-Carlo harness for the majority decoder over an exact-weight
// channel. Trial t (counted across all weights) draws from its own
// std::mt19937_64 seeded with seed + t, so any subset of trials can be
// replayed in isolation.

#include <iomanip>
#include <ostream>
#include <random>

#include "grassmann/majority.hpp"

namespace grassmann {

inline constexpr const char* kRngId = "mt19937_64";

struct SimConfig {
    int l = 2, m = 4;
    unsigned q = 2;
    std::size_t trials = 1000;
    int weight_lo = 0, weight_hi = 0;
    std::uint64_t seed = 0;
};

struct SimRecord {
    int weight = 0;
    std::size_t trials = 0, successes = 0, failures = 0, miscorrections = 0;
    double mean_mults = 0;
};

struct SimReport {
    std::string rng = kRngId;
    std::uint64_t seed = 0;
    int l = 0, m = 0;
    unsigned q = 0;
    std::size_t n = 0, k = 0;
    BigInt d, J;
    std::size_t bound = 0;  ///< floor(J/2)
    std::vector<SimRecord> records;
};

inline void validate(const SimConfig& cfg, std::size_t n) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (cfg.weight_lo < 0 || cfg.weight_hi < cfg.weight_lo)
        throw std::invalid_argument("weight range must satisfy 0 <= lo <= hi");
    if (static_cast<std::size_t>(cfg.weight_hi) > n)
        throw std::invalid_argument("weight " + std::to_string(cfg.weight_hi) + " exceeds the code length " + std::to_string(n));
}

/// Uniform random message, encoded.
inline std::vector<Fe> random_codeword(const GrassmannCode& code, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> sym(0, code.field().size() - 1);
    std::vector<Fe> msg(code.dimension());
    for (auto& x : msg) x = Fe{sym(rng)};
    return code.encode(msg);
}

/// Exactly `weight` nonzero positions chosen by a partial Fisher-Yates
/// shuffle, each with a uniform nonzero value.
inline std::vector<Fe> random_error(std::size_t n, unsigned q, std::size_t weight, std::mt19937_64& rng) {
    if (weight > n) throw std::invalid_argument("error weight exceeds length");
    std::vector<std::size_t> idx(n);
    for (std::size_t j = 0; j < n; ++j) idx[j] = j;
    std::vector<Fe> e(n, Fe{0});
    std::uniform_int_distribution<unsigned> nz(1, q - 1);
    for (std::size_t t = 0; t < weight; ++t) {
        std::uniform_int_distribution<std::size_t> pick(t, n - 1);
        std::swap(idx[t], idx[pick(rng)]);
        e[idx[t]] = Fe{nz(rng)};
    }
    return e;
}

/// Simulation against prebuilt code and sets (they must match cfg).
inline SimReport run_sim(const SimConfig& cfg, const GrassmannCode& code, std::span<const OrthogonalSet> sets) {
    if (code.l() != cfg.l || code.m() != cfg.m || code.field().size() != cfg.q)
        throw std::invalid_argument("prebuilt code does not match the simulation config");
    const std::size_t n = code.length();
    validate(cfg, n);
    const Field& F = code.field();
    SimReport rep;
    rep.seed = cfg.seed;
    rep.l = cfg.l;
    rep.m = cfg.m;
    rep.q = cfg.q;
    rep.n = n;
    rep.k = code.dimension();
    rep.d = code.params().d;
    rep.J = orthogonal_count(cfg.l, cfg.m, cfg.q);
    rep.bound = static_cast<std::size_t>(rep.J / 2);
    std::uint64_t trial = 0;
    std::vector<Fe> w(n);
    for (int wt = cfg.weight_lo; wt <= cfg.weight_hi; ++wt) {
        SimRecord rec;
        rec.weight = wt;
        long double mults = 0;
        for (std::size_t t = 0; t < cfg.trials; ++t, ++trial) {
            std::mt19937_64 rng(cfg.seed + trial);
            const auto c = random_codeword(code, rng);
            const auto e = random_error(n, F.size(), static_cast<std::size_t>(wt), rng);
            for (std::size_t j = 0; j < n; ++j) w[j] = F.add(c[j], e[j]);
            const DecodeResult res = majority_decode(code, sets, w);
            mults += static_cast<long double>(res.multiplications);
            ++rec.trials;
            if (res.codeword == c)
                ++rec.successes;
            else if (code.is_codeword(res.codeword))
                ++rec.miscorrections;
            else
                ++rec.failures;
        }
        rec.mean_mults = static_cast<double>(mults / static_cast<long double>(rec.trials));
        rep.records.push_back(rec);
    }
    return rep;
}

inline SimReport run_sim(const SimConfig& cfg) {
    GrassmannCode code(field_of_order(cfg.q), cfg.l, cfg.m);
    validate(cfg, code.length());
    const auto sets = build_all_orthogonal_sets(code);
    return run_sim(cfg, code, sets);
}

inline void write_sim_csv(std::ostream& os, const SimReport& rep) {
    os << "weight,trials,successes,failures,miscorrections,mean_mults\n";
    for (const auto& r : rep.records)
        os << r.weight << ',' << r.trials << ',' << r.successes << ',' << r.failures << ',' << r.miscorrections << ','
           << std::fixed << std::setprecision(3) << r.mean_mults << std::defaultfloat << '\n';
}

inline void write_sim_text(std::ostream& os, const SimReport& rep) {
    os << "C(" << rep.l << "," << rep.m << ") over GF(" << rep.q << "): n=" << rep.n << " k=" << rep.k << " d=" << rep.d
       << " J=" << rep.J << " bound=" << rep.bound << " rng=" << rep.rng << " seed=" << rep.seed << '\n';
    for (const auto& r : rep.records) {
        os << "weight " << std::setw(3) << r.weight << ": " << r.successes << "/" << r.trials << " decoded";
        if (r.failures) os << ", " << r.failures << " failures";
        if (r.miscorrections) os << ", " << r.miscorrections << " miscorrections";
        os << ", mean mults " << std::fixed << std::setprecision(1) << r.mean_mults << std::defaultfloat << '\n';
    }
}

}  // namespace grassmann
