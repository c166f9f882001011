#pragma once

// JSON forms of checks, orthogonal sets, path certificates and reports.

#include <json.hpp>

#include "grassmann/sim.hpp"

namespace grassmann {

using json = nlohmann::ordered_json;

/// Integer when it fits in 64 bits, decimal string otherwise.
inline json big_json(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return json(static_cast<std::uint64_t>(v));
    return json(v.str());
}

inline json to_json(const ParityCheck& c) {
    json terms = json::array();
    for (const auto& t : c.terms) terms.push_back(json::array({t.index, t.coeff.value}));
    return json{{"anchor", c.anchor}, {"terms", std::move(terms)}};
}

inline ParityCheck check_from_json(const json& j, const Field& F, std::size_t n) {
    ParityCheck c;
    c.anchor = j.at("anchor").get<std::size_t>();
    if (c.anchor >= n) throw std::invalid_argument("check anchor out of range");
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2) throw std::invalid_argument("check term must be [index, coeff]");
        const auto idx = t[0].get<std::size_t>();
        const auto v = t[1].get<unsigned>();
        if (idx >= n) throw std::invalid_argument("check term index out of range");
        c.terms.push_back({idx, F.element(v)});
    }
    std::sort(c.terms.begin(), c.terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    for (std::size_t k = 1; k < c.terms.size(); ++k)
        if (c.terms[k].index == c.terms[k - 1].index) throw std::invalid_argument("check has a repeated index");
    return c;
}

inline json to_json(const OrthogonalSet& s) {
    json levels = json::array();
    for (const auto& lv : s.levels) {
        json checks = json::array();
        for (const auto& c : lv.checks) checks.push_back(to_json(c));
        levels.push_back(json{{"i", lv.i}, {"checks", std::move(checks)}});
    }
    return json{{"anchor", s.anchor}, {"levels", std::move(levels)}, {"J", s.size()}};
}

/// Reads the checks back; the per-check path tuples are not part of the file.
inline OrthogonalSet set_from_json(const json& j, const Field& F, std::size_t n) {
    OrthogonalSet s;
    s.anchor = j.at("anchor").get<std::size_t>();
    if (s.anchor >= n) throw std::invalid_argument("set anchor out of range");
    for (const auto& lj : j.at("levels")) {
        Level lv;
        lv.i = lj.at("i").get<int>();
        for (const auto& cj : lj.at("checks")) {
            lv.checks.push_back(check_from_json(cj, F, n));
            if (lv.checks.back().anchor != s.anchor) throw std::invalid_argument("check anchor differs from set anchor");
        }
        s.levels.push_back(std::move(lv));
    }
    if (j.contains("J") && j.at("J").get<std::size_t>() != s.size()) throw std::invalid_argument("set J does not match its checks");
    return s;
}

inline json path_json(const Grassmannian& g, const Path& p) {
    json pts = json::array();
    for (const auto& x : p.points) pts.push_back(g.index_of(x));
    return json{{"target", g.index_of(p.points.back())}, {"points", std::move(pts)}, {"r", p.r}, {"s", p.s}};
}

inline json to_json(const SimReport& r) {
    json recs = json::array();
    for (const auto& x : r.records)
        recs.push_back(json{{"weight", x.weight},
                            {"trials", x.trials},
                            {"successes", x.successes},
                            {"failures", x.failures},
                            {"miscorrections", x.miscorrections},
                            {"mean_mults", x.mean_mults}});
    return json{{"rng", r.rng}, {"seed", r.seed}, {"q", r.q},         {"l", r.l},
                {"m", r.m},     {"n", r.n},       {"k", r.k},         {"d", big_json(r.d)},
                {"J", big_json(r.J)}, {"bound", r.bound}, {"records", std::move(recs)}};
}

inline std::string rational_text(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

}  // namespace grassmann
