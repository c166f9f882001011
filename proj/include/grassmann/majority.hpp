#pragma once

// Parity checks orthogonal on a coordinate P, built level by level along
// strictly monotone paths from P, and the one-step majority logic decoder
// that consumes them.
//
// Level 1: for every line through P, the q points other than P are sorted
// and paired consecutively; each pair {Q, R} gives the weight-3 check on
// {P, Q, R}. With odd q the last point of each line stays unused.
//
// Level i: a level-(i-1) check w with tuples (r, s) is extended by every
// r_i < r_{i-1} and s_i > s_{i-1}. Each endpoint E of w gets the lines through
// E whose U contains U_{r_i - 1} but not U_{r_i} and whose W lies in
// W_{l+s_i} but not in W_{l+s_i-1}; there are q^{l - r_i + s_i - 1} of them,
// enumerated in (U, W) order. For line index a and pair index b, the weight-3
// check on the b-th pair of the a-th line at every endpoint is scaled to
// cancel w at that endpoint and added in, giving a check of weight 1 + 2^i.

#include <map>
#include <optional>
#include <sstream>

#include "grassmann/code.hpp"
#include "grassmann/paths.hpp"

namespace grassmann {

struct CheckTuples {
    std::vector<int> r, s;
    friend bool operator==(const CheckTuples&, const CheckTuples&) = default;
    friend auto operator<=>(const CheckTuples&, const CheckTuples&) = default;
};

struct Level {
    int i = 0;
    std::vector<ParityCheck> checks;
    std::vector<CheckTuples> tuples;  ///< path tuples shared by each check's non-anchor points
};

struct OrthogonalSet {
    std::size_t anchor = 0;
    std::vector<Level> levels;

    std::size_t size() const {
        std::size_t j = 0;
        for (const auto& lv : levels) j += lv.checks.size();
        return j;
    }

    std::size_t level_size(int i) const {
        for (const auto& lv : levels)
            if (lv.i == i) return lv.checks.size();
        return 0;
    }

    template <class Fn>
    void for_each_check(Fn&& fn) const {
        for (const auto& lv : levels)
            for (const auto& c : lv.checks) fn(c);
    }
};

namespace detail {

struct PairedLine {
    Line line;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Non-center points of a line, sorted by index, paired 1st-2nd, 3rd-4th, ...
inline PairedLine pair_line(const Grassmannian& g, const Line& line, std::size_t center) {
    std::vector<std::size_t> others;
    for (const auto& x : points_on_line(line)) {
        const std::size_t idx = g.index_of(x);
        if (idx != center) others.push_back(idx);
    }
    std::sort(others.begin(), others.end());
    PairedLine out{line, {}};
    for (std::size_t k = 0; k + 1 < others.size(); k += 2) out.pairs.emplace_back(others[k], others[k + 1]);
    return out;
}

inline std::vector<std::size_t> endpoints(const ParityCheck& c) {
    std::vector<std::size_t> e;
    for (const auto& t : c.terms)
        if (t.index != c.anchor) e.push_back(t.index);
    return e;
}

}  // namespace detail

inline Level build_level1(const GrassmannCode& code, std::size_t anchor, const CompleteFlag& flag) {
    const Grassmannian& g = code.points();
    const Subspace& p = g[anchor];
    if (!(p == flag.point())) throw std::invalid_argument("flag does not pass through the anchor");
    Level level;
    level.i = 1;
    for (const Line& line : lines_through(p)) {
        auto paired = detail::pair_line(g, line, anchor);
        if (paired.pairs.empty()) continue;
        const std::array<Subspace, 2> path{p, g[paired.pairs.front().first]};
        auto [r, s] = path_tuples(path, flag);
        for (const auto& [a, b] : paired.pairs) {
            level.checks.push_back(weight3_check(code, line, a, b, anchor));
            level.tuples.push_back({r, s});
        }
    }
    return level;
}

inline Level extend_level(const GrassmannCode& code, std::size_t anchor, const CompleteFlag& flag, const Level& prev, int i) {
    const Grassmannian& g = code.points();
    const Field& F = code.field();
    const int l = g.l(), m = g.m();
    const unsigned q = F.size();
    if (prev.i != i - 1) throw std::invalid_argument("extend_level needs the previous level");
    const std::size_t target_weight = 1 + (std::size_t{1} << i);
    Level level;
    level.i = i;

    for (std::size_t k = 0; k < prev.checks.size(); ++k) {
        const ParityCheck& omega = prev.checks[k];
        const CheckTuples& tup = prev.tuples[k];
        const auto ends = detail::endpoints(omega);
        std::vector<std::vector<Line>> through;
        through.reserve(ends.size());
        for (std::size_t e : ends) through.push_back(lines_through(g[e]));

        for (int ri = 1; ri < tup.r.back(); ++ri) {
            for (int si = tup.s.back() + 1; si <= m - l; ++si) {
                const BigInt expected = ipow(q, static_cast<unsigned long>(l - ri + si - 1));
                // Per endpoint: the qualifying lines with their pairings.
                std::vector<std::vector<detail::PairedLine>> per_end(ends.size());
                for (std::size_t e = 0; e < ends.size(); ++e) {
                    for (const Line& line : through[e]) {
                        if (!line.U.contains(flag.u(ri - 1)) || line.U.contains(flag.u(ri))) continue;
                        if (!flag.w(si).contains(line.W) || flag.w(si - 1).contains(line.W)) continue;
                        per_end[e].push_back(detail::pair_line(g, line, ends[e]));
                    }
                    if (BigInt(per_end[e].size()) != expected) {
                        std::ostringstream msg;
                        msg << "endpoint " << ends[e] << " has " << per_end[e].size() << " extension lines for (r,s)+("
                            << ri << "," << si << "), expected " << expected;
                        throw InvariantViolation(msg.str());
                    }
                }
                CheckTuples ext = tup;
                ext.r.push_back(ri);
                ext.s.push_back(si);
                const std::size_t nlines = per_end.empty() ? 0 : per_end.front().size();
                for (std::size_t a = 0; a < nlines; ++a) {
                    for (std::size_t b = 0; b < q / 2; ++b) {
                        std::map<std::size_t, Fe> eta;
                        for (const auto& t : omega.terms) eta[t.index] = t.coeff;
                        for (std::size_t e = 0; e < ends.size(); ++e) {
                            const auto& pl = per_end[e][a];
                            const auto [x, y] = pl.pairs.at(b);
                            const ParityCheck w3 = weight3_check(code, pl.line, x, y, ends[e]);
                            const Fe scale = F.neg(eta.at(ends[e]));
                            for (const auto& t : w3.terms) {
                                Fe& slot = eta[t.index];
                                slot = F.add(slot, F.mul(scale, t.coeff));
                            }
                        }
                        ParityCheck out;
                        out.anchor = anchor;
                        for (const auto& [idx, c] : eta)
                            if (!c.is_zero()) out.terms.push_back({idx, c});
                        if (out.weight() != target_weight) {
                            std::ostringstream msg;
                            msg << "level-" << i << " check has weight " << out.weight() << ", expected " << target_weight
                                << " (extension lines of distinct endpoints intersect)";
                            throw InvariantViolation(msg.str());
                        }
                        level.checks.push_back(std::move(out));
                        level.tuples.push_back(ext);
                    }
                }
            }
        }
    }
    return level;
}

/// Every failed property of a built set, as human-readable lines; empty if sound.
inline std::vector<std::string> audit_orthogonal_set(const GrassmannCode& code, const OrthogonalSet& set) {
    const Grassmannian& g = code.points();
    const int l = g.l(), m = g.m();
    const unsigned q = code.field().size();
    const Subspace& p = g[set.anchor];
    const CompleteFlag flag = standard_flag(p);
    std::vector<std::string> problems;
    auto fail = [&](std::string s) {
        if (problems.size() < 50) problems.push_back(std::move(s));
    };

    std::vector<int> hits(g.size(), 0);
    for (const Level& lv : set.levels) {
        const std::size_t target = 1 + (std::size_t{1} << lv.i);
        std::map<CheckTuples, std::size_t> census;
        for (std::size_t k = 0; k < lv.checks.size(); ++k) {
            const ParityCheck& c = lv.checks[k];
            const std::string tag = "level " + std::to_string(lv.i) + " check " + std::to_string(k);
            if (c.anchor != set.anchor) fail(tag + ": wrong anchor");
            auto a = c.coeff(set.anchor);
            if (!a || *a != code.field().one()) fail(tag + ": anchor coefficient is not 1");
            if (c.weight() != target) fail(tag + ": weight " + std::to_string(c.weight()));
            if (!annihilates(code.generator(), c)) fail(tag + ": not a dual codeword");
            for (const Term& t : c.terms) {
                if (t.index == set.anchor) continue;
                ++hits[t.index];
                if (injection_distance(p, g[t.index]) != lv.i) {
                    fail(tag + ": support point " + std::to_string(t.index) + " off the level sphere");
                    continue;
                }
                const JumpConstants jc = jump_constants(g[t.index], flag);
                CheckTuples own;
                for (int gmm : jc.gamma) own.r.push_back(gmm + 1);
                own.s = jc.delta;
                if (!(own == lv.tuples[k])) fail(tag + ": support point " + std::to_string(t.index) + " has different tuples");
            }
            ++census[lv.tuples[k]];
        }
        if (BigInt(lv.checks.size()) != level_count(l, m, q, lv.i))
            fail("level " + std::to_string(lv.i) + ": " + std::to_string(lv.checks.size()) + " checks, expected " +
                 level_count(l, m, q, lv.i).str());
        std::size_t expected_keys = 0;
        for (auto r : increasing_tuples(lv.i, 1, l)) {
            std::reverse(r.begin(), r.end());
            for (const auto& s : increasing_tuples(lv.i, 1, m - l)) {
                const BigInt want = census_count(l, q, r, s);
                auto it = census.find(CheckTuples{r, s});
                const std::size_t have = it == census.end() ? 0 : it->second;
                if (want > 0) ++expected_keys;
                if (BigInt(have) != want) fail("level " + std::to_string(lv.i) + ": census mismatch for one (r,s) pair");
            }
        }
        if (census.size() != expected_keys) fail("level " + std::to_string(lv.i) + ": checks with non-monotone tuples");
    }
    for (std::size_t j = 0; j < hits.size(); ++j)
        if (hits[j] > 1) fail("coordinate " + std::to_string(j) + " appears in " + std::to_string(hits[j]) + " checks");
    return problems;
}

/// The family orthogonal on coordinate `anchor`, levels 1..max_level
/// (all l levels when max_level < 0), audited before return.
inline OrthogonalSet build_orthogonal_set(const GrassmannCode& code, std::size_t anchor, int max_level = -1) {
    const int l = code.l();
    int top = max_level < 0 ? l : std::min(max_level, l);
    if (l == 0 || l == code.m()) top = 0;  // a single point: no lines, no checks
    const CompleteFlag flag = standard_flag(code.points()[anchor]);
    OrthogonalSet set;
    set.anchor = anchor;
    if (top >= 1) set.levels.push_back(build_level1(code, anchor, flag));
    for (int i = 2; i <= top; ++i) set.levels.push_back(extend_level(code, anchor, flag, set.levels.back(), i));
    auto problems = audit_orthogonal_set(code, set);
    if (!problems.empty()) throw InvariantViolation("orthogonal set on " + std::to_string(anchor) + ": " + problems.front());
    return set;
}

inline std::vector<OrthogonalSet> build_all_orthogonal_sets(const GrassmannCode& code, int max_level = -1) {
    std::vector<OrthogonalSet> sets;
    sets.reserve(code.length());
    for (std::size_t j = 0; j < code.length(); ++j) sets.push_back(build_orthogonal_set(code, j, max_level));
    return sets;
}

/// Number of distinct coordinates in the union of supports.
inline BigInt coverage_count(const OrthogonalSet& set) {
    std::set<std::size_t> seen{set.anchor};
    set.for_each_check([&](const ParityCheck& c) {
        for (const auto& t : c.terms) seen.insert(t.index);
    });
    return BigInt(seen.size());
}

/// Stacked-row form: anchor column all ones, every other column weight <= 1.
inline bool is_orthogonal_on_anchor(const OrthogonalSet& set, const Field& F, std::size_t n) {
    std::vector<int> col(n, 0);
    bool ok = true;
    set.for_each_check([&](const ParityCheck& c) {
        auto a = c.coeff(set.anchor);
        if (!a || *a != F.one()) ok = false;
        for (const auto& t : c.terms)
            if (t.index != set.anchor && !t.coeff.is_zero() && ++col.at(t.index) > 1) ok = false;
    });
    return ok;
}

struct Vote {
    std::size_t coordinate = 0;
    Fe estimate;             ///< estimated error value at this coordinate
    std::size_t votes = 0;   ///< checks agreeing with the most common nonzero syndrome
    std::size_t checks = 0;  ///< J for this coordinate
};

struct DecodeResult {
    std::vector<Fe> codeword;
    std::vector<Fe> error;
    std::vector<Vote> votes;
    std::uint64_t multiplications = 0;
};

/// Vote at one coordinate: every check in the set yields S = sum_a w_a omega_a;
/// the error estimate is the nonzero value taken by strictly more than J/2
/// checks, else 0. Multiplications by non-anchor coefficients are added to `mults`.
inline Vote majority_vote(const Field& F, const OrthogonalSet& set, std::span<const Fe> w, std::uint64_t& mults) {
    std::vector<std::size_t> tally(F.size(), 0);
    std::size_t total = 0;
    set.for_each_check([&](const ParityCheck& c) {
        Fe s = F.zero();
        for (const Term& t : c.terms) {
            if (t.index == set.anchor) {
                s = F.add(s, w[t.index]);
            } else {
                s = F.add(s, F.mul(w[t.index], t.coeff));
                ++mults;
            }
        }
        ++tally[s.value];
        ++total;
    });
    Vote v{set.anchor, F.zero(), 0, total};
    for (unsigned a = 1; a < F.size(); ++a)
        if (tally[a] > v.votes) {
            v.votes = tally[a];
            if (2 * tally[a] > total) v.estimate = Fe{a};
        }
    return v;
}

/// One-step majority logic over every coordinate, all votes taken on w; the
/// output is w - e.
inline DecodeResult majority_decode(const GrassmannCode& code, std::span<const OrthogonalSet> sets, std::span<const Fe> w) {
    const Field& F = code.field();
    const std::size_t n = code.length();
    if (w.size() != n) throw std::invalid_argument("received word has length " + std::to_string(w.size()) + ", expected " + std::to_string(n));
    if (sets.size() != n) throw std::invalid_argument("need one orthogonal set per coordinate");
    for (Fe x : w)
        if (x.value >= F.size()) throw std::invalid_argument("received symbol outside the field");
    DecodeResult res;
    res.codeword.resize(n);
    res.error.resize(n);
    res.votes.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (sets[j].anchor != j) throw std::invalid_argument("orthogonal sets must be ordered by anchor");
        const Vote v = majority_vote(F, sets[j], w, res.multiplications);
        res.error[j] = v.estimate;
        res.codeword[j] = F.sub(w[j], v.estimate);
        res.votes[j] = v;
    }
    return res;
}

struct RatioReport {
    BigInt J, d;
    long double ratio = 0;  ///< J / d
    Rational M;             ///< M_q(l)
    long double limit = 0;  ///< M_q(l) / 2^l, the m -> infinity limit of J/d
};

inline RatioReport ratio_report(int l, int m, unsigned q) {
    RatioReport r;
    r.J = orthogonal_count(l, m, q);
    r.d = code_params(l, m, q).d;
    r.ratio = static_cast<long double>(Rational(r.J, r.d));
    r.M = asymptotic_factor(q, l);
    r.limit = static_cast<long double>(r.M / Rational(ipow(2, l)));
    return r;
}

}  // namespace grassmann
