#pragma once

// Self-check suites run by `grassmann verify`. Each suite is exhaustive where
// the instance is small and samples anchors or pairs otherwise; the detail
// lines say which.
//
// Tier 1: counting, plucker, lines. Tier 2: dual, paths. Tier 3: orthogonal,
// decoder.

#include <chrono>
#include <functional>
#include <random>

#include "grassmann/sim.hpp"

namespace grassmann {

struct SuiteResult {
    std::string name;
    int tier = 1;
    bool passed = true;
    double seconds = 0;
    std::vector<std::string> notes;     ///< informational lines
    std::vector<std::string> failures;  ///< first failed properties, one per line
    std::size_t failure_count = 0;
};

struct VerifyOptions {
    int tier = 3;
    int max_level = -1;  ///< orthogonal levels to build; < 0 means all
    std::uint64_t seed = 1;
    bool inject_fault = false;  ///< negative control: corrupt one generator entry
};

struct VerifyContext {
    const GrassmannCode& code;
    Mat generator;  ///< copy under test, possibly corrupted
    VerifyOptions opt;
};

namespace detail {

/// Anchors to test: all when n is small, else a spread sample including 0 and n-1.
inline std::vector<std::size_t> sample_anchors(std::size_t n, std::size_t full_up_to, std::size_t count) {
    std::vector<std::size_t> a;
    if (n <= full_up_to) {
        for (std::size_t j = 0; j < n; ++j) a.push_back(j);
        return a;
    }
    for (std::size_t t = 0; t < count; ++t) a.push_back(t * (n - 1) / (count - 1));
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline void expect(SuiteResult& r, bool ok, const std::string& what) {
    if (ok) return;
    r.passed = false;
    ++r.failure_count;
    if (r.failures.size() < 40) r.failures.push_back(what);
}

inline void suite_counting(const VerifyContext& ctx, SuiteResult& r) {
    const auto& g = ctx.code.points();
    const int l = g.l(), m = g.m();
    const unsigned q = g.field().size();
    expect(r, BigInt(g.size()) == gauss_binom(m, l, q), "enumerated point count differs from the Gaussian binomial");
    const auto anchors = sample_anchors(g.size(), 0, 2);
    for (std::size_t a : anchors) {
        const Subspace& p = g[a];
        std::vector<std::size_t> counts(static_cast<std::size_t>(l) + 1, 0);
        for (const auto& x : g.points()) ++counts[injection_distance(p, x)];
        std::size_t total = 0;
        for (int i = 0; i <= l; ++i) {
            total += counts[i];
            expect(r, BigInt(counts[i]) == sphere_size(l, m, q, i),
                   "sphere of radius " + std::to_string(i) + " around " + std::to_string(a) + " has the wrong size");
        }
        expect(r, total == g.size(), "spheres do not partition the points");
        const CompleteFlag flag = standard_flag(p);
        if (m >= 2 * l) {
            for (int i = 0; i <= l; ++i) {
                const FlagSeq fs = closure_flag(flag, i);
                const auto sv = schubert_variety(g, fs);
                expect(r, sv == closure(g, p, i), "closure of radius " + std::to_string(i) + " is not its Schubert variety");
                expect(r, BigInt(sv.size()) == schubert_size(fs.dimension_sequence(), l, m, q),
                       "Schubert variety size differs from the alpha-sum formula");
            }
        }
    }
    for (int i = 1; i <= l; ++i)
        expect(r, sum_identity_check(l, m, q, i), "path-count identity fails at i=" + std::to_string(i));
    r.notes.push_back("spheres checked around " + std::to_string(anchors.size()) + " anchors");
    if (m < 2 * l) r.notes.push_back("closure flags skipped: m < 2l");
}

inline void suite_plucker(const VerifyContext& ctx, SuiteResult& r) {
    const auto& code = ctx.code;
    const auto& g = code.points();
    const int l = g.l(), m = g.m();
    const unsigned q = g.field().size();
    const CodeParams want = code_params(l, m, q);
    expect(r, BigInt(code.length()) == want.n, "n differs from the Gaussian binomial");
    expect(r, BigInt(code.dimension()) == want.k, "k differs from the binomial coefficient");
    expect(r, rank(ctx.generator) == code.dimension(), "Plücker vectors do not span the full space");
    std::unordered_set<std::string> cols;
    bool columns_match = true;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto v = plucker(g[j], code.row_labels());
        std::string key;
        for (std::size_t a = 0; a < v.coords.size(); ++a) {
            key.push_back(static_cast<char>(v.coords[a].value));
            if (ctx.generator(a, j) != v.coords[a]) columns_match = false;
        }
        expect(r, cols.insert(key).second, "Plücker map is not injective at point " + std::to_string(j));
    }
    expect(r, columns_match, "generator columns differ from the Plücker vectors");
    const long double work = std::pow(static_cast<long double>(q), static_cast<long double>(code.dimension())) *
                             static_cast<long double>(code.length() * code.dimension());
    if (work <= 2e8L) {
        const std::size_t dmin = min_weight_bruteforce(code);
        expect(r, BigInt(dmin) == want.d, "brute-force minimum distance " + std::to_string(dmin) + " differs from d");
        r.notes.push_back("minimum distance confirmed by enumerating all messages");
    } else {
        r.notes.push_back("minimum distance taken from the formula (message space too large)");
    }
}

inline void suite_lines(const VerifyContext& ctx, SuiteResult& r) {
    const auto& g = ctx.code.points();
    const int l = g.l(), m = g.m();
    const unsigned q = g.field().size();
    if (l == 0 || l == m) {
        r.notes.push_back("no lines in a one-point Grassmannian");
        return;
    }
    for (std::size_t a : sample_anchors(g.size(), 0, 3)) {
        const Subspace& p = g[a];
        const auto lines = lines_through(p);
        expect(r, BigInt(lines.size()) == gauss_binom(l, 1, q) * gauss_binom(m - l, 1, q), "wrong number of lines through a point");
        std::vector<int> hit(g.size(), 0);
        for (const auto& line : lines) {
            const auto pts = points_on_line(line);
            expect(r, pts.size() == q + 1, "a line does not have q+1 points");
            for (const auto& x : pts)
                if (!(x == p)) ++hit[g.index_of(x)];
        }
        for (std::size_t k = 0; k < g.size(); ++k) {
            const int d = injection_distance(p, g[k]);
            const bool by_sum = dim_sum(p, g[k]) == static_cast<std::size_t>(l + 1);
            expect(r, (hit[k] == 1) == (d == 1) && hit[k] <= 1, "collinearity differs from distance 1 at " + std::to_string(k));
            expect(r, (d == 1) == by_sum, "dim(P+Q) = l+1 differs from distance 1 at " + std::to_string(k));
        }
        // Line intersection against point sets, over lines through P and one neighbor.
        std::vector<Line> pool = lines;
        const auto far = sphere(g, p, 1);
        if (!far.empty()) {
            const auto more = lines_through(g[far.back()]);
            pool.insert(pool.end(), more.begin(), more.end());
        }
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        if (pool.size() > 120) pool.erase(pool.begin() + 120, pool.end());
        std::vector<std::vector<Subspace>> on;
        for (const auto& x : pool) on.push_back(points_on_line(x));
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                std::vector<Subspace> common;
                std::set_intersection(on[i].begin(), on[i].end(), on[j].begin(), on[j].end(), std::back_inserter(common));
                const auto got = lines_intersect(pool[i], pool[j]);
                const bool ok = common.size() <= 1 && (got.has_value() == (common.size() == 1)) && (!got || *got == common[0]);
                expect(r, ok, "line intersection differs from point-set intersection");
            }
    }
}

inline void suite_dual(const VerifyContext& ctx, SuiteResult& r) {
    const auto& code = ctx.code;
    const auto& g = code.points();
    if (g.l() == 0 || g.l() == g.m()) {
        r.notes.push_back("no lines, dual distance check skipped");
        return;
    }
    expect(r, dual_min_distance_check(ctx.generator, g), "dual minimum distance is not 3");
    for (const auto& line : lines_through(g[0])) {
        const auto pts = points_on_line(line);
        std::vector<std::size_t> idx;
        for (const auto& x : pts) idx.push_back(g.index_of(x));
        std::sort(idx.begin(), idx.end());
        try {
            const auto c = weight3_check(code, line, idx[1], idx[2], idx[0]);
            expect(r, annihilates(ctx.generator, c), "weight-3 line check is not a dual codeword");
        } catch (const std::exception& e) {
            expect(r, false, std::string("weight-3 line check: ") + e.what());
        }
    }
    if (g.size() <= 160) {
        // Every weight-3 dual codeword lies on a line.
        std::size_t found = 0;
        const std::size_t n = g.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c) {
                    const std::array<std::size_t, 3> cols{a, b, c};
                    const Mat ker = kernel(select_columns(ctx.generator, cols));
                    bool full = false;
                    for (std::size_t t = 0; t < ker.rows() && !full; ++t) {
                        auto v = ker.row(t);
                        full = !v[0].is_zero() && !v[1].is_zero() && !v[2].is_zero();
                    }
                    if (!full) continue;
                    ++found;
                    const bool collinear = dim_intersection(intersect(g[a], g[b]), g[c]) == static_cast<std::size_t>(g.l() - 1) &&
                                           dim_sum(sum(g[a], g[b]), g[c]) == static_cast<std::size_t>(g.l() + 1);
                    expect(r, collinear, "weight-3 dual codeword off a line");
                }
        r.notes.push_back("exhaustive 3-subset search found " + std::to_string(found) + " weight-3 dual supports");
    }
}

inline bool nested(const Subspace& p, const Subspace& q, std::span<const Subspace> pts) {
    for (std::size_t t = 0; t + 1 < pts.size(); ++t) {
        if (!intersect(p, pts[t]).contains(intersect(p, pts[t + 1]))) return false;
        if (!sum(p, pts[t + 1]).contains(sum(p, pts[t]))) return false;
    }
    const Subspace lo = intersect(p, q), hi = sum(p, q);
    for (const auto& x : pts)
        if (!x.contains(lo) || !hi.contains(x)) return false;
    return true;
}

inline void suite_paths(const VerifyContext& ctx, SuiteResult& r) {
    const auto& g = ctx.code.points();
    if (g.l() == 0 || g.l() == g.m()) {
        r.notes.push_back("no paths in a one-point Grassmannian");
        return;
    }
    const Subspace& p = g[0];
    const CompleteFlag flag = standard_flag(p);
    const bool oracle = g.size() <= 1500 && g.l() <= 3;
    std::size_t checked = 0;
    for (std::size_t k = 1; k < g.size(); ++k) {
        const Subspace& q = g[k];
        try {
            const Path path = canonical_path(q, flag);
            const JumpConstants jc = jump_constants(q, flag);
            std::vector<int> g1;
            for (int x : jc.gamma) g1.push_back(x + 1);
            expect(r, path.r == g1 && path.s == jc.delta, "canonical tuples differ from the jump constants at " + std::to_string(k));
            expect(r, strictly_monotone(path.r, path.s), "canonical tuples not strictly monotone at " + std::to_string(k));
            expect(r, nested(p, q, path.points), "canonical path breaks the nesting property at " + std::to_string(k));
            if (oracle) {
                const auto all = enumerate_paths(g, q, flag);
                std::size_t mono = 0;
                bool same = false;
                for (const auto& x : all) {
                    expect(r, nested(p, q, x.points), "an enumerated path breaks the nesting property");
                    if (strictly_monotone(x.r, x.s)) {
                        ++mono;
                        same = x.points == path.points;
                    }
                }
                expect(r, mono == 1 && same, "strictly monotone path is not unique or not canonical at " + std::to_string(k));
            }
            ++checked;
        } catch (const std::exception& e) {
            expect(r, false, "path at " + std::to_string(k) + ": " + e.what());
        }
    }
    std::mt19937_64 rng(ctx.opt.seed);
    for (int f = 0; f < 5; ++f) {
        const CompleteFlag rf = random_flag(p, rng);
        for (std::size_t k = 1; k < g.size(); k += (g.size() > 2000 ? 7 : 1)) {
            try {
                const Path path = canonical_path(g[k], rf);
                expect(r, is_path(path.points) && strictly_monotone(path.r, path.s), "random-flag canonical path invalid");
            } catch (const std::exception& e) {
                expect(r, false, std::string("random-flag canonical path: ") + e.what());
            }
        }
    }
    r.notes.push_back(std::to_string(checked) + " targets checked" + (oracle ? " with brute-force path enumeration" : ""));
}

inline void suite_orthogonal(const VerifyContext& ctx, SuiteResult& r, std::vector<OrthogonalSet>* keep) {
    const auto& code = ctx.code;
    const auto& g = code.points();
    const int l = g.l(), m = g.m();
    const unsigned q = g.field().size();
    const int top = ctx.opt.max_level < 0 ? l : std::min(ctx.opt.max_level, l);
    BigInt want_j = 0, want_cov = 1;
    for (int i = 1; i <= top; ++i) {
        want_j += level_count(l, m, q, i);
        want_cov += ipow(2, static_cast<unsigned long>(i)) * level_count(l, m, q, i);
    }
    const auto anchors = sample_anchors(g.size(), 400, 4);
    for (std::size_t a : anchors) {
        try {
            OrthogonalSet s = build_orthogonal_set(code, a, top);
            expect(r, BigInt(s.size()) == want_j, "set on " + std::to_string(a) + " has J=" + std::to_string(s.size()));
            expect(r, is_orthogonal_on_anchor(s, code.field(), g.size()), "set on " + std::to_string(a) + " is not orthogonal");
            bool dual = true;
            s.for_each_check([&](const ParityCheck& c) { dual = dual && annihilates(ctx.generator, c); });
            expect(r, dual, "set on " + std::to_string(a) + " has a check outside the dual code");
            expect(r, coverage_count(s) == want_cov, "coverage on " + std::to_string(a) + " differs from the formula");
            if (keep) keep->push_back(std::move(s));
        } catch (const std::exception& e) {
            expect(r, false, "set on " + std::to_string(a) + ": " + e.what());
        }
    }
    if (top == l && q % 2 == 0) expect(r, want_cov == BigInt(g.size()), "even-q coverage is not the whole point set");
    r.notes.push_back("J=" + want_j.str() + " coverage=" + want_cov.str() + " of n=" + std::to_string(g.size()) + ", " +
                      std::to_string(anchors.size()) + (anchors.size() == g.size() ? " anchors (all)" : " sampled anchors"));
}

inline void suite_decoder(const VerifyContext& ctx, SuiteResult& r, const std::vector<OrthogonalSet>& sets) {
    const auto& code = ctx.code;
    const Field& F = code.field();
    const std::size_t n = code.length();
    std::size_t j = 0;
    for (const auto& s : sets) j = std::max(j, s.size());
    const std::size_t bound = j / 2;
    std::mt19937_64 rng(ctx.opt.seed);
    const bool full = sets.size() == n;
    std::size_t trials = 0;
    const std::size_t per_weight = full ? 40 : 20;
    for (std::size_t wt = 0; wt <= bound && wt <= n; ++wt) {
        for (std::size_t t = 0; t < per_weight; ++t, ++trials) {
            const auto c = random_codeword(code, rng);
            const auto e = random_error(n, F.size(), wt, rng);
            std::vector<Fe> w(n);
            for (std::size_t k = 0; k < n; ++k) w[k] = F.add(c[k], e[k]);
            if (full) {
                const auto res = majority_decode(code, sets, w);
                expect(r, res.codeword == c, "decoder failed at weight " + std::to_string(wt));
                expect(r, res.multiplications <= static_cast<std::uint64_t>(n) * (n - 1), "multiplication count above n(n-1)");
            } else {
                std::uint64_t mults = 0;
                for (const auto& s : sets) {
                    const Vote v = majority_vote(F, s, w, mults);
                    expect(r, v.estimate == e[s.anchor], "vote wrong at coordinate " + std::to_string(s.anchor));
                }
            }
        }
    }
    r.notes.push_back(std::to_string(trials) + " random words up to weight " + std::to_string(bound) +
                      (full ? ", full decode" : ", votes at sampled coordinates"));
}

}  // namespace detail

inline std::vector<SuiteResult> run_verify(const GrassmannCode& code, const VerifyOptions& opt) {
    VerifyContext ctx{code, code.generator(), opt};
    if (opt.inject_fault && ctx.generator.rows() > 0 && ctx.generator.cols() > 0) {
        const Field& F = code.field();
        ctx.generator(0, 0) = F.add(ctx.generator(0, 0), F.one());
    }
    std::vector<SuiteResult> out;
    std::vector<OrthogonalSet> sets;
    auto run = [&](const char* name, int tier, const std::function<void(SuiteResult&)>& fn) {
        if (tier > opt.tier) return;
        SuiteResult r;
        r.name = name;
        r.tier = tier;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(r);
        } catch (const std::exception& e) {
            r.passed = false;
            ++r.failure_count;
            r.failures.push_back(std::string("aborted: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    run("counting", 1, [&](SuiteResult& r) { detail::suite_counting(ctx, r); });
    run("plucker", 1, [&](SuiteResult& r) { detail::suite_plucker(ctx, r); });
    run("lines", 1, [&](SuiteResult& r) { detail::suite_lines(ctx, r); });
    run("dual", 2, [&](SuiteResult& r) { detail::suite_dual(ctx, r); });
    run("paths", 2, [&](SuiteResult& r) { detail::suite_paths(ctx, r); });
    run("orthogonal", 3, [&](SuiteResult& r) { detail::suite_orthogonal(ctx, r, &sets); });
    run("decoder", 3, [&](SuiteResult& r) {
        if (code.l() == 0 || code.l() == code.m()) {
            r.notes.push_back("no parity checks exist");
            return;
        }
        if (sets.size() != code.length() && code.length() <= 400) sets = build_all_orthogonal_sets(code, opt.max_level);
        if (sets.empty()) throw std::runtime_error("no orthogonal sets available");
        detail::suite_decoder(ctx, r, sets);
    });
    return out;
}

}  // namespace grassmann
