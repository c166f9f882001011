#pragma once

// Paths from a fixed point P relative to a complete flag through P.
//
// The flag is 0 = U_0 < U_1 < ... < U_l = P = W_l < W_{l+1} < ... < W_m = V.
// For Q at distance i from P, a path is P = Q_0, Q_1, ..., Q_i = Q with
// dist(P, Q_t) = t, dist(Q_t, Q_{t+1}) = 1 and dist(Q_t, Q) = i - t. Each path
// carries the tuples r_t = max{j : U_{j-1} <= Q_t}, s_t = min{j : Q_t <= W_{l+j}}.
// Exactly one path has both tuples strictly monotone; it is built directly by
// canonical_path from the jump positions of Q against the flag.

#include <functional>
#include <random>
#include <vector>

#include "grassmann/geometry.hpp"

namespace grassmann {

class CompleteFlag {
public:
    /// `inner[j]` = U_j for j = 0..l, `outer[j]` = W_{l+j} for j = 0..m-l.
    CompleteFlag(std::vector<Subspace> inner, std::vector<Subspace> outer)
        : inner_(std::move(inner)), outer_(std::move(outer)) {
        if (inner_.empty() || outer_.empty()) throw std::invalid_argument("complete flag needs both halves");
        if (!(inner_.back() == outer_.front())) throw std::invalid_argument("complete flag halves must meet at P");
        for (std::size_t j = 0; j < inner_.size(); ++j)
            if (inner_[j].dim() != j || (j && !inner_[j].contains(inner_[j - 1])))
                throw std::invalid_argument("inner half of the flag is not a chain of dimensions 0..l");
        const std::size_t l = inner_.size() - 1;
        for (std::size_t j = 0; j < outer_.size(); ++j)
            if (outer_[j].dim() != l + j || (j && !outer_[j].contains(outer_[j - 1])))
                throw std::invalid_argument("outer half of the flag is not a chain of dimensions l..m");
        if (outer_.back().dim() != outer_.back().ambient())
            throw std::invalid_argument("complete flag must end at the whole space");
    }

    const Subspace& point() const { return inner_.back(); }
    int l() const { return static_cast<int>(inner_.size()) - 1; }
    int m() const { return static_cast<int>(point().ambient()); }
    /// U_j, 0 <= j <= l.
    const Subspace& u(int j) const { return inner_.at(static_cast<std::size_t>(j)); }
    /// W_{l+j}, 0 <= j <= m-l.
    const Subspace& w(int j) const { return outer_.at(static_cast<std::size_t>(j)); }

private:
    std::vector<Subspace> inner_, outer_;
};

/// Flag from an ordered basis of P (rows) and ordered complement vectors.
inline CompleteFlag flag_from_bases(const Mat& p_basis, const Mat& complement) {
    const Field& F = p_basis.field();
    const std::size_t m = p_basis.cols();
    std::vector<Subspace> inner, outer;
    Mat acc(F, 0, m);
    inner.push_back(Subspace::span(acc));
    for (std::size_t r = 0; r < p_basis.rows(); ++r) {
        acc.append_row(p_basis.row(r));
        inner.push_back(Subspace::span(acc));
    }
    if (inner.back().dim() != p_basis.rows()) throw std::invalid_argument("flag basis rows are dependent");
    outer.push_back(inner.back());
    for (std::size_t r = 0; r < complement.rows(); ++r) {
        acc.append_row(complement.row(r));
        outer.push_back(Subspace::span(acc));
    }
    return CompleteFlag(std::move(inner), std::move(outer));
}

/// U_j = first j rows of P's rref basis; W_{l+j} adds e_c for the first j
/// non-pivot columns c in ascending order.
inline CompleteFlag standard_flag(const Subspace& p) {
    const Field& F = p.field();
    Mat comp(F, 0, p.ambient());
    std::vector<Fe> e(p.ambient());
    for (std::size_t c = 0; c < p.ambient(); ++c) {
        if (std::find(p.pivots().begin(), p.pivots().end(), c) != p.pivots().end()) continue;
        std::fill(e.begin(), e.end(), F.zero());
        e[c] = F.one();
        comp.append_row(e);
    }
    return flag_from_bases(p.basis(), comp);
}

/// Complete flag through P from a random ordered basis of P and random
/// complement vectors.
inline CompleteFlag random_flag(const Subspace& p, std::mt19937_64& rng) {
    const Field& F = p.field();
    const std::size_t l = p.dim(), m = p.ambient();
    std::uniform_int_distribution<unsigned> sym(0, F.size() - 1);
    Mat basis(F, 0, m);
    while (basis.rows() < l) {
        Mat c(F, l, l);
        for (std::size_t a = 0; a < l; ++a)
            for (std::size_t b = 0; b < l; ++b) c(a, b) = Fe{sym(rng)};
        if (rank(c) == l) basis = multiply(c, p.basis());
    }
    Mat comp(F, 0, m);
    Subspace cur = p;
    std::vector<Fe> v(m);
    while (cur.dim() < m) {
        for (auto& x : v) x = Fe{sym(rng)};
        if (cur.contains(v)) continue;
        comp.append_row(v);
        Mat b = cur.basis();
        b.append_row(v);
        cur = Subspace::span(std::move(b));
    }
    return flag_from_bases(basis, comp);
}

/// Flag whose Schubert variety is the closure of radius i:
/// A_j = U_{i+j} for j <= l-i, A_j = W_{m-l+j} afterwards.
inline FlagSeq closure_flag(const CompleteFlag& flag, int i) {
    const int l = flag.l(), m = flag.m();
    if (i < 0 || i > l) throw std::invalid_argument("closure_flag: need 0 <= i <= l");
    std::vector<Subspace> a;
    for (int j = 1; j <= l; ++j) {
        if (j <= l - i) {
            a.push_back(flag.u(i + j));
        } else {
            const int off = m - 2 * l + j;
            if (off < 0) throw std::invalid_argument("closure_flag: no superspace of the needed dimension");
            a.push_back(flag.w(off));
        }
    }
    return FlagSeq(std::move(a));
}

struct JumpConstants {
    std::vector<int> gamma;  ///< gamma_t = max{j : dim(Q + U_j) = l + i - t}
    std::vector<int> delta;  ///< delta_t = min{j : dim(Q cap W_{l+j}) = l - i + t}
};

inline JumpConstants jump_constants(const Subspace& q, const CompleteFlag& flag) {
    const int l = flag.l(), m = flag.m();
    const int i = injection_distance(flag.point(), q);
    if (i == 0) throw std::invalid_argument("jump constants need Q != P");
    std::vector<int> plus(l + 1), cap(m - l + 1);
    for (int j = 0; j <= l; ++j) plus[j] = static_cast<int>(dim_sum(q, flag.u(j)));
    for (int j = 0; j <= m - l; ++j) cap[j] = static_cast<int>(dim_intersection(q, flag.w(j)));
    JumpConstants jc;
    for (int t = 1; t <= i; ++t) {
        int g = -1;
        for (int j = 0; j <= l; ++j)
            if (plus[j] == l + i - t) g = j;
        int d = -1;
        for (int j = m - l; j >= 0; --j)
            if (cap[j] == l - i + t) d = j;
        if (g < 0 || d < 0) throw InvariantViolation("jump position missing for a point at distance " + std::to_string(i));
        jc.gamma.push_back(g);
        jc.delta.push_back(d);
    }
    for (int t = 1; t < i; ++t)
        if (!(jc.gamma[t] < jc.gamma[t - 1]) || !(jc.delta[t] > jc.delta[t - 1]))
            throw InvariantViolation("jump constants are not strictly monotone");
    if (jc.gamma.front() > l - 1 || jc.delta.front() < 1 || jc.delta.back() > m - l)
        throw InvariantViolation("jump constants out of range");
    return jc;
}

struct Path {
    std::vector<Subspace> points;  ///< Q_0 = P, ..., Q_i = Q
    std::vector<int> r, s;

    std::size_t length() const { return points.size() - 1; }
};

inline bool is_path(std::span<const Subspace> pts) {
    if (pts.size() < 2) return false;
    const std::size_t i = pts.size() - 1;
    const Subspace& p = pts.front();
    const Subspace& q = pts.back();
    if (injection_distance(p, q) != static_cast<int>(i)) return false;
    for (std::size_t t = 0; t < i; ++t) {
        if (injection_distance(p, pts[t]) != static_cast<int>(t)) return false;
        if (injection_distance(pts[t], pts[t + 1]) != 1) return false;
        if (injection_distance(pts[t], q) != static_cast<int>(i - t)) return false;
    }
    return true;
}

/// r/s tuples of a path; rejects sequences that are not paths from the flag's P.
inline std::pair<std::vector<int>, std::vector<int>> path_tuples(std::span<const Subspace> pts, const CompleteFlag& flag) {
    if (pts.empty() || !(pts.front() == flag.point())) throw std::invalid_argument("path must start at the flag's point");
    if (!is_path(pts)) throw std::invalid_argument("sequence is not a path");
    const int l = flag.l(), m = flag.m();
    std::vector<int> r, s;
    for (std::size_t t = 1; t < pts.size(); ++t) {
        int rt = 1;
        for (int j = 1; j <= l + 1; ++j)
            if (pts[t].contains(flag.u(j - 1))) rt = j;
        int st = -1;
        for (int j = m - l; j >= 0; --j)
            if (flag.w(j).contains(pts[t])) st = j;
        r.push_back(rt);
        s.push_back(st);
    }
    return {std::move(r), std::move(s)};
}

inline bool strictly_monotone(const std::vector<int>& r, const std::vector<int>& s) {
    for (std::size_t t = 1; t < r.size(); ++t)
        if (!(r[t] < r[t - 1]) || !(s[t] > s[t - 1])) return false;
    return true;
}

/// Q_t = ((Q_{t-1} cap Q) + U_{gamma_t}) + (W_{l+delta_t} cap Q).
inline Path canonical_path(const Subspace& q, const CompleteFlag& flag) {
    const JumpConstants jc = jump_constants(q, flag);
    Path path;
    path.points.push_back(flag.point());
    for (std::size_t t = 0; t < jc.gamma.size(); ++t) {
        const Subspace& prev = path.points.back();
        Subspace next = sum(sum(intersect(prev, q), flag.u(jc.gamma[t])), intersect(flag.w(jc.delta[t]), q));
        path.points.push_back(std::move(next));
    }
    if (!(path.points.back() == q) || !is_path(path.points)) throw InvariantViolation("canonical recursion did not produce a path");
    auto [r, s] = path_tuples(path.points, flag);
    path.r = std::move(r);
    path.s = std::move(s);
    return path;
}

inline constexpr std::size_t kPathOraclePointCap = 20'000;

/// Every path from the flag's P to Q, by brute force over the enumerated points.
/// Oracle scale only: distance <= 3 and at most kPathOraclePointCap points.
inline std::vector<Path> enumerate_paths(const Grassmannian& g, const Subspace& q, const CompleteFlag& flag) {
    const Subspace& p = flag.point();
    const int i = injection_distance(p, q);
    if (i > 3) throw ResourceLimit("enumerate_paths is limited to distance <= 3");
    if (g.size() > kPathOraclePointCap) throw ResourceLimit("enumerate_paths is limited to small Grassmannians");
    std::vector<int> dp(g.size()), dq(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        dp[k] = injection_distance(p, g[k]);
        dq[k] = injection_distance(q, g[k]);
    }
    std::vector<Path> out;
    if (i == 0) return out;
    std::vector<Subspace> cur{p};
    std::function<void(int)> rec = [&](int t) {
        if (t == i) {
            if (injection_distance(cur.back(), q) != 1) return;
            Path path;
            path.points = cur;
            path.points.push_back(q);
            auto [r, s] = path_tuples(path.points, flag);
            path.r = std::move(r);
            path.s = std::move(s);
            out.push_back(std::move(path));
            return;
        }
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (dp[k] != t || dq[k] != i - t) continue;
            if (injection_distance(cur.back(), g[k]) != 1) continue;
            cur.push_back(g[k]);
            rec(t + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

}  // namespace grassmann
