#pragma once

// Point-line geometry of G(l, m): Plücker coordinates, lines L(U, W),
// closures (balls in injection distance) and Schubert varieties.

#include <optional>
#include <vector>

#include "grassmann/subspace.hpp"

namespace grassmann {

/// Vector of all l x l minors in lexicographic I(l,m) order, scaled so the
/// first nonzero coordinate is 1.
struct PluckerVector {
    std::vector<Fe> coords;
    friend bool operator==(const PluckerVector&, const PluckerVector&) = default;
};

inline PluckerVector plucker(const Subspace& p, const std::vector<IndexTuple>& tuples) {
    const Field& F = p.field();
    PluckerVector v;
    v.coords.reserve(tuples.size());
    for (const auto& a : tuples) v.coords.push_back(minor(p.basis(), a));
    auto first = std::find_if(v.coords.begin(), v.coords.end(), [](Fe x) { return !x.is_zero(); });
    if (first == v.coords.end()) throw InvariantViolation("Plücker vector of a subspace is zero");
    if (*first != F.one()) {
        const Fe s = F.inv(*first);
        for (auto& x : v.coords) x = F.mul(x, s);
    }
    return v;
}

inline PluckerVector plucker(const Subspace& p) {
    return plucker(p, index_tuples(static_cast<int>(p.dim()), static_cast<int>(p.ambient())));
}

/// Vectors extending a basis of `lower` to a basis of `upper` (lower must be inside upper).
inline Mat complement_vectors(const Subspace& lower, const Subspace& upper) {
    Subspace cur = lower;
    Mat c(lower.field(), 0, lower.ambient());
    for (std::size_t r = 0; r < upper.dim() && cur.dim() < upper.dim(); ++r) {
        auto v = upper.basis().row(r);
        if (cur.contains(v)) continue;
        c.append_row(v);
        Mat b = cur.basis();
        b.append_row(v);
        cur = Subspace::span(std::move(b));
    }
    return c;
}

/// All X with lower <= X <= upper and dim X = d, sorted.
inline std::vector<Subspace> subspaces_between(const Subspace& lower, const Subspace& upper, std::size_t d) {
    if (!upper.contains(lower)) throw std::invalid_argument("subspaces_between: lower is not inside upper");
    std::vector<Subspace> out;
    if (d < lower.dim() || d > upper.dim()) return out;
    const Field& F = lower.field();
    const Mat comp = complement_vectors(lower, upper);
    for (const auto& coeffs : all_subspaces(F, d - lower.dim(), comp.rows())) {
        Mat rows = stack(lower.basis(), multiply(coeffs.basis(), comp));
        out.push_back(Subspace::span(std::move(rows)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Subspace> hyperplanes(const Subspace& p) {
    return subspaces_between(Subspace::zero(p.field(), p.ambient()), p, p.dim() - 1);
}

inline std::vector<Subspace> superspaces(const Subspace& p) {
    return subspaces_between(p, Subspace::whole(p.field(), p.ambient()), p.dim() + 1);
}

/// L(U, W) = { P : U < P < W }, dim U = l-1, dim W = l+1.
struct Line {
    Subspace U, W;

    Line(Subspace u, Subspace w) : U(std::move(u)), W(std::move(w)) {
        if (U.dim() + 2 != W.dim()) throw std::invalid_argument("line needs dim W = dim U + 2");
        if (!W.contains(U)) throw std::invalid_argument("line needs U contained in W");
    }

    std::size_t l() const { return U.dim() + 1; }

    friend bool operator==(const Line& a, const Line& b) { return a.U == b.U && a.W == b.W; }
    friend bool operator<(const Line& a, const Line& b) {
        if (a.U == b.U) return a.W < b.W;
        return a.U < b.U;
    }
};

/// The q+1 points of a line, sorted.
inline std::vector<Subspace> points_on_line(const Line& line) { return subspaces_between(line.U, line.W, line.l()); }

/// Every line through P, ordered by (U, W).
inline std::vector<Line> lines_through(const Subspace& p) {
    std::vector<Line> out;
    const auto us = hyperplanes(p);
    const auto ws = superspaces(p);
    out.reserve(us.size() * ws.size());
    for (const auto& u : us)
        for (const auto& w : ws) out.emplace_back(u, w);
    return out;
}

/// The common point of two distinct lines, if any.
inline std::optional<Subspace> lines_intersect(const Line& a, const Line& b) {
    if (a == b) throw std::invalid_argument("lines_intersect needs two distinct lines");
    const std::size_t l = a.l();
    if (a.U == b.U) {
        Subspace x = intersect(a.W, b.W);
        if (x.dim() == l) return x;
        return std::nullopt;
    }
    if (a.W == b.W) {
        Subspace x = sum(a.U, b.U);
        if (x.dim() == l) return x;
        return std::nullopt;
    }
    Subspace s = sum(a.U, b.U);
    if (s.dim() != l) return std::nullopt;
    if (s == intersect(a.W, b.W)) return s;
    return std::nullopt;
}

/// Indices of the points within injection distance i of P.
/// Empty for i < 0 and the whole Grassmannian for i > l.
inline std::vector<std::size_t> closure(const Grassmannian& g, const Subspace& p, int i) {
    std::vector<std::size_t> out;
    if (i < 0) return out;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (i > g.l() || injection_distance(p, g[k]) <= i) out.push_back(k);
    return out;
}

/// Indices of the points at distance exactly i.
inline std::vector<std::size_t> sphere(const Grassmannian& g, const Subspace& p, int i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (injection_distance(p, g[k]) == i) out.push_back(k);
    return out;
}

/// Partial flag A_1 < ... < A_l; dims(i) = alpha_{i+1}.
class FlagSeq {
public:
    explicit FlagSeq(std::vector<Subspace> subspaces) : subspaces_(std::move(subspaces)) {
        for (std::size_t i = 1; i < subspaces_.size(); ++i) {
            if (subspaces_[i].dim() <= subspaces_[i - 1].dim() || !subspaces_[i].contains(subspaces_[i - 1]))
                throw std::invalid_argument("partial flag is not strictly nested");
        }
    }

    const std::vector<Subspace>& subspaces() const { return subspaces_; }

    IndexTuple dimension_sequence() const {
        IndexTuple a;
        for (const auto& s : subspaces_) a.push_back(static_cast<int>(s.dim()));
        return a;
    }

private:
    std::vector<Subspace> subspaces_;
};

inline bool in_schubert_variety(const Subspace& p, const FlagSeq& flag) {
    const auto& a = flag.subspaces();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (dim_intersection(p, a[i]) < i + 1) return false;
    return true;
}

inline std::vector<std::size_t> schubert_variety(const Grassmannian& g, const FlagSeq& flag) {
    if (static_cast<int>(flag.subspaces().size()) != g.l())
        throw std::invalid_argument("Schubert variety needs a flag with l members");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (in_schubert_variety(g[k], flag)) out.push_back(k);
    return out;
}

/// Flag of dimension sequence (1, ..., l-1, l+1) whose Schubert variety is the line.
inline FlagSeq line_flag(const Line& line) {
    std::vector<Subspace> a;
    const Field& F = line.U.field();
    for (std::size_t i = 1; i + 1 < line.l(); ++i) {
        Mat rows(F, 0, line.U.ambient());
        for (std::size_t r = 0; r < i; ++r) rows.append_row(line.U.basis().row(r));
        a.push_back(Subspace::span(std::move(rows)));
    }
    if (line.l() >= 2) a.push_back(line.U);
    a.push_back(line.W);
    return FlagSeq(std::move(a));
}

}  // namespace grassmann
