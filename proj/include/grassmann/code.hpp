#pragma once

// The Grassmann code C(l, m): evaluate every linear form in the Plücker
// coordinates at every point of G(l, m). Rows of the generator matrix are
// indexed by I(l, m) in lexicographic order, columns by point index.

#include <array>
#include <unordered_set>

#include "grassmann/geometry.hpp"

namespace grassmann {

struct Term {
    std::size_t index;
    Fe coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse dual codeword, normalized to coefficient 1 at its anchor.
struct ParityCheck {
    std::size_t anchor = 0;
    std::vector<Term> terms;  ///< sorted by index, anchor included

    std::size_t weight() const { return terms.size(); }

    std::optional<Fe> coeff(std::size_t idx) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), idx, [](const Term& t, std::size_t i) { return t.index < i; });
        if (it == terms.end() || it->index != idx) return std::nullopt;
        return it->coeff;
    }

    friend bool operator==(const ParityCheck&, const ParityCheck&) = default;
};

class GrassmannCode {
public:
    GrassmannCode(FieldPtr field, int l, int m, std::size_t cap = point_cap())
        : points_(std::move(field), l, m, cap), params_(code_params(l, m, points_.field().size())) {
        const Field& F = points_.field();
        tuples_ = index_tuples(l, m);
        generator_ = Mat(F, tuples_.size(), points_.size());
        for (std::size_t j = 0; j < points_.size(); ++j) {
            const PluckerVector v = plucker(points_[j], tuples_);
            for (std::size_t a = 0; a < tuples_.size(); ++a) generator_(a, j) = v.coords[a];
        }
        auto rr = rref(generator_);
        reduced_ = std::move(rr.matrix);
        pivots_ = std::move(rr.pivots);
    }

    const Field& field() const { return points_.field(); }
    const FieldPtr& field_ptr() const { return points_.field_ptr(); }
    int l() const { return points_.l(); }
    int m() const { return points_.m(); }
    std::size_t length() const { return points_.size(); }
    std::size_t dimension() const { return tuples_.size(); }
    const Grassmannian& points() const { return points_; }
    const Mat& generator() const { return generator_; }
    const CodeParams& params() const { return params_; }
    std::size_t generator_rank() const { return pivots_.size(); }
    const std::vector<IndexTuple>& row_labels() const { return tuples_; }

    std::vector<Fe> encode(std::span<const Fe> message) const {
        if (message.size() != dimension()) throw std::invalid_argument("message length must equal the code dimension");
        const Field& F = field();
        std::vector<Fe> c(length(), F.zero());
        for (std::size_t a = 0; a < message.size(); ++a) {
            if (message[a].is_zero()) continue;
            auto row = generator_.row(a);
            for (std::size_t j = 0; j < c.size(); ++j) c[j] = F.add(c[j], F.mul(message[a], row[j]));
        }
        return c;
    }

    /// Row-space membership through the reduced generator matrix.
    bool is_codeword(std::span<const Fe> word) const {
        if (word.size() != length()) return false;
        const Field& F = field();
        std::vector<Fe> rebuilt(length(), F.zero());
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            const Fe x = word[pivots_[r]];
            if (x.is_zero()) continue;
            auto row = reduced_.row(r);
            for (std::size_t j = 0; j < rebuilt.size(); ++j) rebuilt[j] = F.add(rebuilt[j], F.mul(x, row[j]));
        }
        return std::equal(rebuilt.begin(), rebuilt.end(), word.begin());
    }

private:
    Grassmannian points_;
    CodeParams params_;
    std::vector<IndexTuple> tuples_;
    Mat generator_, reduced_;
    std::vector<std::size_t> pivots_;
};

inline GrassmannCode build_code(int l, int m, const FieldPtr& field, std::size_t cap = point_cap()) {
    return GrassmannCode(field, l, m, cap);
}

/// G w^T = 0.
inline bool annihilates(const Mat& g, const ParityCheck& check) {
    const Field& F = g.field();
    for (std::size_t a = 0; a < g.rows(); ++a) {
        Fe acc = F.zero();
        for (const Term& t : check.terms) acc = F.add(acc, F.mul(t.coeff, g(a, t.index)));
        if (!acc.is_zero()) return false;
    }
    return true;
}

inline constexpr unsigned kBruteForceLog2Cap = 22;

/// Minimum nonzero codeword weight by enumerating all q^k messages.
inline std::size_t min_weight_bruteforce(const GrassmannCode& code) {
    const Field& F = code.field();
    const std::size_t k = code.dimension(), n = code.length();
    long double total = 1;
    for (std::size_t a = 0; a < k; ++a) total *= F.size();
    if (total > static_cast<long double>(1ull << kBruteForceLog2Cap))
        throw ResourceLimit("min_weight_bruteforce: q^k exceeds 2^22");
    std::vector<unsigned> digits(k, 0);
    std::vector<Fe> msg(k);
    std::size_t best = n + 1;
    while (true) {
        std::size_t k2 = 0;
        while (k2 < k && ++digits[k2] == F.size()) digits[k2++] = 0;
        if (k2 == k) break;  // wrapped back to the zero message
        for (std::size_t a = 0; a < k; ++a) msg[a] = Fe{digits[a]};
        const auto c = code.encode(msg);
        const auto w = static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](Fe x) { return !x.is_zero(); }));
        best = std::min(best, w);
    }
    return best;
}

/// Weight-3 dual codeword supported on {anchor, a, b}, all three on `line`,
/// with coefficient 1 at the anchor.
inline ParityCheck weight3_check(const GrassmannCode& code, const Line& line, std::size_t a, std::size_t b,
                                 std::size_t anchor) {
    const auto& pts = code.points();
    if (a == b || a == anchor || b == anchor) throw std::invalid_argument("weight3_check needs three distinct points");
    for (std::size_t idx : {anchor, a, b}) {
        const Subspace& x = pts[idx];
        if (!x.contains(line.U) || !line.W.contains(x)) throw std::invalid_argument("weight3_check: point not on the line");
    }
    const Field& F = code.field();
    const std::array<std::size_t, 3> cols{anchor, a, b};
    const Mat ker = kernel(select_columns(code.generator(), cols));
    if (ker.rows() != 1) throw InvariantViolation("three collinear columns do not span a 2-dimensional space");
    auto v = ker.row(0);
    if (v[0].is_zero() || v[1].is_zero() || v[2].is_zero())
        throw InvariantViolation("dual codeword on a line has a zero coefficient");
    const Fe s = F.inv(v[0]);
    ParityCheck pc;
    pc.anchor = anchor;
    for (std::size_t j = 0; j < 3; ++j) pc.terms.push_back({cols[j], F.mul(s, v[j])});
    std::sort(pc.terms.begin(), pc.terms.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
    return pc;
}

/// Dual distance is exactly 3: no zero column, no two proportional columns,
/// and three points of some line carry a weight-3 dual codeword.
inline bool dual_min_distance_check(const Mat& g, const Grassmannian& pts) {
    const Field& F = g.field();
    std::unordered_set<std::string> seen;
    seen.reserve(g.cols());
    std::string key(g.rows(), '\0');
    for (std::size_t j = 0; j < g.cols(); ++j) {
        std::size_t first = 0;
        while (first < g.rows() && g(first, j).is_zero()) ++first;
        if (first == g.rows()) return false;
        const Fe s = F.inv(g(first, j));
        for (std::size_t a = 0; a < g.rows(); ++a) key[a] = static_cast<char>(F.mul(s, g(a, j)).value);
        if (!seen.insert(key).second) return false;
    }
    if (pts.size() < 3 || pts.l() == 0) return false;
    const auto lines = lines_through(pts[0]);
    if (lines.empty()) return false;
    const auto on = points_on_line(lines.front());
    const std::array<std::size_t, 3> cols{pts.index_of(on[0]), pts.index_of(on[1]), pts.index_of(on[2])};
    const Mat ker = kernel(select_columns(g, cols));
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        auto v = ker.row(r);
        if (!v[0].is_zero() && !v[1].is_zero() && !v[2].is_zero()) return true;
    }
    return false;
}

inline bool dual_min_distance_check(const GrassmannCode& code) {
    return dual_min_distance_check(code.generator(), code.points());
}

}  // namespace grassmann
