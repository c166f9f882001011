#pragma once

// Subspaces of GF(q)^m in canonical (reduced row echelon) form, and the
// enumeration of the Grassmannian G(l, m).

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "grassmann/counting.hpp"
#include "grassmann/linalg.hpp"

namespace grassmann {

/// Raised when a requested object would exceed the configured point cap.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a proven structural property fails at run time.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr std::size_t kDefaultPointCap = 1'000'000;

/// Point cap, overridable through GRASS_MAX_POINTS.
inline std::size_t point_cap() {
    if (const char* env = std::getenv("GRASS_MAX_POINTS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultPointCap;
}

class Subspace {
public:
    Subspace() = default;

    /// Row space of `rows`, canonicalized.
    static Subspace span(Mat rows) {
        auto piv = rref_in_place(rows);
        Mat basis(rows.field(), 0, rows.cols());
        for (std::size_t i = 0; i < piv.size(); ++i) basis.append_row(rows.row(i));
        Subspace s;
        s.basis_ = std::move(basis);
        s.pivots_ = std::move(piv);
        return s;
    }

    static Subspace zero(const Field& field, std::size_t ambient) { return span(Mat(field, 0, ambient)); }
    static Subspace whole(const Field& field, std::size_t ambient) { return span(Mat::identity(field, ambient)); }

    /// Span of standard basis vectors e_j, j 1-based.
    static Subspace coordinate(const Field& field, std::size_t ambient, std::initializer_list<int> js) {
        Mat m(field, 0, ambient);
        std::vector<Fe> v(ambient);
        for (int j : js) {
            std::fill(v.begin(), v.end(), field.zero());
            v.at(static_cast<std::size_t>(j - 1)) = field.one();
            m.append_row(v);
        }
        return span(std::move(m));
    }

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const Field& field() const { return basis_.field(); }

    bool contains(std::span<const Fe> v) const {
        if (v.size() != ambient()) throw std::invalid_argument("vector length does not match ambient dimension");
        const Field& F = field();
        std::vector<Fe> w(v.begin(), v.end());
        for (std::size_t r = 0; r < dim(); ++r) {
            const Fe c = w[pivots_[r]];
            if (c.is_zero()) continue;
            const Fe f = F.neg(c);
            auto row = basis_.row(r);
            for (std::size_t k = pivots_[r]; k < w.size(); ++k)
                if (!row[k].is_zero()) w[k] = F.add(w[k], F.mul(f, row[k]));
        }
        return std::all_of(w.begin(), w.end(), [](Fe x) { return x.is_zero(); });
    }

    bool contains(const Subspace& other) const {
        check_ambient(other);
        if (other.dim() > dim()) return false;
        for (std::size_t r = 0; r < other.dim(); ++r)
            if (!contains(other.basis_.row(r))) return false;
        return true;
    }

    /// Canonical byte key; equal iff the subspaces are equal.
    std::string key() const {
        std::string k;
        k.reserve(basis_.entries().size() + 1);
        k.push_back(static_cast<char>(dim()));
        for (Fe x : basis_.entries()) k.push_back(static_cast<char>(x.value));
        return k;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

    /// Matrix-lexicographic order on row-major entries (dimension first).
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        const auto& x = a.basis_.entries();
        const auto& y = b.basis_.entries();
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    }

    void check_ambient(const Subspace& other) const {
        if (ambient() != other.ambient()) throw std::invalid_argument("subspaces live in different ambient spaces");
    }

private:
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    return Subspace::span(stack(a.basis(), b.basis()));
}

inline std::size_t dim_sum(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    return rank(stack(a.basis(), b.basis()));
}

inline std::size_t dim_intersection(const Subspace& a, const Subspace& b) {
    return a.dim() + b.dim() - dim_sum(a, b);
}

/// Intersection from the kernel of the stacked coefficient system:
/// (x, y) with x A + y B = 0 gives x A in both spaces.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    const Field& F = a.field();
    const Mat k = kernel(transpose(stack(a.basis(), b.basis())));
    Mat vecs(F, 0, a.ambient());
    std::vector<Fe> v(a.ambient());
    for (std::size_t r = 0; r < k.rows(); ++r) {
        std::fill(v.begin(), v.end(), F.zero());
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const Fe x = k(r, i);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < v.size(); ++c) v[c] = F.add(v[c], F.mul(x, a.basis()(i, c)));
        }
        vecs.append_row(v);
    }
    return Subspace::span(std::move(vecs));
}

/// Injection distance l - dim(P cap Q) between two l-dimensional subspaces.
inline int injection_distance(const Subspace& p, const Subspace& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("injection distance between subspaces of different dimension");
    return static_cast<int>(p.dim() - dim_intersection(p, q));
}

/// All `dim`-dimensional subspaces of F^ambient in rref-lexicographic order,
/// with no cap applied; callers check sizes first.
inline std::vector<Subspace> all_subspaces(const Field& F, std::size_t dim, std::size_t ambient) {
    std::vector<Subspace> out;
    const unsigned q = F.size();
    for (const auto& piv1 : increasing_tuples(static_cast<int>(dim), 1, static_cast<int>(ambient))) {
        std::vector<std::size_t> piv(piv1.begin(), piv1.end());
        for (auto& c : piv) --c;
        // Free positions: row r, column c > piv[r], c not a pivot column.
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = piv[r] + 1; c < ambient; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
        Mat m(F, dim, ambient);
        for (std::size_t r = 0; r < dim; ++r) m(r, piv[r]) = F.one();
        std::vector<unsigned> digits(free.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < free.size(); ++k) m(free[k].first, free[k].second) = Fe{digits[k]};
            Subspace s = Subspace::span(m);
            out.push_back(std::move(s));
            std::size_t k = 0;
            while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
            if (k == digits.size()) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The enumerated points of G(l, m); a point's index is its codeword coordinate.
class Grassmannian {
public:
    Grassmannian(FieldPtr field, int l, int m, std::size_t cap = point_cap()) : field_(std::move(field)), l_(l), m_(m) {
        if (l < 0 || m < 1 || l > m) throw std::invalid_argument("Grassmannian needs 0 <= l <= m");
        const BigInt n = gauss_binom(m, l, field_->size());
        if (n > cap)
            throw ResourceLimit("G(" + std::to_string(l) + "," + std::to_string(m) + ") over GF(" +
                                std::to_string(field_->size()) + ") has " + n.str() + " points, above the cap of " +
                                std::to_string(cap));
        points_ = all_subspaces(*field_, static_cast<std::size_t>(l), static_cast<std::size_t>(m));
        index_.reserve(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i].key(), i);
    }

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int l() const { return l_; }
    int m() const { return m_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Subspace>& points() const { return points_; }
    const Subspace& operator[](std::size_t i) const { return points_[i]; }

    std::optional<std::size_t> find(const Subspace& s) const {
        auto it = index_.find(s.key());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const Subspace& s) const {
        if (auto i = find(s)) return *i;
        throw std::invalid_argument("subspace is not a point of this Grassmannian");
    }

private:
    FieldPtr field_;
    int l_, m_;
    std::vector<Subspace> points_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline std::vector<Subspace> enumerate_grassmannian(int l, int m, const FieldPtr& field, std::size_t cap = point_cap()) {
    return Grassmannian(field, l, m, cap).points();
}

// Subspace text form is the linalg matrix format of the rref basis.
inline void write_subspace(std::ostream& os, const Subspace& s) { write_matrix(os, s.basis()); }

inline Subspace read_subspace(std::istream& is, const Field& F) { return Subspace::span(read_matrix(is, F)); }

/// Point-set dump: per point, its index on one line, the subspace text form,
/// then a blank line between blocks.
inline void write_point_set(std::ostream& os, const Grassmannian& g, std::span<const std::size_t> indices) {
    bool first = true;
    for (std::size_t i : indices) {
        if (!first) os << '\n';
        first = false;
        os << i << '\n';
        write_subspace(os, g[i]);
    }
}

}  // namespace grassmann
