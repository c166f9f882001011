#pragma once

// Dense matrices over GF(q) with exact elimination.

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grassmann/gf.hpp"

namespace grassmann {

/// Row-major dense matrix. Holds a non-owning pointer to its field, which
/// must outlive the matrix.
class Mat {
public:
    Mat() = default;
    Mat(const Field& field, std::size_t rows, std::size_t cols)
        : field_(&field), rows_(rows), cols_(cols), entries_(rows * cols) {}
    Mat(const Field& field, std::size_t rows, std::size_t cols, std::vector<Fe> entries)
        : field_(&field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows * cols) throw std::invalid_argument("matrix entry count does not match dimensions");
        for (Fe x : entries_)
            if (x.value >= field.size()) throw std::invalid_argument("matrix entry outside the field");
    }

    /// Convenience constructor from integer rows.
    static Mat from_rows(const Field& field, std::size_t cols, std::initializer_list<std::initializer_list<unsigned>> rows) {
        std::vector<Fe> e;
        for (auto& r : rows) {
            if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (unsigned v : r) e.push_back(field.element(v));
        }
        return Mat(field, rows.size(), cols, std::move(e));
    }

    static Mat identity(const Field& field, std::size_t n) {
        Mat m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    const Field& field() const { return *field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Fe>& entries() const { return entries_; }

    Fe& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    Fe operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<Fe> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    std::span<const Fe> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    void append_row(std::span<const Fe> v) {
        if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
        entries_.insert(entries_.end(), v.begin(), v.end());
        ++rows_;
    }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](Fe x) { return x.is_zero(); });
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    const Field* field_ = nullptr;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Fe> entries_;
};

struct RrefResult {
    Mat matrix;  ///< reduced row echelon form, zero rows kept at the bottom
    std::vector<std::size_t> pivots;
};

/// In-place reduction; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(Mat& m) {
    const Field& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(piv, k), m(r, k));
        const Fe s = F.inv(m(r, c));
        if (s != F.one())
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(m(r, k), s);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Fe f = F.neg(m(i, c));
            for (std::size_t k = c; k < m.cols(); ++k)
                if (!m(r, k).is_zero()) m(i, k) = F.add(m(i, k), F.mul(f, m(r, k)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline RrefResult rref(Mat m) {
    auto piv = rref_in_place(m);
    return {std::move(m), std::move(piv)};
}

inline std::size_t rank(Mat m) { return rref_in_place(m).size(); }

/// Basis of the right null space {v : M v^T = 0}, one vector per row.
inline Mat kernel(const Mat& m) {
    const Field& F = m.field();
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    Mat k(F, 0, m.cols());
    std::vector<Fe> v(m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::fill(v.begin(), v.end(), F.zero());
        v[free] = F.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(r(i, free));
        k.append_row(v);
    }
    return k;
}

inline Mat transpose(const Mat& m) {
    Mat t(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

inline Mat multiply(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    const Field& F = a.field();
    Mat c(F, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Fe x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
        }
    return c;
}

/// Vertical concatenation.
inline Mat stack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("stacking matrices with different column counts");
    Mat s = a;
    for (std::size_t i = 0; i < b.rows(); ++i) s.append_row(b.row(i));
    return s;
}

inline Mat select_columns(const Mat& m, std::span<const std::size_t> cols) {
    Mat s(m.field(), m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(i, cols[j]);
    return s;
}

/// Determinant by elimination.
inline Fe determinant(Mat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const Field& F = m.field();
    const std::size_t n = m.rows();
    Fe det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c).is_zero()) ++piv;
        if (piv == n) return F.zero();
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            det = F.neg(det);
        }
        det = F.mul(det, m(c, c));
        const Fe inv = F.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const Fe f = F.neg(F.mul(m(i, c), inv));
            for (std::size_t k = c; k < n; ++k) m(i, k) = F.add(m(i, k), F.mul(f, m(c, k)));
        }
    }
    return det;
}

/// The minor of M on the 1-based, strictly increasing column set `colset`;
/// M must have exactly colset.size() rows.
inline Fe minor(const Mat& m, std::span<const int> colset) {
    if (colset.size() != m.rows()) throw std::invalid_argument("minor: column set size must equal row count");
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < colset.size(); ++i) {
        if (colset[i] < 1 || static_cast<std::size_t>(colset[i]) > m.cols())
            throw std::invalid_argument("minor: column index out of range");
        if (i > 0 && colset[i] <= colset[i - 1]) throw std::invalid_argument("minor: column set not strictly increasing");
        cols.push_back(static_cast<std::size_t>(colset[i] - 1));
    }
    return determinant(select_columns(m, cols));
}

// Text format: "rows cols q" then one line per row of canonical integers.

inline void write_matrix(std::ostream& os, const Mat& m) {
    os << m.rows() << ' ' << m.cols() << ' ' << m.field().size() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << static_cast<unsigned>(m(i, j).value);
        }
        os << '\n';
    }
}

inline std::string to_text(const Mat& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

inline Mat read_matrix(std::istream& is, const Field& field) {
    std::size_t rows = 0, cols = 0;
    unsigned q = 0;
    if (!(is >> rows >> cols >> q)) throw std::runtime_error("matrix text: malformed header");
    if (q != field.size())
        throw std::runtime_error("matrix text: field size " + std::to_string(q) + " does not match GF(" +
                                 std::to_string(field.size()) + ")");
    std::vector<Fe> e;
    e.reserve(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        unsigned v;
        if (!(is >> v)) throw std::runtime_error("matrix text: truncated body");
        if (v >= q) throw std::runtime_error("matrix text: entry " + std::to_string(v) + " outside the field");
        e.push_back(Fe{v});
    }
    return Mat(field, rows, cols, std::move(e));
}

}  // namespace grassmann
