#pragma once

// Exact counting formulas: Gaussian binomials, sphere sizes, Schubert cell
// sums and the orthogonal-check counts built on top of them.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <stdexcept>
#include <vector>

namespace grassmann {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Strictly increasing tuple of 1-based indices.
using IndexTuple = std::vector<int>;

inline BigInt ipow(unsigned long base, unsigned long exp) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

/// [m choose l]_q; zero outside 0 <= l <= m.
inline BigInt gauss_binom(int m, int l, unsigned q) {
    if (l < 0 || m < 0 || l > m) return 0;
    BigInt num = 1, den = 1;
    for (int j = 0; j < l; ++j) {
        num *= ipow(q, m - j) - 1;
        den *= ipow(q, j + 1) - 1;
    }
    return num / den;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

/// Number of points at injection distance exactly i from a fixed point.
inline BigInt sphere_size(int l, int m, unsigned q, int i) {
    if (i < 0 || i > l) throw std::invalid_argument("sphere_size: need 0 <= i <= l");
    return ipow(q, static_cast<unsigned long>(i) * i) * gauss_binom(l, i, q) * gauss_binom(m - l, i, q);
}

/// All strictly increasing k-tuples in [lo, hi], lexicographic order.
inline std::vector<IndexTuple> increasing_tuples(int k, int lo, int hi) {
    std::vector<IndexTuple> out;
    if (k < 0) return out;
    IndexTuple t(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            out.push_back(t);
            return;
        }
        for (int v = start; v <= hi - (k - pos - 1); ++v) {
            t[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, lo);
    return out;
}

/// I(l, m) in lexicographic order.
inline std::vector<IndexTuple> index_tuples(int l, int m) { return increasing_tuples(l, 1, m); }

/// |Omega_alpha| = sum over beta <= alpha (componentwise) of q^{sum(beta_i - i)}.
inline BigInt schubert_size(const IndexTuple& alpha, int l, int m, unsigned q) {
    if (static_cast<int>(alpha.size()) != l) throw std::invalid_argument("schubert_size: alpha must have l entries");
    for (int i = 0; i < l; ++i) {
        if (alpha[i] < 1 || alpha[i] > m || (i && alpha[i] <= alpha[i - 1]))
            throw std::invalid_argument("schubert_size: alpha not in I(l,m)");
    }
    // Product of per-coordinate ranges 1..alpha_i, filtered to strictly increasing.
    BigInt total = 0;
    IndexTuple beta(l);
    std::function<void(int, int)> rec = [&](int pos, int prev) {
        if (pos == l) {
            long exp = 0;
            for (int i = 0; i < l; ++i) exp += beta[i] - (i + 1);
            total += ipow(q, static_cast<unsigned long>(exp));
            return;
        }
        for (int v = 1; v <= alpha[pos]; ++v) {
            if (v <= prev) continue;
            beta[pos] = v;
            rec(pos + 1, v);
        }
    };
    rec(0, 0);
    return total;
}

/// Evaluates the double sum over l >= r_1 > ... > r_i >= 1 and
/// 1 <= s_1 < ... < s_i <= m-l of prod_j q^{l + 1 - r_j + s_j - 1}, and compares
/// it with q^{i^2} [l i]_q [m-l i]_q.
inline BigInt sum_identity_lhs(int l, int m, unsigned q, int i) {
    BigInt total = 0;
    for (auto r : increasing_tuples(i, 1, l)) {
        std::reverse(r.begin(), r.end());
        for (const auto& s : increasing_tuples(i, 1, m - l)) {
            long exp = 0;
            for (int j = 0; j < i; ++j) exp += l + 1 - r[j] + s[j] - 1;
            total += ipow(q, static_cast<unsigned long>(exp));
        }
    }
    return total;
}

inline bool sum_identity_check(int l, int m, unsigned q, int i) {
    if (i < 1 || i > l) throw std::invalid_argument("sum_identity_check: need 1 <= i <= l");
    return sum_identity_lhs(l, m, q, i) == sphere_size(l, m, q, i);
}

/// floor(q/2)^i q^{i^2-i} [l i]_q [m-l i]_q: size of the level-i check family.
inline BigInt level_count(int l, int m, unsigned q, int i) {
    return ipow(q / 2, i) * ipow(q, static_cast<unsigned long>(i) * i - i) * gauss_binom(l, i, q) *
           gauss_binom(m - l, i, q);
}

inline BigInt orthogonal_count(int l, int m, unsigned q) {
    BigInt j = 0;
    for (int i = 1; i <= l; ++i) j += level_count(l, m, q, i);
    return j;
}

/// 1 + sum_i 2^i * level_count(i): points touched by the full family.
inline BigInt coverage_formula(int l, int m, unsigned q) {
    BigInt c = 1;
    for (int i = 1; i <= l; ++i) c += ipow(2, i) * level_count(l, m, q, i);
    return c;
}

/// Checks with prescribed strictly monotone tuples (r, s): floor(q/2)^i prod q^{l-r_j+s_j-1}.
inline BigInt census_count(int l, unsigned q, const std::vector<int>& r, const std::vector<int>& s) {
    long exp = 0;
    for (std::size_t j = 0; j < r.size(); ++j) exp += l - r[j] + s[j] - 1;
    return ipow(q / 2, r.size()) * ipow(q, static_cast<unsigned long>(exp));
}

struct CodeParams {
    BigInt n, k, d;
    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

inline CodeParams code_params(int l, int m, unsigned q) {
    return {gauss_binom(m, l, q), binomial(m, l), ipow(q, static_cast<unsigned long>(l) * (m - l))};
}

/// M_q(l): prod_{i=1}^{l} q^i/(q^i-1) for even q,
/// prod_{i=1}^{l-1} q^i (q-1)/(q^{i+1}-1) for odd q.
inline Rational asymptotic_factor(unsigned q, int l) {
    Rational r = 1;
    if (q % 2 == 0) {
        for (int i = 1; i <= l; ++i) r *= Rational(ipow(q, i), ipow(q, i) - 1);
    } else {
        for (int i = 1; i <= l - 1; ++i) r *= Rational(ipow(q, i) * (q - 1), ipow(q, i + 1) - 1);
    }
    return r;
}

}  // namespace grassmann
