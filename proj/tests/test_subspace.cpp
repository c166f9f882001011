#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "grassmann/subspace.hpp"

using namespace grassmann;

namespace {

// All vectors of a subspace, each encoded base q.
std::set<unsigned long> vectors_of(const Subspace& s) {
    const Field& F = s.field();
    const unsigned q = F.size();
    std::set<unsigned long> out;
    std::vector<unsigned> c(s.dim(), 0);
    while (true) {
        std::vector<Fe> v(s.ambient(), F.zero());
        for (std::size_t r = 0; r < s.dim(); ++r)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.add(v[j], F.mul(Fe{c[r]}, s.basis()(r, j)));
        unsigned long code = 0;
        for (Fe x : v) code = code * q + x.value;
        out.insert(code);
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == q) c[k++] = 0;
        if (k == c.size()) break;
    }
    return out;
}

unsigned long qpow(unsigned q, std::size_t e) {
    unsigned long r = 1;
    while (e--) r *= q;
    return r;
}

Subspace random_subspace(const Field& F, std::size_t rows, std::size_t m, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> d(0, F.size() - 1);
    Mat a(F, rows, m);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = Fe{d(rng)};
    return Subspace::span(a);
}

struct EnvGuard {
    explicit EnvGuard(const char* v) { setenv("GRASS_MAX_POINTS", v, 1); }
    ~EnvGuard() { unsetenv("GRASS_MAX_POINTS"); }
};

}  // namespace

TEST(Subspace, CanonicalBasis) {
    const auto F = field_of_order(3);
    const Subspace a = Subspace::span(Mat::from_rows(*F, 4, {{0, 2, 1, 0}, {1, 1, 0, 2}, {0, 1, 2, 0}}));
    EXPECT_EQ(a.dim(), 2u);
    EXPECT_EQ(a.basis(), Mat::from_rows(*F, 4, {{1, 0, 1, 2}, {0, 1, 2, 0}}));
    EXPECT_EQ(a.pivots(), (std::vector<std::size_t>{0, 1}));
    const Subspace b = Subspace::span(Mat::from_rows(*F, 4, {{1, 1, 0, 2}, {2, 2, 0, 1}, {1, 0, 1, 2}}));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.key(), b.key());
    EXPECT_EQ(Subspace::coordinate(*F, 4, {3, 1}), Subspace::coordinate(*F, 4, {1, 3}));
    EXPECT_EQ(Subspace::zero(*F, 4).dim(), 0u);
    EXPECT_EQ(Subspace::whole(*F, 4).dim(), 4u);
}

TEST(Subspace, ContainmentMatchesVectorSets) {
    std::mt19937_64 rng(11);
    for (unsigned q : {2u, 3u, 4u}) {
        const auto F = field_of_order(q);
        for (int t = 0; t < 80; ++t) {
            const Subspace a = random_subspace(*F, 1 + rng() % 3, 4, rng);
            const Subspace b = random_subspace(*F, 1 + rng() % 3, 4, rng);
            const auto va = vectors_of(a), vb = vectors_of(b);
            EXPECT_EQ(va.size(), qpow(q, a.dim()));
            EXPECT_EQ(a.contains(b), std::includes(va.begin(), va.end(), vb.begin(), vb.end()));
        }
    }
}

TEST(Subspace, IntersectionAndSumAgainstVectorSets) {
    std::mt19937_64 rng(12);
    for (unsigned q : {2u, 3u, 5u}) {
        const auto F = field_of_order(q);
        for (int t = 0; t < 80; ++t) {
            const std::size_t m = 3 + rng() % 3;
            const Subspace a = random_subspace(*F, 1 + rng() % m, m, rng);
            const Subspace b = random_subspace(*F, 1 + rng() % m, m, rng);
            const auto va = vectors_of(a), vb = vectors_of(b);
            std::set<unsigned long> common;
            std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::inserter(common, common.end()));
            const Subspace x = intersect(a, b);
            EXPECT_EQ(vectors_of(x), common);
            EXPECT_EQ(dim_intersection(a, b), x.dim());
            EXPECT_EQ(dim_sum(a, b) + x.dim(), a.dim() + b.dim());
            const Subspace s = sum(a, b);
            EXPECT_TRUE(s.contains(a) && s.contains(b));
            EXPECT_EQ(s.dim(), dim_sum(a, b));
        }
    }
}

TEST(Subspace, ContainsVectorRejectsWrongLength) {
    const auto F = field_of_order(2);
    const Subspace a = Subspace::coordinate(*F, 4, {1, 2});
    std::vector<Fe> v(3);
    EXPECT_THROW(a.contains(std::span<const Fe>(v)), std::invalid_argument);
    EXPECT_THROW(sum(a, Subspace::zero(*F, 5)), std::invalid_argument);
}

TEST(Grassmannian, EnumerationSortedAndComplete) {
    for (unsigned q : {2u, 3u, 4u, 5u})
        for (int m = 1; m <= 5; ++m)
            for (int l = 0; l <= m; ++l) {
                if (gauss_binom(m, l, q) > 5000) continue;
                const Grassmannian g(field_of_order(q), l, m);
                ASSERT_EQ(BigInt(g.size()), gauss_binom(m, l, q));
                for (std::size_t k = 0; k < g.size(); ++k) {
                    EXPECT_EQ(g[k].dim(), static_cast<std::size_t>(l));
                    EXPECT_EQ(g.index_of(g[k]), k);
                    if (k) { EXPECT_TRUE(g[k - 1] < g[k]); }
                }
            }
}

TEST(Grassmannian, FirstPointAndLookup) {
    const auto F = field_of_order(2);
    const Grassmannian g(F, 2, 4);
    EXPECT_EQ(g[0], Subspace::coordinate(*F, 4, {3, 4}));
    EXPECT_EQ(g.find(Subspace::coordinate(*F, 4, {1, 2})).has_value(), true);
    EXPECT_FALSE(g.find(Subspace::coordinate(*F, 4, {1})).has_value());
    EXPECT_THROW(g.index_of(Subspace::coordinate(*F, 4, {1, 2, 3})), std::invalid_argument);
    EXPECT_THROW(Grassmannian(F, 3, 2), std::invalid_argument);
    EXPECT_THROW(Grassmannian(F, -1, 2), std::invalid_argument);
}

TEST(Grassmannian, InjectionDistanceIsAMetric) {
    for (unsigned q : {2u, 3u}) {
        const Grassmannian g(field_of_order(q), 2, 4);
        const std::size_t n = g.size();
        std::vector<int> d(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) d[a * n + b] = injection_distance(g[a], g[b]);
        for (std::size_t a = 0; a < n; ++a) {
            EXPECT_EQ(d[a * n + a], 0);
            for (std::size_t b = 0; b < n; ++b) {
                ASSERT_EQ(d[a * n + b], d[b * n + a]);
                if (a != b) { ASSERT_GT(d[a * n + b], 0); }
                for (std::size_t c = 0; c < n; ++c) ASSERT_LE(d[a * n + c], d[a * n + b] + d[b * n + c]);
            }
        }
    }
    const auto F = field_of_order(2);
    EXPECT_THROW(injection_distance(Subspace::coordinate(*F, 4, {1}), Subspace::coordinate(*F, 4, {1, 2})),
                 std::invalid_argument);
}

TEST(Grassmannian, PointCap) {
    const auto F = field_of_order(2);
    EXPECT_THROW(Grassmannian(F, 2, 4, 34), ResourceLimit);
    EXPECT_NO_THROW(Grassmannian(F, 2, 4, 35));
    EXPECT_EQ(point_cap(), kDefaultPointCap);
    {
        EnvGuard env("34");
        EXPECT_EQ(point_cap(), 34u);
        EXPECT_THROW(Grassmannian(F, 2, 4), ResourceLimit);
        EXPECT_NO_THROW(Grassmannian(F, 1, 4));
    }
    {
        EnvGuard env("lots");
        EXPECT_EQ(point_cap(), kDefaultPointCap);
    }
    {
        EnvGuard env("0");
        EXPECT_EQ(point_cap(), kDefaultPointCap);
    }
    // 2^40-ish points never get enumerated.
    EXPECT_THROW(Grassmannian(F, 5, 10), ResourceLimit);
}

TEST(Grassmannian, TextFormats) {
    const auto F = field_of_order(3);
    const Grassmannian g(F, 2, 4);
    std::ostringstream os;
    const std::vector<std::size_t> idx{0, 7};
    write_point_set(os, g, idx);
    std::ostringstream expect;
    expect << "0\n2 4 3\n0 0 1 0\n0 0 0 1\n\n7\n" << to_text(g[7].basis());
    EXPECT_EQ(os.str(), expect.str());
    for (std::size_t k = 0; k < g.size(); ++k) {
        std::ostringstream s;
        write_subspace(s, g[k]);
        std::istringstream in(s.str());
        EXPECT_EQ(read_subspace(in, *F), g[k]);
    }
    // Non-canonical input is canonicalized on read.
    std::istringstream in("2 4 3\n0 0 0 2\n0 0 1 1\n");
    EXPECT_EQ(read_subspace(in, *F), g[0]);
}
