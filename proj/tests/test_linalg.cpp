#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "grassmann/linalg.hpp"

using namespace grassmann;

namespace {

Mat random_mat(const Field& F, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> d(0, F.size() - 1);
    Mat m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Fe{d(rng)};
    return m;
}

Mat random_invertible(const Field& F, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Mat m = random_mat(F, n, n, rng);
        if (rank(m) == n) return m;
    }
}

// Cofactor expansion along the first row.
Fe laplace(const Field& F, const Mat& m) {
    const std::size_t n = m.rows();
    if (n == 0) return F.one();
    Fe acc = F.zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Mat sub(F, n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) sub(i - 1, c++) = m(i, k);
        Fe term = F.mul(m(0, j), laplace(F, sub));
        if (j % 2) term = F.neg(term);
        acc = F.add(acc, term);
    }
    return acc;
}

}  // namespace

TEST(Linalg, RrefKnownMatrix) {
    const auto F = field_of_order(3);
    const Mat m = Mat::from_rows(*F, 4, {{0, 2, 1, 0}, {1, 1, 0, 2}, {1, 0, 1, 2}});
    const auto [r, piv] = rref(m);
    // Third row is the sum of the first two.
    EXPECT_EQ(piv, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r, Mat::from_rows(*F, 4, {{1, 0, 1, 2}, {0, 1, 2, 0}, {0, 0, 0, 0}}));
}

TEST(Linalg, RrefIdempotentAndUnique) {
    std::mt19937_64 rng(5);
    for (unsigned q : {2u, 3u, 4u, 5u, 9u}) {
        const auto F = field_of_order(q);
        for (int t = 0; t < 60; ++t) {
            const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 7;
            const Mat m = random_mat(*F, r, c, rng);
            const auto a = rref(m);
            EXPECT_EQ(rref(a.matrix).matrix, a.matrix);
            // Same row space through a random invertible row operation.
            const Mat n = multiply(random_invertible(*F, r, rng), m);
            EXPECT_EQ(rref(n).matrix, a.matrix);
            EXPECT_EQ(rref(n).pivots, a.pivots);
        }
    }
}

TEST(Linalg, RankNullity) {
    std::mt19937_64 rng(6);
    for (unsigned q : {2u, 3u, 7u, 16u}) {
        const auto F = field_of_order(q);
        for (int t = 0; t < 60; ++t) {
            const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 7;
            const Mat m = random_mat(*F, r, c, rng);
            const Mat k = kernel(m);
            EXPECT_EQ(rank(m) + k.rows(), c);
            EXPECT_EQ(rank(k), k.rows());
            const Mat prod = multiply(m, transpose(k));
            EXPECT_TRUE(prod.is_zero());
        }
    }
}

TEST(Linalg, DeterminantMatchesLaplace) {
    std::mt19937_64 rng(7);
    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 13u}) {
        const auto F = field_of_order(q);
        for (std::size_t n = 1; n <= 5; ++n)
            for (int t = 0; t < 25; ++t) {
                const Mat m = random_mat(*F, n, n, rng);
                EXPECT_EQ(determinant(m), laplace(*F, m));
                EXPECT_EQ(determinant(m).is_zero(), rank(m) < n);
            }
    }
}

TEST(Linalg, DeterminantIsMultiplicative) {
    std::mt19937_64 rng(8);
    const auto F = field_of_order(7);
    for (int t = 0; t < 50; ++t) {
        const Mat a = random_mat(*F, 4, 4, rng), b = random_mat(*F, 4, 4, rng);
        EXPECT_EQ(determinant(multiply(a, b)), F->mul(determinant(a), determinant(b)));
    }
}

TEST(Linalg, Minor) {
    const auto F = field_of_order(5);
    const Mat m = Mat::from_rows(*F, 4, {{1, 2, 3, 4}, {0, 1, 4, 2}});
    const std::vector<int> c12{1, 2}, c34{3, 4}, c13{1, 3};
    EXPECT_EQ(minor(m, c12), Fe{1});
    EXPECT_EQ(minor(m, c34), Fe{0});  // 3*2 - 4*4 = -10
    EXPECT_EQ(minor(m, c13), Fe{4});
    const std::vector<int> bad1{2, 1}, bad2{1, 5}, bad3{1};
    EXPECT_THROW(minor(m, bad1), std::invalid_argument);
    EXPECT_THROW(minor(m, bad2), std::invalid_argument);
    EXPECT_THROW(minor(m, bad3), std::invalid_argument);
}

TEST(Linalg, EdgeShapes) {
    const auto F = field_of_order(2);
    const Mat empty(*F, 0, 4);
    EXPECT_EQ(rank(empty), 0u);
    EXPECT_EQ(kernel(empty).rows(), 4u);
    EXPECT_EQ(kernel(Mat::identity(*F, 3)).rows(), 0u);
    EXPECT_EQ(determinant(Mat(*F, 0, 0)), F->one());
    EXPECT_THROW(determinant(Mat(*F, 2, 3)), std::invalid_argument);
    EXPECT_THROW(multiply(Mat(*F, 2, 3), Mat(*F, 2, 3)), std::invalid_argument);
    EXPECT_THROW(stack(Mat(*F, 1, 3), Mat(*F, 1, 2)), std::invalid_argument);
    EXPECT_THROW(Mat(*F, 2, 2, std::vector<Fe>(3)), std::invalid_argument);
    EXPECT_THROW(Mat(*F, 1, 1, std::vector<Fe>{Fe{2}}), std::invalid_argument);
    EXPECT_THROW(Mat::from_rows(*F, 2, {{1, 0}, {1}}), std::invalid_argument);
}

TEST(Linalg, TextRoundTrip) {
    std::mt19937_64 rng(9);
    const auto F = field_of_order(9);
    const Mat m = random_mat(*F, 3, 5, rng);
    const std::string s = to_text(m);
    EXPECT_EQ(s.substr(0, s.find('\n')), "3 5 9");
    std::istringstream is(s);
    EXPECT_EQ(read_matrix(is, *F), m);
}

TEST(Linalg, TextRejectsBadInput) {
    const auto F = field_of_order(3);
    const auto G = field_of_order(2);
    {
        std::istringstream is("2 2 3\n0 1\n2 0\n");
        EXPECT_THROW(read_matrix(is, *G), std::runtime_error);
    }
    {
        std::istringstream is("2 2 3\n0 1\n3 0\n");
        EXPECT_THROW(read_matrix(is, *F), std::runtime_error);
    }
    {
        std::istringstream is("2 2 3\n0 1\n");
        EXPECT_THROW(read_matrix(is, *F), std::runtime_error);
    }
    {
        std::istringstream is("two 2 3\n");
        EXPECT_THROW(read_matrix(is, *F), std::runtime_error);
    }
}
